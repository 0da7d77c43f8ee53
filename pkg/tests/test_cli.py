"""
Tests for the fuscat command line: exit codes, report formats and determinism.
"""

import json
from io import StringIO

import pytest

from config.messages import MESSAGES
from config.settings import EXIT_CODES
from fuscat import run
from modules.data_manager import load_ring_file
from modules.rank4_families import k1_ring


def invoke(*argv):
    out, err = StringIO(), StringIO()
    code = run([str(arg) for arg in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestVerify:
    def test_table1_passes(self, table1_path):
        code, out, _ = invoke("verify", table1_path)
        assert code == EXIT_CODES["ok"]
        assert out.startswith("fuscat verify")
        assert "associativity: PASS" in out

    def test_broken_ring(self, broken_ring_path):
        code, out, _ = invoke("verify", broken_ring_path)
        assert code == EXIT_CODES["verification_failure"]
        assert "associativity: FAIL" in out

    def test_missing_file(self, tmp_path):
        code, out, err = invoke("verify", tmp_path / "absent.json")
        assert code == EXIT_CODES["usage"]
        assert out == ""
        assert MESSAGES["error_file"] in err

    def test_csv_rows(self, table1_path):
        code, out, _ = invoke("verify", table1_path, "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "axiom,kind,passed,detail"


class TestCodegrees:
    def test_table1_gates(self, table1_path):
        code, out, _ = invoke("codegrees", table1_path)
        assert code == 0
        assert "codegrees: 36+20√3, 8, 8, 36-20√3" in out
        assert f"{MESSAGES['gate_reciprocal_sum']}: PASS" in out
        assert f"{MESSAGES['gate_square_sum']}: FAIL" in out

    def test_broken_ring_stops_before_codegrees(self, broken_ring_path):
        code, out, _ = invoke("codegrees", broken_ring_path)
        assert code == EXIT_CODES["verification_failure"]
        assert "codegrees:" not in out


class TestFamily:
    def test_k1(self):
        code, out, _ = invoke("family", "k1", "--e", 2)
        assert code == 0
        assert "k1(2) = K(1, 2, 1, 0, 0, 0) = R(0, 1, 1, -2)" in out

    def test_emit(self, tmp_path):
        path = tmp_path / "k1_e2.json"
        code, out, _ = invoke("family", "k1", "--e", 2, "--emit", path)
        assert code == 0
        ring, error = load_ring_file(path)
        assert error is None
        assert ring.N == k1_ring(2).N

    def test_r_to_k(self):
        code, out, _ = invoke("family", "r", "--x", 1, "--y", 2, "--g", 1, "--d", 0, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["K"] == "K(2, 4, 2, 1, 0, 2)"
        assert report["family"] is None

    def test_k2_member_in_r_coordinates(self):
        code, out, _ = invoke("family", "r", "--x", -1, "--y", 0, "--g", -1, "--d", -4, "--format", "json")
        assert code == 0
        assert json.loads(out)["family"] == "k2(2)"

    def test_invalid_quadruple(self):
        code, _, err = invoke("family", "r", "--x", 1, "--y", 1, "--g", 0, "--d", 2)
        assert code == EXIT_CODES["verification_failure"]
        assert err


class TestClassifyAndObstruct:
    def test_classify_small_box(self):
        code, out, _ = invoke("classify", "--xmax", 1, "--ymax", 1, "--gmax", 1, "--dmax", 6, "--workers", 1)
        assert code == 0
        assert MESSAGES["verdict_matches_claim"] in out

    def test_obstruct_k1(self):
        code, out, _ = invoke("obstruct", "k1", "--max-e", 12, "--workers", 1)
        assert code == 0
        assert "survivors: {0, 2, 3, 6}" in out
        assert "twist identities: PASS" in out

    def test_obstruct_k2(self):
        code, out, _ = invoke("obstruct", "k2", "--max-c", 6, "--workers", 1)
        assert code == 0
        assert "survivors: {0, 1, 2}" in out

    def test_detail_adds_evidence(self):
        _, out, _ = invoke("obstruct", "k1", "--max-e", 3, "--workers", 1, "--detail", "--format", "json")
        verdicts = json.loads(out)["verdicts"]
        assert "evidence" in verdicts[3]


class TestRoots:
    def test_minroots_sqrt2(self):
        code, out, _ = invoke("minroots", "--a", 0, "--b", 1, "--c", 2, "--max-order", 8, "--max-count", 4)
        assert code == 0
        assert "minimum: 2" in out
        assert "witness: z8^1 z8^7" in out
        assert "lower bound sqrt2: 2" in out

    def test_budget_exceeded(self):
        code, out, _ = invoke("minroots", "--a", 0, "--b", 1, "--c", 3, "--paired", "--a2", 5,
                              "--max-order", 12, "--max-count", 4)
        assert code == EXIT_CODES["budget_exceeded"]
        assert MESSAGES["verdict_exceeds_budget"] in out

    def test_orbits(self):
        code, out, _ = invoke("orbits", "--c", 3, "--order", 12)
        assert code == 0
        assert "c = 3, Y = 12, epsilon = 1, n = 12, L = 24" in out
        assert "size 2: sum √3, square sum 1" in out

    @pytest.mark.parametrize("c, order, header", [
        (7, 28, "c = 7, Y = 28, epsilon = 1, n = 28, L = 168"),
        (11, 44, "c = 11, Y = 44, epsilon = 1, n = 44, L = 264"),
        (13, 13, "c = 13, Y = 13, epsilon = 0, n = 13, L = 156"),
    ])
    def test_orbit_tables(self, c, order, header):
        code, out, _ = invoke("orbits", "--c", c, "--order", order)
        assert code == 0
        assert header in out
        assert len([line for line in out.splitlines() if line.startswith("  size ")]) == 2

    def test_orbits_hypothesis_violation(self):
        code, _, err = invoke("orbits", "--c", 12, "--order", 5)
        assert code == EXIT_CODES["usage"]
        assert err


class TestReports:
    def test_json_carries_command_and_digest(self):
        code, out, _ = invoke("orbits", "--c", 3, "--order", 12, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["command"] == "orbits --c 3 --order 12 --format json"
        assert len(report["input_digest"]) == 64

    def test_flags_before_the_subcommand(self):
        code, before, _ = invoke("--format", "json", "--workers", 2, "orbits", "--c", 3, "--order", 12)
        assert code == 0
        _, after, _ = invoke("orbits", "--c", 3, "--order", 12, "--format", "json", "--workers", 2)
        first, second = json.loads(before), json.loads(after)
        assert first["command"] == "--format json orbits --c 3 --order 12"
        for report in (first, second):
            report.pop("command")
            report.pop("input_digest")
        assert first == second

    def test_flags_before_a_nested_subcommand(self):
        code, out, _ = invoke("--format", "csv", "--verbose", "obstruct", "k2", "--max-c", 3, "--workers", 1)
        assert code == 0
        assert out.splitlines()[0].startswith("family,param,feasible")

    def test_subcommand_flag_overrides_top_level(self):
        code, out, _ = invoke("--format", "json", "orbits", "--c", 3, "--order", 12, "--format", "text")
        assert code == 0
        assert out.startswith("fuscat ")

    def test_workers_do_not_change_the_report(self):
        args = ("obstruct", "k2", "--max-c", 4, "--format", "json")
        _, single, _ = invoke(*args, "--workers", 1)
        _, double, _ = invoke(*args, "--workers", 2)
        _, default, _ = invoke(*args)
        assert single == double == default

    def test_file_contents_change_the_digest(self, table1_path, tmp_path):
        copy = tmp_path / "table1.json"
        copy.write_text(table1_path.read_text(encoding="utf-8").replace("\n", "\n\n"), encoding="utf-8")
        _, first, _ = invoke("verify", copy, "--format", "json")
        copy.write_text(table1_path.read_text(encoding="utf-8"), encoding="utf-8")
        _, second, _ = invoke("verify", copy, "--format", "json")
        assert json.loads(first)["input_digest"] != json.loads(second)["input_digest"]

    @pytest.mark.parametrize("argv", [[], ["classify", "--xmax", "abc"], ["obstruct", "k3"], ["verify"]])
    def test_usage_errors(self, argv):
        code, out, err = invoke(*argv)
        assert code == EXIT_CODES["usage"]
        assert out == ""
        assert err
