"""
Report and UI Wording for fuscat
"""

MESSAGES = {
    # Navigation
    "nav_home": "Home",
    "nav_ring": "Ring verification",
    "nav_classify": "Classification",
    "nav_obstruct": "Obstruction scans",
    "nav_roots": "Roots of unity",

    # Home page
    "home_subtitle": "Exact obstructions for rank-4 based rings with two self-dual basis elements",
    "home_welcome": "What this explorer does",
    "home_features": "Features:",
    "home_feature_verify": "✓ Verify based-ring axioms and compute FP dimensions and formal codegrees",
    "home_feature_classify": "✓ Classify R(x, y, g, d) rings against the codegree obstructions",
    "home_feature_scans": "✓ Run the K1(e) and K2(c) center obstruction scans",
    "home_feature_roots": "✓ Query Galois orbit sums and minimal root-of-unity representations",
    "home_getting_started": "Upload a ring JSON file, or build one from the family parameters.",

    # Ring page
    "ring_upload_label": "Upload a ring JSON file",
    "ring_upload_help": '{"rank": 4, "dual": [0,3,2,1], "N": [[[...]]], "labels": ["1","X","Y","Z"]}',
    "ring_family_label": "Or build a family member",
    "ring_axioms": "Based-ring axioms",
    "ring_extended_axioms": "Extended axioms (reported, not gating)",
    "ring_fpdims": "Frobenius-Perron dimensions",
    "ring_codegrees": "Formal codegrees",
    "ring_gates": "Pseudo-unitarity gates",

    # Scan and roots pages
    "scan_identities": "Twist trace identities of the survivors",
    "scan_assumptions": "Assumptions behind the verdicts",
    "roots_orbits": "Galois orbit sums",
    "roots_minroots": "Fewest roots of unity summing to a + b√c",

    # Sidebar
    "sidebar_ring": "Current ring",
    "sidebar_scan": "Last scan",

    # Buttons
    "btn_build": "Build",
    "btn_run": "Run",
    "btn_download_ring": "📥 Download ring JSON",
    "btn_download_csv": "📥 Download CSV",
    "btn_download_text": "📥 Download text report",

    # Status
    "msg_ring_required": "⚠️ Upload or build a ring first",
    "msg_processing": "Computing...",
    "msg_success": "✅ Done",
    "msg_error": "Error",

    # Footer
    "footer_made_with": "Exact arithmetic with sympy, mpmath and numpy",
    "footer_version": "Version",

    # Verdict wording
    "verdict_pass": "PASS",
    "verdict_fail": "FAIL",
    "verdict_feasible": "not ruled out by the obstructions",
    "verdict_infeasible": "ruled out",
    "verdict_survivor": "survivor",
    "verdict_rejected": "rejected",
    "verdict_falsification": "UNEXPECTED SURVIVOR",
    "verdict_matches_claim": "survivor set matches the classification",
    "verdict_claim_mismatch": "survivor set differs from the classification",
    "verdict_exceeds_budget": "exceeds budget",

    # Gates
    "gate_positive": "all codegrees positive",
    "gate_reciprocal_sum": "reciprocal-sum gate (sum of 1/f_i equals 1)",
    "gate_square_sum": "square-sum gate (sum of 1/f_i^2 at most (1 + 1/f_1)/2)",

    # Assumptions recorded in every obstruction report
    "assumption_feasible_meaning": "'feasible' means the obstructions do not rule the ring out, never that a categorification exists",
    "assumption_nonnegative_multiplicities": "branching multiplicities (r, p and the K2 letters) are nonnegative integers",
    "assumption_gamma_budget": "only the budget 2*sum(gamma_i^2) is used; individual gamma_i are never pinned down",
    "assumption_twist_sign": "both signs of tr(theta^2 on I(Y)) = ±dim are enumerated",
    "assumption_cited_gates": "cited external results are applied as check rules, not re-proved",
    "assumption_c93_routing": "the k = 3 case is routed through c = 93 (squarefree part of 9k^2 + 12)",
    "assumption_minus_sign_gap": "P(a, b, c, d) requires d >= 0; the minus-sign branch with k < 2 is treated as unobstructed",
    "assumption_e2_accepted": "e = 2 has rational delta = 3 and is accepted (Rep(A4))",
    "assumption_c0_accepted": "c = 0 has rational d = 1 and is accepted (Rep(Z/4))",
    "assumption_beta_bound": "the irreducible-quadratic branch uses beta >= gamma^2, the consequence of gamma^2 | beta",

    # Errors
    "error_file": "❌ Could not read file:",
    "error_ring": "❌ Not a valid ring:",
}
