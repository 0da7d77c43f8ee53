"""
Data Manager Module
Ring-file import, validation and writing, plus report serialization to text, JSON and CSV
"""

import hashlib
import io
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import pandas as pd

from modules.based_ring import FusionRing, verify_based_ring
from modules.errors import FuscatError

logger = logging.getLogger(__name__)

PathOrFile = Union[str, Path, io.IOBase]


def _read_text(source: PathOrFile) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def load_ring_file(source: PathOrFile) -> Tuple[Optional[FusionRing], Optional[str]]:
    """
    Load a ring JSON file and return the ring and an error message.

    Args:
        source: Path, open file, or Streamlit UploadedFile

    Returns:
        Tuple of (FusionRing, error_message)
        If successful: (ring, None)
        If error: (None, error_message)
    """
    try:
        data = json.loads(_read_text(source))
    except (OSError, UnicodeDecodeError) as e:
        return None, f"cannot read ring file: {e}"
    except json.JSONDecodeError as e:
        return None, f"not valid JSON: {e}"
    if not isinstance(data, dict):
        return None, "ring file must hold a JSON object"
    try:
        return FusionRing.from_dict(data), None
    except (FuscatError, TypeError, ValueError) as e:
        return None, str(e)


def validate_ring(ring: FusionRing) -> Tuple[bool, str]:
    """
    Validate the based-ring axioms of a loaded ring.

    Args:
        ring: Loaded ring

    Returns:
        Tuple of (is_valid, message)
    """
    return verify_based_ring(ring).summary()


def write_ring_file(ring: FusionRing, path: Union[str, Path]) -> None:
    Path(path).write_text(to_json(ring.to_dict()), encoding="utf-8")
    logger.debug("wrote %s to %s", ring, path)


def input_digest(*parts: Union[str, bytes]) -> str:
    """sha256 over the given inputs, in order."""
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part.encode("utf-8") if isinstance(part, str) else part)
        digest.update(b"\0")
    return digest.hexdigest()


def file_digest(path: Union[str, Path]) -> str:
    return input_digest(Path(path).read_bytes())


# ============= Report serialization =============

def to_json(report: Dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rows_to_frame(rows: Iterable[Dict]) -> pd.DataFrame:
    return pd.DataFrame(list(rows))


def to_csv(rows: Iterable[Dict]) -> str:
    """CSV of a list of flat records, columns in first-seen order."""
    return rows_to_frame(rows).to_csv(index=False)


def export_data_csv(rows: Iterable[Dict]) -> bytes:
    """
    Export report rows to CSV bytes for download.

    Args:
        rows: Flat records

    Returns:
        CSV as bytes
    """
    return to_csv(rows).encode("utf-8")


def _text_lines(value, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return [pad + ", ".join(_scalar(item) for item in value)]
        lines = []
        for item in value:
            lines.extend(_text_lines(item, indent))
            lines.append("")
        return lines[:-1]
    return [pad + _scalar(value)]


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, dict)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)


def to_text(report: Dict, header: Optional[List[str]] = None) -> str:
    """Indented key: value rendering, optionally preceded by header lines."""
    lines = list(header or [])
    if header:
        lines.append("")
    lines.extend(_text_lines(report))
    return "\n".join(lines) + "\n"
