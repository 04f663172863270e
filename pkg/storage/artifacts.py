"""
DUALFRENET Artifact Store
File persistence for CLI inputs and outputs: JSON documents, Frenet CSV
tables, OBJ meshes and Mannheim pair bundles.
"""

import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from core.errors import InputError

logger = logging.getLogger(__name__)

PAIR_FILE = "pair.json"
CURVE_C_FILE = "curve_c.json"
CURVE_C1_FILE = "curve_c1.json"

FRENET_COLUMNS = (
    ["t", "s", "s_du"]
    + [f"{v}_{part}_{axis}" for v in ("t", "n", "b") for part in ("re", "du") for axis in "xyz"]
    + ["kappa_re", "kappa_du", "tau_re", "tau_du"]
)


# ── JSON ────────────────────────────────────────────────────────────────────

def read_json(path: str) -> Any:
    """Load a JSON document; InputError on a missing file or invalid JSON."""
    if not os.path.isfile(path):
        raise InputError(f"Input file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON in {path}: {e}")
    except OSError as e:
        raise InputError(f"Could not read {path}: {e}")


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Optional[str], obj: Any) -> None:
    """Sorted keys, indent 2, trailing LF; stdout when `path` is None."""
    write_text(path, dumps_json(obj))


def write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    logger.info(f"Wrote {path} ({len(text)} chars)")


def write_bytes(path: Optional[str], data: bytes) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    _ensure_parent(path)
    with open(path, "wb") as fh:
        fh.write(data)
    logger.info(f"Wrote {path} ({len(data)} bytes)")


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


# ── CSV ─────────────────────────────────────────────────────────────────────

def frenet_csv_text(rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FRENET_COLUMNS)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_frenet_csv(path: Optional[str], rows: Iterable[Sequence[str]]) -> None:
    """One row per sample in FRENET_COLUMNS order; stdout when `path` is None."""
    write_text(path, frenet_csv_text(rows))


# ── Pair bundles ────────────────────────────────────────────────────────────

def save_pair_bundle(
    directory: str,
    metadata: Dict[str, Any],
    curve_c: Dict[str, Any],
    curve_c1: Dict[str, Any],
) -> List[str]:
    """Write pair.json, curve_c.json and curve_c1.json into `directory`."""
    os.makedirs(directory, exist_ok=True)
    paths = [os.path.join(directory, name) for name in (PAIR_FILE, CURVE_C_FILE, CURVE_C1_FILE)]
    for path, doc in zip(paths, (metadata, curve_c, curve_c1)):
        write_json(path, doc)
    logger.info(f"Saved pair bundle to {directory}")
    return paths


def load_pair_bundle(path: str) -> Tuple[Dict[str, Any], Dict[str, Any], Dict[str, Any]]:
    """Accepts the bundle directory or its pair.json path."""
    directory = path if os.path.isdir(path) else os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(path) and os.path.basename(path) != PAIR_FILE:
        raise InputError(f"Expected a pair bundle directory or {PAIR_FILE}, got {path}")
    metadata = read_json(os.path.join(directory, PAIR_FILE))
    curve_c = read_json(os.path.join(directory, CURVE_C_FILE))
    curve_c1 = read_json(os.path.join(directory, CURVE_C1_FILE))
    if not isinstance(metadata, dict):
        raise InputError(f"{PAIR_FILE} must hold a JSON object")
    return metadata, curve_c, curve_c1
