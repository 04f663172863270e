"""
DUALFRENET Utility Helpers
Pure numeric and formatting helpers shared across all modules.
"""

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Any, Callable, Iterable, List, Optional, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


# ── Finite differences ──────────────────────────────────────────────────────

def gradient4(values: Any, h: float) -> np.ndarray:
    """
    Fourth-order derivative of uniformly sampled data along axis 0.
    Central 5-point stencil inside, one-sided 5-point stencils at both ends.
    """
    f = np.asarray(values, dtype=float)
    n = f.shape[0]
    if n < 5:
        raise ValueError(f"gradient4 needs at least 5 samples, got {n}")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    out[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    return out


def fd_derivative(f: Callable[[float], Any], t: float, order: int, h: float) -> np.ndarray:
    """5-point central stencil of order 1, 2 or 3 for an array-valued callable."""
    fm2 = np.asarray(f(t - 2.0 * h), dtype=float)
    fm1 = np.asarray(f(t - h), dtype=float)
    fp1 = np.asarray(f(t + h), dtype=float)
    fp2 = np.asarray(f(t + 2.0 * h), dtype=float)
    if order == 1:
        return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
    if order == 2:
        f0 = np.asarray(f(t), dtype=float)
        return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
    if order == 3:
        return (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h ** 3)
    raise ValueError(f"Unsupported derivative order {order}")


def relative_spread(values: Any) -> float:
    """(max - min) / |mean|, guarded against a vanishing mean."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return 0.0
    scale = max(abs(float(np.mean(arr))), np.finfo(float).tiny)
    return float((arr.max() - arr.min()) / scale)


# ── Determinism ─────────────────────────────────────────────────────────────

def compute_deterministic_hash(record: Any) -> str:
    """sha256 of the canonical JSON form of a record (sorted keys)."""
    serialized = json.dumps(record, sort_keys=True, default=str)
    return hashlib.sha256(serialized.encode()).hexdigest()


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    parallel: bool = False,
    max_workers: Optional[int] = None,
) -> List[R]:
    """Map preserving input order; a thread pool is used when `parallel` is set."""
    items = list(items)
    if not parallel or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(fn, items))


# ── Formatting ──────────────────────────────────────────────────────────────

def format_sig(x: float, digits: int = 12) -> str:
    """Fixed significant-digit text; negative zero prints as 0."""
    text = f"{float(x):.{digits}g}"
    if text in ("-0", "-0.0"):
        return "0"
    return text


def now_iso() -> str:
    """Return current UTC time as ISO 8601 string."""
    return datetime.now(timezone.utc).isoformat()
