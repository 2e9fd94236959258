"""Band operators on sequences over Z: construction, shifts, windows, norms.

A band operator is A = sum_{|k| <= w} M_{b_k} V_k with finitely many diagonals
b_k; its matrix entries follow a_{ij} = b_{i-j}(i).  Everything here is exact
plumbing: dense Dirichlet windows, shift conjugation V_{-k} A V_k realized on
the diagonals, the Wiener norm, and banded matrix-vector products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .potentials import Potential, potential_from_json, potential_to_json

__all__ = [
    "CapacityError",
    "BandOperator",
    "DenseWindowMatrix",
    "band",
    "entry",
    "shift_conjugate",
    "truncate",
    "wiener_norm",
    "apply",
    "operator_to_json",
    "operator_from_json",
    "MAX_WINDOW_SIDE",
]

# Dense windows cap at this many rows/columns per side (desk-scale guarantee).
MAX_WINDOW_SIDE = 4096


class CapacityError(Exception):
    """A requested window or support exceeds the desk-scale caps."""


@dataclass(frozen=True)
class BandOperator:
    """Finitely many diagonals, offset -> Potential; bandWidth = max |offset|."""

    diagonals: tuple  # sorted tuple of (offset, Potential)
    _by_offset: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_offset", dict(self.diagonals))

    @property
    def band_width(self) -> int:
        return max((abs(k) for k, _ in self.diagonals), default=0)

    @property
    def offsets(self) -> tuple:
        return tuple(k for k, _ in self.diagonals)

    def diagonal(self, k: int) -> Potential | None:
        return self._by_offset.get(k)


def band(diagonals: Mapping[int, Potential]) -> BandOperator:
    """Canonical band operator; zero diagonals are dropped."""
    kept = []
    for k, p in diagonals.items():
        if not isinstance(p, Potential):
            raise TypeError(f"diagonal {k} is not a Potential: {p!r}")
        if p.sup_norm() == 0.0:
            continue
        kept.append((int(k), p))
    kept.sort(key=lambda kp: kp[0])
    return BandOperator(tuple(kept))


def entry(a: BandOperator, i: int, j: int) -> complex:
    """Matrix entry a_{ij} = b_{i-j}(i)."""
    p = a.diagonal(i - j)
    if p is None:
        return 0j
    return p.eval(i)


def shift_conjugate(a: BandOperator, k: int) -> BandOperator:
    """V_{-k} A V_k: each diagonal b_j becomes translate(b_j, -k).

    Entries satisfy entry(result, i, j) = entry(a, i+k, j+k).
    """
    return band({j: p.translate(-k) for j, p in a.diagonals})


@dataclass(frozen=True, eq=False)
class DenseWindowMatrix:
    """Dense window of a band operator; entries[i, j] is the entry at global
    indices (row_offset + i, col_offset + j)."""

    row_offset: int
    col_offset: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


def _check_interval(name: str, iv: Sequence[int]) -> tuple[int, int]:
    lo, hi = int(iv[0]), int(iv[1])
    length = hi - lo + 1
    if length < 1:
        raise ValueError(f"{name} interval [{lo}, {hi}] is empty")
    if length > MAX_WINDOW_SIDE:
        raise CapacityError(
            f"{name} interval [{lo}, {hi}] has {length} indices; the dense cap is {MAX_WINDOW_SIDE}"
        )
    return lo, hi


def truncate(a: BandOperator, rows: Sequence[int], cols: Sequence[int]) -> DenseWindowMatrix:
    """Dense Dirichlet window on rows x cols (both inclusive integer intervals)."""
    rlo, rhi = _check_interval("row", rows)
    clo, chi = _check_interval("column", cols)
    nr, nc = rhi - rlo + 1, chi - clo + 1
    m = np.zeros((nr, nc), dtype=complex)
    for k, p in a.diagonals:
        off = rlo - clo - k  # entries[i, i + off] live on diagonal k
        i0 = max(0, -off)
        i1 = min(nr, nc - off)
        if i0 >= i1:
            continue
        ii = np.arange(i0, i1)
        m[ii, ii + off] = p.eval_many(ii + rlo)
    return DenseWindowMatrix(rlo, clo, m)


def wiener_norm(a: BandOperator) -> float:
    """Sum over diagonals of sup norms; dominates every truncation 2-norm."""
    return float(sum(p.sup_norm() for _, p in a.diagonals))


def apply(a: BandOperator, x: tuple[int, Sequence[complex]]) -> tuple[int, np.ndarray]:
    """Exact banded product A x for finitely supported x = (offset, values).

    The output support grows by the band width on each side.
    """
    offset, values = x
    offset = int(offset)
    vals = np.asarray(values, dtype=complex)
    if vals.ndim != 1:
        raise ValueError("apply expects a 1-d value array")
    n = len(vals)
    if n > MAX_WINDOW_SIDE:
        raise CapacityError(f"support length {n} exceeds the cap {MAX_WINDOW_SIDE}")
    w = a.band_width
    out = np.zeros(n + 2 * w, dtype=complex)
    for k, p in a.diagonals:
        # y(m) += b_k(m) x(m - k) for m in [offset + k, offset + k + n - 1]
        ms = np.arange(offset + k, offset + k + n, dtype=np.int64)
        out[k + w : k + w + n] += p.eval_many(ms) * vals
    return (offset - w, out)


# --------------------------------------------------------------------------
# JSON: {"diagonals": {"-1": <potential>, "0": <potential>, ...}}

def operator_to_json(a: BandOperator) -> dict:
    return {"diagonals": {str(k): potential_to_json(p) for k, p in a.diagonals}}


def operator_from_json(obj) -> BandOperator:
    if not isinstance(obj, dict) or "diagonals" not in obj:
        raise ValueError("operator must be an object with a 'diagonals' field")
    diags = obj["diagonals"]
    if not isinstance(diags, dict):
        raise ValueError("'diagonals' must map offset strings to potentials")
    parsed = {}
    for key, payload in diags.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise ValueError(f"diagonal offset {key!r} is not an integer") from None
        parsed[k] = potential_from_json(payload)
    return band(parsed)
