"""Spectra of individual band operators and the SVD machinery behind them.

Four computation routes live here:

* Laurent symbol curves for constant-diagonal operators,
* Floquet-Bloch symbol matrices M(z) for periodic diagonals (the spectrum is
  the union of eig(M(z)) over the unit circle),
* transfer-matrix discriminants for Jacobi operators V_{-1} + V_1 + M_v,
* smallest singular values of Dirichlet windows, which drive pseudospectra
  (square windows) and certified lower-norm upper bounds (rectangular windows).

Results are returned as :class:`SpectralRegion`: a rasterized mask over a bbox
grid plus optional analytic components (intervals, circles, closed disks).
Grid semantics are cell-centered: a cell is "in" an analytic set when its
center satisfies the defining inequality; point clouds mark the cell that
contains each point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg as sla
from scipy.spatial import cKDTree

from .operators import (
    BandOperator,
    CapacityError,
    truncate,
)
from .potentials import Constant, Periodic, Potential, complex_from_json, complex_to_json

__all__ = [
    "RealInterval",
    "Circle",
    "ClosedDisk",
    "SpectralRegion",
    "FloquetSymbol",
    "floquet_symbol",
    "symbol_matrix",
    "periodic_spectrum",
    "transfer_discriminant",
    "laurent_spectrum",
    "smin_truncation",
    "pseudospectrum",
    "lower_norm_estimate",
    "grid_centers",
    "rasterize_points",
    "hausdorff_distance",
    "region_to_json",
    "region_from_json",
    "REAL_BAND_TOL",
    "UNIT_CIRCLE_TOL",
    "MAX_TRUNCATION_N",
]

# Imaginary parts below this are treated as zero when emitting real intervals.
REAL_BAND_TOL = 1e-10
# |z| must sit on the unit circle within this tolerance for symbol evaluation.
UNIT_CIRCLE_TOL = 1e-12
# Half-window cap for smin/lower-norm truncations.
MAX_TRUNCATION_N = 2048
# Window sizes up to this take the dense SVD; larger ones use the Hermitian
# banded eigensolver on M^H M (fast, but with a ~1e-8 error floor near 0).
_DENSE_SMIN_LIMIT = 400


# --------------------------------------------------------------------------
# Analytic components.

@dataclass(frozen=True)
class RealInterval:
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if self.a > self.b:
            raise ValueError(f"interval endpoints out of order: [{self.a}, {self.b}]")

    def distance(self, pts: np.ndarray) -> np.ndarray:
        re = np.clip(pts.real, self.a, self.b)
        return np.abs(pts - re)

    def to_json(self):
        return {"type": "interval", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0:
            raise ValueError(f"negative radius {self.radius}")

    def distance(self, pts: np.ndarray) -> np.ndarray:
        return np.abs(np.abs(pts - self.center) - self.radius)

    def to_json(self):
        return {"type": "circle", "center": complex_to_json(self.center), "radius": self.radius}


@dataclass(frozen=True)
class ClosedDisk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0:
            raise ValueError(f"negative radius {self.radius}")

    def distance(self, pts: np.ndarray) -> np.ndarray:
        return np.maximum(np.abs(pts - self.center) - self.radius, 0.0)

    def to_json(self):
        return {
            "type": "closed_disk",
            "center": complex_to_json(self.center),
            "radius": self.radius,
        }


def _component_from_json(obj) -> RealInterval | Circle | ClosedDisk:
    kind = obj.get("type")
    if kind == "interval":
        return RealInterval(obj["a"], obj["b"])
    if kind == "circle":
        return Circle(complex_from_json(obj["center"]), obj["radius"])
    if kind == "closed_disk":
        return ClosedDisk(complex_from_json(obj["center"]), obj["radius"])
    raise ValueError(f"unknown component type {kind!r}")


# --------------------------------------------------------------------------
# Spectral regions.

def grid_centers(bbox: Sequence[float], nx: int, ny: int) -> np.ndarray:
    """Cell centers as a (ny, nx) complex array; row index runs along Im."""
    re_min, re_max, im_min, im_max = (float(v) for v in bbox)
    dx = (re_max - re_min) / nx
    dy = (im_max - im_min) / ny
    xs = re_min + dx * (np.arange(nx) + 0.5)
    ys = im_min + dy * (np.arange(ny) + 0.5)
    return xs[None, :] + 1j * ys[:, None]


@dataclass(frozen=True, eq=False)
class SpectralRegion:
    """Rasterized subset of the plane plus optional analytic components."""

    bbox: tuple
    nx: int
    ny: int
    mask: np.ndarray
    components: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        bbox = tuple(float(v) for v in self.bbox)
        if len(bbox) != 4 or not (bbox[0] < bbox[1] and bbox[2] < bbox[3]):
            raise ValueError(f"degenerate bbox {bbox}")
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (self.ny, self.nx):
            raise ValueError(f"mask shape {mask.shape} does not match ny={self.ny}, nx={self.nx}")
        mask.setflags(write=False)
        object.__setattr__(self, "bbox", bbox)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def cell_size(self) -> tuple:
        return (
            (self.bbox[1] - self.bbox[0]) / self.nx,
            (self.bbox[3] - self.bbox[2]) / self.ny,
        )

    def centers(self) -> np.ndarray:
        return grid_centers(self.bbox, self.nx, self.ny)

    def marked_points(self) -> np.ndarray:
        """Centers of marked cells, row-major order."""
        return self.centers()[self.mask]

    def validate(self) -> None:
        """Check the component/mask consistency invariant: every cell center
        within half a cell diagonal of a component must be marked."""
        if not self.components:
            return
        dx, dy = self.cell_size
        half = 0.5 * math.hypot(dx, dy)
        pts = self.centers()
        for comp in self.components:
            covered = comp.distance(pts) <= half
            if np.any(covered & ~self.mask):
                bad = np.argwhere(covered & ~self.mask)[0]
                raise AssertionError(
                    f"component {comp} covers unmarked cell (iy={bad[0]}, ix={bad[1]})"
                )


def _check_grid(bbox, nx: int, ny: int) -> tuple:
    bbox = tuple(float(v) for v in bbox)
    if len(bbox) != 4 or not (bbox[0] < bbox[1] and bbox[2] < bbox[3]):
        raise ValueError(f"degenerate bbox {bbox}")
    if nx < 1 or ny < 1:
        raise ValueError(f"grid must be at least 1x1, got {nx}x{ny}")
    return bbox


def rasterize_points(points: np.ndarray, bbox: Sequence[float], nx: int, ny: int) -> tuple[np.ndarray, int]:
    """Mark the cells containing each point; returns (mask, dropped_count)."""
    re_min, re_max, im_min, im_max = _check_grid(bbox, nx, ny)
    mask = np.zeros((ny, nx), dtype=bool)
    points = np.asarray(points).ravel()
    if len(points) == 0:
        return mask, 0
    ix = np.floor((points.real - re_min) / (re_max - re_min) * nx).astype(np.int64)
    iy = np.floor((points.imag - im_min) / (im_max - im_min) * ny).astype(np.int64)
    # points sitting exactly on the top/right edge belong to the last cell
    ix[(points.real == re_max)] = nx - 1
    iy[(points.imag == im_max)] = ny - 1
    ok = (ix >= 0) & (ix < nx) & (iy >= 0) & (iy < ny)
    mask[iy[ok], ix[ok]] = True
    return mask, int(len(points) - ok.sum())


def _stamp_components(mask: np.ndarray, bbox, nx, ny, components) -> None:
    if not components:
        return
    dx = (bbox[1] - bbox[0]) / nx
    dy = (bbox[3] - bbox[2]) / ny
    half = 0.5 * math.hypot(dx, dy)
    pts = grid_centers(bbox, nx, ny)
    for comp in components:
        mask |= comp.distance(pts) <= half


def _auto_bbox(points: np.ndarray) -> tuple:
    re = points.real
    im = points.imag
    re_min, re_max = float(re.min()), float(re.max())
    im_min, im_max = float(im.min()), float(im.max())
    pad_x = 0.05 * (re_max - re_min) + 0.1
    pad_y = 0.05 * (im_max - im_min) + 0.1
    return (re_min - pad_x, re_max + pad_x, im_min - pad_y, im_max + pad_y)


def _point_cloud_region(points, components, meta, bbox, nx, ny) -> SpectralRegion:
    points = np.asarray(points).ravel()
    nx, ny = int(nx), int(ny)
    if bbox is None:
        bbox = _auto_bbox(points)
    bbox = _check_grid(bbox, nx, ny)
    mask, dropped = rasterize_points(points, bbox, nx, ny)
    _stamp_components(mask, bbox, nx, ny, components)
    meta = dict(meta)
    if dropped:
        meta["points_outside_bbox"] = dropped
    return SpectralRegion(tuple(bbox), nx, ny, mask, tuple(components), meta)


# --------------------------------------------------------------------------
# Floquet-Bloch symbols.

@dataclass(frozen=True, eq=False)
class FloquetSymbol:
    """q x q Laurent-polynomial matrix; entry (r, s) is sum_l b_{r-s-ql}(r) z^l.

    The assembly corresponds to the quasi-periodic ansatz
    x(m) = z^{floor(m/q)} u(m mod q); at q = 1 it reduces to the scalar Laurent
    symbol sum_k b_k z^{-k}.
    """

    q: int
    terms: tuple  # tuple of ((r, s), ((l, coeff), ...)) entries

    def evaluate(self, z: complex) -> np.ndarray:
        z = complex(z)
        if abs(abs(z) - 1.0) > UNIT_CIRCLE_TOL:
            raise ValueError(f"symbol must be evaluated on the unit circle; |z| = {abs(z)}")
        m = np.zeros((self.q, self.q), dtype=complex)
        for (r, s), entry_terms in self.terms:
            m[r, s] = sum(c * z**l for l, c in entry_terms)
        return m


def _diagonal_period(p: Potential) -> int | None:
    if isinstance(p, Constant):
        return 1
    if isinstance(p, Periodic):
        return p.period
    return None


def _common_period(a: BandOperator) -> int:
    q = 1
    for k, p in a.diagonals:
        period = _diagonal_period(p)
        if period is None:
            raise ValueError(
                f"diagonal at offset {k} is not Constant or Periodic; "
                "Floquet machinery needs periodic coefficients"
            )
        q = q * period // math.gcd(q, period)
    return q


def floquet_symbol(a: BandOperator, q: int) -> FloquetSymbol:
    q = int(q)
    if q < 1:
        raise ValueError(f"period must be >= 1, got {q}")
    for k, p in a.diagonals:
        period = _diagonal_period(p)
        if period is None:
            raise ValueError(
                f"diagonal at offset {k} is not Constant or Periodic; "
                "Floquet machinery needs periodic coefficients"
            )
        if q % period:
            raise ValueError(
                f"q = {q} is not a common period: diagonal at offset {k} has period {period}"
            )
    terms = []
    for r in range(q):
        row_vals = {k: p.eval(r) for k, p in a.diagonals}
        for s in range(q):
            entry_terms = []
            for k, v in row_vals.items():
                if (r - s - k) % q == 0:
                    entry_terms.append(((r - s - k) // q, v))
            if entry_terms:
                entry_terms.sort(key=lambda lc: lc[0])
                terms.append(((r, s), tuple(entry_terms)))
    return FloquetSymbol(q, tuple(terms))


def symbol_matrix(a: BandOperator, q: int, z: complex) -> np.ndarray:
    """M(z)_{r,s} = sum_l b_{r-s-ql}(r) z^l over the band, |z| = 1."""
    return floquet_symbol(a, q).evaluate(z)


def _merge_intervals(intervals: list[tuple[float, float]]) -> list[RealInterval]:
    merged: list[list[float]] = []
    for a, b in sorted(intervals):
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [RealInterval(a, b) for a, b in merged]


def _periodic_cloud(a: BandOperator, q: int, theta_samples: int) -> tuple[np.ndarray, tuple]:
    """Eigenvalue cloud of the symbol over the theta grid, plus band components."""
    sym = floquet_symbol(a, q)
    thetas = 2.0 * np.pi * np.arange(theta_samples) / theta_samples
    eigs = np.empty((theta_samples, sym.q), dtype=complex)
    for i, th in enumerate(thetas):
        z = complex(math.cos(th), math.sin(th))
        try:
            eigs[i] = np.linalg.eigvals(sym.evaluate(z))
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK hiccup
            raise RuntimeError(f"eigen-solver failure for symbol at theta={th}: {exc}") from exc
    components: tuple = ()
    if float(np.max(np.abs(eigs.imag))) <= REAL_BAND_TOL:
        bands = np.sort(eigs.real, axis=1)
        components = tuple(
            _merge_intervals([(float(bands[:, j].min()), float(bands[:, j].max())) for j in range(sym.q)])
        )
        eigs = bands.astype(complex)
    return eigs.ravel(), components


def periodic_spectrum(
    a: BandOperator,
    q: int,
    theta_samples: int = 256,
    *,
    bbox: Sequence[float] | None = None,
    nx: int = 256,
    ny: int = 256,
) -> SpectralRegion:
    """Union over |z| = 1 of the symbol-matrix eigenvalues, rasterized.

    When every eigenvalue is real within ``REAL_BAND_TOL`` the q bands are also
    returned as merged RealInterval components.
    """
    theta_samples = int(theta_samples)
    if theta_samples < 64:
        raise ValueError(f"theta_samples must be >= 64, got {theta_samples}")
    points, components = _periodic_cloud(a, q, theta_samples)
    meta = {"kind": "periodic_spectrum", "q": int(q), "theta_samples": theta_samples}
    return _point_cloud_region(points, components, meta, bbox, nx, ny)


def transfer_discriminant(v: Potential, lam: complex) -> complex:
    """Trace of the transfer cocycle T_q ... T_1 for A = V_{-1} + V_1 + M_v.

    lam is in the spectrum of the Jacobi operator iff the discriminant is real
    (within ``REAL_BAND_TOL``) with modulus <= 2.
    """
    if isinstance(v, Constant):
        values = [v.value]
    elif isinstance(v, Periodic):
        values = list(v.values)
    else:
        raise ValueError(
            "transfer discriminant applies to the Jacobi form V_{-1}+V_1+M_v "
            "with Constant or Periodic v only"
        )
    lam = complex(lam)
    t = np.eye(2, dtype=complex)
    for j in range(1, len(values) + 1):
        tj = np.array([[lam - values[j % len(values)], -1.0], [1.0, 0.0]], dtype=complex)
        t = tj @ t
    return complex(t[0, 0] + t[1, 1])


def _laurent_cloud(a: BandOperator, theta_samples: int) -> tuple[np.ndarray, tuple]:
    """Symbol-curve samples of a constant-diagonal operator, plus components."""
    coeffs: dict[int, complex] = {}
    for k, p in a.diagonals:
        if not isinstance(p, Constant):
            raise ValueError(f"diagonal at offset {k} is not Constant; Laurent symbol undefined")
        coeffs[k] = p.value
    thetas = 2.0 * np.pi * np.arange(theta_samples) / theta_samples
    curve = np.zeros(theta_samples, dtype=complex)
    for k, c in coeffs.items():
        curve += c * np.exp(-1j * k * thetas)
    components: tuple = ()
    if float(np.max(np.abs(curve.imag))) <= REAL_BAND_TOL:
        components = (RealInterval(float(curve.real.min()), float(curve.real.max())),)
    else:
        modes = [k for k in coeffs if k != 0]
        if len(modes) == 1:
            center = coeffs.get(0, 0j)
            components = (Circle(center, abs(coeffs[modes[0]])),)
    return curve, components


def laurent_spectrum(
    a: BandOperator,
    theta_samples: int = 256,
    *,
    bbox: Sequence[float] | None = None,
    nx: int = 256,
    ny: int = 256,
) -> SpectralRegion:
    """Symbol curve {sum_k c_k e^{-ik theta}} of a constant-diagonal operator."""
    theta_samples = int(theta_samples)
    if theta_samples < 1:
        raise ValueError(f"theta_samples must be >= 1, got {theta_samples}")
    curve, components = _laurent_cloud(a, theta_samples)
    meta = {"kind": "laurent_spectrum", "theta_samples": theta_samples}
    return _point_cloud_region(curve, components, meta, bbox, nx, ny)


# --------------------------------------------------------------------------
# Smallest singular values of truncations.

def _window_bands(a: BandOperator, n: int) -> dict[int, np.ndarray]:
    """Per-offset value arrays for the square window [-n, n]^2.

    bands[k][j] = b_k(row) at local column j, row = j + k - n; entries whose
    row falls outside the window are zero.
    """
    size = 2 * n + 1
    bands: dict[int, np.ndarray] = {}
    for k, p in a.diagonals:
        vals = np.zeros(size, dtype=complex)
        j0 = max(0, -k)
        j1 = min(size, size - k)
        if j0 < j1:
            rows = np.arange(j0, j1, dtype=np.int64) + k - n
            vals[j0:j1] = p.eval_many(rows)
        bands[k] = vals
    return bands


def _smin_dense(bands: dict[int, np.ndarray], lam: complex, size: int) -> float:
    m = np.zeros((size, size), dtype=complex)
    idx = np.arange(size)
    np.fill_diagonal(m, lam)
    for k, vals in bands.items():
        jj = idx[(idx + k >= 0) & (idx + k < size)]
        m[jj + k, jj] -= vals[jj]
    return float(sla.svdvals(m)[-1])


def _smin_banded(bands: dict[int, np.ndarray], lam: complex, size: int, w: int) -> float:
    # column-aligned bands of M = lam*I - A: band_k[j] = M[j+k, j]
    mbands: dict[int, np.ndarray] = {}
    for k, vals in bands.items():
        mbands[k] = -vals
    mbands[0] = mbands.get(0, np.zeros(size, dtype=complex)) + lam
    offsets = sorted(mbands)
    # G = M^H M is Hermitian banded with half-bandwidth 2w:
    # G[j, j+t] = sum_{k1 - k2 = t} conj(M[j+k1, j]) M[j+k1, j+t]
    ab = np.zeros((2 * w + 1, size), dtype=complex)
    idx = np.arange(size)
    for t in range(0, 2 * w + 1):
        acc = np.zeros(size, dtype=complex)
        for k2 in offsets:
            k1 = t + k2
            if k1 not in mbands:
                continue
            rows = idx + k1  # = (j) + k1 and = (j + t) + k2
            valid = (rows >= 0) & (rows < size) & (idx + t < size)
            a1 = np.where(valid, mbands[k1], 0)
            a2 = np.zeros(size, dtype=complex)
            jt = idx[valid] + t
            a2[valid] = mbands[k2][jt]
            acc += np.conj(a1) * a2
        # lower LAPACK storage: ab[t, j] = G[j + t, j] = conj(G[j, j + t])
        ab[t] = np.conj(acc)
    vals = sla.eig_banded(ab, lower=True, eigvals_only=True, select="i", select_range=(0, 0))
    return math.sqrt(max(float(vals[0].real), 0.0))


def smin_truncation(a: BandOperator, lam: complex, n: int) -> float:
    """Smallest singular value of the square Dirichlet window of lam*I - A.

    Estimates 1/||(lam I - A)^{-1}|| and hence drives pseudospectrum masks.
    """
    n = int(n)
    if n > MAX_TRUNCATION_N:
        raise CapacityError(f"truncation half-width {n} exceeds the cap {MAX_TRUNCATION_N}")
    if n < 0:
        raise ValueError(f"truncation half-width must be >= 0, got {n}")
    size = 2 * n + 1
    if size > 4096:
        raise CapacityError(f"window side {size} exceeds the dense cap 4096")
    bands = _window_bands(a, n)
    if size <= _DENSE_SMIN_LIMIT:
        return _smin_dense(bands, complex(lam), size)
    return _smin_banded(bands, complex(lam), size, a.band_width)


def pseudospectrum(
    a: BandOperator,
    eps: float,
    bbox: Sequence[float],
    nx: int,
    ny: int,
    n: int,
    *,
    threads: int = 1,
) -> SpectralRegion:
    """Grid mask of {lam : smin_truncation(a, lam, n) <= eps}."""
    eps = float(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    n = int(n)
    if n > MAX_TRUNCATION_N:
        raise CapacityError(f"truncation half-width {n} exceeds the cap {MAX_TRUNCATION_N}")
    size = 2 * n + 1
    if size > 4096:
        raise CapacityError(f"window side {size} exceeds the dense cap 4096")
    nx, ny = int(nx), int(ny)
    bbox = _check_grid(bbox, nx, ny)
    bands = _window_bands(a, n)
    w = a.band_width
    pts = grid_centers(bbox, nx, ny)

    def smin_row(iy: int) -> np.ndarray:
        row = pts[iy]
        if size <= _DENSE_SMIN_LIMIT:
            return np.array([_smin_dense(bands, complex(lam), size) for lam in row])
        return np.array([_smin_banded(bands, complex(lam), size, w) for lam in row])

    threads = max(1, int(threads))
    if threads == 1:
        rows = [smin_row(iy) for iy in range(ny)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(smin_row, range(ny)))
    smin = np.vstack(rows)
    mask = smin <= eps
    meta = {"kind": "pseudospectrum", "epsilon": eps, "n": n}
    return SpectralRegion(tuple(float(v) for v in bbox), nx, ny, mask, (), meta)


def lower_norm_estimate(a: BandOperator, n: int) -> float:
    """sigma_min of the rectangular window rows [-n-w, n+w] x cols [-n, n].

    The rectangle captures every image entry of a window-supported vector, so
    the value is a certified upper bound for the lower norm nu(A) and is
    monotonically non-increasing in n.  Always computed by dense SVD.
    """
    n = int(n)
    if n > MAX_TRUNCATION_N:
        raise CapacityError(f"truncation half-width {n} exceeds the cap {MAX_TRUNCATION_N}")
    if n < 0:
        raise ValueError(f"truncation half-width must be >= 0, got {n}")
    w = a.band_width
    m = truncate(a, (-n - w, n + w), (-n, n))
    return float(sla.svdvals(m.entries)[-1])


# --------------------------------------------------------------------------
# Hausdorff distances between point sets (marked cell centers).

def hausdorff_distance(pts_a: np.ndarray, pts_b: np.ndarray) -> float:
    """Max of the two directed sup-inf distances; inf if exactly one is empty."""
    pa = np.asarray(pts_a).ravel()
    pb = np.asarray(pts_b).ravel()
    if len(pa) == 0 and len(pb) == 0:
        return 0.0
    if len(pa) == 0 or len(pb) == 0:
        return math.inf
    xa = np.column_stack([pa.real, pa.imag])
    xb = np.column_stack([pb.real, pb.imag])
    d_ab = cKDTree(xb).query(xa)[0].max()
    d_ba = cKDTree(xa).query(xb)[0].max()
    return float(max(d_ab, d_ba))


# --------------------------------------------------------------------------
# Region JSON.

def region_to_json(region: SpectralRegion) -> dict:
    out = {
        "bbox": list(region.bbox),
        "nx": region.nx,
        "ny": region.ny,
        "mask": [int(v) for v in region.mask.ravel()],
        "components": [c.to_json() for c in region.components],
    }
    if region.meta:
        out["provenance"] = region.meta
    return out


def region_from_json(obj) -> SpectralRegion:
    if not isinstance(obj, dict):
        raise ValueError("region must be a JSON object")
    try:
        bbox = tuple(float(v) for v in obj["bbox"])
        nx, ny = int(obj["nx"]), int(obj["ny"])
        mask = np.asarray(obj["mask"], dtype=bool).reshape(ny, nx)
        components = tuple(_component_from_json(c) for c in obj.get("components", []))
    except KeyError as exc:
        raise ValueError(f"region is missing field {exc.args[0]!r}") from None
    meta = dict(obj.get("provenance", {}))
    return SpectralRegion(bbox, nx, ny, mask, components, meta)
