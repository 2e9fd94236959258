"""Shared fixtures and independent oracle implementations.

The oracles here recompute expected values through routes that do not share
code with the library: direct diagonal walks for entries, meshgrid disk tests
for the random bidiagonal closed form, cumulative products for the explicit
eigenvector, and O(n^2) scans for Hausdorff distances.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import limitspec as ls

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=25,
)
settings.load_profile("suite")


def free_jacobi() -> ls.BandOperator:
    """L = V_{-1} + V_1, the free discrete Laplacian without the diagonal."""
    return ls.band({-1: ls.Constant(1.0), 1: ls.Constant(1.0)})


def jacobi_with(v) -> ls.BandOperator:
    return ls.band({-1: ls.Constant(1.0), 1: ls.Constant(1.0), 0: v})


def brute_entry(a: ls.BandOperator, i: int, j: int) -> complex:
    """Entry law a_{ij} = b_{i-j}(i), walked directly over the diagonals."""
    total = 0j
    for k, p in a.diagonals:
        if i - j == k:
            total += complex(p.eval_many(np.array([i], dtype=np.int64))[0])
    return total


def brute_dense(a: ls.BandOperator, rows, cols) -> np.ndarray:
    rlo, rhi = rows
    clo, chi = cols
    out = np.zeros((rhi - rlo + 1, chi - clo + 1), dtype=complex)
    for ii, i in enumerate(range(rlo, rhi + 1)):
        for jj, j in enumerate(range(clo, chi + 1)):
            out[ii, jj] = brute_entry(a, i, j)
    return out


def cell_centers(bbox, nx, ny):
    """Cell-center grid recomputed from the documented formula."""
    re_min, re_max, im_min, im_max = bbox
    dx = (re_max - re_min) / nx
    dy = (im_max - im_min) / ny
    xs = re_min + dx * (np.arange(nx) + 0.5)
    ys = im_min + dy * (np.arange(ny) + 0.5)
    x, y = np.meshgrid(xs, ys)
    return x + 1j * y


def brute_random_mask(alphabet, eps, bbox, nx, ny) -> np.ndarray:
    """Independent per-disk rasterizer for the random bidiagonal closed form."""
    z = cell_centers(bbox, nx, ny)
    inside_any = np.zeros(z.shape, dtype=bool)
    inside_all_strict = np.ones(z.shape, dtype=bool)
    for s in alphabet:
        d = np.abs(z - complex(s))
        inside_any |= d <= eps
        inside_all_strict &= d < eps
    return inside_any & ~inside_all_strict


def brute_hausdorff(pa, pb) -> float:
    pa = np.asarray(pa).ravel()
    pb = np.asarray(pb).ravel()
    d = np.abs(pa[:, None] - pb[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def randprod_vector(lam, sigma, tau, radius) -> np.ndarray:
    """x(n) for n in [-radius, radius] built by cumulative products only."""
    lam, sigma, tau = complex(lam), complex(sigma), complex(tau)
    fwd = np.cumprod(np.full(radius, lam - sigma, dtype=complex))  # x(1..R)
    bwd = np.cumprod(np.full(radius, 1.0 / (lam - tau), dtype=complex))  # x(-1..-R)
    x = np.empty(2 * radius + 1, dtype=complex)
    x[radius] = 1.0
    x[radius + 1 :] = fwd
    x[:radius] = bwd[::-1]
    return x


@pytest.fixture
def tmp_out(tmp_path):
    return tmp_path


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end contract checks with runtime budgets")
