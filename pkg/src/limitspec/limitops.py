"""Operator spectra, essential spectra as unions over limit operators, and
numeric verification of limit-operator claims.

The essential spectrum of a band operator in the Wiener algebra is the union
of the spectra of its limit operators.  This module enumerates (or samples)
those limit operators per diagonal structure:

* constant / periodic / eventually-constant diagonals — finitely many members
  (tail directions x shared shifts), each with an exact symbol spectrum;
* almost periodic diagonals — a torus of members swept over a phase grid and
  rationalized through continued-fraction convergents of the frequency;
* pseudo-ergodic diagonals — the dense periodic subset given by all finite
  words over the alphabet, up to a capped word length.

Also here: the closed form for random bidiagonal operators eps*V_{-1} + M_b
(union of eps-disks minus their common open intersection), the explicit
eigenvector verifier behind it, window checks of limit-operator claims, and a
heuristic lower-norm scan over sampled limit operators (a Favard-condition
surrogate, not a certificate).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .operators import (
    BandOperator,
    CapacityError,
    band,
    shift_conjugate,
    truncate,
)
from .potentials import (
    Constant,
    Explicit,
    FiniteSet,
    FullShift,
    IntegerSequenceSpec,
    LimitFamily,
    Periodic,
    Potential,
    QuasiPeriodic,
    TorusFamily,
    complex_to_json,
)
from .spectra import (
    Circle,
    ClosedDisk,
    SpectralRegion,
    _auto_bbox,
    _check_grid,
    _laurent_cloud,
    _periodic_cloud,
    _stamp_components,
    grid_centers,
    hausdorff_distance,
    lower_norm_estimate,
    rasterize_points,
)

__all__ = [
    "OperatorSpectrumFamily",
    "operator_spectrum",
    "EssentialOptions",
    "essential_spectrum",
    "random_bidiagonal_spectrum",
    "VerificationReport",
    "verify_randprod",
    "verify_limit_operator",
    "favard_report",
    "continued_fraction_convergents",
    "verification_report_to_json",
    "WORD_ENUM_CAP",
]

# |alphabet| ** wordLen may not exceed this in the pseudo-ergodic enumeration.
WORD_ENUM_CAP = 4096
# Residuals below this certify a verification claim.
VERIFY_TOL = 1e-10


# --------------------------------------------------------------------------
# Operator spectrum families.

@dataclass(frozen=True)
class OperatorSpectrumFamily:
    """Symbolic description of the set of limit operators of ``base``.

    ``per_diagonal`` maps each offset to the limit family of its potential;
    ``coupling`` records whether torus phases move together (they do whenever
    at least two diagonals share one frequency, since they then arose from a
    single almost periodic source and shift along the same subsequence).
    """

    base: BandOperator
    per_diagonal: tuple  # tuple of (offset, LimitFamily)
    coupling: str  # "Independent" | "SharedPhase"

    def family(self, k: int) -> LimitFamily | None:
        for offset, fam in self.per_diagonal:
            if offset == k:
                return fam
        return None

    def members(
        self,
        *,
        phase_samples: int = 16,
        word_len: int = 3,
        max_members: int | None = None,
    ) -> list[tuple[str, BandOperator]]:
        """Concrete sampled/enumerated limit operators as (descriptor, B)."""
        out = _enumerate_members(self.base, phase_samples=phase_samples, word_len=word_len)
        if max_members is not None:
            out = out[:max_members]
        return out


def operator_spectrum(a: BandOperator) -> OperatorSpectrumFamily:
    """Limit families per diagonal; SharedPhase when frequencies coincide."""
    per = tuple((k, p.limit_functions()) for k, p in a.diagonals)
    alphas = [fam.alpha for _, fam in per if isinstance(fam, TorusFamily)]
    coupling = "Independent"
    if any(alphas.count(al) >= 2 for al in alphas):
        coupling = "SharedPhase"
    return OperatorSpectrumFamily(a, per, coupling)


# --------------------------------------------------------------------------
# Diagonal classification shared by enumeration, essential spectra, favard.

def _classify(a: BandOperator) -> str:
    """Return one of "laurent", "finite", "torus", "words", "points".

    Raises ValueError naming the offending diagonal when the combination is
    unsupported.
    """
    full_offsets = []
    torus_offsets = []
    for k, p in a.diagonals:
        fam = p.limit_functions()
        if not isinstance(fam, (FiniteSet, TorusFamily, FullShift)):
            raise ValueError(
                f"diagonal at offset {k}: limit family {type(fam).__name__} is not "
                "supported (FiniteSet, TorusFamily, or FullShift expected)"
            )
        if isinstance(fam, FullShift):
            full_offsets.append(k)
        elif isinstance(fam, TorusFamily):
            torus_offsets.append(k)
    if full_offsets:
        if len(full_offsets) > 1:
            raise ValueError(
                f"diagonal at offset {full_offsets[1]}: only one pseudo-ergodic "
                "diagonal is supported"
            )
        for k, p in a.diagonals:
            if k not in full_offsets and not isinstance(p, Constant):
                raise ValueError(
                    f"diagonal at offset {k} must be Constant alongside a "
                    "pseudo-ergodic diagonal"
                )
        return "words"
    if torus_offsets:
        for k, p in a.diagonals:
            if k not in torus_offsets and not isinstance(p, (Constant, Periodic)):
                raise ValueError(
                    f"diagonal at offset {k}: {type(p).__name__} diagonals cannot "
                    "be combined with almost periodic ones"
                )
        return "torus"
    if all(isinstance(p, Constant) for _, p in a.diagonals):
        return "laurent"
    if all(isinstance(p, (Constant, Periodic, Explicit)) for _, p in a.diagonals):
        return "finite"
    if a.band_width == 0:
        return "points"
    for k, p in a.diagonals:
        if not isinstance(p, (Constant, Periodic, Explicit)):
            raise ValueError(
                f"diagonal at offset {k}: limit functions include non-periodic "
                "members; supported only for pure multiplication operators"
            )
    raise AssertionError("unreachable")  # pragma: no cover


def _shift_lcm(a: BandOperator) -> int:
    q = 1
    for _, p in a.diagonals:
        if isinstance(p, Periodic):
            q = q * p.period // math.gcd(q, p.period)
    return q


def _finite_members(a: BandOperator) -> list[tuple[str, BandOperator]]:
    """Tail-direction x shared-shift enumeration for Constant/Periodic/Explicit."""
    q = _shift_lcm(a)
    dirs = [+1]
    if any(isinstance(p, Explicit) for _, p in a.diagonals):
        dirs = [-1, +1]
    members = []
    for d in dirs:
        for r in range(q):
            diags = {}
            for k, p in a.diagonals:
                if isinstance(p, Explicit):
                    diags[k] = Constant(p.left if d < 0 else p.right)
                elif isinstance(p, Periodic):
                    diags[k] = p.translate(-r)
                else:
                    diags[k] = p
            desc = f"shift:{r}" if len(dirs) == 1 else f"tail:{'-' if d < 0 else '+'}inf,shift:{r}"
            members.append((desc, band(diags)))
    return members


def _word_members(a: BandOperator, word_len: int) -> tuple[list[tuple[str, BandOperator]], int]:
    """All alphabet words of length <= word_len as periodic potentials."""
    k_full = next(k for k, p in a.diagonals if isinstance(p.limit_functions(), FullShift))
    alphabet = a.diagonal(k_full).limit_functions().sorted_alphabet()
    word_len = max(1, int(word_len))
    effective = word_len
    while effective > 1 and len(alphabet) ** effective > WORD_ENUM_CAP:
        effective -= 1
    members = []
    for ell in range(1, effective + 1):
        for idx in itertools.product(range(len(alphabet)), repeat=ell):
            word = tuple(alphabet[i] for i in idx)
            diags = {k: p for k, p in a.diagonals if k != k_full}
            diags[k_full] = Constant(word[0]) if ell == 1 else Periodic(word)
            desc = "word:" + "".join(str(i) for i in idx)
            members.append((desc, band(diags)))
    return members, effective


def _torus_groups(a: BandOperator) -> list[tuple[float, list[int]]]:
    """Torus diagonals grouped by frequency (groups share one phase shift)."""
    groups: dict[float, list[int]] = {}
    for k, p in a.diagonals:
        fam = p.limit_functions()
        if isinstance(fam, TorusFamily):
            groups.setdefault(fam.alpha, []).append(k)
    return sorted(groups.items())


def _torus_members(
    a: BandOperator, phase_samples: int
) -> list[tuple[str, BandOperator]]:
    """Exact (quasi-periodic) members over the phase grid x shared shifts."""
    groups = _torus_groups(a)
    phase_samples = max(1, int(phase_samples))
    if phase_samples ** len(groups) > WORD_ENUM_CAP:
        raise CapacityError(
            f"phase grid {phase_samples}^{len(groups)} exceeds {WORD_ENUM_CAP}; "
            "reduce phaseSamples"
        )
    grid = [i / phase_samples for i in range(phase_samples)]
    q = _shift_lcm(a)
    members = []
    for tvec in itertools.product(grid, repeat=len(groups)):
        phase_of = {alpha: t for (alpha, _), t in zip(groups, tvec)}
        for r in range(q):
            diags = {}
            for k, p in a.diagonals:
                fam = p.limit_functions()
                if isinstance(fam, TorusFamily):
                    diags[k] = fam.sample(phase_of[fam.alpha])
                elif isinstance(p, Periodic):
                    diags[k] = p.translate(-r)
                else:
                    diags[k] = p
            desc = "phase:" + ",".join(f"{t:.10g}" for t in tvec)
            if q > 1:
                desc += f";shift:{r}"
            members.append((desc, band(diags)))
    return members


def _enumerate_members(
    a: BandOperator, *, phase_samples: int, word_len: int
) -> list[tuple[str, BandOperator]]:
    route = _classify(a)
    if route == "laurent":
        return [("laurent", a)]
    if route == "finite":
        return _finite_members(a)
    if route == "torus":
        return _torus_members(a, phase_samples)
    if route == "words":
        return _word_members(a, word_len)[0]
    # route == "points": multiplication operator with general FiniteSet members
    members = []
    (k0, p0), = a.diagonals
    for i, m in enumerate(p0.limit_functions().members):
        members.append((f"member:{i}", band({k0: m})))
    return members


# --------------------------------------------------------------------------
# Essential spectrum.

@dataclass(frozen=True)
class EssentialOptions:
    """Knobs for the union-over-limit-operators computation."""

    word_len: int = 4
    phase_samples: int = 64
    theta_samples: int = 256
    convergents: tuple | None = None  # ((p, q), ...) override for torus routes


def continued_fraction_convergents(
    alpha: float, max_terms: int = 8, max_den: int = 64
) -> list[tuple[int, int]]:
    """Convergents p/q of alpha in (0,1) with q <= max_den, best last."""
    x = float(alpha)
    convs: list[tuple[int, int]] = []
    p_prev, q_prev = 1, 0
    p_pprev, q_pprev = 0, 1
    y = x
    for _ in range(64):
        a_term = math.floor(y)
        p = a_term * p_prev + p_pprev
        q = a_term * q_prev + q_pprev
        p_pprev, q_pprev = p_prev, q_prev
        p_prev, q_prev = p, q
        if 0 < p < q:
            if q > max_den:
                break
            convs.append((p, q))
            if len(convs) >= max_terms:
                break
        frac = y - a_term
        if frac <= 1e-15:
            break
        y = 1.0 / frac
    if not convs:
        fr = Fraction(x).limit_denominator(max_den)
        num = min(max(fr.numerator, 1), fr.denominator - 1) if fr.denominator > 1 else 1
        den = fr.denominator if fr.denominator > 1 else 2
        convs = [(num, den)]
    return convs


def _member_cloud(b: BandOperator, theta_samples: int) -> tuple[np.ndarray, tuple]:
    """Spectrum point cloud of a Constant/Periodic member, per its class."""
    if all(isinstance(p, Constant) for _, p in b.diagonals):
        return _laurent_cloud(b, theta_samples)
    q = _shift_lcm(b)
    return _periodic_cloud(b, q, theta_samples)


def _range_closure(p: Potential) -> list[complex]:
    if isinstance(p, Constant):
        return [p.value]
    if isinstance(p, Periodic):
        return list(p.values)
    if isinstance(p, Explicit):
        return [p.left, p.right, *p.values]
    raise ValueError(
        f"cannot take the value closure of a {type(p).__name__} limit function"
    )


def _family_descriptors(a: BandOperator) -> list[dict]:
    out = []
    for k, p in a.diagonals:
        fam = p.limit_functions()
        d: dict = {"offset": k, "family": type(fam).__name__}
        if isinstance(fam, FiniteSet):
            d["size"] = len(fam.members)
        elif isinstance(fam, TorusFamily):
            d["alpha"] = fam.alpha
        elif isinstance(fam, FullShift):
            d["alphabet"] = [complex_to_json(v) for v in fam.sorted_alphabet()]
        out.append(d)
    return out


def _union_region(clouds, bbox, nx, ny, meta) -> SpectralRegion:
    """OR point clouds and stamp their components over one shared grid."""
    all_pts = np.concatenate([np.asarray(pts).ravel() for _, pts, _ in clouds])
    if bbox is None:
        bbox = _auto_bbox(all_pts)
    bbox = _check_grid(bbox, nx, ny)
    mask = np.zeros((ny, nx), dtype=bool)
    components: list = []
    dropped = 0
    for _, pts, comps in clouds:
        m, d = rasterize_points(pts, bbox, nx, ny)
        mask |= m
        dropped += d
        _stamp_components(mask, bbox, nx, ny, comps)
        for c in comps:
            if c not in components:
                components.append(c)
    meta = dict(meta)
    if dropped:
        meta["points_outside_bbox"] = dropped
    return SpectralRegion(bbox, nx, ny, mask, tuple(components), meta)


def _clouds_for(members, theta_samples: int, threads: int) -> list:
    """Per-member spectra, computed in parallel; order (hence output) is fixed."""
    def one(item):
        desc, b = item
        return (desc, *_member_cloud(b, theta_samples))

    if threads <= 1 or len(members) <= 1:
        return [one(it) for it in members]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, members))


def essential_spectrum(
    a: BandOperator,
    bbox: Sequence[float] | None = None,
    nx: int = 256,
    ny: int = 256,
    options: EssentialOptions | None = None,
    *,
    threads: int = 1,
) -> SpectralRegion:
    """Union of the spectra of enumerated/sampled limit operators of ``a``."""
    opts = options or EssentialOptions()
    nx, ny = int(nx), int(ny)
    threads = max(1, int(threads))
    route = _classify(a)
    meta: dict = {
        "kind": "essential_spectrum",
        "method": "union-over-limit-operators",
        "families": _family_descriptors(a),
        "wordLen": opts.word_len,
        "phaseSamples": opts.phase_samples,
        "thetaSamples": opts.theta_samples,
        "convergents": [],
        "closedByRasterization": True,
    }

    if route == "points":
        (k0, p0), = a.diagonals
        values: list[complex] = []
        for m in p0.limit_functions().members:
            for v in _range_closure(m):
                if v not in values:
                    values.append(v)
        values.sort(key=lambda z: (z.real, z.imag))
        comps = tuple(ClosedDisk(v, 0.0) for v in values)
        clouds = [("points", np.asarray(values, dtype=complex), comps)]
        meta["members"] = len(p0.limit_functions().members)
        return _union_region(clouds, bbox, nx, ny, meta)

    if route in ("laurent", "finite"):
        members = (
            [("laurent", a)] if route == "laurent" else _finite_members(a)
        )
        clouds = _clouds_for(members, opts.theta_samples, threads)
        meta["members"] = len(members)
        return _union_region(clouds, bbox, nx, ny, meta)

    if route == "words":
        members, effective = _word_members(a, opts.word_len)
        clouds = _clouds_for(members, opts.theta_samples, threads)
        meta["members"] = len(members)
        if effective != opts.word_len:
            meta["wordLenEffective"] = effective
        return _union_region(clouds, bbox, nx, ny, meta)

    # torus route: rationalize each sampled member at the last two convergents
    members = _torus_members(a, opts.phase_samples)
    alphas = [alpha for alpha, _ in _torus_groups(a)]
    if opts.convergents:
        convs = [tuple((int(p), int(q)) for p, q in opts.convergents)] * len(alphas)
    else:
        convs = [tuple(continued_fraction_convergents(al)) for al in alphas]
    meta["convergents"] = [[p, q] for p, q in convs[0]]
    meta["members"] = len(members)

    def union_at(pick) -> list:
        rationalized = []
        for desc, b in members:
            diags = {}
            for k, p in b.diagonals:
                fam = p.limit_functions()
                if isinstance(fam, TorusFamily):
                    pv, qv = pick(alphas.index(fam.alpha))
                    diags[k] = QuasiPeriodic.from_ratio(fam.amplitude, pv, qv, fam.phase)
                else:
                    diags[k] = p
            rationalized.append((desc, band(diags)))
        return _clouds_for(rationalized, opts.theta_samples, threads)

    last = union_at(lambda g: convs[g][-1])
    region = _union_region(last, bbox, nx, ny, meta)
    if any(len(c) >= 2 for c in convs):
        prev = union_at(lambda g: convs[g][-2] if len(convs[g]) >= 2 else convs[g][-1])
        prev_region = _union_region(prev, region.bbox, nx, ny, {})
        cauchy = hausdorff_distance(region.marked_points(), prev_region.marked_points())
        meta = dict(region.meta)
        meta["cauchyHausdorff"] = cauchy
        region = SpectralRegion(
            region.bbox, nx, ny, region.mask, region.components, meta
        )
    return region


# --------------------------------------------------------------------------
# Random bidiagonal closed form.

def random_bidiagonal_spectrum(
    sigma: Sequence[complex],
    eps: float,
    bbox: Sequence[float] | None = None,
    nx: int = 256,
    ny: int = 256,
) -> SpectralRegion:
    """Almost-sure spectrum of eps*V_{-1} + M_b with b pseudo-ergodic over Sigma.

    The closed form is the union of the closed eps-disks around the alphabet
    minus the interior of their common intersection; cell centers are tested
    against the defining inequalities min |lam - s| <= eps <= max |lam - s|
    pointwise, with no boundary fattening.  Components are annotations and are
    emitted only when exact: the circle for a singleton alphabet, the disk
    union when the common intersection is empty (alphabet diameter >= 2 eps).
    """
    values = [complex(s) for s in sigma]
    alphabet: list[complex] = []
    for v in values:
        if v not in alphabet:
            alphabet.append(v)
    if not alphabet:
        raise ValueError("the alphabet must be nonempty")
    eps = float(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    nx, ny = int(nx), int(ny)
    if bbox is None:
        arr = np.asarray(alphabet)
        extremes = np.concatenate([arr + eps, arr - eps, arr + 1j * eps, arr - 1j * eps])
        bbox = _auto_bbox(extremes)
    bbox = _check_grid(bbox, nx, ny)
    pts = grid_centers(bbox, nx, ny)
    d = np.abs(pts[None, :, :] - np.asarray(alphabet)[:, None, None])
    mask = (d.min(axis=0) <= eps) & (d.max(axis=0) >= eps)
    diam = max(
        (abs(u - v) for u, v in itertools.combinations(alphabet, 2)), default=0.0
    )
    if len(alphabet) == 1:
        components: tuple = (Circle(alphabet[0], eps),)
    elif diam >= 2 * eps:
        components = tuple(
            ClosedDisk(v, eps) for v in sorted(alphabet, key=lambda z: (z.real, z.imag))
        )
    else:
        components = ()
    meta = {
        "kind": "random_bidiagonal",
        "epsilon": eps,
        "alphabet": [complex_to_json(v) for v in alphabet],
    }
    return SpectralRegion(bbox, nx, ny, mask, components, meta)


# --------------------------------------------------------------------------
# Verification reports.

@dataclass(frozen=True)
class VerificationReport:
    max_discrepancy: float
    windows_compared: int
    verdict: bool
    certificate: float | None = None
    details: tuple = field(default=(), compare=False)


def verification_report_to_json(r: VerificationReport) -> dict:
    out = {
        "maxDiscrepancy": r.max_discrepancy,
        "windowsCompared": r.windows_compared,
        "verdict": r.verdict,
    }
    if r.certificate is not None:
        out["certificate"] = r.certificate
    return out


def verify_randprod(
    lam: complex, sigma: complex, tau: complex, window_radius: int
) -> VerificationReport:
    """Check the explicit eigenvector of V_{-1} + M_c at lam on a window.

    c(k) = tau for k < 0 and sigma for k >= 0; x(0) = 1 and
    x(k+1) = (lam - c(k)) x(k), which dies off both ways exactly when
    |lam - sigma| <= 1 <= |lam - tau|.  Reports the eigen-equation residual
    sup over |n| <= window_radius - 1 and the window sup of |x| as a
    boundedness certificate.
    """
    lam, sigma, tau = complex(lam), complex(sigma), complex(tau)
    radius = int(window_radius)
    if radius < 1:
        raise ValueError(f"window radius must be >= 1, got {radius}")
    if abs(lam - sigma) > 1.0 or abs(lam - tau) < 1.0:
        raise ValueError(
            "the construction requires |lam - sigma| <= 1 <= |lam - tau|; "
            f"got |lam-sigma| = {abs(lam - sigma)}, |lam-tau| = {abs(lam - tau)}"
        )
    if lam == tau:
        raise ValueError("lam must differ from tau (the backward ratio divides by lam - tau)")
    ns = np.arange(-radius, radius + 1)
    x = np.empty(2 * radius + 1, dtype=complex)
    x[radius] = 1.0
    for n in range(0, radius):
        x[radius + n + 1] = (lam - sigma) * x[radius + n]
    for n in range(-1, -radius - 1, -1):
        x[radius + n] = x[radius + n + 1] / (lam - tau)
    c = np.where(ns < 0, tau, sigma)
    # ((V_{-1} + M_c - lam) x)(n) = x(n+1) + (c(n) - lam) x(n), n in [-R, R-1]
    resid = x[1:] + (c[:-1] - lam) * x[:-1]
    inner = resid[1:]  # positions |n| <= radius - 1
    max_resid = float(np.max(np.abs(inner))) if len(inner) else 0.0
    cert = float(np.max(np.abs(x)))
    return VerificationReport(
        max_discrepancy=max_resid,
        windows_compared=len(inner),
        verdict=max_resid <= VERIFY_TOL,
        certificate=cert,
    )


def verify_limit_operator(
    a: BandOperator,
    h: IntegerSequenceSpec,
    b: BandOperator,
    m: int,
    steps: int,
    tol: float,
) -> VerificationReport:
    """Window check that B is the limit operator of A along h.

    For n = steps-2 .. steps, compares V_{-h(n)} A V_{h(n)} against B on the
    rectangular windows rows [-m-w, m+w] x cols [-m, m] and the transpose
    shape (finite realizations of ||(A_n - B) P_m|| and ||P_m (A_n - B)||),
    taking spectral 2-norms; verdict true iff all six norms are <= tol.
    """
    m = int(m)
    steps = int(steps)
    tol = float(tol)
    if m > 256:
        raise CapacityError(f"window half-width m = {m} exceeds the cap 256")
    if m < 0:
        raise ValueError(f"window half-width must be >= 0, got {m}")
    if steps < 3:
        raise ValueError(f"steps must be >= 3, got {steps}")
    w = max(a.band_width, b.band_width)
    wide = (-m - w, m + w)
    narrow = (-m, m)
    norms = []
    for n in range(steps - 2, steps + 1):
        shifted = shift_conjugate(a, h.eval(n))
        for rows, cols in ((wide, narrow), (narrow, wide)):
            d = truncate(shifted, rows, cols).entries - truncate(b, rows, cols).entries
            norms.append(float(np.linalg.norm(d, 2)))
    worst = max(norms)
    return VerificationReport(
        max_discrepancy=worst,
        windows_compared=len(norms),
        verdict=worst <= tol,
        details=tuple(norms),
    )


# --------------------------------------------------------------------------
# Favard-condition surrogate.

def favard_report(a: BandOperator, samples: int, n: int) -> list[tuple[str, float]]:
    """Lower-norm estimates over sampled limit operators (heuristic only).

    Enumerates FiniteSet-backed members fully, sweeps a uniform phase grid for
    torus families, and draws seeded random words for pseudo-ergodic
    diagonals.  Small estimates flag candidate Favard failures; this is a
    desk-scale diagnostic, not an injectivity certificate.
    """
    samples = max(1, int(samples))
    route = _classify(a)
    if route == "words":
        k_full = next(
            k for k, p in a.diagonals if isinstance(p.limit_functions(), FullShift)
        )
        alphabet = a.diagonal(k_full).limit_functions().sorted_alphabet()
        rng = np.random.default_rng(0)
        members = []
        for _ in range(samples):
            idx = rng.integers(0, len(alphabet), size=8)
            word = tuple(alphabet[int(i)] for i in idx)
            diags = {k: p for k, p in a.diagonals if k != k_full}
            diags[k_full] = Periodic(word)
            members.append(("word:" + "".join(str(int(i)) for i in idx), band(diags)))
    else:
        members = _enumerate_members(a, phase_samples=samples, word_len=3)[:samples]
    return [(desc, lower_norm_estimate(b, n)) for desc, b in members]
