import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import limitspec as ls

WINDOW = np.arange(-32, 33, dtype=np.int64)

finite_complex = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2))

constants = st.builds(ls.Constant, finite_complex)
periodics = st.builds(
    lambda vs: ls.Periodic(tuple(vs)), st.lists(finite_complex, min_size=1, max_size=6)
)
quasis = st.builds(
    ls.QuasiPeriodic,
    st.floats(0.1, 2.0),
    st.floats(0.05, 0.95),
    st.floats(0.0, 1.0),
)
slow_osc = st.builds(
    ls.SlowlyOscillatingModulation,
    st.floats(0.1, 2.0),
    st.floats(0.05, 0.95),
    st.floats(0.0, 1.0),
    st.sampled_from(ls.DRIFT_FUNCTIONS),
)
pseudo_ergodics = st.builds(
    lambda vs, seed: ls.PseudoErgodic(tuple(vs), seed),
    st.lists(finite_complex, min_size=1, max_size=4),
    st.integers(0, 2**32),
)
explicits = st.builds(
    lambda start, vs, left, right: ls.Explicit(start, tuple(vs), left, right),
    st.integers(-5, 5),
    st.lists(finite_complex, min_size=1, max_size=5),
    finite_complex,
    finite_complex,
)
potentials = st.one_of(
    constants, periodics, quasis, slow_osc, pseudo_ergodics, st.just(ls.SqrtParity()), explicits
)


# ---------------------------------------------------------------------------
# translation law
# ---------------------------------------------------------------------------


@given(potentials, st.integers(-8, 8))
def test_translate_matches_shifted_evaluation(p, k):
    got = p.translate(k).eval_many(WINDOW)
    want = p.eval_many(WINDOW - k)
    # exact in exact arithmetic; the slack absorbs cos argument reduction
    assert np.max(np.abs(got - want)) <= 5e-13


@given(potentials, st.integers(-6, 6), st.integers(-6, 6))
def test_translate_composes(p, j, k):
    via_two = p.translate(j).translate(k)
    direct = p.translate(j + k)
    assert ls.window_equal(via_two, direct, radius=40, tol=1e-13)


def test_translate_zero_is_identity():
    for p in (ls.SqrtParity(), ls.PseudoErgodic((0.0, 2.0), 7), ls.Constant(3.0)):
        assert p.translate(0) is p


# ---------------------------------------------------------------------------
# concrete sequences
# ---------------------------------------------------------------------------


def test_periodic_indexing():
    p = ls.Periodic((0.0, 2.0, 5.0))
    vals = p.eval_many(np.array([-3, -2, -1, 0, 1, 2, 3, 4]))
    assert vals.tolist() == [0, 2, 5, 0, 2, 5, 0, 2]


def test_periodic_rejects_empty():
    with pytest.raises(ValueError):
        ls.Periodic(())


def test_quasi_periodic_formula():
    p = ls.QuasiPeriodic(1.5, math.sqrt(2) - 1, 0.25)
    ns = np.arange(-5, 6)
    want = 1.5 * np.cos(2 * math.pi * ((math.sqrt(2) - 1) * ns + 0.25))
    assert np.allclose(p.eval_many(ns), want, atol=1e-15)


def test_quasi_periodic_alpha_range():
    with pytest.raises(ValueError):
        ls.QuasiPeriodic(1.0, 1.5, 0.0)
    with pytest.raises(ValueError):
        ls.QuasiPeriodic(1.0, 0.0, 0.0)


def test_from_ratio_is_exactly_periodic():
    p = ls.QuasiPeriodic.from_ratio(2.0, 1, 4, 0.0)
    assert isinstance(p, ls.Periodic)
    assert p.period == 4
    assert np.allclose(p.values, [2.0, 0.0, -2.0, 0.0], atol=1e-15)


def test_from_ratio_reduces_fraction():
    assert ls.QuasiPeriodic.from_ratio(1.0, 2, 6, 0.1).period == 3
    with pytest.raises(ValueError):
        ls.QuasiPeriodic.from_ratio(1.0, 5, 5, 0.0)
    with pytest.raises(ValueError):
        ls.QuasiPeriodic.from_ratio(1.0, 0, 3, 0.0)


def test_pseudo_ergodic_is_deterministic_and_alphabet_valued():
    ns = np.arange(-10_000, 10_001, dtype=np.int64)
    a = ls.PseudoErgodic((0.0, 2.0), seed=42)
    b = ls.PseudoErgodic((0.0, 2.0), seed=42)
    va, vb = a.eval_many(ns), b.eval_many(ns)
    assert np.array_equal(va, vb)
    assert set(np.unique(va)) <= {0.0 + 0j, 2.0 + 0j}
    # and both letters actually occur
    assert len(np.unique(va)) == 2
    other = ls.PseudoErgodic((0.0, 2.0), seed=43).eval_many(ns)
    assert not np.array_equal(va, other)


def test_pseudo_ergodic_dedupes_alphabet():
    p = ls.PseudoErgodic((1.0, 1.0 + 0j, 2.0), seed=0)
    assert p.alphabet == (1.0 + 0j, 2.0 + 0j)


def test_sqrt_parity_values():
    p = ls.SqrtParity()
    ns = np.array([0, 1, 3, 4, 8, 9, 15, 16, -1, -4, -9])
    #          floor sqrt: 0  1  1  2  2  3  3   4   1   2   3
    want = np.array([0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1], dtype=complex)
    assert np.array_equal(p.eval_many(ns), want)


def test_sqrt_parity_exact_at_huge_squares():
    p = ls.SqrtParity()
    r = 67_108_865  # 2**26 + 1; r*r is not exactly representable stress
    vals = p.eval_many(np.array([r * r - 1, r * r, r * r + 1], dtype=np.int64))
    assert vals.tolist() == [(r - 1) % 2, r % 2, r % 2]


def test_explicit_window_and_tails():
    p = ls.Explicit(-1, (9.0, 8.0, 7.0), left=-1.0, right=5.0)
    vals = p.eval_many(np.array([-3, -2, -1, 0, 1, 2, 3]))
    assert vals.tolist() == [-1, -1, 9, 8, 7, 5, 5]


def test_explicit_from_window_requires_contiguous_keys():
    with pytest.raises(ValueError, match="missing index 1"):
        ls.Explicit.from_window({0: 1.0, 2: 3.0}, left=0.0, right=0.0)


def test_sup_norms():
    assert ls.Constant(3 - 4j).sup_norm() == 5.0
    assert ls.Periodic((1.0, -7.0)).sup_norm() == 7.0
    assert ls.QuasiPeriodic(2.5, 0.3, 0.0).sup_norm() == 2.5
    assert ls.Explicit(0, (1.0,), left=-9.0, right=0.5).sup_norm() == 9.0


# ---------------------------------------------------------------------------
# limit families
# ---------------------------------------------------------------------------


def test_constant_limit_is_itself():
    fam = ls.Constant(2.0).limit_functions()
    assert isinstance(fam, ls.FiniteSet)
    assert fam.members == (ls.Constant(2.0),)


def test_periodic_limit_family_is_the_translate_orbit():
    p = ls.Periodic((0.0, 2.0, 5.0))
    fam = p.limit_functions()
    assert isinstance(fam, ls.FiniteSet)
    assert len(fam.members) == 3
    for m in fam.members:
        assert any(ls.window_equal(m, p.translate(r)) for r in range(3))


def test_periodic_limit_family_collapses_repeats():
    fam = ls.Periodic((1.0, 1.0)).limit_functions()
    assert len(fam.members) == 1


def test_quasi_periodic_limit_is_torus():
    p = ls.QuasiPeriodic(2.0, 0.3219, 0.1)
    fam = p.limit_functions()
    assert isinstance(fam, ls.TorusFamily)
    assert fam.alpha == p.alpha
    # t = 0 reproduces the source potential
    assert ls.window_equal(fam.sample(0.0), p)


def test_slow_oscillation_limit_drops_the_drift():
    p = ls.SlowlyOscillatingModulation(1.0, 0.3219, 0.1, "log1p")
    fam = p.limit_functions()
    assert fam == ls.TorusFamily(1.0 + 0j, 0.3219, 0.1)


def test_pseudo_ergodic_limit_is_full_shift():
    fam = ls.PseudoErgodic((2.0, 0.0), seed=5).limit_functions()
    assert isinstance(fam, ls.FullShift)
    assert fam.sorted_alphabet() == (0j, 2 + 0j)


def test_sqrt_parity_limit_members():
    fam = ls.SqrtParity().limit_functions()
    assert isinstance(fam, ls.FiniteSet)
    assert len(fam.members) == 4
    kinds = {type(m) for m in fam.members}
    assert kinds == {ls.Constant, ls.Explicit}


def test_explicit_limit_is_tail_constants():
    fam = ls.Explicit(0, (1.0,), left=-2.0, right=3.0).limit_functions()
    assert set(fam.members) == {ls.Constant(-2.0), ls.Constant(3.0)}
    same = ls.Explicit(0, (1.0,), left=4.0, right=4.0).limit_functions()
    assert same.members == (ls.Constant(4.0),)


def test_finite_set_dedupes_members():
    fam = ls.FiniteSet((ls.Constant(0.0), ls.Constant(0), ls.Constant(1.0)))
    assert len(fam.members) == 2


# ---------------------------------------------------------------------------
# limits along integer sequences
# ---------------------------------------------------------------------------


def test_polynomial_sequence_rejects_constants():
    with pytest.raises(ValueError):
        ls.PolynomialSequence((7,))
    h = ls.PolynomialSequence((3, 0, 4))  # 3 + 4 n^2
    assert [h.eval(n) for n in (1, 2, 3)] == [7, 19, 39]


def test_explicit_sequence_requires_increasing_modulus():
    h = ls.ExplicitSequence((1, -2, 4))
    assert h.eval(2) == -2
    with pytest.raises(ValueError, match="increasing"):
        ls.ExplicitSequence((3, 3))


def test_numeric_limit_recovers_periodic_translate():
    p = ls.Periodic((0.0, 2.0, 5.0))
    h = ls.PolynomialSequence((1, 3))  # h(n) = 3n + 1: residue 1 mod 3
    got = ls.numeric_limit_along(p, h, window_radius=6, steps=9, tol=0.0)
    assert isinstance(got, np.ndarray)
    want = p.translate(-1).eval_many(np.arange(-6, 7))
    assert np.array_equal(got, want)


def test_numeric_limit_sqrt_parity_step():
    got = ls.numeric_limit_along(
        ls.SqrtParity(), ls.PolynomialSequence((3, 0, 4)), window_radius=10, steps=40, tol=0.0
    )
    want = np.where(np.arange(-10, 11) <= -4, 1.0, 0.0).astype(complex)
    assert np.array_equal(got, want)


def test_numeric_limit_divergence_report():
    # along h(n) = n the parity plateaus keep shifting through the window
    got = ls.numeric_limit_along(
        ls.SqrtParity(), ls.PolynomialSequence((0, 1)), window_radius=5, steps=10, tol=1e-12
    )
    assert isinstance(got, ls.DivergenceReport)
    assert got.max_discrepancy == 1.0
    assert got.windows_compared == (8, 9, 10)


def test_numeric_limit_requires_enough_steps():
    with pytest.raises(ValueError):
        ls.numeric_limit_along(ls.Constant(1.0), ls.PolynomialSequence((0, 1)), 4, steps=1, tol=0.0)
    with pytest.raises(ValueError):
        ls.numeric_limit_along(ls.Constant(1.0), ls.PolynomialSequence((0, 1)), 0, steps=5, tol=0.0)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


@given(potentials)
def test_potential_json_round_trip(p):
    blob = json.dumps(ls.potential_to_json(p))
    q = ls.potential_from_json(json.loads(blob))
    assert type(q) is type(p)
    assert ls.window_equal(p, q, radius=48, tol=1e-14)


def test_rational_alpha_json_becomes_periodic():
    obj = {"kind": "quasi_periodic", "amplitude": [2.0, 0.0], "alpha": [1, 4], "phase": 0.0}
    p = ls.potential_from_json(obj)
    assert isinstance(p, ls.Periodic)
    assert p.period == 4


def test_sequence_spec_round_trip():
    for h in (ls.PolynomialSequence((3, 0, 4)), ls.ExplicitSequence((2, -5, 9))):
        assert ls.sequence_spec_from_json(json.loads(json.dumps(h.to_json()))) == h


def test_window_equal_tolerance():
    a = ls.Constant(1.0)
    b = ls.Constant(1.0 + 5e-13)
    assert ls.window_equal(a, b, tol=1e-12)
    assert not ls.window_equal(a, b, tol=1e-13)
