"""Structured bounded sequences b: Z -> C and their limit functions.

The classes here are the diagonal data of band operators: constants, periodic
words, quasi-periodic cosines, slowly oscillating modulations, pseudo-ergodic
realizations, the floor-sqrt parity fixture, and explicit windows with constant
tails.  Each knows how to evaluate itself, translate itself, bound itself, and
produce its family of limit functions (the pointwise limits of its translates
along sequences tending to infinity).

Everything is immutable after construction; evaluation is pure.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "Potential",
    "Constant",
    "Periodic",
    "QuasiPeriodic",
    "SlowlyOscillatingModulation",
    "PseudoErgodic",
    "SqrtParity",
    "Explicit",
    "LimitFamily",
    "FiniteSet",
    "TorusFamily",
    "FullShift",
    "EmptyFamily",
    "IntegerSequenceSpec",
    "PolynomialSequence",
    "ExplicitSequence",
    "DivergenceReport",
    "numeric_limit_along",
    "window_equal",
    "potential_to_json",
    "potential_from_json",
    "sequence_spec_to_json",
    "sequence_spec_from_json",
    "complex_to_json",
    "complex_from_json",
    "DRIFT_FUNCTIONS",
    "SNAPSHOT_RADIUS",
]

# Window radius for Explicit snapshots of translated realizations (pseudo-ergodic,
# sqrt-parity).  Shifts used by the verifiers stay far below this.
SNAPSHOT_RADIUS = 1 << 16

# Window and tolerance for "same potential" comparisons (FiniteSet dedup).
_EQ_RADIUS = 64
_EQ_TOL = 1e-12

_TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------
# JSON helpers: complex numbers travel as [re, im] pairs of doubles.

def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValueError(f"complex value must be a [re, im] pair, got {v!r}")
    re, im = v
    if isinstance(re, bool) or isinstance(im, bool) or not (
        isinstance(re, (int, float)) and isinstance(im, (int, float))
    ):
        raise ValueError(f"complex value must hold two numbers, got {v!r}")
    return complex(float(re), float(im))


# --------------------------------------------------------------------------
# Counter-based RNG for pseudo-ergodic realizations: splitmix64 on
# (seed, zigzag(n)).  Pure function of its inputs, identical on every platform.

_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM_MIX2 = np.uint64(0x94D049BB133111EB)
_U64_MASK = (1 << 64) - 1


def _zigzag(ns: np.ndarray) -> np.ndarray:
    # Z -> N: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
    ns = ns.astype(np.int64)
    return np.where(ns >= 0, 2 * ns, -2 * ns - 1).astype(np.uint64)


def _splitmix64(seed: int, counters: np.ndarray) -> np.ndarray:
    x = (np.uint64(seed & _U64_MASK) + (counters + np.uint64(1)) * _SM_GAMMA).astype(np.uint64)
    x ^= x >> np.uint64(30)
    x *= _SM_MIX1
    x ^= x >> np.uint64(27)
    x *= _SM_MIX2
    x ^= x >> np.uint64(31)
    return x


# --------------------------------------------------------------------------
# Potential variants.

class Potential(ABC):
    """A bounded sequence b: Z -> C."""

    @abstractmethod
    def eval_many(self, ns: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at integer indices (int64 array in, complex out)."""

    @abstractmethod
    def sup_norm(self) -> float:
        """A finite upper bound for sup_n |b(n)|."""

    @abstractmethod
    def translate(self, k: int) -> "Potential":
        """The sequence m -> b(m - k)."""

    @abstractmethod
    def limit_functions(self) -> "LimitFamily":
        """The symbolic family Lim(b) of limit functions."""

    @abstractmethod
    def to_json(self) -> dict:
        """Schema: {"kind": ..., ...payload}, complex values as [re, im]."""

    def eval(self, n: int) -> complex:
        return complex(self.eval_many(np.array([n], dtype=np.int64))[0])

    def window(self, radius: int) -> np.ndarray:
        """Values on [-radius, radius] as a complex array."""
        return self.eval_many(np.arange(-radius, radius + 1, dtype=np.int64))


def window_equal(p: Potential, q: Potential, radius: int = _EQ_RADIUS, tol: float = _EQ_TOL) -> bool:
    """Window comparison on [-radius, radius] within tol (sup norm)."""
    return bool(np.max(np.abs(p.window(radius) - q.window(radius))) <= tol)


@dataclass(frozen=True)
class Constant(Potential):
    """b(n) = value."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    def eval_many(self, ns):
        return np.full(len(ns), self.value, dtype=complex)

    def sup_norm(self):
        return abs(self.value)

    def translate(self, k):
        return self

    def limit_functions(self):
        return FiniteSet((self,))

    def to_json(self):
        return {"kind": "constant", "value": complex_to_json(self.value)}


@dataclass(frozen=True)
class Periodic(Potential):
    """b(n) = values[n mod q], q = len(values)."""

    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise ValueError("Periodic needs a nonempty value list")
        object.__setattr__(self, "values", vals)

    @property
    def period(self) -> int:
        return len(self.values)

    def eval_many(self, ns):
        arr = np.asarray(self.values, dtype=complex)
        return arr[np.mod(ns, len(arr))]

    def sup_norm(self):
        return max(abs(v) for v in self.values)

    def translate(self, k):
        q = self.period
        shift = k % q
        # new values[n] = old values[(n - k) mod q]
        vals = tuple(self.values[(n - shift) % q] for n in range(q))
        return Periodic(vals)

    def limit_functions(self):
        members = []
        for j in range(self.period):
            cand = self.translate(j)
            if not any(window_equal(cand, m) for m in members):
                members.append(cand)
        return FiniteSet(tuple(members))

    def to_json(self):
        return {"kind": "periodic", "values": [complex_to_json(v) for v in self.values]}


@dataclass(frozen=True)
class QuasiPeriodic(Potential):
    """b(n) = amplitude * cos(2*pi*(alpha*n + phase)) with alpha declared irrational.

    Constructing this class asserts that alpha is irrational (the hull of b is
    then the full torus of phases).  For rational frequencies use
    :meth:`from_ratio`, which rewrites to the exact Periodic sequence.
    """

    amplitude: complex
    alpha: float
    phase: float

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "phase", float(self.phase) % 1.0)
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")

    @classmethod
    def from_ratio(cls, amplitude: complex, num: int, den: int, phase: float) -> Periodic:
        """Rational frequency num/den: the sequence is exactly periodic."""
        num, den = int(num), int(den)
        if den <= 0 or not 0 < num < den:
            raise ValueError(f"rational frequency must satisfy 0 < num/den < 1, got {num}/{den}")
        g = math.gcd(num, den)
        num, den = num // g, den // g
        amplitude = complex(amplitude)
        phase = float(phase)
        vals = tuple(
            amplitude * math.cos(_TWO_PI * ((num / den) * n + phase)) for n in range(den)
        )
        return Periodic(vals)

    def eval_many(self, ns):
        return self.amplitude * np.cos(_TWO_PI * (self.alpha * ns.astype(float) + self.phase))

    def sup_norm(self):
        return abs(self.amplitude)

    def translate(self, k):
        # b(m-k) = amp*cos(2 pi (alpha m + phase - alpha k))
        return QuasiPeriodic(self.amplitude, self.alpha, (self.phase - self.alpha * k) % 1.0)

    def limit_functions(self):
        return TorusFamily(self.amplitude, self.alpha, self.phase)

    def to_json(self):
        return {
            "kind": "quasi_periodic",
            "amplitude": complex_to_json(self.amplitude),
            "alpha": self.alpha,
            "phase": self.phase,
        }


DRIFT_FUNCTIONS = ("sign_sqrt", "log1p")


def _drift_values(drift: str, ns: np.ndarray) -> np.ndarray:
    m = ns.astype(float)
    if drift == "sign_sqrt":
        return np.sign(m) * np.sqrt(np.abs(m))
    if drift == "log1p":
        return np.log1p(np.abs(m))
    raise ValueError(f"unknown drift {drift!r}; choose one of {DRIFT_FUNCTIONS}")


@dataclass(frozen=True)
class SlowlyOscillatingModulation(Potential):
    """b(n) = amp * cos(2*pi*(alpha*n + phase + f(n - shift))) with slow drift f.

    The drift comes from a fixed whitelist of functions with f(n+1)-f(n) -> 0,
    so the limit functions are exactly the undrifted torus family.  The integer
    `shift` field keeps the variant closed under translation.
    """

    amplitude: complex
    alpha: float
    phase: float
    drift: str
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "phase", float(self.phase) % 1.0)
        object.__setattr__(self, "shift", int(self.shift))
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")
        if self.drift not in DRIFT_FUNCTIONS:
            raise ValueError(f"unknown drift {self.drift!r}; choose one of {DRIFT_FUNCTIONS}")

    def eval_many(self, ns):
        f = _drift_values(self.drift, ns - self.shift)
        return self.amplitude * np.cos(_TWO_PI * (self.alpha * ns.astype(float) + self.phase + f))

    def sup_norm(self):
        return abs(self.amplitude)

    def translate(self, k):
        return SlowlyOscillatingModulation(
            self.amplitude,
            self.alpha,
            (self.phase - self.alpha * k) % 1.0,
            self.drift,
            self.shift + k,
        )

    def limit_functions(self):
        # The drift washes out at infinity; the hull is the undrifted torus.
        return TorusFamily(self.amplitude, self.alpha, self.phase)

    def to_json(self):
        return {
            "kind": "slow_osc",
            "amplitude": complex_to_json(self.amplitude),
            "alpha": self.alpha,
            "phase": self.phase,
            "drift": self.drift,
            "shift": self.shift,
        }


@dataclass(frozen=True)
class PseudoErgodic(Potential):
    """A fixed i.i.d.-uniform realization over a finite alphabet.

    eval is a pure function of (seed, n): counter-based splitmix64 keyed by the
    zigzag-encoded index, so the same seed reproduces the same bi-infinite
    sequence on every platform and in every run.
    """

    alphabet: tuple
    seed: int

    def __post_init__(self):
        vals = []
        for v in self.alphabet:
            z = complex(v)
            if z not in vals:
                vals.append(z)
        if not vals:
            raise ValueError("PseudoErgodic needs a nonempty alphabet")
        object.__setattr__(self, "alphabet", tuple(vals))
        object.__setattr__(self, "seed", int(self.seed) & _U64_MASK)

    def eval_many(self, ns):
        ns = np.asarray(ns, dtype=np.int64)
        idx = _splitmix64(self.seed, _zigzag(ns)) % np.uint64(len(self.alphabet))
        arr = np.asarray(self.alphabet, dtype=complex)
        return arr[idx.astype(np.intp)]

    def sup_norm(self):
        return max(abs(v) for v in self.alphabet)

    def translate(self, k):
        if k == 0:
            return self
        # Shifted realizations become explicit snapshots on a declared window:
        # realizations are fixtures (values), not re-indexable laws.
        return _snapshot(self, k)

    def limit_functions(self):
        return FullShift(self.alphabet)

    def to_json(self):
        return {
            "kind": "pseudo_ergodic",
            "alphabet": [complex_to_json(v) for v in self.alphabet],
            "seed": self.seed,
        }


@dataclass(frozen=True)
class SqrtParity(Potential):
    """The fixture b(m) = floor(sqrt(|m|)) mod 2."""

    def eval_many(self, ns):
        a = np.abs(np.asarray(ns, dtype=np.int64))
        r = np.floor(np.sqrt(a.astype(float))).astype(np.int64)
        # float sqrt can land one off beside perfect squares; correct exactly
        r = np.where((r + 1) * (r + 1) <= a, r + 1, r)
        r = np.where(r * r > a, r - 1, r)
        return (r & 1).astype(complex)

    def sup_norm(self):
        return 1.0

    def translate(self, k):
        if k == 0:
            return self
        return _snapshot(self, k)

    def limit_functions(self):
        # Plateaus of 0s and 1s grow without bound in both directions, so the
        # limit functions are the two constants and the two step orientations;
        # representatives are canonicalized with the jump between 0 and 1.
        members = (
            Constant(0.0),
            Constant(1.0),
            Explicit(0, (1.0, 0.0), 1.0, 0.0),   # chi_{<= 0}
            Explicit(0, (0.0, 1.0), 0.0, 1.0),   # chi_{>= 1}
        )
        return FiniteSet(members, meta={"canonicalization": "jump-at-zero"})

    def to_json(self):
        return {"kind": "sqrt_parity"}


def _snapshot(p: Potential, k: int, radius: int = SNAPSHOT_RADIUS) -> "Explicit":
    """Explicit window capture of translate(p, k) on [-radius, radius]."""
    vals = p.eval_many(np.arange(-radius, radius + 1, dtype=np.int64) - k)
    return Explicit(-radius, tuple(complex(v) for v in vals), complex(vals[0]), complex(vals[-1]))


@dataclass(frozen=True)
class Explicit(Potential):
    """Explicit values on a contiguous window, constant tails beyond it."""

    start: int
    values: tuple
    left: complex
    right: complex

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise ValueError("Explicit needs a nonempty window")
        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "left", complex(self.left))
        object.__setattr__(self, "right", complex(self.right))

    @classmethod
    def from_window(cls, window: Mapping[int, complex], left: complex, right: complex) -> "Explicit":
        """Build from a {index: value} map; the keys must be contiguous."""
        if not window:
            raise ValueError("Explicit needs a nonempty window")
        normalized = {int(k): complex(v) for k, v in window.items()}
        keys = sorted(normalized)
        for a, b in zip(keys, keys[1:]):
            if b != a + 1:
                raise ValueError(f"Explicit window keys must be contiguous; missing index {a + 1}")
        return cls(keys[0], tuple(normalized[k] for k in keys), left, right)

    def eval_many(self, ns):
        ns = np.asarray(ns, dtype=np.int64)
        arr = np.asarray(self.values, dtype=complex)
        idx = ns - self.start
        out = np.full(len(ns), self.right, dtype=complex)
        out[idx < 0] = self.left
        inside = (idx >= 0) & (idx < len(arr))
        out[inside] = arr[idx[inside]]
        return out

    def sup_norm(self):
        return max(max(abs(v) for v in self.values), abs(self.left), abs(self.right))

    def translate(self, k):
        return Explicit(self.start + k, self.values, self.left, self.right)

    def limit_functions(self):
        members = [Constant(self.left)]
        if not window_equal(Constant(self.right), Constant(self.left)):
            members.append(Constant(self.right))
        return FiniteSet(tuple(members))

    def to_json(self):
        return {
            "kind": "explicit",
            "window": {str(self.start + i): complex_to_json(v) for i, v in enumerate(self.values)},
            "left_tail": complex_to_json(self.left),
            "right_tail": complex_to_json(self.right),
        }


# --------------------------------------------------------------------------
# Limit families.

class LimitFamily(ABC):
    """Symbolic description of Lim(b)."""


@dataclass(frozen=True)
class FiniteSet(LimitFamily):
    members: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        # keep members pairwise distinct under window comparison
        unique: list[Potential] = []
        for m in self.members:
            if not any(window_equal(m, u) for u in unique):
                unique.append(m)
        object.__setattr__(self, "members", tuple(unique))


@dataclass(frozen=True)
class TorusFamily(LimitFamily):
    """{amp * cos(2 pi (alpha n + phase + t)) : t in [0, 1)}.

    Sampling keeps the base phase so that t = 0 reproduces the source potential
    and coupled diagonals keep their phase offsets rigid.
    """

    amplitude: complex
    alpha: float
    phase: float

    def sample(self, t: float) -> QuasiPeriodic:
        return QuasiPeriodic(self.amplitude, self.alpha, (self.phase + t) % 1.0)


@dataclass(frozen=True)
class FullShift(LimitFamily):
    """All alphabet-valued sequences: Lim of a pseudo-ergodic realization."""

    alphabet: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(complex(v) for v in self.alphabet))

    def sorted_alphabet(self) -> tuple:
        return tuple(sorted(self.alphabet, key=lambda z: (z.real, z.imag)))


@dataclass(frozen=True)
class EmptyFamily(LimitFamily):
    pass


# --------------------------------------------------------------------------
# Integer sequences h with |h(n)| -> infinity.

class IntegerSequenceSpec(ABC):
    @abstractmethod
    def eval(self, n: int) -> int:
        """h(n) for n >= 1."""

    @abstractmethod
    def to_json(self) -> dict: ...


@dataclass(frozen=True)
class PolynomialSequence(IntegerSequenceSpec):
    """h(n) = sum c_i n^i, integer coefficients, evaluated at n >= 1."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        if len(cs) < 2:
            raise ValueError("polynomial h must be non-constant so that |h(n)| escapes to infinity")
        object.__setattr__(self, "coeffs", cs)

    def eval(self, n):
        n = int(n)
        if n < 1:
            raise ValueError(f"h is defined for n >= 1, got {n}")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def to_json(self):
        return {"kind": "polynomial", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class ExplicitSequence(IntegerSequenceSpec):
    """h(n) = values[n-1]; the values must be strictly increasing in modulus."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("explicit h needs at least one value")
        for a, b in zip(vals, vals[1:]):
            if abs(b) <= abs(a):
                raise ValueError(
                    f"explicit h must be strictly |.|-increasing; |{b}| <= |{a}|"
                )
        object.__setattr__(self, "values", vals)

    def eval(self, n):
        n = int(n)
        if not 1 <= n <= len(self.values):
            raise ValueError(f"explicit h has {len(self.values)} values; index {n} out of range")
        return self.values[n - 1]

    def to_json(self):
        return {"kind": "explicit", "values": list(self.values)}


def sequence_spec_to_json(h: IntegerSequenceSpec) -> dict:
    return h.to_json()


def sequence_spec_from_json(obj) -> IntegerSequenceSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("sequence spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "polynomial":
        return PolynomialSequence(tuple(obj.get("coeffs", ())))
    if kind == "explicit":
        return ExplicitSequence(tuple(obj.get("values", ())))
    raise ValueError(f"unknown sequence spec kind {kind!r}")


# --------------------------------------------------------------------------
# Numeric limits along a sequence.

@dataclass(frozen=True)
class DivergenceReport:
    """Returned when the last windows along h do not agree within tol."""

    max_discrepancy: float
    windows_compared: tuple


def numeric_limit_along(
    p: Potential,
    h: IntegerSequenceSpec,
    window_radius: int,
    steps: int,
    tol: float,
):
    """Evaluate b(m + h(n)) on [-window_radius, window_radius] for the last three steps.

    Returns the final window (complex array indexed by m ∈ [-R, R]) when the
    three windows agree pairwise within tol in sup norm, otherwise a
    DivergenceReport carrying the worst discrepancy.
    """
    if window_radius < 1:
        raise ValueError(f"window_radius must be >= 1, got {window_radius}")
    if steps < 3:
        raise ValueError(f"steps must be >= 3, got {steps}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    ms = np.arange(-window_radius, window_radius + 1, dtype=np.int64)
    ns = (steps - 2, steps - 1, steps)
    windows = [p.eval_many(ms + h.eval(n)) for n in ns]
    worst = max(
        float(np.max(np.abs(wa - wb)))
        for i, wa in enumerate(windows)
        for wb in windows[i + 1:]
    )
    if worst <= tol:
        return windows[-1]
    return DivergenceReport(worst, ns)


# --------------------------------------------------------------------------
# JSON (de)serialization for potentials.

def potential_to_json(p: Potential) -> dict:
    return p.to_json()


def potential_from_json(obj) -> Potential:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("potential must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "constant":
            return Constant(complex_from_json(obj["value"]))
        if kind == "periodic":
            return Periodic(tuple(complex_from_json(v) for v in obj["values"]))
        if kind == "quasi_periodic":
            alpha = obj["alpha"]
            amp = complex_from_json(obj["amplitude"])
            phase = float(obj.get("phase", 0.0))
            if isinstance(alpha, (list, tuple)):
                # declared rational: rewrite to the exact periodic sequence
                if len(alpha) != 2:
                    raise ValueError("rational alpha must be a [num, den] pair")
                return QuasiPeriodic.from_ratio(amp, alpha[0], alpha[1], phase)
            return QuasiPeriodic(amp, float(alpha), phase)
        if kind == "slow_osc":
            return SlowlyOscillatingModulation(
                complex_from_json(obj["amplitude"]),
                float(obj["alpha"]),
                float(obj.get("phase", 0.0)),
                obj["drift"],
                int(obj.get("shift", 0)),
            )
        if kind == "pseudo_ergodic":
            return PseudoErgodic(
                tuple(complex_from_json(v) for v in obj["alphabet"]),
                int(obj["seed"]),
            )
        if kind == "sqrt_parity":
            return SqrtParity()
        if kind == "explicit":
            window = obj["window"]
            if not isinstance(window, dict):
                raise ValueError("explicit window must be a {index: [re, im]} object")
            parsed = {int(k): complex_from_json(v) for k, v in window.items()}
            return Explicit.from_window(
                parsed,
                complex_from_json(obj["left_tail"]),
                complex_from_json(obj["right_tail"]),
            )
    except KeyError as exc:
        raise ValueError(f"potential of kind {kind!r} is missing field {exc.args[0]!r}") from None
    raise ValueError(f"unknown potential kind {kind!r}")
