"""Tight qubit uncertainty relations and the classical comparison bounds.

Each of the three tight relations is a chain ``lhs <= mid <= outer`` (or ``>=``
for the standard-deviation form) in which ``mid`` depends on the state only
through ``r = |n|`` and ``outer`` is state independent:

=========  ===========================================  ======================  =============
form       lhs                                          mid                     outer
=========  ===========================================  ======================  =============
EV         ``|<A> a - <B> b|**2``                       ``(1-(a.b)**2) r**2``   ``|a x b|**2``
SD         ``dA**2 + dB**2 + 2|a.b| <A'> <B'>``  (>=)   ``2-(1-(a.b)**2) r**2``  ``1+(a.b)**2``
entropy    ``fA**2 + fB**2 - 2|a.b| fA fB``             ``(1-(a.b)**2) r**2``   ``1-(a.b)**2``
=========  ===========================================  ======================  =============

with ``<A'> = sqrt(1 - dA**2)`` and ``fA = f(H(A))``.

The ``*_arrays`` functions are vectorized over a leading sample axis and are
what the sweeps use; ``check_*`` wrap them for single states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tqu.qmath import (
    BlochVector,
    PauliAxis,
    PreparationSetting,
    expectation,
    f_of_entropy,
    shannon_entropy,
    std_dev,
)

#: absolute tolerance on the slack used for satisfied/saturation flags
SATURATION_TOL = 1e-9

FORMS = ("ev", "sd", "entropy")


@dataclass(frozen=True, eq=False)
class ObservablePair:
    """Two Pauli observables with cached ``a.b`` and ``|a x b|**2``."""

    a: PauliAxis
    b: PauliAxis

    def __post_init__(self):
        a = self.a if isinstance(self.a, PauliAxis) else PauliAxis(self.a)
        b = self.b if isinstance(self.b, PauliAxis) else PauliAxis(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "dot_ab", float(np.dot(a.a, b.a)))
        object.__setattr__(self, "cross_norm_sq", float(np.sum(np.cross(a.a, b.a) ** 2)))

    @classmethod
    def from_dot(cls, dot_ab: float) -> "ObservablePair":
        """``a = z`` and ``b`` in the y-z plane tilted so that ``a.b = dot_ab``."""
        if not -1.0 <= dot_ab <= 1.0:
            raise ValueError(f"a.b = {dot_ab} outside [-1, 1]")
        b = (0.0, math.sqrt(1.0 - dot_ab * dot_ab), dot_ab)
        return cls(PauliAxis((0.0, 0.0, 1.0)), PauliAxis(b))

    def ev_bound(self, r: Optional[float] = None) -> float:
        return self.cross_norm_sq if r is None else self.cross_norm_sq * r * r

    def sd_bound(self, r: Optional[float] = None) -> float:
        return 1.0 + self.dot_ab ** 2 if r is None else 2.0 - self.cross_norm_sq * r * r

    def entropy_bound(self, r: Optional[float] = None) -> float:
        return self.ev_bound(r)

    def __repr__(self):
        return f"ObservablePair(a={self.a!r}, b={self.b!r}, a.b={self.dot_ab:.6g})"


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one relation check.

    ``slack`` is signed: positive means the mid bound holds with room to spare,
    negative means it is violated.
    """

    lhs: float
    mid_bound: float
    outer_bound: float
    satisfied: bool
    saturates_mid: bool
    saturates_outer: bool
    slack: float


@dataclass(frozen=True)
class UncertaintyPoint:
    """Expectation values, standard deviations and entropies of ``A`` and ``B``."""

    exp_a: float
    exp_b: float
    sd_a: float
    sd_b: float
    h_a: float
    h_b: float
    r: float = float("nan")
    theta: float = float("nan")
    phi: float = float("nan")

    @classmethod
    def from_expectations(cls, exp_a, exp_b, r=float("nan"), theta=float("nan"), phi=float("nan")):
        return cls(
            exp_a=float(exp_a),
            exp_b=float(exp_b),
            sd_a=std_dev(float(exp_a)),
            sd_b=std_dev(float(exp_b)),
            h_a=shannon_entropy(float(exp_a)),
            h_b=shannon_entropy(float(exp_b)),
            r=float(r),
            theta=float(theta),
            phi=float(phi),
        )


def uncertainty_point(
    state: BlochVector, pair: ObservablePair, setting: Optional[PreparationSetting] = None
) -> UncertaintyPoint:
    """The three uncertainty views of ``state`` for ``pair``."""
    r, theta, phi = (
        (setting.r, setting.theta, setting.phi) if setting else (state.r, math.nan, math.nan)
    )
    return UncertaintyPoint.from_expectations(
        expectation(state, pair.a), expectation(state, pair.b), r, theta, phi
    )


# --------------------------------------------------------------------------
# vectorized core


@dataclass(frozen=True)
class RelationArrays:
    """Per-sample arrays of one relation form."""

    form: str
    lhs: np.ndarray
    mid_bound: np.ndarray
    outer_bound: np.ndarray
    slack: np.ndarray
    satisfied: np.ndarray
    saturates_mid: np.ndarray
    saturates_outer: np.ndarray


def _broadcast_inputs(n, a, b):
    n = np.atleast_2d(np.asarray(n, dtype=float))
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    return np.broadcast_arrays(n, a, b)


def _pair_terms(n, a, b):
    n, a, b = _broadcast_inputs(n, a, b)
    exp_a = np.clip(np.einsum("ij,ij->i", n, a), -1.0, 1.0)
    exp_b = np.clip(np.einsum("ij,ij->i", n, b), -1.0, 1.0)
    dot_ab = np.clip(np.einsum("ij,ij->i", a, b), -1.0, 1.0)
    cross_sq = np.sum(np.cross(a, b) ** 2, axis=1)
    r_sq = np.einsum("ij,ij->i", n, n)
    return n, a, b, exp_a, exp_b, dot_ab, cross_sq, r_sq


def _finish(form, lhs, mid, outer, upper: bool, tol: float) -> RelationArrays:
    if upper:
        slack = mid - lhs
        chain_ok = mid <= outer + tol
    else:
        slack = lhs - mid
        chain_ok = mid >= outer - tol
    return RelationArrays(
        form=form,
        lhs=lhs,
        mid_bound=mid,
        outer_bound=outer,
        slack=slack,
        satisfied=(slack >= -tol) & chain_ok,
        saturates_mid=np.abs(slack) <= tol,
        saturates_outer=np.abs(lhs - outer) <= tol,
    )


def expectation_relation_arrays(n, a, b, tol: float = SATURATION_TOL) -> RelationArrays:
    n, a, b, exp_a, exp_b, dot_ab, cross_sq, r_sq = _pair_terms(n, a, b)
    diff = exp_a[:, None] * a - exp_b[:, None] * b
    lhs = np.einsum("ij,ij->i", diff, diff)
    return _finish("ev", lhs, cross_sq * r_sq, cross_sq, True, tol)


def stddev_relation_arrays(n, a, b, tol: float = SATURATION_TOL) -> RelationArrays:
    n, a, b, exp_a, exp_b, dot_ab, cross_sq, r_sq = _pair_terms(n, a, b)
    sd_a = std_dev(exp_a)
    sd_b = std_dev(exp_b)
    lhs = (
        sd_a**2
        + sd_b**2
        + 2.0 * np.abs(dot_ab) * np.sqrt(np.maximum(0.0, 1.0 - sd_a**2)) * np.sqrt(np.maximum(0.0, 1.0 - sd_b**2))
    )
    return _finish("sd", lhs, 2.0 - cross_sq * r_sq, 1.0 + dot_ab**2, False, tol)


def entropy_relation_arrays(n, a, b, tol: float = SATURATION_TOL) -> RelationArrays:
    n, a, b, exp_a, exp_b, dot_ab, cross_sq, r_sq = _pair_terms(n, a, b)
    f_a = f_of_entropy(shannon_entropy(exp_a))
    f_b = f_of_entropy(shannon_entropy(exp_b))
    lhs = f_a**2 + f_b**2 - 2.0 * np.abs(dot_ab) * f_a * f_b
    return _finish("entropy", lhs, cross_sq * r_sq, cross_sq, True, tol)


def relation_arrays(form: str, n, a, b, tol: float = SATURATION_TOL) -> RelationArrays:
    fn = {
        "ev": expectation_relation_arrays,
        "sd": stddev_relation_arrays,
        "entropy": entropy_relation_arrays,
    }[form]
    return fn(n, a, b, tol)


def robertson_bound_arrays(n, a, b) -> np.ndarray:
    n, a, b = _broadcast_inputs(n, a, b)
    return np.abs(np.einsum("ij,ij->i", np.cross(a, b), n))


def schroedinger_bound_arrays(n, a, b) -> np.ndarray:
    n, a, b, exp_a, exp_b, dot_ab, _, _ = _pair_terms(n, a, b)
    commutator = np.einsum("ij,ij->i", np.cross(a, b), n)
    return (dot_ab - exp_a * exp_b) ** 2 + commutator**2


def maassen_uffink_bound_arrays(a, b) -> np.ndarray:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    dot_ab = np.clip(np.abs(np.einsum("ij,ij->i", a, b)), 0.0, 1.0)
    # -2 log2 c with c**2 = (1 + |a.b|)/2
    return -np.log2((1.0 + dot_ab) / 2.0)


# --------------------------------------------------------------------------
# single-state API


def _report(arrays: RelationArrays) -> RelationReport:
    return RelationReport(
        lhs=float(arrays.lhs[0]),
        mid_bound=float(arrays.mid_bound[0]),
        outer_bound=float(arrays.outer_bound[0]),
        satisfied=bool(arrays.satisfied[0]),
        saturates_mid=bool(arrays.saturates_mid[0]),
        saturates_outer=bool(arrays.saturates_outer[0]),
        slack=float(arrays.slack[0]),
    )


def check_expectation_relation(state: BlochVector, pair: ObservablePair) -> RelationReport:
    """Evaluate ``|<A>a - <B>b|**2 <= |a x b|**2 r**2 <= |a x b|**2``."""
    return _report(expectation_relation_arrays(state.n, pair.a.a, pair.b.a))


def check_stddev_relation(state: BlochVector, pair: ObservablePair) -> RelationReport:
    """Evaluate the standard-deviation form; note the inequalities point upwards."""
    return _report(stddev_relation_arrays(state.n, pair.a.a, pair.b.a))


def check_entropy_relation(state: BlochVector, pair: ObservablePair) -> RelationReport:
    return _report(entropy_relation_arrays(state.n, pair.a.a, pair.b.a))


def check_all(state: BlochVector, pair: ObservablePair) -> dict:
    """All three reports keyed by form name."""
    return {
        "ev": check_expectation_relation(state, pair),
        "sd": check_stddev_relation(state, pair),
        "entropy": check_entropy_relation(state, pair),
    }


def robertson_bound(state: BlochVector, pair: ObservablePair) -> float:
    """``|<[A, B]>/2i| = |(a x b).n|``; vanishes for states orthogonal to ``a x b``."""
    return float(robertson_bound_arrays(state.n, pair.a.a, pair.b.a)[0])


def schroedinger_bound(state: BlochVector, pair: ObservablePair) -> float:
    """Covariance plus commutator term, ``(a.b - <A><B>)**2 + ((a x b).n)**2``.

    Uses the symmetrized covariance ``<{A, B}>/2 - <A><B>``; for Pauli
    observables ``<{A, B}>/2 = a.b``.
    """
    return float(schroedinger_bound_arrays(state.n, pair.a.a, pair.b.a)[0])


def maassen_uffink_bound(pair: ObservablePair) -> float:
    """``-2 log2 c`` with maximal eigenvector overlap ``c = sqrt((1 + |a.b|)/2)``."""
    return float(maassen_uffink_bound_arrays(pair.a.a, pair.b.a)[0])


# --------------------------------------------------------------------------
# sampling measures for sweeps


def sample_unit_vectors(rng: np.random.Generator, size: int) -> np.ndarray:
    """Directions uniform on the sphere."""
    v = rng.standard_normal((size, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sample_states(rng: np.random.Generator, size: int, measure: str = "ball") -> np.ndarray:
    """Bloch vectors drawn from one of three measures.

    ``"ball"``: uniform in the Bloch ball. ``"radial"``: uniform direction times
    uniform ``r`` in [0, 1]. ``"pure"``: uniform on the sphere.
    """
    u = sample_unit_vectors(rng, size)
    if measure == "pure":
        return u
    if measure == "ball":
        return u * np.cbrt(rng.random(size))[:, None]
    if measure == "radial":
        return u * rng.random(size)[:, None]
    raise ValueError(f"unknown sampling measure {measure!r}")
