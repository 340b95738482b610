"""Qubit state and Pauli observable algebra, plus scalar uncertainty measures.

A qubit state is stored as its Bloch vector ``n`` (``rho = (I + n.sigma)/2``),
a Pauli observable as its unit axis ``a`` (``A = a.sigma``). Every measure of
uncertainty for a Pauli observable is a function of the expectation value
``<A> = a.n``:

* standard deviation ``sqrt(1 - <A>**2)``
* Shannon entropy ``h2((1 + <A>)/2)`` in bits

and ``f(h) = 1 - 2 h2^{-1}(h)`` maps an entropy back to ``|<A>|``.

The scalar functions accept floats or numpy arrays and return the same kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import entr

from tqu.errors import DomainError, InvalidObservable, UnphysicalState

ArrayLike = Union[float, np.ndarray]

#: tolerance for unit-axis and physicality checks
NORM_TOL = 1e-9
#: rounding slack accepted on [-1, 1] / [0, 1] domain checks before clipping
ROUND_TOL = 1e-12
#: absolute tolerance of the inverse binary entropy
INVERSE_TOL = 1e-12

_LN2 = math.log(2.0)
# log of the smallest positive double; lower end of the log-space bracket
_LOG_TINY = math.log(5e-324)
_LOG_BISECTIONS = math.ceil(math.log2((-math.log(2.0) - _LOG_TINY) / 1e-15))

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _vec3(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{what} must be a real 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Qubit state ``rho = (I + n.sigma)/2`` with ``|n| <= 1``."""

    n: np.ndarray

    def __post_init__(self):
        n = _vec3(self.n, "Bloch vector")
        norm = float(np.linalg.norm(n))
        if norm > 1.0 + NORM_TOL:
            raise UnphysicalState(f"|n| = {norm:.12g} exceeds 1")
        n.setflags(write=False)
        object.__setattr__(self, "n", n)

    @property
    def r(self) -> float:
        """Degree of polarization (mixing parameter) ``|n|``."""
        return float(np.linalg.norm(self.n))

    def density_matrix(self) -> np.ndarray:
        return 0.5 * (IDENTITY + sum(c * s for c, s in zip(self.n, PAULI)))

    def __eq__(self, other):
        if not isinstance(other, BlochVector):
            return NotImplemented
        return bool(np.array_equal(self.n, other.n))

    def __hash__(self):
        return hash(tuple(self.n))

    def __repr__(self):
        x, y, z = self.n
        return f"BlochVector(({x:.6g}, {y:.6g}, {z:.6g}))"


@dataclass(frozen=True, eq=False)
class PauliAxis:
    """Pauli observable ``A = a.sigma`` with unit axis ``a``."""

    a: np.ndarray

    def __post_init__(self):
        a = _vec3(self.a, "Pauli axis")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidObservable(f"|a| = {norm:.12g}, expected 1")
        # renormalize so a.b and |a x b| obey the Lagrange identity to rounding
        a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    def operator(self) -> np.ndarray:
        return sum(c * s for c, s in zip(self.a, PAULI))

    def __eq__(self, other):
        if not isinstance(other, PauliAxis):
            return NotImplemented
        return bool(np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash(tuple(self.a))

    def __repr__(self):
        x, y, z = self.a
        return f"PauliAxis(({x:.6g}, {y:.6g}, {z:.6g}))"


@dataclass(frozen=True)
class PreparationSetting:
    """Polarization ``r`` plus polar/azimuthal preparation angles in radians."""

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise DomainError(f"r = {self.r} outside [0, 1]")


def _check_closed(x, lo: float, hi: float, what: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < lo - ROUND_TOL) or np.any(arr > hi + ROUND_TOL):
        raise DomainError(f"{what} outside [{lo}, {hi}]")
    return np.clip(arr, lo, hi)


def _out(arr: np.ndarray, like) -> ArrayLike:
    return float(arr) if np.ndim(like) == 0 else arr


def expectation(state: BlochVector, obs: PauliAxis) -> float:
    """``<A> = a.n``."""
    return float(np.clip(np.dot(state.n, obs.a), -1.0, 1.0))


def std_dev(exp_val: ArrayLike) -> ArrayLike:
    """``sqrt(1 - <A>**2)``; every Pauli observable squares to the identity."""
    e = _check_closed(exp_val, -1.0, 1.0, "expectation value")
    return _out(np.sqrt(np.maximum(0.0, 1.0 - e * e)), exp_val)


def binary_entropy(p: ArrayLike) -> ArrayLike:
    """``h2(p) = -p log2 p - (1-p) log2 (1-p)`` with ``0 log 0 = 0``."""
    q = _check_closed(p, 0.0, 1.0, "probability")
    return _out((entr(q) + entr(1.0 - q)) / _LN2, p)


def shannon_entropy(exp_val: ArrayLike) -> ArrayLike:
    """Entropy in bits of a Pauli measurement with expectation ``exp_val``."""
    e = _check_closed(exp_val, -1.0, 1.0, "expectation value")
    # h2 is symmetric; feeding (1-|e|)/2 keeps the small probability exact
    return _out(binary_entropy((1.0 - np.abs(e)) / 2.0), exp_val)


def _h2_slope(p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        return np.log2((1.0 - p) / p)


def binary_entropy_inverse(h: ArrayLike) -> ArrayLike:
    """Unique ``p`` in ``[0, 1/2]`` with ``h2(p) = h``.

    Bisection on ``log p`` over ``(0, 1/2]``, so the bracket shrinks in
    relative terms and tiny entropies keep full precision, then two
    safeguarded Newton steps that are discarded whenever they leave the
    bracket (the slope of ``h2`` diverges at 0 and vanishes at 1/2).
    """
    target = _check_closed(h, 0.0, 1.0, "entropy")
    lo = np.full_like(target, _LOG_TINY)
    hi = np.full_like(target, -_LN2)
    # relative width ~1e-15 in p, far below INVERSE_TOL in absolute terms
    for _ in range(_LOG_BISECTIONS):
        mid = 0.5 * (lo + hi)
        below = binary_entropy(np.exp(mid)) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)

    p_lo, p_hi = np.exp(lo), np.exp(hi)
    p = np.exp(0.5 * (lo + hi))
    for _ in range(2):
        slope = _h2_slope(p)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = (binary_entropy(p) - target) / slope
        cand = p - step
        ok = np.isfinite(cand) & (cand >= p_lo) & (cand <= p_hi)
        p = np.where(ok, cand, p)

    p = np.where(target == 0.0, 0.0, np.where(target == 1.0, 0.5, p))
    return _out(p, h)


def f_of_entropy(h: ArrayLike) -> ArrayLike:
    """``f(h) = 1 - 2 h2^{-1}(h)``; recovers ``|<A>|`` from ``H(A)``."""
    p = binary_entropy_inverse(h)
    return _out(1.0 - 2.0 * np.asarray(p), h)


def bloch_from_angles(r: ArrayLike, theta: ArrayLike, phi: ArrayLike) -> np.ndarray:
    """Vectorized ``r (sin t cos p, sin t sin p, cos t)``; trailing axis is xyz."""
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, float), np.asarray(theta, float), np.asarray(phi, float)
    )
    st = np.sin(theta)
    return np.stack([r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)], axis=-1)


def state_from_setting(s: PreparationSetting) -> BlochVector:
    """Bloch vector prepared by coil precession ``theta`` and guide-field ``phi``."""
    if not 0.0 <= s.r <= 1.0:
        raise DomainError(f"r = {s.r} outside [0, 1]")
    return BlochVector(bloch_from_angles(s.r, s.theta, s.phi))


def rotation_unitary(axis, angle: float) -> np.ndarray:
    """``exp(i angle/2 k.sigma)`` for a unit axis ``k``."""
    k = np.asarray(axis, dtype=float)
    ks = sum(c * s for c, s in zip(k, PAULI))
    return math.cos(angle / 2) * IDENTITY + 1j * math.sin(angle / 2) * ks


def preparation_density_matrix(s: PreparationSetting) -> np.ndarray:
    """Explicit conjugation chain ``U_GF^+ U_DC^+ rho_z U_DC U_GF``.

    ``rho_z = (I + r sigma_z)/2`` leaves the polarizer along +z. With
    ``U^+ rho U`` and ``U = exp(i b/2 k.sigma)`` the Bloch vector turns by
    ``+b`` about ``k``. The coil turns +z towards +y (``b = -theta`` about x),
    the guide field then turns about z by ``phi - pi/2`` so that ``phi = pi/2``
    is the y-z plane.
    """
    rho_z = 0.5 * (IDENTITY + s.r * SIGMA_Z)
    u_dc = rotation_unitary((1.0, 0.0, 0.0), -s.theta)
    u_gf = rotation_unitary((0.0, 0.0, 1.0), s.phi - math.pi / 2)
    u = u_dc @ u_gf
    return u.conj().T @ rho_z @ u


def bloch_from_density_matrix(rho: np.ndarray) -> np.ndarray:
    """``n_k = Tr(rho sigma_k)``."""
    return np.array([np.real(np.trace(rho @ s)) for s in PAULI])
