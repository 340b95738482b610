"""State families that trace the boundaries of the allowed uncertainty regions.

* ``great_circle``: states in the y-z plane (``phi = pi/2``), which contains
  both observable axes for the configurations ``a = z``, ``b`` in the y-z plane.
  They saturate the mid bound of the expectation-value relation.
* ``equatorial_arc``: ``theta = pi/2``, ``phi`` in ``[pi/2, pi]``; ``<A> = 0``
  for ``a = z``, i.e. the vertical ``dA = 1`` edge.
* ``closing_arc``: ``phi = pi``, ``theta`` in ``[0, pi/2]``; the horizontal
  ``dB = 1`` edge for ``b = y``.
* ``perpendicular_circle``: quarter great circle orthogonal to ``b``, from
  ``a x b / |a x b|`` to the component of ``a`` orthogonal to ``b``; the
  horizontal ``dB = 1`` edge for tilted pairs.

Sweeps are deterministic and uniform in their parameter. Arcs include both
endpoints; the full great circle excludes ``2 pi``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from tqu.errors import ConfigError
from tqu.qmath import (
    PreparationSetting,
    bloch_from_angles,
    shannon_entropy,
    state_from_setting,
    std_dev,
)
from tqu.relations import ObservablePair, UncertaintyPoint, uncertainty_point

HALF_PI = math.pi / 2


class FamilyName(str, enum.Enum):
    GREAT_CIRCLE = "great_circle"
    EQUATORIAL_ARC = "equatorial_arc"
    CLOSING_ARC = "closing_arc"
    PERPENDICULAR_CIRCLE = "perpendicular_circle"


@dataclass(frozen=True)
class BoundaryFamily:
    name: FamilyName
    settings: Tuple[PreparationSetting, ...]
    config: ObservablePair
    r: float

    def __len__(self):
        return len(self.settings)

    def states(self) -> np.ndarray:
        """Bloch vectors of all settings, shape ``(len(self), 3)``."""
        if not self.settings:
            return np.zeros((0, 3))
        theta = np.array([s.theta for s in self.settings])
        phi = np.array([s.phi for s in self.settings])
        return bloch_from_angles(self.r, theta, phi)

    def points(self) -> List[UncertaintyPoint]:
        return [uncertainty_point(state_from_setting(s), self.config, s) for s in self.settings]

    def expectations(self) -> Tuple[np.ndarray, np.ndarray]:
        n = self.states()
        return n @ self.config.a.a, n @ self.config.b.a


def _sweep(lo: float, hi: float, num_points: int, rng, endpoint: bool = True) -> np.ndarray:
    if rng is None:
        return np.linspace(lo, hi, num_points, endpoint=endpoint)
    return rng.uniform(lo, hi, num_points)


def _validate(r: float, num_points: int) -> None:
    if num_points < 2:
        raise ConfigError(f"num_points must be >= 2, got {num_points}")
    if not 0.0 <= r <= 1.0:
        raise ConfigError(f"r = {r} outside [0, 1]")


def _family(name, pair, r, thetas, phis) -> BoundaryFamily:
    thetas, phis = np.broadcast_arrays(np.asarray(thetas, float), np.asarray(phis, float))
    settings = tuple(
        PreparationSetting(float(r), float(t), float(p)) for t, p in zip(thetas, phis)
    )
    return BoundaryFamily(FamilyName(name), settings, pair, float(r))


def great_circle_family(
    pair: ObservablePair,
    r: float,
    num_points: int,
    theta_range: Optional[Tuple[float, float]] = None,
    rng: Optional[np.random.Generator] = None,
) -> BoundaryFamily:
    """States at ``phi = pi/2`` with ``theta`` over ``[0, 2 pi)``.

    ``theta_range`` restricts the sweep to a closed arc, e.g.
    ``(-pi/6, pi/2)`` for the curved SD boundary of a 60 degree pair.

    Every builder takes an optional ``rng``; when given, the sweep parameter is
    drawn uniformly from its range instead of being stepped.
    """
    _validate(r, num_points)
    if theta_range is None:
        thetas = _sweep(0.0, 2 * math.pi, num_points, rng, endpoint=False)
    else:
        thetas = _sweep(theta_range[0], theta_range[1], num_points, rng)
    return _family(FamilyName.GREAT_CIRCLE, pair, r, thetas, HALF_PI)


def equatorial_arc_family(pair: ObservablePair, r: float, num_points: int, rng=None) -> BoundaryFamily:
    _validate(r, num_points)
    phis = _sweep(HALF_PI, math.pi, num_points, rng)
    return _family(FamilyName.EQUATORIAL_ARC, pair, r, HALF_PI, phis)


def closing_arc_family(pair: ObservablePair, r: float, num_points: int, rng=None) -> BoundaryFamily:
    _validate(r, num_points)
    thetas = _sweep(0.0, HALF_PI, num_points, rng)
    return _family(FamilyName.CLOSING_ARC, pair, r, thetas, math.pi)


def _angles_of(direction: np.ndarray) -> Tuple[float, float]:
    x, y, z = direction
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.atan2(y, x) if math.hypot(x, y) > 1e-15 else HALF_PI
    return theta, phi


def perpendicular_circle_family(
    pair: ObservablePair, r: float, num_points: int, rng=None
) -> BoundaryFamily:
    """States orthogonal to ``b``: ``<B> = 0`` and ``dB = 1`` along the family.

    Starts at ``a x b`` direction (``<A> = 0``, the ``dA = dB = 1`` corner)
    and ends at the unit vector orthogonal to ``b`` closest to ``a``.
    """
    _validate(r, num_points)
    if pair.cross_norm_sq < 1e-24:
        raise ConfigError("perpendicular circle is undefined for parallel axes")
    a, b = pair.a.a, pair.b.a
    start = np.cross(a, b)
    start /= np.linalg.norm(start)
    end = a - pair.dot_ab * b
    end /= np.linalg.norm(end)

    ts = _sweep(0.0, HALF_PI, num_points, rng)
    thetas, phis = [], []
    for t in ts:
        d = math.cos(t) * start + math.sin(t) * end
        theta, phi = _angles_of(d)
        thetas.append(theta)
        phis.append(phi)
    return _family(FamilyName.PERPENDICULAR_CIRCLE, pair, r, thetas, phis)


FAMILY_BUILDERS = {
    FamilyName.GREAT_CIRCLE: great_circle_family,
    FamilyName.EQUATORIAL_ARC: equatorial_arc_family,
    FamilyName.CLOSING_ARC: closing_arc_family,
    FamilyName.PERPENDICULAR_CIRCLE: perpendicular_circle_family,
}


def saturating_great_circle_range(pair: ObservablePair) -> Tuple[float, float]:
    """Arc of the y-z great circle on which the SD/entropy forms are saturated.

    Those forms only see ``|<A>|`` and ``|<B>|``, so they are saturated where
    ``(a.b) <A> <B> >= 0``. For ``a = z`` this is the arc from ``-pi/2 + t_b``
    to ``pi/2`` (``t_b`` the polar angle of ``b``) when ``a.b >= 0``.
    """
    t_b = math.atan2(pair.b.a[1], pair.b.a[2])
    if pair.dot_ab >= 0:
        return (t_b - HALF_PI, HALF_PI)
    return (HALF_PI, t_b + HALF_PI)


def sd_outline(pair: ObservablePair, r: float, num_points: int) -> List[BoundaryFamily]:
    """Families whose images close the SD/entropy boundary, in traversal order.

    ``a.b = 0``: great-circle arc, equatorial arc, closing arc.
    ``a.b > 0``: saturating great-circle arc, equatorial arc, perpendicular circle.
    Only configurations with ``a = z``, ``b`` in the y-z plane, ``b_y > 0`` and
    ``a.b >= 0`` are supported.
    """
    a, b = pair.a.a, pair.b.a
    if not (np.allclose(a, (0.0, 0.0, 1.0), atol=1e-12) and abs(b[0]) < 1e-12 and b[1] > 0):
        raise ConfigError("outline needs a = z and b in the y-z plane with b_y > 0")
    if pair.dot_ab < 0:
        raise ConfigError("outline needs a.b >= 0; flip b (uncertainties are unchanged)")
    gc = great_circle_family(pair, r, num_points, theta_range=saturating_great_circle_range(pair))
    if abs(pair.dot_ab) < 1e-12:
        third = closing_arc_family(pair, r, num_points)
    else:
        third = perpendicular_circle_family(pair, r, num_points)
    return [gc, equatorial_arc_family(pair, r, num_points), third]


def measure_coords(family: BoundaryFamily, measure: str) -> np.ndarray:
    """Family image in the ``(A, B)`` plane of ``"ev"``, ``"sd"`` or ``"entropy"``."""
    exp_a, exp_b = family.expectations()
    exp_a = np.clip(exp_a, -1.0, 1.0)
    exp_b = np.clip(exp_b, -1.0, 1.0)
    if measure == "ev":
        return np.column_stack([exp_a, exp_b])
    if measure == "sd":
        return np.column_stack([std_dev(exp_a), std_dev(exp_b)])
    if measure == "entropy":
        return np.column_stack([shannon_entropy(exp_a), shannon_entropy(exp_b)])
    raise ValueError(f"unknown measure {measure!r}")


def closure_gaps(curves: Sequence[np.ndarray]) -> List[float]:
    """Endpoint gaps when the curves are chained into a loop.

    Curves are taken in the given order; each may be traversed in either
    direction, whichever end lies closer to the current loop end. The last
    gap closes the loop back to the start of the first curve.
    """
    if not curves:
        return []
    start = curves[0][0]
    tip = curves[0][-1]
    gaps = []
    for curve in curves[1:]:
        d_fwd = float(np.linalg.norm(curve[0] - tip))
        d_rev = float(np.linalg.norm(curve[-1] - tip))
        if d_fwd <= d_rev:
            gaps.append(d_fwd)
            tip = curve[-1]
        else:
            gaps.append(d_rev)
            tip = curve[0]
    gaps.append(float(np.linalg.norm(tip - start)))
    return gaps
