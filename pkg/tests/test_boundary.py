import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tqu.boundary import (
    FAMILY_BUILDERS,
    FamilyName,
    closing_arc_family,
    closure_gaps,
    equatorial_arc_family,
    great_circle_family,
    measure_coords,
    perpendicular_circle_family,
    saturating_great_circle_range,
    sd_outline,
)
from tqu.errors import ConfigError
from tqu.qmath import state_from_setting
from tqu.relations import FORMS, ObservablePair, check_all, relation_arrays

ORTHO = ObservablePair.from_dot(0.0)
TILTED = ObservablePair.from_dot(0.5)


def sd_pair(family, i):
    return tuple(measure_coords(family, "sd")[i])


class TestGreatCircle:
    def test_four_points(self):
        fam = great_circle_family(ORTHO, 1.0, 4)
        assert [s.theta for s in fam.settings] == pytest.approx([0, math.pi / 2, math.pi, 3 * math.pi / 2])
        ev = measure_coords(fam, "ev")
        assert np.allclose(ev, [(1, 0), (0, 1), (-1, 0), (0, -1)], atol=1e-15)

    def test_tilted_checkpoints(self):
        fam = great_circle_family(TILTED, 1.0, 12)
        ev = measure_coords(fam, "ev")
        # theta = 2 pi k / 12
        assert ev[2] == pytest.approx((0.5, 1.0), abs=1e-12)
        assert ev[5][0] == pytest.approx(-0.87, abs=0.005)

    def test_zero_r(self):
        fam = great_circle_family(ORTHO, 0.0, 7)
        assert np.array_equal(measure_coords(fam, "ev"), np.zeros((7, 2)))

    def test_in_span(self):
        for pair in (ORTHO, TILTED):
            n = great_circle_family(pair, 0.94, 50).states()
            normal = np.cross(pair.a.a, pair.b.a)
            assert np.max(np.abs(n @ normal)) <= 1e-12

    @pytest.mark.parametrize("r", [0.0, 0.5, 0.83, 0.94, 0.99, 1.0])
    def test_ortho_saturates_every_form(self, r):
        n = great_circle_family(ORTHO, r, 500).states()
        for form in FORMS:
            rep = relation_arrays(form, n, ORTHO.a.a, ORTHO.b.a)
            assert rep.saturates_mid.all()

    @pytest.mark.parametrize("r", [0.83, 1.0])
    def test_tilted_saturation_pattern(self, r):
        fam = great_circle_family(TILTED, r, 720)
        n = fam.states()
        a, b = TILTED.a.a, TILTED.b.a
        assert relation_arrays("ev", n, a, b).saturates_mid.all()
        lo, hi = saturating_great_circle_range(TILTED)
        arc = great_circle_family(TILTED, r, 720, theta_range=(lo, hi)).states()
        for form in ("sd", "entropy"):
            assert relation_arrays(form, arc, a, b).saturates_mid.all()
            # opposite-sign arc of the full circle is interior
            assert not relation_arrays(form, n, a, b).saturates_mid.all()

    def test_range_is_inclusive(self):
        fam = great_circle_family(TILTED, 1.0, 5, theta_range=(-math.pi / 6, math.pi / 2))
        assert fam.settings[0].theta == pytest.approx(-math.pi / 6)
        assert fam.settings[-1].theta == pytest.approx(math.pi / 2)


class TestArcs:
    def test_equatorial_endpoints(self):
        fam = equatorial_arc_family(ORTHO, 1.0, 9)
        assert sd_pair(fam, 0) == pytest.approx((1, 0), abs=1e-7)
        assert sd_pair(fam, -1) == pytest.approx((1, 1), abs=1e-15)

    def test_equatorial_mixed(self):
        fam = equatorial_arc_family(ORTHO, 0.99, 9)
        assert sd_pair(fam, 0) == pytest.approx((1, math.sqrt(1 - 0.99**2)), abs=1e-12)
        assert sd_pair(fam, 0)[1] == pytest.approx(0.141, abs=5e-4)
        assert np.allclose(measure_coords(fam, "sd")[:, 0], 1.0)

    def test_closing_endpoints(self):
        fam = closing_arc_family(ORTHO, 1.0, 9)
        assert sd_pair(fam, 0) == pytest.approx((0, 1), abs=1e-15)
        assert sd_pair(fam, -1) == pytest.approx((1, 1), abs=1e-15)
        assert np.allclose(measure_coords(fam, "sd")[:, 1], 1.0)

    def test_closing_mixed(self):
        fam = closing_arc_family(ORTHO, 0.83, 3)
        assert sd_pair(fam, 0) == pytest.approx((math.sqrt(1 - 0.83**2), 1), abs=1e-12)
        assert sd_pair(fam, 0)[0] == pytest.approx(0.558, abs=5e-4)

    def test_perpendicular_endpoints(self):
        fam = perpendicular_circle_family(TILTED, 1.0, 11)
        assert sd_pair(fam, 0) == pytest.approx((1, 1), abs=1e-12)
        assert sd_pair(fam, -1) == pytest.approx((0.5, 1), abs=1e-12)
        first, last = fam.settings[0], fam.settings[-1]
        assert (first.theta, first.phi) == pytest.approx((math.pi / 2, math.pi), abs=1e-12)
        # theta = -pi/6 at phi = pi/2 is the same point as theta = pi/6 at phi = -pi/2
        assert np.allclose(state_from_setting(last).n, (0, -0.5, math.sqrt(3) / 2), atol=1e-12)

    def test_perpendicular_entropy_point(self):
        fam = perpendicular_circle_family(TILTED, 1.0, 11)
        h = measure_coords(fam, "entropy")[-1]
        assert h == pytest.approx((0.35, 1.0), abs=0.005)

    @given(st.floats(-0.99, 0.99), st.floats(0, 1))
    def test_perpendicular_b_vanishes(self, dot, r):
        pair = ObservablePair.from_dot(dot)
        _, exp_b = perpendicular_circle_family(pair, r, 25).expectations()
        assert np.max(np.abs(exp_b)) <= 1e-12

    def test_perpendicular_zero_r(self):
        fam = perpendicular_circle_family(TILTED, 0.0, 5)
        assert np.array_equal(measure_coords(fam, "ev"), np.zeros((5, 2)))

    def test_perpendicular_rejects_parallel(self):
        with pytest.raises(ConfigError):
            perpendicular_circle_family(ObservablePair.from_dot(1.0), 1.0, 5)


class TestValidation:
    @pytest.mark.parametrize("name", list(FamilyName))
    def test_too_few_points(self, name):
        with pytest.raises(ConfigError):
            FAMILY_BUILDERS[name](TILTED, 1.0, 1)

    @pytest.mark.parametrize("r", [-0.1, 1.1])
    def test_bad_r(self, r):
        with pytest.raises(ConfigError):
            great_circle_family(ORTHO, r, 4)

    @pytest.mark.parametrize("name", list(FamilyName))
    @pytest.mark.parametrize("r", [0.0, 0.83, 1.0])
    def test_every_point_satisfies(self, name, r):
        fam = FAMILY_BUILDERS[name](TILTED, r, 40)
        for s in fam.settings:
            assert all(rep.satisfied for rep in check_all(state_from_setting(s), TILTED).values())

    @pytest.mark.parametrize("name", list(FamilyName))
    def test_random_sweep(self, name):
        rng = np.random.default_rng(4)
        fam = FAMILY_BUILDERS[name](TILTED, 0.94, 30, rng=rng)
        assert len(fam) == 30
        assert np.allclose(np.linalg.norm(fam.states(), axis=1), 0.94)
        again = FAMILY_BUILDERS[name](TILTED, 0.94, 30, rng=np.random.default_rng(4))
        assert fam.settings == again.settings

    def test_points_match_states(self):
        fam = equatorial_arc_family(TILTED, 0.83, 6)
        exp_a, exp_b = fam.expectations()
        for p, ea, eb in zip(fam.points(), exp_a, exp_b):
            assert (p.exp_a, p.exp_b) == pytest.approx((ea, eb), abs=1e-15)


class TestOutline:
    @pytest.mark.parametrize("pair", [ORTHO, TILTED])
    @pytest.mark.parametrize("measure", ["sd", "entropy"])
    @pytest.mark.parametrize("r", [1.0, 0.83])
    def test_closed(self, pair, measure, r):
        curves = [measure_coords(f, measure) for f in sd_outline(pair, r, 101)]
        assert max(closure_gaps(curves)) <= 1e-9

    def test_family_names(self):
        assert [f.name for f in sd_outline(ORTHO, 1.0, 5)] == [
            FamilyName.GREAT_CIRCLE, FamilyName.EQUATORIAL_ARC, FamilyName.CLOSING_ARC,
        ]
        assert sd_outline(TILTED, 1.0, 5)[-1].name is FamilyName.PERPENDICULAR_CIRCLE

    def test_unsupported_pairs(self):
        with pytest.raises(ConfigError):
            sd_outline(ObservablePair.from_dot(-0.5), 1.0, 5)
        with pytest.raises(ConfigError):
            sd_outline(ObservablePair((1, 0, 0), (0, 1, 0)), 1.0, 5)

    def test_ev_circle_closed(self):
        ev = measure_coords(great_circle_family(ORTHO, 1.0, 360), "ev")
        assert np.allclose(np.hypot(ev[:, 0], ev[:, 1]), 1.0, atol=1e-12)

    def test_gap_detection(self):
        line = np.array([[0.0, 0.0], [1.0, 0.0]])
        assert closure_gaps([line, line[::-1] + [0, 0.5]]) == pytest.approx([0.5, 0.5])
