import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqu.errors import DomainError, InvalidObservable, UnphysicalState
from tqu.qmath import (
    BlochVector,
    PauliAxis,
    PreparationSetting,
    binary_entropy,
    binary_entropy_inverse,
    bloch_from_density_matrix,
    expectation,
    f_of_entropy,
    preparation_density_matrix,
    shannon_entropy,
    state_from_setting,
    std_dev,
)

SQRT3_2 = math.sqrt(3) / 2


def h2_oracle(p):
    """Binary entropy straight from the definition, plain floats."""
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def h2_inverse_oracle(h):
    """Plain bisection, run to float resolution; independent of the package code."""
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h2_oracle(mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


unit_vectors = st.tuples(
    st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)
).filter(lambda v: math.hypot(*v) > 1e-3).map(lambda v: tuple(np.array(v) / np.linalg.norm(v)))

bloch_vectors = st.tuples(
    unit_vectors, st.floats(0, 1)
).map(lambda t: tuple(t[1] * np.array(t[0])))


class TestTypes:
    def test_bloch_rejects_outside_ball(self):
        with pytest.raises(UnphysicalState):
            BlochVector((0, 0, 1.5))

    def test_bloch_accepts_rounding_slack(self):
        BlochVector((0, 0, 1 + 5e-10))

    def test_axis_rejects_non_unit(self):
        with pytest.raises(InvalidObservable):
            PauliAxis((0, 0, 2))

    def test_setting_rejects_r(self):
        with pytest.raises(DomainError):
            PreparationSetting(1.2, 0.0, 0.0)

    def test_wrong_shape(self):
        with pytest.raises(ValueError):
            BlochVector((0, 1))

    @given(bloch_vectors)
    def test_density_matrix_physical(self, n):
        rho = BlochVector(n).density_matrix()
        r = np.linalg.norm(n)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(rho, rho.conj().T, atol=1e-15)
        evals = np.sort(np.linalg.eigvalsh(rho))
        assert np.allclose(evals, [(1 - r) / 2, (1 + r) / 2], atol=1e-12)
        assert evals[0] >= -1e-15


class TestExpectation:
    def test_eigenstate(self):
        assert expectation(BlochVector((0, 0, 1)), PauliAxis((0, 0, 1))) == 1.0

    def test_orthogonal(self):
        assert expectation(BlochVector((0, 0.83, 0)), PauliAxis((0, 0, 1))) == 0.0

    def test_tilted_axis_maximum(self):
        b = (0, SQRT3_2, 0.5)
        assert expectation(BlochVector(b), PauliAxis(b)) == pytest.approx(1.0, abs=1e-12)

    @given(bloch_vectors, unit_vectors)
    def test_matches_trace(self, n, a):
        state, obs = BlochVector(n), PauliAxis(a)
        trace = np.trace(state.density_matrix() @ obs.operator()).real
        assert expectation(state, obs) == pytest.approx(trace, abs=1e-12)
        assert abs(expectation(state, obs)) <= np.linalg.norm(n) + 1e-12

    @given(bloch_vectors, unit_vectors)
    def test_variance_identity(self, n, a):
        e = expectation(BlochVector(n), PauliAxis(a))
        assert std_dev(e) ** 2 + e**2 == pytest.approx(1.0, abs=1e-12)


class TestStdDev:
    @pytest.mark.parametrize("e, expected", [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)])
    def test_values(self, e, expected):
        assert std_dev(e) == expected

    def test_tilted_point(self):
        assert std_dev(0.866025) == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize("e", [1.01, -1.5, float("nan")])
    def test_domain(self, e):
        with pytest.raises(DomainError):
            std_dev(e)

    def test_array_in_array_out(self):
        out = std_dev(np.array([0.0, 0.6]))
        assert isinstance(out, np.ndarray)
        assert np.allclose(out, [1.0, 0.8])


class TestBinaryEntropy:
    @pytest.mark.parametrize("p, expected", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0)])
    def test_trivial(self, p, expected):
        assert binary_entropy(p) == expected

    def test_quarter(self):
        # 0.81 quoted for the tilted configuration
        assert binary_entropy(0.75) == pytest.approx(0.811278, abs=1e-6)
        assert round(binary_entropy(0.75), 2) == 0.81

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            binary_entropy(p)

    @given(st.floats(0, 1))
    def test_matches_oracle_and_symmetric(self, p):
        assert binary_entropy(p) == pytest.approx(h2_oracle(p), abs=1e-13)
        assert binary_entropy(p) == pytest.approx(binary_entropy(1 - p), abs=1e-13)


class TestShannonEntropy:
    def test_values(self):
        assert shannon_entropy(1.0) == 0.0
        assert shannon_entropy(0.0) == 1.0

    def test_tilted_point(self):
        # computed value; quoted to two digits as 0.35
        assert shannon_entropy(0.866025) == pytest.approx(h2_oracle((1 + 0.866025) / 2), abs=1e-12)
        assert shannon_entropy(SQRT3_2) == pytest.approx(0.354579, abs=1e-6)
        assert round(shannon_entropy(SQRT3_2), 2) == 0.35

    @given(st.floats(-1, 1))
    def test_even(self, e):
        assert shannon_entropy(e) == pytest.approx(shannon_entropy(-e), abs=1e-15)
        assert shannon_entropy(e) == pytest.approx(h2_oracle((1 + e) / 2), abs=1e-12)


class TestInverse:
    @pytest.mark.parametrize("h, expected", [(1.0, 0.5), (0.0, 0.0)])
    def test_trivial(self, h, expected):
        assert binary_entropy_inverse(h) == expected

    def test_quarter_against_oracle(self):
        expected = h2_inverse_oracle(0.811278)
        assert binary_entropy_inverse(0.811278) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.25, abs=1e-6)

    @pytest.mark.parametrize("h", [-1e-3, 1.001])
    def test_domain(self, h):
        with pytest.raises(DomainError):
            binary_entropy_inverse(h)

    @given(st.floats(0, 1))
    @settings(max_examples=300)
    def test_round_trip(self, h):
        p = binary_entropy_inverse(h)
        assert 0.0 <= p <= 0.5
        assert binary_entropy(p) == pytest.approx(h, abs=1e-10)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, h1, h2):
        lo, hi = sorted((h1, h2))
        assert binary_entropy_inverse(lo) <= binary_entropy_inverse(hi)

    def test_vectorized_matches_scalar(self):
        hs = np.linspace(0, 1, 101)
        vec = binary_entropy_inverse(hs)
        assert np.array_equal(vec, [binary_entropy_inverse(float(h)) for h in hs])

    @pytest.mark.parametrize("h", [1e-300, 1e-20, 1e-9, 0.3, 0.999999])
    def test_oracle_edges(self, h):
        assert binary_entropy_inverse(h) == pytest.approx(h2_inverse_oracle(h), abs=1e-12)

    def test_flat_top(self):
        # h2 is flat near 1/2, so p is only determined up to sqrt(eps); h round-trips
        h = 1 - 1e-15
        p = binary_entropy_inverse(h)
        assert binary_entropy(p) == pytest.approx(h, abs=1e-15)
        assert p == pytest.approx(h2_inverse_oracle(h), abs=1e-8)


class TestF:
    def test_trivial(self):
        assert f_of_entropy(0.0) == 1.0
        assert f_of_entropy(1.0) == 0.0

    def test_tilted_round_trip(self):
        expected = 1 - 2 * h2_inverse_oracle(shannon_entropy(SQRT3_2))
        assert f_of_entropy(shannon_entropy(SQRT3_2)) == pytest.approx(expected, abs=1e-12)
        assert f_of_entropy(shannon_entropy(SQRT3_2)) == pytest.approx(0.866025, abs=1e-6)

    @given(st.floats(-1, 1).filter(lambda e: e == 0 or abs(e) >= 1e-6))
    @settings(max_examples=300)
    def test_inverts_entropy(self, e):
        # below |e| ~ 1e-7 the entropy rounds to 1.0 and |e| is unrecoverable
        assert f_of_entropy(shannon_entropy(e)) == pytest.approx(abs(e), abs=1e-9)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_decreasing(self, h1, h2):
        lo, hi = sorted((h1, h2))
        assert f_of_entropy(lo) >= f_of_entropy(hi)


class TestPreparation:
    @pytest.mark.parametrize(
        "setting, expected",
        [
            (PreparationSetting(1, 0, math.pi / 2), (0, 0, 1)),
            (PreparationSetting(1, math.pi / 2, math.pi), (-1, 0, 0)),
            (PreparationSetting(0.94, math.pi / 2, math.pi / 2), (0, 0.94, 0)),
        ],
    )
    def test_points(self, setting, expected):
        assert np.allclose(state_from_setting(setting).n, expected, atol=1e-15)

    @given(st.floats(0, 1), st.floats(-7, 7), st.floats(-7, 7))
    def test_unitary_chain_agrees(self, r, theta, phi):
        s = PreparationSetting(r, theta, phi)
        n = state_from_setting(s).n
        chain = bloch_from_density_matrix(preparation_density_matrix(s))
        assert np.max(np.abs(n - chain)) <= 1e-12
        assert np.linalg.norm(n) == pytest.approx(r, abs=1e-12)

    def test_domain(self):
        s = PreparationSetting.__new__(PreparationSetting)
        object.__setattr__(s, "r", 1.5)
        object.__setattr__(s, "theta", 0.0)
        object.__setattr__(s, "phi", 0.0)
        with pytest.raises(DomainError):
            state_from_setting(s)
