import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from oracles import random_rotation, random_unit
from qpredict import (
    DomainError,
    adc_state,
    avg_min_bayes_risk,
    avg_min_bayes_risk_local,
    avg_min_inference_variance,
    avg_min_inference_variance_local,
    bell_diagonal,
    bell_state,
    carlson_rd,
    carlson_rf,
    carlson_rg,
    classical_quantum,
    local_rotate,
    maximally_mixed,
    random_state,
    sphere_quadrature,
)
from qpredict.haar import (
    avg_min_bayes_risk_quadrature,
    avg_min_inference_variance_quadrature,
    correlation_dominated,
    mean_abs_projection,
)
from qpredict.state import FanoState

pytestmark = pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")

positive = st.floats(1e-3, 10.0, allow_nan=False)


def rf_quad(x, y, z):
    f = lambda t: 0.5 / math.sqrt((t + x) * (t + y) * (t + z))  # noqa: E731
    return integrate.quad(f, 0, np.inf, epsabs=1e-14, epsrel=1e-13, limit=500)[0]


def rd_quad(x, y, z):
    f = lambda t: 1.5 / (math.sqrt((t + x) * (t + y)) * (t + z) ** 1.5)  # noqa: E731
    return integrate.quad(f, 0, np.inf, epsabs=1e-14, epsrel=1e-13, limit=500)[0]


def rg_sphere(x, y, z):
    # mean of sqrt(x n1^2 + y n2^2 + z n3^2) over the unit sphere, by 2-d quadrature
    def integrand(phi, theta):
        n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
        return math.sqrt(x * n[0] ** 2 + y * n[1] ** 2 + z * n[2] ** 2) * math.sin(theta)

    val = integrate.dblquad(integrand, 0, math.pi, 0, 2 * math.pi, epsabs=1e-12, epsrel=1e-11)[0]
    return val / (4 * math.pi)


class TestCarlson:
    def test_rf_lemniscate_value(self):
        np.testing.assert_allclose(carlson_rf(0, 1, 1), math.pi / 2, rtol=1e-14)

    def test_rd_value(self):
        np.testing.assert_allclose(carlson_rd(0, 2, 1), rd_quad(0, 2, 1), rtol=1e-10)
        np.testing.assert_allclose(carlson_rd(0, 2, 1), 1.7972103521033884, rtol=1e-14)

    def test_rg_values(self):
        assert carlson_rg(0, 0, 1) == 0.5
        np.testing.assert_allclose(carlson_rg(0, 1, 1), math.pi / 4, rtol=1e-14)
        np.testing.assert_allclose(carlson_rg(0, 1, 1), rg_sphere(0, 1, 1), rtol=1e-9)
        for x in (1e-6, 0.3, 1.0, 7.5):
            np.testing.assert_allclose(carlson_rg(x, x, x), math.sqrt(x), rtol=1e-14)

    def test_zero_cases(self):
        assert carlson_rg(0, 0, 0) == 0.0
        np.testing.assert_allclose(carlson_rg(4, 0, 0), 1.0)

    def test_against_quadrature(self):
        rng = np.random.default_rng(0)
        for _ in range(15):
            x, y, z = rng.uniform(0.01, 3, 3)
            np.testing.assert_allclose(carlson_rf(x, y, z), rf_quad(x, y, z), rtol=1e-10)
            np.testing.assert_allclose(carlson_rd(x, y, z), rd_quad(x, y, z), rtol=1e-10)
        for x, y, z in [(0.2, 0.5, 1.0), (0.0, 0.3, 1.0), (0.9, 0.9, 0.1)]:
            np.testing.assert_allclose(carlson_rg(x, y, z), rg_sphere(x, y, z), rtol=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(positive, positive, positive)
    def test_agrees_with_scipy(self, x, y, z):
        np.testing.assert_allclose(carlson_rf(x, y, z), special.elliprf(x, y, z), rtol=1e-13)
        np.testing.assert_allclose(carlson_rd(x, y, z), special.elliprd(x, y, z), rtol=1e-13)
        np.testing.assert_allclose(carlson_rg(x, y, z), special.elliprg(x, y, z), rtol=1e-13)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0, 5), st.floats(0, 5), st.floats(0, 5))
    def test_rg_permutation_symmetry(self, x, y, z):
        ref = carlson_rg(x, y, z)
        for p in permutations((x, y, z)):
            assert abs(carlson_rg(*p) - ref) <= 1e-12 * max(1.0, ref)

    def test_domain(self):
        with pytest.raises(DomainError):
            carlson_rf(-1, 1, 1)
        with pytest.raises(DomainError):
            carlson_rf(0, 0, 1)
        with pytest.raises(DomainError):
            carlson_rd(1, 1, 0)
        with pytest.raises(DomainError):
            carlson_rg(-0.1, 1, 1)


class TestSphereQuadrature:
    def test_abs_z(self):
        np.testing.assert_allclose(sphere_quadrature(lambda n: np.abs(n[:, 2]), 100_000), 0.5, atol=1e-4)

    def test_second_moment(self):
        np.testing.assert_allclose(sphere_quadrature(lambda n: n[:, 0] ** 2, 100_000), 1 / 3, atol=1e-4)


class TestBayesAverage:
    def test_rank_one_correlations(self):
        for c in (0.0, 0.4, -0.9, 1.0):
            s = FanoState(np.zeros(3), np.zeros(3), np.diag([c, 0, 0]))
            r = avg_min_bayes_risk(s)
            assert r.method == "closed-form"
            np.testing.assert_allclose(r.value, 0.5 * (1 - abs(c) / 2), atol=1e-15)

    def test_werner(self):
        for w in (0.1, 0.5, 0.8):
            s = bell_diagonal(-w, -w, -w)
            np.testing.assert_allclose(avg_min_bayes_risk(s).value, (1 - w) / 2, atol=1e-15)
            np.testing.assert_allclose(avg_min_bayes_risk_quadrature(s), (1 - w) / 2, atol=1e-12)

    def test_bell_and_mixed(self):
        assert avg_min_bayes_risk(bell_state(2)).value == 0.0
        assert avg_min_bayes_risk(maximally_mixed()).value == 0.5

    def test_mean_abs_projection_matches_quadrature(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            c = rng.uniform(-1, 1, (3, 3))
            quad = sphere_quadrature(lambda a: np.linalg.norm(a @ c, axis=1), 200_000)
            np.testing.assert_allclose(mean_abs_projection(c), quad, rtol=1e-6)

    def test_local(self):
        np.testing.assert_allclose(avg_min_bayes_risk_local([0, 0, 1]), 0.25)
        np.testing.assert_allclose(avg_min_bayes_risk_local([0, 0.8, 0]), 0.3)
        quad = sphere_quadrature(lambda a: 0.5 * (1 - np.abs(a @ np.array([0, 0.8, 0]))), 200_000)
        np.testing.assert_allclose(quad, 0.3, atol=1e-6)

    def test_mixed_regime_uses_quadrature(self):
        s = adc_state(0.6, 0.2)
        assert not correlation_dominated(s)
        r = avg_min_bayes_risk(s, 50_000)
        assert r.method == "quadrature" and not r.assumption_verified

    def test_assumption_check_against_grid(self):
        # exact eigenvalue test versus brute evaluation over many directions
        from qpredict import fibonacci_sphere

        grid = fibonacci_sphere(20_000)
        for seed in range(60):
            s = random_state(seed)
            margin = np.min(np.linalg.norm(grid @ s.c, axis=1) - np.abs(grid @ s.t_a))
            if abs(margin) > 1e-3:
                assert correlation_dominated(s) == (margin > 0)

    def test_not_above_local(self):
        for seed in range(100):
            s = random_state(seed)
            assert avg_min_bayes_risk(s, 20_000).value <= avg_min_bayes_risk_local(s.t_a) + 1e-10


class TestVarianceAverage:
    def test_bell_diagonal(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            c = rng.uniform(-1, 1, 3)
            try:
                s = bell_diagonal(*c)
            except ValueError:
                continue
            np.testing.assert_allclose(avg_min_inference_variance(s).value, 0.25 * (1 - np.sum(c**2) / 3), atol=1e-15)

    def test_local(self):
        np.testing.assert_allclose(avg_min_inference_variance_local([1, 0, 0]), 1 / 6)
        np.testing.assert_allclose(avg_min_inference_variance_local([0, 0, 0.5]), 11 / 48)
        quad = sphere_quadrature(lambda a: 0.25 * (1 - (a @ np.array([0, 0, 0.5])) ** 2), 200_000)
        np.testing.assert_allclose(quad, 11 / 48, rtol=1e-6)

    def test_against_quadrature(self):
        for seed in range(20):
            s = random_state(seed)
            np.testing.assert_allclose(
                avg_min_inference_variance(s).value, avg_min_inference_variance_quadrature(s, 50_000), rtol=1e-4
            )

    def test_not_above_local(self):
        for seed in range(100):
            s = random_state(seed)
            assert avg_min_inference_variance(s).value <= avg_min_inference_variance_local(s.t_a) + 1e-10

    def test_classical_quantum_cannot_beat_local_threshold(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            tb0 = random_unit(rng) * rng.uniform() ** (1 / 3)
            tb1 = random_unit(rng) * rng.uniform() ** (1 / 3)
            s = classical_quantum(rng.uniform(), random_unit(rng), tb0, tb1)
            assert avg_min_inference_variance(s).value >= 1 / 6 - 1e-10


class TestRotationInvariance:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(0, 10_000))
    def test_averages(self, seed, rseed):
        rng = np.random.default_rng(rseed)
        s = random_state(seed)
        rotated = local_rotate(s, random_rotation(rng), random_rotation(rng))
        np.testing.assert_allclose(avg_min_inference_variance(rotated).value, avg_min_inference_variance(s).value, atol=1e-12)
        a, b = avg_min_bayes_risk(rotated, 2000), avg_min_bayes_risk(s, 2000)
        if a.method == b.method == "closed-form":
            np.testing.assert_allclose(a.value, b.value, atol=1e-12)
