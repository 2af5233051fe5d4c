import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fano_from_rho, hermitian_eigvals, jacobi_eigvalsh, random_rotation, rho_from_fano
from qpredict import (
    DomainError,
    FanoState,
    InvalidRotation,
    NonPhysical,
    bell_diagonal,
    bell_state,
    classical_quantum,
    density_matrix,
    from_density_matrix,
    local_rotate,
    maximally_mixed,
    positivity_conditions,
    random_state,
    singular_values,
    validate,
)
from qpredict.state import bell_tetrahedron_eigenvalues

coord = st.floats(-1.0, 1.0, allow_nan=False)


class TestDensityMatrix:
    def test_phi_plus_is_projector(self):
        rho = density_matrix(bell_state(1))
        np.testing.assert_allclose(rho @ rho, rho, atol=1e-15)
        np.testing.assert_allclose(hermitian_eigvals(rho), [0, 0, 0, 1], atol=1e-12)

    def test_matches_independent_construction(self):
        for seed in range(20):
            s = random_state(seed)
            np.testing.assert_allclose(density_matrix(s), rho_from_fano(s.t_a, s.t_b, s.c), atol=1e-15)

    def test_round_trip(self):
        for seed in range(100):
            s = random_state(seed)
            assert from_density_matrix(density_matrix(s)).allclose(s, atol=1e-14)

    def test_phi_plus_decomposition(self):
        v = np.array([1, 0, 0, 1]) / np.sqrt(2)
        s = from_density_matrix(np.outer(v, v))
        np.testing.assert_allclose(s.t_a, 0, atol=1e-15)
        np.testing.assert_allclose(s.c, np.diag([1, -1, 1]), atol=1e-15)

    def test_rejects_bad_matrices(self):
        with pytest.raises(NonPhysical):
            from_density_matrix(np.eye(4))
        with pytest.raises(NonPhysical):
            from_density_matrix(np.diag([1.5, -0.5, 0, 0]))
        with pytest.raises(NonPhysical):
            from_density_matrix(np.array([[0.5, 0.1, 0, 0], [0.2, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))


class TestValidity:
    def test_pure_product(self):
        s = FanoState([0, 0, 1], [0, 0, 1], np.diag([0, 0, 1.0]))
        np.testing.assert_allclose(density_matrix(s), np.diag([1, 0, 0, 0]), atol=1e-15)
        assert validate(*_parts(maximally_mixed())).valid

    def test_bell_states_valid(self):
        for k in range(1, 5):
            assert validate(*_parts(bell_state(k))).valid

    def test_outside_tetrahedron(self):
        report = validate(np.zeros(3), np.zeros(3), np.eye(3))
        assert not report.valid
        assert report.consistent
        np.testing.assert_allclose(report.min_eigenvalue, -0.5, atol=1e-12)
        with pytest.raises(NonPhysical):
            FanoState(np.zeros(3), np.zeros(3), np.eye(3))

    def test_conditions_are_scaled_symmetric_polynomials(self):
        # 4 - r^2, 16 e3 and 256 det(rho) in terms of the eigenvalues of rho
        for seed in range(30):
            s = random_state(seed)
            lam = hermitian_eigvals(rho_from_fano(s.t_a, s.t_b, s.c))
            e2 = sum(lam[i] * lam[j] for i in range(4) for j in range(i + 1, 4))
            e3 = sum(lam[i] * lam[j] * lam[k] for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
            np.testing.assert_allclose(positivity_conditions(s.t_a, s.t_b, s.c), [8 * e2, 16 * e3, 256 * np.prod(lam)], atol=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(coord, min_size=15, max_size=15))
    def test_conditions_agree_with_eigenvalues(self, xs):
        t_a = np.array(xs[:3]) * 0.6
        t_b = np.array(xs[3:6]) * 0.6
        c = np.array(xs[6:]).reshape(3, 3)
        report = validate(t_a, t_b, c)
        lam_min = hermitian_eigvals(rho_from_fano(t_a, t_b, c))[0]
        if abs(lam_min) > 1e-8:
            assert report.consistent
            assert report.valid == (lam_min > 0)


class TestBellDiagonal:
    def test_werner_family_valid(self):
        for w in np.linspace(0, 1, 11):
            s = bell_diagonal(-w, -w, -w)
            assert hermitian_eigvals(density_matrix(s))[0] >= -1e-12

    def test_outside(self):
        with pytest.raises(NonPhysical):
            bell_diagonal(1, 1, 1)

    def test_tetrahedron_eigenvalues(self):
        c = (0.3, -0.2, 0.1)
        lam = bell_tetrahedron_eigenvalues(*c)
        np.testing.assert_allclose(np.sort(lam), hermitian_eigvals(density_matrix(bell_diagonal(*c))), atol=1e-14)


class TestClassicalQuantum:
    def test_example(self):
        s = classical_quantum(0.5, [0, 0, 1], [1, 0, 0], [-1, 0, 0])
        np.testing.assert_allclose(s.t_a, 0, atol=1e-15)
        np.testing.assert_allclose(s.t_b, 0, atol=1e-15)
        np.testing.assert_allclose(s.c, np.outer([0, 0, 1], [1, 0, 0]), atol=1e-15)
        np.testing.assert_allclose(np.sum(s.c**2), 1.0)

    def test_pure_classical_branch_is_product(self):
        s = classical_quantum(1.0, [0, 1, 0], [0.3, 0, 0.4], [1, 0, 0])
        np.testing.assert_allclose(s.c, np.outer(s.t_a, s.t_b), atol=1e-15)

    def test_rank_one(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            n = rng.standard_normal(3)
            s = classical_quantum(rng.uniform(), n / np.linalg.norm(n), rng.uniform(-0.5, 0.5, 3), rng.uniform(-0.5, 0.5, 3))
            assert abs(np.linalg.det(s.c)) < 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            classical_quantum(1.2, [0, 0, 1], [1, 0, 0], [0, 0, 1])
        with pytest.raises(DomainError):
            classical_quantum(0.3, [0, 0, 2], [1, 0, 0], [0, 0, 1])


class TestSingularValues:
    def test_against_jacobi(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            c = rng.uniform(-1, 1, (3, 3))
            expected = np.sqrt(np.clip(jacobi_eigvalsh(c.T @ c), 0, None))[::-1]
            np.testing.assert_allclose(singular_values(c), expected, atol=1e-12)


class TestLocalRotate:
    def test_quarter_turn_about_z(self):
        r = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1.0]])
        s = local_rotate(bell_diagonal(0.5, -0.3, 0.1), r, r)
        np.testing.assert_allclose(s.c, np.diag([-0.3, 0.5, 0.1]), atol=1e-15)

    def test_validity_preserved(self):
        rng = np.random.default_rng(3)
        for seed in range(100):
            s = local_rotate(random_state(seed), random_rotation(rng), random_rotation(rng))
            assert validate(s.t_a, s.t_b, s.c).valid

    def test_rejects_reflection(self):
        with pytest.raises(InvalidRotation):
            local_rotate(maximally_mixed(), np.diag([1, 1, -1.0]), np.eye(3))

    def test_matches_unitary_conjugation(self):
        # rotation by angle t about z corresponds to exp(-i t Z / 2)
        t = 0.7
        u = np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
        r = np.array([[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]])
        s = random_state(11)
        uu = np.kron(u, u)
        expected = fano_from_rho(uu @ density_matrix(s) @ uu.conj().T)
        rotated = local_rotate(s, r, r)
        for got, want in zip((rotated.t_a, rotated.t_b, rotated.c), expected):
            np.testing.assert_allclose(got, want, atol=1e-14)


class TestRandomState:
    def test_reproducible(self):
        assert random_state(5) == random_state(5)
        assert not random_state(5).allclose(random_state(6))

    def test_marginal_mean_vanishes(self):
        t = np.array([random_state(seed).t_a for seed in range(20_000)])
        sigma = t.std(axis=0) / np.sqrt(len(t))
        assert np.all(np.abs(t.mean(axis=0)) < 3 * sigma)


class TestSerialization:
    def test_json_round_trip(self):
        s = random_state(2)
        assert FanoState.from_dict(json.loads(json.dumps(s.to_dict()))) == s

    def test_immutable(self):
        s = random_state(2)
        with pytest.raises(ValueError):
            s.c[0, 0] = 0.0


def _parts(s):
    return s.t_a, s.t_b, s.c
