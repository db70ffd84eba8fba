import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from generators import densities, random_density
from reference_states.parser import bloch_point
from src.purimetrics.bloch import (
    BlochVector,
    Physicality,
    StokesVector,
    bloch_from_density,
    classify_bloch,
    degree_of_polarization_phi,
    density_from_bloch,
    gell_mann,
    matrix_from_stokes,
    pauli,
    stokes_from_matrix,
    su_n_basis,
)
from src.purimetrics.core import Tolerances
from src.purimetrics.errors import DimensionMismatch, NotHermitian, PoincareViolation, ZeroPower
from src.purimetrics.processing import DensityProcessor


class TestStokes:
    def test_circular_polarization(self):
        phi = 0.5 * np.array([[1, -1j], [1j, 1]])
        s = stokes_from_matrix(phi)
        assert s.as_array() == pytest.approx([1.0, 0.0, 0.0, 1.0])

    def test_horizontal_polarization(self):
        s = stokes_from_matrix(np.diag([2.0, 0.0]))
        assert s.as_array() == pytest.approx([2.0, 2.0, 0.0, 0.0])
        assert s.degree_of_polarization == pytest.approx(1.0)

    def test_unpolarized(self):
        s = stokes_from_matrix(np.eye(2) / 2)
        assert s.as_array() == pytest.approx([1.0, 0.0, 0.0, 0.0])
        assert s.degree_of_polarization == pytest.approx(0.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            stokes_from_matrix([[1.0, 1.0], [0.0, 1.0]])

    def test_rejects_wrong_size(self):
        with pytest.raises(DimensionMismatch):
            stokes_from_matrix(np.eye(3) / 3)

    def test_matrix_from_stokes(self):
        phi = matrix_from_stokes(StokesVector(1.0, 0.0, 0.0, 1.0))
        assert np.allclose(phi, 0.5 * np.array([[1, -1j], [1j, 1]]))

    def test_outside_poincare_sphere(self):
        with pytest.raises(PoincareViolation):
            matrix_from_stokes(StokesVector(1.0, 1.0, 1.0, 0.0))

    def test_non_positive_power(self):
        with pytest.raises(PoincareViolation):
            matrix_from_stokes(StokesVector(0.0, 0.0, 0.0, 0.0))

    def test_poincare_slack_follows_tolerances(self):
        s = StokesVector(1.0, 1.0 + 1e-6, 0.0, 0.0)
        with pytest.raises(PoincareViolation):
            matrix_from_stokes(s)
        phi = matrix_from_stokes(s, Tolerances(psd=1e-5))
        assert np.trace(phi).real == pytest.approx(1.0)

    def test_degree_of_polarization_needs_power(self):
        with pytest.raises(ZeroPower):
            degree_of_polarization_phi(np.zeros((2, 2)))
        with pytest.raises(ZeroPower):
            degree_of_polarization_phi(np.diag([1.0, -1.0]))

    @hyp_settings(max_examples=100, deadline=None)
    @given(
        s0=st.floats(min_value=0.1, max_value=10.0),
        direction=st.tuples(*[st.floats(min_value=-1.0, max_value=1.0)] * 3),
        fraction=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_stokes_round_trip_and_radius_form(self, s0, direction, fraction):
        d = np.asarray(direction)
        norm = np.linalg.norm(d)
        if norm < 1e-6:
            d, norm = np.array([1.0, 0.0, 0.0]), 1.0
        s = StokesVector(s0, *(s0 * fraction * d / norm))
        phi = matrix_from_stokes(s)
        back = stokes_from_matrix(phi)
        assert back.as_array() == pytest.approx(s.as_array(), abs=1e-10)
        assert degree_of_polarization_phi(phi) == pytest.approx(s.degree_of_polarization, abs=1e-6)


class TestBases:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_orthogonality_and_tracelessness(self, n):
        basis = su_n_basis(n)
        assert len(basis) == n * n - 1
        assert np.allclose(basis.gram(), (n - 1) * np.eye(n * n - 1), atol=1e-12)
        for q in basis.matrices:
            assert abs(np.trace(q)) < 1e-12
            assert np.allclose(q, q.conj().T)

    def test_qutrit_basis_is_gell_mann(self):
        assert su_n_basis(3) is gell_mann()

    def test_qubit_basis_uses_stokes_ordering(self):
        basis = su_n_basis(2)
        assert basis is pauli()
        assert np.allclose(basis.matrices[0] * np.sqrt(2), np.diag([1, -1]))

    def test_gell_mann_structure(self):
        g = gell_mann().matrices
        assert np.allclose(g[2], np.diag([1, -1, 0]))
        assert np.allclose(g[7], np.diag([1, 1, -2]) / np.sqrt(3))

    def test_rejects_dim_one(self):
        with pytest.raises(DimensionMismatch):
            su_n_basis(1)


class TestBlochVectors:
    def test_maximally_mixed_is_origin(self):
        r = bloch_from_density(np.eye(3) / 3)
        assert np.allclose(r.r, 0.0)

    def test_pure_qubit_lies_on_sphere(self):
        r = bloch_from_density(np.diag([1.0, 0.0]))
        assert r.r == pytest.approx([1.0, 0.0, 0.0])

    def test_qubit_bloch_matches_normalized_stokes(self, rng):
        rho = random_density(rng, 2)
        s = stokes_from_matrix(rho.entries)
        assert bloch_from_density(rho).r == pytest.approx(s.as_array()[1:] / s.s0, abs=1e-12)

    def test_table_state_d(self):
        r = bloch_from_density(np.diag([0.5, 0.25, 0.25]))
        expected = np.zeros(8)
        expected[2] = np.sqrt(3) / 8
        expected[7] = 1 / 8
        assert np.allclose(r.r, expected, atol=1e-12)

    def test_diag_001(self):
        r = bloch_from_density(np.diag([0.0, 0.0, 1.0]))
        assert np.allclose(r.r, [0, 0, 0, 0, 0, 0, 0, -1], atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_round_trip_and_unit_ball(self, rng, n):
        for _ in range(20):
            rho = random_density(rng, n)
            r = bloch_from_density(rho)
            assert r.norm <= 1.0 + 1e-10
            assert np.allclose(density_from_bloch(r), rho.entries, atol=1e-12)

    @hyp_settings(max_examples=200, deadline=None)
    @given(densities(min_dim=2, max_dim=5))
    def test_purity_from_bloch_length(self, rho):
        # Tr rho^2 = 1/N + (N - 1)/N |r|^2
        n = rho.dim
        r = bloch_from_density(rho)
        tr_sq = float(np.sum(rho.eigenvalues**2))
        assert abs(tr_sq - (1 / n + (n - 1) / n * r.norm**2)) <= 1e-10

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatch):
            BlochVector.of([0.0] * 7, n_dim=3)

    def test_basis_mismatch(self):
        with pytest.raises(DimensionMismatch):
            bloch_from_density(np.eye(3) / 3, pauli())


class TestReferencePoints:
    @pytest.mark.parametrize("label", ["A", "B", "C", "D"])
    def test_matrices(self, label):
        r, diagonal, _ = bloch_point(label)
        rho = density_from_bloch(BlochVector.of(r, n_dim=3))
        assert np.max(np.abs(rho - np.diag(diagonal))) <= 1e-12

    @pytest.mark.parametrize(
        "label, kind",
        [
            ("A", Physicality.UNPHYSICAL),
            ("B", Physicality.PURE),
            ("C", Physicality.BOUNDARY),
            ("D", Physicality.INTERIOR),
        ],
    )
    def test_classification(self, label, kind):
        r, _, class_name = bloch_point(label)
        result = classify_bloch(BlochVector.of(r, n_dim=3))
        assert result.kind is kind
        assert result.kind.value == class_name

    def test_unit_ball_is_not_enough(self):
        # |r_A| = 1 but the matrix has a negative eigenvalue
        r, _, _ = bloch_point("A")
        result = classify_bloch(BlochVector.of(r, n_dim=3))
        assert result.bloch_norm == pytest.approx(1.0)
        assert result.min_eigenvalue == pytest.approx(-1 / 3)

    def test_physical_points_validate(self):
        for label in ("B", "C", "D"):
            r, diagonal, _ = bloch_point(label)
            rho = DensityProcessor.validate_density(density_from_bloch(BlochVector.of(r, n_dim=3)))
            assert np.allclose(rho.eigenvalues, sorted(diagonal, reverse=True), atol=1e-12)
