import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from bipartite import states
from bipartite.errors import MetadataError, ShapeError, ValidationError
from bipartite.linalg import I2, SIGMA_Z
from bipartite.states import (
    BlochVector,
    DensityOperator,
    MeasurementAxis,
    PureState,
    Subsystem,
)

from helpers import (
    entrywise_partial_trace_b,
    loop_partial_trace_a,
    random_density,
    random_density_matrix,
    random_hermitian,
    random_pure,
)

H = 1 / np.sqrt(2)
PHI_PLUS = np.array([H, 0, 0, H])
angles = st.floats(-10, 10, allow_nan=False)


def ball_points():
    return st.tuples(angles, angles, st.floats(0, 1)).map(
        lambda t: t[2] * np.array([np.sin(t[0]) * np.cos(t[1]), np.sin(t[0]) * np.sin(t[1]), np.cos(t[0])])
    )


class TestValidation:
    def test_unnormalized_pure(self):
        with pytest.raises(ValidationError, match="expected 1"):
            PureState([1, 1])

    def test_trace_message(self):
        with pytest.raises(ValidationError, match=r"trace = 0\.98"):
            DensityOperator(np.diag([0.49, 0.49]))

    def test_not_psd(self):
        with pytest.raises(ValidationError, match="positive semidefinite"):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_dims_must_factor(self):
        with pytest.raises(ShapeError):
            DensityOperator(np.eye(4) / 4, (2, 3))

    def test_bloch_ball(self):
        with pytest.raises(ValidationError, match="Bloch ball"):
            BlochVector((0, 0, 1.1))

    def test_axis_unit(self):
        with pytest.raises(ValidationError):
            MeasurementAxis((0, 0, 0.5))

    def test_values_immutable(self):
        rho = DensityOperator(np.eye(2) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1


class TestQubitFromAngles:
    @pytest.mark.parametrize("phi", [0.0, 1.3, -4.0])
    def test_zero_angle(self, phi):
        assert_allclose(states.qubit_from_angles(0, phi).amplitudes, [1, 0])

    def test_plus(self):
        assert_allclose(states.qubit_from_angles(np.pi / 4, 0).amplitudes, [H, H])

    def test_plus_i(self):
        assert_allclose(states.qubit_from_angles(np.pi / 4, np.pi / 2).amplitudes, [H, 1j * H], atol=1e-15)


class TestDensityFromPure:
    def test_zero(self):
        assert_allclose(states.density_from_pure(PureState([1, 0])).matrix, np.diag([1, 0]))

    def test_plus(self):
        assert_allclose(states.density_from_pure(PureState([H, H])).matrix, 0.5 * np.ones((2, 2)))

    @given(angles, angles)
    def test_closed_form_matrix(self, theta, phi):
        rho = states.density_from_pure(states.qubit_from_angles(theta, phi))
        c, s = np.cos(2 * theta), np.sin(2 * theta)
        expected = 0.5 * np.array([[1 + c, s * np.exp(-1j * phi)], [s * np.exp(1j * phi), 1 - c]])
        assert_allclose(rho.matrix, expected, atol=1e-12)
        assert states.purity(rho) == pytest.approx(1.0, abs=1e-9)


class TestBloch:
    def test_centre_is_completely_mixed(self):
        assert_allclose(states.bloch_to_density(BlochVector((0, 0, 0))).matrix, I2 / 2)

    def test_north_pole(self):
        assert_allclose(states.bloch_to_density(BlochVector((0, 0, 1))).matrix, np.diag([1, 0]))

    def test_x_axis(self):
        assert_allclose(states.bloch_to_density(BlochVector((1, 0, 0))).matrix, 0.5 * np.ones((2, 2)))

    def test_to_bloch_mixed(self):
        assert_allclose(states.density_to_bloch(DensityOperator(I2 / 2)).n, [0, 0, 0])
        # tr(rho sigma_z) = 3/4 - 1/4
        assert_allclose(states.density_to_bloch(DensityOperator(np.diag([0.75, 0.25]))).n, [0, 0, 0.5])

    @given(angles, angles)
    def test_pure_state_direction(self, theta, phi):
        n = states.density_to_bloch(states.density_from_pure(states.qubit_from_angles(theta, phi))).n
        expected = [np.sin(2 * theta) * np.cos(phi), np.sin(2 * theta) * np.sin(phi), np.cos(2 * theta)]
        assert_allclose(n, expected, atol=1e-12)

    @given(ball_points())
    def test_round_trip(self, n):
        back = states.density_to_bloch(states.bloch_to_density(BlochVector(n))).n
        assert_allclose(back, n, atol=1e-9)

    def test_requires_qubit(self):
        with pytest.raises(ShapeError):
            states.density_to_bloch(DensityOperator(np.eye(4) / 4))

    def test_mixture_is_linear(self, rng):
        for _ in range(200):
            k = int(rng.integers(1, 6))
            p = rng.dirichlet(np.ones(k))
            rhos = [states.density_from_pure(random_pure(rng, 2)) for _ in range(k)]
            mix = DensityOperator(sum(pi * r.matrix for pi, r in zip(p, rhos)))
            n_mix = states.density_to_bloch(mix).n
            n_sum = sum(pi * states.density_to_bloch(r).n for pi, r in zip(p, rhos))
            assert_allclose(n_mix, n_sum, atol=1e-10)
            assert np.linalg.norm(n_mix) <= 1 + 1e-12


class TestPurity:
    def test_pure(self, rng):
        for _ in range(20):
            assert states.purity(states.density_from_pure(random_pure(rng, 2))) == pytest.approx(1, abs=1e-9)

    def test_mixed_centre(self):
        assert states.purity(DensityOperator(I2 / 2)) == pytest.approx(0.0)

    def test_diag_three_quarters(self):
        # 2 (9/16 + 1/16) - 1
        rho = DensityOperator(np.diag([0.75, 0.25]))
        assert states.purity(rho) == pytest.approx(0.25)
        assert states.linear_entropy(rho) == pytest.approx(0.75)

    def test_linear_entropy_extremes(self):
        assert states.linear_entropy(DensityOperator(np.diag([1.0, 0.0]))) == pytest.approx(0.0)
        assert states.linear_entropy(DensityOperator(I2 / 2)) == pytest.approx(1.0)

    def test_matches_bloch_length(self, rng):
        for _ in range(200):
            rho = random_density(rng, 2)
            mu = states.purity(rho)
            assert -1e-9 <= mu <= 1 + 1e-9
            assert mu == pytest.approx(np.sum(states.density_to_bloch(rho).n ** 2), abs=1e-9)

    def test_rejects_qudits(self):
        with pytest.raises(ShapeError):
            states.purity(DensityOperator(np.eye(3) / 3))


class TestPartialTrace:
    def test_product_factorizes(self, rng):
        r1, r2 = random_density(rng, 2), random_density(rng, 3)
        prod = states.product_density(r1, r2)
        assert_allclose(states.partial_trace(prod, Subsystem.A).matrix, r1.matrix, atol=1e-12)
        assert_allclose(states.partial_trace(prod, "B").matrix, r2.matrix, atol=1e-12)

    def test_phi_plus_reduced_is_mixed(self):
        rho = states.density_from_pure(PureState(PHI_PLUS), (2, 2))
        assert_allclose(states.partial_trace(rho, "B").matrix, I2 / 2, atol=1e-15)

    def test_entrywise_formula(self, rng):
        for _ in range(20):
            a = random_hermitian(rng, 4)
            assert np.array_equal(
                states.partial_trace_matrix(a, (2, 2), "A"), entrywise_partial_trace_b(a)
            )

    def test_entrywise_index_pattern(self):
        a = np.arange(16, dtype=complex).reshape(4, 4)
        # a_{k0m0} + a_{k1m1}: rows/cols 0,1 -> k=0; 2,3 -> k=1
        assert_allclose(states.partial_trace_matrix(a, (2, 2), "A"), [[0 + 5, 2 + 7], [8 + 13, 10 + 15]])

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (4, 2)])
    def test_keep_b_against_loops(self, rng, dims):
        a = random_hermitian(rng, dims[0] * dims[1])
        assert_allclose(states.partial_trace_matrix(a, dims, "B"), loop_partial_trace_a(a, *dims), atol=1e-13)

    def test_trace_and_positivity_preserved(self, rng):
        for dims in [(2, 2), (2, 3), (3, 2), (4, 2)]:
            for _ in range(30):
                rho = random_density(rng, dims[0] * dims[1], dims)
                for keep in "AB":
                    red = states.partial_trace(rho, keep)  # validates trace and PSD
                    assert np.trace(red.matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_local_observable_expectation(self, rng):
        for _ in range(100):
            rho = random_density(rng, 4, (2, 2))
            m = random_hermitian(rng, 2)
            lhs = np.trace(m @ states.partial_trace(rho, "A").matrix)
            rhs = np.trace(np.kron(m, I2) @ rho.matrix)
            assert abs(lhs - rhs) < 1e-9

    def test_missing_dims(self):
        with pytest.raises(MetadataError):
            states.partial_trace(DensityOperator(np.eye(4) / 4), "A")


class TestPartialTranspose:
    def test_product_transposes_b(self, rng):
        r1, r2 = random_density(rng, 2), random_density(rng, 2)
        pt = states.partial_transpose(states.product_density(r1, r2))
        assert_allclose(pt, np.kron(r1.matrix, r2.matrix.T), atol=1e-15)

    def test_diagonal_unchanged(self):
        rho = DensityOperator(np.diag([0.1, 0.2, 0.3, 0.4]), (2, 2))
        assert np.array_equal(states.partial_transpose(rho), rho.matrix)

    def test_phi_plus(self):
        rho = states.density_from_pure(PureState(PHI_PLUS), (2, 2))
        # 1/2 (|00><00| + |01><10| + |10><01| + |11><11|)
        expected = 0.5 * np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        pt = states.partial_transpose(rho)
        assert_allclose(pt, expected, atol=1e-15)
        assert np.linalg.eigvalsh(pt).min() == pytest.approx(-0.5)

    def test_index_rule(self, rng):
        d_a, d_b = 2, 3
        a = random_density_matrix(rng, 6)
        pt = states.partial_transpose_matrix(a, (d_a, d_b))
        for k in range(d_a):
            for m in range(d_a):
                for l in range(d_b):
                    for n in range(d_b):
                        assert pt[k * d_b + n, m * d_b + l] == a[k * d_b + l, m * d_b + n]

    def test_involution_and_invariants(self, rng):
        for dims in [(2, 2), (2, 3), (3, 2)]:
            rho = random_density(rng, dims[0] * dims[1], dims)
            pt = states.partial_transpose(rho)
            assert np.array_equal(states.partial_transpose_matrix(pt, dims), rho.matrix)
            assert_allclose(pt, pt.conj().T, atol=1e-15)
            assert np.trace(pt) == pytest.approx(1.0)

    def test_missing_dims(self):
        with pytest.raises(MetadataError):
            states.partial_transpose(DensityOperator(np.eye(4) / 4))


class TestProjector:
    def test_z_outcomes(self):
        z = MeasurementAxis((0, 0, 1))
        assert_allclose(states.projector_from_axis(z, 0).matrix, np.diag([1, 0]))
        assert_allclose(states.projector_from_axis(z, 1).matrix, np.diag([0, 1]))

    def test_x_plus(self):
        assert_allclose(states.projector_from_axis(MeasurementAxis((1, 0, 0)), 0).matrix, 0.5 * np.ones((2, 2)))

    @settings(max_examples=50)
    @given(angles, angles)
    def test_complete_and_idempotent(self, theta, phi):
        a = MeasurementAxis.from_polar(theta, phi)
        p0 = states.projector_from_axis(a, 0).matrix
        p1 = states.projector_from_axis(a, 1).matrix
        assert_allclose(p0 + p1, I2, atol=1e-12)
        assert_allclose(p0 @ p0, p0, atol=1e-9)
        assert np.linalg.matrix_rank(p0, tol=1e-9) == 1

    def test_bad_outcome(self):
        with pytest.raises(ValidationError):
            states.projector_from_axis(MeasurementAxis((0, 0, 1)), 2)


def test_sigma_z_not_a_state():
    with pytest.raises(ValidationError):
        DensityOperator(SIGMA_Z)
