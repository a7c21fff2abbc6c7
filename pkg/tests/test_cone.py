"""
Cone construction, membership and mixed-basis solves.

These tests pin the polar matrix, the Gram systems and the membership
classification on small cones whose answers can be checked by hand.
"""

import numpy as np
import pytest

import engine.cone as cone_module
from engine import (
    DimensionMismatch,
    IndexSet,
    Membership,
    NonFinite,
    SingularGenerators,
    SolveFailure,
    all_subsets,
    build_cone,
    decompose,
    face_projection,
    membership,
    polar_cone,
    reconstruct,
    solve_alpha,
    solve_beta,
)
from tests.conftest import random_instance


class TestBuildCone:
    """Construction of the polar matrix and cached data."""

    def test_identity_polar_is_negative_identity(self):
        cone = build_cone(np.eye(3))
        np.testing.assert_allclose(cone.polar_generators, -np.eye(3))
        assert cone.subdual is True
        assert cone.dim == 3

    def test_skew_cone_polar(self, skew_cone):
        """E = [[1,1],[0,1]] gives u_1 = (-1,1), u_2 = (0,-1)."""
        np.testing.assert_allclose(skew_cone.polar_generators, [[-1.0, 0.0], [1.0, -1.0]])

    def test_polar_biorthogonality(self, rng):
        """e_i^T u_j = -delta_ij on random cones."""
        for n in (1, 2, 5, 10, 30):
            cone, _ = random_instance(rng, n)
            product = cone.generators.T @ cone.polar_generators
            np.testing.assert_allclose(product, -np.eye(n), atol=1e-8)

    def test_gram_matrices_symmetric(self, rng):
        cone, _ = random_instance(rng, 6)
        np.testing.assert_array_equal(cone.gram_E, cone.gram_E.T)
        np.testing.assert_array_equal(cone.gram_U, cone.gram_U.T)

    def test_rank_deficient_rejected(self):
        with pytest.raises(SingularGenerators):
            build_cone(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_zero_matrix_rejected(self):
        with pytest.raises(SingularGenerators):
            build_cone(np.zeros((2, 2)))

    def test_non_finite_rejected(self):
        with pytest.raises(NonFinite):
            build_cone(np.array([[1.0, np.nan], [0.0, 1.0]]))

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatch):
            build_cone(np.ones((2, 3)))

    def test_one_dimensional_cone(self):
        cone = build_cone(np.array([[2.0]]))
        np.testing.assert_allclose(cone.polar_generators, [[-0.5]])

    def test_arrays_are_read_only(self, skew_cone):
        with pytest.raises(ValueError):
            skew_cone.generators[0, 0] = 5.0

    def test_errors_share_base_class(self):
        """Every engine failure is also a ValueError."""
        with pytest.raises(ValueError):
            build_cone(np.zeros((2, 2)))


class TestSubdual:
    def test_orthant_is_subdual(self, orthant2):
        assert orthant2.subdual is True

    def test_acute_cone_is_subdual(self, skew_cone):
        assert skew_cone.subdual is True

    def test_obtuse_cone_is_not_subdual(self):
        cone = build_cone(np.array([[1.0, -1.0], [0.0, 1e-3]]))
        assert cone.subdual is False


class TestPolarCone:
    def test_orthant_polar_involution(self):
        cone = build_cone(np.eye(3))
        polar = polar_cone(cone)
        np.testing.assert_allclose(polar.generators, -np.eye(3))
        np.testing.assert_allclose(polar.polar_generators, np.eye(3))

    def test_double_polar_recovers_generators(self, rng):
        cone, _ = random_instance(rng, 5)
        twice = polar_cone(polar_cone(cone))
        np.testing.assert_allclose(twice.generators, cone.generators, atol=1e-8)


class TestMembership:
    """membership() classifies against K and K°."""

    def test_point_in_orthant(self, orthant2):
        assert membership(orthant2, [1.0, 2.0]) is Membership.IN_CONE

    def test_point_in_polar_orthant(self, orthant2):
        assert membership(orthant2, [-1.0, -2.0]) is Membership.IN_POLAR

    def test_point_outside(self, skew_cone):
        assert membership(skew_cone, [0.0, 1.0]) is Membership.OUTSIDE

    def test_apex(self, orthant2):
        assert membership(orthant2, [0.0, 0.0]) is Membership.ZERO

    def test_polar_generator_sum_in_polar(self, skew_cone):
        u_sum = skew_cone.polar_generators.sum(axis=1)
        assert membership(skew_cone, u_sum) is Membership.IN_POLAR

    def test_generator_sum_in_cone(self, rng):
        cone, _ = random_instance(rng, 4)
        assert membership(cone, cone.generators.sum(axis=1)) is Membership.IN_CONE

    def test_wrong_length(self, orthant2):
        with pytest.raises(DimensionMismatch):
            membership(orthant2, [1.0, 2.0, 3.0])

    def test_non_finite_point(self, orthant2):
        with pytest.raises(NonFinite):
            membership(orthant2, [np.inf, 0.0])


class TestCoefficientSolves:
    """solve_alpha / solve_beta / decompose."""

    def test_alpha_full_set(self, skew_cone):
        """x = (0,1) = -e_1 + e_2."""
        alpha = solve_alpha(skew_cone, IndexSet.full(2), [0.0, 1.0])
        np.testing.assert_allclose(alpha, [-1.0, 1.0])

    def test_alpha_single_generator(self, skew_cone):
        alpha = solve_alpha(skew_cone, IndexSet.from_one_based(2, [2]), [0.0, 1.0])
        np.testing.assert_allclose(alpha, [0.5])

    def test_alpha_of_generator_is_one(self, rng):
        cone, _ = random_instance(rng, 4)
        for i in range(4):
            alpha = solve_alpha(cone, IndexSet.from_members(4, [i]), cone.generator(i))
            np.testing.assert_allclose(alpha, [1.0], atol=1e-10)

    def test_beta_single_polar_generator(self, skew_cone):
        beta = solve_beta(skew_cone, IndexSet.from_one_based(2, [2]), [0.0, 1.0])
        np.testing.assert_allclose(beta, [0.5])

    def test_beta_of_polar_generator_is_unit(self, rng):
        cone, _ = random_instance(rng, 3)
        beta = solve_beta(cone, IndexSet.empty(3), cone.polar_generator(1))
        np.testing.assert_allclose(beta, [0.0, 1.0, 0.0], atol=1e-10)

    def test_beta_on_orthant(self, orthant2):
        beta = solve_beta(orthant2, IndexSet.empty(2), [-1.0, -2.0])
        np.testing.assert_allclose(beta, [1.0, 2.0])

    def test_empty_alpha_rejected(self, orthant2):
        with pytest.raises(ValueError):
            solve_alpha(orthant2, IndexSet.empty(2), [1.0, 1.0])

    def test_empty_beta_rejected(self, orthant2):
        with pytest.raises(ValueError):
            solve_beta(orthant2, IndexSet.full(2), [1.0, 1.0])

    def test_decompose_worked_example(self, skew_cone):
        coeffs = decompose(skew_cone, IndexSet.from_one_based(2, [2]), [0.0, 1.0])
        assert coeffs.alpha_map == pytest.approx({1: 0.5})
        assert coeffs.beta_map == pytest.approx({0: 0.5})

    def test_decompose_reconstructs_for_every_subset(self, rng):
        cone, x = random_instance(rng, 4)
        for bits in range(16):
            coeffs = decompose(cone, IndexSet(bits, 4), x)
            np.testing.assert_allclose(reconstruct(cone, coeffs), x, atol=1e-8)

    def test_decompose_dimension_mismatch(self, orthant2):
        with pytest.raises(DimensionMismatch):
            decompose(orthant2, IndexSet.full(3), [1.0, 1.0])

    def test_face_projection_clamps_tiny_negatives(self, orthant2):
        coeffs = decompose(orthant2, IndexSet.full(2), [1.0, -1e-14])
        p, q = face_projection(orthant2, coeffs)
        np.testing.assert_allclose(p, [1.0, 0.0])
        np.testing.assert_allclose(q, [0.0, 0.0])


class TestIllConditionedSolves:
    """Cones far from singular whose Gram matrices are still badly conditioned."""

    @pytest.fixture
    def narrow_cone(self):
        # rcond about 5e-7, Gram condition number about 4e12
        return build_cone(np.array([[1.0, 1.0], [0.0, 1e-6]]))

    def test_passes_the_singularity_gate(self, narrow_cone):
        assert 1e-12 < narrow_cone.rcond < 1e-5

    def test_every_subset_reconstructs(self, narrow_cone):
        x = np.array([0.3, 1.0])
        for index_set in all_subsets(2):
            coeffs = decompose(narrow_cone, index_set, x)
            error = np.linalg.norm(reconstruct(narrow_cone, coeffs) - x)
            assert error <= 1e-7 * (1.0 + np.linalg.norm(x))

    def test_refinement_recovers_coefficients(self, narrow_cone):
        x = narrow_cone.generators @ np.array([2.0, 3.0])
        coeffs = decompose(narrow_cone, IndexSet.full(2), x)
        np.testing.assert_allclose(coeffs.alpha, [2.0, 3.0], rtol=1e-6)

    def test_singular_gram_system_raises_solve_failure(self):
        solve = cone_module._gram_solver(np.array([[1.0, 1.0], [1.0, 1.0]]), "generator")
        with pytest.raises(SolveFailure):
            solve(np.array([1.0, 2.0]))
