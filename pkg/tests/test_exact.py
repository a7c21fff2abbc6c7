"""
Exact projection by sector enumeration.

The oracle is checked on hand-solved instances, against the Moreau
certificate on random cones, and for the structural properties of a metric
projection (idempotence, positive homogeneity, one sector per point).
"""

import numpy as np
import pytest

from engine import (
    DimensionGuard,
    IndexSet,
    NotSubdual,
    build_cone,
    candidate_pool,
    exact_project,
    exact_project_subdual,
    moreau_check,
    passing_sectors,
    project,
)
from tests.conftest import random_instance


class TestWorkedInstances:
    def test_orthant_clips_negative_coordinate(self, orthant2):
        result = exact_project(orthant2, [1.0, -2.0])
        np.testing.assert_allclose(result.projection, [1.0, 0.0])
        np.testing.assert_allclose(result.polar_projection, [0.0, -2.0])
        assert result.sector.to_one_based() == [1]

    def test_skew_cone(self, skew_cone):
        result = exact_project(skew_cone, [0.0, 1.0])
        np.testing.assert_allclose(result.projection, [0.5, 0.5])
        np.testing.assert_allclose(result.polar_projection, [-0.5, 0.5])
        assert result.sector.to_one_based() == [2]
        assert result.subsets_tried == 3

    def test_point_inside_cone(self, skew_cone):
        """x = 2 e_1 + 3 e_2 projects to itself."""
        x = 2 * skew_cone.generator(0) + 3 * skew_cone.generator(1)
        result = exact_project(skew_cone, x)
        np.testing.assert_allclose(result.projection, x)
        assert result.sector.to_one_based() == [1, 2]

    def test_point_in_polar(self, orthant2):
        result = exact_project(orthant2, [-1.0, -3.0])
        np.testing.assert_allclose(result.projection, [0.0, 0.0])
        assert result.sector == IndexSet.empty(2)
        assert result.subsets_tried == 1

    def test_one_dimensional(self):
        cone = build_cone(np.array([[3.0]]))
        np.testing.assert_allclose(exact_project(cone, [2.0]).projection, [2.0])
        np.testing.assert_allclose(exact_project(cone, [-2.0]).projection, [0.0])


class TestGuards:
    def test_default_guard(self):
        with pytest.raises(DimensionGuard, match="2\\^16"):
            exact_project(build_cone(np.eye(16)), np.ones(16))

    def test_hard_limit_cannot_be_overridden(self):
        with pytest.raises(DimensionGuard):
            exact_project(build_cone(np.eye(26)), np.ones(26), max_dim_guard=30)

    def test_subdual_requires_subdual_cone(self):
        cone = build_cone(np.array([[1.0, -1.0], [0.0, 1.0]]))
        with pytest.raises(NotSubdual):
            exact_project_subdual(cone, [1.0, 1.0])


class TestSubdualPruning:
    def test_pool_and_effort(self):
        cone = build_cone(np.eye(3))
        x = np.array([1.0, -1.0, 2.0])
        assert candidate_pool(cone, x, 1e-10).members == [0, 2]
        result = exact_project_subdual(cone, x)
        np.testing.assert_allclose(result.projection, [1.0, 0.0, 2.0])
        assert result.subsets_tried == 4

    def test_sheared_subdual_cone(self):
        cone = build_cone(np.array([[1.0, 0.5], [0.0, 1.0]]))
        x = np.array([-2.0, -0.1])
        assert cone.subdual
        assert candidate_pool(cone, x, 1e-10).members == []
        pruned = exact_project_subdual(cone, x)
        full = exact_project(cone, x)
        assert pruned.sector == full.sector == IndexSet.empty(2)
        np.testing.assert_allclose(pruned.projection, full.projection, atol=1e-10)
        np.testing.assert_allclose(pruned.projection, [0.0, 0.0])
        np.testing.assert_allclose(pruned.polar_projection, x)
        assert pruned.subsets_tried == 1

    def test_empty_pool(self, orthant2):
        result = exact_project_subdual(orthant2, [-1.0, -2.0])
        assert result.subsets_tried == 1
        np.testing.assert_allclose(result.projection, [0.0, 0.0])

    def test_pruned_matches_full_search(self, rng):
        """Nonnegative generator matrices are subdual."""
        for n in (2, 3, 5, 7):
            for _ in range(25):
                cone = build_cone(np.abs(rng.standard_normal((n, n))))
                assert cone.subdual
                x = rng.standard_normal(n)
                full = exact_project(cone, x)
                pruned = exact_project_subdual(cone, x)
                assert pruned.sector == full.sector
                np.testing.assert_allclose(pruned.projection, full.projection, atol=1e-9)
                assert pruned.subsets_tried <= full.subsets_tried

    def test_project_dispatches(self, rng):
        obtuse = build_cone(np.array([[1.0, -1.0], [0.0, 1.0]]))
        x = rng.standard_normal(2)
        np.testing.assert_allclose(project(obtuse, x).projection, exact_project(obtuse, x).projection)
        orthant = build_cone(np.eye(3))
        assert project(orthant, [1.0, -1.0, 2.0]).subsets_tried == 4


class TestProjectionProperties:
    """Random cones: certificate, uniqueness and the metric projection laws."""

    def test_certificate_on_random_cones(self, rng):
        for n in range(1, 7):
            for _ in range(40):
                cone, x = random_instance(rng, n)
                result = exact_project(cone, x)
                assert moreau_check(cone, x, result.projection).passed
                np.testing.assert_allclose(result.projection + result.polar_projection, x, atol=1e-8)

    def test_exactly_one_strict_sector(self, rng):
        for n in range(2, 6):
            for _ in range(30):
                cone, x = random_instance(rng, n)
                sectors = passing_sectors(cone, x, strict=True)
                assert len(sectors) == 1
                assert sectors[0] == exact_project(cone, x).sector

    def test_boundary_point_has_several_loose_sectors(self, orthant2):
        """(1, 0) sits on the wall between sectors {1} and {1,2}."""
        loose = passing_sectors(orthant2, [1.0, 0.0], strict=False)
        assert {s.bits for s in loose} == {0b01, 0b11}

    def test_idempotent(self, rng):
        for n in (2, 4, 6):
            cone, x = random_instance(rng, n)
            p = exact_project(cone, x).projection
            np.testing.assert_allclose(exact_project(cone, p).projection, p, atol=1e-8)

    @pytest.mark.parametrize("t", [0.0, 0.5, 2.0, 10.0])
    def test_positively_homogeneous(self, rng, t):
        cone, x = random_instance(rng, 5)
        p = exact_project(cone, x).projection
        np.testing.assert_allclose(exact_project(cone, t * x).projection, t * p, atol=1e-8)
