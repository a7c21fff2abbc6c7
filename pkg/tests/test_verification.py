"""Moreau certificate, sector classification and face checks."""

import numpy as np
import pytest
from pydantic import ValidationError

from engine import (
    Certificate,
    DimensionMismatch,
    IndexSet,
    build_cone,
    classify_sector,
    compare_projections,
    exact_project,
    face_check,
    moreau_check,
)
from tests.conftest import random_instance


class TestMoreauCheck:
    def test_true_projection_passes(self, orthant2):
        cert = moreau_check(orthant2, [1.0, -2.0], [1.0, 0.0])
        assert cert.passed
        assert cert.orthogonality_residual == pytest.approx(0.0)

    def test_apex_fails_when_x_has_positive_part(self, orthant2):
        cert = moreau_check(orthant2, [1.0, -2.0], [0.0, 0.0])
        assert not cert.passed
        assert cert.polar_residual == pytest.approx(1.0)

    def test_point_outside_cone_fails(self, orthant2):
        cert = moreau_check(orthant2, [1.0, -2.0], [1.0, -2.0])
        assert not cert.passed
        assert cert.cone_residual == pytest.approx(2.0)

    def test_skew_cone_worked_example(self, skew_cone):
        assert moreau_check(skew_cone, [0.0, 1.0], [0.5, 0.5]).passed

    def test_non_orthogonal_candidate_fails(self, skew_cone):
        """(0,0) is in K and x - 0 = (0,1) is not in K°."""
        assert not moreau_check(skew_cone, [0.0, 1.0], [0.0, 0.0]).passed

    def test_wrong_length(self, orthant2):
        with pytest.raises(DimensionMismatch):
            moreau_check(orthant2, [1.0, 0.0], [1.0, 0.0, 0.0])

    def test_certificate_rejects_inconsistent_flag(self):
        with pytest.raises(ValidationError):
            Certificate(
                cone_residual=1.0,
                polar_residual=0.0,
                orthogonality_residual=0.0,
                tol=1e-7,
                orthogonality_tol=1e-7,
                passed=True,
            )


class TestClassifySector:
    def test_orthant(self, orthant2):
        assert classify_sector(orthant2, [1.0, -2.0]).to_one_based() == [1]
        assert classify_sector(orthant2, [-1.0, 2.0]).to_one_based() == [2]
        assert classify_sector(orthant2, [-1.0, -2.0]) == IndexSet.empty(2)
        assert classify_sector(orthant2, [1.0, 2.0]) == IndexSet.full(2)

    def test_sectors_cover_the_space(self, rng):
        """Random points land in every one of the 2^n sectors."""
        cone = build_cone(np.eye(3))
        seen = {classify_sector(cone, rng.standard_normal(3)).bits for _ in range(400)}
        assert seen == set(range(8))


class TestComparisons:
    def test_compare_projections(self):
        x = np.array([3.0, 4.0])
        assert compare_projections([1.0, 0.0], [1.0, 1e-9], x)
        assert not compare_projections([1.0, 0.0], [1.0, 1e-3], x)

    def test_face_check_worked_example(self, skew_cone):
        assert face_check(skew_cone, IndexSet.from_one_based(2, [2]), [0.5, 0.5])
        assert not face_check(skew_cone, IndexSet.from_one_based(2, [1]), [0.5, 0.5])

    def test_face_check_apex(self, orthant2):
        assert face_check(orthant2, IndexSet.empty(2), [0.0, 0.0])
        assert not face_check(orthant2, IndexSet.empty(2), [1.0, 0.0])

    def test_projection_lies_on_its_face(self, rng):
        for n in (2, 4, 6):
            cone, x = random_instance(rng, n)
            result = exact_project(cone, x)
            assert face_check(cone, result.sector, result.projection)

    def test_projection_is_nonexpansive(self, rng):
        for n in (2, 3, 5, 8):
            cone, x = random_instance(rng, n)
            y = rng.standard_normal(n)
            px = exact_project(cone, x).projection
            py = exact_project(cone, y).projection
            assert np.linalg.norm(px - py) <= np.linalg.norm(x - y) + 1e-9
