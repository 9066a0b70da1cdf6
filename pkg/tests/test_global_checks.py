"""
Tests for the fundamental-domain integrals and the grid refinement study.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from business.verification.global_checks import (
    gauss_bonnet_flat,
    growth_ratio,
    maslov_periods,
    refinement_study,
)
from infrastructure.errors import BadParameter, Unsupported


class TestGaussBonnet:
    @pytest.mark.parametrize("params", [{"r1": 1.0, "r2": 2.0}, {"r1": 1.0, "r2": 3.0}])
    def test_flat_torus_integral_vanishes(self, repository, params):
        result = gauss_bonnet_flat(repository.build("c2-torus", params))
        assert abs(result.integral) < 1e-10
        assert abs(result.euler_characteristic) < 1e-10
        assert result.passed

    def test_cylinder_has_no_compact_domain(self, repository):
        with pytest.raises(Unsupported):
            gauss_bonnet_flat(repository.build("c2-cylinder"))

    def test_accepts_bare_immersion(self, repository):
        immersion = repository.build("c2-torus").immersion
        assert gauss_bonnet_flat(immersion, profile="strict").passed


class TestMaslovPeriods:
    def test_torus_periods_are_integers(self, repository):
        result = maslov_periods(repository.build("c2-torus"))
        assert result.passed
        assert tuple(abs(i) for i in result.indices) == (2, 2)
        assert result.integer_defect < 1e-10

    def test_plane_is_unsupported(self, repository):
        with pytest.raises(Unsupported):
            maslov_periods(repository.build("c2-plane"))


class TestRefinementStudy:
    def test_bochner_residual_converges_at_second_order(self, repository):
        study = refinement_study(repository.build("control-graph"), sizes=(33, 65, 129))
        assert study.sizes == (33, 65, 129)
        assert study.bochner_increments[1] < study.bochner_increments[0]
        assert 1.7 <= study.bochner_slope <= 2.3

    def test_jet_residual_does_not_depend_on_grid(self, repository):
        study = refinement_study(repository.build("c2-cylinder"), sizes=(17, 33))
        assert study.jet_spread < 1e-12
        assert study.bochner_slope is None

    @pytest.mark.parametrize("sizes", [(17,), (17, 30), (17, 33, 64)])
    def test_rejects_non_nested_sizes(self, repository, sizes):
        with pytest.raises(BadParameter):
            refinement_study(repository.build("c2-plane"), sizes=sizes)


class TestGrowthRatio:
    def test_formula(self):
        ratio = growth_ratio([1.0, 2.0], [3.0, 4.0], 3.0, [2.0, 3.0])
        assert_allclose(ratio, [3.0 / (4.0 * math.log(2.0)), 32.0 / (9.0 * math.log(3.0))])

    def test_returns_array(self):
        assert isinstance(growth_ratio([1.0], [1.0], 2.5, [math.e]), np.ndarray)

    @pytest.mark.parametrize(
        "f, vol, p, r",
        [
            ([1.0], [1.0], 2.0, [2.0]),
            ([1.0], [1.0], 3.0, [1.0]),
            ([1.0, 1.0], [1.0, 1.0], 3.0, [3.0, 2.0]),
            ([1.0, 1.0], [1.0], 3.0, [2.0, 3.0]),
        ],
    )
    def test_rejects_invalid_input(self, f, vol, p, r):
        with pytest.raises(BadParameter):
            growth_ratio(f, vol, p, r)
