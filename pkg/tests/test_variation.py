"""
Tests for Hamiltonian deformations and the first-variation oracle.
"""

import math

import numpy as np
import pytest

from business.verification.checks import run_checks
from business.verification.variation import (
    BumpFunction,
    area,
    first_variation,
    hamiltonian_deform,
    lagrangian_defect,
    seeded_bumps,
)
from infrastructure.errors import BadParameter, Unsupported
from infrastructure.geometry.immersion import Rectangle

STATIONARY = [
    ("c2-plane", {}),
    ("c2-cylinder", {"r": 1.0}),
    ("c2-torus", {"r1": 1.0, "r2": 2.0}),
]
CONTROL_BUMP = BumpFunction((0.5, 0.5), 0.4, 1.0)


class TestBumpFunction:
    def test_value_at_center(self):
        bump = BumpFunction((0.2, -0.1), 0.5, 2.0)
        assert float(bump(0.2, -0.1)) == pytest.approx(2.0 * math.exp(-1.0))

    def test_vanishes_outside_support(self):
        bump = BumpFunction((0.0, 0.0), 0.5)
        values = bump(np.array([0.5, 0.6, 3.0]), np.array([0.0, 0.0, 0.0]))
        assert np.all(np.asarray(values) == 0.0)

    def test_support_box(self):
        assert BumpFunction((1.0, 2.0), 0.25).support == Rectangle(0.75, 1.25, 1.75, 2.25)

    @pytest.mark.parametrize("radius", [0.0, -1.0])
    def test_rejects_nonpositive_radius(self, radius):
        with pytest.raises(BadParameter):
            BumpFunction((0.0, 0.0), radius)


class TestHamiltonianDeform:
    def test_rejects_curved_ambient(self, repository):
        with pytest.raises(Unsupported):
            hamiltonian_deform(repository.build("cp2-flat").immersion, BumpFunction((0.0, 0.0), 0.5), 0.1)

    def test_rejects_support_touching_the_edge(self, repository):
        plane = repository.build("c2-plane").immersion
        with pytest.raises(BadParameter):
            hamiltonian_deform(plane, BumpFunction((3.0, 0.0), 0.5), 0.1)

    def test_zero_step_is_identity(self, repository):
        plane = repository.build("c2-plane").immersion
        assert hamiltonian_deform(plane, BumpFunction((0.0, 0.0), 0.5), 0.0) is plane

    def test_deformed_plane_stays_lagrangian(self, repository):
        plane = repository.build("c2-plane").immersion
        deformed = hamiltonian_deform(plane, BumpFunction((0.3, -0.2), 0.8, 0.5), 0.1)
        assert lagrangian_defect(deformed) < 1e-12

    def test_deformation_moves_the_surface(self, repository):
        plane = repository.build("c2-plane").immersion
        deformed = hamiltonian_deform(plane, BumpFunction((0.0, 0.0), 1.0), 0.1)
        assert area(deformed, Rectangle(-1.0, 1.0, -1.0, 1.0)) > 4.0


class TestArea:
    def test_plane_region(self, repository):
        plane = repository.build("c2-plane").immersion
        assert area(plane, Rectangle(0.0, 1.0, 0.0, 2.0)) == pytest.approx(2.0, rel=1e-12)

    def test_cylinder_domain(self, repository):
        cylinder = repository.build("c2-cylinder").immersion
        assert area(cylinder) == pytest.approx(2.0 * math.pi * 2.0 * math.pi, rel=1e-12)

    def test_region_must_lie_in_domain(self, repository):
        plane = repository.build("c2-plane").immersion
        with pytest.raises(BadParameter):
            area(plane, Rectangle(0.0, 5.0, 0.0, 1.0))


class TestFirstVariation:
    @pytest.mark.parametrize("entry_id, params", STATIONARY)
    def test_stationary_entries(self, repository, entry_id, params):
        immersion = repository.build(entry_id, params).immersion
        for bump in seeded_bumps(immersion.domain, 5, 42):
            assert abs(first_variation(immersion, bump).value) < 1e-6

    def test_control_graph_is_not_stationary(self, repository):
        immersion = repository.build("control-graph").immersion
        result = first_variation(immersion, CONTROL_BUMP)
        assert abs(result.value) > 1e-3
        assert result.area_plus != result.area_minus

    def test_deformations_stay_lagrangian_to_second_order(self, repository):
        bump = BumpFunction((0.3, -0.2), 0.8, 1.0)
        plane = repository.build("c2-plane").immersion
        cylinder = repository.build("c2-cylinder", {"r": 1.0}).immersion
        assert first_variation(plane, bump).lagrangian_defect < 1e-12
        defect = first_variation(cylinder, bump, h=1e-3).lagrangian_defect
        assert 1e-10 < defect < 1e-3

    def test_control_value_is_stable_under_refinement(self, repository):
        immersion = repository.build("control-graph").immersion
        coarse = first_variation(immersion, CONTROL_BUMP, cells=(20, 20)).value
        fine = first_variation(immersion, CONTROL_BUMP, cells=(40, 40)).value
        assert abs(coarse - fine) <= 0.1 * abs(fine)

    @pytest.mark.parametrize("entry_id", ["c2-plane", "control-graph"])
    def test_verdict_agrees_with_pointwise_check(self, repository, entry_id):
        entry = repository.build(entry_id)
        stationary_check = run_checks(entry, grid=(21, 21)).get("hamiltonian_stationary").passed
        bump = BumpFunction((0.5, 0.5), 0.4)
        oracle = abs(first_variation(entry.immersion, bump).value) < 1e-6
        assert oracle == stationary_check

    @pytest.mark.parametrize("h", [1e-6, 0.1])
    def test_step_out_of_range(self, repository, h):
        plane = repository.build("c2-plane").immersion
        with pytest.raises(BadParameter):
            first_variation(plane, BumpFunction((0.0, 0.0), 0.5), h)

    def test_rejects_curved_ambient(self, repository):
        immersion = repository.build("ch2-family2").immersion
        with pytest.raises(Unsupported):
            first_variation(immersion, BumpFunction((0.0, 0.0), 0.1))


class TestSeededBumps:
    def test_reproducible(self):
        domain = Rectangle(-1.0, 1.0, -2.0, 2.0)
        assert seeded_bumps(domain, 4, 7) == seeded_bumps(domain, 4, 7)
        assert seeded_bumps(domain, 4, 7) != seeded_bumps(domain, 4, 8)

    def test_supports_strictly_inside(self):
        domain = Rectangle(-math.pi, math.pi, -math.pi, math.pi)
        bumps = seeded_bumps(domain, 20, 42)
        assert len(bumps) == 20
        assert all(domain.contains_rectangle(b.support, strict=True) for b in bumps)

    def test_rejects_empty_request(self):
        with pytest.raises(BadParameter):
            seeded_bumps(Rectangle(0.0, 1.0, 0.0, 1.0), 0, 1)
