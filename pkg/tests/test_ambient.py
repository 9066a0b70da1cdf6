"""
Tests for ambient spaces, Hermitian pairings and the lift frame.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infrastructure.errors import BadLift, ContractViolation, DegenerateImmersion
from infrastructure.geometry.ambient import (
    AmbientKind,
    AmbientSpace,
    HermitianVector,
    herm,
    lift_constraint_residual,
    lift_frame,
    metric_pairing,
    symplectic_form,
)

component = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
signatures = st.sampled_from([(1, 1), (1, 1, 1), (-1, 1, 1)])


@st.composite
def vector_pairs(draw):
    signature = draw(signatures)
    n = len(signature)
    u = HermitianVector(tuple(draw(st.lists(component, min_size=n, max_size=n))), signature)
    v = HermitianVector(tuple(draw(st.lists(component, min_size=n, max_size=n))), signature)
    return u, v


class TestAmbientSpace:
    @pytest.mark.parametrize(
        "space, c, lift_norm",
        [
            (AmbientSpace.flat_c2(), 0, None),
            (AmbientSpace.proj_cp2(), 1, 1),
            (AmbientSpace.hyp_ch2(), -1, -1),
        ],
    )
    def test_canonical_spaces(self, space, c, lift_norm):
        assert space.c == c
        assert space.lift_norm == lift_norm
        assert space.is_lifted == (lift_norm is not None)
        assert AmbientSpace.from_signature(space.signature) == space

    def test_inconsistent_space_rejected(self):
        with pytest.raises(ContractViolation):
            AmbientSpace(AmbientKind.PROJ_CP2, 1, 3, (-1, 1, 1))

    def test_unknown_signature(self):
        with pytest.raises(ContractViolation):
            AmbientSpace.from_signature((1, -1))


class TestPairings:
    @settings(max_examples=60, deadline=None)
    @given(vector_pairs())
    def test_hermitian_symmetry(self, pair):
        u, v = pair
        assert herm(u, v) == pytest.approx(np.conj(herm(v, u)), abs=1e-9)
        assert metric_pairing(u, v) == pytest.approx(metric_pairing(v, u), abs=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(vector_pairs())
    def test_symplectic_form_is_antisymmetric(self, pair):
        u, v = pair
        assert symplectic_form(u, v) == pytest.approx(-symplectic_form(v, u), abs=1e-9)
        assert symplectic_form(u, u) == pytest.approx(0.0, abs=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(vector_pairs())
    def test_J_is_an_isometry(self, pair):
        u, v = pair
        assert herm(u.J(), v.J()) == pytest.approx(herm(u, v), abs=1e-9)
        assert symplectic_form(u, v) == pytest.approx(metric_pairing(u.J(), v), abs=1e-9)

    def test_signature_mismatch(self):
        u = HermitianVector.of((1.0, 0.0))
        v = HermitianVector.of((1.0, 0.0, 0.0))
        with pytest.raises(ContractViolation):
            herm(u, v)

    def test_indefinite_pairing(self):
        z = HermitianVector((np.cosh(0.5), np.sinh(0.5), 0.0), (-1, 1, 1))
        assert herm(z, z) == pytest.approx(-1.0)

    def test_component_count_checked(self):
        with pytest.raises(ContractViolation):
            HermitianVector((1.0,), (1, 1))


class TestLiftFrame:
    def test_flat_frame(self):
        t1 = HermitianVector.of((1.0, 0.0))
        t2 = HermitianVector.of((0.0, 1.0))
        z = HermitianVector.of((0.0, 0.0))
        frame = lift_frame(z, (t1, t2), AmbientSpace.flat_c2())
        assert frame.blocks["radial"] == ()
        assert frame.orthogonality_defect() == 0.0
        w = HermitianVector.of((2.0j, 1.0 + 3.0j))
        normal = frame.project(w, "normal")
        assert normal.components == pytest.approx((2.0j, 3.0j))
        assert frame.coefficients(w, "tangent") == pytest.approx([0.0, 1.0])

    def test_sphere_frame(self):
        space = AmbientSpace.proj_cp2()
        z = HermitianVector((1.0, 0.0, 0.0), space.signature)
        t1 = HermitianVector((0.0, 1.0, 0.0), space.signature)
        t2 = HermitianVector((0.0, 0.0, 1.0), space.signature)
        frame = lift_frame(z, (t1, t2))
        assert frame.ambient == space
        assert frame.orthogonality_defect() == 0.0
        assert frame.project(z.J(), "vertical").components == pytest.approx((1j, 0.0, 0.0))

    def test_bad_lift_reports_location(self):
        space = AmbientSpace.proj_cp2()
        z = HermitianVector((np.array([1.0, 2.0]), 0.0, 0.0), space.signature)
        t1 = HermitianVector((0.0, 1.0, 0.0), space.signature)
        t2 = HermitianVector((0.0, 0.0, 1.0), space.signature)
        with pytest.raises(BadLift) as info:
            lift_frame(z, (t1, t2), space, points=(np.array([0.0, 0.5]), np.array([0.0, 0.25])))
        assert info.value.location == (0.5, 0.25)

    def test_lift_off_the_sphere_aborts(self):
        space = AmbientSpace.proj_cp2()
        z = HermitianVector((np.sqrt(0.9), 0.0, 0.0), space.signature)
        t1 = HermitianVector((0.0, 1.0, 0.0), space.signature)
        t2 = HermitianVector((0.0, 0.0, 1.0), space.signature)
        with pytest.raises(BadLift):
            lift_frame(z, (t1, t2), space)

    def test_lift_residual_is_relative_to_lift_size(self):
        space = AmbientSpace.proj_cp2()
        small = HermitianVector((0.5, 0.0, 0.0), space.signature)
        large = HermitianVector((1e3, 0.0, 0.0), space.signature)
        assert lift_constraint_residual(small, space) == pytest.approx(0.75)
        assert lift_constraint_residual(large, space) == pytest.approx(1.0 - 1e-6)

    def test_large_lift_on_the_quadric(self):
        space = AmbientSpace.hyp_ch2()
        z = HermitianVector((np.cosh(10.0), np.sinh(10.0), 0.0), space.signature)
        assert lift_constraint_residual(z, space) < 1e-14

    def test_degenerate_tangents(self):
        t = HermitianVector.of((1.0, 1.0))
        with pytest.raises(DegenerateImmersion):
            lift_frame(HermitianVector.of((0.0, 0.0)), (t, t), AmbientSpace.flat_c2())
