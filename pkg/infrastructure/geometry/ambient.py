"""
Ambient space forms and their lift spaces.
Infrastructure Layer - Geometry Package

Flat C^2 is used directly. CP^2(4) and CH^2(-4) are handled through horizontal
lifts into the unit sphere S^5 of C^3 and the quadric H^5_1 of C^3_1. The
Hermitian pairing is conjugate-free in the first slot and conjugated in the
second; Re herm is the real metric and omega(u, v) = Re herm(i u, v).
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from infrastructure.errors import BadLift, ContractViolation, DegenerateImmersion
from infrastructure.numerics import taylor_jet as tj

# relative to max(1, sum |z_k|^2), the scale of the rounding in herm(z, z)
BAD_LIFT_TOL = 1e-10
DEGENERACY_TOL = 1e-10

BLOCK_NAMES = ("radial", "vertical", "tangent", "normal")


class AmbientKind(str, Enum):
    FLAT_C2 = "FlatC2"
    PROJ_CP2 = "ProjCP2"
    HYP_CH2 = "HypCH2"


@dataclass(frozen=True)
class AmbientSpace:
    """
    One of the three complex space forms of complex dimension 2.

    Args:
        kind: Which space form
        c: Holomorphic sectional curvature divided by 4
        lift_dim: Number of complex coordinates of the lift space
        signature: Sign of each coordinate in the Hermitian pairing
    """

    kind: AmbientKind
    c: int
    lift_dim: int
    signature: Tuple[int, ...]

    def __post_init__(self):
        expected = _CANONICAL[self.kind]
        if (self.c, self.lift_dim, self.signature) != expected:
            raise ContractViolation(
                f"{self.kind.value} requires c={expected[0]}, lift_dim={expected[1]}, "
                f"signature={expected[2]}"
            )

    @classmethod
    def flat_c2(cls) -> "AmbientSpace":
        return cls(AmbientKind.FLAT_C2, *_CANONICAL[AmbientKind.FLAT_C2])

    @classmethod
    def proj_cp2(cls) -> "AmbientSpace":
        return cls(AmbientKind.PROJ_CP2, *_CANONICAL[AmbientKind.PROJ_CP2])

    @classmethod
    def hyp_ch2(cls) -> "AmbientSpace":
        return cls(AmbientKind.HYP_CH2, *_CANONICAL[AmbientKind.HYP_CH2])

    @classmethod
    def from_signature(cls, signature: Sequence[int]) -> "AmbientSpace":
        signature = tuple(int(s) for s in signature)
        for kind, (c, dim, sig) in _CANONICAL.items():
            if sig == signature:
                return cls(kind, c, dim, sig)
        raise ContractViolation(f"no ambient space with signature {signature}")

    @property
    def is_lifted(self) -> bool:
        return self.lift_dim == 3

    @property
    def lift_norm(self) -> Optional[int]:
        """Value of herm(z, z) on the lift space, None for flat C^2."""
        if self.kind is AmbientKind.PROJ_CP2:
            return 1
        if self.kind is AmbientKind.HYP_CH2:
            return -1
        return None


_CANONICAL: Dict[AmbientKind, Tuple[int, int, Tuple[int, ...]]] = {
    AmbientKind.FLAT_C2: (0, 2, (1, 1)),
    AmbientKind.PROJ_CP2: (1, 3, (1, 1, 1)),
    AmbientKind.HYP_CH2: (-1, 3, (-1, 1, 1)),
}


@dataclass(frozen=True, eq=False)
class HermitianVector:
    """
    Vector of lift coordinates with a signature tag.

    Components may be complex numbers, numpy arrays over a batch of samples or
    TaylorJets; arithmetic is componentwise and J is multiplication by i.
    """

    components: Tuple[Any, ...]
    signature: Tuple[int, ...]

    def __post_init__(self):
        if len(self.components) != len(self.signature):
            raise ContractViolation(
                f"{len(self.components)} components for signature {self.signature}"
            )

    @classmethod
    def of(cls, components: Iterable[Any], signature: Sequence[int] = None) -> "HermitianVector":
        components = tuple(components)
        if signature is None:
            signature = (1,) * len(components)
        return cls(components, tuple(signature))

    def _check(self, other: "HermitianVector") -> None:
        if self.signature != other.signature:
            raise ContractViolation(
                f"signature mismatch: {self.signature} vs {other.signature}"
            )

    def __add__(self, other: "HermitianVector") -> "HermitianVector":
        self._check(other)
        return HermitianVector(
            tuple(a + b for a, b in zip(self.components, other.components)), self.signature
        )

    def __sub__(self, other: "HermitianVector") -> "HermitianVector":
        self._check(other)
        return HermitianVector(
            tuple(a - b for a, b in zip(self.components, other.components)), self.signature
        )

    def __neg__(self) -> "HermitianVector":
        return HermitianVector(tuple(-a for a in self.components), self.signature)

    def scale(self, factor: Any) -> "HermitianVector":
        """Multiply by a complex scalar, array or jet."""
        return HermitianVector(tuple(a * factor for a in self.components), self.signature)

    def J(self) -> "HermitianVector":
        return self.scale(1j)

    def diff(self, axis: int) -> "HermitianVector":
        return HermitianVector(tuple(a.diff(axis) for a in self.components), self.signature)

    def value(self) -> "HermitianVector":
        return HermitianVector(tuple(tj.value_of(a) for a in self.components), self.signature)


def herm(u: HermitianVector, v: HermitianVector) -> Any:
    """
    Signed Hermitian pairing sum_k eps_k u_k conj(v_k).

    Raises:
        ContractViolation: if the signatures differ
    """
    u._check(v)
    total: Any = 0
    for eps, a, b in zip(u.signature, u.components, v.components):
        term = a * tj.conjugate(b)
        total = total + (term if eps > 0 else -term)
    return total


def metric_pairing(u: HermitianVector, v: HermitianVector) -> Any:
    """Real metric g(u, v) = Re herm(u, v)."""
    return tj.real_part(herm(u, v))


def symplectic_form(u: HermitianVector, v: HermitianVector) -> Any:
    """omega(u, v) = g(Ju, v) = Re herm(i u, v)."""
    return tj.real_part(herm(u.J(), v))


def lift_constraint_residual(z: HermitianVector, ambient: "AmbientSpace") -> np.ndarray:
    """
    |herm(z, z) - lift_norm| divided by max(1, sum_k |z_k|^2), per sample.

    Args:
        z: Lift values (jets are reduced to their base values)
        ambient: Lifted ambient space

    Returns:
        Relative constraint residual
    """
    z = z.value()
    size = sum(np.abs(tj.value_of(c)) ** 2 for c in z.components)
    residual = np.abs(tj.value_of(herm(z, z)) - ambient.lift_norm)
    return residual / np.maximum(1.0, size)


def _worst_index(values: np.ndarray) -> Tuple[int, ...]:
    if np.ndim(values) == 0:
        return ()
    return np.unravel_index(int(np.argmax(values)), np.shape(values))


def _location(points: Optional[Tuple[np.ndarray, np.ndarray]], index: Tuple[int, ...]):
    if points is None:
        return None
    xs, ys = np.broadcast_arrays(np.asarray(points[0], dtype=float), np.asarray(points[1], dtype=float))
    return float(xs[index]), float(ys[index])


@dataclass(frozen=True, eq=False)
class FrameDecomposition:
    """
    Orthogonal splitting of the lift space at a lift point z.

    Blocks: radial span{z}, vertical span{iz}, tangent span{d1 L, d2 L} and
    normal span{i d1 L, i d2 L}. Radial and vertical are empty in flat C^2.
    """

    ambient: AmbientSpace
    blocks: Dict[str, Tuple[HermitianVector, ...]]
    _inverse_grams: Dict[str, List[List[Any]]] = field(default_factory=dict, repr=False)

    def pairings(self, v: HermitianVector, block: str) -> List[Any]:
        """Re herm(v, b_k) for every vector b_k of a block."""
        return [metric_pairing(v, b) for b in self.blocks[block]]

    def gram(self, block: str) -> List[List[Any]]:
        vectors = self.blocks[block]
        return [[metric_pairing(a, b) for b in vectors] for a in vectors]

    def inverse_gram(self, block: str) -> List[List[Any]]:
        if block not in self._inverse_grams:
            gram = self.gram(block)
            if len(gram) == 0:
                inverse: List[List[Any]] = []
            elif len(gram) == 1:
                inverse = [[tj.reciprocal(gram[0][0])]]
            else:
                inv_det = tj.reciprocal(gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0])
                inverse = [
                    [gram[1][1] * inv_det, -gram[0][1] * inv_det],
                    [-gram[1][0] * inv_det, gram[0][0] * inv_det],
                ]
            self._inverse_grams[block] = inverse
        return self._inverse_grams[block]

    def coefficients(self, v: HermitianVector, block: str) -> List[Any]:
        """Coordinates of the projection of v onto a block, in the block's basis."""
        pairings = self.pairings(v, block)
        inverse = self.inverse_gram(block)
        coefficients = []
        for row in inverse:
            total: Any = 0
            for entry, pairing in zip(row, pairings):
                total = total + entry * pairing
            coefficients.append(total)
        return coefficients

    def project(self, v: HermitianVector, block: str) -> HermitianVector:
        vectors = self.blocks[block]
        if not vectors:
            return v.scale(0.0)
        result = None
        for coefficient, b in zip(self.coefficients(v, block), vectors):
            term = b.scale(coefficient)
            result = term if result is None else result + term
        return result

    def orthogonality_defect(self) -> float:
        """Largest |Re herm(a, b)| between base values of vectors in different blocks."""
        worst = 0.0
        for first, second in combinations(BLOCK_NAMES, 2):
            for a in self.blocks[first]:
                for b in self.blocks[second]:
                    pairing = np.abs(tj.value_of(metric_pairing(a.value(), b.value())))
                    worst = max(worst, float(np.max(pairing)))
        return worst


def lift_frame(
    z: HermitianVector,
    tangents: Sequence[HermitianVector],
    ambient: Optional[AmbientSpace] = None,
    points: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    lift_tol: float = BAD_LIFT_TOL,
) -> FrameDecomposition:
    """
    Split the lift space at z into radial, vertical, tangent and normal blocks.

    Args:
        z: Lift point (values or jets)
        tangents: The two coordinate partials of the lift
        ambient: Ambient space; inferred from the signature when omitted
        points: Parameter coordinates of the samples, used in error messages
        lift_tol: Relative lift residual above which the lift is rejected

    Returns:
        FrameDecomposition

    Raises:
        BadLift: herm(z, z) misses +1 (sphere) or -1 (quadric) by more than lift_tol,
            relative to max(1, sum |z_k|^2)
        DegenerateImmersion: tangent Gram determinant below 1e-10
    """
    ambient = ambient or AmbientSpace.from_signature(z.signature)
    if len(tangents) != 2:
        raise ContractViolation(f"expected two tangent vectors, got {len(tangents)}")

    if ambient.is_lifted:
        residual = lift_constraint_residual(z, ambient)
        if np.max(residual) > lift_tol:
            index = _worst_index(residual)
            raise BadLift(
                f"lift constraint residual {float(np.max(residual)):.3e} exceeds {lift_tol:g}",
                _location(points, index),
            )

    t1, t2 = (t.value() for t in tangents)
    g11 = np.real(tj.value_of(herm(t1, t1)))
    g12 = np.real(tj.value_of(herm(t1, t2)))
    g22 = np.real(tj.value_of(herm(t2, t2)))
    det = g11 * g22 - g12 * g12
    bad = (det < DEGENERACY_TOL) | (g11 <= 0.0)
    if np.any(bad):
        index = _worst_index(bad)
        raise DegenerateImmersion(
            f"tangent Gram determinant {float(np.min(det)):.3e} below {DEGENERACY_TOL:g}",
            _location(points, index),
        )

    blocks: Dict[str, Tuple[HermitianVector, ...]] = {
        "radial": (z,) if ambient.is_lifted else (),
        "vertical": (z.J(),) if ambient.is_lifted else (),
        "tangent": tuple(tangents),
        "normal": tuple(t.J() for t in tangents),
    }
    return FrameDecomposition(ambient=ambient, blocks=blocks)
