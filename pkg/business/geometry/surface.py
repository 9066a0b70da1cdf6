"""
Pointwise geometry of Lagrangian surfaces.
Business Layer - Geometry Package

Every quantity is computed from jets of the lift, so derivatives are exact up
to rounding. With an order-3 lift the metric is known to order 2, the second
fundamental form, mean curvature and Maslov form to order 1, and their first
derivatives to order 0.

Conventions:
    g_ij      = Re herm(d_i L, d_j L)
    N_k       = i d_k L                      (normal frame, Gram matrix g)
    h_ijk     = Re herm(d_i d_j L, N_k)      (second fundamental form in the J-frame)
    a^l_ij    = g^lm h_ijm                   (coordinates of A(d_i, d_j) in the N frame)
    H         = g^ij A(d_i, d_j)             (plain trace, no 1/n)
    alpha_j   = Re herm(i H, d_j L)          (alpha_H = g(JH, .)), mu = alpha / pi
    orientation dx ^ dy, d alpha = d_1 alpha_2 - d_2 alpha_1,
    delta alpha = -g^ij (d_i alpha_j - Gamma^k_ij alpha_k)
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from infrastructure.errors import DegenerateImmersion
from infrastructure.geometry.ambient import (
    DEGENERACY_TOL,
    FrameDecomposition,
    HermitianVector,
    herm,
    lift_constraint_residual,
    lift_frame,
    metric_pairing,
    symplectic_form,
)
from infrastructure.geometry.immersion import ImmersionMap, LiftJets, lift_jets
from infrastructure.numerics import taylor_jet as tj

logger = logging.getLogger(__name__)

INDICES = (0, 1)

# relative lift residual at which field assembly aborts; smaller ones go to the lift_constraint check
LIFT_ABORT_TOL = 1e-2


def _values(jets: Any) -> np.ndarray:
    """Real base values of a (nested list of) jets as a numpy array."""
    if isinstance(jets, (list, tuple)):
        return np.array([_values(j) for j in jets])
    return np.real(tj.value_of(jets))


def _partial(jet: Any, axis: int) -> np.ndarray:
    """Real value of the first partial of a jet along `axis`."""
    return np.real(jet.diff(axis).value)


# ---------------------------------------------------------------------------- metric


@dataclass(frozen=True, eq=False)
class Metric2:
    """
    Induced metric as jets: g[i][j], symmetric.

    Derived quantities (inverse, Christoffel symbols) are jets one order lower
    where derivatives are involved.
    """

    g: Tuple[Tuple[Any, Any], Tuple[Any, Any]]
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def g11(self) -> np.ndarray:
        return _values(self.g[0][0])

    @property
    def g12(self) -> np.ndarray:
        return _values(self.g[0][1])

    @property
    def g22(self) -> np.ndarray:
        return _values(self.g[1][1])

    @property
    def det(self) -> np.ndarray:
        return self.g11 * self.g22 - self.g12**2

    def det_jet(self) -> Any:
        return self.g[0][0] * self.g[1][1] - self.g[0][1] * self.g[0][1]

    def inverse(self) -> List[List[Any]]:
        """Inverse metric g^ij as jets."""
        if "inverse" not in self._cache:
            inv_det = tj.reciprocal(self.det_jet())
            g = self.g
            self._cache["inverse"] = [
                [g[1][1] * inv_det, -g[0][1] * inv_det],
                [-g[0][1] * inv_det, g[0][0] * inv_det],
            ]
        return self._cache["inverse"]

    def christoffel(self) -> List[List[List[Any]]]:
        """Gamma[k][i][j] = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), as jets."""
        if "christoffel" not in self._cache:
            inverse = self.inverse()
            dg = [[[self.g[i][j].diff(axis) for axis in INDICES] for j in INDICES] for i in INDICES]
            lowered = [
                [[0.5 * (dg[j][l][i] + dg[i][l][j] - dg[i][j][l]) for j in INDICES] for i in INDICES]
                for l in INDICES
            ]
            self._cache["christoffel"] = [
                [
                    [inverse[k][0] * lowered[0][i][j] + inverse[k][1] * lowered[1][i][j] for j in INDICES]
                    for i in INDICES
                ]
                for k in INDICES
            ]
        return self._cache["christoffel"]

    def christoffel_values(self) -> np.ndarray:
        """Gamma[k, i, j] as an array with trailing batch shape."""
        return _values(self.christoffel())

    def inverse_values(self) -> np.ndarray:
        return _values(self.inverse())

    def matrix_values(self) -> np.ndarray:
        return _values([list(row) for row in self.g])


def first_fundamental_form(jets: LiftJets) -> Metric2:
    """
    Pullback metric g_ij = Re herm(d_i L, d_j L).

    Raises:
        DegenerateImmersion: det g <= 1e-10 or g11 <= 0 at some sample
    """
    t = jets.tangents
    g = tuple(tuple(metric_pairing(t[i], t[j]) for j in INDICES) for i in INDICES)
    metric = Metric2(g)
    det = metric.det
    bad = (det <= DEGENERACY_TOL) | (metric.g11 <= 0.0)
    if np.any(bad):
        index = np.unravel_index(int(np.argmax(bad)), np.shape(bad)) if np.ndim(bad) else ()
        location = (float(jets.xs[index]), float(jets.ys[index]))
        raise DegenerateImmersion(f"induced metric degenerate (det {float(np.min(det)):.3e})", location)
    return metric


# ---------------------------------------------------------------------------- second fundamental form


@dataclass(frozen=True, eq=False)
class ShapeTensor:
    """
    Second fundamental form.

    Args:
        h: h[i][j][k] = g(A(d_i, d_j), J d_k) as jets
        a: a[l][i][j], coordinates of A(d_i, d_j) in the normal frame, as jets
    """

    h: List[List[List[Any]]]
    a: List[List[List[Any]]]

    def values(self) -> np.ndarray:
        """h[i, j, k] with trailing batch shape."""
        return _values(self.h)

    def coordinate_values(self) -> np.ndarray:
        return _values(self.a)

    def cubic_asymmetry(self) -> np.ndarray:
        """max over i, j, k of |h_ijk - h_ikj| per sample."""
        h = self.values()
        return np.max(np.abs(h - np.swapaxes(h, 1, 2)).reshape((8,) + h.shape[3:]), axis=0)


def second_fundamental_form(jets: LiftJets, frame: FrameDecomposition) -> ShapeTensor:
    """
    A(d_i, d_j) as the horizontal-normal projection of the flat second
    derivative d_i d_j L. In flat C^2 there is nothing to project off besides
    the tangent block.
    """
    h = [[frame.pairings(jets.hessian[i][j], "normal") for j in INDICES] for i in INDICES]
    coords = [[frame.coefficients(jets.hessian[i][j], "normal") for j in INDICES] for i in INDICES]
    a = [[[coords[i][j][l] for j in INDICES] for i in INDICES] for l in INDICES]
    return ShapeTensor(h=h, a=a)


# ---------------------------------------------------------------------------- mean curvature


@dataclass(frozen=True, eq=False)
class MeanCurvature:
    """
    Mean curvature vector.

    Args:
        coords: H^l, components in the normal frame N_l, as jets
        lift: H as a lift-space vector sum_l H^l N_l, as jets
        norm_sq: |H|^2 = g_kl H^k H^l
        norm_sq_trace: |H|^2 from the double contraction g^mn eta_m eta_n, eta_m = g^ij h_ijm
        norm_sq_ambient: |H|^2 = Re herm(H, H) in the lift space
    """

    coords: List[Any]
    lift: HermitianVector
    norm_sq: np.ndarray
    norm_sq_trace: np.ndarray
    norm_sq_ambient: np.ndarray

    @property
    def norm(self) -> np.ndarray:
        return np.sqrt(np.maximum(self.norm_sq, 0.0))

    def coord_values(self) -> np.ndarray:
        return _values(self.coords)


def mean_curvature(metric: Metric2, shape: ShapeTensor, frame: FrameDecomposition) -> MeanCurvature:
    """H = g^ij A(d_i, d_j) (trace without 1/n)."""
    inverse = metric.inverse()
    coords = []
    for l in INDICES:
        total: Any = 0
        for i in INDICES:
            for j in INDICES:
                total = total + inverse[i][j] * shape.a[l][i][j]
        coords.append(total)

    normals = frame.blocks["normal"]
    lift = normals[0].scale(coords[0]) + normals[1].scale(coords[1])

    g = metric.matrix_values()
    g_inv = metric.inverse_values()
    H = _values(coords)
    norm_sq = np.einsum("kl...,k...,l...->...", g, H, H)

    h = shape.values()
    eta = np.einsum("ij...,ijm...->m...", g_inv, h)
    norm_sq_trace = np.einsum("mn...,m...,n...->...", g_inv, eta, eta)

    norm_sq_ambient = np.real(tj.value_of(herm(lift.value(), lift.value())))
    return MeanCurvature(coords, lift, norm_sq, norm_sq_trace, norm_sq_ambient)


# ---------------------------------------------------------------------------- Maslov form


@dataclass(frozen=True, eq=False)
class MaslovForm:
    """alpha_H = g(JH, .) as jets, plus base values of alpha and mu = alpha / pi."""

    alpha: List[Any]

    def values(self) -> np.ndarray:
        return _values(self.alpha)

    def mu(self) -> np.ndarray:
        return self.values() / np.pi


def maslov_form(jets: LiftJets, mean: MeanCurvature) -> MaslovForm:
    """alpha_j = omega(H, d_j) = Re herm(i H, d_j L)."""
    return MaslovForm([symplectic_form(mean.lift, t) for t in jets.tangents])


# ---------------------------------------------------------------------------- curvature


def gaussian_curvature_intrinsic(metric: Metric2) -> np.ndarray:
    """
    Brioschi formula for K from E = g11, F = g12, G = g22 and their first and
    second partials. Needs metric jets of order >= 2.
    """
    E, F, G = metric.g[0][0], metric.g[0][1], metric.g[1][1]

    def d(jet: Any, nx: int, ny: int) -> np.ndarray:
        return np.real(jet.partial(nx, ny))

    e, f, g_ = d(E, 0, 0), d(F, 0, 0), d(G, 0, 0)
    e_u, e_v = d(E, 1, 0), d(E, 0, 1)
    f_u, f_v = d(F, 1, 0), d(F, 0, 1)
    g_u, g_v = d(G, 1, 0), d(G, 0, 1)
    e_vv, f_uv, g_uu = d(E, 0, 2), d(F, 1, 1), d(G, 2, 0)

    zeros = np.zeros_like(e)
    first = np.array(
        [
            [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
            [f_v - 0.5 * g_u, e, f],
            [0.5 * g_v, f, g_],
        ]
    )
    second = np.array(
        [
            [zeros, 0.5 * e_v, 0.5 * g_u],
            [0.5 * e_v, e, f],
            [0.5 * g_u, f, g_],
        ]
    )
    det_first = np.linalg.det(np.moveaxis(first, (0, 1), (-2, -1)))
    det_second = np.linalg.det(np.moveaxis(second, (0, 1), (-2, -1)))
    return (det_first - det_second) / (e * g_ - f * f) ** 2


def gaussian_curvature_gauss_equation(metric: Metric2, shape: ShapeTensor, c: float) -> np.ndarray:
    """K = c + (<A11, A22> - |A12|^2) / det g."""
    h = shape.values()
    a = shape.coordinate_values()
    # <A_ij, A_kl> = a^m_ij h_klm
    a11_a22 = np.einsum("m...,m...->...", a[:, 0, 0], h[1, 1])
    a12_a12 = np.einsum("m...,m...->...", a[:, 0, 1], h[0, 1])
    return c + (a11_a22 - a12_a12) / metric.det


# ---------------------------------------------------------------------------- normal derivatives


@dataclass(frozen=True, eq=False)
class NormalDerivatives:
    """
    Args:
        nabla_perp_H: [i, l], coordinates of nabla-perp_{d_i} H in the normal frame
        nabla_perp_H_norm: |nabla-perp H|
        nabla_JH_norm: |nabla JH| from the tangential projection of d_i(JH)
        nabla_A_norm: |nabla A|
        rho_N: normal scalar curvature |<R-perp(e1, e2) J e1, J e2>|
    """

    nabla_perp_H: np.ndarray
    nabla_perp_H_norm: np.ndarray
    nabla_JH_norm: np.ndarray
    nabla_A_norm: np.ndarray
    rho_N: np.ndarray


def _tensor_norm(components: np.ndarray, g: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    """Norm of a vector-valued 1-form T[i, l] (i covariant, l a frame index with Gram g)."""
    squared = np.einsum("ij...,lm...,il...,jm...->...", g_inv, g, components, components)
    return np.sqrt(np.maximum(squared, 0.0))


def normal_derivatives(
    jets: LiftJets,
    frame: FrameDecomposition,
    metric: Metric2,
    shape: ShapeTensor,
    mean: MeanCurvature,
) -> NormalDerivatives:
    """
    nabla-perp H, |nabla JH|, |nabla A| and rho_N from order-3 lift jets.

    nabla-perp_{d_i} V is the horizontal-normal projection of the flat
    derivative d_i V of the lifted normal field V.
    """
    g = metric.matrix_values()
    g_inv = metric.inverse_values()
    gamma = metric.christoffel_values()

    # nabla-perp H
    dH = [mean.lift.diff(i) for i in INDICES]
    nabla_perp_H = _values([frame.coefficients(dH[i], "normal") for i in INDICES])
    nabla_perp_H_norm = _tensor_norm(nabla_perp_H, g, g_inv)

    # nabla JH through the tangent block
    jh = mean.lift.J()
    nabla_JH = _values([frame.coefficients(jh.diff(i), "tangent") for i in INDICES])
    nabla_JH_norm = _tensor_norm(nabla_JH, g, g_inv)

    # (nabla_i A)(d_j, d_k) = nabla-perp_i A(d_j, d_k) - A(nabla_i d_j, d_k) - A(d_j, nabla_i d_k)
    normals = frame.blocks["normal"]
    a = shape.coordinate_values()
    perp_dA = np.empty((2, 2, 2, 2) + a.shape[3:])  # [i, j, k, l]
    for j in INDICES:
        for k in INDICES:
            field_jk = normals[0].scale(shape.a[0][j][k]) + normals[1].scale(shape.a[1][j][k])
            for i in INDICES:
                perp_dA[i, j, k] = _values(frame.coefficients(field_jk.diff(i), "normal"))
    nabla_A = (
        perp_dA
        - np.einsum("mij...,lmk...->ijkl...", gamma, a)
        - np.einsum("mik...,ljm...->ijkl...", gamma, a)
    )
    squared = np.einsum(
        "ab...,cd...,ef...,lm...,acel...,bdfm...->...", g_inv, g_inv, g_inv, g, nabla_A, nabla_A
    )
    nabla_A_norm = np.sqrt(np.maximum(squared, 0.0))

    rho_N = normal_scalar_curvature(frame, metric)
    return NormalDerivatives(nabla_perp_H, nabla_perp_H_norm, nabla_JH_norm, nabla_A_norm, rho_N)


def normal_scalar_curvature(frame: FrameDecomposition, metric: Metric2) -> np.ndarray:
    """
    rho_N = |<R-perp(e1, e2) J e1, J e2>| for an orthonormal tangent frame e1, e2.

    With connection coefficients nabla-perp_i N_k = w[i][k][l] N_l the curvature
    is R^l_k12 = d_1 w^l_2k - d_2 w^l_1k + w^l_1m w^m_2k - w^l_2m w^m_1k, and
    rho_N = |g_2l R^l_1,12| / det g (no factor 1/2).
    """
    normals = frame.blocks["normal"]
    # w[i][k] = [w^0_ik, w^1_ik] as jets
    w = [[frame.coefficients(normals[k].diff(i), "normal") for k in INDICES] for i in INDICES]
    w_val = _values(w)  # [i, k, l]
    dw = np.array(
        [[[[_partial(w[i][k][l], axis) for l in INDICES] for k in INDICES] for i in INDICES] for axis in INDICES]
    )  # [axis, i, k, l]

    R = np.empty((2, 2) + w_val.shape[3:])  # [k, l] for the (1, 2) plane
    for k in INDICES:
        for l in INDICES:
            R[k, l] = (
                dw[0, 1, k, l]
                - dw[1, 0, k, l]
                + sum(w_val[0, m, l] * w_val[1, k, m] for m in INDICES)
                - sum(w_val[1, m, l] * w_val[0, k, m] for m in INDICES)
            )
    g = metric.matrix_values()
    lowered = g[1, 0] * R[0, 0] + g[1, 1] * R[0, 1]
    return np.abs(lowered) / metric.det


# ---------------------------------------------------------------------------- field assembly


@dataclass(frozen=True)
class PointGeometry:
    """All pointwise quantities at one sample."""

    x: float
    y: float
    metric: np.ndarray
    shape: np.ndarray
    H_coords: np.ndarray
    abs_H: float
    alpha: np.ndarray
    mu: np.ndarray
    K: float
    K_gauss: float
    nablaPerpH: np.ndarray
    nablaPerpH_norm: float
    nablaJH_norm: float
    nablaA_norm: float
    rhoN: float
    deltaAlpha: float
    dAlpha: float


@dataclass(frozen=True, eq=False)
class SurfaceField:
    """
    Pointwise geometry over a batch of samples (usually a grid indexed [ix, iy]).

    hx, hy are the grid spacings, None for scattered samples.
    """

    name: str
    c: float
    xs: np.ndarray
    ys: np.ndarray
    hx: Optional[float]
    hy: Optional[float]
    g: np.ndarray
    christoffel: np.ndarray
    h: np.ndarray
    H_coords: np.ndarray
    abs_H_sq: np.ndarray
    abs_H_sq_trace: np.ndarray
    abs_H_sq_ambient: np.ndarray
    alpha: np.ndarray
    mu: np.ndarray
    delta_alpha: np.ndarray
    d_alpha: np.ndarray
    K_intrinsic: np.ndarray
    K_gauss: np.ndarray
    nabla_perp_H: np.ndarray
    nabla_perp_H_norm: np.ndarray
    nabla_JH_norm: np.ndarray
    nabla_A_norm: np.ndarray
    rho_N: np.ndarray
    lift_residual: np.ndarray
    horizontality: np.ndarray
    omega_pullback: np.ndarray
    cubic_asymmetry: np.ndarray

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.xs.shape

    @property
    def abs_H(self) -> np.ndarray:
        return np.sqrt(np.maximum(self.abs_H_sq, 0.0))

    @property
    def det_g(self) -> np.ndarray:
        return self.g[0, 0] * self.g[1, 1] - self.g[0, 1] ** 2

    def point(self, *index: int) -> PointGeometry:
        at = tuple(index)

        def pick(array: np.ndarray) -> np.ndarray:
            return array[(Ellipsis,) + at]

        return PointGeometry(
            x=float(self.xs[at]),
            y=float(self.ys[at]),
            metric=pick(self.g),
            shape=pick(self.h),
            H_coords=pick(self.H_coords),
            abs_H=float(self.abs_H[at]),
            alpha=pick(self.alpha),
            mu=pick(self.mu),
            K=float(self.K_intrinsic[at]),
            K_gauss=float(self.K_gauss[at]),
            nablaPerpH=pick(self.nabla_perp_H),
            nablaPerpH_norm=float(self.nabla_perp_H_norm[at]),
            nablaJH_norm=float(self.nabla_JH_norm[at]),
            nablaA_norm=float(self.nabla_A_norm[at]),
            rhoN=float(self.rho_N[at]),
            deltaAlpha=float(self.delta_alpha[at]),
            dAlpha=float(self.d_alpha[at]),
        )


def _pointwise_stationarity(metric: Metric2, maslov: MaslovForm) -> Tuple[np.ndarray, np.ndarray]:
    """delta alpha and the d alpha coefficient from the order-1 alpha jets."""
    alpha = maslov.values()
    d_alpha_ij = np.array([[_partial(maslov.alpha[j], i) for j in INDICES] for i in INDICES])  # [i, j]
    gamma = metric.christoffel_values()
    g_inv = metric.inverse_values()
    covariant = d_alpha_ij - np.einsum("kij...,k...->ij...", gamma, alpha)
    delta = -np.einsum("ij...,ij...->...", g_inv, covariant)
    curl = d_alpha_ij[0, 1] - d_alpha_ij[1, 0]
    return delta, curl


def compute_surface_field(
    map: ImmersionMap,
    xs: Sequence[float],
    ys: Sequence[float],
    grid: bool = True,
) -> SurfaceField:
    """
    Evaluate every pointwise quantity for a map.

    Args:
        map: Immersion
        xs, ys: With grid=True, 1-D node coordinates of each axis (sampled as a
            tensor grid indexed [ix, iy]); otherwise matching arrays of samples
        grid: Whether xs, ys describe a tensor grid

    Returns:
        SurfaceField
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    hx = hy = None
    if grid:
        hx = float(xs[1] - xs[0]) if xs.size > 1 else None
        hy = float(ys[1] - ys[0]) if ys.size > 1 else None
        xs, ys = np.meshgrid(xs, ys, indexing="ij")

    jets = lift_jets(map, xs, ys, order=3)
    frame = lift_frame(jets.lift, jets.tangents, map.ambient, points=jets.points, lift_tol=LIFT_ABORT_TOL)
    metric = first_fundamental_form(jets)
    shape = second_fundamental_form(jets, frame)
    mean = mean_curvature(metric, shape, frame)
    maslov = maslov_form(jets, mean)
    delta_alpha, d_alpha = _pointwise_stationarity(metric, maslov)
    K_intrinsic = gaussian_curvature_intrinsic(metric)
    K_gauss = gaussian_curvature_gauss_equation(metric, shape, map.ambient.c)
    normal = normal_derivatives(jets, frame, metric, shape, mean)

    lift_value = jets.lift.value()
    tangent_values = [t.value() for t in jets.tangents]
    if map.ambient.is_lifted:
        lift_residual = lift_constraint_residual(lift_value, map.ambient)
        horizontality = np.maximum(
            *(np.abs(tj.value_of(metric_pairing(t, lift_value.J()))) for t in tangent_values)
        )
    else:
        lift_residual = np.zeros(xs.shape)
        horizontality = np.zeros(xs.shape)
    omega_pullback = np.abs(tj.value_of(symplectic_form(tangent_values[0], tangent_values[1])))

    logger.debug("computed surface field for %s on %s samples", map.name, xs.shape)
    return SurfaceField(
        name=map.name,
        c=float(map.ambient.c),
        xs=xs,
        ys=ys,
        hx=hx,
        hy=hy,
        g=metric.matrix_values(),
        christoffel=metric.christoffel_values(),
        h=shape.values(),
        H_coords=mean.coord_values(),
        abs_H_sq=mean.norm_sq,
        abs_H_sq_trace=mean.norm_sq_trace,
        abs_H_sq_ambient=mean.norm_sq_ambient,
        alpha=maslov.values(),
        mu=maslov.mu(),
        delta_alpha=delta_alpha,
        d_alpha=d_alpha,
        K_intrinsic=K_intrinsic,
        K_gauss=K_gauss,
        nabla_perp_H=normal.nabla_perp_H,
        nabla_perp_H_norm=normal.nabla_perp_H_norm,
        nabla_JH_norm=normal.nabla_JH_norm,
        nabla_A_norm=normal.nabla_A_norm,
        rho_N=normal.rho_N,
        lift_residual=np.real(lift_residual),
        horizontality=np.real(horizontality),
        omega_pullback=np.real(omega_pullback),
        cubic_asymmetry=shape.cubic_asymmetry(),
    )


def compute_point_geometry(map: ImmersionMap, x: float, y: float) -> PointGeometry:
    """Pointwise geometry at a single parameter point."""
    field = compute_surface_field(map, np.array([x]), np.array([y]), grid=False)
    return field.point(0)
