"""
Truncated bivariate Taylor arithmetic.
Infrastructure Layer - Numerics Package

A TaylorJet holds the Taylor coefficients of a complex function of two real
variables (x, y) up to a total degree, for a whole batch of base points at
once. Coefficient c[i, j] multiplies x^i y^j, so mixed partials are symmetric
by construction and the partial derivative d^(i+j) / dx^i dy^j is i! j! c[i, j].
"""

from math import factorial
from typing import Any, Callable, List, Sequence, Tuple, Union

import numpy as np

from infrastructure.errors import ContractViolation

MAX_ORDER = 4

Number = Union[complex, float, int, np.ndarray]


def _lift(coefficients: np.ndarray, batch_shape: Tuple[int, ...]) -> np.ndarray:
    """Broadcast a coefficient array to a (possibly larger) batch shape."""
    own = coefficients.shape[2:]
    if own == tuple(batch_shape):
        return coefficients
    extra = len(batch_shape) - len(own)
    reshaped = coefficients.reshape(coefficients.shape[:2] + (1,) * extra + own)
    return np.broadcast_to(reshaped, coefficients.shape[:2] + tuple(batch_shape))


def _convolve(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """Truncated product of two coefficient arrays."""
    batch = np.broadcast_shapes(a.shape[2:], b.shape[2:])
    out = np.zeros((order + 1, order + 1) + batch, dtype=complex)
    for i in range(order + 1):
        for j in range(order + 1 - i):
            acc: Any = 0
            for p in range(i + 1):
                for q in range(j + 1):
                    acc = acc + a[p, q] * b[i - p, j - q]
            out[i, j] = acc
    return out


class TaylorJet:
    """
    Jet of a scalar complex function of (x, y), truncated at total degree `order`.

    Arithmetic between jets of different order truncates to the smaller order.
    numpy arrays and scalars act as constant jets.
    """

    __slots__ = ("order", "coefficients")

    # numpy must defer to our operators when an ndarray is on the left.
    __array_ufunc__ = None

    def __init__(self, coefficients: np.ndarray, order: int):
        if not 0 <= order <= MAX_ORDER:
            raise ContractViolation(f"jet order {order} outside 0..{MAX_ORDER}")
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.shape[:2] != (order + 1, order + 1):
            raise ContractViolation(
                f"coefficient block {coefficients.shape[:2]} does not match order {order}"
            )
        self.order = order
        self.coefficients = coefficients

    # ------------------------------------------------------------------ constructors

    @classmethod
    def constant(cls, value: Number, order: int) -> "TaylorJet":
        value = np.asarray(value, dtype=complex)
        coefficients = np.zeros((order + 1, order + 1) + value.shape, dtype=complex)
        coefficients[0, 0] = value
        return cls(coefficients, order)

    @classmethod
    def variable(cls, values: Number, axis: int, order: int) -> "TaylorJet":
        """
        Seed jet for the coordinate x (axis 0) or y (axis 1).

        Args:
            values: Base point coordinates, any batch shape
            axis: 0 for x, 1 for y
            order: Truncation degree

        Returns:
            Jet of the identity function along `axis`
        """
        if axis not in (0, 1):
            raise ContractViolation(f"axis must be 0 or 1, got {axis}")
        jet = cls.constant(np.asarray(values, dtype=float), order)
        if order >= 1:
            if axis == 0:
                jet.coefficients[1, 0] = 1.0
            else:
                jet.coefficients[0, 1] = 1.0
        return jet

    # ------------------------------------------------------------------ accessors

    @property
    def batch_shape(self) -> Tuple[int, ...]:
        return self.coefficients.shape[2:]

    @property
    def value(self) -> np.ndarray:
        return self.coefficients[0, 0]

    def partial(self, nx: int, ny: int) -> np.ndarray:
        """Partial derivative d^(nx+ny) f / dx^nx dy^ny at the base points."""
        if nx < 0 or ny < 0 or nx + ny > self.order:
            raise ContractViolation(f"partial ({nx}, {ny}) not available in an order-{self.order} jet")
        return factorial(nx) * factorial(ny) * self.coefficients[nx, ny]

    def diff(self, axis: int) -> "TaylorJet":
        """Jet of the partial derivative along `axis`; the order drops by one."""
        if self.order == 0:
            raise ContractViolation("cannot differentiate an order-0 jet")
        order = self.order - 1
        out = np.zeros((order + 1, order + 1) + self.batch_shape, dtype=complex)
        for i in range(order + 1):
            for j in range(order + 1 - i):
                if axis == 0:
                    out[i, j] = (i + 1) * self.coefficients[i + 1, j]
                else:
                    out[i, j] = (j + 1) * self.coefficients[i, j + 1]
        return TaylorJet(out, order)

    def truncate(self, order: int) -> "TaylorJet":
        if order > self.order:
            raise ContractViolation(f"cannot truncate order {self.order} up to {order}")
        return TaylorJet(self.coefficients[: order + 1, : order + 1].copy(), order)

    def padded(self, order: int) -> "TaylorJet":
        """
        Same coefficients in a higher-order jet, new slots zero.

        Exact only when the function is affine in (x, y), as for coordinate seeds.
        """
        if order < self.order:
            return self.truncate(order)
        out = np.zeros((order + 1, order + 1) + self.batch_shape, dtype=complex)
        out[: self.order + 1, : self.order + 1] = self.coefficients
        return TaylorJet(out, order)

    # ------------------------------------------------------------------ arithmetic

    def _scalar_op(self, other: Number, op: Callable[[np.ndarray, Any], np.ndarray]) -> "TaylorJet":
        other = np.asarray(other)
        batch = np.broadcast_shapes(self.batch_shape, other.shape)
        return TaylorJet(op(_lift(self.coefficients, batch), other), self.order)

    def __add__(self, other: Any) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            order = min(self.order, other.order)
            batch = np.broadcast_shapes(self.batch_shape, other.batch_shape)
            a = _lift(self.coefficients[: order + 1, : order + 1], batch)
            b = _lift(other.coefficients[: order + 1, : order + 1], batch)
            return TaylorJet(a + b, order)
        other = np.asarray(other)
        batch = np.broadcast_shapes(self.batch_shape, other.shape)
        out = np.array(_lift(self.coefficients, batch), dtype=complex)
        out[0, 0] = out[0, 0] + other
        return TaylorJet(out, self.order)

    __radd__ = __add__

    def __neg__(self) -> "TaylorJet":
        return TaylorJet(-self.coefficients, self.order)

    def __sub__(self, other: Any) -> "TaylorJet":
        return self + (-other)

    def __rsub__(self, other: Any) -> "TaylorJet":
        return (-self) + other

    def __mul__(self, other: Any) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            order = min(self.order, other.order)
            return TaylorJet(_convolve(self.coefficients, other.coefficients, order), order)
        return self._scalar_op(other, lambda c, s: c * s)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            return self * other.reciprocal()
        return self._scalar_op(other, lambda c, s: c / s)

    def __rtruediv__(self, other: Any) -> "TaylorJet":
        return self.reciprocal() * other

    def __pow__(self, exponent: int) -> "TaylorJet":
        if not isinstance(exponent, (int, np.integer)) or exponent < 0:
            raise ContractViolation("jets support non-negative integer powers only")
        result = TaylorJet.constant(np.ones(self.batch_shape), self.order)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def real(self) -> "TaylorJet":
        return TaylorJet(self.coefficients.real.astype(complex), self.order)

    def conjugate(self) -> "TaylorJet":
        # Valid because the seeds x, y are real.
        return TaylorJet(self.coefficients.conj(), self.order)

    # ------------------------------------------------------------------ elementary functions

    def compose(self, derivatives: Sequence[np.ndarray]) -> "TaylorJet":
        """
        Jet of f(self) given f and its derivatives at the base value.

        Args:
            derivatives: f(u0), f'(u0), ..., at least order + 1 entries

        Returns:
            Jet of the composition
        """
        base = self.value
        delta = TaylorJet(self.coefficients.copy(), self.order)
        delta.coefficients[0, 0] = 0.0
        result = TaylorJet.constant(np.asarray(derivatives[0]) * np.ones_like(base), self.order)
        power = TaylorJet.constant(np.ones_like(base), self.order)
        for k in range(1, self.order + 1):
            power = power * delta
            result = result + power * (np.asarray(derivatives[k]) / factorial(k))
        return result

    def exp(self) -> "TaylorJet":
        e = np.exp(self.value)
        return self.compose([e] * (self.order + 1))

    def sin(self) -> "TaylorJet":
        s, c = np.sin(self.value), np.cos(self.value)
        cycle = [s, c, -s, -c]
        return self.compose([cycle[k % 4] for k in range(self.order + 1)])

    def cos(self) -> "TaylorJet":
        s, c = np.sin(self.value), np.cos(self.value)
        cycle = [c, -s, -c, s]
        return self.compose([cycle[k % 4] for k in range(self.order + 1)])

    def sinh(self) -> "TaylorJet":
        s, c = np.sinh(self.value), np.cosh(self.value)
        return self.compose([s if k % 2 == 0 else c for k in range(self.order + 1)])

    def cosh(self) -> "TaylorJet":
        s, c = np.sinh(self.value), np.cosh(self.value)
        return self.compose([c if k % 2 == 0 else s for k in range(self.order + 1)])

    def sqrt(self) -> "TaylorJet":
        base = self.value
        if np.any(np.abs(base.imag) > 1e-12 * np.maximum(1.0, np.abs(base.real))) or np.any(
            base.real <= 0.0
        ):
            raise ContractViolation("sqrt of a jet requires positive real base values")
        u = base.real
        derivatives: List[np.ndarray] = []
        coefficient = 1.0
        for k in range(self.order + 1):
            derivatives.append(coefficient * u ** (0.5 - k))
            coefficient *= 0.5 - k
        return self.compose(derivatives)

    def reciprocal(self) -> "TaylorJet":
        base = self.value
        if np.any(base == 0):
            raise ContractViolation("reciprocal of a jet with zero base value")
        derivatives = [
            (-1) ** k * factorial(k) * base ** (-(k + 1)) for k in range(self.order + 1)
        ]
        return self.compose(derivatives)

    def __repr__(self) -> str:
        return f"TaylorJet(order={self.order}, batch_shape={self.batch_shape})"


# ---------------------------------------------------------------------- dispatch helpers
#
# Catalog formulas are written once against these helpers and evaluate on plain
# floats, numpy arrays and jets alike.


def _dispatch(name: str, fallback: Callable[[Any], Any]) -> Callable[[Any], Any]:
    def apply(u: Any) -> Any:
        if isinstance(u, TaylorJet):
            return getattr(u, name)()
        return fallback(u)

    apply.__name__ = name
    return apply


exp = _dispatch("exp", np.exp)
sin = _dispatch("sin", np.sin)
cos = _dispatch("cos", np.cos)
sinh = _dispatch("sinh", np.sinh)
cosh = _dispatch("cosh", np.cosh)
sqrt = _dispatch("sqrt", np.sqrt)
reciprocal = _dispatch("reciprocal", lambda u: 1.0 / u)


def real_part(u: Any) -> Any:
    return u.real() if isinstance(u, TaylorJet) else np.real(u)


def conjugate(u: Any) -> Any:
    return u.conjugate() if isinstance(u, TaylorJet) else np.conjugate(u)


def value_of(u: Any) -> np.ndarray:
    """Base value of a jet, or the array itself."""
    return u.value if isinstance(u, TaylorJet) else np.asarray(u)


def where(mask: np.ndarray, a: Any, b: Any) -> Any:
    """Batchwise select between two jets (or arrays) by a boolean mask."""
    if not isinstance(a, TaylorJet) and not isinstance(b, TaylorJet):
        return np.where(mask, a, b)
    order = min(u.order for u in (a, b) if isinstance(u, TaylorJet))
    mask = np.asarray(mask)
    jets = []
    for u in (a, b):
        if not isinstance(u, TaylorJet):
            u = TaylorJet.constant(np.asarray(u), order)
        jets.append(u.truncate(order) if u.order > order else u)
    batch = np.broadcast_shapes(mask.shape, jets[0].batch_shape, jets[1].batch_shape)
    ca = _lift(jets[0].coefficients, batch)
    cb = _lift(jets[1].coefficients, batch)
    return TaylorJet(np.where(mask, ca, cb), order)
