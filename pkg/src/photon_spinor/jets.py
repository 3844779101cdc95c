"""Second-order forward-mode Taylor jets in the variables ``(t, x1, x2, x3)``.

A :class:`Jet` carries a value together with its exact first and second
partial derivatives with respect to the four spacetime coordinates.  It is
used wherever an identity has to be checked with analytic derivatives:
the medium operator identities, the curved-space Dirac operator and the
profile expressions read from JSON files.

Storage is derivative-axis first: ``c1[i]`` is ``d/dx^i`` and ``c2[i, j]``
is ``d^2/dx^i dx^j`` of the value array ``c0``, whose shape is arbitrary.
Taking a derivative with :meth:`Jet.d` lowers the available order by one,
so second-order operators applied to an order-2 jet yield exact order-0
values.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["Jet", "NVARS", "variables", "as_jet"]

NVARS = 4


def _lift(arr: np.ndarray, lead: int, shape: tuple[int, ...]) -> np.ndarray:
    """Broadcast an array whose first ``lead`` axes are derivative axes."""
    head = arr.shape[:lead]
    tail = arr.shape[lead:]
    pad = (1,) * (len(shape) - len(tail))
    return np.broadcast_to(arr.reshape(head + pad + tail), head + shape)


class Jet:
    """Truncated Taylor expansion of order 0, 1 or 2.

    Parameters
    ----------
    c0 : array_like
        Values.
    c1 : array_like or None
        First derivatives, shape ``(4,) + c0.shape``.
    c2 : array_like or None
        Second derivatives, shape ``(4, 4) + c0.shape``; requires ``c1``.
    """

    __array_priority__ = 100.0
    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1=None, c2=None):
        self.c0 = np.asarray(c0)
        self.c1 = None if c1 is None else np.asarray(c1)
        self.c2 = None if c2 is None or c1 is None else np.asarray(c2)

    # -- construction ---------------------------------------------------
    @classmethod
    def constant(cls, value, order: int = 2) -> "Jet":
        value = np.asarray(value)
        c1 = np.zeros((NVARS,) + value.shape, dtype=value.dtype) if order >= 1 else None
        c2 = np.zeros((NVARS, NVARS) + value.shape, dtype=value.dtype) if order >= 2 else None
        return cls(value, c1, c2)

    @property
    def order(self) -> int:
        if self.c1 is None:
            return 0
        return 1 if self.c2 is None else 2

    @property
    def shape(self) -> tuple[int, ...]:
        return self.c0.shape

    def truncate(self, order: int) -> "Jet":
        order = min(order, self.order)
        return Jet(self.c0, self.c1 if order >= 1 else None, self.c2 if order >= 2 else None)

    def broadcast(self, shape: tuple[int, ...]) -> "Jet":
        c0 = np.broadcast_to(self.c0, shape)
        c1 = None if self.c1 is None else _lift(self.c1, 1, shape)
        c2 = None if self.c2 is None else _lift(self.c2, 2, shape)
        return Jet(c0, c1, c2)

    # -- calculus ---------------------------------------------------------
    def d(self, axis: int) -> "Jet":
        """Partial derivative along coordinate ``axis`` (0 is time)."""
        if self.c1 is None:
            raise ValueError("derivative of an order-0 jet is not available")
        c1 = None if self.c2 is None else self.c2[axis]
        return Jet(self.c1[axis], c1)

    def grad(self) -> list["Jet"]:
        """Spatial derivatives ``[d1, d2, d3]``."""
        return [self.d(i) for i in (1, 2, 3)]

    def _chain(self, f0, f1, f2) -> "Jet":
        """Apply a scalar function given its value and first two derivatives."""
        c1 = None if self.c1 is None else f1 * self.c1
        c2 = None
        if self.c2 is not None:
            c2 = f1 * self.c2 + f2 * (self.c1[:, None] * self.c1[None, :])
        return Jet(f0, c1, c2)

    def exp(self) -> "Jet":
        v = np.exp(self.c0)
        return self._chain(v, v, v)

    def log(self) -> "Jet":
        return self._chain(np.log(self.c0), 1.0 / self.c0, -1.0 / self.c0**2)

    def sin(self) -> "Jet":
        s, c = np.sin(self.c0), np.cos(self.c0)
        return self._chain(s, c, -s)

    def cos(self) -> "Jet":
        s, c = np.sin(self.c0), np.cos(self.c0)
        return self._chain(c, -s, -c)

    def sqrt(self) -> "Jet":
        r = np.sqrt(self.c0)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.c0))

    def __pow__(self, p) -> "Jet":
        if isinstance(p, Jet):
            return (p * self.log()).exp()
        p = complex(p) if np.iscomplexobj(p) else float(p)
        if p == 2:
            return self * self
        v = self.c0
        return self._chain(v**p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    def __rpow__(self, base) -> "Jet":
        return (self * np.log(base)).exp()

    # -- arithmetic -------------------------------------------------------
    def _pair(self, other) -> tuple["Jet", "Jet"]:
        if not isinstance(other, Jet):
            other = Jet(np.asarray(other))
            other = Jet.constant(other.c0, self.order)
        order = min(self.order, other.order)
        shape = np.broadcast_shapes(self.shape, other.shape)
        return self.truncate(order).broadcast(shape), other.truncate(order).broadcast(shape)

    def __add__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(
            a.c0 + b.c0,
            None if a.c1 is None else a.c1 + b.c1,
            None if a.c2 is None else a.c2 + b.c2,
        )

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(-self.c0, None if self.c1 is None else -self.c1, None if self.c2 is None else -self.c2)

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            other = np.asarray(other)
            return Jet(
                self.c0 * other,
                None if self.c1 is None else self.c1 * other,
                None if self.c2 is None else self.c2 * other,
            )
        a, b = self._pair(other)
        c1 = c2 = None
        if a.c1 is not None:
            c1 = a.c1 * b.c0 + a.c0 * b.c1
        if a.c2 is not None:
            cross = a.c1[:, None] * b.c1[None, :]
            c2 = a.c2 * b.c0 + cross + np.swapaxes(cross, 0, 1) + a.c0 * b.c2
        return Jet(a.c0 * b.c0, c1, c2)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        v = self.c0
        return self._chain(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    # -- linear maps on the trailing axis ----------------------------------
    def apply(self, matrix) -> "Jet":
        """Left-multiply the trailing vector axis by a constant matrix."""
        mt = np.asarray(matrix).T
        return Jet(
            self.c0 @ mt,
            None if self.c1 is None else self.c1 @ mt,
            None if self.c2 is None else self.c2 @ mt,
        )

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "Jet":
        """Apply a linear map acting on value arrays coefficientwise."""
        return Jet(
            fn(self.c0),
            None if self.c1 is None else fn(self.c1),
            None if self.c2 is None else fn(self.c2),
        )

    def __getitem__(self, idx) -> "Jet":
        """Index the value axes (derivative axes are kept)."""
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(
            self.c0[idx],
            None if self.c1 is None else self.c1[(slice(None),) + idx],
            None if self.c2 is None else self.c2[(slice(None), slice(None)) + idx],
        )

    def expand(self, axis: int = -1) -> "Jet":
        """Insert a trailing length-1 value axis (for scalar-times-vector)."""
        return self.map(lambda a: np.expand_dims(a, axis))

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, shape={self.shape})"


def variables(point, order: int = 2) -> list[Jet]:
    """Seed jets for ``(t, x1, x2, x3)`` at one or many points.

    Parameters
    ----------
    point : array_like, shape (4,) or (npts, 4)
        Coordinates; the last axis is the variable index.
    order : int
        Derivative order to carry.
    """
    pts = np.asarray(point, dtype=float)
    out = []
    for i in range(NVARS):
        c0 = pts[..., i]
        c1 = np.zeros((NVARS,) + c0.shape)
        c1[i] = 1.0
        c2 = np.zeros((NVARS, NVARS) + c0.shape) if order >= 2 else None
        out.append(Jet(c0, c1 if order >= 1 else None, c2))
    return out


def as_jet(value, order: int = 2) -> Jet:
    """Wrap a plain number/array as a constant jet."""
    return value if isinstance(value, Jet) else Jet.constant(np.asarray(value), order)
