"""Scalar towers: exact rationals, biquadratic extensions and complex floats.

Exact values are plain ``fractions.Fraction`` or :class:`Biquad` elements of a
rank-4 algebra Q(sqrt(u), sqrt(w)).  Floating values are Python ``complex``.
All arithmetic-heavy code in the package is generic over these three kinds.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - slower but equivalent
    _Q = Fraction

# all rational scalar kinds accepted interchangeably in exact arithmetic
RATIONAL_TYPES = (int, Fraction, type(_Q(0)))

__all__ = [
    "Biquad",
    "BiquadContext",
    "ModeMismatchError",
    "NonInvertibleError",
    "Scalar",
    "as_fraction",
    "is_exact",
    "scalar_mode",
    "to_complex",
    "rational_from_string",
    "rational_to_string",
    "scalar_to_json",
]


class ModeMismatchError(TypeError):
    """Raised when scalars from incompatible arithmetic contexts are mixed."""


class NonInvertibleError(ZeroDivisionError):
    """Raised when a biquadratic element has vanishing norm form."""


class BiquadContext:
    """Arithmetic context for the algebra Q(sqrt(u), sqrt(w)).

    Elements are coordinate vectors over the basis {1, sqrt(u), sqrt(w),
    sqrt(u)*sqrt(w)}.  The radicands are fixed per context; elements of
    different contexts must never be combined.
    """

    __slots__ = ("u", "w", "_qu", "_qw")

    def __init__(self, u, w):
        self.u = Fraction(u)
        self.w = Fraction(w)
        self._qu = _Q(self.u)
        self._qw = _Q(self.w)

    def __eq__(self, other):
        return (
            isinstance(other, BiquadContext)
            and self.u == other.u
            and self.w == other.w
        )

    def __hash__(self):
        return hash(("BiquadContext", self.u, self.w))

    def __repr__(self):
        return f"BiquadContext(u={self.u}, w={self.w})"

    def element(self, c0=0, c1=0, c2=0, c3=0) -> "Biquad":
        return Biquad(self, c0, c1, c2, c3)

    def sqrt_u(self) -> "Biquad":
        return Biquad(self, 0, 1, 0, 0)

    def sqrt_w(self) -> "Biquad":
        return Biquad(self, 0, 0, 1, 0)

    def embed(self, q) -> "Biquad":
        """Embed a rational number as a context element."""
        return Biquad(self, q, 0, 0, 0)


class Biquad:
    """Element of Q(sqrt(u), sqrt(w)) in coordinates (c0, c1, c2, c3)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: BiquadContext, c0=0, c1=0, c2=0, c3=0):
        self.ctx = ctx
        self.c = (_Q(c0), _Q(c1), _Q(c2), _Q(c3))

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "Biquad":
        if isinstance(other, Biquad):
            if other.ctx != self.ctx:
                raise ModeMismatchError(
                    "cannot mix biquadratic contexts "
                    f"{self.ctx} and {other.ctx}"
                )
            return other
        if isinstance(other, RATIONAL_TYPES):
            return self.ctx.embed(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Biquad(self.ctx, *(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Biquad(self.ctx, *(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Biquad(self.ctx, *(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = o.c
        u, w = self.ctx._qu, self.ctx._qw
        # basis: 1, r=sqrt(u), s=sqrt(w), rs; r^2=u, s^2=w, (rs)^2=uw
        c0 = a0 * b0 + u * a1 * b1 + w * a2 * b2 + u * w * a3 * b3
        c1 = a0 * b1 + a1 * b0 + w * (a2 * b3 + a3 * b2)
        c2 = a0 * b2 + a2 * b0 + u * (a1 * b3 + a3 * b1)
        c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
        return Biquad(self.ctx, c0, c1, c2, c3)

    __rmul__ = __mul__

    def conj_u(self) -> "Biquad":
        """Conjugate sending sqrt(u) to -sqrt(u)."""
        c0, c1, c2, c3 = self.c
        return Biquad(self.ctx, c0, -c1, c2, -c3)

    def conj_w(self) -> "Biquad":
        """Conjugate sending sqrt(w) to -sqrt(w)."""
        c0, c1, c2, c3 = self.c
        return Biquad(self.ctx, c0, c1, -c2, -c3)

    def norm(self):
        """Product of the four Galois conjugates; rational."""
        y = self * self.conj_u()          # coefficients of sqrt(u) vanish
        z = y * y.conj_w()                # rational
        assert z.c[1] == 0 and z.c[2] == 0 and z.c[3] == 0
        return z.c[0]

    def inverse(self) -> "Biquad":
        n = self.norm()
        if n == 0:
            raise NonInvertibleError(f"norm form vanishes for {self!r}")
        y = self * self.conj_u()
        num = self.conj_u() * y.conj_w()
        return Biquad(self.ctx, *(c / n for c in num.c))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.embed(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates & conversion --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Biquad,) + RATIONAL_TYPES):
            o = self._coerce(other)
            return self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.c))

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return self.c[1] == 0 and self.c[2] == 0 and self.c[3] == 0

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element has irrational coordinates")
        return Fraction(self.c[0])

    def to_complex(self) -> complex:
        ru = cmath.sqrt(complex(self.ctx.u))
        rw = cmath.sqrt(complex(self.ctx.w))
        c0, c1, c2, c3 = (complex(x) for x in self.c)
        return c0 + c1 * ru + c2 * rw + c3 * ru * rw

    def __repr__(self):
        return f"Biquad({self.c[0]}, {self.c[1]}, {self.c[2]}, {self.c[3]})"


Scalar = Union[Fraction, int, Biquad, complex, float]


def scalar_mode(x) -> str:
    """One of 'exact-rational', 'biquadratic-extension', 'complex-float'."""
    if isinstance(x, RATIONAL_TYPES):
        return "exact-rational"
    if isinstance(x, Biquad):
        return "biquadratic-extension"
    if isinstance(x, (float, complex)):
        return "complex-float"
    raise ModeMismatchError(f"unsupported scalar type {type(x).__name__}")


def is_exact(x) -> bool:
    return scalar_mode(x) != "complex-float"


def to_complex(x) -> complex:
    if isinstance(x, Biquad):
        return x.to_complex()
    return complex(x)


def as_fraction(x) -> Fraction:
    if isinstance(x, Biquad):
        return x.rational_part()
    return Fraction(x)


def rational_from_string(s: str) -> Fraction:
    return Fraction(s)


def rational_to_string(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def scalar_to_json(x):
    """JSON payload: rationals as 'p/q' strings, complex as [re, im],
    biquadratic elements as 4-lists of rational strings."""
    mode = scalar_mode(x)
    if mode == "exact-rational":
        return rational_to_string(x)
    if mode == "biquadratic-extension":
        return [rational_to_string(c) for c in x.c]
    z = complex(x)
    return [z.real, z.imag]
