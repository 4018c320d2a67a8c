"""Dense univariate polynomials and polynomial matrices over exact scalars.

Degrees in this package stay tiny (at most ~2g+2), so everything is dense and
naive on purpose.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import is_exact

__all__ = ["Poly", "PolyMatrix"]


class Poly:
    """Polynomial in t, coeffs[k] multiplies t^k; trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, Poly) else Poly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, Poly) else Poly.constant(other)
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        if self.is_zero():
            return Fraction(0)
        s = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            s = s * t + c
        return s

    def __eq__(self, other):
        other = other if isinstance(other, Poly) else Poly.constant(other)
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Poly({self.coeffs})"


class PolyMatrix:
    """Matrix with Poly entries over an exact coefficient field."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [
            [e if isinstance(e, Poly) else Poly.constant(e) for e in row]
            for row in entries
        ]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged polynomial matrix")
            for p in row:
                if not all(is_exact(c) for c in p.coeffs):
                    raise ValueError("polynomial matrix entries must be exact")

    def apply_to_poly_vector(self, cols):
        """Product with a vector whose entries are Poly; returns list of Poly."""
        out = []
        for row in self.entries:
            s = Poly([])
            for p, q in zip(row, cols):
                s = s + p * q
            out.append(s)
        return out

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"
