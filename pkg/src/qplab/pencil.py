"""The defining pencil of diagonal quadrics and its sign group.

Chart convention: the member at the affine parameter t is q_t = t*q1 - q2,
so its Gram matrix is diag(t - lambda_k) and the degenerate members sit
exactly at t = lambda_j, matching the branch points [lambda_j : -1] of the
associated hyperelliptic curve.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .polymatrix import Poly, PolyMatrix
from .scalars import rational_to_string

__all__ = [
    "PencilOfQuadrics",
    "HyperellipticData",
    "SignGroupElement",
    "PencilError",
    "new_pencil",
    "canonical_pencil",
]


class PencilError(ValueError):
    """Invalid pencil data: wrong length or repeated lambda (singular X)."""


@dataclass(frozen=True)
class HyperellipticData:
    """Branch data of the genus-g double cover of P^1."""

    genus: int
    branch_params: tuple  # the points [lambda_j : -1], stored as pairs
    weierstrass_labels: tuple


class PencilOfQuadrics:
    """q1 = sum x_j^2 and q2 = sum lambda_j x_j^2 with distinct rational lambda_j."""

    __slots__ = ("g", "lambdas")

    def __init__(self, lambdas):
        lambdas = tuple(Fraction(x) for x in lambdas)
        if len(lambdas) < 6 or len(lambdas) % 2 != 0:
            raise PencilError("need an even number (>= 6) of coefficients")
        if len(set(lambdas)) != len(lambdas):
            raise PencilError("repeated lambda: the intersection X is singular")
        self.lambdas = lambdas
        self.g = len(lambdas) // 2 - 1

    @property
    def dim_ambient(self) -> int:
        return 2 * self.g + 2

    def gram(self, t):
        """Gram matrix of q_t = t*q1 - q2 at an affine parameter t.

        With t=None, returns the symbolic PolyMatrix diag(t - lambda_k).
        """
        n = self.dim_ambient
        if t is None:
            return PolyMatrix(
                [
                    [
                        Poly([-self.lambdas[i], Fraction(1)]) if i == j else Poly([])
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
        zero = t - t
        return [
            [(t - self.lambdas[i]) if i == j else zero for j in range(n)]
            for i in range(n)
        ]

    def degenerate_parameters(self):
        """The 2g+2 parameters t = lambda_j of corank-1 members."""
        return list(self.lambdas)

    def degenerate_kernel(self, j):
        """Kernel line of the member at t = lambda_j: the j-th coordinate line."""
        n = self.dim_ambient
        return [Fraction(1) if k == j else Fraction(0) for k in range(n)]

    def hyperelliptic_data(self) -> HyperellipticData:
        return HyperellipticData(
            genus=self.g,
            branch_params=tuple((lam, Fraction(-1)) for lam in self.lambdas),
            weierstrass_labels=tuple(range(self.dim_ambient)),
        )

    def q1(self, x):
        s = x[0] * x[0]
        for c in x[1:]:
            s = s + c * c
        return s

    def q2(self, x):
        s = self.lambdas[0] * (x[0] * x[0])
        for lam, c in zip(self.lambdas[1:], x[1:]):
            s = s + lam * (c * c)
        return s

    def q1_row(self, v):
        """The covector q1(v, .) of the symmetric bilinear form of q1."""
        return list(v)

    def q2_row(self, v):
        return [lam * c for lam, c in zip(self.lambdas, v)]

    def fingerprint(self) -> str:
        payload = ",".join(rational_to_string(lam) for lam in self.lambdas)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def sign_group_elements(self):
        """All of Upsilon = (Z_2)^(2g+2) / {+-1}, canonical representatives."""
        n = self.dim_ambient
        seen = set()
        out = []
        for mask in range(2 ** n):
            bits = tuple((mask >> k) & 1 for k in range(n))
            e = SignGroupElement(bits)
            if e.bits not in seen:
                seen.add(e.bits)
                out.append(e)
        return out

    def to_json(self):
        return {"lambdas": [rational_to_string(lam) for lam in self.lambdas]}

    @classmethod
    def from_json(cls, payload):
        return cls(payload["lambdas"])

    def __eq__(self, other):
        return isinstance(other, PencilOfQuadrics) and self.lambdas == other.lambdas

    def __hash__(self):
        return hash(self.lambdas)

    def __repr__(self):
        return f"PencilOfQuadrics(g={self.g}, lambdas={list(self.lambdas)})"


def new_pencil(lambdas) -> PencilOfQuadrics:
    return PencilOfQuadrics(lambdas)


def canonical_pencil(g: int) -> PencilOfQuadrics:
    """The pencil with lambda = (0, 1, ..., 2g+1)."""
    return PencilOfQuadrics(range(2 * g + 2))


class SignGroupElement:
    """Coordinate sign flips modulo global negation.

    The canonical representative is the bit vector whose first set bit comes
    first among {bits, complement}; concretely the one with bit 0 set, and the
    all-ones vector for the identity.
    """

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = tuple(int(b) & 1 for b in bits)
        comp = tuple(1 - b for b in bits)
        self.bits = bits if _first_set(bits) <= _first_set(comp) else comp

    @property
    def parity(self) -> int:
        """Evenness of the partition; well defined because len(bits) is even."""
        return sum(self.bits) % 2

    def is_even(self) -> bool:
        return self.parity == 0

    def act(self, x):
        """Flip signs of the coordinates at set bits."""
        if len(x) != len(self.bits):
            raise ValueError(
                f"coordinate length {len(x)} != group arity {len(self.bits)}"
            )
        return [-c if b else c for c, b in zip(x, self.bits)]

    def compose(self, other: "SignGroupElement") -> "SignGroupElement":
        if len(self.bits) != len(other.bits):
            raise ValueError("sign group arity mismatch")
        return SignGroupElement(a ^ b for a, b in zip(self.bits, other.bits))

    def __eq__(self, other):
        return isinstance(other, SignGroupElement) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return f"SignGroupElement({''.join(map(str, self.bits))})"


def _first_set(bits):
    for k, b in enumerate(bits):
        if b:
            return k
    return len(bits)
