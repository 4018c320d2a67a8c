"""Pencil validation, degenerate members, sign groups, serialization."""

from fractions import Fraction

import pytest

from qplab import (
    PencilError,
    PencilOfQuadrics,
    SignGroupElement,
    canonical_pencil,
    new_pencil,
)


def test_validation():
    with pytest.raises(PencilError):
        PencilOfQuadrics([0, 1, 2, 3])  # too short
    with pytest.raises(PencilError):
        PencilOfQuadrics([0, 1, 2, 3, 4])  # odd
    with pytest.raises(PencilError):
        PencilOfQuadrics([0, 1, 2, 3, 4, 4])  # repeated: singular X


def test_near_duplicate_rationals_are_distinct():
    lams = [Fraction(1), Fraction(1) + Fraction(1, 10**15), 2, 3, 4, 5]
    p = PencilOfQuadrics(lams)
    assert p.g == 2


def test_canonical_pencil_and_genus():
    for g in (2, 3, 4):
        p = canonical_pencil(g)
        assert p.g == g
        assert p.lambdas == tuple(Fraction(k) for k in range(2 * g + 2))
        assert p.dim_ambient == 2 * g + 2


def test_gram_and_degenerate_members():
    p = canonical_pencil(2)
    for j, t in enumerate(p.degenerate_parameters()):
        gram = p.gram(t)
        assert gram[j][j] == 0
        k = p.degenerate_kernel(j)
        assert all(sum(gram[i][l] * k[l] for l in range(6)) == 0 for i in range(6))
    sym = p.gram(None)
    assert sym.entries[0][0].degree == 1


def test_quadric_evaluation():
    p = canonical_pencil(2)
    x = [Fraction(1)] * 6
    assert p.q1(x) == 6
    assert p.q2(x) == sum(range(6))
    assert p.q1_row(x) == x
    assert p.q2_row(x) == [Fraction(k) for k in range(6)]


def test_fingerprint_distinguishes_pencils():
    assert canonical_pencil(2).fingerprint() != canonical_pencil(3).fingerprint()
    assert canonical_pencil(2).fingerprint() == PencilOfQuadrics(range(6)).fingerprint()


def test_json_roundtrip():
    p = PencilOfQuadrics([Fraction(1, 3), 1, 2, 3, 4, 5])
    q = PencilOfQuadrics.from_json(p.to_json())
    assert q == p


def test_sign_group_order_and_parity():
    p = canonical_pencil(2)
    elems = p.sign_group_elements()
    assert len(elems) == 2 ** 5  # (Z_2)^6 modulo global sign
    even = [e for e in elems if e.is_even()]
    assert len(even) == 2 ** 4
    assert len(set(elems)) == len(elems)


def test_sign_group_canonical_representatives():
    e = SignGroupElement([0, 1, 0, 1, 0, 0])
    f = SignGroupElement([1, 0, 1, 0, 1, 1])  # the complement
    assert e == f


def test_sign_group_action_and_composition():
    e = SignGroupElement([0, 1, 0, 0, 0, 0])
    x = [Fraction(k) for k in range(6)]
    y = e.act(x)
    assert e.act(y) == [Fraction(k) for k in range(6)] or e.act(y) == [
        -Fraction(k) for k in range(6)
    ]
    ident = e.compose(e)
    assert ident.act(x) in (x, [-c for c in x])
    with pytest.raises(ValueError):
        e.act([1, 2, 3])


def test_hyperelliptic_data():
    p = canonical_pencil(3)
    hyp = p.hyperelliptic_data()
    assert hyp.genus == 3
    assert len(hyp.branch_params) == 8
    assert all(b == Fraction(-1) for _, b in hyp.branch_params)


def test_new_pencil_alias():
    assert new_pencil(range(6)) == canonical_pencil(2)
