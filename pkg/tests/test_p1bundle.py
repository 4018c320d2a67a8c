"""Kernel bases of the pencil row map, splitting types, Vandermonde kernel."""

from fractions import Fraction

import pytest

from qplab import (
    PencilOfQuadrics,
    canonical_pencil,
    n_tilde_splitting,
    sample_point,
    tangent_frame,
    trivial_factor_matches_tangent,
    v_perp_kernel,
    vandermonde_normalizer,
)
from qplab.linalg import same_span
from qplab.polymatrix import Poly

P2 = canonical_pencil(2)
P3 = canonical_pencil(3)


def test_kernel_basis_shape_and_exactness():
    for p in (P2, P3):
        x = sample_point(p, 41)
        kb = v_perp_kernel(p, x)
        assert sorted(kb.degrees) == [0] * (2 * p.g) + [1]
        # every column is annihilated by the symbolic row map
        for col in kb.columns:
            out = kb.row_map.apply_to_poly_vector(col)
            assert all(not poly for poly in out)


def test_constant_columns_span_common_orthogonal():
    x = sample_point(P2, 43)
    kb = v_perp_kernel(P2, x)
    frame = tangent_frame(x)
    constants = [
        [poly.coeff(0) for poly in col]
        for col, d in zip(kb.columns, kb.degrees)
        if d == 0
    ]
    assert same_span(constants, frame.S_basis)
    assert trivial_factor_matches_tangent(kb, frame)


def test_splitting_type():
    for p in (P2, P3):
        x = sample_point(p, 47)
        st = n_tilde_splitting(v_perp_kernel(p, x))
        assert st.degrees == tuple([0] * (2 * p.g - 1) + [1])
        assert st.total_degree() == -1
        assert st.as_multiset()[0] == 2 * p.g - 1


def test_kernel_requires_exact_point():
    x = sample_point(P2, 53).to_float()
    with pytest.raises(ValueError):
        v_perp_kernel(P2, x)


def test_vandermonde_closed_form_canonical():
    a = vandermonde_normalizer(P2)
    assert a == [
        Fraction(-1, 120),
        Fraction(1, 24),
        Fraction(-1, 12),
        Fraction(1, 12),
        Fraction(-1, 24),
        Fraction(1, 120),
    ]


def test_vandermonde_closed_form_general():
    p = PencilOfQuadrics([Fraction(-1, 2), 1, 2, Fraction(7, 3), 4, 5])
    a = vandermonde_normalizer(p)
    n = 6
    for j in range(n):
        target = Fraction(1)
        for k in range(n):
            if k != j:
                target /= p.lambdas[j] - p.lambdas[k]
        assert a[j] == target
    # it annihilates every power row lambda^0 .. lambda^{2g}
    for k in range(n - 1):
        assert sum(a[j] * p.lambdas[j] ** k for j in range(n)) == 0


def test_poly_helpers():
    z = Poly([])
    assert z.degree == -1 and not z
    f = Poly([Fraction(1), Fraction(2), Fraction(0)])
    assert f.degree == 1
    assert f(Fraction(3)) == 7
    assert (f * Poly([Fraction(0), Fraction(1)])).degree == 2
