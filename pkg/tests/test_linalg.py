"""Exact linear algebra: fraction-free elimination against independent oracles."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplab import (
    BiquadContext,
    NonInvertibleError,
    det_exact,
    in_span,
    matvec,
    nullspace_exact,
    nullspace_naive,
    rank_exact,
    same_span,
    solve_exact,
)


def rational_matrices(rows, cols):
    return st.lists(
        st.lists(
            st.fractions(min_value=-9, max_value=9, max_denominator=4),
            min_size=cols,
            max_size=cols,
        ),
        min_size=rows,
        max_size=rows,
    )


@given(rational_matrices(3, 5))
@settings(max_examples=60, deadline=None)
def test_nullspace_matches_naive_oracle(m):
    fast = nullspace_exact(m)
    naive = nullspace_naive(m)
    assert len(fast) == len(naive)
    for v in fast:
        assert all(not r for r in matvec(m, v))
    assert same_span(fast, naive) or (not fast and not naive)


@given(rational_matrices(4, 4))
@settings(max_examples=60, deadline=None)
def test_rank_and_det_against_numpy(m):
    a = np.array([[float(x) for x in row] for row in m])
    sv = np.linalg.svd(a, compute_uv=False)
    scale = sv[0] if sv[0] > 0 else 1.0
    np_rank = int(np.sum(sv > 1e-9 * scale))
    assert rank_exact(m) == np_rank
    d = det_exact(m)
    assert abs(float(d) - np.linalg.det(a)) < 1e-6 * max(1.0, abs(float(d)))


@given(rational_matrices(4, 4), st.lists(
    st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=4, max_size=4
))
@settings(max_examples=60, deadline=None)
def test_solve_exact_residual(m, rhs):
    sol = solve_exact(m, rhs)
    if sol is None:
        # inconsistent: rhs not in column span
        cols = [[row[j] for row in m] for j in range(4)]
        assert not in_span(cols, rhs)
    else:
        assert matvec(m, sol) == list(rhs)


def test_nullspace_biquad_entries():
    ctx = BiquadContext(10, -14)
    r = ctx.sqrt_u()
    m = [[r, ctx.embed(1), r + 1], [ctx.embed(0), r, ctx.embed(1)]]
    basis = nullspace_exact(m)
    assert len(basis) == 1
    assert all(not x for x in matvec(m, basis[0]))


def test_nullspace_zero_divisor_pivot_raises():
    # in a split context a nonzero column may hold only zero divisors
    ctx = BiquadContext(4, 3)
    zd = ctx.sqrt_u() - 2  # norm 0, nonzero
    with pytest.raises(NonInvertibleError):
        nullspace_exact([[zd, ctx.embed(0)], [ctx.embed(0), ctx.embed(1)]])


def test_det_exact_known_values():
    assert det_exact([[Fraction(2)]]) == 2
    assert det_exact([[1, 2], [3, 4]]) == -2
    hilbert = [[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)]
    assert det_exact(hilbert) == Fraction(1, 2160)


def test_span_predicates():
    e1 = [Fraction(1), Fraction(0)]
    e2 = [Fraction(0), Fraction(1)]
    assert in_span([e1, e2], [Fraction(3), Fraction(-7)])
    assert not in_span([e1], e2)
    assert same_span([e1, e2], [[1, 1], [1, -1]])
    assert not same_span([e1], [e2])
