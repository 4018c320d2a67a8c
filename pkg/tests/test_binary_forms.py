"""Binary forms: interpolation exactness and root extraction on P^1."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplab import (
    BinaryForm,
    InterpolationError,
    ZeroFormError,
    binary_form_roots,
    interpolate_binary_form,
)


def test_evaluation_conventions():
    f = BinaryForm(2, [Fraction(1), Fraction(-3), Fraction(2)])  # a^2 - 3ab + 2b^2
    assert f(Fraction(1), Fraction(1)) == 0
    assert f(Fraction(2), Fraction(1)) == 0
    assert f.eval_affine(Fraction(3)) == 2


@given(
    st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=4),
        min_size=4,
        max_size=4,
    )
)
@settings(max_examples=50, deadline=None)
def test_exact_interpolation_roundtrip(coeffs):
    f = BinaryForm(3, coeffs)
    ts = [Fraction(k) for k in range(6)]
    samples = [(t, f.eval_affine(t)) for t in ts]
    g = interpolate_binary_form(samples, 3)
    assert g == f  # overdetermined consistency included


def test_interpolation_errors():
    with pytest.raises(InterpolationError):
        interpolate_binary_form([(Fraction(0), Fraction(1))] * 3, 2)
    with pytest.raises(InterpolationError):
        interpolate_binary_form([(Fraction(0), Fraction(1))], 2)
    # inconsistent overdetermined data
    f = BinaryForm(1, [Fraction(1), Fraction(0)])
    samples = [(Fraction(k), f.eval_affine(Fraction(k))) for k in range(3)]
    samples[2] = (samples[2][0], samples[2][1] + 1)
    with pytest.raises(InterpolationError):
        interpolate_binary_form(samples, 1)


def test_roots_simple_quadratic():
    f = BinaryForm(2, [1.0, -3.0, 2.0])  # roots t = 1, 2
    roots = binary_form_roots(f)
    ts = sorted((a / b).real for a, b in roots)
    assert np.allclose(ts, [1.0, 2.0])


def test_root_at_infinity():
    # b * (a - b): roots [1:0] (infinity) and [1:1]
    f = BinaryForm(2, [0.0, 1.0, -1.0])
    roots = binary_form_roots(f)
    has_inf = any(abs(b) < 1e-12 for _, b in roots)
    has_one = any(abs(a - b) < 1e-9 for a, b in roots)
    assert has_inf and has_one and len(roots) == 2


def test_roots_of_zero_form_raise():
    with pytest.raises(ZeroFormError):
        binary_form_roots(BinaryForm(2, [0.0, 0.0, 0.0]))


@given(
    st.lists(
        st.floats(min_value=-5, max_value=5).filter(lambda x: abs(x) > 0.1),
        min_size=3,
        max_size=3,
    )
)
@settings(max_examples=40, deadline=None)
def test_roots_reconstruct_form(roots_in):
    # build the monic form with prescribed affine roots, recover them
    coeffs = np.poly(roots_in)
    f = BinaryForm(3, [1.0] + list(coeffs[1:]) + [0.0] * (3 - len(coeffs)))
    if f.degree != len(coeffs) - 1 + 1 - 1:
        pass
    f = BinaryForm(len(coeffs) - 1, list(coeffs))
    got = sorted((a / b).real for a, b in binary_form_roots(f, tol=1e-6))
    assert np.allclose(got, sorted(roots_in), atol=1e-5)


def test_scaled_and_json():
    f = BinaryForm(1, [Fraction(1), Fraction(2)])
    assert f.scaled(Fraction(3)).coeffs == [3, 6]
    payload = f.to_json()
    assert payload == {"degree": 1, "coeffs": ["1", "2"]}
