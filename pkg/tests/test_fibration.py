"""The fibration map, its geometric twin, the identification, isotropy."""

from fractions import Fraction

import numpy as np
import pytest

from qplab import (
    DegenerateCovectorError,
    FitError,
    canonical_pencil,
    f_H,
    fit_identification,
    phi_components,
    phi_X,
    phi_Y,
    projective_distance,
    sample_pair,
    sample_point,
    verify_identification,
    verify_lagrangian,
)
from qplab.variety import CotangentRep

P2 = canonical_pencil(2)
P3 = canonical_pencil(3)


def _pairs(p, seed, count, start=0, on_Y=False):
    return [sample_pair(p, seed, index=start + i, on_Y=on_Y) for i in range(count)]


def test_phi_components_sum_to_zero():
    x, xi = sample_pair(P2, 61)
    val = phi_X(x, xi)
    total = val.components[0]
    for c in val.components[1:]:
        total = total + c
    assert not total


def test_phi_gauge_invariance_exact():
    x, xi = sample_pair(P2, 67)
    base = phi_X(x, xi).components
    r1 = P2.q1_row(x.coords)
    r2 = P2.q2_row(x.coords)
    eta2 = [e + 3 * a - 2 * b for e, a, b in zip(xi.eta, r1, r2)]
    shifted = phi_components(P2, x.coords, eta2)
    assert all((a - b) == 0 for a, b in zip(base, shifted))


def test_phi_quadratic_scaling():
    x, xi = sample_pair(P2, 71)
    base = phi_X(x, xi).components
    scaled = phi_X(x, xi.scaled(Fraction(5))).components
    assert all(25 * a == b for a, b in zip(base, scaled))


def test_phi_sign_group_invariance():
    from qplab import SignGroupElement

    x, xi = sample_pair(P2, 73)
    e = SignGroupElement([0, 1, 1, 0, 1, 0])
    flipped = phi_components(P2, e.act(x.coords), e.act(xi.eta))
    assert all((a - b) == 0 for a, b in zip(phi_X(x, xi).components, flipped))


def test_phi_Y_last_component_vanishes():
    y, xi = sample_pair(P2, 79, on_Y=True)
    val = phi_Y(y, xi)
    assert not val.components[-1]
    x, eta = sample_pair(P2, 79)
    with pytest.raises(ValueError):
        phi_Y(x, eta)


def test_f_H_degree_and_gauge_invariance():
    x, xi = sample_pair(P2, 83)
    form = f_H(x, xi)
    assert form.degree == 2 * P2.g - 2
    # gauge shift leaves the form unchanged up to scale (same H)
    r1 = P2.q1_row(x.coords)
    r2 = P2.q2_row(x.coords)
    eta2 = [e + a - 4 * b for e, a, b in zip(xi.eta, r1, r2)]
    form2 = f_H(x, CotangentRep(x, eta2))
    assert projective_distance(form.coeff_vector(), form2.coeff_vector()) < 1e-12


def test_f_H_scaling_covariance():
    x, xi = sample_pair(P2, 89)
    form = f_H(x, xi)
    form2 = f_H(x, xi.scaled(Fraction(3)))
    # determinant of a (2g-2)-dim restriction picks up an even power of the
    # basis change; proportionality is all the construction promises
    assert projective_distance(form.coeff_vector(), form2.coeff_vector()) < 1e-12


def test_f_H_vanishes_at_last_branch_point_on_Y():
    y, xi = sample_pair(P2, 97, on_Y=True)
    form = f_H(y, xi)
    assert not form.eval_affine(P2.lambdas[-1])


def test_f_H_degenerate_covector_rejected():
    x = sample_point(P2, 101)
    # an eta vanishing on all of S: combination of the gauge generators
    eta = [a + b for a, b in zip(P2.q1_row(x.coords), P2.q2_row(x.coords))]
    with pytest.raises(DegenerateCovectorError):
        f_H(x, CotangentRep(x, eta))


def test_fit_and_verify_identification():
    train = _pairs(P2, 103, 8)
    ident = fit_identification(P2, train)
    assert ident.fit_residual <= 1e-10
    holdout = _pairs(P2, 103, 20, start=8)
    rep = verify_identification(ident, holdout, 1e-8)
    assert rep["pass"] and rep["samples"] == 20


def test_fit_requires_enough_samples():
    with pytest.raises(FitError):
        fit_identification(P2, _pairs(P2, 107, 7))


def test_fit_rejects_foreign_pencil():
    train = _pairs(P2, 109, 7) + _pairs(P3, 109, 1)
    with pytest.raises(FitError):
        fit_identification(P2, train)


def test_verify_rejects_train_holdout_overlap():
    train = _pairs(P2, 113, 8)
    ident = fit_identification(P2, train)
    with pytest.raises(FitError):
        verify_identification(ident, train[:2], 1e-8)


def test_fit_on_Y_only_is_rank_deficient():
    # the image drops a dimension on T*Y, so Y-only training cannot pin L
    train = _pairs(P2, 127, 8, on_Y=True)
    with pytest.raises(FitError):
        fit_identification(P2, train)


def test_projective_distance_properties():
    a = np.array([1.0, 2.0, 3.0])
    assert projective_distance(a, -2j * a) < 1e-15
    b = np.array([3.0, -1.5, 0.0])
    d = projective_distance(a, b)
    assert 0 < d <= 1.0
    assert abs(projective_distance(a, b) - projective_distance(b, a)) < 1e-12


def test_verify_lagrangian_generic_sample():
    x, xi = sample_pair(P2, 131)
    rep = verify_lagrangian(P2, x, xi, fd_step=1e-5, tol=1e-6)
    assert rep["generic"]
    assert rep["jacobian_rank"] == 3
    assert rep["isotropy_defect"] <= 1e-6
    assert rep["pass"]


def test_verify_lagrangian_flags_zero_covector():
    x = sample_point(P2, 137)
    xi = CotangentRep(x, [Fraction(0)] * 6)
    rep = verify_lagrangian(P2, x, xi)
    assert not rep["generic"]
    assert rep["jacobian_rank"] < 3
