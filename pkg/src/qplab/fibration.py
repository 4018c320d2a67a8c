"""The Lagrangian fibration computed two ways.

phi_X evaluates the quadratic generator fields on a cotangent representative:
component j is sum_{k != j} (x_j eta_k - x_k eta_j)^2 / (lambda_k - lambda_j).
f_H computes the same data geometrically: the binary form (degree 2g-2) cutting
out the degenerate members of the pencil restricted to the hyperplane
H = ker(eta) of the tangent space.  The two are matched by a pencil-dependent
linear identification, fitted on training samples and verified on held-out
ones; verify_lagrangian checks the fibration property itself by finite
differences in a local symplectic chart.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .binary_forms import BinaryForm, interpolate_binary_form
from .linalg import det_exact, nullspace_exact
from .pencil import PencilOfQuadrics
from .scalars import ModeMismatchError, to_complex
from .variety import CotangentRep, PointOnX, tangent_frame

__all__ = [
    "FibrationValue",
    "IdentificationMap",
    "DegenerateCovectorError",
    "FitError",
    "phi_components",
    "phi_X",
    "phi_Y",
    "f_H",
    "fit_identification",
    "verify_identification",
    "verify_lagrangian",
    "projective_distance",
]


class DegenerateCovectorError(ValueError):
    """eta restricted to S/V vanishes; H is not a hyperplane."""


class FitError(ValueError):
    """Bad training data: wrong pencil, too few samples, or rank deficiency."""


@dataclass
class FibrationValue:
    """The 2g+2 component values of the generator fields at (x, eta)."""

    components: list

    def complex_vector(self) -> np.ndarray:
        return np.array([to_complex(c) for c in self.components], dtype=complex)


def phi_components(p: PencilOfQuadrics, v, eta) -> list:
    """Raw generator-field values; only gauge/covector checks are skipped."""
    lam = p.lambdas
    n = len(v)
    comps = []
    for j in range(n):
        s = None
        for k in range(n):
            if k == j:
                continue
            w = v[j] * eta[k] - v[k] * eta[j]
            term = (w * w) / (lam[k] - lam[j])
            s = term if s is None else s + term
        comps.append(s)
    return comps


def phi_X(x: PointOnX, xi: CotangentRep) -> FibrationValue:
    """Evaluate every generator field on (eta, eta) at x; exact in exact mode."""
    if xi.point is not x and xi.point.coords != x.coords:
        raise ValueError("covector attached to a different point")
    if xi.point.mode != x.mode:
        raise ModeMismatchError("point/covector mode mismatch")
    return FibrationValue(components=phi_components(x.pencil, x.coords, xi.eta))


def phi_Y(y: PointOnX, xi: CotangentRep) -> FibrationValue:
    """Restriction to T*Y: requires y_{2g+1} = 0 and eta_{2g+1} = 0.

    The last component vanishes identically (both factors of every one of its
    summands are zero).
    """
    if not y.on_Y:
        raise ValueError("point is not on Y (last coordinate nonzero)")
    if not xi.even_restricted:
        raise ValueError("covector is not even-restricted")
    val = phi_X(y, xi)
    if y.mode == "exact" and val.components[-1]:
        raise ArithmeticError("last component failed to vanish on T*Y")
    return val


def f_H(x: PointOnX, xi: CotangentRep) -> BinaryForm:
    """Degenerate-member form of the restricted pencil, exactly.

    H is the kernel of eta on S/V; the determinant of q_t | H in a fixed basis
    is sampled at 2g-1 parameters beyond max(lambda) and interpolated to a
    binary form of degree 2g-2 (well defined up to nonzero scale).
    """
    if x.mode != "exact":
        raise ValueError("f_H is computed in exact mode")
    p = x.pencil
    frame = tangent_frame(x)
    values = []
    for w in frame.quotient_basis:
        s = xi.eta[0] * w[0]
        for e, c in zip(xi.eta[1:], w[1:]):
            s = s + e * c
        values.append(s)
    if not any(values):
        raise DegenerateCovectorError("eta vanishes on S/V")
    combos = nullspace_exact([values])
    if len(combos) != 2 * p.g - 2:
        raise DegenerateCovectorError("kernel of eta|_{S/V} has wrong dimension")
    h_basis = []
    for combo in combos:
        vec = None
        for coeff, w in zip(combo, frame.quotient_basis):
            part = [coeff * c for c in w]
            vec = part if vec is None else [a + b for a, b in zip(vec, part)]
        h_basis.append(vec)
    deg = 2 * p.g - 2
    t_max = max(p.lambdas)
    samples = []
    for m in range(1, 2 * p.g):
        t = t_max + m
        gram = _restricted_gram(p, t, h_basis)
        samples.append((t, det_exact(gram)))
    return interpolate_binary_form(samples, deg)


def _restricted_gram(p: PencilOfQuadrics, t, h_basis):
    lam = p.lambdas
    weighted = [[(t - l) * c for l, c in zip(lam, h)] for h in h_basis]
    size = len(h_basis)
    gram = []
    for i in range(size):
        row = []
        for j in range(size):
            s = weighted[i][0] * h_basis[j][0]
            for a, b in zip(weighted[i][1:], h_basis[j][1:]):
                s = s + a * b
            row.append(s)
        gram.append(row)
    return gram


def projective_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Sine of the principal angle between the lines C*a and C*b.

    Computed as the norm of the component of a-hat orthogonal to b-hat, which
    stays accurate down to machine precision (the chordal formula
    sqrt(2 - 2|<a,b>|) loses half the digits near zero).
    """
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0 if na == nb else 1.0
    ahat = a / na
    bhat = b / nb
    return float(np.linalg.norm(ahat - bhat * np.vdot(bhat, ahat)))


@dataclass
class IdentificationMap:
    """Fitted linear map from fibration components to f_H coefficients."""

    L: np.ndarray
    fit_residual: float
    pencil_fingerprint: str
    train_keys: frozenset = field(default_factory=frozenset, repr=False)

    def apply(self, value: FibrationValue) -> np.ndarray:
        return self.L @ value.complex_vector()


def _sample_vectors(pair):
    x, xi = pair
    pvec = phi_X(x, xi).complex_vector()
    cvec = f_H(x, xi).coeff_vector()
    return pvec / np.linalg.norm(pvec), cvec / np.linalg.norm(cvec)


def fit_identification(p: PencilOfQuadrics, train) -> IdentificationMap:
    """Homogeneous least-squares fit of L with L*phi ∝ f_H per sample.

    Each sample contributes the constraint (I - c c^H) L p = 0; the minimizer
    is the smallest right singular vector of the stacked system.  Training must
    determine L up to scale, otherwise FitError is raised.
    """
    if len(train) < 4 * p.g:
        raise FitError(f"need at least {4 * p.g} training samples")
    fp = p.fingerprint()
    for x, _ in train:
        if x.pencil.fingerprint() != fp:
            raise FitError("training sample from a different pencil")
    rows_out = 2 * p.g - 1
    data = [_sample_vectors(pair) for pair in train]
    # the fibration values span only a (2g-1)-dim subspace of the ambient
    # C^{2g+2}; fit the square matrix acting on coordinates in that span and
    # extend by zero on the orthogonal complement.
    pmat = np.array([pvec for pvec, _ in data])
    _, psv, pvt = np.linalg.svd(pmat)
    if len(psv) < rows_out or psv[rows_out - 1] <= 1e-10 * psv[0]:
        raise FitError("training values span too small a subspace")
    q = pvt[:rows_out].conj().T  # orthonormal basis of the span, as columns
    blocks = []
    for pvec, cvec in data:
        coords = q.conj().T @ pvec
        proj = np.eye(rows_out, dtype=complex) - np.outer(cvec, cvec.conj())
        k = np.zeros((rows_out, rows_out * rows_out), dtype=complex)
        for r in range(rows_out):
            k[r, r * rows_out:(r + 1) * rows_out] = coords
        blocks.append(proj @ k)
    a = np.vstack(blocks)
    _, sv, vt = np.linalg.svd(a)
    if sv[-2] <= 1e-8 * sv[0]:
        raise FitError("training samples do not determine the map up to scale")
    vec = vt[-1].conj()
    L = vec.reshape(rows_out, rows_out) @ q.conj().T
    residual = max(
        projective_distance(L @ pvec, cvec) for pvec, cvec in data
    )
    keys = frozenset(xi.sample_key() for _, xi in train)
    return IdentificationMap(
        L=L, fit_residual=residual, pencil_fingerprint=fp, train_keys=keys
    )


def verify_identification(ident: IdentificationMap, holdout, tol: float):
    """Max projective residual of L*phi vs f_H over held-out samples.

    Re-verifying on training samples is rejected: the check would be vacuous.
    """
    residuals = []
    for x, xi in holdout:
        if x.pencil.fingerprint() != ident.pencil_fingerprint:
            raise FitError("holdout sample from a different pencil")
        if xi.sample_key() in ident.train_keys:
            raise FitError("holdout overlaps the training set")
        pvec, cvec = _sample_vectors((x, xi))
        residuals.append(projective_distance(ident.L @ pvec, cvec))
    max_residual = max(residuals) if residuals else 0.0
    return {
        "max_residual": max_residual,
        "pass": max_residual <= tol,
        "samples": len(residuals),
    }


# ---------------------------------------------------------------------------
# Lagrangian verification by finite differences in a local chart
# ---------------------------------------------------------------------------


def _component_projector(g: int) -> np.ndarray:
    """Fixed generic (2g-1) x (2g+2) projection picking independent components."""
    rng = np.random.Generator(np.random.Philox(key=[0x51AB, g]))
    return rng.normal(size=(2 * g - 1, 2 * g + 2)) + 1j * rng.normal(
        size=(2 * g - 1, 2 * g + 2)
    )


class _Chart:
    """Local chart of X: dehomogenize at the largest coordinate, split the
    remaining coordinates into 2 dependent and 2g-1 free by column pivoting."""

    def __init__(self, p: PencilOfQuadrics, v: np.ndarray):
        self.p = p
        self.lam = np.array([float(l) for l in p.lambdas])
        self.hom = int(np.argmax(np.abs(v)))
        self.w0 = v / v[self.hom]
        others = [k for k in range(len(v)) if k != self.hom]
        jac = self._ambient_jacobian(self.w0)[:, others]
        dep_local = _pivot_columns(jac, 2)
        self.dep = [others[k] for k in dep_local]
        self.free = [k for k in others if k not in self.dep]
        if len(self.free) != 2 * p.g - 1:
            raise ArithmeticError("chart selection failed")

    def _ambient_jacobian(self, w):
        return np.vstack([2.0 * w, 2.0 * self.lam * w])

    def _constraints(self, w):
        return np.array([np.sum(w * w), np.sum(self.lam * w * w)])

    def point(self, z: np.ndarray, newton_tol: float = 1e-14) -> np.ndarray:
        """Ambient representative with hom-coordinate 1 and free coords z."""
        w = self.w0.copy()
        w[self.free] = z
        for _ in range(50):
            r = self._constraints(w)
            if np.max(np.abs(r)) < newton_tol * max(1.0, np.max(np.abs(w)) ** 2):
                return w
            jd = self._ambient_jacobian(w)[:, self.dep]
            delta = np.linalg.solve(jd, r)
            w[self.dep] -= delta
        raise ArithmeticError("Newton refinement did not converge")

    def tangent_basis(self, w) -> list:
        """Ambient lifts of d/dz_i via the implicit function theorem."""
        jac = self._ambient_jacobian(w)
        jd = jac[:, self.dep]
        jf = jac[:, self.free]
        correction = -np.linalg.solve(jd, jf)
        taus = []
        for i in range(len(self.free)):
            tau = np.zeros(len(w), dtype=complex)
            tau[self.free[i]] = 1.0
            tau[self.dep] = correction[:, i]
            taus.append(tau)
        return taus

    def covector(self, w, taus, pz: np.ndarray) -> np.ndarray:
        """eta with eta(tau_i) = pz_i, eta(v) = 0 and eta(lam*v) = 0.

        The row eta(v)=0 coincides with the first gauge generator (the
        gradient row of q1 is the point itself), so the system has rank
        2g+1 in 2g+2 unknowns; the leftover direction is the residual
        gauge freedom eta -> eta + alpha*v, which every downstream value
        is invariant under.  The minimal-norm solution fixes it smoothly.
        """
        rows = np.array(list(taus) + [w, self.lam * w], dtype=complex)
        rhs = np.concatenate([pz, [0.0, 0.0]]).astype(complex)
        eta, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
        return eta

    def momenta(self, w, taus, eta: np.ndarray) -> np.ndarray:
        return np.array([eta @ tau for tau in taus])


def _pivot_columns(jac: np.ndarray, count: int):
    cols = jac.copy()
    chosen = []
    for _ in range(count):
        norms = np.linalg.norm(cols, axis=0)
        norms[chosen] = -1.0
        k = int(np.argmax(norms))
        chosen.append(k)
        u = cols[:, k] / np.linalg.norm(cols[:, k])
        cols = cols - np.outer(u, u.conj() @ cols)
    return chosen


def _phi_complex(p: PencilOfQuadrics, v: np.ndarray, eta: np.ndarray) -> np.ndarray:
    lam = np.array([complex(l) for l in p.lambdas])
    n = len(v)
    cross = np.outer(v, eta) - np.outer(eta, v)
    denom = lam[None, :] - lam[:, None]
    np.fill_diagonal(denom, 1.0)
    terms = cross ** 2 / denom
    np.fill_diagonal(terms, 0.0)
    return terms.sum(axis=1)


def verify_lagrangian(
    p: PencilOfQuadrics,
    x: PointOnX,
    xi: CotangentRep,
    fd_step: float = 1e-5,
    tol: float = 1e-6,
):
    """Finite-difference check that the fibration is Lagrangian at (x, xi).

    Builds canonical coordinates (z, p_z) on T*X in a local chart, takes the
    central-difference Jacobian of 2g-1 independent components, and reports its
    rank together with the maximal |omega(u, u')| over a kernel basis.
    """
    v = x.complex_coords()
    eta0 = xi.complex_eta()
    chart = _Chart(p, v)
    proj = _component_projector(p.g)
    nfree = len(chart.free)

    w_base = chart.w0
    taus0 = chart.tangent_basis(w_base)
    z0 = w_base[chart.free].astype(complex)
    pz0 = chart.momenta(w_base, taus0, eta0)

    def value(u: np.ndarray) -> np.ndarray:
        z = u[:nfree]
        pz = u[nfree:]
        w = chart.point(z)
        taus = chart.tangent_basis(w)
        eta = chart.covector(w, taus, pz)
        return proj @ _phi_complex(p, w, eta)

    u0 = np.concatenate([z0, pz0])
    base = value(u0)
    scale = np.linalg.norm(base) or 1.0
    dim = 2 * nfree
    jac = np.zeros((nfree, dim), dtype=complex)
    for m in range(dim):
        up = u0.copy()
        um = u0.copy()
        up[m] += fd_step
        um[m] -= fd_step
        jac[:, m] = (value(up) - value(um)) / (2 * fd_step * scale)
    _, sv, vt = np.linalg.svd(jac)
    rank_tol = 1e-6
    rank = int(np.sum(sv > rank_tol * (sv[0] if sv[0] > 0 else 1.0)))
    kernel = [vt[k].conj() for k in range(rank, dim)]
    defect = 0.0
    for i, u in enumerate(kernel):
        for up in kernel[i + 1:]:
            omega = u[:nfree] @ up[nfree:] - u[nfree:] @ up[:nfree]
            defect = max(defect, abs(omega))
    generic = rank == nfree
    return {
        "jacobian_rank": rank,
        "isotropy_defect": float(defect),
        "generic": generic,
        "pass": generic and defect <= tol,
    }
