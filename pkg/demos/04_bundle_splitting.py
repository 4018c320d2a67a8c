"""Kernel bases on P^1, the splitting type, and the Vandermonde normalizer.

The row map M(t) = ((t - lambda_k) x_k) has a minimal polynomial kernel basis
with column degrees {0^(2g), 1}; its constant part is the common orthogonal S
of the two quadric gradients.  Quotienting by the line of x gives the bundle
with splitting O^(2g-1) + O(-1), whose trivial part is the tangent space.

Separately, the power matrix of the lambdas has a one-dimensional kernel with
the closed form a_j = 1 / prod_{k != j} (lambda_j - lambda_k).
"""

from qplab import (
    canonical_pencil,
    n_tilde_splitting,
    sample_point,
    tangent_frame,
    trivial_factor_matches_tangent,
    v_perp_kernel,
    vandermonde_normalizer,
)

p = canonical_pencil(2)
x = sample_point(p, seed=3)

kb = v_perp_kernel(p, x)
print("kernel basis column degrees:", kb.degrees)

st = n_tilde_splitting(kb)
print("splitting type of the quotient bundle:", st.degrees)
print("total degree:", st.total_degree())

frame = tangent_frame(x)
print("trivial factor equals tangent span:", trivial_factor_matches_tangent(kb, frame))

print("\nVandermonde normalizer for lambda = 0..5:")
print(vandermonde_normalizer(p))
