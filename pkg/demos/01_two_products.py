"""The 2-box algebra of (S3, {1}) and its two products.

The space carries the convolution product (with unit b_H), the coproduct
(a scaled pointwise product, with unit b_G), a trace normalized so
tr(identity) = 1, and a Fourier transform exchanging the two products.
The script prints the full coproduct table in the pinned matrix-unit
basis: two one-dimensional blocks e1, e2 and a 2x2 block e11..e22.
"""

from __future__ import annotations

import numpy as np

from biprox.boxalgebra import (
    coproduct,
    e1,
    fourier,
    id_element,
    mul,
    mul_dual,
    trace,
)
from biprox.reference_tables import s3_context, s3_coproduct_table, s3_matrix_basis

ctx = s3_context()
print(f"context: |G| = {ctx.group.order}, |H| = {ctx.sub.order}, "
      f"algebra dimension {ctx.dim}, delta = {ctx.delta:.6f}")

basis = s3_matrix_basis(ctx)
table = s3_coproduct_table(ctx)
print("\ncoproduct table (entries scaled by delta = sqrt(6)):\n")
print(table.as_text())

# the two units
a = basis[2]  # e11
assert np.abs((mul(a, id_element(ctx)) - a).coeffs).max() < 1e-12
assert np.abs((coproduct(a, e1(ctx)) - (1 / ctx.delta) * a).coeffs).max() < 1e-12
print("checked: b_H is the product unit, b_G the coproduct unit (up to 1/delta)")

# trace of the identity is 1; the matrix units e11, e22 each weigh 1/3
print(f"tr(id) = {trace(id_element(ctx)).real:.6f}, "
      f"tr(e11) = {trace(basis[2]).real:.6f}")

# Fourier exchanges product and coproduct
x, y = basis[1], basis[4]
lhs = fourier(coproduct(x, y))
rhs = mul_dual(fourier(y), fourier(x))
print(f"Fourier exchange deviation: {np.abs(lhs.coeffs - rhs.coeffs).max():.2e}")
