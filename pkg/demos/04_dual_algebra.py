"""The double-coset dual algebra of <(12)> <= S4 and a centrality surprise.

The dual 2-box algebra has one basis element per (H, H)-double coset; its
ordinary product is pointwise and its coproduct is a scaled convolution.
The coproduct-center turns out not to be closed under the ordinary
product: an exhaustive search over the coproduct-center basis finds two
central elements whose product is non-central.
"""

from __future__ import annotations

import numpy as np

from biprox.properties import (
    dual_coproduct_center_basis,
    find_zz_violation_dual,
    property_Z,
    property_ZZ,
)
from biprox.reference_tables import (
    S2_S4_DUAL_LABELS,
    coproduct_table,
    dual_coset_basis,
    s2_s4_context,
)

ctx = s2_s4_context()
table = coproduct_table(ctx, dual_coset_basis(ctx), S2_S4_DUAL_LABELS)
print("dual coproduct table (entries scaled by delta = sqrt(12)):\n")
print(table.as_text())

center = dual_coproduct_center_basis(ctx)
print(f"\ncoproduct-center dimension: {len(center)}")

hit = find_zz_violation_dual(ctx)
assert hit is not None
x, y, xy = hit


def fmt(d) -> str:
    return "(" + ", ".join(f"{c.real:+.3f}" for c in d.coeffs) + ")"


print("coproduct-central pair with non-central ordinary product "
      f"(coefficients over {', '.join(S2_S4_DUAL_LABELS)}):")
print(f"  x   = {fmt(x)}\n  y   = {fmt(y)}\n  x.y = {fmt(xy)}")
print(f"property (Z) here: {property_Z(ctx)}; property (ZZ): {property_ZZ(ctx)}")
