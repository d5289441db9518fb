"""Frozen reference data for cross-checking computed coproduct tables.

Contents:

* an explicit matrix-unit basis of the 2-box algebra of S3 over the
  trivial subgroup (one 1x1 block for the trivial character, one for the
  alternating character, and a 2x2 block), together with its full
  coproduct table in the display scaling;
* the dual-side coproduct table of the index-12 pair <(1,2)> <= S4 on
  the seven double cosets, in the display scaling, up to relabeling of
  the non-identity cosets;
* a pair of coproduct-central dual elements of that pair whose pointwise
  product is not coproduct-central.

All tables store the structure constants multiplied by delta, matching
``coproduct_table``'s display convention.
"""

from __future__ import annotations

from itertools import permutations
from typing import Optional

import numpy as np

from .boxalgebra import (
    BoxContext,
    BoxElement,
    CoproductTable,
    DualElement,
    coproduct_table,
    dual_basis_element,
    is_dual_coproduct_central,
    mul_dual,
)
from .catalog import catalog_group
from .errors import NotTrivialH
from .permgroup import parse_cycles, subgroup_generated

S3_BASIS_LABELS = ("e1", "e2", "e11", "e12", "e21", "e22")

_ZETA = np.exp(2j * np.pi / 3)

# For each element of S3: (trivial character, alternating character,
# 2x2 block matrix) in the pinned matrix realization.
_S3_REP: dict[str, tuple[complex, complex, tuple[tuple[complex, ...], ...]]] = {
    "": (1, 1, ((1, 0), (0, 1))),
    "(1,2,3)": (1, 1, ((_ZETA, 0), (0, np.conj(_ZETA)))),
    "(1,3,2)": (1, 1, ((np.conj(_ZETA), 0), (0, _ZETA))),
    "(1,2)": (1, -1, ((0, 1), (1, 0))),
    "(2,3)": (1, -1, ((0, np.conj(_ZETA)), (_ZETA, 0))),
    "(1,3)": (1, -1, ((0, _ZETA), (np.conj(_ZETA), 0))),
}


def _cells_to_array(cells: list[list[dict[int, float]]], size: int) -> np.ndarray:
    out = np.zeros((size, size, size), dtype=np.complex128)
    for i, row in enumerate(cells):
        for j, cell in enumerate(row):
            for k, coeff in cell.items():
                out[i, j, k] = coeff
    out.setflags(write=False)
    return out


# Display-scaled table (entries multiplied by sqrt(6)); indices follow
# S3_BASIS_LABELS.
S3_TABLE = _cells_to_array(
    [
        [{0: 1}, {1: 1}, {2: 1}, {3: 1}, {4: 1}, {5: 1}],
        [{1: 1}, {0: 1}, {2: 1}, {3: -1}, {4: -1}, {5: 1}],
        [{2: 1}, {2: 1}, {5: 2}, {}, {}, {0: 2, 1: 2}],
        [{3: 1}, {3: -1}, {}, {4: 2}, {0: 2, 1: -2}, {}],
        [{4: 1}, {4: -1}, {}, {0: 2, 1: -2}, {3: 2}, {}],
        [{5: 1}, {5: 1}, {0: 2, 1: 2}, {}, {}, {2: 2}],
    ],
    6,
)

S2_S4_DUAL_LABELS = ("e1", "e2", "e3", "e4", "e5", "e6", "e7")

# Display-scaled dual table (entries multiplied by sqrt(12)); e1 is the
# identity double coset, the other labels are one fixed historical order.
S2_S4_DUAL_TABLE = _cells_to_array(
    [
        [{0: 1}, {1: 1}, {2: 1}, {3: 1}, {4: 1}, {5: 1}, {6: 1}],
        [{1: 1}, {0: 2, 1: 1}, {3: 1, 4: 1}, {2: 1, 4: 1}, {2: 1, 3: 1}, {5: 1, 6: 2}, {5: 1}],
        [{2: 1}, {4: 1, 5: 1}, {0: 2, 2: 1}, {3: 1, 6: 2}, {1: 1, 5: 1}, {1: 1, 4: 1}, {3: 1}],
        [{3: 1}, {3: 1, 6: 2}, {1: 1, 4: 1}, {4: 1, 5: 1}, {1: 1, 5: 1}, {0: 2, 2: 1}, {2: 1}],
        [{4: 1}, {2: 1, 5: 1}, {1: 1, 3: 1}, {2: 1, 5: 1}, {0: 2, 6: 2}, {1: 1, 3: 1}, {4: 1}],
        [{5: 1}, {2: 1, 4: 1}, {5: 1, 6: 2}, {0: 2, 1: 1}, {2: 1, 3: 1}, {3: 1, 4: 1}, {1: 1}],
        [{6: 1}, {3: 1}, {5: 1}, {1: 1}, {4: 1}, {2: 1}, {0: 1}],
    ],
    7,
)

# Reference central pair in the labeling of S2_S4_DUAL_TABLE (0-based
# index sets): both are coproduct-central, their pointwise product is not.
CENTRAL_PAIR_X = (1, 2, 6)  # e2 + e3 + e7
CENTRAL_PAIR_Y = (4, 6)  # e5 + e7


def s3_context() -> BoxContext:
    group = catalog_group("S3")
    return BoxContext(group, group.trivial_subgroup())


def s2_s4_context() -> BoxContext:
    group = catalog_group("S4")
    sub = subgroup_generated(
        group, np.array([group.index_of(parse_cycles("(1,2)", degree=4))])
    )
    return BoxContext(group, sub)


def s3_matrix_basis(ctx: BoxContext) -> list[BoxElement]:
    """The pinned matrix-unit basis of the S3 2-box algebra.

    Each group element maps to the vector of its six matrix coordinates;
    inverting that 6x6 matrix expresses the matrix units in the group
    basis, which is exactly our coefficient convention.
    """
    group = ctx.group
    if group.order != 6 or ctx.sub.order != 1:
        raise NotTrivialH("the pinned matrix basis exists for S3 over {1}")
    lam = np.zeros((6, group.order), dtype=np.complex128)
    for cycles, (triv, sgn, block) in _S3_REP.items():
        if cycles:
            g = group.index_of(parse_cycles(cycles, degree=3))
        else:
            g = group.identity_index
        lam[:, g] = [triv, sgn, block[0][0], block[0][1], block[1][0], block[1][1]]
    mu = np.linalg.inv(lam)
    return [BoxElement(ctx, mu[:, alpha]) for alpha in range(6)]


def s3_coproduct_table(ctx: BoxContext) -> CoproductTable:
    return coproduct_table(ctx, s3_matrix_basis(ctx), S3_BASIS_LABELS)


def dual_coset_basis(ctx: BoxContext) -> list[DualElement]:
    return [dual_basis_element(ctx, c) for c in range(ctx.dim)]


def match_table_up_to_relabeling(
    computed: np.ndarray, expected: np.ndarray, fixed: int = 1, tol: float = 1e-9
) -> Optional[tuple[int, ...]]:
    """A permutation sigma with computed[sigma x sigma x sigma] = expected,
    fixing the first ``fixed`` indices; None if there is none."""
    m = computed.shape[0]
    if computed.shape != expected.shape:
        return None
    head = tuple(range(fixed))
    for tail in permutations(range(fixed, m)):
        sigma = head + tail
        perm = np.array(sigma)
        view = computed[np.ix_(perm, perm, perm)]
        if np.abs(view - expected).max() <= tol:
            return sigma
    return None


def central_pair_elements(
    ctx: BoxContext, sigma: tuple[int, ...]
) -> tuple[DualElement, DualElement, DualElement]:
    """The reference central pair transported along a table relabeling,
    returning (x, y, x.y) as dual elements of ``ctx``."""

    def build(indices: tuple[int, ...]) -> DualElement:
        coeffs = np.zeros(ctx.dim, dtype=np.complex128)
        for i in indices:
            coeffs[sigma[i]] = 1.0
        return DualElement(ctx, coeffs)

    x = build(CENTRAL_PAIR_X)
    y = build(CENTRAL_PAIR_Y)
    return x, y, mul_dual(x, y)


def run_reference_checks() -> list[tuple[str, bool, str]]:
    """All built-in table reproductions; returns (name, passed, detail)."""
    results: list[tuple[str, bool, str]] = []

    ctx3 = s3_context()
    table3 = s3_coproduct_table(ctx3)
    err3 = float(np.abs(table3.entries - S3_TABLE).max())
    results.append(
        ("s3-coproduct-table", err3 <= 1e-9, f"max deviation {err3:.3e}")
    )

    ctx42 = s2_s4_context()
    table42 = coproduct_table(ctx42, dual_coset_basis(ctx42), S2_S4_DUAL_LABELS)
    sigma = match_table_up_to_relabeling(table42.entries, S2_S4_DUAL_TABLE)
    results.append(
        (
            "s2-s4-dual-table",
            sigma is not None,
            f"relabeling {sigma}" if sigma else "no relabeling matches",
        )
    )

    if sigma is not None:
        x, y, xy = central_pair_elements(ctx42, sigma)
        ok = (
            is_dual_coproduct_central(x)
            and is_dual_coproduct_central(y)
            and not is_dual_coproduct_central(xy)
        )
        results.append(
            (
                "s2-s4-central-pair",
                ok,
                "x, y central with x.y non-central" if ok else "centrality pattern broken",
            )
        )
    else:
        results.append(("s2-s4-central-pair", False, "table relabeling unavailable"))

    return results
