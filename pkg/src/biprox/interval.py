"""Group-side analysis of inclusions H <= G.

Covers: cyclic-over-subgroup witnesses, the distributivity/one-generator
report, the normality and index-sum conditions on minimal overgroups,
equivalence of inclusions through core quotients, and linear primitivity
(delegated to the box-algebra blocks).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import NotNested, QuotientOrderCapExceeded
from .lattice import FiniteLattice, from_subgroups, is_distributive
from .permgroup import (
    FiniteGroup,
    Subgroup,
    center_subgroup,
    core,
    derived_subgroup,
    generating_indices,
    is_normal_intermediate,
    minimal_overgroups,
    quotient_group,
    subgroup_generated,
)


class Inclusion:
    """An inclusion of finite groups H <= G."""

    def __init__(self, group: FiniteGroup, sub: Subgroup):
        if sub.parent is not group:
            raise NotNested("subgroup does not live inside the given group")
        self.group = group
        self.sub = sub

    @property
    def index(self) -> int:
        return self.group.order // self.sub.order

    @cached_property
    def lattice(self) -> FiniteLattice:
        return from_subgroups(self.group, self.sub)

    def __repr__(self) -> str:
        return f"Inclusion(|H|={self.sub.order}, |G|={self.group.order})"


@dataclass(frozen=True)
class OreReport:
    distributive: bool
    h_cyclic: bool
    witness: Optional[int]


@dataclass(frozen=True)
class DualOreReport:
    cond_normal: bool
    cond_sum: bool
    sum_value: Fraction


def is_H_cyclic(inc: Inclusion) -> Optional[int]:
    """First element g (in canonical element order) with <H, g> = G."""
    group, sub = inc.group, inc.sub
    if sub.order == group.order:
        return group.identity_index
    base = sub.indices
    for g in range(group.order):
        if sub.mask[g]:
            continue
        gen = subgroup_generated(group, np.append(base, g))
        if gen.order == group.order:
            return g
    return None


def ore_verify(inc: Inclusion) -> OreReport:
    """Distributivity of [H, G] together with the one-extra-generator
    property; a distributive interval failing the latter is a hard error."""
    distributive = is_distributive(inc.lattice)[0]
    witness = is_H_cyclic(inc)
    h_cyclic = witness is not None
    assert not (distributive and not h_cyclic), (
        "distributive interval without a single-generator witness: "
        f"{inc!r}"
    )
    return OreReport(distributive, h_cyclic, witness)


def dual_ore_conditions(inc: Inclusion) -> DualOreReport:
    """Normality of H-K multiplication for all intermediate K, and the
    index-sum bound over minimal overgroups of H (exact rational)."""
    group, sub = inc.group, inc.sub
    cond_normal = all(
        is_normal_intermediate(sub, k, group) for k in inc.lattice.payload
    )
    total = Fraction(0)
    for k in minimal_overgroups(sub, group):
        total += Fraction(sub.order, k.order)  # 1 / [K : H]
    return DualOreReport(cond_normal, total <= 2, total)


# ------------------------------------------------------- equivalence classing


def core_quotient(inc: Inclusion) -> tuple[FiniteGroup, Subgroup]:
    """(G/core_G(H), image of H), the invariant pair behind equivalence."""
    c = core(inc.group, inc.sub)
    quotient, projection = quotient_group(inc.group, c)
    image = quotient.subgroup_from_indices(np.unique(projection[inc.sub.indices]))
    return quotient, image


def _group_invariants(g: FiniteGroup) -> tuple:
    orders = tuple(int(x) for x in np.sort(g.element_orders()))
    class_sizes = tuple(sorted(len(c) for c in g.conjugacy_classes()))
    return (
        g.order,
        g.is_abelian(),
        center_subgroup(g).order,
        derived_subgroup(g).order,
        orders,
        class_sizes,
    )


def _pair_invariants(g: FiniteGroup, h: Subgroup) -> tuple:
    h_orders = tuple(int(x) for x in np.sort(g.element_orders()[h.indices]))
    return _group_invariants(g) + (h.order, h.is_normal(), h_orders)


def equivalence_key(inc: Inclusion, quotient_cap: int = 200) -> tuple:
    """Hashable invariant of the equivalence class (prefilter/bucketing)."""
    quotient, image = core_quotient(inc)
    if quotient.order > quotient_cap:
        raise QuotientOrderCapExceeded(
            f"core quotient of order {quotient.order} exceeds cap {quotient_cap}"
        )
    return _pair_invariants(quotient, image)


def _isomorphism_carrying(
    q1: FiniteGroup, img1: Subgroup, q2: FiniteGroup, img2: Subgroup
) -> bool:
    """Exact search for an isomorphism q1 -> q2 mapping img1 onto img2.

    Generator images are assigned depth-first; each partial assignment is
    closed under multiplication immediately, so conflicts (including loss
    of injectivity) prune the search early.
    """
    gens = generating_indices(q1.full_subgroup())
    if not gens:  # trivial group
        return q2.order == 1
    orders1, orders2 = q1.element_orders(), q2.element_orders()
    csize1 = np.empty(q1.order, dtype=np.int64)
    for cls in q1.conjugacy_classes():
        csize1[cls] = len(cls)
    csize2 = np.empty(q2.order, dtype=np.int64)
    for cls in q2.conjugacy_classes():
        csize2[cls] = len(cls)

    candidates = []
    for g in gens:
        pool = [
            x
            for x in range(q2.order)
            if orders2[x] == orders1[g]
            and csize2[x] == csize1[g]
            and img2.mask[x] == img1.mask[g]
        ]
        if not pool:
            return False
        candidates.append(pool)

    img1_sorted = np.sort(img1.indices)
    img2_sorted = np.sort(img2.indices)
    images: list[int] = [0] * len(gens)

    def close(phi: np.ndarray, active: range) -> Optional[np.ndarray]:
        """Extend phi to the closure of its domain under the active gens;
        None on any multiplication conflict or loss of injectivity."""
        phi = phi.copy()
        used = np.zeros(q2.order, dtype=bool)
        used[phi[phi >= 0]] = True
        frontier = np.flatnonzero(phi >= 0).tolist()
        while frontier:
            nxt = []
            for x in frontier:
                fx = phi[x]
                for k in active:
                    y = q1.cayley[x, gens[k]]
                    fy = q2.cayley[fx, images[k]]
                    if phi[y] < 0:
                        if used[fy]:
                            return None  # not injective
                        phi[y] = fy
                        used[fy] = True
                        nxt.append(y)
                    elif phi[y] != fy:
                        return None
            frontier = nxt
        return phi

    def search(k: int, phi: np.ndarray) -> bool:
        if k == len(gens):
            return bool(np.all(phi >= 0)) and np.array_equal(
                np.sort(phi[img1_sorted]), img2_sorted
            )
        taken = np.zeros(q2.order, dtype=bool)
        taken[phi[phi >= 0]] = True
        for cand in candidates[k]:
            if taken[cand]:  # gens[k] is outside the closed prefix domain
                continue
            images[k] = cand
            extended = close(phi, range(k + 1))
            if extended is not None and search(k + 1, extended):
                return True
        return False

    phi0 = np.full(q1.order, -1, dtype=np.int64)
    phi0[q1.identity_index] = q2.identity_index
    return search(0, phi0)


def inclusions_equivalent(
    a: Inclusion, b: Inclusion, quotient_cap: int = 200
) -> bool:
    """Whether the core quotients are isomorphic as pairs (group, subgroup)."""
    q1, img1 = core_quotient(a)
    q2, img2 = core_quotient(b)
    for q in (q1, q2):
        if q.order > quotient_cap:
            raise QuotientOrderCapExceeded(
                f"core quotient of order {q.order} exceeds cap {quotient_cap}"
            )
    if _pair_invariants(q1, img1) != _pair_invariants(q2, img2):
        return False
    return _isomorphism_carrying(q1, img1, q2, img2)


# ---------------------------------------------------------- linear primitivity


def is_linearly_primitive_inclusion(inc: Inclusion, seed: int = 0) -> Optional[int]:
    """Index of the first central block whose H-fixed vectors have pointwise
    stabilizer exactly H, or None. Computed on the box algebra."""
    from .boxalgebra import BoxContext, minimal_central_projections

    ctx = BoxContext(inc.group, inc.sub)
    blocks = minimal_central_projections(ctx, seed=seed)
    for i, p in enumerate(blocks):
        stab = _fixed_space_stabilizer(ctx, p)
        if np.array_equal(stab, inc.sub.mask):
            return i
    return None


def _fixed_space_stabilizer(ctx, block) -> np.ndarray:
    """Mask of elements g whose left translation fixes b_H * p elementwise."""
    from .boxalgebra import b_subgroup, mul

    v = mul(b_subgroup(ctx, ctx.sub), block).coeffs
    group = ctx.group
    # g is in the stabilizer iff v[g^-1 x] = v[x] for all x.
    translated = v[group.cayley[group.inverse, :]]  # row g: x -> v[g^-1 x]
    return np.all(np.abs(translated - v[None, :]) <= ctx.tol.zero, axis=1)


def is_linearly_primitive_group(group: FiniteGroup, seed: int = 0) -> bool:
    """Whether some irreducible block is faithful (trivial stabilizer)."""
    inc = Inclusion(group, group.trivial_subgroup())
    return is_linearly_primitive_inclusion(inc, seed=seed) is not None
