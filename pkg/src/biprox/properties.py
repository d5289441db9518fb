"""Classification predicates and chain lengths for 2-box contexts.

Decision procedures for the lattice-flavoured properties of the 2-box
algebra of an inclusion H <= G: distributivity and normality of the
biprojection lattice (cyclic = both at once), w-cyclicity on the primal
and dual sides, w+-cyclicity, the centrality properties (Z), (ZZ), (Z~)
and (F2), the exact rational bound sum(1/[id:b]) over maximal
biprojections, shortest-chain lengths whose per-step predicates run on
compressed interval contexts, and a table of verified implications
between all of these.

Conventions used throughout (see boxalgebra): the biprojection lattice
reverses subgroup inclusion, so b_K <= b_L iff L <= K, the bottom is
e1 = b_G and the top is id = b_H; "minimal projection" means a rank-one
projection in a matrix block, "minimal central projection" a block
identity; <x> denotes the biprojection generated by x under coproduct
powers, and <x> = id is equivalent to the generated subgroup being H.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .boxalgebra import (
    BoxContext,
    BoxElement,
    DualElement,
    biprojection_lattice,
    center_basis_elements,
    collapse_dual,
    compress_lower,
    compress_upper,
    coproduct,
    generate_biprojection,
    generate_biprojection_dual,
    generate_from_set,
    id_element,
    is_central,
    is_dual_coproduct_central,
    is_normal_biprojection,
    minimal_central_projections,
    minimal_projections_under,
    mul_dual,
    range_projection,
)
from .errors import BiprojectionCheckFailed, TheoremViolation
from .lattice import FiniteLattice, boolean_rank, is_distributive
from .permgroup import (
    Subgroup,
    maximal_subgroups_over,
    minimal_overgroups,
    require_nested,
    subgroup_generated,
)

__all__ = [
    "NOT_DETERMINED",
    "Determination",
    "ClassificationReport",
    "ImplicationResult",
    "bottom_context",
    "classify",
    "dual_coproduct_center_basis",
    "find_zz_violation_dual",
    "is_cyclic",
    "is_dedekind",
    "is_w_cyclic",
    "is_w_cyclic_dual",
    "lengths",
    "lw_rw_cyclic",
    "maximal_biprojections",
    "property_F2",
    "property_Z",
    "property_Z_tilde",
    "property_ZZ",
    "step_context",
    "sum_bound",
    "top_context",
    "verify_theorems",
    "w_plus_cyclic",
    "wcl_generators",
]


class Determination(enum.Enum):
    """Explicit marker for capped searches that did not conclude."""

    NOT_DETERMINED = "not_determined"


NOT_DETERMINED = Determination.NOT_DETERMINED


# -- w-cyclicity ------------------------------------------------------------


def _w_cyclic_witness(
    ctx: BoxContext, seed: int = 0
) -> Optional[Tuple[int, BoxElement]]:
    """(block index, witness projection) with <witness> = id, or None.

    The decision runs over minimal central projections: some minimal
    projection under a block z generates the same biprojection as z, so
    testing <z> = id over blocks decides existence of a minimal witness.
    A drawn minimal projection under the successful block is returned
    when it verifies (random draws do, away from a null set); otherwise
    the block itself stands in as the witness.  When no block generates
    id, one random minimal projection per block is still tried, which
    can only help: <v> <= <z> always, so a hit would expose a numerical
    error in the block sweep.
    """
    projs = minimal_central_projections(ctx, seed=seed)
    for i, z in enumerate(projs):
        if generate_biprojection(z).subgroup == ctx.sub:
            for v in minimal_projections_under(z, seed=seed):
                if generate_biprojection(v).subgroup == ctx.sub:
                    return i, v
            return i, z
    for i, z in enumerate(projs):
        for v in minimal_projections_under(z, seed=seed):
            if generate_biprojection(v).subgroup == ctx.sub:
                # <v> <= <z> always, so reaching here means the block sweep
                # mis-ranked a generated range; the witness itself verified.
                return i, v
    return None


def is_w_cyclic(ctx: BoxContext, seed: int = 0) -> Optional[BoxElement]:
    """A minimal (or minimal central) projection u with <u> = id, or None."""
    found = _w_cyclic_witness(ctx, seed=seed)
    return None if found is None else found[1]


def is_w_cyclic_dual(ctx: BoxContext) -> Optional[int]:
    """Index of a double coset C whose indicator generates the dual id.

    The dual algebra is abelian, so its minimal projections are exactly
    the single-coset indicators E_C; E_C generates the indicator of the
    cosets inside <H, C>, and dual w-cyclicity means some C reaches the
    whole group.
    """
    for c in range(ctx.dim):
        _, k = generate_biprojection_dual(ctx, c)
        if k.order == ctx.group.order:
            return c
    return None


# -- lattice-level predicates -------------------------------------------------


def maximal_biprojections(ctx: BoxContext) -> List[Tuple[Subgroup, BoxElement]]:
    """Coatoms of the biprojection lattice: b_K for K a minimal overgroup of H."""
    lat = biprojection_lattice(ctx)
    return [lat.payload[i] for i in lat.coatoms()]


def is_dedekind(ctx: BoxContext) -> bool:
    """True when every biprojection is normal (b x b ~ x b x for all x)."""
    lat = biprojection_lattice(ctx)
    return all(is_normal_biprojection(elem) for _k, elem in lat.payload)


def is_cyclic(ctx: BoxContext) -> bool:
    """Dedekind with distributive biprojection lattice."""
    ok, _witness = is_distributive(biprojection_lattice(ctx))
    return ok and is_dedekind(ctx)


def w_plus_cyclic(ctx: BoxContext) -> bool:
    """True when the range of the sum of the maximal biprojections stays
    strictly below id, i.e. some nonzero projection is orthogonal to every
    proper biprojection."""
    pairs = maximal_biprojections(ctx)
    if not pairs:
        return True  # H = G: the empty sum leaves all of id
    total = pairs[0][1]
    for _k, elem in pairs[1:]:
        total = total + elem
    return not range_projection(total).isclose(id_element(ctx))


def sum_bound(ctx: BoxContext) -> Fraction:
    """Exact sum of 1/[id : b] over maximal biprojections b.

    [id : b_K] is the index [K : H], so each term is |H|/|K|.
    """
    total = Fraction(0)
    for k, _elem in maximal_biprojections(ctx):
        total += Fraction(ctx.sub.order, k.order)
    return total


# -- interval contexts --------------------------------------------------------


def step_context(ctx: BoxContext, outer: Subgroup, inner: Subgroup) -> BoxContext:
    """The 2-box context of the biprojection interval [b_outer, b_inner]:
    the inclusion inner <= outer as a context of its own (outer plays the
    group, inner the distinguished subgroup)."""
    require_nested(inner, outer)
    require_nested(ctx.sub, inner)
    lower = compress_lower(ctx, outer)
    small = lower.small
    inner_small = Subgroup(small.group, inner.mask[outer.indices])
    return compress_upper(small, inner_small).small


def top_context(ctx: BoxContext) -> BoxContext:
    """The top interval [meet of maximal biprojections, id]: the inclusion
    of H in the subgroup generated by the minimal overgroups of H."""
    overs = minimal_overgroups(ctx.sub, ctx.group)
    if not overs:
        return ctx
    mask = np.logical_or.reduce([k.mask for k in overs])
    m = subgroup_generated(ctx.group, np.flatnonzero(mask))
    return compress_lower(ctx, m).small


def bottom_context(ctx: BoxContext) -> BoxContext:
    """The bottom interval [e1, join of atoms]: the inclusion in G of the
    intersection of the maximal intermediate subgroups."""
    maxes = maximal_subgroups_over(ctx.sub, ctx.group)
    if not maxes:
        return ctx
    mask = np.logical_and.reduce([k.mask for k in maxes])
    inter = ctx.group.subgroup_from_mask(mask)
    return compress_upper(ctx, inter).small


def lw_rw_cyclic(ctx: BoxContext, k: Subgroup, seed: int = 0) -> Dict[str, bool]:
    """Side-cyclicity of an intermediate subgroup K.

    lw asks for a minimal projection u with <u, b_K> = id and reduces to
    w-cyclicity of the lower interval [H, K] as its own context; rw asks
    for a minimal u with <u> = b_K and reduces to w-cyclicity of the
    upper interval [K, G].  Both hold for instance at K = H (u = e1
    settles lw) and at K = G (rw is w-cyclicity of the trivial context).
    """
    require_nested(ctx.sub, k)
    lower = compress_lower(ctx, k).small
    upper = compress_upper(ctx, k).small
    return {
        "lw": is_w_cyclic(lower, seed=seed) is not None,
        "rw": is_w_cyclic(upper, seed=seed) is not None,
    }


# -- centrality properties ----------------------------------------------------


def _z_violation(ctx: BoxContext, seed: int = 0) -> Optional[int]:
    """Index of a minimal central projection generating a non-central
    biprojection, or None."""
    for i, z in enumerate(minimal_central_projections(ctx, seed=seed)):
        if not is_central(generate_biprojection(z).element):
            return i
    return None


def property_Z(ctx: BoxContext, seed: int = 0) -> bool:
    """Every minimal central projection generates a central biprojection."""
    return _z_violation(ctx, seed=seed) is None


def _zz_violation(ctx: BoxContext) -> Optional[Tuple[int, int]]:
    """Pair of center-basis indices whose coproduct is not central, or None.

    The coproduct is bilinear, so centrality of all basis coproducts is
    equivalent to centrality of x * y for all central x, y.
    """
    basis = center_basis_elements(ctx)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if not is_central(coproduct(a, b)):
                return i, j
    return None


def property_ZZ(ctx: BoxContext) -> bool:
    """The coproduct of any two central elements is central."""
    return _zz_violation(ctx) is None


def dual_coproduct_center_basis(ctx: BoxContext) -> List[DualElement]:
    """Basis of the coproduct-center of the dual algebra.

    The linear bijection between coefficient and coset coordinates turns
    product into coproduct, so the coproduct-center of the dual algebra
    is exactly the primal matrix center carried to coset coordinates.
    """
    return [collapse_dual(ctx, x.coeffs) for x in center_basis_elements(ctx)]


def find_zz_violation_dual(
    ctx: BoxContext,
) -> Optional[Tuple[DualElement, DualElement, DualElement]]:
    """Two dual operators that are coproduct-central while their product is
    not, returned as (x, y, x.y), or None when no such pair exists.

    The search runs over pairs from a basis of the coproduct-center; the
    product is bilinear, so a clean sweep decides the property, and any
    violating pair of operators collapses to a violating basis pair.
    """
    basis = dual_coproduct_center_basis(ctx)
    for x in basis:
        if not is_dual_coproduct_central(x):
            raise TheoremViolation(
                "a primal center basis element lost coproduct-centrality "
                "in coset coordinates"
            )
    for x in basis:
        for y in basis:
            prod = mul_dual(x, y)
            if not is_dual_coproduct_central(prod):
                return x, y, prod
    return None


def _f2_violation(ctx: BoxContext, seed: int = 0) -> Optional[Tuple[int, int]]:
    """Ordered pair (i, j) of block indices with no block r such that
    <z_i, z_r> and <z_r, z_j> both dominate <z_i, z_j>, or None.

    Domination of biprojections reverses subgroup inclusion, so
    <a, c> >= <a, b> means K_{a,c} <= K_{a,b}.
    """
    projs = minimal_central_projections(ctx, seed=seed)
    n = len(projs)
    pair_sub: Dict[Tuple[int, int], Subgroup] = {}

    def gen(i: int, j: int) -> Subgroup:
        key = (min(i, j), max(i, j))
        if key not in pair_sub:
            pair_sub[key] = generate_from_set([projs[key[0]], projs[key[1]]]).subgroup
        return pair_sub[key]

    for i in range(n):
        for j in range(n):
            target = gen(i, j)
            if not any(
                target.mask[gen(i, r).indices].all()
                and target.mask[gen(r, j).indices].all()
                for r in range(n)
            ):
                return i, j
    return None


def property_F2(ctx: BoxContext, seed: int = 0) -> bool:
    """For all minimal central projections p, q there is a minimal central
    r with <p, r> and <r, q> both dominating <p, q>."""
    return _f2_violation(ctx, seed=seed) is None


def property_Z_tilde(ctx: BoxContext, seed: int = 0) -> bool:
    """(Z) holds on every intermediate interval context [K, L], the full
    context included."""
    lat = biprojection_lattice(ctx)
    subs = [k for k, _elem in lat.payload]
    for a in range(lat.n):
        for b in range(lat.n):
            if a != b and lat.leq[a, b]:
                # leq[a, b] means b_{K_a} <= b_{K_b}, i.e. K_b <= K_a
                if not property_Z(step_context(ctx, subs[a], subs[b]), seed=seed):
                    return False
    return True


# -- chain lengths ------------------------------------------------------------


def _length_step_predicate(name: str) -> Callable[[BoxContext], bool]:
    if name == "cl":
        return is_cyclic
    if name == "dl":
        return lambda c: is_distributive(biprojection_lattice(c))[0]
    if name == "tcl":
        return lambda c: is_cyclic(top_context(c))
    if name == "bcl":
        return lambda c: is_cyclic(bottom_context(c))
    m = re.fullmatch(r"([tb])b(\d*)l", name)
    if m is not None:
        side, digits = m.groups()
        pick = top_context if side == "t" else bottom_context
        cap = int(digits) if digits else None

        def pred(c: BoxContext) -> bool:
            rank = boolean_rank(biprojection_lattice(pick(c)))
            if rank is None:
                return False
            return cap is None or rank <= cap

        return pred
    raise ValueError(f"unknown chain-length name: {name!r}")


def _shortest_chain(ctx: BoxContext, pred: Callable[[BoxContext], bool]) -> int:
    """Length of a shortest chain e1 = b_0 < ... < b_l = id whose every
    step interval satisfies pred, by breadth-first search with memoized
    step evaluation.  Cover steps are 2-element intervals and satisfy all
    the step predicates used here, so the top is always reachable."""
    lat = biprojection_lattice(ctx)
    subs = [k for k, _elem in lat.payload]
    memo: Dict[Tuple[int, int], bool] = {}

    def edge_ok(a: int, b: int) -> bool:
        key = (a, b)
        if key not in memo:
            # leq[a, b]: b_{K_a} <= b_{K_b}, so K_b <= K_a and the step
            # interval is the context of K_b inside K_a.
            memo[key] = pred(step_context(ctx, subs[a], subs[b]))
        return memo[key]

    dist = {lat.bottom: 0}
    queue = deque([lat.bottom])
    while queue:
        a = queue.popleft()
        if a == lat.top:
            return dist[a]
        for b in range(lat.n):
            if b != a and lat.leq[a, b] and b not in dist and edge_ok(a, b):
                dist[b] = dist[a] + 1
                queue.append(b)
    raise BiprojectionCheckFailed("no admissible chain reaches the top")


def wcl_generators(
    ctx: BoxContext, seed: int = 0, cap: int = 4
) -> Union[int, Determination]:
    """Minimal number of minimal central projections generating id.

    Subsets are searched smallest-first; the answer past the cap is
    NOT_DETERMINED.  The full set of blocks sums to id and therefore
    always generates it, so with at most `cap` blocks the search cannot
    miss."""
    if ctx.dim == 1:
        return 0  # id = e1 is the biprojection generated by the empty set
    projs = minimal_central_projections(ctx, seed=seed)
    limit = min(cap, len(projs))
    for size in range(1, limit + 1):
        for combo in itertools.combinations(range(len(projs)), size):
            if generate_from_set([projs[i] for i in combo]).subgroup == ctx.sub:
                return size
    if len(projs) <= cap:
        raise BiprojectionCheckFailed(
            "the full set of minimal central projections failed to generate id"
        )
    return NOT_DETERMINED


def lengths(
    ctx: BoxContext,
    which: Tuple[str, ...] = ("cl", "wcl", "dl"),
    seed: int = 0,
) -> Dict[str, Union[int, Determination]]:
    """Chain lengths by name: "wcl" via generator subsets, every other name
    via shortest admissible chains ("cl", "dl", "tcl", "bcl", "tbl",
    "bbl", and capped boolean forms like "tb4l" / "bb4l")."""
    out: Dict[str, Union[int, Determination]] = {}
    for name in which:
        if name == "wcl":
            out[name] = wcl_generators(ctx, seed=seed)
        else:
            out[name] = _shortest_chain(ctx, _length_step_predicate(name))
    return out


# -- the report ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    """All classification predicates of one context, with witnesses.

    sum_bound is exact; lengths values are ints or NOT_DETERMINED."""

    context: str
    group_order: int
    sub_order: int
    distributive: bool
    dedekind: bool
    cyclic: bool
    w_cyclic: bool
    w_plus_cyclic: bool
    Z: bool
    ZZ: bool
    F2: bool
    w_cyclic_dual: bool
    sum_bound: Fraction
    witnesses: Dict[str, object]
    lengths: Dict[str, Union[int, Determination]]

    def to_json_dict(self) -> dict:
        def enc(v: object) -> object:
            return v.value if isinstance(v, Determination) else v

        return {
            "context": self.context,
            "group_order": self.group_order,
            "sub_order": self.sub_order,
            "distributive": self.distributive,
            "dedekind": self.dedekind,
            "cyclic": self.cyclic,
            "w_cyclic": self.w_cyclic,
            "w_plus_cyclic": self.w_plus_cyclic,
            "Z": self.Z,
            "ZZ": self.ZZ,
            "F2": self.F2,
            "w_cyclic_dual": self.w_cyclic_dual,
            "sum_bound": str(self.sum_bound),
            "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)},
            "lengths": {k: enc(v) for k, v in self.lengths.items()},
        }


def _coset_label(ctx: BoxContext, coset: int) -> str:
    rep = int(ctx.coset_reps[coset])
    return ctx.group.elements[rep].cycle_string()


def classify(
    ctx: BoxContext,
    seed: int = 0,
    lengths_which: Tuple[str, ...] = ("cl", "wcl", "dl"),
) -> ClassificationReport:
    """Evaluate every classification predicate on one context.

    Raises TheoremViolation when the hard invariant cyclic => w-cyclic
    fails: that combination can only come from an internal error, never
    from a legitimate input.
    """
    lat = biprojection_lattice(ctx)
    distributive = is_distributive(lat)[0]
    dedekind = is_dedekind(ctx)
    cyclic = distributive and dedekind
    w_found = _w_cyclic_witness(ctx, seed=seed)
    if cyclic and w_found is None:
        raise TheoremViolation("a cyclic context came out not w-cyclic")
    dual_witness = is_w_cyclic_dual(ctx)
    z_bad = _z_violation(ctx, seed=seed)
    zz_bad = _zz_violation(ctx)
    f2_bad = _f2_violation(ctx, seed=seed)
    witnesses: Dict[str, object] = {
        "w_cyclic_block": None if w_found is None else w_found[0],
        "dual_coset": None if dual_witness is None else _coset_label(ctx, dual_witness),
        "z_violation_block": z_bad,
        "zz_violation_pair": None if zz_bad is None else list(zz_bad),
        "f2_violation_pair": None if f2_bad is None else list(f2_bad),
        "maximal_subgroup_orders": sorted(
            k.order for k, _elem in maximal_biprojections(ctx)
        ),
    }
    return ClassificationReport(
        context=f"{ctx.group.label()} over subgroup of order {ctx.sub.order}",
        group_order=ctx.group.order,
        sub_order=ctx.sub.order,
        distributive=distributive,
        dedekind=dedekind,
        cyclic=cyclic,
        w_cyclic=w_found is not None,
        w_plus_cyclic=w_plus_cyclic(ctx),
        Z=z_bad is None,
        ZZ=zz_bad is None,
        F2=f2_bad is None,
        w_cyclic_dual=dual_witness is not None,
        sum_bound=sum_bound(ctx),
        witnesses=witnesses,
        lengths=lengths(ctx, which=lengths_which, seed=seed),
    )


# -- verified implications ------------------------------------------------------


@dataclass(frozen=True)
class ImplicationResult:
    """One implication instance: conclusion is None when not evaluated
    (hypothesis false and the conclusion is expensive)."""

    name: str
    hypothesis: bool
    conclusion: Optional[bool]

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or bool(self.conclusion)


def verify_theorems(ctx: BoxContext, seed: int = 0) -> List[ImplicationResult]:
    """Evaluate the implication battery on one context and return the table.

    Every row is a proved implication, so rows with hypothesis true and
    conclusion false can only arise from an internal error; callers (and
    the test suite) assert `all(r.holds for r in rows)`.
    """
    lat = biprojection_lattice(ctx)
    distributive = is_distributive(lat)[0]
    dedekind = is_dedekind(ctx)
    cyclic = distributive and dedekind
    w = is_w_cyclic(ctx, seed=seed) is not None
    w_plus = w_plus_cyclic(ctx)
    bound = sum_bound(ctx)
    rank = boolean_rank(lat)
    n_maximal = len(lat.coatoms())
    all_central = all(is_central(elem) for _k, elem in lat.payload)
    top_w = is_w_cyclic(top_context(ctx), seed=seed) is not None
    rows = [
        ImplicationResult("cyclic-implies-w-cyclic", cyclic, w),
        ImplicationResult(
            "central-biprojections-and-distributive-imply-w-cyclic",
            all_central and distributive,
            w,
        ),
        ImplicationResult(
            "distributive-and-sum-at-most-2-imply-w-cyclic",
            distributive and bound <= 2,
            w,
        ),
        ImplicationResult("sum-at-most-1-implies-w-cyclic", bound <= 1, w),
        ImplicationResult("at-most-two-maximal-implies-w-cyclic", n_maximal <= 2, w),
        ImplicationResult(
            "boolean-rank-at-most-4-implies-w-cyclic",
            rank is not None and rank <= 4,
            w,
        ),
        ImplicationResult("top-w-cyclic-implies-w-cyclic", top_w, w),
        ImplicationResult("w-plus-implies-w-cyclic", w_plus, w),
        ImplicationResult(
            "dedekind-makes-w-plus-equal-w-cyclic", dedekind, w_plus == w
        ),
        ImplicationResult(
            "dedekind-implies-z-on-all-intervals",
            dedekind,
            property_Z_tilde(ctx, seed=seed) if dedekind else None,
        ),
    ]
    return rows
