"""Finite permutation groups: closure, subgroups, cosets, conjugation.

Conventions
-----------
* Permutations act on points ``0..degree-1``; ``(p * q)(i) = p(q(i))``.
* Cycle-notation I/O is 1-based ("(1,2)(3,4)"), internals are 0-based.
* ``FiniteGroup.elements`` is sorted by lexicographic image tuple, which
  makes Cayley tables, subgroup bitsets, and everything built on top of
  them reproducible across runs and platforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    NotNested,
    OrderCapExceeded,
    SubgroupCapExceeded,
)

DEFAULT_ORDER_CAP = 400
DEFAULT_SUBGROUP_CAP = 20_000

_CYCLE_RE = re.compile(r"\(\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0..degree-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"images {self.images!r} are not a bijection on 0..{n - 1}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def order(self) -> int:
        power = self
        n = 1
        while not power.is_identity():
            power = power * self
            n += 1
        return n

    def extended(self, degree: int) -> "Permutation":
        """The same permutation acting on a larger point set."""
        if degree < self.degree:
            raise DegreeMismatch(f"cannot shrink degree {self.degree} to {degree}")
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles on 0-based points, each starting at its minimum."""
        seen = [False] * self.degree
        out: list[tuple[int, ...]] = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        """1-based cycle notation; the identity prints as ``()``."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in cycle) + ")" for cycle in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse one permutation in 1-based cycle notation, e.g. "(1,2)(3,4)".

    The degree is inferred from the largest moved point unless given.
    "()" and the empty string parse to the identity.
    """
    stripped = text.strip()
    body = _CYCLE_RE.findall(stripped)
    leftover = _CYCLE_RE.sub("", stripped).replace("()", "").strip()
    if leftover:
        raise ValueError(f"unparsable cycle notation: {text!r}")
    points_used = [int(p) for group in body for p in group.split(",")]
    if any(p < 1 for p in points_used):
        raise ValueError(f"cycle notation is 1-based; got point {min(points_used)}")
    inferred = max(points_used, default=1)
    if degree is None:
        degree = inferred
    elif inferred > degree:
        raise ValueError(f"point {inferred} exceeds degree {degree}")
    images = list(range(degree))
    for group in body:
        cycle = [int(p) - 1 for p in group.split(",")]
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"repeated point in cycle {group!r}")
        for src, dst in zip(cycle, cycle[1:] + cycle[:1]):
            images[src] = dst
    return Permutation(tuple(images))


def parse_generators(text: str, degree: Optional[int] = None) -> list[Permutation]:
    """Parse semicolon-separated generators in cycle notation at one degree."""
    parts = [part for part in (p.strip() for p in text.split(";")) if part]
    if degree is None:
        degree = 1
        for part in parts:
            points = [int(p) for group in _CYCLE_RE.findall(part) for p in group.split(",")]
            degree = max([degree, *points])
    return [parse_cycles(part, degree) for part in parts]


class FiniteGroup:
    """A finite permutation group with a full Cayley table.

    Elements are indexed 0..order-1 in lexicographic image order; all
    subgroup and coset machinery works on these indices. Instances are
    immutable after construction and cache derived data (subgroup lists,
    conjugacy classes) on first use.
    """

    def __init__(self, elements: Sequence[Permutation], name: Optional[str] = None):
        if not elements:
            raise ValueError("a group needs at least the identity")
        degree = elements[0].degree
        if any(e.degree != degree for e in elements):
            raise DegreeMismatch("elements of mixed degree")
        ordered = sorted(set(elements), key=lambda e: e.images)
        self.elements: tuple[Permutation, ...] = tuple(ordered)
        self.degree = degree
        self.order = len(ordered)
        self.name = name
        self._index = {e.images: i for i, e in enumerate(ordered)}
        cayley = np.empty((self.order, self.order), dtype=np.int32)
        for i, a in enumerate(ordered):
            for j, b in enumerate(ordered):
                product = tuple(a.images[b.images[k]] for k in range(degree))
                try:
                    cayley[i, j] = self._index[product]
                except KeyError:
                    raise ValueError("element list is not closed under products") from None
        cayley.setflags(write=False)
        self.cayley = cayley
        identity = Permutation.identity(degree)
        self.identity_index = self._index[identity.images]
        inverse = np.empty(self.order, dtype=np.int32)
        for i in range(self.order):
            matches = np.flatnonzero(cayley[i] == self.identity_index)
            inverse[i] = matches[0]
        inverse.setflags(write=False)
        self.inverse = inverse
        self._subgroups: Optional[list[Subgroup]] = None
        self._conjugacy_classes: Optional[list[np.ndarray]] = None

    # -- basics ---------------------------------------------------------

    def index_of(self, perm: Permutation) -> int:
        try:
            return self._index[perm.images]
        except KeyError:
            raise KeyError(f"{perm!r} is not an element of this group") from None

    def mul(self, i: int, j: int) -> int:
        return int(self.cayley[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def conjugate(self, g: int, x: int) -> int:
        """g x g^{-1} by index."""
        return int(self.cayley[self.cayley[g, x], self.inverse[g]])

    def element_orders(self) -> np.ndarray:
        orders = np.empty(self.order, dtype=np.int64)
        for i in range(self.order):
            n, j = 1, i
            while j != self.identity_index:
                j = int(self.cayley[j, i])
                n += 1
            orders[i] = n
        return orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def label(self) -> str:
        return self.name or f"group of order {self.order} on {self.degree} points"

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label()}, order={self.order})"

    # -- subgroups ------------------------------------------------------

    def subgroup_from_mask(self, mask: np.ndarray) -> "Subgroup":
        return Subgroup(self, mask)

    def subgroup_from_indices(self, indices: Iterable[int]) -> "Subgroup":
        mask = np.zeros(self.order, dtype=bool)
        mask[list(indices)] = True
        mask[self.identity_index] = True
        return Subgroup(self, mask)

    def subgroup_from_perms(self, perms: Iterable[Permutation]) -> "Subgroup":
        return subgroup_generated(self, {self.index_of(p) for p in perms})

    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup_from_indices([self.identity_index])

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool))

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Element indices grouped by conjugacy, each class sorted."""
        if self._conjugacy_classes is None:
            seen = np.zeros(self.order, dtype=bool)
            classes = []
            all_g = np.arange(self.order)
            for x in range(self.order):
                if seen[x]:
                    continue
                orbit = np.unique(self.cayley[self.cayley[all_g, x], self.inverse[all_g]])
                seen[orbit] = True
                classes.append(orbit)
            self._conjugacy_classes = classes
        return self._conjugacy_classes


class Subgroup:
    """A subgroup of a fixed parent group, stored as a boolean member mask."""

    def __init__(self, parent: FiniteGroup, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool).copy()
        if mask.shape != (parent.order,):
            raise ValueError("mask length must equal the parent group order")
        if not mask[parent.identity_index]:
            raise ValueError("a subgroup must contain the identity")
        mask.setflags(write=False)
        self.parent = parent
        self.mask = mask
        self.indices = np.flatnonzero(mask)
        self.order = int(mask.sum())
        if parent.order % self.order != 0:
            raise ValueError("member count does not divide the group order")

    def key(self) -> bytes:
        """Canonical hashable identity of the member set."""
        return np.packbits(self.mask).tobytes()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(other.mask, self.mask)
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key()))

    def __le__(self, other: "Subgroup") -> bool:
        return bool(np.all(other.mask[self.indices]))

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and self <= other

    def contains(self, index: int) -> bool:
        return bool(self.mask[index])

    def is_closed(self) -> bool:
        products = self.parent.cayley[np.ix_(self.indices, self.indices)]
        return bool(np.all(self.mask[products]))

    def is_normal(self) -> bool:
        g = np.arange(self.parent.order)
        for h in self.indices:
            conj = self.parent.cayley[self.parent.cayley[g, h], self.parent.inverse[g]]
            if not np.all(self.mask[conj]):
                return False
        return True

    def conjugated_by(self, g: int) -> "Subgroup":
        conj = self.parent.cayley[
            self.parent.cayley[g, self.indices], self.parent.inverse[g]
        ]
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[conj] = True
        return Subgroup(self.parent, mask)

    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def perms(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in self.indices]

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """Materialize this subgroup as a standalone FiniteGroup."""
        return FiniteGroup(self.perms(), name=name)

    def generator_string(self) -> str:
        """Cycle notation for a small generating set (1-based, semicolons)."""
        gens = generating_indices(self)
        if not gens:
            return "()"
        return "; ".join(self.parent.elements[i].cycle_string() for i in gens)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.label()})"


# -- construction ---------------------------------------------------------


def group_closure(
    generators: Sequence[Permutation],
    max_order: int = DEFAULT_ORDER_CAP,
    name: Optional[str] = None,
) -> FiniteGroup:
    """The group generated by ``generators``, capped at ``max_order`` elements."""
    if generators:
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise DegreeMismatch("generators of mixed degree")
    else:
        degree = 1
    identity = Permutation.identity(degree)
    seen: dict[tuple[int, ...], Permutation] = {identity.images: identity}
    frontier = [identity]
    while frontier:
        nxt: list[Permutation] = []
        for word in frontier:
            for gen in generators:
                product = word * gen
                if product.images not in seen:
                    seen[product.images] = product
                    nxt.append(product)
                    if len(seen) > max_order:
                        raise OrderCapExceeded(
                            f"closure exceeded max_order={max_order}"
                        )
        frontier = nxt
    return FiniteGroup(list(seen.values()), name=name)


def subgroup_generated(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``group`` containing the seed element indices.

    Closure by right-multiplication with the seed: every word in the seed
    elements is reached, and in a finite group the word closure is already
    a subgroup (inverses are positive powers).
    """
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity_index] = True
    gens = np.array(sorted({int(i) for i in seed}), dtype=np.int64)
    if gens.size == 0:
        return Subgroup(group, mask)
    frontier = gens[~mask[gens]]
    mask[frontier] = True
    while frontier.size:
        products = np.unique(group.cayley[np.ix_(frontier, gens)])
        frontier = products[~mask[products]]
        mask[frontier] = True
    return Subgroup(group, mask)


def generating_indices(sub: Subgroup) -> list[int]:
    """A small (greedy) generating list of element indices for ``sub``."""
    group = sub.parent
    gens: list[int] = []
    have = group.trivial_subgroup()
    # Largest element order first keeps the list short for cyclic-ish groups.
    orders = group.element_orders()
    candidates = sorted(sub.indices.tolist(), key=lambda i: (-orders[i], i))
    for i in candidates:
        if have.order == sub.order:
            break
        if not have.mask[i]:
            have = subgroup_generated(group, [*gens, i])
            gens.append(i)
    return gens


def all_subgroups(
    group: FiniteGroup,
    count_cap: int = DEFAULT_SUBGROUP_CAP,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> list[Subgroup]:
    """Every subgroup of ``group``, sorted by (order, bitset key).

    Enumeration: all cyclic subgroups, then closure under pairwise join
    with a worklist. Exact for any finite group; capped for desk scale.
    """
    if group.order > order_cap:
        raise OrderCapExceeded(
            f"|G| = {group.order} exceeds the enumeration cap {order_cap}"
        )
    if group._subgroups is not None and count_cap >= len(group._subgroups):
        return list(group._subgroups)
    found: dict[bytes, Subgroup] = {}

    def add(sub: Subgroup) -> bool:
        key = sub.key()
        if key in found:
            return False
        if len(found) >= count_cap:
            raise SubgroupCapExceeded(f"more than {count_cap} subgroups")
        found[key] = sub
        return True

    add(group.trivial_subgroup())
    for i in range(group.order):
        add(subgroup_generated(group, [i]))
    worklist = list(found.values())
    while worklist:
        current = worklist.pop()
        for other in list(found.values()):
            if current <= other or other <= current:
                continue
            joined = subgroup_generated(
                group, np.concatenate([current.indices, other.indices])
            )
            if add(joined):
                worklist.append(joined)
    result = sorted(found.values(), key=lambda s: (s.order, s.key()))
    group._subgroups = result
    return list(result)


# -- cosets and normality --------------------------------------------------


def left_coset(group: FiniteGroup, g: int, sub: Subgroup) -> np.ndarray:
    return np.unique(group.cayley[g, sub.indices])


def double_coset(group: FiniteGroup, a: Subgroup, g: int, b: Subgroup) -> np.ndarray:
    """Sorted element indices of the double coset AgB."""
    ag = group.cayley[a.indices, g]
    return np.unique(group.cayley[np.ix_(ag, b.indices)])


def double_cosets(group: FiniteGroup, a: Subgroup, b: Subgroup) -> list[np.ndarray]:
    """All A\\G/B double cosets, ordered by minimal element index."""
    seen = np.zeros(group.order, dtype=bool)
    out = []
    for g in range(group.order):
        if seen[g]:
            continue
        coset = double_coset(group, a, g, b)
        seen[coset] = True
        out.append(coset)
    return out


def core(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``group`` contained in ``sub``."""
    mask = sub.mask.copy()
    for g in range(group.order):
        conj = group.cayley[group.cayley[g, sub.indices], group.inverse[g]]
        conj_mask = np.zeros(group.order, dtype=bool)
        conj_mask[conj] = True
        mask &= conj_mask
        if mask.sum() == 1:
            break
    return Subgroup(group, mask)


def center_subgroup(group: FiniteGroup) -> Subgroup:
    """Elements commuting with everything."""
    mask = np.all(group.cayley == group.cayley.T, axis=1)
    return Subgroup(group, mask)


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators g^-1 h^-1 g h = (hg)^-1 (gh)."""
    commutators = group.cayley[group.inverse[group.cayley.T], group.cayley]
    return subgroup_generated(group, np.unique(commutators))


def require_nested(inner: Subgroup, outer: Subgroup) -> None:
    if inner.parent is not outer.parent or not inner <= outer:
        raise NotNested(f"{inner!r} is not contained in {outer!r}")


def is_normal_intermediate(h: Subgroup, k: Subgroup, group: FiniteGroup) -> bool:
    """Whether HgK = KgH for every g (one representative per double coset)."""
    if h.parent is not group or k.parent is not group:
        raise NotNested("H and K must be subgroups of G")
    require_nested(h, k)
    seen = np.zeros(group.order, dtype=bool)
    for g in range(group.order):
        if seen[g]:
            continue
        hgk = double_coset(group, h, g, k)
        seen[hgk] = True
        kgh = double_coset(group, k, g, h)
        if hgk.shape != kgh.shape or not np.array_equal(hgk, kgh):
            return False
    return True


def interval_subgroups(h: Subgroup, group: FiniteGroup) -> list[Subgroup]:
    """All K with H <= K <= G, sorted by (order, bitset key)."""
    require_nested(h, group.full_subgroup())
    return [s for s in all_subgroups(group) if h <= s]


def minimal_overgroups(h: Subgroup, group: FiniteGroup) -> list[Subgroup]:
    """Atoms of the interval [H, G]."""
    interval = [s for s in interval_subgroups(h, group) if h < s]
    return [s for s in interval if not any(t < s for t in interval)]


def maximal_subgroups_over(h: Subgroup, group: FiniteGroup) -> list[Subgroup]:
    """Coatoms of the interval [H, G]."""
    full = group.full_subgroup()
    interval = [s for s in interval_subgroups(h, group) if s < full]
    return [s for s in interval if not any(s < t for t in interval)]


# -- quotients --------------------------------------------------------------


def quotient_group(
    group: FiniteGroup, normal: Subgroup, name: Optional[str] = None
) -> tuple[FiniteGroup, np.ndarray]:
    """The quotient G/N as a permutation group on the left cosets of N.

    Returns the quotient and the projection array mapping each element
    index of G to its image's index in the quotient.
    """
    if not normal.is_normal():
        raise ValueError("quotient requires a normal subgroup")
    coset_id = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in range(group.order):
        if coset_id[g] >= 0:
            continue
        coset = left_coset(group, g, normal)
        coset_id[coset] = len(reps)
        reps.append(g)
    n_cosets = len(reps)
    images = {}
    for g in range(group.order):
        image = tuple(int(coset_id[group.cayley[g, r]]) for r in reps)
        images.setdefault(image, g)
    quotient = FiniteGroup([Permutation(img) for img in images], name=name)
    projection = np.empty(group.order, dtype=np.int64)
    for g in range(group.order):
        image = tuple(int(coset_id[group.cayley[g, r]]) for r in reps)
        projection[g] = quotient.index_of(Permutation(image))
    return quotient, projection


def subgroup_index(h: Subgroup, group: FiniteGroup) -> Fraction:
    """[G : H] as an exact rational (always an integer by Lagrange)."""
    return Fraction(group.order, h.order)


def regular_representation(table: np.ndarray, name: Optional[str] = None) -> FiniteGroup:
    """Build a FiniteGroup from an abstract multiplication table.

    ``table[i][j]`` is the index of the product; the regular action
    ``k -> table[i][k]`` of each row is taken as a permutation. Faithful
    for any group, at the price of degree = order.
    """
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    perms = [Permutation(tuple(int(x) for x in table[i])) for i in range(n)]
    return FiniteGroup(perms, name=name)


def iter_elements(group: FiniteGroup) -> Iterator[tuple[int, Permutation]]:
    return enumerate(group.elements)
