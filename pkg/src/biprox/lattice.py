"""Finite lattices: distributivity, modularity, Boolean recognition, intervals.

A lattice is stored as an explicit order matrix plus meet/join index
tables. Distributivity and modularity are decided by the triple
identities (exact, vectorized); when they fail, a forbidden-sublattice
witness (diamond M3 or pentagon N5) is constructed from a failing triple
and verified to be an induced sublattice before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import NotBoolean
from .permgroup import FiniteGroup, Subgroup, interval_subgroups, subgroup_generated


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice on elements 0..n-1.

    ``leq[i, j]`` says i <= j; ``meet``/``join`` are index tables; labels
    are display strings. ``payload`` optionally carries the objects the
    nodes came from (e.g. Subgroup instances for interval lattices).
    """

    n: int
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int
    labels: tuple[str, ...]
    payload: Optional[tuple] = field(default=None, compare=False)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_order(
        leq: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        payload: Optional[tuple] = None,
    ) -> "FiniteLattice":
        """Build from an order matrix, computing meet/join tables."""
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        _check_partial_order(leq)
        meet = np.empty((n, n), dtype=np.int32)
        join = np.empty((n, n), dtype=np.int32)
        down_sizes = leq.sum(axis=0)
        up_sizes = leq.sum(axis=1)
        for i in range(n):
            for j in range(i, n):
                lower = leq[:, i] & leq[:, j]
                candidates = np.flatnonzero(lower)
                m = candidates[np.argmax(down_sizes[candidates])]
                if not np.all(lower <= leq[:, m]):
                    raise ValueError(f"elements {i},{j} have no meet")
                meet[i, j] = meet[j, i] = m
                upper = leq[i, :] & leq[j, :]
                candidates = np.flatnonzero(upper)
                u = candidates[np.argmax(up_sizes[candidates])]
                if not np.all(upper <= leq[u, :]):
                    raise ValueError(f"elements {i},{j} have no join")
                join[i, j] = join[j, i] = u
        bottom = int(np.flatnonzero(leq.sum(axis=1) == n)[0])
        top = int(np.flatnonzero(leq.sum(axis=0) == n)[0])
        if labels is None:
            labels = [str(i) for i in range(n)]
        return FiniteLattice._finish(n, leq, meet, join, bottom, top, tuple(labels), payload)

    @staticmethod
    def _finish(n, leq, meet, join, bottom, top, labels, payload) -> "FiniteLattice":
        leq = np.asarray(leq, dtype=bool).copy()
        leq.setflags(write=False)
        meet = np.asarray(meet, dtype=np.int32).copy()
        meet.setflags(write=False)
        join = np.asarray(join, dtype=np.int32).copy()
        join.setflags(write=False)
        return FiniteLattice(n, leq, meet, join, int(bottom), int(top), labels, payload)

    def validate(self) -> None:
        """Exhaustively check the lattice axioms (meet/join are inf/sup)."""
        leq = self.leq
        n = self.n
        _check_partial_order(leq)
        assert np.all(leq[self.bottom, :]) and np.all(leq[:, self.top])
        lower = leq[:, :, None] & leq[:, None, :]          # (x, i, j)
        sup_of_meet = leq[:, self.meet]                    # (x, i, j)
        assert np.all(lower <= sup_of_meet), "meet is not an upper bound of lower sets"
        mdiag = self.meet[np.arange(n), np.arange(n)]
        assert np.all(mdiag == np.arange(n))
        i_idx = np.arange(n)
        assert np.all(leq[self.meet, i_idx[:, None]]) and np.all(leq[self.meet, i_idx[None, :]])
        # Joins are the meets of the reversed lattice.
        rev = self.reverse()
        lower = rev.leq[:, :, None] & rev.leq[:, None, :]
        assert np.all(lower <= rev.leq[:, rev.meet]), "join is not a lower bound of upper sets"
        assert np.all(rev.leq[rev.meet, i_idx[:, None]]) and np.all(
            rev.leq[rev.meet, i_idx[None, :]]
        )

    # -- structure -------------------------------------------------------

    def covers(self) -> np.ndarray:
        """Boolean matrix: covers()[i, j] iff j covers i."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        through = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
        return strict & ~through

    def atoms(self) -> list[int]:
        return np.flatnonzero(self.covers()[self.bottom]).tolist()

    def coatoms(self) -> list[int]:
        return np.flatnonzero(self.covers()[:, self.top]).tolist()

    def height(self) -> int:
        """Greatest chain length (number of cover steps bottom to top)."""
        cover = self.covers()
        order = np.argsort(self.leq.sum(axis=0))  # by down-set size
        h = np.zeros(self.n, dtype=np.int64)
        for x in order:
            below = np.flatnonzero(cover[:, x])
            if below.size:
                h[x] = 1 + h[below].max()
        return int(h[self.top])

    def reverse(self) -> "FiniteLattice":
        """The order-reversed lattice (a view: no tables are recomputed)."""
        return FiniteLattice(
            self.n, self.leq.T, self.join, self.meet, self.top, self.bottom,
            self.labels, self.payload,
        )

    def interval(self, lo: int, hi: int) -> tuple["FiniteLattice", np.ndarray]:
        """The interval [lo, hi] as a lattice plus the index map back."""
        members = np.flatnonzero(self.leq[lo, :] & self.leq[:, hi])
        return self._restrict(members), members

    def _restrict(self, members: np.ndarray) -> "FiniteLattice":
        pos = {int(m): k for k, m in enumerate(members)}
        sub_meet = self.meet[np.ix_(members, members)]
        sub_join = self.join[np.ix_(members, members)]
        if not all(int(x) in pos for x in np.unique(sub_meet)):
            raise ValueError("subset is not closed under meet")
        if not all(int(x) in pos for x in np.unique(sub_join)):
            raise ValueError("subset is not closed under join")
        remap = np.vectorize(pos.__getitem__, otypes=[np.int32])
        leq = self.leq[np.ix_(members, members)]
        bottom = int(np.flatnonzero(leq.sum(axis=1) == len(members))[0])
        top = int(np.flatnonzero(leq.sum(axis=0) == len(members))[0])
        payload = None
        if self.payload is not None:
            payload = tuple(self.payload[int(m)] for m in members)
        return FiniteLattice._finish(
            len(members), leq, remap(sub_meet), remap(sub_join), bottom, top,
            tuple(self.labels[int(m)] for m in members), payload,
        )

    def induced_sublattice(self, members: Sequence[int]) -> "FiniteLattice":
        """The sublattice on ``members``; raises if not meet/join closed."""
        return self._restrict(np.asarray(sorted(members), dtype=np.int64))

    def top_interval(self) -> tuple["FiniteLattice", np.ndarray]:
        """[B, 1] with B the meet of all coatoms."""
        b = self.top
        for c in self.coatoms():
            b = int(self.meet[b, c])
        return self.interval(b, self.top)

    def bottom_interval(self) -> tuple["FiniteLattice", np.ndarray]:
        """[0, b] with b the join of all atoms."""
        b = self.bottom
        for a in self.atoms():
            b = int(self.join[b, a])
        return self.interval(self.bottom, b)

    def to_dot(self, title: str = "lattice") -> str:
        """Hasse diagram in DOT format (edges are cover relations)."""
        cover = self.covers()
        lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box];"]
        for i in range(self.n):
            label = self.labels[i].replace('"', "'")
            lines.append(f'  n{i} [label="{label}"];')
        for i in range(self.n):
            for j in np.flatnonzero(cover[i]):
                lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if leq.shape != (n, n):
        raise ValueError("leq must be square")
    if not np.all(np.diag(leq)):
        raise ValueError("order is not reflexive")
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        raise ValueError("order is not antisymmetric")
    reach = leq.astype(np.int32) @ leq.astype(np.int32) > 0
    if np.any(reach & ~leq):
        raise ValueError("order is not transitive")
    if not np.any(leq.sum(axis=1) == n):
        raise ValueError("no bottom element")
    if not np.any(leq.sum(axis=0) == n):
        raise ValueError("no top element")


# -- interval lattices of group inclusions ----------------------------------


def from_subgroups(group: FiniteGroup, h: Subgroup) -> FiniteLattice:
    """The interval lattice [H, G], nodes sorted by (order, bitset)."""
    nodes = interval_subgroups(h, group)
    n = len(nodes)
    key_to_idx = {k.key(): i for i, k in enumerate(nodes)}
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            leq[i, j] = a <= b
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if j < i:
                continue
            inter = group.subgroup_from_mask(a.mask & b.mask)
            meet[i, j] = meet[j, i] = key_to_idx[inter.key()]
            joined = subgroup_generated(
                group, np.concatenate([a.indices, b.indices])
            )
            join[i, j] = join[j, i] = key_to_idx[joined.key()]
    labels = []
    for k in nodes:
        gens = k.generator_string()
        labels.append(gens if len(gens) <= 28 else f"order {k.order}")
    return FiniteLattice._finish(
        n, leq, meet, join, 0, n - 1, tuple(labels), tuple(nodes)
    )


# -- distributivity and modularity ------------------------------------------


def _failing_distributive_triple(lat: FiniteLattice) -> Optional[tuple[int, int, int]]:
    """First (a,b,c) with a∨(b∧c) != (a∨b)∧(a∨c), scanning a, then (b,c)."""
    for a in range(lat.n):
        lhs = lat.join[a, lat.meet]                       # (b, c)
        rhs = lat.meet[np.ix_(lat.join[a], lat.join[a])]  # (b, c)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            return a, int(b), int(c)
    return None


def _failing_modular_triple(lat: FiniteLattice) -> Optional[tuple[int, int, int]]:
    """First (a,b,c) with a<=b but a∨(c∧b) != (a∨c)∧b."""
    for a in range(lat.n):
        lhs = lat.join[a, lat.meet]            # (c, b)
        rhs = lat.meet[lat.join[a], :]         # (c, b): meet[a∨c, b]
        bad = (lhs != rhs) & lat.leq[a, :][None, :]
        hits = np.argwhere(bad)
        if hits.size:
            c, b = hits[0]
            return a, int(b), int(c)
    return None


def _is_m3(lat: FiniteLattice, z: int, xs: tuple[int, int, int], t: int) -> bool:
    members = {z, *xs, t}
    if len(members) != 5:
        return False
    for x in xs:
        if not (lat.leq[z, x] and lat.leq[x, t] and x != z and x != t):
            return False
    for x, y in combinations(xs, 2):
        if lat.meet[x, y] != z or lat.join[x, y] != t:
            return False
    return True


def _is_n5(lat: FiniteLattice, z: int, x: int, y: int, w: int, t: int) -> bool:
    if len({z, x, y, w, t}) != 5:
        return False
    chain_ok = lat.leq[z, x] and lat.leq[x, y] and lat.leq[y, t] and x != y
    side_ok = lat.leq[z, w] and lat.leq[w, t]
    if not (chain_ok and side_ok):
        return False
    return (
        lat.meet[x, w] == z
        and lat.meet[y, w] == z
        and lat.join[x, w] == t
        and lat.join[y, w] == t
    )


def _pentagon_witness(lat: FiniteLattice, a: int, b: int, c: int) -> tuple[int, ...]:
    """N5 from a failing modular triple (a <= b, a∨(c∧b) < (a∨c)∧b)."""
    z = int(lat.meet[c, b])
    x = int(lat.join[a, z])
    y = int(lat.meet[lat.join[a, c], b])
    t = int(lat.join[a, c])
    witness = (z, x, y, c, t)
    if not _is_n5(lat, *witness):
        raise RuntimeError("internal error: pentagon construction failed")
    return witness


def _diamond_witness(lat: FiniteLattice, a: int, b: int, c: int) -> tuple[int, ...]:
    """M3 from a failing distributive triple in a modular lattice."""
    meet, join = lat.meet, lat.join
    m = join[join[meet[a, b], meet[b, c]], meet[c, a]]
    j = meet[meet[join[a, b], join[b, c]], join[c, a]]
    x = join[meet[a, j], m]
    y = join[meet[b, j], m]
    z = join[meet[c, j], m]
    witness = (int(m), (int(x), int(y), int(z)), int(j))
    if not _is_m3(lat, witness[0], witness[1], witness[2]):
        raise RuntimeError("internal error: diamond construction failed")
    return (witness[0], *witness[1], witness[2])


def is_modular(lat: FiniteLattice) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether no pentagon N5 embeds; on failure returns an N5 witness
    (z, x, y, w, t) with z < x < y < t the chain and w the side element."""
    triple = _failing_modular_triple(lat)
    if triple is None:
        return True, None
    return False, _pentagon_witness(lat, *triple)


def is_distributive(lat: FiniteLattice) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether no diamond M3 and no pentagon N5 embeds.

    Decided by the triple identity a∨(b∧c) = (a∨b)∧(a∨c); on failure the
    witness 5-tuple is an induced M3 (m, x, y, z, j) or N5 (z, x, y, w, t)
    built from the failing triple.
    """
    triple = _failing_distributive_triple(lat)
    if triple is None:
        return True, None
    modular, pentagon = is_modular(lat)
    if not modular:
        return False, pentagon
    return False, _diamond_witness(lat, *triple)


def find_forbidden_bruteforce(lat: FiniteLattice) -> Optional[tuple[str, tuple[int, ...]]]:
    """Exhaustive 5-subset search for M3/N5 (test oracle; small lattices)."""
    for subset in combinations(range(lat.n), 5):
        for z in subset:
            for t in subset:
                if z == t:
                    continue
                mids = [x for x in subset if x not in (z, t)]
                if _is_m3(lat, z, tuple(mids), t):
                    return "M3", (z, *mids, t)
        for perm_z in subset:
            for perm_t in subset:
                if perm_z == perm_t:
                    continue
                rest = [x for x in subset if x not in (perm_z, perm_t)]
                for w in rest:
                    x, y = [q for q in rest if q != w]
                    for xx, yy in ((x, y), (y, x)):
                        if _is_n5(lat, perm_z, xx, yy, w, perm_t):
                            return "N5", (perm_z, xx, yy, w, perm_t)
    return None


# -- Boolean lattices --------------------------------------------------------


def complement(lat: FiniteLattice, b: int) -> int:
    """The unique complement of ``b`` in a Boolean lattice."""
    if boolean_rank(lat) is None:
        raise NotBoolean("complement is only defined on Boolean lattices")
    hits = [
        c
        for c in range(lat.n)
        if lat.meet[b, c] == lat.bottom and lat.join[b, c] == lat.top
    ]
    assert len(hits) == 1, "Boolean lattice must have unique complements"
    return hits[0]


def boolean_rank(lat: FiniteLattice, max_rank: int = 12) -> Optional[int]:
    """The rank n if the lattice is isomorphic to the subsets of an n-set."""
    atoms = lat.atoms()
    k = len(atoms)
    if lat.n != 2**k or k > max_rank:
        return None
    if not is_distributive(lat)[0]:
        return None
    # Every element must be the join of the atoms below it, bijectively.
    seen = {}
    for subset in range(2**k):
        x = lat.bottom
        for bit in range(k):
            if subset >> bit & 1:
                x = int(lat.join[x, atoms[bit]])
        atom_set = frozenset(a for a in atoms if lat.leq[a, x])
        expect = frozenset(atoms[bit] for bit in range(k) if subset >> bit & 1)
        if atom_set != expect or x in seen:
            return None
        seen[x] = subset
    if len(seen) != lat.n:
        return None
    # Complementedness follows, but check one sample to be explicit.
    for x in range(lat.n):
        comp = seen[x] ^ (2**k - 1)
        y = lat.bottom
        for bit in range(k):
            if comp >> bit & 1:
                y = int(lat.join[y, atoms[bit]])
        if lat.meet[x, y] != lat.bottom or lat.join[x, y] != lat.top:
            return None
    return k


# -- constructors ------------------------------------------------------------


def chain(k: int) -> FiniteLattice:
    """The (k+1)-element chain 0 < 1 < ... < k."""
    n = k + 1
    leq = np.triu(np.ones((n, n), dtype=bool))
    return FiniteLattice.from_order(leq, [str(i) for i in range(n)])


def boolean_lattice(k: int) -> FiniteLattice:
    """The subsets of a k-set ordered by inclusion."""
    n = 2**k
    subsets = np.arange(n)
    leq = (subsets[:, None] & ~subsets[None, :]) == 0
    labels = [format(s, f"0{max(k, 1)}b") for s in subsets]
    return FiniteLattice.from_order(leq, labels)


def diamond_m3() -> FiniteLattice:
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return FiniteLattice.from_order(leq, ["0", "a", "b", "c", "1"])


def pentagon_n5() -> FiniteLattice:
    # 0 < x < y < 1 and 0 < w < 1.
    leq = np.eye(5, dtype=bool)
    order = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)}
    for i, j in order:
        leq[i, j] = True
    return FiniteLattice.from_order(leq, ["0", "x", "y", "w", "1"])


def divisor_lattice(n: int) -> FiniteLattice:
    """Divisors of n under divisibility (the subgroup lattice of Z/n)."""
    divs = [d for d in range(1, n + 1) if n % d == 0]
    count = len(divs)
    leq = np.zeros((count, count), dtype=bool)
    for i, a in enumerate(divs):
        for j, b in enumerate(divs):
            leq[i, j] = b % a == 0
    return FiniteLattice.from_order(leq, [str(d) for d in divs])


def direct_product(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    """Componentwise order on pairs; index packing i = i_a * n_b + i_b."""
    leq = np.kron(a.leq, b.leq).astype(bool)
    meet = a.meet[:, None, :, None] * b.n + b.meet[None, :, None, :]
    join = a.join[:, None, :, None] * b.n + b.join[None, :, None, :]
    n = a.n * b.n
    labels = tuple(
        f"({la},{lb})" for la in a.labels for lb in b.labels
    )
    return FiniteLattice._finish(
        n, leq, meet.reshape(n, n), join.reshape(n, n),
        a.bottom * b.n + b.bottom, a.top * b.n + b.top, labels, None,
    )


def concatenate(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    """Stack b on top of a, identifying top(a) with bottom(b)."""
    # Reindex: a's elements keep their indices; b's elements (except its
    # bottom) follow, in b's order.
    b_map = {}
    nxt = a.n
    for i in range(b.n):
        if i == b.bottom:
            b_map[i] = a.top
        else:
            b_map[i] = nxt
            nxt += 1
    n = a.n + b.n - 1
    leq = np.zeros((n, n), dtype=bool)
    leq[: a.n, : a.n] = a.leq
    for i in range(b.n):
        for j in range(b.n):
            if b.leq[i, j]:
                leq[b_map[i], b_map[j]] = True
    lower = np.arange(a.n)
    upper = np.array([b_map[i] for i in range(b.n)])
    leq[np.ix_(lower, upper)] |= True  # everything in a is below everything in b
    labels = list(a.labels) + [
        b.labels[i] for i in range(b.n) if i != b.bottom
    ]
    return FiniteLattice.from_order(leq, labels)
