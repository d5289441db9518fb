"""Built-in group catalog and group/subgroup specification parsing.

Catalog names (case-sensitive):

* ``Z<n>``      cyclic of order n, 1 <= n <= 48 (so ``Z30`` is included)
* ``D<n>``      dihedral of order 2n, 2 <= n <= 24
* ``Dic<n>``    dicyclic of order 4n, 2 <= n <= 12 (``Dic2`` = quaternions)
* ``S<n>``      symmetric of degree n, 1 <= n <= 5
* ``A<n>``      alternating of degree n, 3 <= n <= 5
* ``Q8``        the quaternion group (alias of ``Dic2``)
* ``SL23``      SL(2,3), acting on the 8 nonzero vectors of F_3^2
* ``E<2^k>``    elementary abelian (Z/2)^k, 1 <= k <= 4 (``E4`` aka ``V4``)

Group spec grammar accepted everywhere a group is named:
``<catalog name>`` | ``perm:<cycle generators>`` | ``file:<path>`` where the
file holds one cycle-notation generator list (semicolons or newlines).
Larger named examples such as PSL(2,11) are deliberately not built in; load
them from a generator file.
"""

from __future__ import annotations

import itertools
import re
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import GroupSpecError
from .permgroup import (
    FiniteGroup,
    Permutation,
    Subgroup,
    group_closure,
    parse_generators,
    regular_representation,
    subgroup_generated,
)

_cache: dict[str, FiniteGroup] = {}


def _cycle(degree: int, *cycles: tuple[int, ...]) -> Permutation:
    images = list(range(degree))
    for cyc in cycles:
        for src, dst in zip(cyc, cyc[1:] + cyc[:1]):
            images[src] = dst
    return Permutation(tuple(images))


def _cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([Permutation.identity(1)], name="Z1")
    return group_closure([_cycle(n, tuple(range(n)))], max_order=n, name=f"Z{n}")


def _dihedral(n: int) -> FiniteGroup:
    # Degree-n natural action fails for n = 2 (the flip fixes both points),
    # so D2 is built as two disjoint transpositions.
    if n == 2:
        gens = [_cycle(4, (0, 1)), _cycle(4, (2, 3))]
    else:
        rot = _cycle(n, tuple(range(n)))
        flip = Permutation(tuple((n - i) % n for i in range(n)))
        gens = [rot, flip]
    return group_closure(gens, max_order=2 * n, name=f"D{n}")


def _dicyclic(n: int) -> FiniteGroup:
    order = 4 * n
    two_n = 2 * n

    def enc(i: int, eps: int) -> int:
        return (i % two_n) * 2 + eps

    table = np.empty((order, order), dtype=np.int64)
    for i, eps1 in itertools.product(range(two_n), range(2)):
        for j, eps2 in itertools.product(range(two_n), range(2)):
            if eps1 == 0:
                product = enc(i + j, eps2)
            elif eps2 == 0:
                product = enc(i - j, 1)
            else:
                product = enc(i - j + n, 0)
            table[enc(i, eps1), enc(j, eps2)] = product
    return regular_representation(table, name=f"Dic{n}")


def _symmetric(n: int) -> FiniteGroup:
    perms = [Permutation(images) for images in itertools.permutations(range(max(n, 1)))]
    return FiniteGroup(perms, name=f"S{n}")


def _alternating(n: int) -> FiniteGroup:
    def sign(images: tuple[int, ...]) -> int:
        swaps = 0
        seen = [False] * len(images)
        for start in range(len(images)):
            if seen[start]:
                continue
            length, point = 0, start
            while not seen[point]:
                seen[point] = True
                point = images[point]
                length += 1
            swaps += length - 1
        return -1 if swaps % 2 else 1

    perms = [
        Permutation(images)
        for images in itertools.permutations(range(n))
        if sign(images) == 1
    ]
    return FiniteGroup(perms, name=f"A{n}")


def _sl23() -> FiniteGroup:
    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    vid = {v: i for i, v in enumerate(vectors)}

    def mat_perm(m: tuple[tuple[int, int], tuple[int, int]]) -> Permutation:
        return Permutation(
            tuple(
                vid[((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)]
                for a, b in vectors
            )
        )

    s = mat_perm(((0, 2), (1, 0)))
    t = mat_perm(((1, 1), (0, 1)))
    return group_closure([s, t], max_order=24, name="SL23")


def _elementary_abelian(k: int) -> FiniteGroup:
    gens = [_cycle(2 * k, (2 * i, 2 * i + 1)) for i in range(k)]
    return group_closure(gens, max_order=2**k, name=f"E{2 ** k}")


def catalog_names() -> list[str]:
    """All catalog names in a fixed, documented order."""
    names = [f"Z{n}" for n in range(1, 49)]
    names += [f"D{n}" for n in range(2, 25)]
    names += [f"Dic{n}" for n in range(2, 13)]
    names += [f"S{n}" for n in range(1, 6)]
    names += [f"A{n}" for n in range(3, 6)]
    names += ["Q8", "SL23", "E2", "E4", "V4", "E8", "E16"]
    return names


def catalog_group(name: str) -> FiniteGroup:
    """Look up (and cache) a catalog group by name."""
    if name in _cache:
        return _cache[name]
    group: Optional[FiniteGroup] = None
    if match := re.fullmatch(r"Z(\d+)", name):
        n = int(match.group(1))
        if 1 <= n <= 48:
            group = _cyclic(n)
    elif match := re.fullmatch(r"D(\d+)", name):
        n = int(match.group(1))
        if 2 <= n <= 24:
            group = _dihedral(n)
    elif match := re.fullmatch(r"Dic(\d+)", name):
        n = int(match.group(1))
        if 2 <= n <= 12:
            group = _dicyclic(n)
    elif match := re.fullmatch(r"S(\d)", name):
        n = int(match.group(1))
        if 1 <= n <= 5:
            group = _symmetric(n)
    elif match := re.fullmatch(r"A(\d)", name):
        n = int(match.group(1))
        if 3 <= n <= 5:
            group = _alternating(n)
    elif name == "Q8":
        group = _dicyclic(2)
        group.name = "Q8"
    elif name == "SL23":
        group = _sl23()
    elif name == "V4":
        group = _elementary_abelian(2)
        group.name = "V4"
    elif match := re.fullmatch(r"E(\d+)", name):
        size = int(match.group(1))
        if size in (2, 4, 8, 16):
            group = _elementary_abelian(size.bit_length() - 1)
    if group is None:
        raise GroupSpecError(f"unknown catalog group {name!r}")
    _cache[name] = group
    return group


def parse_group_spec(spec: str, max_order: int = 400) -> FiniteGroup:
    """Resolve a group spec: catalog name, ``perm:...``, or ``file:path``."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        text = spec[len("perm:"):]
        try:
            gens = parse_generators(text)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from exc
        return group_closure(gens, max_order=max_order, name=f"perm:{text.strip()}")
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        if not path.is_file():
            raise GroupSpecError(f"generator file not found: {path}")
        text = ";".join(
            line for line in path.read_text().splitlines() if line.strip()
        )
        try:
            gens = parse_generators(text)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from exc
        return group_closure(gens, max_order=max_order, name=path.name)
    try:
        return catalog_group(spec)
    except GroupSpecError:
        raise GroupSpecError(
            f"unknown group spec {spec!r}; use a catalog name, 'perm:...', or 'file:...'"
        ) from None


def parse_subgroup_spec(group: FiniteGroup, spec: str) -> Subgroup:
    """Resolve a subgroup spec inside ``group``.

    Accepts ``trivial``, ``full``, or a cycle-notation generator list
    (optionally prefixed ``perm:``) whose permutations must lie in the group.
    """
    spec = spec.strip()
    if spec in ("trivial", "1", "{1}"):
        return group.trivial_subgroup()
    if spec in ("full", "G"):
        return group.full_subgroup()
    if spec.startswith("perm:"):
        spec = spec[len("perm:"):]
    try:
        gens = parse_generators(spec, degree=group.degree)
    except ValueError as exc:
        raise GroupSpecError(str(exc)) from exc
    try:
        indices = {group.index_of(p) for p in gens}
    except KeyError as exc:
        raise GroupSpecError(f"generator outside the group: {exc}") from exc
    return subgroup_generated(group, indices)
