"""Tests for finite lattices and subgroup interval lattices.

Oracle values in this file were derived independently:
  - subgroup lattices of Z/6, (Z/2)^2, S3, Q8, Z/12 written out by hand
    (their subgroups are standard and few);
  - the interval [S2, S4] was enumerated by hand: above <(12)> sit
    <(12),(34)> (order 4), the two symmetric groups on {1,2,3} and
    {1,2,4} (order 6), the dihedral group <(12),(34),(13)(24)> (order 8);
  - forbidden-sublattice answers are cross-checked in-file against an
    exhaustive 5-subset search (find_forbidden_bruteforce).
"""

from __future__ import annotations

import numpy as np
import pytest

from biprox.catalog import catalog_group
from biprox.errors import NotBoolean
from biprox.lattice import (
    FiniteLattice,
    boolean_lattice,
    boolean_rank,
    chain,
    complement,
    concatenate,
    diamond_m3,
    direct_product,
    divisor_lattice,
    find_forbidden_bruteforce,
    from_subgroups,
    is_distributive,
    is_modular,
    pentagon_n5,
    _is_m3,
    _is_n5,
)
from biprox.permgroup import parse_cycles, subgroup_generated


def interval(group_name: str, *subgroup_cycles: str) -> FiniteLattice:
    g = catalog_group(group_name)
    if subgroup_cycles:
        idx = [g.index_of(parse_cycles(c, degree=g.degree)) for c in subgroup_cycles]
        h = subgroup_generated(g, idx)
    else:
        h = g.trivial_subgroup()
    return from_subgroups(g, h)


# ---------------------------------------------------------------- basics


@pytest.mark.parametrize(
    "lat",
    [
        chain(0),
        chain(3),
        boolean_lattice(0),
        boolean_lattice(3),
        diamond_m3(),
        pentagon_n5(),
        divisor_lattice(12),
        divisor_lattice(30),
    ],
    ids=["chain0", "chain3", "b0", "b3", "m3", "n5", "div12", "div30"],
)
def test_validate_factories(lat: FiniteLattice) -> None:
    lat.validate()


def test_chain_shape() -> None:
    lat = chain(4)
    assert lat.n == 5
    assert lat.height() == 4
    assert lat.bottom == 0 and lat.top == 4
    assert lat.atoms() == [1] and lat.coatoms() == [3]
    assert lat.meet[1, 3] == 1 and lat.join[1, 3] == 3


def test_boolean_lattice_shape() -> None:
    lat = boolean_lattice(3)
    assert lat.n == 8
    assert lat.height() == 3
    assert len(lat.atoms()) == 3 and len(lat.coatoms()) == 3
    # meet/join are bitwise and/or on the subset labels
    assert lat.meet[3, 5] == 1 and lat.join[3, 5] == 7


def test_divisor_lattice_is_gcd_lcm() -> None:
    lat = divisor_lattice(12)
    divs = [int(s) for s in lat.labels]
    assert divs == [1, 2, 3, 4, 6, 12]
    for i, a in enumerate(divs):
        for j, b in enumerate(divs):
            assert divs[lat.meet[i, j]] == np.gcd(a, b)
            assert divs[lat.join[i, j]] == np.lcm(a, b)


def test_from_order_rejects_non_lattices() -> None:
    # Two maximal elements: no top, and {a,b} has no join.
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[0, 2] = True
    with pytest.raises(ValueError):
        FiniteLattice.from_order(leq)
    # Non-transitive relation.
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 2] = True
    with pytest.raises(ValueError):
        FiniteLattice.from_order(leq)


def test_reverse_swaps_everything() -> None:
    lat = divisor_lattice(12)
    rev = lat.reverse()
    rev.validate()
    assert rev.bottom == lat.top and rev.top == lat.bottom
    assert np.array_equal(rev.meet, lat.join)
    assert np.array_equal(rev.leq, lat.leq.T)
    back = rev.reverse()
    assert np.array_equal(back.leq, lat.leq)


# ------------------------------------------------- subgroup interval lattices


def test_interval_z6() -> None:
    # Z/6 has subgroups of orders 1, 2, 3, 6 only.
    lat = interval("Z6")
    assert lat.n == 4
    assert [s.order for s in lat.payload] == [1, 2, 3, 6]
    assert lat.height() == 2
    ok, witness = is_distributive(lat)
    assert ok and witness is None
    assert boolean_rank(lat) == 2


def test_interval_v4_is_diamond() -> None:
    # (Z/2)^2: trivial, three order-2 subgroups, full group — the diamond M3.
    lat = interval("E4")
    assert lat.n == 5
    ok, witness = is_distributive(lat)
    assert not ok
    assert witness is not None and _is_m3(lat, witness[0], witness[1:4], witness[4])
    assert is_modular(lat)[0]


def test_interval_s3() -> None:
    # S3: trivial, three <transposition>, A3, S3.
    lat = interval("S3")
    assert lat.n == 6
    assert sorted(s.order for s in lat.payload) == [1, 2, 2, 2, 3, 6]
    assert lat.height() == 2
    ok, witness = is_distributive(lat)
    assert not ok and _is_m3(lat, witness[0], witness[1:4], witness[4])
    assert is_modular(lat)[0]  # all chains are short; no pentagon fits
    assert boolean_rank(lat) is None


def test_interval_q8_modular_not_distributive() -> None:
    # Q8 is Hamiltonian: every subgroup normal, lattice modular; its three
    # order-4 subgroups over the centre form a diamond.
    lat = interval("Q8")
    assert lat.n == 6
    assert is_modular(lat)[0]
    ok, witness = is_distributive(lat)
    assert not ok and _is_m3(lat, witness[0], witness[1:4], witness[4])


def test_interval_s2_s4_pentagon() -> None:
    # [<(12)>, S4]: six nodes of orders 2,4,6,6,8,24; contains the pentagon
    # <(12)> < <(12),(34)> < dihedral-8 < S4 with side S{1,2,3}.
    lat = interval("S4", "(1,2)")
    assert lat.n == 6
    assert [s.order for s in lat.payload] == [2, 4, 6, 6, 8, 24]
    modular, pent = is_modular(lat)
    assert not modular
    assert _is_n5(lat, *pent)
    ok, witness = is_distributive(lat)
    assert not ok and _is_n5(lat, *witness)


def test_interval_s4_full() -> None:
    lat = interval("S4")
    assert lat.n == 30
    assert lat.height() == 4  # 1 < C2 < V4 < D8 < S4
    ok, witness = is_distributive(lat)
    assert not ok
    kind = "M3" if _is_m3(lat, witness[0], witness[1:4], witness[4]) else "N5"
    if kind == "N5":
        assert _is_n5(lat, *witness)
    lat.validate()


def test_payload_and_labels() -> None:
    lat = interval("S3")
    assert lat.payload[lat.bottom].order == 1
    assert lat.payload[lat.top].order == 6
    assert len(lat.labels) == lat.n


# ---------------------------------------------------- witnesses vs brute force


BRUTE_CASES = [
    ("chain3", lambda: chain(3), True),
    ("b2", lambda: boolean_lattice(2), True),
    ("b3", lambda: boolean_lattice(3), True),
    ("m3", diamond_m3, False),
    ("n5", pentagon_n5, False),
    ("div12", lambda: divisor_lattice(12), True),
    ("div30", lambda: divisor_lattice(30), True),
    ("Z6", lambda: interval("Z6"), True),
    ("E4", lambda: interval("E4"), False),
    ("S3", lambda: interval("S3"), False),
    ("Q8", lambda: interval("Q8"), False),
    ("S2S4", lambda: interval("S4", "(1,2)"), False),
    ("A4", lambda: interval("A4"), False),
    ("D4", lambda: interval("D4"), False),
]


@pytest.mark.parametrize(
    "make,expected", [(m, e) for _, m, e in BRUTE_CASES], ids=[i for i, _, _ in BRUTE_CASES]
)
def test_distributive_agrees_with_bruteforce(make, expected: bool) -> None:
    # Independent check: the triple-identity decision must match an
    # exhaustive search for induced M3/N5 five-element sublattices.
    lat = make()
    assert lat.n <= 12, "brute force oracle is limited to small lattices"
    ok, witness = is_distributive(lat)
    brute = find_forbidden_bruteforce(lat)
    assert ok == (brute is None) == expected
    if not ok:
        assert witness is not None and len(set(witness)) == 5
        # the witness must itself be a closed (induced) sublattice
        sub = lat.induced_sublattice(sorted(witness))
        assert sub.n == 5


@pytest.mark.parametrize(
    "make,expected",
    [
        (lambda: chain(4), True),
        (diamond_m3, True),
        (pentagon_n5, False),
        (lambda: interval("S3"), True),
        (lambda: interval("Q8"), True),
        (lambda: interval("S4", "(1,2)"), False),
    ],
    ids=["chain4", "m3", "n5", "S3", "Q8", "S2S4"],
)
def test_modularity_oracles(make, expected: bool) -> None:
    lat = make()
    modular, witness = is_modular(lat)
    assert modular == expected
    if not modular:
        assert _is_n5(lat, *witness)


def test_distributivity_is_reverse_invariant() -> None:
    for _, make, expected in BRUTE_CASES:
        lat = make()
        assert is_distributive(lat.reverse())[0] == expected
        assert is_modular(lat.reverse())[0] == is_modular(lat)[0]


# ------------------------------------------------------------- Boolean rank


def test_boolean_rank_values() -> None:
    assert boolean_rank(boolean_lattice(0)) == 0
    assert boolean_rank(boolean_lattice(1)) == 1
    assert boolean_rank(boolean_lattice(3)) == 3
    assert boolean_rank(chain(1)) == 1
    assert boolean_rank(chain(2)) is None      # 3 elements
    assert boolean_rank(chain(3)) is None      # 4 elements but only one atom
    assert boolean_rank(diamond_m3()) is None  # not distributive
    assert boolean_rank(divisor_lattice(30)) == 3
    assert boolean_rank(divisor_lattice(12)) is None


def test_complement() -> None:
    lat = boolean_lattice(3)
    # labels are binary subset strings; complement must be the bitwise flip
    for x in range(lat.n):
        c = complement(lat, x)
        assert int(lat.labels[x], 2) ^ int(lat.labels[c], 2) == 7
    with pytest.raises(NotBoolean):
        complement(chain(2), 1)
    with pytest.raises(NotBoolean):
        complement(diamond_m3(), 1)


# ---------------------------------------------------------------- intervals


def test_top_interval_z12() -> None:
    # Coatoms of L(Z/12) are the subgroups of order 6 and 4; their meet has
    # order 2, and [C2, Z12] = {2,4,6,12} is a 2-cube.
    lat = interval("Z12")
    top, members = lat.top_interval()
    assert top.n == 4
    assert boolean_rank(top) == 2
    assert [lat.payload[m].order for m in members] == [2, 4, 6, 12]
    # index map points back into the parent lattice
    assert all(lat.labels[m] == top.labels[k] for k, m in enumerate(members))


def test_bottom_interval_s3() -> None:
    # Atoms of L(S3) generate everything: join of atoms is S3 itself.
    lat = interval("S3")
    bot, members = lat.bottom_interval()
    assert bot.n == lat.n
    assert np.array_equal(members, np.arange(lat.n))


def test_interval_of_chain() -> None:
    lat = chain(5)
    mid, members = lat.interval(1, 4)
    assert mid.n == 4 and mid.height() == 3
    assert members.tolist() == [1, 2, 3, 4]


def test_induced_sublattice_requires_closure() -> None:
    lat = boolean_lattice(2)
    with pytest.raises(ValueError):
        lat.induced_sublattice([1, 2])  # missing meet and join


# ------------------------------------------------------- product and stacking


def test_direct_product_shapes() -> None:
    prod = direct_product(chain(1), chain(1))
    assert prod.n == 4 and boolean_rank(prod) == 2
    prod3 = direct_product(chain(1), direct_product(chain(1), chain(1)))
    assert boolean_rank(prod3) == 3
    mixed = direct_product(chain(2), chain(3))
    assert mixed.n == 12 and mixed.height() == 5
    assert is_distributive(mixed)[0]
    mixed.validate()


def test_direct_product_preserves_distributivity_exactly() -> None:
    assert is_distributive(direct_product(divisor_lattice(12), chain(2)))[0]
    assert not is_distributive(direct_product(diamond_m3(), chain(1)))[0]
    assert not is_modular(direct_product(pentagon_n5(), boolean_lattice(1)))[0]


def test_concatenate() -> None:
    stacked = concatenate(chain(2), chain(3))
    assert stacked.n == 6 and stacked.height() == 5
    both = concatenate(diamond_m3(), chain(1))
    assert both.n == 6
    assert not is_distributive(both)[0]
    assert is_modular(both)[0]
    tower = concatenate(boolean_lattice(1), boolean_lattice(1))
    assert tower.n == 3 and tower.height() == 2
    assert is_distributive(tower)[0]
    # concatenation with a pentagon stays non-modular
    assert not is_modular(concatenate(chain(1), pentagon_n5()))[0]


def test_concatenate_identifies_endpoints() -> None:
    stacked = concatenate(boolean_lattice(2), chain(2))
    assert stacked.n == 4 + 3 - 1
    assert stacked.bottom == 0
    assert stacked.height() == 4
    stacked.validate()


# ------------------------------------------------------------------- output


def test_to_dot() -> None:
    lat = interval("S3")
    dot = lat.to_dot("L(S3)")
    assert dot.startswith('digraph "L(S3)"')
    assert dot.count("->") == int(lat.covers().sum())  # 8 cover edges
    assert lat.covers().sum() == 8
    for i in range(lat.n):
        assert f"n{i} " in dot


def test_validate_interval_lattices() -> None:
    for name in ["S3", "Z6", "Q8", "A4"]:
        interval(name).validate()
