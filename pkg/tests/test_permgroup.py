"""Permutation group machinery: closure, subgroups, cosets, quotients."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biprox.catalog import catalog_group
from biprox.errors import DegreeMismatch, NotNested, OrderCapExceeded, SubgroupCapExceeded
from biprox.permgroup import (
    FiniteGroup,
    Permutation,
    all_subgroups,
    core,
    double_coset,
    double_cosets,
    generating_indices,
    group_closure,
    interval_subgroups,
    is_normal_intermediate,
    maximal_subgroups_over,
    minimal_overgroups,
    parse_cycles,
    parse_generators,
    quotient_group,
    subgroup_generated,
)

# Frozen oracle values from an independent one-element-extension BFS
# enumeration (notes/oracles/subgroup_counts.py); S4 = 30, S5 = 156,
# Q8 = 6, E16 = 67 also match the standard literature counts.
SUBGROUP_COUNTS = {
    "S3": 6,
    "Z6": 4,
    "Z12": 6,
    "Z30": 8,
    "A4": 10,
    "S4": 30,
    "D4": 10,
    "D6": 16,
    "Q8": 6,
    "E16": 67,
    "SL23": 15,
    "S5": 156,
}


def test_parse_cycles_is_one_based():
    p = parse_cycles("(1,2,3,4)")
    assert p.images == (1, 2, 3, 0)
    q = parse_cycles("(1,2)(3,4)")
    assert q.images == (1, 0, 3, 2)
    assert parse_cycles("()").is_identity()
    assert parse_cycles("(1,2)", degree=5).degree == 5


def test_cycle_string_round_trip():
    for text in ["(1,2)", "(1,2,3)(4,5)", "()", "(2,4)(1,3,5)"]:
        p = parse_cycles(text, degree=5)
        again = parse_cycles(p.cycle_string(), degree=5)
        assert again == p


def test_parse_generators_infers_common_degree():
    gens = parse_generators("(1,2)(3,4); (1,2,3,4)")
    assert all(g.degree == 4 for g in gens)
    assert len(gens) == 2


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cycles("(1,2,2)")
    with pytest.raises(ValueError):
        parse_cycles("(0,1)")
    with pytest.raises(ValueError):
        parse_cycles("nonsense")


def test_composition_convention():
    # (p * q)(i) = p(q(i))
    p = parse_cycles("(1,2)", degree=3)
    q = parse_cycles("(2,3)", degree=3)
    assert (p * q).images == tuple(p.images[q.images[i]] for i in range(3))
    assert (p * p).is_identity()
    assert p.inverse() == p


def test_group_closure_s3():
    group = group_closure(parse_generators("(1,2); (1,2,3)"))
    assert group.order == 6
    assert group.elements == tuple(sorted(group.elements, key=lambda e: e.images))
    identity = group.elements[group.identity_index]
    assert identity.is_identity()


def test_group_closure_empty_and_single_cycle():
    assert group_closure([]).order == 1
    assert group_closure([parse_cycles("(1,2,3,4,5,6)")]).order == 6


def test_group_closure_cap():
    with pytest.raises(OrderCapExceeded):
        group_closure(parse_generators("(1,2); (1,2,3,4,5)"), max_order=30)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        group_closure([parse_cycles("(1,2)"), parse_cycles("(1,2,3)")])


def test_cayley_table_is_a_group():
    group = catalog_group("S4")
    n = group.order
    cayley = group.cayley
    e = group.identity_index
    assert np.all(cayley[e, :] == np.arange(n))
    assert np.all(cayley[:, e] == np.arange(n))
    assert np.all(cayley[np.arange(n), group.inverse] == e)
    rng = np.random.default_rng(0)
    for _ in range(200):
        i, j, k = rng.integers(0, n, size=3)
        assert cayley[cayley[i, j], k] == cayley[i, cayley[j, k]]


def test_subgroup_generated_examples():
    s4 = catalog_group("S4")
    a = s4.index_of(parse_cycles("(1,2)", degree=4))
    b = s4.index_of(parse_cycles("(1,2,3,4)", degree=4))
    assert subgroup_generated(s4, {a, b}).order == 24
    assert subgroup_generated(s4, set()).order == 1
    s3 = catalog_group("S3")
    c = s3.index_of(parse_cycles("(1,2,3)", degree=3))
    assert subgroup_generated(s3, {c}).order == 3


@pytest.mark.parametrize("name,count", sorted(SUBGROUP_COUNTS.items()))
def test_all_subgroups_counts(name, count):
    group = catalog_group(name)
    subs = all_subgroups(group)
    assert len(subs) == count
    orders = [s.order for s in subs]
    assert orders == sorted(orders)
    for sub in subs:
        assert group.order % sub.order == 0
        assert sub.is_closed()
        assert sub.mask[group.identity_index]


def test_all_subgroups_cap():
    with pytest.raises(SubgroupCapExceeded):
        all_subgroups(catalog_group("S4"), count_cap=10)


def test_all_subgroups_deterministic_under_element_order():
    # Same group built from different generator sets must give identical keys.
    g1 = group_closure(parse_generators("(1,2); (1,2,3,4)"))
    g2 = group_closure(parse_generators("(1,2,3,4); (3,4); (1,3)(2,4)"))
    subs1 = [s.key() for s in all_subgroups(g1)]
    subs2 = [s.key() for s in all_subgroups(g2)]
    assert subs1 == subs2


def test_core_examples():
    s3 = catalog_group("S3")
    flip = s3.index_of(parse_cycles("(1,2)", degree=3))
    h = subgroup_generated(s3, {flip})
    assert core(s3, h).order == 1
    rot = s3.index_of(parse_cycles("(1,2,3)", degree=3))
    a3 = subgroup_generated(s3, {rot})
    assert core(s3, a3) == a3
    assert core(s3, s3.full_subgroup()) == s3.full_subgroup()


def test_core_is_normal():
    s4 = catalog_group("S4")
    for sub in all_subgroups(s4):
        k = core(s4, sub)
        assert k.is_normal()
        assert k <= sub


def test_is_normal_intermediate_examples():
    s3 = catalog_group("S3")
    triv = s3.trivial_subgroup()
    rot = subgroup_generated(s3, {s3.index_of(parse_cycles("(1,2,3)", degree=3))})
    flip = subgroup_generated(s3, {s3.index_of(parse_cycles("(1,2)", degree=3))})
    assert is_normal_intermediate(triv, rot, s3)
    assert not is_normal_intermediate(triv, flip, s3)
    assert is_normal_intermediate(flip, flip, s3)


def test_is_normal_intermediate_normal_superset():
    # K normal in G forces HgK = KgH for every H <= K.
    s4 = catalog_group("S4")
    subs = all_subgroups(s4)
    normal = [k for k in subs if k.is_normal()]
    for k in normal:
        for h in subs:
            if h <= k:
                assert is_normal_intermediate(h, k, s4)


def test_is_normal_intermediate_requires_nesting():
    s3 = catalog_group("S3")
    flip = subgroup_generated(s3, {s3.index_of(parse_cycles("(1,2)", degree=3))})
    rot = subgroup_generated(s3, {s3.index_of(parse_cycles("(1,2,3)", degree=3))})
    with pytest.raises(NotNested):
        is_normal_intermediate(rot, flip, s3)


def test_minimal_overgroups_s2_in_s4():
    s4 = catalog_group("S4")
    h = subgroup_generated(s4, {s4.index_of(parse_cycles("(1,2)", degree=4))})
    atoms = minimal_overgroups(h, s4)
    assert sorted(a.order for a in atoms) == [4, 6, 6]
    assert minimal_overgroups(s4.full_subgroup(), s4) == []
    z6 = catalog_group("Z6")
    assert sorted(a.order for a in minimal_overgroups(z6.trivial_subgroup(), z6)) == [2, 3]


def test_maximal_subgroups_over():
    s3 = catalog_group("S3")
    coatoms = maximal_subgroups_over(s3.trivial_subgroup(), s3)
    assert sorted(c.order for c in coatoms) == [2, 2, 2, 3]
    assert maximal_subgroups_over(s3.full_subgroup(), s3) == []


def test_interval_s2_s4_has_six_nodes():
    s4 = catalog_group("S4")
    h = subgroup_generated(s4, {s4.index_of(parse_cycles("(1,2)", degree=4))})
    interval = interval_subgroups(h, s4)
    assert len(interval) == 6
    assert sorted(k.order for k in interval) == [2, 4, 6, 6, 8, 24]


def test_double_cosets_partition():
    s4 = catalog_group("S4")
    h = subgroup_generated(s4, {s4.index_of(parse_cycles("(1,2)", degree=4))})
    cosets = double_cosets(s4, h, h)
    assert sum(len(c) for c in cosets) == 24
    assert len(cosets) == 7
    assert sorted(len(c) for c in cosets) == [2, 2, 4, 4, 4, 4, 4]
    flat = np.sort(np.concatenate(cosets))
    assert np.array_equal(flat, np.arange(24))


def test_double_coset_constant_on_representatives():
    s4 = catalog_group("S4")
    h = subgroup_generated(s4, {s4.index_of(parse_cycles("(1,2)", degree=4))})
    for coset in double_cosets(s4, h, h):
        for rep in coset[:2]:
            assert np.array_equal(double_coset(s4, h, int(rep), h), coset)


def test_quotient_s4_mod_v4_is_s3():
    s4 = catalog_group("S4")
    v4_members = {s4.identity_index}
    for text in ["(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"]:
        v4_members.add(s4.index_of(parse_cycles(text, degree=4)))
    v4 = s4.subgroup_from_indices(v4_members)
    quotient, projection = quotient_group(s4, v4)
    assert quotient.order == 6
    assert not quotient.is_abelian()
    # The projection is a homomorphism.
    rng = np.random.default_rng(1)
    for _ in range(100):
        i, j = rng.integers(0, 24, size=2)
        assert projection[s4.cayley[i, j]] == quotient.cayley[projection[i], projection[j]]


def test_quotient_by_alternating_is_z2():
    s4 = catalog_group("S4")
    a4 = next(s for s in all_subgroups(s4) if s.order == 12)
    quotient, _ = quotient_group(s4, a4)
    assert quotient.order == 2


def test_generating_indices_generate():
    s5 = catalog_group("S5")
    for sub in all_subgroups(s5)[::7]:
        gens = generating_indices(sub)
        assert subgroup_generated(s5, gens) == sub
        assert len(gens) <= 3


def test_element_orders_and_conjugacy_classes():
    s4 = catalog_group("S4")
    orders = s4.element_orders()
    counts = {int(k): int(v) for k, v in zip(*np.unique(orders, return_counts=True))}
    assert counts == {1: 1, 2: 9, 3: 8, 4: 6}
    classes = s4.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 3, 6, 6, 8]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=23), min_size=0, max_size=3))
def test_random_subgroups_satisfy_lagrange(seed):
    s4 = catalog_group("S4")
    sub = subgroup_generated(s4, seed)
    assert 24 % sub.order == 0
    assert sub.is_closed()
    products = s4.cayley[np.ix_(sub.indices, sub.indices)]
    assert set(np.unique(products)) <= set(sub.indices.tolist())


def test_catalog_sanity():
    assert catalog_group("Q8").order == 8
    assert catalog_group("Dic3").order == 12
    assert catalog_group("SL23").order == 24
    assert catalog_group("E16").order == 16
    assert catalog_group("V4").order == 4
    assert catalog_group("D2").order == 4
    assert catalog_group("A5").order == 60
    assert catalog_group("Z30").order == 30
    assert not catalog_group("Q8").is_abelian()
    assert catalog_group("E16").is_abelian()


def test_center_subgroup() -> None:
    from biprox.permgroup import center_subgroup

    assert center_subgroup(catalog_group("S3")).order == 1
    assert center_subgroup(catalog_group("S4")).order == 1
    assert center_subgroup(catalog_group("Q8")).order == 2
    assert center_subgroup(catalog_group("D4")).order == 2
    assert center_subgroup(catalog_group("Z6")).order == 6


def test_derived_subgroup() -> None:
    from biprox.permgroup import derived_subgroup

    assert derived_subgroup(catalog_group("S3")).order == 3
    assert derived_subgroup(catalog_group("S4")).order == 12
    assert derived_subgroup(catalog_group("A4")).order == 4
    assert derived_subgroup(catalog_group("Q8")).order == 2
    assert derived_subgroup(catalog_group("Z12")).order == 1
