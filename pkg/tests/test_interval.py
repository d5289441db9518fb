"""Tests for inclusion analysis: cyclicity, Ore-style reports, equivalence.

Oracle values derived independently:
  - minimal overgroup index sums were computed by hand from the standard
    subgroup lists of Z/6, S3, Q8, (Z/2)^2, (Z/2)^3, S4;
  - "every subgroup normal" facts: abelian groups and Q8 qualify, S3 does
    not (a transposition subgroup is not normal);
  - equivalence cases reduce to core quotients listed in the docstrings.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from biprox.catalog import catalog_group
from biprox.errors import NotNested, QuotientOrderCapExceeded
from biprox.interval import (
    DualOreReport,
    Inclusion,
    core_quotient,
    dual_ore_conditions,
    equivalence_key,
    inclusions_equivalent,
    is_H_cyclic,
    ore_verify,
)
from biprox.permgroup import parse_cycles, subgroup_generated


def make(group_name: str, *cycles: str) -> Inclusion:
    g = catalog_group(group_name)
    if cycles:
        idx = [g.index_of(parse_cycles(c, degree=g.degree)) for c in cycles]
        sub = subgroup_generated(g, idx)
    else:
        sub = g.trivial_subgroup()
    return Inclusion(g, sub)


def full(group_name: str) -> Inclusion:
    g = catalog_group(group_name)
    return Inclusion(g, g.full_subgroup())


# ------------------------------------------------------------------ basics


def test_inclusion_basics() -> None:
    inc = make("S4", "(1,2)")
    assert inc.index == 12
    assert inc.lattice.n == 6
    assert inc.lattice is inc.lattice  # cached


def test_inclusion_rejects_foreign_subgroup() -> None:
    s3 = catalog_group("S3")
    s4 = catalog_group("S4")
    with pytest.raises(NotNested):
        Inclusion(s4, s3.trivial_subgroup())


# ------------------------------------------------------------- H-cyclicity


def test_h_cyclic_s2_s4() -> None:
    inc = make("S4", "(1,2)")
    g = is_H_cyclic(inc)
    assert g is not None
    gen = subgroup_generated(inc.group, np.append(inc.sub.indices, g))
    assert gen.order == 24
    # the 4-cycle (1,2,3,4) in particular generates S4 together with (1,2)
    four_cycle = inc.group.index_of(parse_cycles("(1,2,3,4)", degree=4))
    transposition = inc.group.index_of(parse_cycles("(1,2)", degree=4))
    by_hand = subgroup_generated(inc.group, [transposition, four_cycle])
    assert by_hand.order == 24


def test_h_cyclic_absent_for_noncyclic_group() -> None:
    assert is_H_cyclic(make("S3")) is None
    assert is_H_cyclic(make("E4")) is None


def test_h_cyclic_cyclic_group() -> None:
    inc = make("Z6")
    g = is_H_cyclic(inc)
    assert g is not None
    assert subgroup_generated(inc.group, [g]).order == 6


def test_h_cyclic_maximal_subgroup() -> None:
    # M maximal: any g outside M works; the witness is the first outside.
    s4 = catalog_group("S4")
    a4 = subgroup_generated(
        s4,
        [s4.index_of(parse_cycles(c, degree=4)) for c in ("(1,2,3)", "(2,3,4)")],
    )
    assert a4.order == 12
    inc = Inclusion(s4, a4)
    g = is_H_cyclic(inc)
    outside = np.flatnonzero(~a4.mask)
    assert g == outside.min()


def test_h_cyclic_full_inclusion() -> None:
    inc = full("S3")
    assert is_H_cyclic(inc) == inc.group.identity_index


# ------------------------------------------------------------------ reports


def test_ore_verify_examples() -> None:
    r = ore_verify(make("Z6"))
    assert r.distributive and r.h_cyclic

    r = ore_verify(make("S4", "(1,2)"))
    assert not r.distributive and r.h_cyclic

    r = ore_verify(make("E4"))
    assert not r.distributive and not r.h_cyclic and r.witness is None


def test_dual_ore_z6() -> None:
    r = dual_ore_conditions(make("Z6"))
    # minimal subgroups of Z/6 have orders 2 and 3: 1/2 + 1/3
    assert r == DualOreReport(True, True, Fraction(5, 6))


def test_dual_ore_s2_s4() -> None:
    r = dual_ore_conditions(make("S4", "(1,2)"))
    # minimal overgroups of <(12)> have orders 4, 6, 6: 1/2 + 1/3 + 1/3
    assert r.sum_value == Fraction(7, 6)
    assert r.cond_sum


def test_dual_ore_trivial_bottom() -> None:
    # H = {1}: the normality condition says every subgroup is normal.
    assert dual_ore_conditions(make("S3")).cond_normal is False
    assert dual_ore_conditions(make("Q8")).cond_normal is True  # Hamiltonian
    assert dual_ore_conditions(make("Z6")).cond_normal is True
    assert dual_ore_conditions(make("E4")).cond_normal is True


def test_dual_ore_sums() -> None:
    # S3 over {1}: three order-2 and one order-3 minimal subgroup.
    assert dual_ore_conditions(make("S3")).sum_value == Fraction(11, 6)
    # Q8: the centre is the unique minimal subgroup.
    assert dual_ore_conditions(make("Q8")).sum_value == Fraction(1, 2)
    # (Z/2)^3 has seven minimal subgroups: 7/2 > 2 breaks the sum bound.
    r = dual_ore_conditions(make("E8"))
    assert r.sum_value == Fraction(7, 2)
    assert not r.cond_sum
    # (Z/2)^2: 3/2, within the bound.
    assert dual_ore_conditions(make("E4")).sum_value == Fraction(3, 2)


def test_dual_ore_full_inclusion_vacuous() -> None:
    assert dual_ore_conditions(full("S4")) == DualOreReport(True, True, Fraction(0))


# -------------------------------------------------------------- equivalence


def test_core_quotient_shapes() -> None:
    # <(12)> in S3 has trivial core: quotient is S3 itself.
    q, img = core_quotient(make("S3", "(1,2)"))
    assert q.order == 6 and img.order == 2
    # A normal subgroup is its own core: quotient collapses it.
    q, img = core_quotient(make("S4", "(1,2)(3,4)", "(1,3)(2,4)"))
    assert q.order == 6 and img.order == 1


def test_equivalent_to_itself() -> None:
    for inc in [make("S3"), make("S4", "(1,2)"), make("Z6"), full("Q8")]:
        assert inclusions_equivalent(inc, inc)


def test_equivalence_of_conjugate_subgroups() -> None:
    a = make("S3", "(1,2)")
    b = make("S3", "(2,3)")
    assert inclusions_equivalent(a, b)
    assert inclusions_equivalent(b, a)


def test_inequivalent_s4_pair() -> None:
    four_cycle = make("S4", "(1,2,3,4)")
    double = make("S4", "(1,2)(3,4)")
    assert not inclusions_equivalent(four_cycle, double)
    klein_ish = make("S4", "(1,2)", "(3,4)")
    assert not inclusions_equivalent(four_cycle, klein_ish)


def test_equivalence_across_ambient_groups() -> None:
    # ({1} <= Z/2) vs (first factor <= Z/2 x Z/2): cores collapse both to
    # the pair ({1} <= Z/2).
    a = make("Z2")
    b = make("E4", "(1,2)")
    assert inclusions_equivalent(a, b)
    # ({1} <= Z/3) vs (Z/2 <= Z/6)
    c = make("Z3")
    d_group = catalog_group("Z6")
    order2 = [
        int(i)
        for i in range(d_group.order)
        if d_group.element_orders()[i] == 2
    ]
    d = Inclusion(d_group, subgroup_generated(d_group, order2))
    assert inclusions_equivalent(c, d)


def test_inequivalent_same_order_quotients() -> None:
    assert not inclusions_equivalent(make("Z4"), make("E4"))
    assert not inclusions_equivalent(make("Z6"), make("S3"))


def test_equivalence_is_transitive_spot() -> None:
    a = make("S3", "(1,2)")
    b = make("S3", "(1,3)")
    c = make("S3", "(2,3)")
    assert inclusions_equivalent(a, b)
    assert inclusions_equivalent(b, c)
    assert inclusions_equivalent(a, c)


def test_equivalence_key_buckets() -> None:
    assert equivalence_key(make("S3", "(1,2)")) == equivalence_key(
        make("S3", "(2,3)")
    )
    assert equivalence_key(make("Z4")) != equivalence_key(make("E4"))


def test_quotient_cap() -> None:
    with pytest.raises(QuotientOrderCapExceeded):
        inclusions_equivalent(make("S4"), make("S4"), quotient_cap=10)
    with pytest.raises(QuotientOrderCapExceeded):
        equivalence_key(make("S4"), quotient_cap=10)


# ---------------------------------------------------------- linear primitivity


def test_linearly_primitive_groups() -> None:
    from biprox.interval import is_linearly_primitive_group

    # S3 and Q8 have faithful irreducible representations; Z/n always has
    # a faithful character; (Z/2)^2 has only non-faithful characters
    assert is_linearly_primitive_group(catalog_group("S3"))
    assert is_linearly_primitive_group(catalog_group("Q8"))
    assert is_linearly_primitive_group(catalog_group("Z6"))
    assert is_linearly_primitive_group(catalog_group("Z12"))
    assert not is_linearly_primitive_group(catalog_group("E4"))
    assert not is_linearly_primitive_group(catalog_group("E8"))


def test_linearly_primitive_inclusions() -> None:
    from biprox.interval import is_linearly_primitive_inclusion

    # (S3, <(12)>): the standard block's fixed line has stabilizer exactly H
    assert is_linearly_primitive_inclusion(make("S3", "(1,2)")) is not None
    # (E4, Z2): the character with kernel exactly H works
    e4 = catalog_group("E4")
    h = subgroup_generated(e4, [e4.index_of(parse_cycles("(1,2)", degree=e4.degree))])
    assert is_linearly_primitive_inclusion(Inclusion(e4, h)) is not None
    # (E4, {1}) has no faithful block
    assert is_linearly_primitive_inclusion(make("E4")) is None
