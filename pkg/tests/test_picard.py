from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperell.errors import BadCharacteristic, NegativeDegree, NotInStabilizer, PreconditionViolated
from hyperell.field import GF
from hyperell.moebius import MoebiusMap
from hyperell.picard import (
    CyclicClass,
    descent_subgroup,
    fiber_scalar,
    group_orders,
    hodge_index,
    m_of,
    picard_report,
    probe_field,
    probe_forms,
    pushforward_rank,
    stabilizer_fiber_character,
    tab_exponent,
)
from hyperell.config import automorphism_group, roots_of_unity_config


@pytest.mark.parametrize("g,expected", [(2, (5, 10, 10, 1)), (3, (14, 28, 14, 2)), (4, (18, 18, 18, 1))])
def test_group_orders(g, expected):
    r = group_orders(g)
    assert (r.class_group_order, r.stack_picard_order, r.divisor_stack_order, r.comparison_index) == expected


def test_group_orders_characteristic_guards():
    with pytest.raises(BadCharacteristic):
        group_orders(2, char=3)
    with pytest.raises(BadCharacteristic):
        group_orders(2, char=5)
    assert group_orders(3, char=5).class_group_order == 14


@pytest.mark.parametrize("g", range(2, 21))
def test_comparison_index_parity(g):
    assert (group_orders(g).comparison_index == 2) == (g % 2 == 1)


def test_fiber_character_examples():
    g = 2
    F = probe_field(g)
    f1, f2 = probe_forms(g, F)
    z5, z6 = F.primitive_root_of_unity(5), F.primitive_root_of_unity(6)
    ch = stabilizer_fiber_character(f1, MoebiusMap(((z5, 0), (0, 1)), F))
    assert (ch.order, ch.exponent) == (5, 3)
    ch = stabilizer_fiber_character(f2, MoebiusMap(((z6, 0), (0, 1)), F))
    assert ch.scalar == F(-1)
    assert stabilizer_fiber_character(f1, MoebiusMap.identity(F)).is_trivial()


def test_non_stabilizer_rejected():
    F = probe_field(2)
    f1, _ = probe_forms(2, F)
    with pytest.raises(NotInStabilizer):
        stabilizer_fiber_character(f1, MoebiusMap(((1, 1), (0, 1)), F))


@pytest.mark.parametrize("g", [2, 3, 4])
def test_character_is_a_homomorphism(g):
    F = probe_field(g)
    for form, cfg in zip(probe_forms(g, F), (roots_of_unity_config(F, 2 * g + 1, with_infinity=True),
                                             roots_of_unity_config(F, 2 * g + 2))):
        G = automorphism_group(cfg)
        table = {A: fiber_scalar(form, A) for A in G.elements}
        for A in G.elements:
            for B in G.elements:
                assert table[A @ B] == table[A] * table[B]


def test_descent_examples():
    assert descent_subgroup(2)["subgroup"] == [0]
    assert descent_subgroup(3)["subgroup"] == [0]
    single = descent_subgroup(2, probes=("f1",))
    assert single["subgroup"] == [0, 5] and single["modulus"] == 10
    assert descent_subgroup(3, probes=("f2",))["subgroup"] == list(range(0, 14, 2))


@pytest.mark.parametrize("g", range(2, 21))
def test_descent_is_trivial(g):
    assert descent_subgroup(g)["order"] == 1


def test_descent_field_guards():
    with pytest.raises(BadCharacteristic):
        descent_subgroup(2, GF(3))
    with pytest.raises(PreconditionViolated):
        descent_subgroup(2, GF(7))


def test_m_and_rank():
    assert m_of(1, 0, 5) == 4 and m_of(0, 1, 5) == 6 and m_of(0, 0, 5) == 0
    assert pushforward_rank(1, 0, 2) == 2 and pushforward_rank(0, 1, 2) == 4 and pushforward_rank(0, 0, 3) == 1
    with pytest.raises(NegativeDegree):
        m_of(-1, 0, 2)


def test_tab_exponent_examples():
    assert tab_exponent(1, 0, 4) == CyclicClass(18, 2)
    assert tab_exponent(1, 0, 3) == CyclicClass(28, 3)
    assert tab_exponent(0, 2, 2) == CyclicClass(10, 2)


@pytest.mark.parametrize("g", range(2, 41))
def test_hodge(g):
    assert tab_exponent(1, 0, g).residue == (g // 2 if g % 2 == 0 else g)
    assert (hodge_index(g) == 2) == (g % 4 == 0)


@given(st.integers(2, 30), st.integers(-3, 6), st.integers(-3, 6))
def test_tab_exponent_total(g, a, b):
    m = (a + b) * g + (b - a)
    if m < 0:
        with pytest.raises(NegativeDegree):
            tab_exponent(a, b, g)
    else:
        assert 0 <= tab_exponent(a, b, g).residue < group_orders(g).stack_picard_order


def test_picard_report_json():
    data = picard_report(3).to_json()
    assert data["class_group_order"] == 14 and data["stack_picard_order"] == 28
    assert data["comparison_index"] == 2 and data["descent_subgroup_order"] == 1
    assert [p["stabilizer_order"] for p in data["probes"]] == [7, 16]
    assert data["trace"][-1]["intersection"] == [0]
