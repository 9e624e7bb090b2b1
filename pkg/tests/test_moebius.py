from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperell.errors import DegenerateConfiguration, DegenerateTriple, SingularMatrix
from hyperell.field import GF, QQ
from hyperell.moebius import (
    MoebiusMap,
    ProjectivePoint,
    all_pgl2,
    apply,
    default_order_bound,
    element_order,
    from_three_points,
    solve_pairing_involution,
)


def pt(F, x):
    return ProjectivePoint.infinity(F) if x == "oo" else ProjectivePoint.of(F, x)


def random_map(F, rng):
    while True:
        try:
            return MoebiusMap(tuple(tuple(F.random_element(rng) for _ in range(2)) for _ in range(2)), F)
        except SingularMatrix:
            continue


def test_apply_examples():
    F = QQ
    assert apply(MoebiusMap.identity(F), pt(F, 3)) == pt(F, 3)
    assert apply(MoebiusMap(((1, -2), (1, -1)), F), pt(F, 3)) == ProjectivePoint.of(F, 1, 2)
    assert apply(MoebiusMap(((0, 1), (1, 0)), F), pt(F, "oo")) == pt(F, 0)


def test_normalization_makes_equality_exact():
    F = GF(13)
    assert MoebiusMap(((2, 4), (6, 8)), F) == MoebiusMap(((1, 2), (3, 4)), F)
    assert ProjectivePoint.of(F, 2, 4) == ProjectivePoint.of(F, 7)
    assert ProjectivePoint.of(F, 5, 0) == pt(F, "oo")


def test_from_three_points_examples():
    F = QQ
    src = [pt(F, 0), pt(F, 1), pt(F, "oo")]
    assert from_three_points(src, src).is_identity()
    A = from_three_points(src, [pt(F, 1), pt(F, 0), pt(F, "oo")])
    assert A == MoebiusMap(((-1, 1), (0, 1)), F)
    with pytest.raises(DegenerateTriple):
        from_three_points(src, [pt(F, 0), pt(F, 1), pt(F, 1)])


@given(st.integers(0, 10**6))
def test_three_points_recover_the_map(seed):
    rng = random.Random(seed)
    F = GF(101)
    A = random_map(F, rng)
    src = [pt(F, x) for x in rng.sample(list(range(101)) + ["oo"], 3)]
    assert from_three_points(src, [A(p) for p in src]) == A


def test_element_order_examples():
    F = GF(11)
    assert element_order(MoebiusMap.identity(F), 10) == 1
    assert element_order(MoebiusMap(((1, -2), (1, -1)), QQ), 10) == 2
    assert element_order(MoebiusMap(((3, 0), (0, 1)), F), 10) == 5
    # x -> x + 1 has infinite order over Q
    assert element_order(MoebiusMap(((1, 1), (0, 1)), QQ), default_order_bound(2)) is None


@given(st.integers(0, 10**6))
def test_order_is_conjugation_invariant(seed):
    rng = random.Random(seed)
    F = GF(31)
    A, B = random_map(F, rng), random_map(F, rng)
    bound = 2 * 32 * 31
    assert element_order(A @ B @ A.inverse(), bound) == element_order(B, bound)


def test_involution_example():
    F = QQ
    A = solve_pairing_involution(pt(F, "oo"), pt(F, 1), pt(F, 0), pt(F, 2))
    assert A == MoebiusMap(((1, -2), (1, -1)), F)
    with pytest.raises(DegenerateConfiguration):
        solve_pairing_involution(pt(F, "oo"), pt(F, 1), pt(F, 0), pt(F, 0))
    with pytest.raises(DegenerateConfiguration):
        solve_pairing_involution(pt(F, "oo"), pt(F, 1), pt(F, 0), pt(F, 1))


def test_involution_is_unique_against_brute_force():
    # oracle: scan all of PGL2(F_7) for involutions with the two pairings
    F = GF(7)
    group = list(all_pgl2(F))
    assert len(group) == 7 * (7**2 - 1)
    rng = random.Random(4)
    checked = 0
    while checked < 15:
        pts = [pt(F, x) for x in rng.sample(list(range(7)) + ["oo"], 4)]
        try:
            A = solve_pairing_involution(*pts)
        except DegenerateConfiguration:
            continue
        hits = [B for B in group if (B @ B).is_identity() and not B.is_identity()
                and B(pts[0]) == pts[1] and B(pts[2]) == pts[3]]
        assert hits == [A]
        checked += 1


def test_json_round_trip():
    F = GF(13)
    A = MoebiusMap(((2, 5), (1, 7)), F)
    assert MoebiusMap.from_json(F, A.to_json()) == A
    P = pt(F, 4)
    assert ProjectivePoint.from_json(F, P.to_json()) == P


def test_sort_puts_infinity_last():
    F = GF(7)
    pts = sorted([pt(F, "oo"), pt(F, 3), pt(F, 0)])
    assert pts[-1].is_infinity and pts[0] == pt(F, 0)
