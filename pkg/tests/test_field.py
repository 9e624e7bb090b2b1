from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperell.errors import (
    BadCharacteristic,
    BoundExceeded,
    DivisionByZero,
    FieldMismatch,
    HyperellError,
    ZeroInput,
)
from hyperell.field import (
    GF,
    QQ,
    FieldTag,
    SquareClass,
    char_divides,
    conway_like_modulus,
    nonsquare,
    prime_with_roots_of_unity,
    square_class,
    squarefree_part,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101]


def test_square_class_examples():
    assert square_class(QQ(1)) is SquareClass.SQUARE
    assert square_class(GF(7)(4)) is SquareClass.SQUARE
    assert square_class(GF(7)(3)) is SquareClass.NONSQUARE
    assert square_class(QQ(Fraction(8, 18))) is SquareClass.SQUARE  # 4/9
    assert square_class(QQ(-4)) is SquareClass.NONSQUARE
    assert square_class(QQ(Fraction(3, 12))) is SquareClass.SQUARE


def test_square_class_zero_rejected():
    with pytest.raises(ZeroInput):
        square_class(GF(7)(0))


def test_trial_division_bound_is_enforced():
    big = 1_000_003 * 1_000_033
    with pytest.raises(BoundExceeded):
        square_class(QQ(big), bound=1000)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_half_of_units_are_squares(p):
    F = GF(p)
    squares = {(x * x).value for x in F.elements() if not x.is_zero()}
    count = sum(1 for x in F.elements() if not x.is_zero() and square_class(x) is SquareClass.SQUARE)
    assert count == len(squares) == (p - 1) // 2


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6), st.integers(1, 10**6))
def test_square_class_is_multiplicative_mod_p(p, a, b):
    F = GF(p)
    x, y = F(a), F(b)
    if x.is_zero() or y.is_zero():
        return
    assert square_class(x * y) is square_class(x) * square_class(y)


@given(st.integers(-10**5, 10**5).filter(bool), st.integers(-10**5, 10**5).filter(bool))
def test_square_class_over_q_follows_squarefree_parts(a, b):
    # Q*/(Q*)^2 is infinite, so only "ab is a square iff a and b share a class" holds
    same = squarefree_part(a) == squarefree_part(b)
    assert (square_class(QQ(a * b)) is SquareClass.SQUARE) == same


@given(st.integers(1, 10**6))
def test_squarefree_part_divides_with_square_cofactor(n):
    core = squarefree_part(n)
    rest = n // core
    assert n % core == 0
    r = int(round(rest**0.5))
    assert r * r == rest


field_and_values = st.sampled_from([QQ, GF(7), GF(101), GF(5, 2), GF(7, 3)]).flatmap(
    lambda F: st.tuples(st.just(F), st.lists(st.integers(-50, 50), min_size=3, max_size=3))
)


@given(field_and_values)
def test_field_axioms(data):
    F, (a, b, c) = data
    x, y, z = F(a), F(b), F(c)
    if F.degree > 1:
        # spread the values over all coordinates of the extension
        x = F([a, b] + [c] * (F.degree - 2))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == F.zero
    if not x.is_zero():
        assert x * x.inverse() == F.one
        assert x ** -2 * x**2 == F.one


def test_division_by_zero_is_an_error():
    with pytest.raises(DivisionByZero):
        GF(7)(3) / GF(7)(0)
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)


def test_field_tags_and_serialization():
    assert str(QQ) == "Q" and str(GF(7)) == "Fp:7" and str(GF(7, 2)) == "Fq:7^2"
    for tag in (QQ, GF(7), GF(7, 2)):
        assert FieldTag.parse(str(tag)) == tag
    assert QQ(Fraction(3, 4)).to_json() == "3/4"
    assert GF(7)(12).to_json() == "5"
    assert QQ.parse_scalar("-3/4") == QQ(Fraction(-3, 4))


def test_bad_fields_rejected():
    with pytest.raises(BadCharacteristic):
        GF(2)
    with pytest.raises(HyperellError):
        GF(9)
    with pytest.raises(HyperellError):
        FieldTag.parse("Fp:x")


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        GF(7)(1) + GF(11)(1)


def test_scalars_are_immutable():
    x = GF(7)(3)
    with pytest.raises(AttributeError):
        x.value = 4


def test_char_divides():
    assert char_divides(3, 6) and not char_divides(5, 6) and not char_divides(0, 6)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (7, 3), (11, 2)])
def test_extension_modulus_is_irreducible(p, m):
    F = GF(p, m)
    mod = conway_like_modulus(p, m)
    assert len(mod) == m + 1 and mod[-1] == 1
    # a degree-m field has a generator of order p^m - 1
    gen = F.multiplicative_generator()
    assert (gen ** (F.order - 1)).is_one()
    for r in (2, 3, 5, 7, 13):
        if (F.order - 1) % r == 0:
            assert not (gen ** ((F.order - 1) // r)).is_one()


def test_roots_of_unity():
    p = prime_with_roots_of_unity(5, 6)
    assert p == 31
    F = GF(p)
    z = F.primitive_root_of_unity(5)
    assert (z**5).is_one() and not z.is_one()
    with pytest.raises(HyperellError):
        GF(7).primitive_root_of_unity(5)


def test_nonsquare():
    for p in (3, 7, 11, 101):
        assert square_class(nonsquare(GF(p))) is SquareClass.NONSQUARE
