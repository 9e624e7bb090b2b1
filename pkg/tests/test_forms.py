from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperell import poly
from hyperell.errors import BadCharacteristic, DegenerateInput, HyperellError, SingularMatrix
from hyperell.field import GF, QQ, prime_with_roots_of_unity
from hyperell.forms import (
    BinaryForm,
    discriminant,
    discriminant_of_poly,
    gl2_act,
    has_repeated_root,
    is_smooth,
    mat_mul,
    sylvester_resultant,
)


def q(*cs):
    return [QQ(c) for c in cs]


def random_form(F, g, rng, smooth=True):
    while True:
        f = BinaryForm(g, tuple(F.random_element(rng) for _ in range(2 * g + 3)))
        if not smooth or is_smooth(f):
            return f


def random_matrix(F, rng):
    while True:
        m = tuple(tuple(F.random_element(rng) for _ in range(2)) for _ in range(2))
        if not (m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero():
            return m


# -- resultants --

def test_resultant_examples():
    assert sylvester_resultant(q(-1, 0, 1), q(0, 2)) == QQ(-4)
    assert sylvester_resultant(q(-3, 1), q(-5, 1)) == QQ(2)
    f = q(1, 2, 0, 5)
    assert sylvester_resultant(f, f) == QQ(0)


def test_resultant_of_zero_polynomial():
    with pytest.raises(DegenerateInput):
        sylvester_resultant(q(0), q(1, 1))


@given(st.lists(st.integers(0, 100), min_size=1, max_size=4), st.lists(st.integers(1, 100), min_size=1, max_size=4),
       st.integers(1, 100))
def test_resultant_matches_product_formula(f_coeffs, h_roots, lead):
    # oracle: Res(f, h) = lead(h)^deg f * prod f(beta) over the roots of h
    F = GF(1009)
    f = [F(c) for c in f_coeffs] + [F(1)]
    h = poly.scale(poly.from_roots(F, [F(r) for r in h_roots]), F(lead))
    expected = F(lead) ** (len(f) - 1)
    for r in h_roots:
        expected = expected * poly.evaluate(f, F(r))
    assert sylvester_resultant(f, h) == expected


# -- discriminant --

def test_discriminant_of_quadratic_stub():
    assert discriminant_of_poly(q(-1, 0, 1)) == QQ(4)


def test_discriminant_vanishes_on_repeated_root():
    # X^2 (X - Y) Y^3 = X^3 Y^3 - X^2 Y^4
    f = BinaryForm.from_coeffs(QQ, [0, 0, -1, 1, 0, 0, 0])
    assert discriminant(f).is_zero()
    assert has_repeated_root(f)


def test_smoothness_examples():
    assert is_smooth(BinaryForm.from_coeffs(QQ, [-1, 0, 0, 0, 0, 0, 1]))
    x5y_minus_y6 = BinaryForm.from_coeffs(GF(7), [-1, 0, 0, 0, 0, 1, 0])
    assert is_smooth(x5y_minus_y6) and not has_repeated_root(x5y_minus_y6)
    assert not is_smooth(BinaryForm.from_coeffs(QQ, [0, 0, 0, 0, 0, 0, 1]))


def test_discriminant_scaling_by_two():
    rng = random.Random(3)
    f = random_form(QQ, 2, rng)
    assert discriminant(f.scale(2)) / discriminant(f) == QQ(1024)


def test_bad_characteristic():
    f = BinaryForm.from_coeffs(GF(3), [1, 0, 0, 0, 0, 0, 1])
    with pytest.raises(BadCharacteristic):
        discriminant(f)


@pytest.mark.parametrize("n_roots", [6, 8])
def test_discriminant_matches_root_differences(n_roots):
    # oracle: c^(2n-2) prod_{i<j} (a_i - a_j)^2 for a split form
    F = GF(10007)
    rng = random.Random(n_roots)
    roots = [F(r) for r in rng.sample(range(10007), n_roots)]
    c = F(rng.randrange(1, 10007))
    f = BinaryForm((n_roots - 2) // 2, tuple(poly.scale(poly.from_roots(F, roots), c)))
    expected = c ** (2 * n_roots - 2)
    for a, b in itertools.combinations(roots, 2):
        expected = expected * (a - b) ** 2
    assert discriminant(f) == expected


def test_discriminant_with_root_at_infinity():
    # leading coefficient zero: one root at infinity; compare against the moved form
    F = GF(101)
    f = BinaryForm.from_roots(F, [(0, 1), (1, 1), (2, 1), (3, 1), (5, 1), (1, 0)])
    assert f.leading.is_zero()
    assert not discriminant(f).is_zero()
    A = ((1, 0), (7, 1))
    assert discriminant(gl2_act(A, f)) == discriminant(f)


@pytest.mark.parametrize("g", range(2, 9))
def test_homogeneity(g):
    rng = random.Random(g)
    F = GF(1_000_003)
    for _ in range(5):
        f = random_form(F, g, rng, smooth=False)
        lam = F.random_element(rng, nonzero=True)
        assert discriminant(f.scale(lam)) == lam ** (4 * g + 2) * discriminant(f)


def test_delta_character_identity():
    # Delta(a^-2 f) = a^(-2(4g+2)) Delta(f)
    rng = random.Random(5)
    for g in (2, 3, 4):
        f = random_form(QQ, g, rng)
        a = QQ.random_element(rng, nonzero=True)
        assert discriminant(f.scale(a**-2)) == a ** (-2 * (4 * g + 2)) * discriminant(f)


# -- the weighted action --

def test_identity_action():
    f = random_form(QQ, 2, random.Random(1))
    assert gl2_act(((1, 0), (0, 1)), f) == f


@pytest.mark.parametrize("g", [2, 3, 4])
def test_probe_form_characters(g):
    p = prime_with_roots_of_unity(2 * g + 1, 2 * g + 2)
    F = GF(p)
    n = 2 * g + 2
    f1 = BinaryForm.from_coeffs(F, [-1] + [0] * (n - 2) + [1, 0], g)
    f2 = BinaryForm.from_coeffs(F, [-1] + [0] * (n - 1) + [1], g)
    z = F.primitive_root_of_unity(2 * g + 1)
    assert gl2_act(((z, 0), (0, 1)), f1) == f1.scale(z ** (g + 1))
    assert gl2_act(((0, 1), (1, 0)), f2) == f2.scale((-1) ** g)


def test_singular_matrix_rejected():
    f = random_form(QQ, 2, random.Random(2))
    with pytest.raises(SingularMatrix):
        gl2_act(((1, 2), (2, 4)), f)


@given(st.integers(0, 10**6))
def test_action_axiom_and_invariance(seed):
    rng = random.Random(seed)
    F = GF(10007)
    g = rng.choice([2, 3])
    f = random_form(F, g, rng)
    A, B = random_matrix(F, rng), random_matrix(F, rng)
    assert gl2_act(mat_mul(A, B), f) == gl2_act(A, gl2_act(B, f))
    assert discriminant(gl2_act(A, f)) == discriminant(f)
    assert is_smooth(gl2_act(A, f))


def test_smoothness_agrees_with_gcd_oracle():
    rng = random.Random(7)
    F = GF(13)
    for _ in range(200):
        f = BinaryForm(2, tuple(F.random_element(rng) for _ in range(7)))
        if f.leading.is_zero() and f.coeffs[-2].is_zero():
            assert not is_smooth(f)
            continue
        assert is_smooth(f) == (not has_repeated_root(f))


def test_form_validation_and_json():
    with pytest.raises(HyperellError):
        BinaryForm.from_coeffs(QQ, [1, 2, 3])
    with pytest.raises(DegenerateInput):
        BinaryForm.from_coeffs(QQ, [0] * 7)
    f = BinaryForm.from_coeffs(QQ, ["1/2", 0, 0, 0, 0, 0, 3])
    data = f.to_json()
    assert data == {"genus": 2, "coeffs": ["1/2", "0", "0", "0", "0", "0", "3"], "field": "Q"}
    assert BinaryForm.from_json(data) == f


def test_root_finding_over_extension():
    F = GF(7)
    f = poly.from_ints(F, [1, 0, 1])  # x^2 + 1, irreducible mod 7
    assert poly.roots(f) == []
    assert poly.splitting_degree(f) == 2
    assert len(poly.roots([GF(7, 2)(c) for c in f])) == 2
