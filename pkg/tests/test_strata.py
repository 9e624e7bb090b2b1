from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperell.errors import ImpossibleCase, NotDivisible, PreconditionViolated, WrongDegree
from hyperell.strata import (
    Permutation,
    admissible_strata,
    find_lemma_pairs,
    is_triple_transposition_class,
    max_aut_locus_dimension,
    overlap,
    stratum_dimension,
    verify_lemma_combin,
)


def test_permutation_basics():
    rho = Permutation.parse(6, "(1 2)(3 4)(5 6)")
    assert rho.cycle_type == (2, 2, 2) and rho.order() == 2
    assert str(rho) == "(1 2)(3 4)(5 6)"
    cyc = Permutation.parse(6, "(1 2 3 4 5 6)")
    assert (cyc * cyc.inverse()) == Permutation.identity(6)
    assert cyc.order() == 6
    with pytest.raises(PreconditionViolated):
        Permutation((0, 0, 1))


def test_lemma_pairs_examples():
    pair = find_lemma_pairs(Permutation.parse(6, "(1 2 3 4 5 6)"))
    assert pair is not None and pair.k1 != pair.k2
    assert find_lemma_pairs(Permutation.parse(6, "(1 2)(3 4)(5 6)")) is None
    with pytest.raises(PreconditionViolated):
        find_lemma_pairs(Permutation.identity(6))
    with pytest.raises(PreconditionViolated):
        find_lemma_pairs(Permutation.parse(5, "(1 2 3 4 5)"))


def test_triple_transposition_class():
    assert is_triple_transposition_class(Permutation.parse(6, "(1 2)(3 4)(5 6)"))
    assert not is_triple_transposition_class(Permutation.parse(6, "(1 2 3 4 5 6)"))
    count = sum(is_triple_transposition_class(Permutation(p)) for p in itertools.permutations(range(6)))
    assert count == 15 == 720 // (2**3 * 6)
    with pytest.raises(WrongDegree):
        is_triple_transposition_class(Permutation.identity(7))


@pytest.mark.parametrize("use_numba", [False, True])
def test_lemma_exhaustive_to_seven(use_numba):
    report = verify_lemma_combin(7, use_numba=use_numba)
    assert report["sizes"]["6"]["failures"] == 15
    assert report["sizes"]["6"]["failures_all_type_2^3"]
    assert report["sizes"]["7"]["failures"] == 0
    assert report["consistent_with_lemma"]
    assert report["sizes"]["6"]["by_cycle_type"]["2^3"] == {"tested": 15, "witnesses_found": 0, "failures": 15}


def test_lemma_report_independent_of_jobs():
    assert verify_lemma_combin(7, jobs=1) == verify_lemma_combin(7, jobs=2)


def test_lemma_bounds():
    with pytest.raises(PreconditionViolated):
        verify_lemma_combin(10)


@given(st.permutations(list(range(7))), st.permutations(list(range(7))))
def test_witnesses_are_valid_and_conjugation_invariant(images, sigma_images):
    rho, sigma = Permutation(tuple(images)), Permutation(tuple(sigma_images))
    if len(rho.fixed_points()) > 2:
        return
    pair = find_lemma_pairs(rho)
    assert pair is not None
    assert overlap(rho, pair.n1) == pair.k1 and overlap(rho, pair.n2) == pair.k2
    assert pair.k1 != pair.k2 and max(pair.k1, pair.k2) < 4
    # transport the witness through sigma
    conj = rho.conjugate(sigma)
    n1 = tuple(sigma(i) for i in pair.n1)
    n2 = tuple(sigma(i) for i in pair.n2)
    assert overlap(conj, n1) == pair.k1 and overlap(conj, n2) == pair.k2


def test_stratum_examples():
    assert stratum_dimension(2, 2, 0) == 2
    assert stratum_dimension(2, 3, 0) == 1
    with pytest.raises(ImpossibleCase):
        stratum_dimension(2, 2, 1)
    with pytest.raises(NotDivisible):
        stratum_dimension(2, 5, 0)
    with pytest.raises(PreconditionViolated):
        stratum_dimension(2, 4, 0)


@pytest.mark.parametrize("g", range(2, 51))
def test_top_stratum(g):
    assert max_aut_locus_dimension(g) == g
    others = [d for p, i, d in admissible_strata(g) if (p, i) != (2, 0)]
    assert all(d <= g - 1 for d in others)


def test_genus_five_top_only_at_involution():
    assert [(p, i) for p, i, d in admissible_strata(5) if d == 5] == [(2, 0)]
