"""Acceptance suite: each criterion runs at its time limit and prints a PASS/FAIL line."""
from __future__ import annotations

import pytest

from hyperell import verify

CHECKS = [
    ("discriminant_degree", verify.check_discriminant_degree),
    ("discriminant_invariance", verify.check_discriminant_invariance),
    ("stabilizer_orders", verify.check_stabilizer_orders),
    ("fiber_characters_and_descent", verify.check_fiber_characters),
    ("group_orders", verify.check_group_orders),
    ("hodge", verify.check_hodge),
    ("combinatorial_lemma", verify.check_lemma_combin),
    ("strata", verify.check_strata),
    ("involution_solver", verify.check_involution),
    ("twist_dichotomy", verify.check_twist_dichotomy),
    ("singular_point", verify.check_singular_point),
    ("elliptic_family", verify.check_elliptic),
]


@pytest.mark.parametrize("name,check", CHECKS, ids=[f"{i:02d}_{n}" for i, (n, _) in enumerate(CHECKS, 1)])
def test_acceptance(name, check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.error is None, result.error
    assert result.passed, result.to_json()
