"""Executable acceptance checks.

Each ``check_*`` function returns a :class:`CheckResult`; a check passes when
every assertion holds *and* it finishes inside its time limit.  All
randomness is seeded, so runs are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .config import (
    PointConfiguration,
    automorphism_group,
    moduli_point_is_singular,
    roots_of_unity_config,
)
from .curves import (
    HyperellipticCurve,
    elliptic_taut_curve,
    j_of_family,
    reduced_automorphism_group,
    twist_classes,
)
from .field import GF, QQ, FieldTag, prime_with_roots_of_unity
from .forms import BinaryForm, discriminant, gl2_act, is_smooth
from .moebius import MoebiusMap, ProjectivePoint, apply, from_three_points, solve_pairing_involution
from .picard import (
    class_group_order,
    comparison_index,
    descent_subgroup,
    divisor_stack_order,
    hodge_index,
    probe_field,
    probe_forms,
    stabilizer_fiber_character,
    stack_picard_order,
    tab_exponent,
)
from .strata import admissible_strata, stratum_dimension, verify_lemma_combin

# large prime for the randomized discriminant checks; exact, but cheaper than Q
DISC_PRIME = 1_000_003


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: dict = dc_field(default_factory=dict)
    error: str | None = None

    @property
    def within_limit(self) -> bool:
        return self.seconds < self.limit

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s / {self.limit:g}s)"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "limit": self.limit,
            "detail": self.detail,
            "error": self.error,
        }


def _run(number: int, name: str, limit: float, body: Callable[[dict], bool]) -> CheckResult:
    detail: dict = {}
    t0 = time.perf_counter()
    error = None
    try:
        ok = bool(body(detail))
    except Exception as exc:  # a crash is a failure, reported not raised
        ok, error = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - t0
    return CheckResult(number, name, ok and seconds < limit, seconds, limit, detail, error)


def _random_smooth_form(field: FieldTag, g: int, rng: random.Random) -> BinaryForm:
    while True:
        f = BinaryForm(g, tuple(field.random_element(rng) for _ in range(2 * g + 3)))
        if not f.leading.is_zero() and is_smooth(f):
            return f


def _random_matrix(field: FieldTag, rng: random.Random):
    while True:
        a, b, c, d = (field.random_element(rng) for _ in range(4))
        if not (a * d - b * c).is_zero():
            return ((a, b), (c, d))


def _genus_range(lo: int, hi: int, gmax: int | None) -> range:
    return range(lo, (hi if gmax is None else min(hi, gmax)) + 1)


# -- the twelve checks --

def check_discriminant_degree(seed: int = 1) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        field = GF(DISC_PRIME)
        for g in (2, 3, 4, 5):
            for _ in range(100):
                f = _random_smooth_form(field, g, rng)
                lam = field.random_element(rng, nonzero=True)
                if discriminant(f.scale(lam)) != lam ** (4 * g + 2) * discriminant(f):
                    detail["counterexample"] = {"g": g, "form": f.to_json(), "lambda": str(lam)}
                    return False
        detail["cases"] = 400
        return True

    return _run(1, "discriminant is homogeneous of degree 4g+2", 5.0, body)


def check_discriminant_invariance(seed: int = 2) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        field = GF(DISC_PRIME)
        for g in (2, 3):
            for _ in range(100):
                f = _random_smooth_form(field, g, rng)
                A = _random_matrix(field, rng)
                if discriminant(gl2_act(A, f)) != discriminant(f):
                    detail["counterexample"] = {"g": g, "form": f.to_json()}
                    return False
        detail["cases"] = 200
        return True

    return _run(2, "discriminant is invariant under the weighted GL2 action", 5.0, body)


def check_stabilizer_orders(gmax: int | None = None) -> CheckResult:
    def body(detail):
        rows = []
        for g in _genus_range(2, 5, gmax):
            field = probe_field(g)
            o1 = automorphism_group(roots_of_unity_config(field, 2 * g + 1, with_infinity=True)).order
            o2 = automorphism_group(roots_of_unity_config(field, 2 * g + 2)).order
            rows.append({"g": g, "field": str(field), "cyclic": o1, "dihedral": o2})
            if (o1, o2) != (2 * g + 1, 4 * g + 4):
                detail["rows"] = rows
                return False
        detail["rows"] = rows
        return True

    return _run(3, "stabilizers of {oo} u mu_(2g+1) and mu_(2g+2)", 30.0, body)


def check_fiber_characters(gmax: int | None = None) -> CheckResult:
    def body(detail):
        for g in _genus_range(2, 5, gmax):
            field = probe_field(g)
            f1, f2 = probe_forms(g, field)
            z1 = field.primitive_root_of_unity(2 * g + 1)
            z2 = field.primitive_root_of_unity(2 * g + 2)
            ch1 = stabilizer_fiber_character(f1, MoebiusMap(((z1, 0), (0, 1)), field), 2 * g + 1)
            ch2 = stabilizer_fiber_character(f2, MoebiusMap(((z2, 0), (0, 1)), field), 2 * g + 2)
            ch3 = stabilizer_fiber_character(f2, MoebiusMap(((0, 1), (1, 0)), field), 2)
            if ch1.scalar != z1 ** (g + 1) or ch1.exponent != g + 1:
                return False
            if ch2.scalar != field(-1) or ch3.scalar != field((-1) ** g):
                return False
        single = descent_subgroup(2, probes=("f1",))["subgroup"]
        detail["single_probe_g2"] = single
        if single != [0, 5]:
            return False
        homomorphism = [descent_subgroup(g, check_hom=True)["order"] for g in _genus_range(2, 4, gmax)]
        orders = {g: descent_subgroup(g)["order"] for g in _genus_range(2, 20, gmax)}
        detail["descent_orders"] = orders
        return all(o == 1 for o in homomorphism) and all(o == 1 for o in orders.values())

    return _run(4, "fiber characters and trivial descent subgroup", 60.0, body)


def check_group_orders(gmax: int | None = None) -> CheckResult:
    def body(detail):
        bad = []
        for g in _genus_range(2, 20, gmax):
            want = (
                5 if g == 2 else 4 * g + 2,
                4 * g + 2 if g % 2 == 0 else 2 * (4 * g + 2),
                4 * g + 2,
                2 if g % 2 else 1,
            )
            got = (class_group_order(g), stack_picard_order(g), divisor_stack_order(g), comparison_index(g))
            if got != want:
                bad.append(g)
        detail["mismatches"] = bad
        return not bad

    return _run(5, "class group, stack and divisor-stack Picard orders", 1.0, body)


def check_hodge(gmax: int | None = None) -> CheckResult:
    def body(detail):
        bad = []
        for g in _genus_range(2, 40, gmax):
            e = tab_exponent(1, 0, g).residue
            if e != (g // 2 if g % 2 == 0 else g) or (hodge_index(g) == 2) != (g % 4 == 0):
                bad.append(g)
        detail["mismatches"] = bad
        return not bad

    return _run(6, "Hodge class exponent and index", 1.0, body)


def check_lemma_combin(n_max: int = 8, jobs: int = 1) -> CheckResult:
    def body(detail):
        report = verify_lemma_combin(n_max, jobs=jobs)
        detail["failures_by_size"] = {n: s["failures"] for n, s in report["sizes"].items()}
        detail["tested_by_size"] = {n: s["tested"] for n, s in report["sizes"].items()}
        return report["consistent_with_lemma"]

    return _run(7, "two-4-subsets lemma, exhaustive", 120.0, body)


def check_strata(gmax: int | None = None) -> CheckResult:
    def body(detail):
        for g in _genus_range(2, 50, gmax):
            if stratum_dimension(g, 2, 0) != g:
                return False
            if any(d > g - 1 for p, i, d in admissible_strata(g) if (p, i) != (2, 0)):
                return False
        return True

    return _run(8, "automorphism strata dimensions", 1.0, body)


def check_involution(seed: int = 9, p: int = 101) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        field = GF(p)
        done = 0
        while done < 100:
            pts = [ProjectivePoint.of(field, v) if v < p else ProjectivePoint.infinity(field)
                   for v in rng.sample(range(p + 1), 4)]
            p1, p2, p3, p4 = pts
            T = from_three_points((p1, p2, p3), (ProjectivePoint.infinity(field),
                                                 ProjectivePoint.of(field, 1), ProjectivePoint.of(field, 0)))
            q = T(p4)
            if q.x.is_zero() or q.y.is_zero() or q.x == q.y:
                continue
            A = solve_pairing_involution(*pts)
            if not (A @ A).is_identity() or A(p1) != p2 or A(p3) != p4 or A(p2) != p1:
                return False
            # every involution with A(p1)=p2, A(p3)=p4 also swaps p2 -> p1, so it
            # is the single map determined by those three point images
            if from_three_points((p1, p2, p3), (p2, p1, p4)) != A:
                return False
            done += 1
        detail["cases"] = done
        return True

    return _run(9, "explicit pairing involution", 10.0, body)


def _automorphism_free_split(field: FieldTag, rng: random.Random, n: int = 6) -> PointConfiguration:
    for _ in range(200):
        cfg = PointConfiguration.of(field, rng.sample(range(field.p), n))
        if automorphism_group(cfg).is_trivial():
            return cfg
    raise RuntimeError("no automorphism-free configuration found")


def _automorphism_free_form(field: FieldTag, rng: random.Random, g: int = 2) -> BinaryForm:
    while True:
        f = _random_smooth_form(field, g, rng)
        if reduced_automorphism_group(HyperellipticCurve(f, field.one)).group.is_trivial():
            return f


def check_twist_dichotomy(seed: int = 10) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        rows = {}
        for p in (11, 101, 1009):
            field = GF(p)
            # over F_11 every rational 6-point set has a symmetry (924 subsets
            # < 1320 = |PGL2(F_11)|), so the branch points there are taken in
            # an extension, Galois-stable as a set
            source = _automorphism_free_form(field, rng) if p == 11 else _automorphism_free_split(field, rng)
            res = twist_classes(source)
            rows[p] = res
            if res["n_classes"] != 2 or not res["closure_isomorphic"] or res["reduced_automorphism_order"] != 1:
                detail["rows"] = rows
                return False
        detail["rows"] = rows
        return True

    return _run(10, "square and nonsquare twists form two classes", 30.0, body)


def check_singular_point(seed: int = 11) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        p = prime_with_roots_of_unity(5, 6)
        field = GF(p)
        special = roots_of_unity_config(field, 5, with_zero=True)
        corpus = [(special, True), (roots_of_unity_config(field, 6), False)]
        for _ in range(3):
            A = MoebiusMap(_random_matrix(field, rng), field)
            corpus.append((special.image(A), True))
        for _ in range(20):
            cfg = PointConfiguration.of(field, rng.sample(range(p), 6))
            # independent oracle: a 6-point set has an order-5 symmetry iff it is
            # one 5-cycle plus a fixed point, i.e. in the class of {0} u mu_5
            corpus.append((cfg, 5 in automorphism_group(cfg).element_orders()))
        wrong = [c.to_json() for c, want in corpus if moduli_point_is_singular(c, 2) != want]
        detail["corpus_size"] = len(corpus)
        detail["singular_in_corpus"] = sum(1 for _, w in corpus if w)
        detail["wrong"] = wrong
        return not wrong

    return _run(11, "genus-2 singular point is the class of {0} u mu_5", 30.0, body)


def check_elliptic(seed: int = 12) -> CheckResult:
    def body(detail):
        rng = random.Random(seed)
        n = 0
        while n < 20:
            j0 = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            if j0 in (0, 1728):
                continue
            curve = elliptic_taut_curve(QQ(j0))
            if curve.j_invariant() != QQ(j0) or j_of_family(curve.a.value) != j0:
                return False
            n += 1
        detail["cases"] = n
        return True

    return _run(12, "genus-one family has the requested j-invariant", 1.0, body)


def run_all(gmax: int | None = None, jobs: int = 1, lemma_n_max: int = 8) -> list[CheckResult]:
    return [
        check_discriminant_degree(),
        check_discriminant_invariance(),
        check_stabilizer_orders(gmax),
        check_fiber_characters(gmax),
        check_group_orders(gmax),
        check_hodge(gmax),
        check_lemma_combin(lemma_n_max, jobs),
        check_strata(gmax),
        check_involution(),
        check_twist_dichotomy(),
        check_singular_point(),
        check_elliptic(),
    ]


def summary_table(results: list[CheckResult]) -> str:
    return "\n".join(r.line() for r in results)
