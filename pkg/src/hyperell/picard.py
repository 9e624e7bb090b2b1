"""Cyclic Picard-type groups of the hyperelliptic moduli problem, as exact arithmetic.

Orders of the class group, the stack Picard group and the Picard group of the
stack of smooth divisors are closed formulas in g.  The vanishing of the
Picard group of the coarse space is *computed*: for two probe forms with
large stabilizers we read off the character by which each stabilizer element
scales the fiber ``k * f`` and intersect the twists on which all of them act
trivially.

Generator orientation: the generator of the stack Picard group is residue 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .config import ConfigAutGroup, PointConfiguration, automorphism_group, roots_of_unity_config
from .errors import (
    BadCharacteristic,
    InternalInconsistency,
    NegativeDegree,
    NotInStabilizer,
    PreconditionViolated,
)
from .field import GF, FieldTag, Scalar, char_divides, prime_with_roots_of_unity
from .forms import BinaryForm, gl2_act
from .moebius import MoebiusMap


@dataclass(frozen=True)
class CyclicClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise PreconditionViolated("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def __add__(self, other: "CyclicClass") -> "CyclicClass":
        if other.modulus != self.modulus:
            raise PreconditionViolated("different moduli")
        return CyclicClass(self.modulus, self.residue + other.residue)

    def subgroup_index(self) -> int:
        """Index of the subgroup this class generates."""
        return gcd(self.residue, self.modulus)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "residue": self.residue}


@dataclass(frozen=True)
class FiberCharacter:
    """An element of order ``order`` scaling the fiber by zeta_order^exponent."""

    order: int
    exponent: int
    scalar: Scalar | None = None

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def is_trivial(self) -> bool:
        return self.exponent == 0

    def to_json(self) -> dict:
        out = {"order": self.order, "exponent": self.exponent}
        if self.scalar is not None:
            out["scalar"] = str(self.scalar)
        return out


@dataclass
class PicardReport:
    g: int
    class_group_order: int
    stack_picard_order: int
    divisor_stack_order: int
    comparison_index: int
    descent_subgroup_order: int | None = None
    hodge_exponent: CyclicClass | None = None
    hodge_index: int | None = None
    generator: str = ""
    probes: list = dc_field(default_factory=list)
    trace: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.stack_picard_order != self.comparison_index * self.divisor_stack_order:
            raise InternalInconsistency("stack order is not index * divisor-stack order")
        if self.comparison_index not in (1, 2):
            raise InternalInconsistency("comparison index must be 1 or 2")

    def to_json(self, trace: bool = True) -> dict:
        out = {
            "g": self.g,
            "class_group_order": self.class_group_order,
            "stack_picard_order": self.stack_picard_order,
            "divisor_stack_order": self.divisor_stack_order,
            "comparison_index": self.comparison_index,
            "descent_subgroup_order": self.descent_subgroup_order,
            "hodge_exponent": self.hodge_exponent.to_json() if self.hodge_exponent else None,
            "hodge_index": self.hodge_index,
            "generator": self.generator,
            "probes": self.probes,
        }
        if trace:
            out["trace"] = self.trace
        return out


def _check_genus(g: int) -> None:
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")


def stack_picard_order(g: int) -> int:
    _check_genus(g)
    return (4 * g + 2) * (1 if g % 2 == 0 else 2)


def divisor_stack_order(g: int) -> int:
    _check_genus(g)
    return 4 * g + 2


def class_group_order(g: int) -> int:
    _check_genus(g)
    return 5 if g == 2 else 4 * g + 2


def comparison_index(g: int) -> int:
    return stack_picard_order(g) // divisor_stack_order(g)


def group_orders(g: int, char: int = 0) -> PicardReport:
    """The four orders for genus g over a field of characteristic ``char``."""
    _check_genus(g)
    if char_divides(char, 2 * g + 2):
        raise BadCharacteristic(f"characteristic {char} divides {2 * g + 2}")
    if g == 2 and char == 5:
        raise BadCharacteristic("the genus-2 class group needs characteristic != 5")
    return PicardReport(
        g=g,
        class_group_order=class_group_order(g),
        stack_picard_order=stack_picard_order(g),
        divisor_stack_order=divisor_stack_order(g),
        comparison_index=comparison_index(g),
    )


# -- fiber characters --

def _discrete_log(c: Scalar, zeta: Scalar, m: int) -> int | None:
    power = c.field.one
    for e in range(m):
        if power == c:
            return e
        power = power * zeta
    return None


def _reference_root(A: MoebiusMap, m: int) -> Scalar:
    """zeta_m used to express characters: a/d for a diagonal A, else a fixed primitive root."""
    if A.b.is_zero() and A.c.is_zero() and m > 1:
        return A.a / A.d
    return A.field.primitive_root_of_unity(m)


def fiber_scalar(form: BinaryForm, A: MoebiusMap) -> Scalar:
    """The exact c with gl2_act(A, f) = c * f, checked on two different lifts of A."""
    image = gl2_act(A.matrix, form)
    c = image.is_multiple_of(form)
    if c is None:
        raise NotInStabilizer("the map does not stabilize the form up to scalars")
    lam = form.field(2) if not form.field(2).is_zero() else form.field(3)
    other = gl2_act(tuple(tuple(lam * e for e in row) for row in A.matrix), form).is_multiple_of(form)
    if other != c:
        raise InternalInconsistency("character depends on the chosen lift")
    return c


def stabilizer_fiber_character(
    form: BinaryForm, A: MoebiusMap, order: int | None = None, zeta: Scalar | None = None
) -> FiberCharacter:
    """Character of a stabilizer element on the fiber line spanned by ``form``.

    ``order`` is the order of A in PGL2 (computed when omitted); the exponent
    is taken relative to ``zeta``, by default a/d for diagonal A.
    """
    c = fiber_scalar(form, A)
    if order is None:
        from .moebius import default_order_bound, element_order

        order = element_order(A, default_order_bound(form.genus) * 4)
        if order is None:
            raise InternalInconsistency("stabilizer element of unbounded order")
    if order == 1:
        if not c.is_one():
            raise InternalInconsistency("identity acts nontrivially")
        return FiberCharacter(1, 0, c)
    if zeta is None:
        zeta = _reference_root(A, order)
    e = _discrete_log(c, zeta, order)
    if e is None:
        raise InternalInconsistency(f"fiber scalar {c} is not a power of the chosen root of order {order}")
    return FiberCharacter(order, e, c)


# -- descent --

def probe_forms(g: int, field: FieldTag) -> tuple[BinaryForm, BinaryForm]:
    """f1 = X^(2g+1) Y - Y^(2g+2) and f2 = X^(2g+2) - Y^(2g+2)."""
    n = 2 * g + 2
    c1 = [0] * (n + 1)
    c1[0], c1[n - 1] = -1, 1
    c2 = [0] * (n + 1)
    c2[0], c2[n] = -1, 1
    return BinaryForm.from_coeffs(field, c1, g), BinaryForm.from_coeffs(field, c2, g)


def probe_field(g: int) -> FieldTag:
    return GF(prime_with_roots_of_unity(2 * g + 1, 2 * g + 2))


@dataclass(frozen=True)
class _Probe:
    name: str
    form: BinaryForm
    config: PointConfiguration
    group: ConfigAutGroup
    scalars: tuple[Scalar, ...]

    def allowed_twists(self, modulus: int) -> list[int]:
        return [d for d in range(modulus) if all((c**d).is_one() for c in self.scalars)]


def _run_probe(name: str, form: BinaryForm, config: PointConfiguration, check_hom: bool) -> _Probe:
    group = automorphism_group(config)
    scalars = tuple(fiber_scalar(form, A) for A in group.elements)
    if check_hom:
        table = dict(zip(group.elements, scalars))
        for A, ca in table.items():
            for B, cb in table.items():
                if table[A @ B] != ca * cb:
                    raise InternalInconsistency("fiber character is not multiplicative")
    return _Probe(name, form, config, group, scalars)


def _probes(g: int, field: FieldTag, check_hom: bool):
    f1, f2 = probe_forms(g, field)
    p1 = _run_probe("f1", f1, roots_of_unity_config(field, 2 * g + 1, with_infinity=True), check_hom)
    p2 = _run_probe("f2", f2, roots_of_unity_config(field, 2 * g + 2), check_hom)
    if p1.group.order != 2 * g + 1 or not p1.group.describe().startswith("cyclic"):
        raise InternalInconsistency(f"f1 stabilizer is {p1.group.describe()}, expected cyclic of order {2 * g + 1}")
    if p2.group.order != 4 * g + 4 or not p2.group.describe().startswith("dihedral"):
        raise InternalInconsistency(f"f2 stabilizer is {p2.group.describe()}, expected dihedral of order {4 * g + 4}")
    return p1, p2


def _check_descent_field(g: int, field: FieldTag) -> None:
    if char_divides(field.char, 2 * g + 2) or char_divides(field.char, 2 * g + 1):
        raise BadCharacteristic(f"characteristic {field.char} divides 2g+2 or 2g+1")
    if not field.is_finite or (field.order - 1) % ((2 * g + 1) * (2 * g + 2)):
        raise PreconditionViolated(f"{field} lacks the roots of unity of orders {2 * g + 1} and {2 * g + 2}")


def descent_subgroup(
    g: int, field: FieldTag | None = None, probes=("f1", "f2"), check_hom: bool = False
) -> dict:
    """Twists d in Z/(4g+2) on which every probe stabilizer acts trivially.

    Returns the subgroup as a sorted residue list together with the
    per-probe allowed sets and stabilizer descriptions.
    """
    _check_genus(g)
    field = field or probe_field(g)
    _check_descent_field(g, field)
    modulus = 4 * g + 2
    result = set(range(modulus))
    per_probe = {}
    for probe in _probes(g, field, check_hom):
        if any(not (c**modulus).is_one() for c in probe.scalars):
            raise InternalInconsistency("a character does not factor through Z/(4g+2)")
        if probe.name not in probes:
            continue
        allowed = probe.allowed_twists(modulus)
        result &= set(allowed)
        per_probe[probe.name] = {
            "form": probe.form.to_json(),
            "stabilizer_order": probe.group.order,
            "stabilizer": probe.group.describe(),
            "fiber_scalars": sorted({str(c) for c in probe.scalars}, key=lambda s: int(s)),
            "allowed_twists": allowed,
        }
    return {
        "g": g,
        "field": str(field),
        "modulus": modulus,
        "subgroup": sorted(result),
        "order": len(result),
        "probes": per_probe,
    }


# -- tautological line bundles --

def m_of(a: int, b: int, g: int) -> int:
    m = (a + b) * g + (b - a)
    if m < 0:
        raise NegativeDegree(f"m({a}, {b}) = {m} < 0")
    return m


def pushforward_rank(a: int, b: int, g: int) -> int:
    return m_of(a, b, g) + 1


def tab_exponent(a: int, b: int, g: int) -> CyclicClass:
    """Exponent of the generator giving the determinant bundle for (a, b)."""
    _check_genus(g)
    m = m_of(a, b, g)
    e = (a + b) * (m + 1) if m < g + 1 else (a + b - 1) * (m - g)
    if g % 2 == 0:
        if e % 2:
            raise InternalInconsistency(f"odd exponent {e} for even genus")
        e //= 2
    return CyclicClass(stack_picard_order(g), e)


def hodge_index(g: int) -> int:
    return tab_exponent(1, 0, g).subgroup_index()


def generator_descriptor(g: int) -> str:
    return f"pi_*(omega^{g + 1}(-{g - 1}W))"


def picard_report(g: int, field: FieldTag | None = None, trace: bool = True) -> PicardReport:
    field = field or probe_field(g)
    report = group_orders(g, field.char)
    descent = descent_subgroup(g, field)
    report.descent_subgroup_order = descent["order"]
    report.hodge_exponent = tab_exponent(1, 0, g)
    report.hodge_index = hodge_index(g)
    report.generator = generator_descriptor(g)
    report.probes = [
        {"name": k, "stabilizer_order": v["stabilizer_order"], "stabilizer": v["stabilizer"]}
        for k, v in sorted(descent["probes"].items())
    ]
    if trace:
        report.trace = [
            {"probe": k, "fiber_scalars": v["fiber_scalars"], "allowed_twists": v["allowed_twists"]}
            for k, v in sorted(descent["probes"].items())
        ] + [{"intersection": descent["subgroup"], "field": descent["field"]}]
    return report
