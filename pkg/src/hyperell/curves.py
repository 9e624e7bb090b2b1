"""Hyperelliptic curves a*y^2 = f(x, 1) with f a smooth binary form of degree 2g+2.

A curve is determined over the closure by its 2g+2 branch points; over the
base field the extra datum is the twist ``a`` up to squares and up to the
scalars produced by automorphisms of the branch configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels, poly
from .config import (
    ConfigAutGroup,
    PointConfiguration,
    are_pgl2_equivalent,
    automorphism_group,
    pgl2_equivalences,
)
from .errors import (
    BadCharacteristic,
    DegenerateInput,
    ExcludedJ,
    FieldMismatch,
    InternalInconsistency,
    NonSplitForm,
    NotFinite,
    PreconditionViolated,
    TooFewPoints,
    ZeroInput,
)
from .field import FieldTag, Scalar, SquareClass, nonsquare, square_class
from .forms import BinaryForm, is_smooth
from .moebius import MoebiusMap, ProjectivePoint, apply

MAX_COUNT_PRIME = 10**6


@dataclass(frozen=True)
class HyperellipticCurve:
    """``twist * y^2 = form(x, 1)``; ``chart`` maps original coordinates to the model's."""

    form: BinaryForm
    twist: Scalar
    chart: MoebiusMap | None = None

    def __post_init__(self):
        if self.twist.field != self.form.field:
            raise FieldMismatch("twist and form live over different fields")
        if self.twist.is_zero():
            raise ZeroInput("twist must be nonzero")
        if not is_smooth(self.form):
            raise DegenerateInput("the form has a repeated root")

    @property
    def genus(self) -> int:
        return self.form.genus

    @property
    def field(self) -> FieldTag:
        return self.form.field

    def with_twist(self, a) -> "HyperellipticCurve":
        return HyperellipticCurve(self.form, self.field(a), self.chart)

    def to_json(self) -> dict:
        out = self.form.to_json()
        out["twist"] = str(self.twist)
        if self.chart is not None:
            out["chart"] = self.chart.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "HyperellipticCurve":
        form = BinaryForm.from_json(data)
        field = form.field
        chart = MoebiusMap.from_json(field, data["chart"]) if data.get("chart") else None
        return cls(form, field.parse_scalar(str(data.get("twist", "1"))), chart)

    def __str__(self) -> str:
        f = poly.trim(list(self.form.coeffs))
        terms = []
        for i in range(len(f) - 1, -1, -1):
            if f[i].is_zero():
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            c = str(f[i])
            terms.append(mono if c == "1" and mono else f"{c}*{mono}" if mono else c)
        lhs = "y^2" if self.twist.is_one() else f"{self.twist}*y^2"
        return f"{lhs} = {' + '.join(terms)}"


def _chart_shift(config: PointConfiguration) -> MoebiusMap:
    """x -> 1/(x - t) for the least integer t whose point is not in the configuration."""
    field = config.field
    pts = set(config.points)
    t = 0
    while True:
        cand = ProjectivePoint(field(t), field.one)
        if cand not in pts:
            return MoebiusMap(((0, 1), (1, -t)), field)
        t += 1
        if field.is_finite and t >= field.order:
            raise TooFewPoints("no rational point outside the configuration")


def curve_from_config(config: PointConfiguration, twist=1) -> HyperellipticCurve:
    """The curve twist * y^2 = prod (x - x_i) branched exactly over the configuration.

    If infinity is a branch point the model is built in the chart given by a
    deterministic shift, recorded on the curve.
    """
    if len(config) < 6 or len(config) % 2:
        raise TooFewPoints("need an even number 2g+2 >= 6 of branch points")
    field = config.field
    twist = field(twist)
    if twist.is_zero():
        raise ZeroInput("twist must be nonzero")
    chart = None
    pts = config.points
    if any(p.is_infinity for p in pts):
        chart = _chart_shift(config)
        pts = tuple(apply(chart, p) for p in pts)
    form = BinaryForm.from_roots(field, [(p.x, p.y) for p in pts])
    return HyperellipticCurve(form, twist, chart)


def _roots_in(c: HyperellipticCurve, field: FieldTag) -> list[ProjectivePoint]:
    f = [field(x) for x in c.form.dehomogenize()]
    pts = [ProjectivePoint(r, field.one) for r in poly.roots(f)]
    if c.form.leading.is_zero():
        pts.append(ProjectivePoint.infinity(field))
    return pts


def splitting_degree(c: HyperellipticCurve) -> int:
    """Least m such that all branch points are defined over the degree-m extension."""
    if not c.field.is_finite:
        raise NotFinite("splitting degrees are computed over finite fields only")
    return poly.splitting_degree(c.form.dehomogenize())


def model_branch_points(c: HyperellipticCurve, extension_degree: int = 1) -> PointConfiguration:
    """Roots in P^1 of the model's form, in the model's coordinates.

    With ``extension_degree > 1`` the roots are taken in that extension of
    the (prime) base field.
    """
    field = c.field if extension_degree == 1 else c.field.extension(extension_degree)
    pts = _roots_in(c, field)
    if len(pts) != c.form.degree:
        f = c.form.dehomogenize()
        if field.is_finite:
            degs = poly.distinct_degree_degrees(f)
            detail = f"irreducible factors of degrees {degs}; splits over degree {poly.splitting_degree(f)}"
        else:
            detail = f"only {len(pts)} rational roots"
        raise NonSplitForm(f"form does not split over {field}: {detail}")
    return PointConfiguration(tuple(pts), field)


def geometric_branch_points(c: HyperellipticCurve, extension_degree: int | None = None) -> PointConfiguration:
    """Branch points over a field where they are all rational (the splitting field by default)."""
    if extension_degree is None:
        extension_degree = splitting_degree(c) if c.field.is_finite else 1
    return model_branch_points(c, extension_degree)


def weierstrass_points(c: HyperellipticCurve) -> PointConfiguration:
    """The 2g+2 branch points, in the coordinates the curve was built from."""
    pts = model_branch_points(c)
    if c.chart is None:
        return pts
    return pts.image(c.chart.inverse())


@dataclass(frozen=True)
class ReducedAutomorphisms:
    group: ConfigAutGroup
    full_order: int

    def to_json(self, trace: bool = True) -> dict:
        out = self.group.to_json(trace)
        out["full_order"] = self.full_order
        return out


def reduced_automorphism_group(c: HyperellipticCurve, extension_degree: int | None = None) -> ReducedAutomorphisms:
    """G = Aut(C)/<involution> acting on the branch points; |Aut(C)| = 2|G|.

    The search runs where the branch points are rational, so G is the
    geometric group.
    """
    group = automorphism_group(geometric_branch_points(c, extension_degree))
    for perm in group.perm_rep:
        if perm.order() > 1 and len(perm.fixed_points()) > 2:
            raise InternalInconsistency("a nontrivial element fixes more than two branch points")
    return ReducedAutomorphisms(group, 2 * group.order)


def _same_genus(c1: HyperellipticCurve, c2: HyperellipticCurve) -> None:
    if c1.genus != c2.genus:
        raise PreconditionViolated("curves of different genus")
    if c1.field != c2.field:
        raise FieldMismatch("curves over different fields")


def _common_degree(c1: HyperellipticCurve, c2: HyperellipticCurve) -> int:
    if not c1.field.is_finite:
        return 1
    return math.lcm(splitting_degree(c1), splitting_degree(c2))


def isomorphic_over_closure(c1: HyperellipticCurve, c2: HyperellipticCurve) -> MoebiusMap | None:
    """A Moebius map between the branch configurations, or None.

    A map carrying three points rational over some field to points rational
    over it is itself rational there, so searching over the common splitting
    field finds every geometric equivalence.
    """
    _same_genus(c1, c2)
    m = _common_degree(c1, c2)
    return are_pgl2_equivalent(model_branch_points(c1, m), model_branch_points(c2, m))


def _descend(A: MoebiusMap, base: FieldTag) -> MoebiusMap | None:
    """A as a map over the prime field ``base`` if its normalized entries lie there."""
    if A.field == base:
        return A
    entries = []
    for e in (A.a, A.b, A.c, A.d):
        if any(e.value[1:]):
            return None
        entries.append(base(e.value[0]))
    return MoebiusMap(((entries[0], entries[1]), (entries[2], entries[3])), base)


@dataclass(frozen=True)
class CurveIsoWitness:
    """(x, y) -> (A(x), s * y / (c x + d)^(g+1)) with f2 o A = mu * f1 and s^2 = mu a1 / a2."""

    moebius: MoebiusMap
    mu: Scalar
    y_scale: Scalar | None
    scale_class: SquareClass

    def check(self, c1: HyperellipticCurve, c2: HyperellipticCurve) -> bool:
        mu = c2.form.substitute(self.moebius.matrix).is_multiple_of(c1.form)
        if mu != self.mu:
            return False
        if self.y_scale is None:
            return self.scale_class is SquareClass.SQUARE
        return self.y_scale**2 * c2.twist == self.mu * c1.twist

    def to_json(self) -> dict:
        return {
            "moebius": self.moebius.to_json(),
            "mu": str(self.mu),
            "y_scale": None if self.y_scale is None else str(self.y_scale),
            "scale_class": str(self.scale_class),
        }


def _sqrt(r: Scalar) -> Scalar | None:
    field = r.field
    rts = poly.roots([-r, field.zero, field.one])
    return rts[0] if rts else None


def isomorphic_over_field(c1: HyperellipticCurve, c2: HyperellipticCurve) -> CurveIsoWitness | None:
    """First branch-point witness A whose scalar makes a1 * a2 * mu a square."""
    _same_genus(c1, c2)
    m = _common_degree(c1, c2)
    for A in pgl2_equivalences(model_branch_points(c1, m), model_branch_points(c2, m)):
        A = _descend(A, c1.field)
        if A is None:
            continue
        mu = c2.form.substitute(A.matrix).is_multiple_of(c1.form)
        if mu is None:
            raise InternalInconsistency("a branch-point equivalence does not carry form to form")
        cls = square_class(c1.twist * c2.twist * mu)
        if cls is SquareClass.SQUARE:
            return CurveIsoWitness(A, mu, _sqrt(mu * c1.twist / c2.twist), cls)
    return None


def count_points(c: HyperellipticCurve, use_numba: bool | None = None) -> int:
    """Projective points of the smooth model over F_p, by a full scan of x."""
    field = c.field
    if not field.is_finite:
        raise NotFinite("point counting needs a finite field")
    if field.degree != 1 or field.p > MAX_COUNT_PRIME:
        raise PreconditionViolated(f"point counting supports prime fields with p <= {MAX_COUNT_PRIME}")
    p = field.p
    coeffs = [x.value for x in c.form.coeffs]
    affine = _kernels.affine_count(coeffs, c.twist.value, p, use_numba)
    return affine + points_at_infinity(c)


def points_at_infinity(c: HyperellipticCurve) -> int:
    lead = c.form.leading
    if lead.is_zero():
        return 1
    return 2 if square_class(lead / c.twist) is SquareClass.SQUARE else 0


def affine_count(c: HyperellipticCurve) -> int:
    return count_points(c) - points_at_infinity(c)


def twist_classes(source: PointConfiguration | BinaryForm, twists=None) -> dict:
    """Partition the curves a * y^2 = f over the given twists into field-isomorphism classes.

    ``source`` is a branch configuration or a smooth form f (whose roots may
    lie in an extension).  Over a finite field the default twists are 1 and
    the least nonsquare, which represent k*/(k*)^2.
    """
    field = source.field
    if twists is None:
        if not field.is_finite:
            raise PreconditionViolated("over Q pass the twists explicitly")
        twists = [field.one, nonsquare(field)]
    if isinstance(source, BinaryForm):
        curves = [HyperellipticCurve(source, field(a)) for a in twists]
    else:
        curves = [curve_from_config(source, a) for a in twists]
    classes: list[list[int]] = []
    for i, c in enumerate(curves):
        for cls in classes:
            if isomorphic_over_field(curves[cls[0]], c) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    closure = all(isomorphic_over_closure(curves[0], c) is not None for c in curves)
    group = reduced_automorphism_group(curves[0])
    return {
        "twists": [str(field(a)) for a in twists],
        "classes": [[str(field(twists[i])) for i in cls] for cls in classes],
        "n_classes": len(classes),
        "closure_isomorphic": closure,
        "reduced_automorphism_order": group.group.order,
    }


# -- parity predicates --

def tautological_family_exists(g: int) -> bool:
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    return g % 2 == 1


@dataclass(frozen=True)
class G12Status:
    exists: bool
    tag: str

    def __bool__(self) -> bool:
        return self.exists

    def to_json(self) -> dict:
        return {"exists": self.exists, "tag": self.tag}


def global_g12_exists_for_even_genus(g: int) -> G12Status:
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    if g % 2 == 0:
        return G12Status(True, "guaranteed")
    return G12Status(False, "not-guaranteed: odd genus admits families without a global g^1_2")


# -- genus one aside --

@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + a x + b."""

    a: Scalar
    b: Scalar

    def discriminant(self) -> Scalar:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def j_invariant(self) -> Scalar:
        num = 4 * self.a**3
        return 1728 * num / (num + 27 * self.b**2)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "field": str(self.a.field), "j": str(self.j_invariant())}

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({self.a})*x + ({self.b})"


def elliptic_taut_curve(j0: Scalar) -> EllipticCurve:
    """y^2 = x^3 + t(x + 1) with j-invariant j0, t = 27 j0 / (4 (1728 - j0))."""
    field = j0.field
    if field.char in (2, 3):
        raise BadCharacteristic("characteristic must not divide 6")
    if j0.is_zero() or j0 == field(1728):
        raise ExcludedJ(f"j = {j0} is excluded")
    t = 27 * j0 / (4 * (1728 - j0))
    curve = EllipticCurve(t, t)
    if curve.discriminant().is_zero() or curve.j_invariant() != j0:
        raise InternalInconsistency("constructed curve has the wrong j-invariant")
    return curve


def j_of_family(t) -> Fraction | Scalar:
    """Oracle: j(y^2 = x^3 + t x + t) = 1728 * 4t / (4t + 27)."""
    return 1728 * 4 * t / (4 * t + 27)
