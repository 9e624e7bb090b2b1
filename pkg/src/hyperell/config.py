"""Finite point sets on P^1: stabilizers in PGL2 and PGL2-equivalence.

Both searches fix the lexicographically least ordered triple of the source
configuration and try every ordered triple of distinct target points as its
image; a Moebius map is determined by three points, so this enumerates every
candidate exactly once.  Over a prime field the enumeration runs in the
integer kernels of :mod:`hyperell._kernels`; other fields use exact Scalars.

A map sending three points of the configuration to three of its points is
defined over the field of those points, so for a configuration of rational
points the stabilizer found here is already the full geometric one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _kernels
from .errors import BadCharacteristic, HyperellError, PreconditionViolated, TooFewPoints
from .field import FieldTag
from .moebius import MoebiusMap, ProjectivePoint, apply, from_three_points
from .strata import Permutation


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[ProjectivePoint, ...]
    field: FieldTag

    def __post_init__(self):
        pts = tuple(sorted(self.points))
        if any(p.field != self.field for p in pts):
            raise HyperellError("point outside the configuration field")
        if len(set(pts)) != len(pts):
            raise PreconditionViolated("configuration points must be distinct")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, field: FieldTag, coords: Iterable) -> "PointConfiguration":
        """Points given as affine values, pairs (x, y), or the string "oo"."""
        pts = []
        for c in coords:
            if isinstance(c, str) and c.strip() in ("oo", "inf", "infinity"):
                pts.append(ProjectivePoint.infinity(field))
            elif isinstance(c, (tuple, list)) and len(c) == 2:
                pts.append(ProjectivePoint(field(c[0]), field(c[1])))
            elif isinstance(c, ProjectivePoint):
                pts.append(c)
            else:
                pts.append(ProjectivePoint(field(c), field.one))
        return cls(tuple(pts), field)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, p: ProjectivePoint) -> int:
        return self.points.index(p)

    def image(self, A: MoebiusMap) -> "PointConfiguration":
        return PointConfiguration(tuple(apply(A, p) for p in self.points), self.field)

    @property
    def genus(self) -> int:
        return (len(self) - 2) // 2

    def to_json(self) -> dict:
        return {"field": str(self.field), "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        field = FieldTag.parse(data["field"])
        return cls(tuple(ProjectivePoint.from_json(field, p) for p in data["points"]), field)

    def _int_rows(self):
        return [(1, 0) if q.is_infinity else (q.x.value, 1) for q in self.points]

    def uses_kernel(self) -> bool:
        return self.field.is_finite and self.field.degree == 1 and self.field.p <= _kernels.MAX_PRIME


def roots_of_unity_config(field: FieldTag, n: int, with_infinity: bool = False, with_zero: bool = False):
    """mu_n, optionally with infinity and/or zero adjoined."""
    zeta = field.primitive_root_of_unity(n)
    coords = [zeta**k for k in range(n)]
    if with_infinity:
        coords.append("oo")
    if with_zero:
        coords.append(field.zero)
    return PointConfiguration.of(field, coords)


@dataclass(frozen=True)
class ConfigAutGroup:
    config: PointConfiguration
    elements: tuple[MoebiusMap, ...]
    perm_rep: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_orders(self) -> list[int]:
        return [p.order() for p in self.perm_rep]

    def is_trivial(self) -> bool:
        return self.order == 1

    def check_group_axioms(self) -> bool:
        elems = set(self.elements)
        if not any(e.is_identity() for e in elems):
            return False
        for a in elems:
            if a.inverse() not in elems:
                return False
            for b in elems:
                if a @ b not in elems:
                    return False
        return True

    def describe(self) -> str:
        n = self.order
        if n == 1:
            return "trivial"
        orders = self.element_orders()
        if n in orders:
            return f"cyclic of order {n}"
        if n % 2 == 0 and n // 2 in orders and sum(1 for o in orders if o == 2) >= n // 2:
            return f"dihedral of order {n}"
        return f"order {n}"

    def to_json(self, trace: bool = True) -> dict:
        out = {
            "order": self.order,
            "structure": self.describe(),
            "cycle_types": sorted(
                (list(p.cycle_type) for p in self.perm_rep), key=lambda c: (-len(c), c)
            ),
        }
        if trace:
            out["elements"] = [
                {"matrix": e.to_json(), "permutation": str(p), "order": p.order()}
                for e, p in zip(self.elements, self.perm_rep)
            ]
        return out


def _witnesses(c1: PointConfiguration, c2: PointConfiguration) -> list[MoebiusMap]:
    """All A in PGL2(k) with A(c1) = c2, identity first, then by normalized matrix."""
    if c1.field != c2.field or len(c1) != len(c2):
        return []
    if len(c1) < 3:
        raise TooFewPoints("need at least 3 points")
    base = c1.points[:3]
    if c1.uses_kernel():
        rows = _kernels.preserving_maps(c1._int_rows()[:3], c1._int_rows(), c2._int_rows(), c1.field.p)
        found = [MoebiusMap(((int(a), int(b)), (int(c), int(d))), c1.field) for a, b, c, d in rows]
    else:
        target = set(c2.points)
        found = []
        for q1 in c2.points:
            for q2 in c2.points:
                if q2 == q1:
                    continue
                for q3 in c2.points:
                    if q3 == q1 or q3 == q2:
                        continue
                    A = from_three_points(base, (q1, q2, q3))
                    if all(apply(A, p) in target for p in c1.points):
                        found.append(A)
    found.sort(key=lambda m: (not m.is_identity(), m.sort_key()))
    return found


def permutation_of(A: MoebiusMap, config: PointConfiguration) -> Permutation:
    return Permutation(tuple(config.index(apply(A, p)) for p in config.points))


def automorphism_group(config: PointConfiguration) -> ConfigAutGroup:
    """Stabilizer of the point set in PGL2 of its field."""
    if len(config) < 3:
        raise TooFewPoints("need at least 3 points")
    elems = _witnesses(config, config)
    perms = tuple(permutation_of(A, config) for A in elems)
    return ConfigAutGroup(config, tuple(elems), perms)


def pgl2_equivalences(c1: PointConfiguration, c2: PointConfiguration) -> list[MoebiusMap]:
    return _witnesses(c1, c2)


def are_pgl2_equivalent(c1: PointConfiguration, c2: PointConfiguration) -> MoebiusMap | None:
    """Some A with A(c1) = c2, or None."""
    found = _witnesses(c1, c2)
    return found[0] if found else None


def extra_involution_type(config: PointConfiguration) -> Permutation | None:
    """A fixed-point-free involution of the 2g+2 points induced by PGL2, if any."""
    if len(config) % 2 or len(config) < 6:
        raise PreconditionViolated("need 2g+2 >= 6 points")
    group = automorphism_group(config)
    for perm in group.perm_rep:
        if perm.order() == 2 and perm.is_fixed_point_free_involution():
            return perm
    return None


def moduli_point_is_singular(config: PointConfiguration, g: int) -> bool:
    """Whether the configuration maps to a singular point of the moduli space.

    For g >= 3 these are the points with extra automorphisms.  For g = 2 the
    only singular point is the class of the roots of x^6 - x, i.e. {0} u mu_5;
    when the field lacks mu_5 the class is detected by an automorphism of
    order 5, which characterizes it (a 6-point set with an order-5 symmetry is
    one orbit plus a fixed point).
    """
    if len(config) != 2 * g + 2:
        raise PreconditionViolated(f"need {2 * g + 2} points for genus {g}")
    if g >= 3:
        return not automorphism_group(config).is_trivial()
    if config.field.char == 5:
        raise BadCharacteristic("the genus-2 singular locus is undefined in characteristic 5")
    field = config.field
    if field.is_finite and (field.order - 1) % 5 == 0:
        ref = roots_of_unity_config(field, 5, with_zero=True)
        return are_pgl2_equivalent(config, ref) is not None
    return 5 in automorphism_group(config).element_orders()
