"""Points of P^1 and elements of PGL2 over an exact field.

Both are stored in a canonical normalization, so equality and hashing are
exact set operations with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DegenerateConfiguration, DegenerateTriple, HyperellError, SingularMatrix
from .field import FieldTag, Scalar


@dataclass(frozen=True)
class ProjectivePoint:
    """(x : y) normalized to y = 1, or to (1 : 0) at infinity."""

    x: Scalar
    y: Scalar

    def __post_init__(self):
        x, y = self.x, self.y
        if x.field != y.field:
            raise HyperellError("coordinates over different fields")
        if y.is_zero():
            if x.is_zero():
                raise HyperellError("(0 : 0) is not a point")
            x, y = x.field.one, x.field.zero
        elif not y.is_one():
            x, y = x / y, x.field.one
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def of(cls, field: FieldTag, x, y=1) -> "ProjectivePoint":
        return cls(field(x), field(y))

    @classmethod
    def infinity(cls, field: FieldTag) -> "ProjectivePoint":
        return cls(field.one, field.zero)

    @property
    def field(self) -> FieldTag:
        return self.x.field

    @property
    def is_infinity(self) -> bool:
        return self.y.is_zero()

    def sort_key(self):
        return (1, 0) if self.is_infinity else (0, self.x.sort_key())

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "oo" if self.is_infinity else str(self.x)

    def __repr__(self) -> str:
        return f"({self.x}:{self.y})"

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    @classmethod
    def from_json(cls, field: FieldTag, data) -> "ProjectivePoint":
        x, y = data
        return cls(field.parse_scalar(str(x)), field.parse_scalar(str(y)))


def _normalize(entries: tuple[Scalar, Scalar, Scalar, Scalar]):
    pivot = next((e for e in entries if not e.is_zero()), None)
    if pivot is None:
        raise SingularMatrix("zero matrix")
    inv = pivot.inverse()
    return tuple(e * inv for e in entries)


@dataclass(frozen=True, init=False)
class MoebiusMap:
    """Class of an invertible 2x2 matrix [[a, b], [c, d]] in PGL2."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __init__(self, matrix, field: FieldTag | None = None):
        (a, b), (c, d) = matrix
        if field is None:
            field = next(e.field for e in (a, b, c, d) if isinstance(e, Scalar))
        entries = tuple(field(e) for e in (a, b, c, d))
        if (entries[0] * entries[3] - entries[1] * entries[2]).is_zero():
            raise SingularMatrix("determinant is zero")
        for name, e in zip("abcd", _normalize(entries)):
            object.__setattr__(self, name, e)

    @classmethod
    def identity(cls, field: FieldTag) -> "MoebiusMap":
        return cls(((1, 0), (0, 1)), field)

    @property
    def field(self) -> FieldTag:
        return self.a.field

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def __call__(self, p: ProjectivePoint) -> ProjectivePoint:
        return apply(self, p)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: (self @ other)(P) = self(other(P))."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusMap(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(((self.d, -self.b), (-self.c, self.a)))

    def __pow__(self, n: int) -> "MoebiusMap":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = MoebiusMap.identity(self.field), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def sort_key(self):
        return tuple(e.sort_key() for e in (self.a, self.b, self.c, self.d))

    def to_json(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    @classmethod
    def from_json(cls, field: FieldTag, data) -> "MoebiusMap":
        return cls([[field.parse_scalar(str(e)) for e in row] for row in data], field)

    def __repr__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def apply(A: MoebiusMap, P: ProjectivePoint) -> ProjectivePoint:
    return ProjectivePoint(A.a * P.x + A.b * P.y, A.c * P.x + A.d * P.y)


def _frame(p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint):
    """Matrix sending (1:0), (0:1), (1:1) to p1, p2, p3 (unnormalized)."""
    # columns are l1*p1 and l2*p2 with l1*p1 + l2*p2 proportional to p3
    det = p1.x * p2.y - p2.x * p1.y
    l1 = p2.y * p3.x - p2.x * p3.y
    l2 = -p1.y * p3.x + p1.x * p3.y
    if det.is_zero() or l1.is_zero() or l2.is_zero():
        raise DegenerateTriple("points are not distinct")
    return ((l1 * p1.x, l2 * p2.x), (l1 * p1.y, l2 * p2.y))


def from_three_points(src: Iterable[ProjectivePoint], dst: Iterable[ProjectivePoint]) -> MoebiusMap:
    """The unique Moebius map sending src[i] to dst[i]."""
    src, dst = tuple(src), tuple(dst)
    if len(src) != 3 or len(dst) != 3:
        raise DegenerateTriple("need exactly three source and three target points")
    S = MoebiusMap(_frame(*src))
    T = MoebiusMap(_frame(*dst))
    return T @ S.inverse()


def default_order_bound(genus: int) -> int:
    return 2 * (2 * genus + 2) ** 2


def element_order(A: MoebiusMap, bound: int) -> int | None:
    """Least n <= bound with A^n = 1 in PGL2, or None (unbounded)."""
    if bound < 1:
        raise HyperellError("bound must be positive")
    power = A
    for n in range(1, bound + 1):
        if power.is_identity():
            return n
        power = power @ A
    return None


def solve_pairing_involution(p1, p2, p3, p4) -> MoebiusMap:
    """The involution A with A(p1) = p2 and A(p3) = p4.

    In the frame where p1, p2, p3 = (1:0), (1:1), (0:1) and p4 = (c:d), the
    answer is [[1, l c], [1, l d]] with l = -1/d.
    """
    pts = (p1, p2, p3, p4)
    if len(set(pts)) != 4:
        raise DegenerateConfiguration("points must be pairwise distinct")
    field = p1.field
    one, zero = field.one, field.zero
    std = (ProjectivePoint(one, zero), ProjectivePoint(one, one), ProjectivePoint(zero, one))
    T = from_three_points((p1, p2, p3), std)
    q = T(p4)
    c, d = q.x, q.y
    if c.is_zero() or d.is_zero() or c == d:
        raise DegenerateConfiguration("fourth point must satisfy c != 0, d != 0, c != d")
    lam = -d.inverse()
    A0 = MoebiusMap(((one, lam * c), (one, lam * d)))
    return T.inverse() @ A0 @ T


def all_pgl2(field: FieldTag):
    """Every element of PGL2 over a small finite field (brute-force oracle)."""
    elems = list(field.elements())
    one, zero = field.one, field.zero
    seen = set()
    for a in (zero, one):
        for b in elems:
            for c in elems:
                for d in elems:
                    if a.is_zero() and not b.is_one():
                        continue
                    if (a * d - b * c).is_zero():
                        continue
                    m = MoebiusMap(((a, b), (c, d)))
                    if m not in seen:
                        seen.add(m)
                        yield m
