"""Binary forms of even degree, their discriminant and the weighted GL2 action.

``BinaryForm(genus=g, coeffs=[c_0, ..., c_n])`` with ``n = 2g + 2``
represents ``f(X, Y) = sum c_i X^i Y^(n-i)`` (coefficients ascending in X).
Points of P^1 are written ``(x : y)``; ``(1 : 0)`` is infinity and is a root
exactly when ``c_n = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import poly
from .errors import BadCharacteristic, DegenerateInput, HyperellError, SingularMatrix
from .field import FieldTag, Scalar, char_divides


@dataclass(frozen=True)
class BinaryForm:
    genus: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.genus < 2:
            raise HyperellError("genus must be at least 2")
        if len(coeffs) != 2 * self.genus + 3:
            raise HyperellError(
                f"a genus-{self.genus} form needs {2 * self.genus + 3} coefficients, got {len(coeffs)}"
            )
        if len({c.field for c in coeffs}) != 1:
            raise HyperellError("coefficients over different fields")
        if all(c.is_zero() for c in coeffs):
            raise DegenerateInput("the zero form")

    @classmethod
    def from_coeffs(cls, field: FieldTag, coeffs, genus: int | None = None) -> "BinaryForm":
        coeffs = [field(c) for c in coeffs]
        if genus is None:
            genus = (len(coeffs) - 3) // 2
        return cls(genus, tuple(coeffs))

    @classmethod
    def from_roots(cls, field: FieldTag, points) -> "BinaryForm":
        """Form prod (y_i X - x_i Y) vanishing at the given projective points.

        ``points`` are pairs ``(x, y)``; the result is monic when no point is
        at infinity.
        """
        coeffs = [field.one]
        for x, y in points:
            x, y = field(x), field(y)
            coeffs = _mul_linear(coeffs, y, -x)
        return cls((len(coeffs) - 3) // 2, tuple(coeffs))

    # -- basic accessors --

    @property
    def field(self) -> FieldTag:
        return self.coeffs[0].field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1]

    def dehomogenize(self) -> list[Scalar]:
        """f(x, 1) as an ascending coefficient list."""
        return poly.trim(list(self.coeffs))

    def __call__(self, x, y) -> Scalar:
        f = self.field
        x, y = f(x), f(y)
        acc = f.zero
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * x**i * y ** (n - i)
        return acc

    def scale(self, lam) -> "BinaryForm":
        lam = self.field(lam)
        return BinaryForm(self.genus, tuple(c * lam for c in self.coeffs))

    def is_multiple_of(self, other: "BinaryForm") -> Scalar | None:
        """The scalar mu with self = mu * other, or None."""
        if self.field != other.field or self.degree != other.degree:
            return None
        mu = None
        for a, b in zip(self.coeffs, other.coeffs):
            if b.is_zero():
                if not a.is_zero():
                    return None
                continue
            r = a / b
            if mu is None:
                mu = r
            elif r != mu:
                return None
        return mu

    def substitute(self, m) -> "BinaryForm":
        """f(a X + b Y, c X + d Y) for m = ((a, b), (c, d))."""
        (a, b), (c, d) = m
        f = self.field
        a, b, c, d = f(a), f(b), f(c), f(d)
        n = self.degree
        out = [f.zero] * (n + 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            # (aX + bY)^i (cX + dY)^(n-i), ascending in X
            term = _linear_power(a, b, i, f)
            term = _mul_hom(term, _linear_power(c, d, n - i, f))
            for k, t in enumerate(term):
                out[k] = out[k] + ci * t
        return BinaryForm(self.genus, tuple(out))

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "coeffs": [str(c) for c in self.coeffs],
            "field": str(self.field),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BinaryForm":
        field = FieldTag.parse(data["field"])
        genus = data.get("genus")
        return cls.from_coeffs(field, [field.parse_scalar(str(c)) for c in data["coeffs"]], genus)

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for i in range(n, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "*".join(
                s for s in (f"X^{i}" if i > 1 else "X" if i == 1 else "",
                            f"Y^{n - i}" if n - i > 1 else "Y" if n - i == 1 else "") if s
            )
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms) or "0"


def _mul_linear(coeffs, alpha, beta):
    """Multiply a form (ascending in X) by alpha X + beta Y."""
    field = alpha.field
    out = [field.zero] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = out[i] + c * beta
        out[i + 1] = out[i + 1] + c * alpha
    return out


def _linear_power(a, b, k, field):
    """(aX + bY)^k, ascending in X."""
    return [field(comb(k, j)) * a**j * b ** (k - j) for j in range(k + 1)]


def _mul_hom(u, v):
    field = u[0].field
    out = [field.zero] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x.is_zero():
            continue
        for j, y in enumerate(v):
            out[i + j] = out[i + j] + x * y
    return out


# -- resultants and discriminants --

def sylvester_resultant(f, h) -> Scalar:
    """Determinant of the Sylvester matrix of two dehomogenized polynomials.

    Equals ``lead(h)^deg(f) * prod f(beta)`` over the roots beta of h.
    """
    f, h = poly.trim(f), poly.trim(h)
    if not f or not h:
        raise DegenerateInput("zero polynomial input")
    return poly.sylvester_resultant(f, h)


def discriminant_of_poly(f: list[Scalar]) -> Scalar:
    """(-1)^(n(n-1)/2) Res(f, f') / lead(f) for a univariate f of degree n >= 1."""
    f = poly.trim(f)
    n = len(f) - 1
    if n < 1:
        raise DegenerateInput("discriminant of a constant")
    field = f[0].field
    if char_divides(field.char, n):
        raise BadCharacteristic(f"characteristic {field.char} divides the degree {n}")
    if n == 1:
        return field.one
    res = poly.sylvester_resultant(f, poly.derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res * sign / f[-1]


def _move_infinity(form: BinaryForm) -> BinaryForm:
    """f(X, tX + Y) for the least t making the X^n coefficient f(1, t) nonzero.

    The substitution has determinant 1, so the discriminant is unchanged.
    """
    f = form.field
    for t in range(form.degree + 2):
        tt = f(t)
        if not form(f.one, tt).is_zero():
            return form.substitute(((1, 0), (tt, 1)))
    raise DegenerateInput("no coordinate change moves infinity off the root set")


def discriminant(form: BinaryForm) -> Scalar:
    """Discriminant of a degree-(2g+2) binary form, homogeneous of degree 4g+2."""
    n = form.degree
    if char_divides(form.field.char, n):
        raise BadCharacteristic(f"characteristic {form.field.char} divides {n}")
    if form.leading.is_zero():
        form = _move_infinity(form)
    return discriminant_of_poly(list(form.coeffs))


def is_smooth(form: BinaryForm) -> bool:
    return not discriminant(form).is_zero()


def has_repeated_root(form: BinaryForm) -> bool:
    """Independent smoothness test via gcd(f, f') on the dehomogenization."""
    if form.coeffs[-1].is_zero() and form.coeffs[-2].is_zero():
        return True  # double root at infinity
    f = form.dehomogenize()
    return len(poly.gcd(f, poly.derivative(f))) > 1


# -- group action --

def _matrix(A, field):
    (a, b), (c, d) = A
    return field(a), field(b), field(c), field(d)


def gl2_act(A, form: BinaryForm) -> BinaryForm:
    """det(A)^(g+1) * f(A^-1 (X, Y)).

    Scalar multiples of A give the same result, so this is also the linear
    PGL2 action on forms of degree 2g+2.
    """
    a, b, c, d = _matrix(A, form.field)
    det = a * d - b * c
    if det.is_zero():
        raise SingularMatrix("matrix is not invertible")
    # f(A^-1 x) = f(adj(A) x) / det^n, so the weight becomes det^(g+1-n) = det^-(g+1)
    sub = form.substitute(((d, -b), (-c, a)))
    return sub.scale((det ** (form.genus + 1)).inverse())


def mat_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
