"""Exact scalars over Q, prime fields F_p and their extensions F_{p^m}.

A :class:`FieldTag` names the field; a :class:`Scalar` is an immutable
element tagged with its field.  Values are stored as

* ``Fraction`` for Q,
* ``int`` in ``[0, p)`` for F_p,
* a tuple of ``m`` residues (coefficients of ``1, t, ..., t^{m-1}``) for
  F_{p^m} = F_p[t]/(modulus).

The characteristic is never 2.
"""

from __future__ import annotations

import enum
import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from sympy.ntheory import factorint, isprime

from .errors import (
    BadCharacteristic,
    BoundExceeded,
    DivisionByZero,
    FieldMismatch,
    HyperellError,
    InternalInconsistency,
    ZeroInput,
)

#: default bound for trial division when taking squarefree parts over Q
TRIAL_DIVISION_BOUND = 10**6


class SquareClass(enum.Enum):
    SQUARE = 1
    NONSQUARE = -1

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.value * other.value)

    def __str__(self) -> str:
        return "Square" if self is SquareClass.SQUARE else "NonSquare"


# -- small helpers for polynomials over F_p given as lists of ints (ascending) --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _ptrim(a[:dm] if len(a) > dm else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e, m, p):
    """x^e mod m over F_p."""
    result, base = [1], _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(f, p):
    """Rabin's irreducibility test for a monic f over F_p."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    if _xpow_mod(p**m, f, p) != _pmod(x, f, p):
        return False
    for r in factorint(m):
        h = _xpow_mod(p ** (m // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _ptrim(h), p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def conway_like_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree m over F_p."""
    for n in range(p**m):
        tail = []
        for _ in range(m):
            n, r = divmod(n, p)
            tail.append(r)
        f = list(reversed(tail)) + [1]
        if f[0] and _is_irreducible(f, p):
            return tuple(f)
    raise HyperellError(f"no irreducible polynomial of degree {m} over F_{p}")


# -- field tags --

@dataclass(frozen=True)
class FieldTag:
    """Q when ``p == 0``; otherwise F_{p^degree} with p an odd prime."""

    p: int = 0
    degree: int = 1

    def __post_init__(self):
        if self.p == 0:
            if self.degree != 1:
                raise HyperellError("extensions of Q are not supported")
            return
        if self.p == 2:
            raise BadCharacteristic("characteristic 2 is excluded")
        if self.p < 3 or not isprime(self.p):
            raise HyperellError(f"{self.p} is not an odd prime")
        if self.degree < 1:
            raise HyperellError("extension degree must be positive")

    # -- descriptors --

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        if not self.p:
            raise HyperellError("Q is infinite")
        return self.p**self.degree

    @property
    def modulus(self) -> tuple[int, ...]:
        return conway_like_modulus(self.p, self.degree)

    def __str__(self) -> str:
        if not self.p:
            return "Q"
        if self.degree == 1:
            return f"Fp:{self.p}"
        return f"Fq:{self.p}^{self.degree}"

    @classmethod
    def parse(cls, text: str) -> "FieldTag":
        text = text.strip()
        if text == "Q":
            return QQ
        kind, _, rest = text.partition(":")
        try:
            if kind == "Fp":
                return cls(int(rest))
            if kind == "Fq":
                p, _, m = rest.partition("^")
                return cls(int(p), int(m or 1))
        except ValueError as exc:
            raise HyperellError(f"malformed field tag {text!r}") from exc
        raise HyperellError(f"malformed field tag {text!r}")

    def extension(self, m: int) -> "FieldTag":
        """The degree-m extension of this prime field."""
        if not self.p or self.degree != 1:
            raise HyperellError("extensions only of prime fields")
        return FieldTag(self.p, m)

    # -- element construction --

    def __call__(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field == self:
                return x
            if self.p and x.field.p == self.p and x.field.degree == 1:
                return Scalar(self._embed_int(x.value), self)
            raise FieldMismatch(f"cannot coerce {x.field} element into {self}")
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, (tuple, list)) and self.degree > 1:
            if len(x) != self.degree:
                raise HyperellError("wrong number of extension coordinates")
            return Scalar(tuple(int(c) % self.p for c in x), self)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            if not self.p:
                return Scalar(Fraction(x), self)
            x = Fraction(x)
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return Scalar(self._embed_int(num * pow(den, -1, self.p) % self.p), self)
        raise TypeError(f"cannot make a scalar of {self} from {x!r}")

    def _embed_int(self, v: int):
        if self.degree == 1:
            return v % self.p
        return (v % self.p,) + (0,) * (self.degree - 1)

    def parse_scalar(self, text: str) -> "Scalar":
        text = text.strip()
        try:
            if self.degree > 1 and text.startswith("["):
                parts = [int(c) for c in text.strip("[]").split(",")]
                return self(parts)
            return self(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise HyperellError(f"malformed scalar {text!r} for {self}") from exc

    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    def elements(self) -> Iterator["Scalar"]:
        """All elements of a finite field, in canonical order."""
        if not self.p:
            raise HyperellError("Q has no finite element list")
        if self.degree == 1:
            for v in range(self.p):
                yield Scalar(v, self)
            return
        for n in range(self.order):
            coords = []
            for _ in range(self.degree):
                n, r = divmod(n, self.p)
                coords.append(r)
            yield Scalar(tuple(coords), self)

    def random_element(self, rng: random.Random, nonzero: bool = False, height: int = 50) -> "Scalar":
        while True:
            if not self.p:
                x = self(Fraction(rng.randint(-height, height), rng.randint(1, height)))
            elif self.degree == 1:
                x = Scalar(rng.randrange(self.p), self)
            else:
                x = Scalar(tuple(rng.randrange(self.p) for _ in range(self.degree)), self)
            if not (nonzero and x.is_zero()):
                return x

    def primitive_root_of_unity(self, n: int) -> "Scalar":
        """A primitive n-th root of unity; raises if the field has none."""
        if not self.p:
            if n == 1:
                return self.one
            if n == 2:
                return self(-1)
            raise HyperellError(f"Q contains no primitive {n}-th root of unity")
        q = self.order
        if (q - 1) % n:
            raise HyperellError(f"{self} contains no primitive {n}-th root of unity")
        gen = self.multiplicative_generator()
        return gen ** ((q - 1) // n)

    @functools.lru_cache(maxsize=None)
    def multiplicative_generator(self) -> "Scalar":
        q = self.order
        primes = list(factorint(q - 1))
        for x in self.elements():
            if x.is_zero():
                continue
            if all(not (x ** ((q - 1) // r)).is_one() for r in primes):
                return x
        raise InternalInconsistency("search exhausted")  # pragma: no cover


QQ = FieldTag(0)


def GF(p: int, m: int = 1) -> FieldTag:
    return FieldTag(p, m)


# -- scalars --

class Scalar:
    """Immutable exact field element."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: FieldTag):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion --

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # -- predicates --

    def is_zero(self) -> bool:
        if self.field.degree > 1:
            return not any(self.value)
        return self.value == 0

    def is_one(self) -> bool:
        return self == self.field.one

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.field(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field))

    def sort_key(self):
        if self.field.degree > 1:
            return tuple(reversed(self.value))
        return self.value

    # -- arithmetic --

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        if not f.p:
            return Scalar(self.value + other.value, f)
        if f.degree == 1:
            return Scalar((self.value + other.value) % f.p, f)
        return Scalar(tuple((a + b) % f.p for a, b in zip(self.value, other.value)), f)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if not f.p:
            return Scalar(-self.value, f)
        if f.degree == 1:
            return Scalar(-self.value % f.p, f)
        return Scalar(tuple(-a % f.p for a in self.value), f)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        if not f.p:
            return Scalar(self.value * other.value, f)
        if f.degree == 1:
            return Scalar(self.value * other.value % f.p, f)
        prod = _pmod(_pmul(list(self.value), list(other.value), f.p), f.modulus, f.p)
        return Scalar(tuple(prod + [0] * (f.degree - len(prod))), f)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if not f.p:
            return Scalar(1 / self.value, f)
        if f.degree == 1:
            return Scalar(pow(self.value, -1, f.p), f)
        return self ** (f.order - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if f.p and f.degree == 1:
            return Scalar(pow(self.value, e, f.p), f)
        if not f.p:
            return Scalar(self.value**e, f)
        result, base = f.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- formatting --

    def __str__(self) -> str:
        if self.field.degree > 1:
            return "[" + ",".join(str(c) for c in self.value) + "]"
        return str(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self}, {self.field})"

    def to_json(self) -> str:
        return str(self)

    def as_signed_int(self) -> int:
        """Representative in (-p/2, p/2] for prime-field elements."""
        p = self.field.p
        v = self.value
        return v - p if v > p // 2 else v


# -- characteristic guards --

def char_divides(p: int, n: int) -> bool:
    """True iff the characteristic p is positive and divides n."""
    return p != 0 and n % p == 0


def require_char_not_dividing(field: FieldTag, *ns: int) -> None:
    for n in ns:
        if char_divides(field.char, n):
            raise BadCharacteristic(f"characteristic {field.char} divides {n}")


# -- square classes --

def factor_small(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Factor |n| by trial division up to ``bound``.

    Raises BoundExceeded if a cofactor remains that might be composite,
    i.e. one larger than bound**2.
    """
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise BoundExceeded(f"trial division bound {bound} exceeded")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int, bound: int = TRIAL_DIVISION_BOUND) -> int:
    """Signed squarefree part of a nonzero integer."""
    sign = -1 if n < 0 else 1
    core = 1
    for q, e in factor_small(n, bound).items():
        if e % 2:
            core *= q
    return sign * core


def square_class(a: Scalar, bound: int = TRIAL_DIVISION_BOUND) -> SquareClass:
    """Class of a nonzero scalar in k*/(k*)^2."""
    if a.is_zero():
        raise ZeroInput("square class of zero")
    f = a.field
    if f.p:
        e = a ** ((f.order - 1) // 2)
        return SquareClass.SQUARE if e.is_one() else SquareClass.NONSQUARE
    v = a.value
    core = squarefree_part(v.numerator * v.denominator, bound)
    return SquareClass.SQUARE if core == 1 else SquareClass.NONSQUARE


def is_square(a: Scalar) -> bool:
    return a.is_zero() or square_class(a) is SquareClass.SQUARE


def nonsquare(field: FieldTag) -> Scalar:
    """Least nonsquare of a finite field (in canonical element order)."""
    for x in field.elements():
        if not x.is_zero() and square_class(x) is SquareClass.NONSQUARE:
            return x
    raise InternalInconsistency("search exhausted")  # pragma: no cover


def prime_with_roots_of_unity(*orders: int, start: int = 3) -> int:
    """Least prime p >= start with p = 1 mod lcm(orders), p not dividing any order."""
    step = math.lcm(*orders) if orders else 1
    p = ((max(start, 3) - 2) // step + 1) * step + 1
    while True:
        if isprime(p) and all(o % p for o in orders):
            return p
        p += step
