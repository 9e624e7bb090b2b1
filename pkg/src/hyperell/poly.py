"""Dense univariate polynomials over a :class:`FieldTag`.

A polynomial is a list of Scalars ``[c_0, c_1, ..., c_d]`` (ascending);
the zero polynomial is ``[]``.  All functions return fresh trimmed lists.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import DegenerateInput, HyperellError
from .field import FieldTag, Scalar, factor_small, TRIAL_DIVISION_BOUND


def trim(a: list[Scalar]) -> list[Scalar]:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def degree(a: list[Scalar]) -> int:
    return len(trim(a)) - 1


def lead(a: list[Scalar]) -> Scalar:
    a = trim(a)
    if not a:
        raise DegenerateInput("zero polynomial has no leading coefficient")
    return a[-1]


def from_ints(field: FieldTag, coeffs) -> list[Scalar]:
    return trim([field(c) for c in coeffs])


def add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i >= len(a):
            out.append(b[i])
        elif i >= len(b):
            out.append(a[i])
        else:
            out.append(a[i] + b[i])
    return trim(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, s):
    return trim([c * s for c in a])


def mul(a, b):
    if not a or not b:
        return []
    field = a[0].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def poly_divmod(a, b):
    b = trim(b)
    if not b:
        raise DegenerateInput("division by the zero polynomial")
    a = trim(a)
    if len(a) < len(b):
        return [], a
    inv = b[-1].inverse()
    rem = list(a)
    q = [b[0].field.zero] * (len(a) - len(b) + 1)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i] * inv
        if c.is_zero():
            continue
        q[i - db] = c
        for j in range(db + 1):
            rem[i - db + j] = rem[i - db + j] - c * b[j]
    return trim(q), trim(rem[:db])


def monic(a):
    a = trim(a)
    if not a:
        return a
    return scale(a, a[-1].inverse())


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def derivative(a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a, x: Scalar) -> Scalar:
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def from_roots(field: FieldTag, roots) -> list[Scalar]:
    out = [field.one]
    for r in roots:
        out = mul(out, [-r, field.one])
    return out


def powmod(base, e: int, m):
    result = [m[0].field.one]
    base = poly_divmod(base, m)[1]
    while e:
        if e & 1:
            result = poly_divmod(mul(result, base), m)[1]
        base = poly_divmod(mul(base, base), m)[1]
        e >>= 1
    return result


# -- Sylvester resultant --

def sylvester_matrix(f, h):
    """Sylvester matrix with the rows of ``h`` on top.

    With this layout ``det = lead(h)^deg f * prod f(beta)`` over the roots
    beta of h.
    """
    f, h = trim(f), trim(h)
    m, r = len(f) - 1, len(h) - 1
    if m < 1 or r < 1:
        raise DegenerateInput("resultant needs two nonconstant polynomials")
    field = f[0].field
    size = m + r
    rows = []
    for i in range(m):
        row = [field.zero] * size
        for j, c in enumerate(reversed(h)):
            row[i + j] = c
        rows.append(row)
    for i in range(r):
        row = [field.zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    return rows


def _raw_determinant(a, p: int):
    """Elimination on bare ints mod p (p > 0) or Fractions (p == 0)."""
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv % p if p else det * pv
        inv = pow(pv, -1, p) if p else 1 / pv
        row_c = a[col]
        for r in range(col + 1, n):
            row_r = a[r]
            c = row_r[col]
            if not c:
                continue
            c = c * inv % p if p else c * inv
            if p:
                for k in range(col, n):
                    row_r[k] = (row_r[k] - c * row_c[k]) % p
            else:
                for k in range(col, n):
                    row_r[k] = row_r[k] - c * row_c[k]
    return det


def determinant(rows) -> Scalar:
    """Determinant by Gaussian elimination over the field."""
    a = [list(r) for r in rows]
    n = len(a)
    field = a[0][0].field
    if field.degree == 1:
        return field(_raw_determinant([[e.value for e in r] for r in a], field.p))
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            c = a[r][col]
            if c.is_zero():
                continue
            c = c * inv
            row_r, row_c = a[r], a[col]
            for k in range(col, n):
                row_r[k] = row_r[k] - c * row_c[k]
    return det


def sylvester_resultant(f, h) -> Scalar:
    if not trim(f) or not trim(h):
        raise DegenerateInput("zero polynomial")
    return determinant(sylvester_matrix(f, h))


# -- roots --

def _rational_roots(f) -> list[Scalar]:
    field = f[0].field
    den = math.lcm(*(c.value.denominator for c in f))
    ints = [int(c.value * den) for c in f]
    roots = []
    if ints[0] == 0:
        roots.append(field.zero)
        k = next(i for i, c in enumerate(ints) if c)
        ints = ints[k:]
    if len(ints) == 1:
        return roots
    a0, an = ints[0], ints[-1]

    def divisors(n):
        ds = [1]
        for q, e in factor_small(n, TRIAL_DIVISION_BOUND).items():
            ds = [d * q**k for d in ds for k in range(e + 1)]
        return ds

    cands = set()
    for u in divisors(a0):
        for v in divisors(an):
            cands.add(Fraction(u, v))
            cands.add(Fraction(-u, v))
    for c in sorted(cands):
        acc = 0
        for a in reversed(ints):
            acc = acc * c + a
        if acc == 0:
            roots.append(field(c))
    return roots


def _split_finite(f, rng):
    """Roots of a squarefree f over F_q whose roots all lie in F_q."""
    f = monic(f)
    d = len(f) - 1
    if d == 0:
        return []
    if d == 1:
        return [-f[0]]
    field = f[0].field
    q = field.order
    while True:
        r = [field.random_element(rng), field.one]
        h = powmod(r, (q - 1) // 2, f)
        h = sub(h, [field.one])
        g = gcd(f, h)
        if 0 < len(g) - 1 < d:
            return _split_finite(g, rng) + _split_finite(poly_divmod(f, g)[0], rng)


def finite_roots(f) -> list[Scalar]:
    """Distinct roots in F_q of f, via gcd with x^q - x and equal-degree splitting."""
    f = trim(f)
    if len(f) < 2:
        return []
    field = f[0].field
    x = [field.zero, field.one]
    xq = powmod(x, field.order, f)
    g = gcd(f, sub(xq, x))
    rng = random.Random(0x5EED)
    return sorted(_split_finite(g, rng), key=lambda s: s.sort_key())


def roots(f) -> list[Scalar]:
    """Distinct roots of f lying in its coefficient field, sorted."""
    f = trim(f)
    if not f:
        raise DegenerateInput("zero polynomial has every element as a root")
    if f[0].field.is_finite:
        return finite_roots(f)
    return sorted(set(_rational_roots(f)), key=lambda s: s.sort_key())


def distinct_degree_degrees(f) -> list[int]:
    """Degrees d such that f (squarefree, over F_q) has an irreducible factor of degree d."""
    f = monic(trim(f))
    field = f[0].field
    q = field.order
    x = [field.zero, field.one]
    out = []
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = gcd(f, sub(h, x))
        if len(g) > 1:
            out.append(d)
            f = poly_divmod(f, g)[0]
            h = poly_divmod(h, f)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append(len(f) - 1)
    return out


def splitting_degree(f) -> int:
    """Least m such that the squarefree f splits over F_{q^m}."""
    degs = distinct_degree_degrees(f)
    return math.lcm(*degs) if degs else 1


def to_strings(a) -> list[str]:
    return [str(c) for c in a]


def assert_same_field(*polys) -> FieldTag:
    fields = {c.field for p in polys for c in p}
    if len(fields) > 1:
        raise HyperellError("polynomials over different fields")
    return fields.pop() if fields else None
