"""Integer kernels over prime fields F_p with p < 2**31.

Each kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
version.  The numba path is used when numba imports and the environment
variable ``HYPERELL_DISABLE_NUMBA`` is unset or "0"; both paths must return
identical arrays, which the test suite checks.

Projective points are encoded as integer keys: ``(x : 1) -> x`` and
``(1 : 0) -> p``.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 2**31 - 1

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap(args[0]) if args and callable(args[0]) else wrap


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("HYPERELL_DISABLE_NUMBA", "0") in ("", "0")


def backend() -> str:
    return "numba" if numba_enabled() else "numpy"


# -- shared helpers --

def point_keys(points: np.ndarray, p: int) -> np.ndarray:
    """Keys of normalized points given as rows (x, y)."""
    return np.where(points[:, 1] == 0, p, points[:, 0]).astype(np.int64)


def _base_adjugate(base: np.ndarray, p: int) -> np.ndarray:
    (x1, y1), (x2, y2), (x3, y3) = (tuple(int(v) for v in r) for r in base)
    l1 = (y2 * x3 - x2 * y3) % p
    l2 = (x1 * y3 - y1 * x3) % p
    s = (l1 * x1 % p, l2 * x2 % p, l1 * y1 % p, l2 * y2 % p)
    return np.array([s[3], (-s[1]) % p, (-s[2]) % p, s[0]], dtype=np.int64)


# -- numba kernels --

@njit(cache=True)
def _powmod_nb(b, e, p):
    r = 1
    b = b % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _preserving_maps_nb(adj, src, dst, dst_keys, p):
    n_src = src.shape[0]
    m = dst.shape[0]
    out = np.empty((m * (m - 1) * (m - 2), 4), dtype=np.int64)
    k = 0
    for i in range(m):
        x1 = dst[i, 0]
        y1 = dst[i, 1]
        for j in range(m):
            if j == i:
                continue
            x2 = dst[j, 0]
            y2 = dst[j, 1]
            for t in range(m):
                if t == i or t == j:
                    continue
                x3 = dst[t, 0]
                y3 = dst[t, 1]
                l1 = (y2 * x3 - x2 * y3) % p
                l2 = (x1 * y3 - y1 * x3) % p
                t0 = l1 * x1 % p
                t1 = l2 * x2 % p
                t2 = l1 * y1 % p
                t3 = l2 * y2 % p
                a0 = (t0 * adj[0] + t1 * adj[2]) % p
                a1 = (t0 * adj[1] + t1 * adj[3]) % p
                a2 = (t2 * adj[0] + t3 * adj[2]) % p
                a3 = (t2 * adj[1] + t3 * adj[3]) % p
                ok = True
                for s in range(n_src):
                    x = src[s, 0]
                    y = src[s, 1]
                    u = (a0 * x + a1 * y) % p
                    v = (a2 * x + a3 * y) % p
                    if v == 0:
                        key = p
                    else:
                        key = u * _powmod_nb(v, p - 2, p) % p
                    idx = np.searchsorted(dst_keys, key)
                    if idx >= m or dst_keys[idx] != key:
                        ok = False
                        break
                if ok:
                    out[k, 0] = a0
                    out[k, 1] = a1
                    out[k, 2] = a2
                    out[k, 3] = a3
                    k += 1
    return out[:k]


@njit(cache=True)
def _lemma_success_nb(perms, subsets, popcount):
    n_perm = perms.shape[0]
    n_sub = subsets.shape[0]
    out = np.zeros(n_perm, dtype=np.bool_)
    for r in range(n_perm):
        lo = 99
        hi = -1
        for s in range(n_sub):
            mask = 0
            img = 0
            for q in range(4):
                mask |= 1 << subsets[s, q]
                img |= 1 << perms[r, subsets[s, q]]
            c = popcount[mask & img]
            if c < 4:
                if c < lo:
                    lo = c
                if c > hi:
                    hi = c
        out[r] = hi >= 0 and lo != hi
    return out


@njit(cache=True)
def _affine_count_nb(coeffs, a, p):
    sq = np.zeros(p, dtype=np.bool_)
    for x in range(p):
        sq[x * x % p] = True
    total = 0
    n = coeffs.shape[0]
    for x in range(p):
        acc = 0
        for i in range(n - 1, -1, -1):
            acc = (acc * x + coeffs[i]) % p
        t = acc * a % p
        if t == 0:
            total += 1
        elif sq[t]:
            total += 2
    return total


# -- numpy kernels --

def _powmod_np(b: np.ndarray, e: int, p: int) -> np.ndarray:
    r = np.ones_like(b)
    b = b % p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def _preserving_maps_np(adj, src, dst, dst_keys, p):
    m = dst.shape[0]
    idx = np.arange(m)
    i, j, t = np.meshgrid(idx, idx, idx, indexing="ij")
    keep = (i != j) & (i != t) & (j != t)
    i, j, t = i[keep], j[keep], t[keep]
    x1, y1 = dst[i, 0], dst[i, 1]
    x2, y2 = dst[j, 0], dst[j, 1]
    x3, y3 = dst[t, 0], dst[t, 1]
    l1 = (y2 * x3 - x2 * y3) % p
    l2 = (x1 * y3 - y1 * x3) % p
    t0, t1, t2, t3 = l1 * x1 % p, l2 * x2 % p, l1 * y1 % p, l2 * y2 % p
    A = np.stack(
        [
            (t0 * adj[0] + t1 * adj[2]) % p,
            (t0 * adj[1] + t1 * adj[3]) % p,
            (t2 * adj[0] + t3 * adj[2]) % p,
            (t2 * adj[1] + t3 * adj[3]) % p,
        ],
        axis=1,
    )
    for x, y in src:
        if not len(A):
            break
        u = (A[:, 0] * x + A[:, 1] * y) % p
        v = (A[:, 2] * x + A[:, 3] * y) % p
        key = np.where(v == 0, p, u * _powmod_np(np.where(v == 0, 1, v), p - 2, p) % p)
        pos = np.searchsorted(dst_keys, key)
        hit = (pos < m) & (dst_keys[np.minimum(pos, m - 1)] == key)
        A = A[hit]
    return A.astype(np.int64)


def _lemma_success_np(perms, subsets, popcount):
    bits = np.int64(1) << subsets.astype(np.int64)
    masks = bits.sum(axis=1)
    images = perms[:, subsets].astype(np.int64)
    img_masks = (np.int64(1) << images).sum(axis=2)
    counts = popcount[masks[None, :] & img_masks]
    valid = counts < 4
    lo = np.where(valid, counts, 99).min(axis=1)
    hi = np.where(valid, counts, -1).max(axis=1)
    return (hi >= 0) & (lo != hi)


def _affine_count_np(coeffs, a, p):
    x = np.arange(p, dtype=np.int64)
    sq = np.zeros(p, dtype=bool)
    sq[x * x % p] = True
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * x + int(c)) % p
    t = acc * a % p
    return int(np.count_nonzero(t == 0) + 2 * np.count_nonzero(sq[t] & (t != 0)))


# -- dispatch --

def preserving_maps(base, src, dst, p: int, use_numba: bool | None = None) -> np.ndarray:
    """Matrices A (rows a, b, c, d) with A(src) = dst, over all ordered target triples.

    ``base`` holds the three src points fixed as the source frame; every
    ordered triple of distinct dst points is tried as their image.
    """
    if p > MAX_PRIME:
        raise ValueError("prime too large for int64 kernels")
    base = np.asarray(base, dtype=np.int64)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    keys = point_keys(dst, p)
    order = np.argsort(keys)
    dst, keys = dst[order], keys[order]
    adj = _base_adjugate(base, p)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return _preserving_maps_nb(adj, src, dst, keys, p)
    return _preserving_maps_np(adj, src, dst, keys, p)


def popcount_table(n_bits: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(1 << n_bits)], dtype=np.int64)


def lemma_success(perms, subsets, use_numba: bool | None = None) -> np.ndarray:
    """For each permutation row, whether two 4-subsets have distinct overlaps < 4."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    subsets = np.ascontiguousarray(subsets, dtype=np.int64)
    pc = popcount_table(perms.shape[1])
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return _lemma_success_nb(perms, subsets, pc)
    return _lemma_success_np(perms, subsets, pc)


def affine_count(coeffs, a: int, p: int, use_numba: bool | None = None) -> int:
    """#{(x, y) in F_p^2 : a y^2 = f(x)} for f with the given ascending coefficients.

    Uses #{y : y^2 = t} = 1 + chi(t) with t = a * f(x) (chi(1/a) = chi(a)).
    """
    if p > MAX_PRIME:
        raise ValueError("prime too large for int64 kernels")
    coeffs = np.asarray([int(c) % p for c in coeffs], dtype=np.int64)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return int(_affine_count_nb(coeffs, a % p, p))
    return _affine_count_np(coeffs, a % p, p)
