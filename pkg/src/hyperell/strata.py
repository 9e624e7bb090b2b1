"""Permutations, the two-4-subsets lemma, and dimensions of automorphism strata.

Permutations act on ``{0, ..., N-1}`` internally; every printed or JSON form
uses the labels ``1..N``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from sympy import isprime, primerange

from . import _kernels
from .errors import (
    ImpossibleCase,
    InternalInconsistency,
    NotDivisible,
    PreconditionViolated,
    WrongDegree,
)


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise PreconditionViolated(f"{images} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        """Build from cycles written with labels 1..n, e.g. [(1, 2), (3, 4)]."""
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @classmethod
    def parse(cls, n: int, text: str) -> "Permutation":
        """Parse cycle notation such as "(1 2)(3 4)" or "(1,2,3)"."""
        cycles = []
        for chunk in text.replace(",", " ").split(")"):
            chunk = chunk.strip().lstrip("(")
            if chunk:
                cycles.append(tuple(int(t) for t in chunk.split()))
        return cls.from_cycles(n, cycles)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(self * other)(i) = self(other(i))."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def conjugate(self, sigma: "Permutation") -> "Permutation":
        """sigma * self * sigma^-1."""
        return sigma * self * sigma.inverse()

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type)

    def is_fixed_point_free_involution(self) -> bool:
        return all(n == 2 for n in self.cycle_type)

    def __str__(self) -> str:
        parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def to_json(self) -> dict:
        return {
            "images": [i + 1 for i in self.images],
            "cycles": str(self),
            "cycle_type": list(self.cycle_type),
        }


def _label(ct: tuple[int, ...]) -> str:
    counts = Counter(ct)
    return " ".join(f"{k}^{counts[k]}" if counts[k] > 1 else str(k) for k in sorted(counts, reverse=True))


@dataclass(frozen=True)
class FourTuplePair:
    n1: tuple[int, ...]
    n2: tuple[int, ...]
    k1: int
    k2: int

    def __post_init__(self):
        if self.k1 == self.k2 or max(self.k1, self.k2) >= 4:
            raise InternalInconsistency("witness pair violates k1 != k2, k1, k2 < 4")

    def to_json(self) -> dict:
        return {
            "N1": [i + 1 for i in self.n1],
            "N2": [i + 1 for i in self.n2],
            "k1": self.k1,
            "k2": self.k2,
        }


def overlap(rho: Permutation, subset) -> int:
    """|N intersect rho(N)|."""
    s = set(subset)
    return sum(1 for i in subset if rho(i) in s)


def _check_lemma_hypotheses(rho: Permutation) -> None:
    if len(rho) < 6:
        raise PreconditionViolated("the set must have at least 6 elements")
    if len(rho.fixed_points()) > 2:
        raise PreconditionViolated("permutation has more than two fixed points")


def find_lemma_pairs(rho: Permutation) -> FourTuplePair | None:
    """Exhaustive search for 4-subsets N1, N2 with distinct overlaps below 4."""
    _check_lemma_hypotheses(rho)
    first: dict[int, tuple[int, ...]] = {}
    for sub in itertools.combinations(range(len(rho)), 4):
        k = overlap(rho, sub)
        if k < 4 and k not in first:
            first[k] = sub
            if len(first) == 2:
                (k1, n1), (k2, n2) = first.items()
                return FourTuplePair(n1, n2, k1, k2)
    return None


def is_triple_transposition_class(rho: Permutation) -> bool:
    if len(rho) != 6:
        raise WrongDegree("defined only on 6 points")
    return rho.cycle_type == (2, 2, 2)


def _admissible_perms(n: int) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    fixed = (perms == np.arange(n, dtype=np.int8)).sum(axis=1)
    return perms[fixed <= 2]


_CHUNK_ROWS = 20000


def _lemma_chunk(args):
    perms, subsets, use_numba = args
    return _kernels.lemma_success(perms, subsets, use_numba=use_numba)


def verify_lemma_combin(n_max: int, jobs: int = 1, use_numba: bool | None = None) -> dict:
    """Exhaustively check the two-4-subsets lemma for all sizes 6..n_max.

    Every permutation with at most two fixed points is tested, including the
    excluded class of type 2^3 on six points; the report counts, per size and
    cycle type, how many were tested, how many have a witness pair and how
    many fail.
    """
    if not 6 <= n_max <= 9:
        raise PreconditionViolated("n_max must lie in 6..9")
    report = {"n_max": n_max, "sizes": {}, "total_failures": 0}
    consistent = True
    for n in range(6, n_max + 1):
        perms = _admissible_perms(n)
        subsets = np.array(list(itertools.combinations(range(n), 4)), dtype=np.int64)
        n_chunks = max(jobs * 4 if jobs > 1 else 1, -(-len(perms) // _CHUNK_ROWS))
        chunks = np.array_split(perms, n_chunks)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_lemma_chunk, [(c, subsets, use_numba) for c in chunks]))
        else:
            parts = [_lemma_chunk((c, subsets, use_numba)) for c in chunks]
        ok = np.concatenate(parts)
        per_type: dict[str, dict[str, int]] = {}
        failures = []
        for row, success in zip(perms, ok):
            ct = Permutation(tuple(row)).cycle_type
            entry = per_type.setdefault(_label(ct), {"tested": 0, "witnesses_found": 0, "failures": 0})
            entry["tested"] += 1
            if success:
                entry["witnesses_found"] += 1
            else:
                entry["failures"] += 1
                failures.append(ct)
        expected = 15 if n == 6 else 0
        sane = len(failures) == expected and all(ct == (2, 2, 2) for ct in failures)
        consistent &= sane
        report["sizes"][str(n)] = {
            "tested": int(len(perms)),
            "failures": len(failures),
            "failures_all_type_2^3": all(ct == (2, 2, 2) for ct in failures),
            "by_cycle_type": dict(sorted(per_type.items())),
        }
        report["total_failures"] += len(failures)
    report["consistent_with_lemma"] = consistent
    return report


# -- strata of the automorphism locus --

def stratum_dimension(g: int, p: int, i: int) -> int:
    """Dimension (2g+2-i)/p - 1 of curves with a fixed order-p automorphism.

    ``i`` is the number of fixed points of the automorphism on P^1 that are
    branch points.
    """
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    if i not in (0, 1, 2):
        raise PreconditionViolated("i must be 0, 1 or 2")
    if not isprime(p) or p > 2 * g + 2:
        raise PreconditionViolated(f"p must be a prime <= {2 * g + 2}")
    if (p, i) == (2, 1):
        raise ImpossibleCase("p = 2 and i = 1 cannot occur")
    if (2 * g + 2 - i) % p:
        raise NotDivisible(f"{p} does not divide {2 * g + 2 - i}")
    return (2 * g + 2 - i) // p - 1


def admissible_strata(g: int) -> list[tuple[int, int, int]]:
    """All (p, i, dimension) with a nonempty stratum."""
    out = []
    for p in primerange(2, 2 * g + 3):
        for i in (0, 1, 2):
            try:
                out.append((int(p), i, stratum_dimension(g, int(p), i)))
            except (ImpossibleCase, NotDivisible):
                continue
    return out


def max_aut_locus_dimension(g: int) -> int:
    strata = admissible_strata(g)
    top = max(d for _, _, d in strata)
    at_top = [(p, i) for p, i, d in strata if d == top]
    if top != g or at_top != [(2, 0)]:
        raise InternalInconsistency(f"maximum {top} attained at {at_top}")
    return top
