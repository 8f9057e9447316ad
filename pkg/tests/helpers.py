"""Independent oracles and random generators shared by the test suite.

Everything here recomputes expected values from first principles (explicit
loops, itertools enumeration, dense cofactor expansion) so the production
bit-twiddling paths are checked against genuinely different code.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from cubesense import Multivector, SignedCubeMatrix, WeightConfig


# -- exact arithmetic oracles -------------------------------------------------

def oracle_squarefree(m: int) -> Tuple[int, int]:
    """Largest square divisor by descending enumeration: m = r*r*d."""
    for r in range(math.isqrt(m), 0, -1):
        if m % (r * r) == 0:
            return r, m // (r * r)
    raise AssertionError("unreachable for m >= 1")


def oracle_sqrt_decompose(q: Fraction) -> Tuple[Fraction, int]:
    m = q.numerator * q.denominator
    r, d = oracle_squarefree(m)
    return Fraction(r, q.denominator), d


# -- combinatorial oracles ----------------------------------------------------

def oracle_max_degree(n: int, subset: Iterable[int]) -> int:
    vertices = set(subset)
    return max(
        sum((u ^ (1 << b)) in vertices for b in range(n)) for u in vertices
    )


def oracle_exhaustive(n: int, size: int) -> Tuple[int, Dict[int, int], int]:
    """(min over subsets of max degree, histogram, violations of ceil(sqrt n))."""
    bound = math.isqrt(n - 1) + 1
    histogram: Counter = Counter()
    min_max = None
    violations = 0
    for subset in combinations(range(1 << n), size):
        md = oracle_max_degree(n, subset)
        histogram[md] += 1
        if md < bound:
            violations += 1
        if min_max is None or md < min_max:
            min_max = md
    return min_max, dict(sorted(histogram.items())), violations


# -- dense linear-algebra oracles ----------------------------------------------

def to_dense(M: SignedCubeMatrix) -> List[List]:
    return [[M.entry(r, c) for c in range(M.size)] for r in range(M.size)]


def dense_matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List]:
    size = len(A)
    return [
        [sum(A[i][k] * B[k][j] for k in range(size)) for j in range(size)]
        for i in range(size)
    ]


def dense_matvec(A: Sequence[Sequence], x: Sequence) -> List:
    return [sum(row[j] * x[j] for j in range(len(x))) for row in A]


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return out


def charpoly(matrix: Sequence[Sequence]) -> List[Fraction]:
    """Coefficients (ascending powers of t) of det(M - t I), by cofactor
    expansion with polynomial entries. Exponential; fine for 4x4."""
    size = len(matrix)
    entries = [
        [
            [Fraction(matrix[i][j]), Fraction(-1)] if i == j else [Fraction(matrix[i][j])]
            for j in range(size)
        ]
        for i in range(size)
    ]

    def det(rows: List[int], cols: List[int]) -> List[Fraction]:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total: List[Fraction] = [Fraction(0)]
        r = rows[0]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(entries[r][c], minor)
            if idx % 2:
                term = [-t for t in term]
            total = poly_add(total, term)
        return total

    return det(list(range(size)), list(range(size)))


# -- random generators ---------------------------------------------------------

def random_rational(rng: random.Random, positive: bool = False) -> Fraction:
    lo = 1 if positive else -9
    num = rng.randrange(lo, 10)
    if not positive and num == 0:
        num = 1
    return Fraction(num, rng.randrange(1, 10))


def random_coords(rng: random.Random, n: int, positive: bool = False) -> Tuple[Fraction, ...]:
    return tuple(random_rational(rng, positive) for _ in range(n))


def random_weights(rng: random.Random, n: int, positive: bool = True) -> WeightConfig:
    """A random config with lambda(v) > 0 (retrying for sign-mixed draws)."""
    while True:
        lam = random_coords(rng, n, positive)
        v = random_coords(rng, n, positive)
        if sum(a * b for a, b in zip(lam, v)) > 0:
            return WeightConfig(n, lam, v)


def random_multivector(rng: random.Random, n: int, terms: int = 6) -> Multivector:
    coeffs = {}
    for _ in range(terms):
        coeffs[rng.randrange(1 << n)] = random_rational(rng)
    return Multivector(n, coeffs)


def random_homogeneous(rng: random.Random, n: int, degree: int, terms: int = 4) -> Multivector:
    masks = [m for m in range(1 << n) if m.bit_count() == degree]
    coeffs = {}
    for _ in range(min(terms, len(masks))):
        coeffs[rng.choice(masks)] = random_rational(rng)
    return Multivector(n, coeffs)
