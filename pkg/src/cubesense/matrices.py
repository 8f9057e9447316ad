"""Signed cube matrices of the operator A and their spectral structure.

In the standard basis the operator is a signed, weighted adjacency matrix
of Q_n: the entry between ``gamma`` and ``gamma ^ (1 << b)`` has magnitude
``lambda_{b+1}`` (edge up) or ``v_{b+1}`` (edge down) and a sign given by
the parity of the set bits of ``gamma`` below ``b``. Entries live at fixed
XOR offsets, so the matrix is never materialized: a matrix is its
dimension plus a closed-form entry rule, and matvec is a bit loop.

The square identity ``M^2 = lambda(v) I`` pins the eigenvalues to
``+-sqrt(lambda(v))``; zero trace splits the space into eigenspaces of
equal dimension ``2^(n-1)``, realized here by the matrix-free projectors
``P_+- = (I +- M/s) / 2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, TextIO, Tuple

from .cube import check_dimension
from .exterior import Multivector, Scalar, WeightConfig, apply_A
from .scalars import ScalarMode

MATRIX_MAX_DIMENSION = 20  # n * 2^n nonzeros; beyond this matvec stops being sane


class SignedCubeMatrix:
    """A 2^n x 2^n matrix supported on cube edges, defined by an entry rule.

    ``coeff(gamma, b)`` returns the entry in row ``gamma ^ (1 << b)``,
    column ``gamma``: every column has exactly n nonzeros at single-bit
    XOR offsets.
    """

    __slots__ = ("n", "_coeff")

    def __init__(self, n: int, coeff: Callable[[int, int], Scalar]) -> None:
        check_dimension(n)
        if n > MATRIX_MAX_DIMENSION:
            raise ValueError(f"matrix dimension capped at n={MATRIX_MAX_DIMENSION}")
        self.n = n
        self._coeff = coeff

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def nnz(self) -> int:
        return self.n << self.n

    def entry(self, row: int, col: int) -> Scalar:
        diff = row ^ col
        if diff.bit_count() != 1:
            return 0
        return self._coeff(col, diff.bit_length() - 1)

    def column(self, col: int) -> List[Tuple[int, Scalar]]:
        """The n nonzero (row, value) pairs of one column, rows ascending."""
        pairs = [(col ^ (1 << b), self._coeff(col, b)) for b in range(self.n)]
        pairs.sort()
        return pairs

    def iter_entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        """All nonzeros as (row, col, value), column-major, flipped bit ascending."""
        for col in range(self.size):
            for b in range(self.n):
                yield col ^ (1 << b), col, self._coeff(col, b)

    def apply(self, vec: Sequence[Scalar]) -> list:
        if len(vec) != self.size:
            raise ValueError(f"vector length {len(vec)} != {self.size}")
        coeff = self._coeff
        out = []
        for row in range(self.size):
            acc = None
            for b in range(self.n):
                col = row ^ (1 << b)
                term = coeff(col, b) * vec[col]
                acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def dump(self, stream: TextIO, mode: ScalarMode) -> None:
        for row, col, value in self.iter_entries():
            stream.write(f"{row} {col} {mode.format(value)}\n")


def build_matrix(w: WeightConfig, mode: ScalarMode | None = None) -> SignedCubeMatrix:
    """Materialize A in the standard basis (as an entry rule).

    The sign of the entry at flipped bit ``b`` of column ``gamma`` is the
    parity of ``gamma``'s set bits below ``b``; the magnitude is ``v`` when
    the column loses the bit and ``lambda`` when it gains it.
    """
    mode = mode or ScalarMode.exact()
    lam = w.lam_in(mode)
    v = w.v_in(mode)

    def coeff(gamma: int, b: int) -> Scalar:
        mag = v[b] if gamma >> b & 1 else lam[b]
        return -mag if (gamma & ((1 << b) - 1)).bit_count() & 1 else mag

    return SignedCubeMatrix(w.n, coeff)


def huang_matrix(n: int) -> SignedCubeMatrix:
    """The recursive +-1 signing B_1 = [[0,1],[1,0]],
    B_n = [[B_{n-1}, I], [I, -B_{n-1}]]; satisfies B_n^2 = n I.

    Unrolled, the sign at flipped bit ``b`` of column ``gamma`` is the
    parity of ``gamma``'s set bits above ``b``.
    """

    def coeff(gamma: int, b: int) -> Scalar:
        return -1 if (gamma >> (b + 1)).bit_count() & 1 else 1

    return SignedCubeMatrix(n, coeff)


@dataclass(frozen=True)
class SquareIdentityReport:
    expected: Scalar  # the pairing lambda(v)
    max_deviation: float
    ok: bool


def verify_square_identity(
    M: SignedCubeMatrix, w: WeightConfig, mode: ScalarMode | None = None
) -> SquareIdentityReport:
    """Check ``M^2 = lambda(v) I`` column by column through sparse composition."""
    mode = mode or ScalarMode.exact()
    expected = mode.convert(w.pairing)
    worst = 0.0
    ok = True
    for gamma in range(M.size):
        acc: dict = {}
        for mid, val in M.column(gamma):
            for row, val2 in M.column(mid):
                acc[row] = acc.get(row, 0) + val2 * val
        acc[gamma] = acc.get(gamma, 0) - expected
        for dev in acc.values():
            worst = max(worst, abs(float(dev)))
            if mode.is_exact:
                ok = ok and dev == 0
            elif not mode.within(dev, float(expected)):
                ok = False
    return SquareIdentityReport(expected=expected, max_deviation=worst, ok=ok)


def operator_trace(w: WeightConfig, mode: ScalarMode | None = None) -> Scalar:
    """Trace of A computed through the exterior-algebra path (independent of
    the matrix entry rule): A flips degree parity, so every diagonal
    coefficient vanishes."""
    mode = mode or ScalarMode.exact()
    total: Scalar = mode.convert(0)
    for gamma in range(1 << w.n):
        image = apply_A(w, Multivector.basis(w.n, gamma))
        total = total + image.coefficient(gamma)
    return total


class EigenSplit:
    """Matrix-free projectors P_+- = (I +- M/s)/2 onto the eigenspaces of M."""

    def __init__(self, M: SignedCubeMatrix, w: WeightConfig, mode: ScalarMode | None = None):
        self.matrix = M
        self.mode = mode or ScalarMode.exact()
        self.s = w.eigenvalue(self.mode)
        self._half = self.mode.convert(Fraction(1, 2))
        self._s_inv = (1 / self.s) if not self.mode.is_exact else self.s.inverse()

    def project(self, vec: Sequence[Scalar], sign: int) -> list:
        image = self.matrix.apply(vec)
        half, s_inv = self._half, self._s_inv
        if sign > 0:
            return [half * (x + s_inv * y) for x, y in zip(vec, image)]
        return [half * (x - s_inv * y) for x, y in zip(vec, image)]

    def multiplicities(self, trace: Scalar) -> Tuple[Scalar, Scalar]:
        """trace(P_+-) = (2^n +- trace(M)/s) / 2."""
        size = self.matrix.size
        shift = self._s_inv * trace
        return self._half * (size + shift), self._half * (size - shift)


@dataclass(frozen=True)
class SpectralReport:
    n: int
    eigenvalue: Scalar
    trace: Scalar
    multiplicity_plus: Scalar
    multiplicity_minus: Scalar
    projector_max_deviation: float
    projector_ok: bool

    @property
    def ok(self) -> bool:
        half = 1 << (self.n - 1)
        return (
            self.trace == 0
            and self.multiplicity_plus == half
            and self.multiplicity_minus == half
            and self.projector_ok
        )


def spectral_report(
    M: SignedCubeMatrix,
    w: WeightConfig,
    mode: ScalarMode | None = None,
    num_vectors: int = 8,
    seed: int = 0,
) -> SpectralReport:
    """Zero trace, equal eigenvalue multiplicities via the trace of P_+,
    and projector idempotency checked matrix-free on random vectors."""
    mode = mode or ScalarMode.exact()
    trace = operator_trace(w, mode)
    split = EigenSplit(M, w, mode)
    mult_plus, mult_minus = split.multiplicities(trace)

    rng = random.Random(seed)
    worst = 0.0
    ok = True
    for _ in range(num_vectors):
        vec = [
            mode.convert(Fraction(rng.randrange(-9, 10), rng.randrange(1, 10)))
            for _ in range(M.size)
        ]
        scale = max(abs(float(x)) for x in vec)
        for sign in (1, -1):
            once = split.project(vec, sign)
            twice = split.project(once, sign)
            eigen_image = M.apply(once)
            s_once = [split.s * x for x in once]
            for a, b, c, d in zip(once, twice, eigen_image, s_once):
                # A P_+- = +-s P_+- alongside idempotency
                for dev in (a - b, c - d if sign > 0 else c + d):
                    worst = max(worst, abs(float(dev)))
                    if mode.is_exact:
                        ok = ok and dev == 0
                    elif not mode.within(dev, scale):
                        ok = False
    return SpectralReport(
        n=M.n,
        eigenvalue=split.s,
        trace=trace,
        multiplicity_plus=mult_plus,
        multiplicity_minus=mult_minus,
        projector_max_deviation=worst,
        projector_ok=ok,
    )


def _unit_entries(M: SignedCubeMatrix) -> None:
    for u in range(M.size):
        for b in range(M.n):
            val = M.entry(u, u ^ (1 << b))
            if val != 1 and val != -1:
                raise ValueError("matrix is not a +-1 signing of the cube")


def four_cycle_products_negative(M: SignedCubeMatrix) -> bool:
    """Every 2-face of the cube carries edge-sign product -1; this is the
    off-diagonal shadow of M^2 = n I for +-1 signings."""
    _unit_entries(M)
    for i in range(M.n):
        for j in range(i + 1, M.n):
            lo, hi = 1 << i, 1 << j
            for base in range(M.size):
                if base & (lo | hi):
                    continue
                product = (
                    M.entry(base, base ^ lo)
                    * M.entry(base, base ^ hi)
                    * M.entry(base ^ lo, base ^ lo ^ hi)
                    * M.entry(base ^ hi, base ^ lo ^ hi)
                )
                if product != -1:
                    return False
    return True


def switching_equivalent(
    M1: SignedCubeMatrix, M2: SignedCubeMatrix
) -> Optional[List[int]]:
    """Search for a diagonal +-1 matrix D with D M1 D = M2.

    Fix d[0] = +1, propagate d along cube edges by BFS (each edge forces
    the far sign), then verify every edge; propagation alone is not enough
    because the cube has cycles. Returns the diagonal as a list, or None.
    """
    if M1.n != M2.n:
        raise ValueError("signings live on cubes of different dimension")
    _unit_entries(M1)
    _unit_entries(M2)
    size = M1.size
    diag: List[int] = [0] * size
    diag[0] = 1
    queue = [0]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for b in range(M1.n):
            w_ = u ^ (1 << b)
            if diag[w_]:
                continue
            # d[u] * M1[u,w] * d[w] = M2[u,w]  with +-1 entries
            diag[w_] = int(diag[u] * M1.entry(u, w_) * M2.entry(u, w_))
            queue.append(w_)
    for u in range(size):
        for b in range(M1.n):
            w_ = u ^ (1 << b)
            if diag[u] * M1.entry(u, w_) * diag[w_] != M2.entry(u, w_):
                return None
    return diag
