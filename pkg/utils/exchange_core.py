"""Exchange matrices, extended exchange matrices and matrix mutation."""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import config


class ShapeError(ValueError):
    """Raised when a matrix or vector has the wrong shape."""
    pass


class MutationIndexError(IndexError):
    """Raised when a mutation index falls outside 1..n."""
    pass


class IntegralityError(ValueError):
    """Raised when integer mode meets a non-integral entry."""
    pass


class SymmetrizerBoundError(ValueError):
    """Raised when the skew-symmetrizer search exceeds its bound without deciding."""
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    """An n x n integer exchange matrix, stored as a tuple of row tuples."""
    rows: tuple

    @classmethod
    def from_rows(cls, rows, check=True) -> "ExchangeMatrix":
        """
        Builds an exchange matrix from nested sequences of integers.

        Args:
            rows: Square nested sequence of integers.
            check (bool): Reject matrices that are not sign-skew-symmetric.

        Returns:
            ExchangeMatrix: The frozen matrix.

        Raises:
            ShapeError: If the input is not square.
            IntegralityError: If an entry is not an integer.
        """
        frozen = tuple(tuple(_as_int(x) for x in row) for row in rows)
        _require_square(frozen)
        if check and len(frozen) == 0:
            raise ShapeError("exchange matrix must have rank at least 1")
        matrix = cls(frozen)
        if check and not _sign_skew_symmetric(frozen):
            raise ShapeError("exchange matrix must satisfy sgn(b_ij) = -sgn(b_ji)")
        return matrix

    @classmethod
    def zero(cls, n: int) -> "ExchangeMatrix":
        return cls(tuple(tuple(0 for _ in range(n)) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry b_ij with 1-based indices."""
        return self.rows[i - 1][j - 1]

    def negate(self) -> "ExchangeMatrix":
        return ExchangeMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def permute(self, perm) -> "ExchangeMatrix":
        """
        Applies a permutation of the index set simultaneously to rows and columns.

        perm[i-1] is the new position of index i (both 1-based).
        """
        n = self.n
        if sorted(perm) != list(range(1, n + 1)):
            raise ShapeError(f"{perm} is not a permutation of 1..{n}")
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i] - 1][perm[j] - 1] = self.rows[i][j]
        return ExchangeMatrix(tuple(tuple(row) for row in out))

    def to_lists(self) -> list:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """An exchange matrix together with named rational coefficient rows."""
    base: ExchangeMatrix
    coefficient_rows: tuple = ()
    integral: bool = False

    def __post_init__(self):
        seen = set()
        for row_id, vector in self.coefficient_rows:
            if row_id in seen:
                raise ShapeError(f"duplicate coefficient row id {row_id!r}")
            seen.add(row_id)
            if len(vector) != self.base.n:
                raise ShapeError(
                    f"coefficient row {row_id!r} has length {len(vector)}, expected {self.base.n}"
                )
            if self.integral and any(Fraction(x).denominator != 1 for x in vector):
                raise IntegralityError(f"coefficient row {row_id!r} is not integral")

    @classmethod
    def build(cls, base: ExchangeMatrix, rows, integral=False) -> "ExtendedExchangeMatrix":
        """Builds from (id, vector) pairs, converting entries to Fractions."""
        frozen = tuple((row_id, tuple(Fraction(x) for x in vector)) for row_id, vector in rows)
        return cls(base, frozen, integral)

    def row(self, row_id):
        for other_id, vector in self.coefficient_rows:
            if other_id == row_id:
                return vector
        raise KeyError(row_id)


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise IntegralityError(f"boolean entry {x!r} in exchange matrix")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if hasattr(x, "__index__"):
        return x.__index__()
    raise IntegralityError(f"non-integer entry {x!r} in exchange matrix")


def _rows_of(matrix) -> tuple:
    if isinstance(matrix, ExchangeMatrix):
        return matrix.rows
    return tuple(tuple(_as_int(x) for x in row) for row in matrix)


def _require_square(rows):
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ShapeError(f"matrix is not square: row of length {len(row)} in a {n}-row matrix")


def _sign_skew_symmetric(rows) -> bool:
    n = len(rows)
    for i in range(n):
        for j in range(i, n):
            a, b = rows[i][j], rows[j][i]
            if (a > 0) - (a < 0) != -((b > 0) - (b < 0)):
                return False
    return True


def _check_index(n: int, k: int):
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= n:
        raise MutationIndexError(f"mutation index k={k} out of range for rank {n}")


def is_skew_symmetric(matrix) -> bool:
    """
    Checks whether b_ij = -b_ji for all i, j.

    Args:
        matrix: An ExchangeMatrix or a square nested sequence of integers.

    Returns:
        bool: True if the matrix is skew-symmetric.

    Raises:
        ShapeError: If the matrix is not square.
    """
    rows = _rows_of(matrix)
    _require_square(rows)
    n = len(rows)
    return all(rows[i][j] == -rows[j][i] for i in range(n) for j in range(n))


def is_skew_symmetrizable(matrix, bound=None):
    """
    Searches for positive integers d_1..d_n with d_i b_ij = -d_j b_ji.

    Ratios d_j / d_i are propagated along the graph of nonzero entries, then each
    connected component is scaled to coprime positive integers.

    Args:
        matrix: An ExchangeMatrix or a square nested sequence of integers.
        bound (int): Largest allowed d_i. Defaults to config.SYMMETRIZER_BOUND.

    Returns:
        tuple or None: The diagonal witness, or None if no witness exists.

    Raises:
        ShapeError: If the matrix is not square.
        SymmetrizerBoundError: If a witness exists but needs an entry above the bound.
    """
    rows = _rows_of(matrix)
    _require_square(rows)
    bound = config.SYMMETRIZER_BOUND if bound is None else bound
    n = len(rows)
    if not _sign_skew_symmetric(rows):
        return None

    ratios = [None] * n
    witness = [0] * n
    for root in range(n):
        if ratios[root] is not None:
            continue
        ratios[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                # d_j = d_i * b_ij / (-b_ji)
                value = ratios[i] * Fraction(rows[i][j], -rows[j][i])
                if ratios[j] is None:
                    ratios[j] = value
                    component.append(j)
                    stack.append(j)
                elif ratios[j] != value:
                    return None
        scale = lcm(*(ratios[i].denominator for i in component))
        ints = [int(ratios[i] * scale) for i in component]
        common = gcd(*ints)
        for i, value in zip(component, ints):
            witness[i] = value // common
            if witness[i] > bound:
                raise SymmetrizerBoundError(
                    f"skew-symmetrizer entry {witness[i]} exceeds the bound {bound}"
                )
    return tuple(witness)


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """
    Mutates B at the 1-based index k.

    b'_ij = -b_ij if i = k or j = k, otherwise b_ij + sgn(b_kj) [b_ik b_kj]_+.

    Raises:
        MutationIndexError: If k is outside 1..n.
    """
    _check_index(B.n, k)
    return _mutate_cached(B, k)


@functools.lru_cache(maxsize=config.MATRIX_CACHE_SIZE)
def _mutate_cached(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    rows = B.rows
    n = len(rows)
    kk = k - 1
    out = []
    for i in range(n):
        new_row = []
        b_ik = rows[i][kk]
        for j in range(n):
            b_ij = rows[i][j]
            if i == kk or j == kk:
                new_row.append(-b_ij)
                continue
            b_kj = rows[kk][j]
            product = b_ik * b_kj
            if product > 0:
                new_row.append(b_ij + (product if b_kj > 0 else -product))
            else:
                new_row.append(b_ij)
        out.append(tuple(new_row))
    return ExchangeMatrix(tuple(out))


def mutate_along(B: ExchangeMatrix, seq) -> list:
    """
    Returns the intermediate matrices B_1 = B, B_{i+1} = mu_{k_i}(B_i) along seq.

    The sequence is applied left to right: seq[0] is applied first.

    Raises:
        MutationIndexError: If any index is outside 1..n.
    """
    for k in seq:
        _check_index(B.n, k)
    matrices = [B]
    for k in seq:
        matrices.append(_mutate_cached(matrices[-1], k))
    return matrices


def mutate_extended(Bt: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    """
    Mutates an extended exchange matrix at k.

    The base mutates by mutate_matrix and every coefficient row a becomes eta_k^B(a).
    """
    from utils.mutation_maps import eta_step

    _check_index(Bt.base.n, k)
    rows = tuple((row_id, eta_step(Bt.base, k, vector)) for row_id, vector in Bt.coefficient_rows)
    return ExtendedExchangeMatrix(mutate_matrix(Bt.base, k), rows, Bt.integral)


def clear_cache():
    """Drops memoized mutations."""
    _mutate_cached.cache_clear()
    logging.debug("Cleared the matrix mutation cache.")


__all__ = [
    "ExchangeMatrix",
    "ExtendedExchangeMatrix",
    "IntegralityError",
    "MutationIndexError",
    "ShapeError",
    "SymmetrizerBoundError",
    "is_skew_symmetric",
    "is_skew_symmetrizable",
    "mutate_along",
    "mutate_extended",
    "mutate_matrix",
]
