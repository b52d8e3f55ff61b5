"""Piecewise-linear mutation maps eta_k^B and their compositions along sequences."""
from fractions import Fraction

from utils.exchange_core import ExchangeMatrix, ShapeError, _check_index, mutate_along


def as_vector(values) -> tuple:
    """Converts a sequence of ints, Fractions or "p/q" strings to a tuple of Fractions."""
    return tuple(Fraction(x) for x in values)


def _step(rows, kk: int, a) -> tuple:
    # rows: raw tuple rows of B, kk: 0-based index
    a_k = a[kk]
    if a_k == 0:
        return tuple(a)
    row_k = rows[kk]
    out = list(a)
    for j, b_kj in enumerate(row_k):
        if j == kk:
            out[j] = -a_k
        elif a_k > 0 and b_kj > 0:
            out[j] = a[j] + a_k * b_kj
        elif a_k < 0 and b_kj < 0:
            out[j] = a[j] - a_k * b_kj
    return tuple(out)


def _check_dim(B: ExchangeMatrix, a):
    if len(a) != B.n:
        raise ShapeError(f"vector of length {len(a)} used with a rank {B.n} matrix")


def eta_step(B: ExchangeMatrix, k: int, a) -> tuple:
    """
    Applies the mutation map eta_k^B to a.

    a'_k = -a_k; for j != k, a'_j = a_j + a_k b_kj when a_k >= 0 and b_kj >= 0,
    a_j - a_k b_kj when a_k <= 0 and b_kj <= 0, and a_j otherwise.

    Args:
        B (ExchangeMatrix): The exchange matrix.
        k (int): 1-based mutation index.
        a: Vector of length n (ints or Fractions).

    Returns:
        tuple: The image vector, with the same entry types as the input.

    Raises:
        MutationIndexError: If k is out of range.
        ShapeError: If the vector length differs from the rank.
    """
    _check_index(B.n, k)
    _check_dim(B, a)
    return _step(B.rows, k - 1, tuple(a))


def eta(B: ExchangeMatrix, seq, a) -> tuple:
    """Composes eta_step along seq, applying seq[0] first with the intermediate matrices."""
    _check_dim(B, a)
    matrices = mutate_along(B, seq)
    image = tuple(a)
    for matrix, k in zip(matrices, seq):
        image = _step(matrix.rows, k - 1, image)
    return image


def eta_inverse(B: ExchangeMatrix, seq, a) -> tuple:
    """Inverse of eta(B, seq, .): runs the reversed sequence starting from mu_seq(B)."""
    _check_dim(B, a)
    final = mutate_along(B, seq)[-1]
    return eta(final, list(reversed(seq)), a)


def eta_images(B: ExchangeMatrix, seq, vectors) -> list:
    """Images of several vectors along one sequence, sharing the intermediate matrices."""
    matrices = mutate_along(B, seq)
    images = [tuple(v) for v in vectors]
    for v in images:
        _check_dim(B, v)
    for matrix, k in zip(matrices, seq):
        images = [_step(matrix.rows, k - 1, v) for v in images]
    return images


def min_with_zero(a) -> tuple:
    """Componentwise min(a_j, 0)."""
    return tuple(x if x < 0 else 0 * x for x in a)


def g_vector(B: ExchangeMatrix, seq, k: int) -> tuple:
    """
    The g-vector, relative to the initial seed, of the k-th cluster variable of mu_seq(B).

    Uses -g^{B_1} = eta_k^{B_0}(-g^{B_0}) backwards along seq, starting from e_k
    at the final seed. Only meaningful for skew-symmetric B.
    """
    _check_index(B.n, k)
    minus_e_k = tuple(-1 if j == k - 1 else 0 for j in range(B.n))
    return tuple(-x for x in eta_inverse(B, seq, minus_e_k))


__all__ = ["as_vector", "eta", "eta_images", "eta_inverse", "eta_step", "g_vector", "min_with_zero"]
