import random
from fractions import Fraction

import pytest

from utils.exchange_core import (
    ExchangeMatrix,
    ExtendedExchangeMatrix,
    IntegralityError,
    MutationIndexError,
    ShapeError,
    SymmetrizerBoundError,
    is_skew_symmetric,
    is_skew_symmetrizable,
    mutate_along,
    mutate_extended,
    mutate_matrix,
)


@pytest.fixture
def annulus_matrix():
    return ExchangeMatrix.from_rows([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])


def random_skew_matrix(rng, n, bound=3):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = x, -x
    return ExchangeMatrix.from_rows(rows)


def test_mutate_annulus_at_one(annulus_matrix):
    assert mutate_matrix(annulus_matrix, 1).to_lists() == [[0, -1, -1], [1, 0, 1], [1, -1, 0]]


def test_mutate_one_by_one_zero():
    B = ExchangeMatrix.from_rows([[0]])
    assert mutate_matrix(B, 1) == B


def test_mutation_is_an_involution_and_keeps_skew_symmetry():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        B = random_skew_matrix(rng, n)
        k = rng.randint(1, n)
        mutated = mutate_matrix(B, k)
        assert is_skew_symmetric(mutated)
        assert mutate_matrix(mutated, k) == B


def test_mutation_commutes_with_permutation():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 5)
        B = random_skew_matrix(rng, n)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        k = rng.randint(1, n)
        assert mutate_matrix(B.permute(perm), perm[k - 1]) == mutate_matrix(B, k).permute(perm)


def test_mutate_along(annulus_matrix):
    assert mutate_along(annulus_matrix, []) == [annulus_matrix]
    assert mutate_along(annulus_matrix, [1, 1]) == [annulus_matrix, mutate_matrix(annulus_matrix, 1), annulus_matrix]
    steps = mutate_along(annulus_matrix, [1])
    assert steps[1].to_lists() == [[0, -1, -1], [1, 0, 1], [1, -1, 0]]


def test_mutate_along_then_reversed_returns(annulus_matrix):
    seq = [1, 3, 2, 1, 3]
    final = mutate_along(annulus_matrix, seq)[-1]
    assert mutate_along(final, list(reversed(seq)))[-1] == annulus_matrix


def test_index_out_of_range(annulus_matrix):
    with pytest.raises(MutationIndexError):
        mutate_matrix(annulus_matrix, 0)
    with pytest.raises(MutationIndexError):
        mutate_along(annulus_matrix, [1, 4])


def test_from_rows_rejects_bad_input():
    with pytest.raises(ShapeError):
        ExchangeMatrix.from_rows([[0, 1], [-1, 0], [0, 0]])
    with pytest.raises(ShapeError):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(IntegralityError):
        ExchangeMatrix.from_rows([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])


def test_skew_symmetrizable():
    assert is_skew_symmetrizable([[0, 1], [-2, 0]]) == (2, 1)
    assert is_skew_symmetrizable([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]) == (1, 1, 1)
    assert is_skew_symmetrizable([[0, 1, 0], [-1, 0, 1], [0, -2, 0]]) == (2, 2, 1)
    # inconsistent ratios around a cycle
    assert is_skew_symmetrizable([[0, 1, 1], [-2, 0, 1], [-1, -1, 0]]) is None
    with pytest.raises(SymmetrizerBoundError):
        is_skew_symmetrizable([[0, 1], [-5, 0]], bound=3)


def test_mutate_extended_rows(annulus_matrix):
    Bt = ExtendedExchangeMatrix.build(annulus_matrix, [("e2", (0, 1, 0)), ("inf", (1, 0, -1))])
    mutated = mutate_extended(Bt, 1)
    assert mutated.base == mutate_matrix(annulus_matrix, 1)
    assert mutated.row("e2") == (0, 1, 0)
    assert mutated.row("inf") == (-1, 1, 0)


def test_mutate_extended_without_rows(annulus_matrix):
    mutated = mutate_extended(ExtendedExchangeMatrix(annulus_matrix), 2)
    assert mutated.base == mutate_matrix(annulus_matrix, 2)
    assert mutated.coefficient_rows == ()


def test_extended_integral_mode(annulus_matrix):
    with pytest.raises(IntegralityError):
        ExtendedExchangeMatrix.build(annulus_matrix, [("y", ("1/2", 0, 0))], integral=True)
    with pytest.raises(ShapeError):
        ExtendedExchangeMatrix.build(annulus_matrix, [("y", (1, 0))])
