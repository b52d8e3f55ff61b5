"""Exact rational linear algebra helpers built on sympy's DomainMatrix over QQ."""
from fractions import Fraction
from math import gcd, lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def domain_matrix(rows, ncols=None) -> DomainMatrix:
    """Builds a DomainMatrix over QQ from nested sequences of rationals."""
    rows = [list(row) for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def rref(rows, ncols=None):
    """
    Reduced row echelon form.

    Returns:
        tuple: (list of Fraction rows, tuple of pivot columns).
    """
    if not rows:
        return [], ()
    reduced, pivots = domain_matrix(rows, ncols).rref()
    nrows, width = reduced.shape
    dense = reduced.to_Matrix()
    out = [[Fraction(int(dense[i, j].p), int(dense[i, j].q)) for j in range(width)] for i in range(nrows)]
    return out, tuple(pivots)


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols) -> list:
    """
    Basis of {x : M x = 0} for the matrix with the given rows and ncols columns.

    Returns:
        list[tuple[Fraction]]: One basis vector per free column.
    """
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * ncols
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r][f]
        basis.append(tuple(vector))
    return basis


def solve(columns, target):
    """
    Finds x with sum_i x_i columns[i] = target.

    Returns:
        tuple[Fraction] or None: A solution (free variables set to 0), or None if infeasible.
    """
    m = len(columns)
    n = len(target)
    augmented = [[columns[i][r] for i in range(m)] + [target[r]] for r in range(n)]
    reduced, pivots = rref(augmented, m + 1)
    if m in pivots:
        return None
    x = [Fraction(0)] * m
    for r, p in enumerate(pivots):
        x[p] = reduced[r][m]
    return tuple(x)


def integer_scaled(vector) -> tuple:
    """Scales a rational vector by the lcm of its denominators and divides out the gcd."""
    fractions = [Fraction(x) for x in vector]
    scale = lcm(*(x.denominator for x in fractions)) if fractions else 1
    ints = [int(x * scale) for x in fractions]
    common = gcd(*ints) if ints else 0
    if common == 0:
        return tuple(ints)
    return tuple(x // common for x in ints)


def primitive(vector) -> tuple:
    """The primitive integer vector on the ray through a nonzero rational vector."""
    return integer_scaled(vector)
