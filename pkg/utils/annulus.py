"""
The annulus with one marked point on the inner boundary and two on the outer one.

Curves are drawn as exact rational polylines in the universal cover, the strip
0 <= y <= 1 with period 2 in x. The inner marked point Q sits at even x on y = 0;
the outer points P1 and P2 sit at even and odd x on y = 1. The reference
triangulation has arcs 1 = Q0-P2_1, 2 = Q0-P1_0 and 3 = Q2-P2_1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from utils.exchange_core import ExchangeMatrix
from utils.surface import (
    BoundaryEnd,
    Curve,
    MarkedSurface,
    Triangulation,
    UnsupportedSurfaceError,
    flip,
    shear_coordinates,
    transport_curve,
)

PERIOD = 2
EPSILON = Fraction(1, 100)

INNER = "in"
OUTER_1 = "o1"
OUTER_2 = "o2"

ANNULUS_MATRIX = ExchangeMatrix(((0, 1, 1), (-1, 0, 1), (-1, -1, 0)))

NAMED_VECTORS = {
    "v1": (-1, 0, 0),
    "v2": (0, 1, 0),
    "v3": (0, -1, 0),
    "v4": (0, 0, 1),
    "v+": (0, 1, -1),
    "v-": (1, -1, 0),
    "vinf": (1, 0, -1),
}

FAMILIES = ("1", "2", "3", "4", "+", "-", "inf")


class InvalidAnnulusCurveError(ValueError):
    """Raised for annulus curve parameters or polylines that do not describe an allowable curve."""
    pass


def annulus_triangulation() -> Triangulation:
    """The reference triangulation: triangles (2, o1, 1), (1, 3, in) and (3, o2, 2)."""
    return Triangulation(
        (
            ((2, OUTER_1, 1), ("Q", "P1", "P2")),
            ((1, 3, INNER), ("Q", "P2", "Q")),
            ((3, OUTER_2, 2), ("Q", "P2", "P1")),
        ),
        surface=MarkedSurface(0, (1, 2), 0),
    )


@dataclass(frozen=True)
class StripArc:
    """An arc from the inner point at even x = inner to the outer point at x = outer."""
    inner: int
    outer: int

    def __post_init__(self):
        if self.inner % PERIOD:
            raise InvalidAnnulusCurveError(f"the inner marked point sits at even x, got {self.inner}")

    def lifts(self, low: int, high: int):
        for k in range(low, high + 1):
            shift = PERIOD * k
            yield (Fraction(self.inner + shift), Fraction(0)), (Fraction(self.outer + shift), Fraction(1))


STRIP_ARCS = {1: StripArc(0, 1), 2: StripArc(0, 0), 3: StripArc(2, 1)}

# Arcs created by a single flip of the reference triangulation; the flip of arc 2
# joins the outer point P2 to itself and has no inner end.
FLIPPED_STRIP_ARCS = {1: StripArc(2, 0), 3: StripArc(0, 2)}


@dataclass(frozen=True)
class AnnulusCurve:
    """
    A member of the annulus curve families.

    Families 1 and 3 take n >= 0 and families 2 and 4 take n <= 0; other values are
    folded into the neighbouring family. "+", "-" and "inf" take no parameter.
    """
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidAnnulusCurveError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.family in ("+", "-", "inf") and self.n != 0:
            raise InvalidAnnulusCurveError(f"family {self.family!r} takes no parameter")

    def canonical(self) -> "AnnulusCurve":
        f, n = self.family, self.n
        if f == "1" and n < 0:
            return AnnulusCurve("2", n + 1)
        if f == "2" and n > 0:
            return AnnulusCurve("1", n - 1)
        if f == "3" and n < 0:
            return AnnulusCurve("4", n + 1)
        if f == "4" and n > 0:
            return AnnulusCurve("3", n - 1)
        return self

    @property
    def label(self) -> str:
        c = self.canonical()
        if c.family in ("+", "-", "inf"):
            return f"lambda{c.family}"
        return f"lambda{c.family}^({c.n})"

    def polyline(self) -> tuple:
        """Waypoints of a lift in the strip, and whether the curve is closed."""
        c = self.canonical()
        half = Fraction(1, 2)
        start = (half, Fraction(0))
        ends = {
            "1": half - 2 * c.n,
            "2": Fraction(5, 2) - 2 * c.n,
            "3": -half - 2 * c.n,
            "4": Fraction(3, 2) - 2 * c.n,
        }
        if c.family in ends:
            return (start, (ends[c.family], Fraction(1))), False
        points = {
            "+": ((half, 1), (1, half), (Fraction(9, 4), half), (Fraction(5, 2), 1)),
            "-": ((Fraction(3, 2), 1), (1, half), (Fraction(-1, 4), half), (-half, 1)),
            "inf": ((Fraction(-1, 4), half), (Fraction(7, 4), half)),
        }[c.family]
        return tuple((Fraction(x), Fraction(y)) for x, y in points), c.family == "inf"


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return p[0] - q[0], p[1] - q[1]


def _segment_of(point) -> str:
    x, y = point
    if y == 0:
        if x.denominator == 1 and x.numerator % PERIOD == 0:
            raise InvalidAnnulusCurveError(f"curve ends at the marked point {point}")
        return INNER
    if y == 1:
        if x.denominator == 1:
            raise InvalidAnnulusCurveError(f"curve ends at the marked point {point}")
        return OUTER_1 if math.floor(x) % PERIOD == 0 else OUTER_2
    raise InvalidAnnulusCurveError(f"curve end {point} is not on the boundary")


def _check_interior(points, closed):
    inner = points if closed else points[1:-1]
    for x, y in inner:
        if not 0 < y < 1:
            raise InvalidAnnulusCurveError(f"waypoint {(x, y)} must lie strictly inside the strip")


def _segment_hits(p, q, arcs):
    d = _sub(q, p)
    xs = [p[0], q[0]]
    low, high = math.floor(min(xs) / PERIOD) - 2, math.ceil(max(xs) / PERIOD) + 2
    hits = []
    for label, arc in arcs.items():
        for a, b in arc.lifts(low, high):
            e = _sub(b, a)
            denom = _cross(d, e)
            offset = _sub(a, p)
            if denom == 0:
                if _cross(offset, d) == 0:
                    raise InvalidAnnulusCurveError(f"a curve segment runs along arc {label}")
                continue
            t = _cross(offset, e) / denom
            s = _cross(offset, d) / denom
            if not (0 < s < 1 and 0 <= t <= 1):
                continue
            if t in (0, 1):
                raise InvalidAnnulusCurveError(f"waypoint {p if t == 0 else q} lies on arc {label}")
            hits.append((t, label))
    return sorted(hits)


def annulus_curve_crossings(curve, arcs=None) -> tuple:
    """
    Crossing sequence of a strip polyline against the lifts of the given arcs.

    Args:
        curve: An AnnulusCurve, or a (points, closed) pair. A closed polyline must end
            one period to the right of where it starts.
        arcs (dict): Arc label to StripArc; defaults to the reference triangulation.

    Returns:
        tuple: (crossings, ends) with ends a pair of boundary segment names, or () when closed.
    """
    points, closed = curve.polyline() if isinstance(curve, AnnulusCurve) else curve
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    arcs = STRIP_ARCS if arcs is None else arcs
    if len(points) < 2:
        raise InvalidAnnulusCurveError("a polyline needs at least two points")
    _check_interior(points, closed)
    if closed:
        first, last = points[0], points[-1]
        if last != (first[0] + PERIOD, first[1]):
            raise InvalidAnnulusCurveError("a closed polyline must end one period right of its start")
        ends = ()
    else:
        ends = (_segment_of(points[0]), _segment_of(points[-1]))
    crossings = []
    for p, q in zip(points, points[1:]):
        crossings.extend(label for _, label in _segment_hits(p, q, arcs))
    return crossings, ends


def annulus_curve(curve: AnnulusCurve) -> Curve:
    """The family member as a Curve relative to the reference triangulation."""
    crossings, ends = annulus_curve_crossings(curve)
    return Curve(tuple(crossings), tuple(BoundaryEnd(s) for s in ends), closed=not ends)


def annulus_shear(curve: AnnulusCurve) -> tuple:
    """
    Closed-form shear coordinates of a family member.

    lambda1^(n) = v1 + n vinf, lambda3^(n) = v3 + n vinf, lambda2^(-n) = v2 + n vinf and
    lambda4^(-n) = v4 + n vinf; lambda+, lambda- and lambdainf give v+, v- and vinf.
    """
    c = curve.canonical()
    special = {"+": "v+", "-": "v-", "inf": "vinf"}
    if c.family in special:
        return NAMED_VECTORS[special[c.family]]
    base = NAMED_VECTORS[f"v{c.family}"]
    steps = abs(c.n)
    return tuple(b + steps * w for b, w in zip(base, NAMED_VECTORS["vinf"]))


def annulus_allowable_curves(N: int) -> list:
    """
    The three special curves and the four families with |n| <= N.

    Returns:
        list[AnnulusCurve]: Canonical curves with pairwise distinct shear vectors.
    """
    if N < 0:
        raise InvalidAnnulusCurveError(f"N must be nonnegative, got {N}")
    curves = [AnnulusCurve("+"), AnnulusCurve("-"), AnnulusCurve("inf")]
    for n in range(N + 1):
        curves += [AnnulusCurve("1", n), AnnulusCurve("2", -n), AnnulusCurve("3", n), AnnulusCurve("4", -n)]
    logging.debug(f"{len(curves)} annulus curves with |n| <= {N}.")
    return curves


def kappa(arc: StripArc) -> Curve:
    """
    The curve kappa(arc) relative to the reference triangulation.

    Both ends slide a little along the boundary: right of the inner end and left of the
    outer end, keeping the arc's interior on the same side.
    """
    points = ((Fraction(arc.inner) + EPSILON, Fraction(0)), (Fraction(arc.outer) - EPSILON, Fraction(1)))
    crossings, ends = annulus_curve_crossings((points, False))
    return Curve(tuple(crossings), tuple(BoundaryEnd(s) for s in ends))


def _strip_model(T: Triangulation):
    base = annulus_triangulation()
    if T == base:
        return base, None, dict(STRIP_ARCS)
    for k in (1, 2, 3):
        if T == flip(base, k):
            arcs = dict(STRIP_ARCS)
            del arcs[k]
            if k in FLIPPED_STRIP_ARCS:
                arcs[k] = FLIPPED_STRIP_ARCS[k]
            return base, k, arcs
    raise UnsupportedSurfaceError("only the annulus reference triangulation and its flips have a strip model")


def elementary_lamination_check(T: Triangulation, arc: int) -> tuple:
    """
    Shear coordinates b(T, kappa(arc)) for an arc of an annulus triangulation.

    Every arc should give -e_arc.

    Raises:
        UnsupportedSurfaceError: If T has no strip model here, or the arc has no inner end.
    """
    base, flipped_at, arcs = _strip_model(T)
    if arc not in arcs:
        raise UnsupportedSurfaceError(f"arc {arc} has no strip model with an inner end")
    curve = kappa(arcs[arc])
    if flipped_at is not None:
        curve = transport_curve(base, flipped_at, curve)
    vector = shear_coordinates(T, curve)
    logging.debug(f"kappa of arc {arc} has shear coordinates {vector}.")
    return vector


__all__ = [
    "ANNULUS_MATRIX",
    "AnnulusCurve",
    "FLIPPED_STRIP_ARCS",
    "InvalidAnnulusCurveError",
    "NAMED_VECTORS",
    "STRIP_ARCS",
    "StripArc",
    "annulus_allowable_curves",
    "annulus_curve",
    "annulus_curve_crossings",
    "annulus_shear",
    "annulus_triangulation",
    "elementary_lamination_check",
    "kappa",
]
