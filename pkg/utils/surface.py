"""
Combinatorial triangulated marked surfaces: triangulations, flips, signed adjacency
matrices and shear coordinates of curves given by their crossing sequences.

A triangle is a clockwise triple of edges (e0, e1, e2) with vertices (v0, v1, v2),
where e_i runs from v_i to v_{i+1}. Arcs are the integers 1..n, boundary segments
are strings. A self-folded triangle repeats its radius, for example (l, r, r) with
vertices (a, a, p). A tagged triangulation is stored as its untagged triangulation
plus the punctures at which every arc end is notched.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from utils.exchange_core import ExchangeMatrix

PLAIN = "plain"
NOTCHED = "notched"
CW = "cw"
CCW = "ccw"

MAX_SPIRAL_TURNS = 8


class InvalidSurfaceError(ValueError):
    """Raised for marked surfaces that are excluded or malformed."""
    pass


class InvalidTriangulationError(ValueError):
    """Raised when triangles do not glue into a valid triangulation."""
    pass


class UnflippableArcError(ValueError):
    """Raised when an arc has no flip."""
    pass


class MalformedCurveError(ValueError):
    """Raised when a crossing sequence is inconsistent with the triangulation."""
    pass


class UnsupportedSurfaceError(ValueError):
    """Raised when an operation has no model for the given surface or curve."""
    pass


@dataclass(frozen=True)
class MarkedSurface:
    """Genus, marked-point count of each boundary component, and number of punctures."""
    genus: int = 0
    boundary_components: tuple = ()
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise InvalidSurfaceError("genus and puncture count must be nonnegative")
        if any(c < 1 for c in self.boundary_components):
            raise InvalidSurfaceError("every boundary component needs at least one marked point")
        b = len(self.boundary_components)
        if b == 0 and self.punctures == 0:
            raise InvalidSurfaceError("a closed surface needs at least one puncture")
        if self.genus == 0 and b == 0 and self.punctures < 4:
            raise InvalidSurfaceError("a sphere needs at least four punctures")
        if self.genus == 0 and b == 1:
            marks = self.boundary_components[0]
            if self.punctures == 0 and marks <= 3:
                raise InvalidSurfaceError("unpunctured monogons, digons and triangles are excluded")
            if self.punctures == 1 and marks == 1:
                raise InvalidSurfaceError("the once-punctured monogon is excluded")

    @property
    def rank(self) -> int:
        """Number of arcs in any triangulation."""
        b = len(self.boundary_components)
        return 6 * self.genus + 3 * b + 3 * self.punctures + sum(self.boundary_components) - 6


@dataclass(frozen=True)
class Triangle:
    edges: tuple
    vertices: tuple

    def is_self_folded(self) -> bool:
        return len(set(self.edges)) < 3

    def folded_pair(self):
        """(loop, radius, puncture) of a self-folded triangle."""
        for i in range(3):
            if self.edges[(i + 1) % 3] == self.edges[(i + 2) % 3]:
                # the radius runs v_{i+1} -> v_{i+2} -> v_{i+1}; v_{i+2} is the puncture
                return self.edges[i], self.edges[(i + 1) % 3], self.vertices[(i + 2) % 3]
        raise InvalidTriangulationError(f"triangle {self.edges} is not self-folded")

    def rotated(self, shift: int) -> "Triangle":
        """The same triangle with position `shift` moved to position 0."""
        return Triangle(
            tuple(self.edges[(i + shift) % 3] for i in range(3)),
            tuple(self.vertices[(i + shift) % 3] for i in range(3)),
        )


def _is_arc(edge) -> bool:
    return isinstance(edge, int) and not isinstance(edge, bool)


def _order_key(x):
    return (0, x, "") if _is_arc(x) else (1, 0, str(x))


@dataclass(frozen=True, eq=False)
class Triangulation:
    """An ideal triangulation with optional notching at punctures."""
    triangles: tuple
    punctures: frozenset = frozenset()
    notched: frozenset = frozenset()
    surface: MarkedSurface = None
    _half_edges: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        triangles = tuple(
            t if isinstance(t, Triangle) else Triangle(tuple(t[0]), tuple(t[1])) for t in self.triangles
        )
        object.__setattr__(self, "triangles", triangles)
        object.__setattr__(self, "punctures", frozenset(self.punctures))
        object.__setattr__(self, "notched", frozenset(self.notched))
        half_edges = {}
        for t, tri in enumerate(triangles):
            if len(tri.edges) != 3 or len(tri.vertices) != 3:
                raise InvalidTriangulationError(f"triangle {t} must have three edges and three vertices")
            for pos, edge in enumerate(tri.edges):
                half_edges.setdefault(edge, []).append((t, pos))
        object.__setattr__(self, "_half_edges", half_edges)
        self._validate()

    def _validate(self):
        arcs = self.arcs
        if arcs != list(range(1, len(arcs) + 1)):
            raise InvalidTriangulationError(f"arcs must be labelled 1..n, got {arcs}")
        for edge, places in self._half_edges.items():
            expected = 2 if _is_arc(edge) else 1
            if len(places) != expected:
                raise InvalidTriangulationError(
                    f"edge {edge!r} appears {len(places)} times, expected {expected}"
                )
            if expected == 2:
                (t1, p1), (t2, p2) = places
                if self._endpoints(t1, p1) != self._endpoints(t2, p2)[::-1]:
                    raise InvalidTriangulationError(f"the two sides of arc {edge} do not match up")
        for tri in self.triangles:
            if tri.is_self_folded():
                loop, radius, puncture = tri.folded_pair()
                if not _is_arc(loop) or not _is_arc(radius):
                    raise InvalidTriangulationError(f"self-folded triangle {tri.edges} needs arc sides")
                if puncture not in self.punctures:
                    raise InvalidTriangulationError(f"radius {radius} must end at a puncture, not {puncture!r}")
        if not self.notched <= self.punctures:
            raise InvalidTriangulationError("only punctures can carry notched ends")
        if self.surface is not None and self.surface.rank != len(arcs):
            raise InvalidTriangulationError(
                f"{len(arcs)} arcs given for a surface of rank {self.surface.rank}"
            )

    def _endpoints(self, t: int, pos: int) -> tuple:
        tri = self.triangles[t]
        return tri.vertices[pos], tri.vertices[(pos + 1) % 3]

    @property
    def arcs(self) -> list:
        return sorted(e for e in self._half_edges if _is_arc(e))

    @property
    def n(self) -> int:
        return len(self.arcs)

    @property
    def boundary_segments(self) -> list:
        return sorted(e for e in self._half_edges if not _is_arc(e))

    def half_edges(self, edge) -> list:
        if edge not in self._half_edges:
            raise MalformedCurveError(f"{edge!r} is not an edge of this triangulation")
        return list(self._half_edges[edge])

    def twin(self, t: int, pos: int):
        """The other side of the half-edge (t, pos), or None on the boundary."""
        edge = self.triangles[t].edges[pos]
        if not _is_arc(edge):
            return None
        a, b = self._half_edges[edge]
        return b if a == (t, pos) else a

    def self_folded(self) -> list:
        """(loop, radius, puncture) for every self-folded triangle."""
        return [tri.folded_pair() for tri in self.triangles if tri.is_self_folded()]

    def radius_to_loop(self) -> dict:
        return {radius: loop for loop, radius, _ in self.self_folded()}

    def tagged_ends(self, arc: int) -> tuple:
        """
        The two ends of a tagged arc as (marked point, tag) pairs.

        The loop of a self-folded triangle stands for its radius notched at the puncture.
        Tags are then switched at every notched puncture.
        """
        loops = {loop: (radius, p) for loop, radius, p in self.self_folded()}
        if arc in loops:
            radius, p = loops[arc]
            t, pos = self.half_edges(radius)[0]
            ends = [(v, NOTCHED if v == p else PLAIN) for v in self._endpoints(t, pos)]
        else:
            t, pos = self.half_edges(arc)[0]
            ends = [(v, PLAIN) for v in self._endpoints(t, pos)]
        return tuple(
            (v, (NOTCHED if tag == PLAIN else PLAIN) if v in self.notched else tag) for v, tag in ends
        )

    def tag(self, arc: int, end: int) -> str:
        """Tag of end 0 or 1 of an arc."""
        return self.tagged_ends(arc)[end][1]

    def canonical_key(self):
        def rotation_key(tri):
            return min(
                tuple(tuple(_order_key(x) for x in r.edges) + tuple(_order_key(x) for x in r.vertices))
                for r in (tri.rotated(s) for s in range(3))
            )

        return (tuple(sorted(rotation_key(t) for t in self.triangles)), tuple(sorted(self.notched, key=str)))

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def to_dict(self) -> dict:
        return {
            "arcs": self.n,
            "boundary": [str(s) for s in self.boundary_segments],
            "punctures": sorted(str(p) for p in self.punctures),
            "tags": {"notched": sorted(str(p) for p in self.notched)},
            "triangles": [list(t.edges) for t in self.triangles],
            "vertices": [list(t.vertices) for t in self.triangles],
        }


def signed_adjacency(T: Triangulation) -> ExchangeMatrix:
    """
    The exchange matrix B(T).

    For every triangle that is not self-folded and every pair of arcs (g, h) with h
    immediately clockwise after g, b_gh gains 1 and b_hg loses 1. A radius takes the
    row and column of the loop enclosing it.
    """
    n = T.n
    to_loop = T.radius_to_loop()
    label = lambda arc: to_loop.get(arc, arc)
    counts = {}
    for tri in T.triangles:
        if tri.is_self_folded():
            continue
        for j in range(3):
            x, y = tri.edges[j], tri.edges[(j + 1) % 3]
            if _is_arc(x) and _is_arc(y):
                px, py = label(x), label(y)
                counts[(px, py)] = counts.get((px, py), 0) + 1
                counts[(py, px)] = counts.get((py, px), 0) - 1
    rows = tuple(
        tuple(counts.get((label(i), label(j)), 0) for j in range(1, n + 1)) for i in range(1, n + 1)
    )
    return ExchangeMatrix(rows)


def _quad(T: Triangulation, arc: int):
    if not _is_arc(arc) or arc not in T.arcs:
        raise UnflippableArcError(f"{arc!r} is not an arc of this triangulation")
    (t1, r1), (t2, r2) = T.half_edges(arc)
    return t1, r1, t2, r2


def _swap_labels(T: Triangulation, a: int, b: int, notched) -> Triangulation:
    swap = {a: b, b: a}
    triangles = tuple(
        Triangle(tuple(swap.get(e, e) if _is_arc(e) else e for e in tri.edges), tri.vertices)
        for tri in T.triangles
    )
    return Triangulation(triangles, T.punctures, notched, T.surface)


def as_loop(T: Triangulation, arc: int):
    """
    Re-expresses T so that arc is not a radius.

    A radius r with loop l at puncture p is moved into the loop position by swapping
    the labels r and l and toggling the notch at p; the tagged triangulation is unchanged.

    Returns:
        tuple: (triangulation, label swap dict).
    """
    for loop, radius, p in T.self_folded():
        if radius == arc:
            return _swap_labels(T, loop, radius, T.notched ^ {p}), {loop: radius, radius: loop}
    return T, {}


def flip(T: Triangulation, arc: int) -> Triangulation:
    """
    Replaces arc by the other diagonal of the quadrilateral around it; the label is kept.

    Triangles (e, a, b) on (x, y, z) and (e, c, d) on (y, x, w) become (e, b, c) on
    (w, z, x) and (e, d, a) on (z, w, y). Radii of self-folded triangles are flipped as
    tagged arcs.

    Raises:
        UnflippableArcError: If arc is not an arc of T or has no quadrilateral.
    """
    T, _ = as_loop(T, arc)
    t1, r1, t2, r2 = _quad(T, arc)
    if t1 == t2:
        raise UnflippableArcError(f"arc {arc} lies twice in one triangle and cannot be flipped")
    first = T.triangles[t1].rotated(r1)
    second = T.triangles[t2].rotated(r2)
    _, a, b = first.edges
    x, y, z = first.vertices
    _, c, d = second.edges
    w = second.vertices[2]
    triangles = list(T.triangles)
    triangles[t1] = Triangle((arc, b, c), (w, z, x))
    triangles[t2] = Triangle((arc, d, a), (z, w, y))
    logging.debug(f"Flipped arc {arc}.")
    return Triangulation(tuple(triangles), T.punctures, T.notched, T.surface)


@dataclass(frozen=True)
class BoundaryEnd:
    segment: str

    def to_dict(self) -> dict:
        return {"boundary": self.segment}


@dataclass(frozen=True)
class SpiralEnd:
    puncture: str
    direction: str = CW

    def __post_init__(self):
        if self.direction not in (CW, CCW):
            raise MalformedCurveError(f"spiral direction must be cw or ccw, got {self.direction!r}")

    def reversed(self) -> "SpiralEnd":
        return SpiralEnd(self.puncture, CCW if self.direction == CW else CW)

    def to_dict(self) -> dict:
        return {"direction": self.direction, "spiral": self.puncture}


@dataclass(frozen=True)
class Curve:
    """
    A curve given by the arcs it crosses, in order, in minimal position.

    Crossing entries are arc labels, or (arc, position) pairs naming the side of the
    current triangle the curve leaves through when the label alone is ambiguous.
    Open curves have two ends; closed curves have none and start just after the
    last listed crossing.
    """
    crossings: tuple = ()
    ends: tuple = ()
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(c) if isinstance(c, (list, tuple)) else c for c in self.crossings)
        )
        object.__setattr__(self, "ends", tuple(self.ends))
        if self.closed and self.ends:
            raise MalformedCurveError("closed curves have no ends")
        if not self.closed and len(self.ends) != 2:
            raise MalformedCurveError("open curves need exactly two ends")
        if self.closed and not self.crossings:
            raise MalformedCurveError("a closed curve crossing no arcs is not allowable")
        if (
            not self.closed
            and not self.crossings
            and all(isinstance(e, BoundaryEnd) for e in self.ends)
            and self.ends[0] == self.ends[1]
        ):
            raise MalformedCurveError("a curve with both ends on one segment and no crossings is excluded")

    def has_spirals(self) -> bool:
        return any(isinstance(e, SpiralEnd) for e in self.ends)

    def with_reversed_spirals(self, punctures) -> "Curve":
        if not punctures or not self.has_spirals():
            return self
        ends = tuple(
            e.reversed() if isinstance(e, SpiralEnd) and e.puncture in punctures else e for e in self.ends
        )
        return replace(self, ends=ends)

    def to_dict(self) -> dict:
        return {
            "closed": self.closed,
            "crossings": [list(c) if isinstance(c, tuple) else c for c in self.crossings],
            "ends": [e.to_dict() for e in self.ends],
        }


def _crossing_arc(entry):
    return entry[0] if isinstance(entry, tuple) else entry


def _exit_position(T: Triangulation, t: int, entry: int, crossing) -> int:
    tri = T.triangles[t]
    if isinstance(crossing, tuple):
        arc, pos = crossing
        if not 0 <= pos <= 2 or tri.edges[pos] != arc or pos == entry:
            raise MalformedCurveError(f"cannot leave triangle {tri.edges} through position {pos} as arc {arc}")
        return pos
    options = [p for p in range(3) if tri.edges[p] == crossing and p != entry]
    if not options:
        if tri.edges[entry] == crossing:
            raise MalformedCurveError(f"crossing {crossing} twice in a row forms a bigon")
        raise MalformedCurveError(f"arc {crossing} is not a side of triangle {tri.edges}")
    if len(options) > 1:
        raise MalformedCurveError(
            f"crossing {crossing} is ambiguous in triangle {tri.edges}; give it as [arc, position]"
        )
    return options[0]


def _walk_from(T: Triangulation, t: int, entry: int, crossings) -> list:
    """Steps (triangle, entry, exit) for each crossing; the final step's exit is None."""
    steps = []
    for crossing in crossings:
        pos = _exit_position(T, t, entry, crossing)
        steps.append((t, entry, pos))
        nxt = T.twin(t, pos)
        if nxt is None:
            raise MalformedCurveError(f"crossing {crossing} leaves through the boundary")
        t, entry = nxt
    steps.append((t, entry, None))
    return steps


def _spiral_exit(T: Triangulation, t: int, entry: int, puncture, direction) -> int:
    tri = T.triangles[t]
    corners = [c for c in range(3) if tri.vertices[c] == puncture]
    candidates = []
    for c in corners:
        # clockwise around p: in through e_c, out through e_{c-1}
        out = (c - 1) % 3 if direction == CW else c
        if out != entry:
            adjacent = entry in (c, (c - 1) % 3)
            candidates.append((not adjacent, out))
    if not candidates:
        raise MalformedCurveError(f"the curve cannot spiral into {puncture!r} from triangle {tri.edges}")
    return min(candidates)[1]


def _spiral_steps(T: Triangulation, t: int, entry: int, end: SpiralEnd, turns: int) -> list:
    """Unrolls a spiral from the state (t, entry) for a given number of full turns."""
    steps = []
    first_seen = {}
    while (t, entry) not in first_seen:
        first_seen[(t, entry)] = len(steps)
        pos = _spiral_exit(T, t, entry, end.puncture, end.direction)
        steps.append((t, entry, pos))
        nxt = T.twin(t, pos)
        if nxt is None:
            raise MalformedCurveError(f"spiral into {end.puncture!r} runs into the boundary")
        t, entry = nxt
    start = first_seen[(t, entry)]
    return steps[:start] + steps[start:] * turns


def _reverse_steps(steps) -> list:
    return [(t, exit_pos, entry) for t, entry, exit_pos in reversed(steps)]


def _open_walk(T: Triangulation, curve: Curve, turns: int) -> list:
    start, finish = curve.ends
    crossings = curve.crossings
    if isinstance(start, BoundaryEnd):
        candidates = [T.half_edges(start.segment)[0]]
        prefix_from_spiral = False
    else:
        if not crossings:
            raise MalformedCurveError("a curve starting in a spiral must list at least one crossing")
        first = crossings[0]
        candidates = [
            (t, pos) for t, pos in T.half_edges(_crossing_arc(first))
            if not isinstance(first, tuple) or pos == first[1]
        ]
        prefix_from_spiral = True
    errors = []
    for t, pos in candidates:
        try:
            if prefix_from_spiral:
                back = _spiral_steps(T, t, pos, start, turns)
                nxt = T.twin(t, pos)
                steps = _reverse_steps(back)[:-1]
                steps.append((t, back[0][2], pos))
                steps += _walk_from(T, nxt[0], nxt[1], crossings[1:])
            else:
                steps = _walk_from(T, t, pos, crossings)
            return _finish(T, steps, finish, turns)
        except MalformedCurveError as e:
            errors.append(str(e))
    raise MalformedCurveError("; ".join(errors))


def _finish(T: Triangulation, steps, finish, turns):
    t, entry, _ = steps[-1]
    if isinstance(finish, BoundaryEnd):
        tri = T.triangles[t]
        options = [p for p in range(3) if tri.edges[p] == finish.segment and p != entry]
        if not options:
            raise MalformedCurveError(f"the curve ends on {finish.segment!r}, which is not a side of {tri.edges}")
        return steps[:-1] + [(t, entry, options[0])]
    return steps[:-1] + _spiral_steps(T, t, entry, finish, turns)


def _closed_walk(T: Triangulation, curve: Curve) -> list:
    last = curve.crossings[-1]
    errors = []
    for t, entry in T.half_edges(_crossing_arc(last)):
        try:
            steps = _walk_from(T, t, entry, curve.crossings)
        except MalformedCurveError as e:
            errors.append(str(e))
            continue
        if steps[-1][:2] == (t, entry):
            return steps[:-1]
        errors.append("the crossing sequence does not close up")
    raise MalformedCurveError("; ".join(errors))


def _walk(T: Triangulation, curve: Curve, turns: int = 1) -> list:
    if curve.closed:
        return _closed_walk(T, curve)
    return _open_walk(T, curve, turns)


def _side_colour(entry: int, exit_pos: int) -> int:
    # +1 when the curve's other side is red, -1 when blue (clockwise red, blue, crossed arc)
    if entry == (exit_pos + 1) % 3:
        return 1
    if entry == (exit_pos + 2) % 3:
        return -1
    return 0


def _loop_shear(T: Triangulation, steps, closed: bool) -> list:
    vector = [0] * T.n
    radii = T.radius_to_loop()
    count = len(steps) if closed else len(steps) - 1
    for s in range(count):
        t, entry, exit_pos = steps[s]
        t2, entry2, exit2 = steps[(s + 1) % len(steps)]
        arc = T.triangles[t].edges[exit_pos]
        if arc in radii:
            continue
        here = _side_colour(entry, exit_pos)
        there = _side_colour(exit2, entry2)
        if here == there:
            vector[arc - 1] += here
    return vector


def _stable_shear(T: Triangulation, curve: Curve) -> list:
    if curve.closed or not curve.has_spirals():
        return _loop_shear(T, _walk(T, curve), curve.closed)
    previous = None
    for turns in range(1, MAX_SPIRAL_TURNS + 1):
        current = _loop_shear(T, _walk(T, curve, turns), False)
        if current == previous:
            return current
        previous = current
    raise MalformedCurveError(f"spiral contributions did not settle after {MAX_SPIRAL_TURNS} turns")


def shear_coordinates(T: Triangulation, curve: Curve) -> tuple:
    """
    Shear coordinates b(T, curve) from the curve's crossing walk.

    At each crossing of an arc g the curve's sides in the two triangles around g are
    coloured so that, clockwise, each triangle reads red, blue, g. The crossing counts
    +1 when both sides are red, -1 when both are blue and 0 otherwise. Spirals at
    notched punctures are reversed first. A radius gets the loop's coordinate of the
    curve with its spirals at the radius's puncture reversed.

    Raises:
        MalformedCurveError: If the crossings do not fit T's gluing.
    """
    curve = curve.with_reversed_spirals(T.notched)
    vector = _stable_shear(T, curve)
    for loop, radius, p in T.self_folded():
        vector[radius - 1] = _stable_shear(T, curve.with_reversed_spirals({p}))[loop - 1]
    return tuple(vector)


def _render_crossings(T: Triangulation, steps) -> list:
    out = []
    for t, entry, exit_pos in steps:
        tri = T.triangles[t]
        arc = tri.edges[exit_pos]
        others = [p for p in range(3) if tri.edges[p] == arc and p != entry]
        out.append((arc, exit_pos) if len(others) > 1 else arc)
    return out


def transport_curve(T: Triangulation, arc: int, curve: Curve) -> Curve:
    """
    The crossing sequence of curve relative to flip(T, arc).

    Each passage of the curve through the quadrilateral around arc enters through one
    side and leaves through another; it crosses the new diagonal exactly when those
    sides end up in different new triangles.

    Raises:
        UnsupportedSurfaceError: For curves with spiral ends.
    """
    if curve.has_spirals():
        raise UnsupportedSurfaceError("curves with spiral ends cannot be carried across a flip")
    base, swap = as_loop(T, arc)
    if swap:
        curve = replace(curve, crossings=tuple(
            (swap.get(c[0], c[0]), c[1]) if isinstance(c, tuple) else swap.get(c, c) for c in curve.crossings
        ))
    flipped = flip(base, arc)
    t1, r1, t2, r2 = _quad(base, arc)
    side = {
        (t1, (r1 + 1) % 3): (t2, 2),
        (t1, (r1 + 2) % 3): (t1, 1),
        (t2, (r2 + 1) % 3): (t1, 2),
        (t2, (r2 + 2) % 3): (t2, 1),
    }
    steps = _walk(base, curve)
    quad = {t1, t2}
    if curve.closed:
        outside = [i for i, s in enumerate(steps) if s[0] not in quad]
        if not outside:
            raise UnsupportedSurfaceError("a closed curve inside one quadrilateral cannot be transported")
        steps = steps[outside[0]:] + steps[:outside[0]]
    new_steps = []
    i = 0
    while i < len(steps):
        if steps[i][0] not in quad:
            new_steps.append(steps[i])
            i += 1
            continue
        j = i
        while j + 1 < len(steps) and steps[j + 1][0] in quad:
            j += 1
        enter = side[(steps[i][0], steps[i][1])]
        leave = side[(steps[j][0], steps[j][2])]
        if enter[0] == leave[0]:
            if enter[1] == leave[1]:
                raise MalformedCurveError("the curve enters and leaves the quadrilateral through one side")
            new_steps.append((enter[0], enter[1], leave[1]))
        else:
            new_steps.append((enter[0], enter[1], 0))
            new_steps.append((leave[0], 0, leave[1]))
        i = j + 1
    crossings = _render_crossings(flipped, new_steps if curve.closed else new_steps[:-1])
    if swap:
        crossings = [(swap.get(c[0], c[0]), c[1]) if isinstance(c, tuple) else swap.get(c, c) for c in crossings]
    return Curve(tuple(crossings), curve.ends, curve.closed)


def elementary_lamination_check(T: Triangulation, arc: int) -> tuple:
    """
    Shear coordinates of the elementary lamination kappa(arc) of an annulus arc.

    Raises:
        UnsupportedSurfaceError: If T is not the annulus model triangulation.
    """
    from utils import annulus

    return annulus.elementary_lamination_check(T, arc)


__all__ = [
    "BoundaryEnd",
    "Curve",
    "InvalidSurfaceError",
    "InvalidTriangulationError",
    "MalformedCurveError",
    "MarkedSurface",
    "SpiralEnd",
    "Triangle",
    "Triangulation",
    "UnflippableArcError",
    "UnsupportedSurfaceError",
    "as_loop",
    "elementary_lamination_check",
    "flip",
    "shear_coordinates",
    "signed_adjacency",
    "transport_curve",
]
