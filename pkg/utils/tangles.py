"""
Weighted tangles of curves: shear vectors, weighted union, null-tangle checks and disorder.

A tangle is stored against the annulus reference triangulation (or any triangulation
its curves can be evaluated on); every downstream check works on shear vectors and B.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

import networkx as nx

import config
from utils import annulus
from utils.coherence import (
    HOLDS,
    REFUTED,
    DepthVerdict,
    WeightedFamily,
    _resolve_depth,
    find_separating_sequence,
    is_b_coherent_up_to_depth,
    iter_images,
)
from utils.exchange_core import ExchangeMatrix, ShapeError
from utils.surface import Curve, Triangulation, UnsupportedSurfaceError, shear_coordinates


class SupportTooLargeError(ValueError):
    """Raised when the exact disorder computation is asked for too large a support."""
    pass


@dataclass(frozen=True)
class VectorCurve:
    """A curve known only through its shear vector in the reference triangulation."""
    vector: tuple
    name: str = None

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))

    @property
    def label(self) -> str:
        return self.name or "b" + str(list(self.vector))


def _identity(curve):
    return curve.canonical() if isinstance(curve, annulus.AnnulusCurve) else curve


def curve_label(curve) -> str:
    if isinstance(curve, (annulus.AnnulusCurve, VectorCurve)):
        return curve.label
    return str(curve)


@dataclass(frozen=True)
class Tangle:
    """Distinct curves with integer weights; zero weights stay in the tangle but not in its support."""
    items: tuple = field(default_factory=tuple)

    def __post_init__(self):
        items = tuple((_identity(c), int(w)) for c, w in self.items)
        keys = [c for c, _ in items]
        if len(set(keys)) != len(keys):
            raise ShapeError("a tangle lists each curve once")
        object.__setattr__(self, "items", items)

    @property
    def support(self) -> list:
        return [c for c, w in self.items if w != 0]

    @property
    def weights(self) -> dict:
        return dict(self.items)

    def is_trivial(self) -> bool:
        return not self.support

    def without(self, curves) -> "Tangle":
        drop = {_identity(c) for c in curves}
        return Tangle(tuple((c, w) for c, w in self.items if c not in drop))


def curve_shear(curve, reference=None) -> tuple:
    """
    Shear vector of one tangle curve.

    Args:
        reference: None or an ExchangeMatrix for the annulus closed form and stored
            vectors, or a Triangulation to evaluate curves by their crossing walk.

    Raises:
        UnsupportedSurfaceError: If the curve cannot be evaluated against reference.
    """
    if isinstance(curve, VectorCurve):
        if isinstance(reference, Triangulation):
            raise UnsupportedSurfaceError(f"{curve.label} carries no crossings to evaluate against a triangulation")
        return curve.vector
    if isinstance(curve, annulus.AnnulusCurve):
        if isinstance(reference, Triangulation):
            if reference != annulus.annulus_triangulation():
                raise UnsupportedSurfaceError(f"{curve.label} lives on the annulus reference triangulation")
            return shear_coordinates(reference, annulus.annulus_curve(curve))
        if isinstance(reference, ExchangeMatrix) and reference != annulus.ANNULUS_MATRIX:
            raise UnsupportedSurfaceError(f"{curve.label} is an annulus curve but B is not the annulus matrix")
        return annulus.annulus_shear(curve)
    if isinstance(curve, Curve):
        if not isinstance(reference, Triangulation):
            raise UnsupportedSurfaceError("crossing-sequence curves need a triangulation")
        return shear_coordinates(reference, curve)
    raise UnsupportedSurfaceError(f"cannot evaluate {curve!r}")


def tangle_shear(reference, tangle: Tangle) -> tuple:
    """The weighted sum of the shear vectors of the tangle's curves."""
    total = None
    for curve, weight in tangle.items:
        vector = curve_shear(curve, reference)
        if total is None:
            total = [0] * len(vector)
        if len(vector) != len(total):
            raise ShapeError("tangle curves have shear vectors of different lengths")
        for j, x in enumerate(vector):
            total[j] += weight * x
    if total is None:
        n = reference.n if reference is not None else 3
        return tuple([0] * n)
    return tuple(total)


def weighted_union(first: Tangle, second: Tangle) -> Tangle:
    """Multiset union; shared curves add their weights, and zero results are kept."""
    weights = dict(first.items)
    order = [c for c, _ in first.items]
    for curve, w in second.items:
        if curve in weights:
            weights[curve] += w
        else:
            weights[curve] = w
            order.append(curve)
    return Tangle(tuple((c, weights[c]) for c in order))


def tangle_family(tangle: Tangle, reference=None) -> WeightedFamily:
    """The support's shear vectors with their weights."""
    return WeightedFamily.build([(curve_shear(c, reference), w) for c, w in tangle.items if w != 0])


def null_check_up_to_depth(B: ExchangeMatrix, tangle: Tangle, depth=None, plain_only=False) -> DepthVerdict:
    """
    Checks that the tangle's shear vectors form a B-coherent relation up to depth.

    Args:
        plain_only (bool): Restrict to plainly tagged triangulations, as for once-punctured
            closed surfaces. No such surface has a model here.

    Returns:
        DepthVerdict: with check "null_tangle"; a refutation carries the (seq, coord)
        at which the weighted image sum is nonzero.
    """
    if plain_only:
        raise UnsupportedSurfaceError("plain-tag null checks need a once-punctured closed surface model")
    depth = _resolve_depth(B, depth)
    if tangle.is_trivial():
        return DepthVerdict(HOLDS, depth, "null_tangle")
    verdict = is_b_coherent_up_to_depth(B, tangle_family(tangle, B), depth)
    if not verdict.holds:
        logging.info(f"Tangle is not null: witness {verdict.witness}.")
    return DepthVerdict(verdict.status, depth, "null_tangle", verdict.witness)


def is_quasi_lamination(tangle: Tangle, compat) -> bool:
    """Nonnegative weights on a pairwise compatible support."""
    if any(w < 0 for _, w in tangle.items):
        return False
    support = tangle.support
    return all(compat(a, b) for i, a in enumerate(support) for b in support[i + 1:])


def compatibility_oracle(B: ExchangeMatrix, depth=None, reference=None):
    """
    Compatibility of two curves: no sequence up to depth gives their shear vectors
    strictly opposite signs. Results are memoized per unordered pair.
    """
    depth = _resolve_depth(B, depth)
    memo = {}

    def compat(a, b) -> bool:
        key = frozenset((_identity(a), _identity(b)))
        if key not in memo:
            if len(key) == 1:
                memo[key] = True
            else:
                va, vb = curve_shear(a, reference or B), curve_shear(b, reference or B)
                memo[key] = find_separating_sequence(B, va, vb, depth) is None
        return memo[key]

    return compat


def incompatibility_graph(curves, compat) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(curves)))
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if not compat(curves[i], curves[j]):
                graph.add_edge(i, j)
    return graph


def _minimum_colouring(graph: nx.Graph) -> dict:
    """Exact minimum vertex colouring by branch and bound, seeded with a greedy bound."""
    if graph.number_of_nodes() == 0:
        return {}
    best = nx.coloring.greedy_color(graph, strategy="largest_first")
    best_count = max(best.values()) + 1
    order = sorted(graph.nodes, key=lambda v: (-graph.degree(v), v))
    colouring = {}

    def assign(i: int, used: int):
        nonlocal best, best_count
        if used >= best_count:
            return
        if i == len(order):
            best, best_count = dict(colouring), used
            return
        v = order[i]
        taken = {colouring[u] for u in graph.neighbors(v) if u in colouring}
        for c in range(used):
            if c not in taken:
                colouring[v] = c
                assign(i + 1, used)
                del colouring[v]
        colouring[v] = used
        assign(i + 1, used + 1)
        del colouring[v]

    assign(0, 0)
    return best


def straight_decomposition(tangle: Tangle, compat) -> list:
    """
    Splits the support into the fewest straight tangles (pairwise compatible curves).

    Raises:
        SupportTooLargeError: If the support exceeds config.DISORDER_MAX_SUPPORT curves.
    """
    support = tangle.support
    if len(support) > config.DISORDER_MAX_SUPPORT:
        raise SupportTooLargeError(
            f"support of {len(support)} curves exceeds the limit of {config.DISORDER_MAX_SUPPORT}"
        )
    colouring = _minimum_colouring(incompatibility_graph(support, compat))
    weights = tangle.weights
    parts = {}
    for i, curve in enumerate(support):
        parts.setdefault(colouring[i], []).append((curve, weights[curve]))
    return [Tangle(tuple(parts[c])) for c in sorted(parts)]


def disorder(tangle: Tangle, compat) -> int:
    """The least number of straight tangles whose weighted union is the tangle's support."""
    return len(straight_decomposition(tangle, compat))


def one_sign_elimination(tangle: Tangle, B: ExchangeMatrix, depth=None, reference=None) -> list:
    """
    Support curves whose weight a null tangle would force to 0.

    A curve is isolated at (seq, coord) when its image is the only strictly positive one
    there, so all others are nonpositive, or the mirror of this.

    Returns:
        list[tuple]: (curve, (seq, coord)) for each isolated curve, first witness only.
    """
    depth = _resolve_depth(B, depth)
    support = tangle.support
    if not support:
        return []
    vectors = [curve_shear(c, reference or B) for c in support]
    found = {}
    for seq, images in iter_images(B, vectors, depth):
        for j in range(B.n):
            column = [v[j] for v in images]
            positive = [i for i, x in enumerate(column) if x > 0]
            negative = [i for i, x in enumerate(column) if x < 0]
            if len(positive) == 1:
                found.setdefault(positive[0], (seq, j + 1))
            if len(negative) == 1:
                found.setdefault(negative[0], (seq, j + 1))
        if len(found) == len(support):
            break
    return [(support[i], found[i]) for i in sorted(found)]


UNIT_CURVES = (
    (annulus.AnnulusCurve("1", 0), 0, -1),
    (annulus.AnnulusCurve("2", 0), 1, 1),
    (annulus.AnnulusCurve("4", 0), 2, 1),
)


def random_tangle(rng: random.Random, curves, weight_range=(-3, 3), zero_sum=False, size=None) -> Tangle:
    """
    A random nontrivial annulus tangle over the given curves.

    With zero_sum the unit-vector curves lambda1, lambda2 and lambda4 are reweighted so
    the tangle's shear vector in the reference triangulation is 0; it is redrawn if that
    leaves it trivial.
    """
    low, high = weight_range
    curves = [_identity(c) for c in curves]
    while True:
        count = size or rng.randint(1, len(curves))
        chosen = rng.sample(curves, min(count, len(curves)))
        weights = {c: rng.choice([w for w in range(low, high + 1) if w != 0]) for c in chosen}
        if zero_sum:
            total = tangle_shear(None, Tangle(tuple(weights.items())))
            for curve, coord, sign in UNIT_CURVES:
                weights[curve] = weights.get(curve, 0) - sign * total[coord]
        tangle = Tangle(tuple(weights.items()))
        if not tangle.is_trivial():
            return tangle


def refutation_campaign(B: ExchangeMatrix, curves, count: int, depth=None, seed=None, zero_sum=True) -> dict:
    """
    Draws count random tangles and runs the null check on each.

    Returns:
        dict: {"seed", "depth", "all_refuted", "results": [{"tangle", "verdict"}, ...]}.
    """
    seed = config.DEFAULT_SEED if seed is None else seed
    depth = _resolve_depth(B, depth)
    rng = random.Random(seed)
    results = []
    for _ in range(count):
        tangle = random_tangle(rng, curves, zero_sum=zero_sum)
        verdict = null_check_up_to_depth(B, tangle, depth)
        results.append({"tangle": tangle, "verdict": verdict})
    refuted = sum(1 for r in results if r["verdict"].status == REFUTED)
    logging.info(f"Refuted {refuted} of {count} random tangles at depth {depth} (seed {seed}).")
    return {"all_refuted": refuted == count, "depth": depth, "results": results, "seed": seed}


__all__ = [
    "SupportTooLargeError",
    "Tangle",
    "VectorCurve",
    "compatibility_oracle",
    "curve_label",
    "curve_shear",
    "disorder",
    "incompatibility_graph",
    "is_quasi_lamination",
    "null_check_up_to_depth",
    "one_sign_elimination",
    "random_tangle",
    "refutation_campaign",
    "straight_decomposition",
    "tangle_family",
    "tangle_shear",
    "weighted_union",
]
