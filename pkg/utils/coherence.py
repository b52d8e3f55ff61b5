"""
B-classes, B-cone membership, separating sequences, B-coherent linear relations and
positive decompositions, all checked along every mutation sequence up to a depth.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

import config
from utils import exact
from utils.exchange_core import ExchangeMatrix, ShapeError, _mutate_cached
from utils.mutation_maps import _step, eta_images, min_with_zero

HOLDS = "holds_to_depth"
REFUTED = "refuted"


@dataclass(frozen=True)
class DepthVerdict:
    """
    Outcome of a bounded-depth check.

    witness is a (sequence, coordinate) pair with 1-based entries. A refuted
    independence check carries the surviving relation instead of a witness.
    """
    status: str
    depth: int
    check: str
    witness: tuple = None
    relation: tuple = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_dict(self) -> dict:
        out = {"check": self.check, "depth": self.depth, "status": self.status}
        if self.witness is not None:
            seq, coord = self.witness
            out["witness"] = {"coord": coord, "seq": list(seq)}
        if self.relation is not None:
            out["relation"] = [str(x) for x in self.relation]
        return out


@dataclass(frozen=True)
class SeparationCertificate:
    """A sequence and coordinate at which two vectors get strictly opposite signs."""
    seq: tuple
    coord: int
    signs: tuple

    def to_dict(self) -> dict:
        return {"coord": self.coord, "seq": list(self.seq), "signs": list(self.signs)}


@dataclass(frozen=True)
class WeightedFamily:
    """Distinct vectors of one dimension with rational coefficients."""
    items: tuple = field(default_factory=tuple)

    def __post_init__(self):
        vectors = [tuple(v) for v, _ in self.items]
        if len(set(vectors)) != len(vectors):
            raise ShapeError("weighted family vectors must be pairwise distinct")
        if len({len(v) for v in vectors}) > 1:
            raise ShapeError("weighted family vectors must share one dimension")

    @classmethod
    def build(cls, pairs) -> "WeightedFamily":
        return cls(tuple((tuple(Fraction(x) for x in v), Fraction(c)) for v, c in pairs))

    @property
    def vectors(self) -> list:
        return [v for v, _ in self.items]

    @property
    def coefficients(self) -> list:
        return [c for _, c in self.items]


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_vector(a) -> tuple:
    """Componentwise sign in {-1, 0, 1}."""
    return tuple(_sgn(x) for x in a)


def _resolve_depth(B: ExchangeMatrix, depth):
    depth = config.default_depth(B.n) if depth is None else depth
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    return depth


@functools.lru_cache(maxsize=16)
def search_tree(B: ExchangeMatrix, depth: int) -> tuple:
    """
    All mutation sequences of length <= depth without immediate repeats.

    Nodes come in breadth-first order (by length, then lexicographically). Each node is
    (seq, parent index, k, matrix at the parent). The root has parent -1 and k None.
    """
    nodes = [((), -1, None, B)]
    matrices = [B]
    frontier = [0]
    for _ in range(depth):
        next_frontier = []
        for idx in frontier:
            seq = nodes[idx][0]
            last = seq[-1] if seq else None
            for k in range(1, B.n + 1):
                if k == last:
                    continue
                nodes.append((seq + (k,), idx, k, matrices[idx]))
                matrices.append(_mutate_cached(matrices[idx], k))
                next_frontier.append(len(nodes) - 1)
        frontier = next_frontier
    logging.debug(f"Search tree for rank {B.n} at depth {depth} has {len(nodes)} nodes.")
    return tuple(nodes)


def _matrix_has_zero_row(B: ExchangeMatrix) -> bool:
    return any(all(x == 0 for x in row) for row in B.rows)


def iter_images(B: ExchangeMatrix, vectors, depth):
    """
    Yields (seq, images) for every node of the search tree, in breadth-first order.

    Images are computed from the parent's images, one mutation step each.
    """
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != B.n:
            raise ShapeError(f"vector of length {len(v)} used with a rank {B.n} matrix")
    nodes = search_tree(B, depth)
    images = [None] * len(nodes)
    images[0] = vectors
    yield (), vectors
    for idx in range(1, len(nodes)):
        seq, parent, k, matrix = nodes[idx]
        images[idx] = [_step(matrix.rows, k - 1, v) for v in images[parent]]
        yield seq, images[idx]


def _incoherent_coord(images):
    for j in range(len(images[0])):
        signs = {_sgn(v[j]) for v in images}
        if 1 in signs and -1 in signs:
            return j + 1
    return None


def common_cone_up_to_depth(B: ExchangeMatrix, vectors, depth=None) -> DepthVerdict:
    """
    Checks that the images of vectors stay sign-coherent along every sequence up to depth.

    Returns:
        DepthVerdict: refuted with the first (seq, coord) where two images have strictly
        opposite signs, otherwise holds_to_depth.
    """
    depth = _resolve_depth(B, depth)
    vectors = list(vectors)
    if len(vectors) < 2:
        return DepthVerdict(HOLDS, depth, "common_cone")
    for seq, images in iter_images(B, vectors, depth):
        coord = _incoherent_coord(images)
        if coord is not None:
            logging.info(f"Sign coherence fails along {list(seq)} at coordinate {coord}.")
            return DepthVerdict(REFUTED, depth, "common_cone", (seq, coord))
    return DepthVerdict(HOLDS, depth, "common_cone")


def find_separating_sequence(B: ExchangeMatrix, a, b, depth=None):
    """
    Breadth-first search for a sequence giving a and b strictly opposite signs.

    The empty sequence is tried first. Ties between sequences of one length go to the
    lexicographically least; ties within a sequence go to the smallest coordinate.

    Returns:
        SeparationCertificate or None: None when nothing up to depth separates them.
    """
    depth = _resolve_depth(B, depth)
    for seq, (x, y) in iter_images(B, [a, b], depth):
        for j in range(B.n):
            if _sgn(x[j]) * _sgn(y[j]) == -1:
                return SeparationCertificate(seq, j + 1, (_sgn(x[j]), _sgn(y[j])))
    return None


def b_equivalent_up_to_depth(B: ExchangeMatrix, a, b, depth=None) -> DepthVerdict:
    """Checks that a and b share sign vectors along every sequence up to depth."""
    depth = _resolve_depth(B, depth)
    for seq, (x, y) in iter_images(B, [a, b], depth):
        for j in range(B.n):
            if _sgn(x[j]) != _sgn(y[j]):
                return DepthVerdict(REFUTED, depth, "equivalence", (seq, j + 1))
    return DepthVerdict(HOLDS, depth, "equivalence")


def _weighted_sum(coefficients, images, n):
    total = [Fraction(0)] * n
    for c, v in zip(coefficients, images):
        if c == 0:
            continue
        for j in range(n):
            total[j] += c * v[j]
    return total


def _first_nonzero(values):
    for j, x in enumerate(values):
        if x != 0:
            return j + 1
    return None


def is_b_coherent_up_to_depth(B: ExchangeMatrix, fam: WeightedFamily, depth=None) -> DepthVerdict:
    """
    Checks that sum c_i eta(v_i) = 0 along every sequence up to depth.

    The truncated relation sum c_i min(eta(v_i), 0) = 0 is also checked, unless B has no
    zero row, in which case it follows from the linear one.
    """
    depth = _resolve_depth(B, depth)
    if not fam.items:
        return DepthVerdict(HOLDS, depth, "coherence")
    piecewise = _matrix_has_zero_row(B)
    coefficients = fam.coefficients
    for seq, images in iter_images(B, fam.vectors, depth):
        coord = _first_nonzero(_weighted_sum(coefficients, images, B.n))
        if coord is None and piecewise:
            truncated = [min_with_zero(v) for v in images]
            coord = _first_nonzero(_weighted_sum(coefficients, truncated, B.n))
        if coord is not None:
            logging.info(f"Relation fails along {list(seq)} at coordinate {coord}.")
            return DepthVerdict(REFUTED, depth, "coherence", (seq, coord))
    return DepthVerdict(HOLDS, depth, "coherence")


def independent_up_to_depth(B: ExchangeMatrix, vectors, depth=None, ring="Q") -> DepthVerdict:
    """
    Checks R-independence: no nonzero coefficient vector is B-coherent up to depth.

    The space of candidate relations starts as the nullspace of the vectors and is cut
    down by the images along each sequence. The check stops as soon as it is trivial.

    Args:
        ring (str): "Q" or "Z". A surviving rational relation scales to an integral one,
            so both rings give the same status; in "Z" mode the relation is integral.

    Returns:
        DepthVerdict: holds_to_depth with the sequence that killed the last relation, or
        refuted carrying a surviving relation.
    """
    depth = _resolve_depth(B, depth)
    if ring not in ("Q", "Z"):
        raise ValueError(f"ring must be 'Q' or 'Z', got {ring!r}")
    vectors = [tuple(v) for v in vectors]
    m = len(vectors)
    if m == 0:
        return DepthVerdict(HOLDS, depth, "independence")
    piecewise = _matrix_has_zero_row(B)
    basis = [tuple(Fraction(int(i == j)) for i in range(m)) for j in range(m)]
    for seq, images in iter_images(B, vectors, depth):
        rows = _constraint_rows(images, basis, B.n)
        if piecewise:
            rows += _constraint_rows([min_with_zero(v) for v in images], basis, B.n)
        kernel = exact.nullspace(rows, len(basis))
        basis = [
            tuple(sum((y[s] * basis[s][i] for s in range(len(basis))), Fraction(0)) for i in range(m))
            for y in kernel
        ]
        if not basis:
            logging.debug(f"Relations die along {list(seq)}.")
            return DepthVerdict(HOLDS, depth, "independence", (seq, None))
    relation = basis[0]
    if ring == "Z":
        relation = tuple(Fraction(x) for x in exact.integer_scaled(relation))
    return DepthVerdict(REFUTED, depth, "independence", relation=relation)


def _constraint_rows(images, basis, n):
    # row j: coordinate j of sum_i (K y)_i images_i as a linear form in y
    return [
        [sum((vec[i] * images[i][j] for i in range(len(images))), Fraction(0)) for vec in basis]
        for j in range(n)
    ]


def replay_certificate(B: ExchangeMatrix, a, b, cert: SeparationCertificate) -> bool:
    """Re-evaluates eta along the certificate and confirms strictly opposite signs."""
    x, y = eta_images(B, list(cert.seq), [a, b])
    j = cert.coord - 1
    return _sgn(x[j]) * _sgn(y[j]) == -1 and (_sgn(x[j]), _sgn(y[j])) == tuple(cert.signs)


def replay_witness(B: ExchangeMatrix, vectors, verdict: DepthVerdict, coefficients=None) -> bool:
    """
    Confirms that a refuted verdict's witness reproduces the violation exactly.

    For coherence checks pass the family's coefficients; for independence checks the
    relation is re-checked at depth 0 only (its survival is what refutes).
    """
    if verdict.holds:
        return False
    vectors = [tuple(v) for v in vectors]
    if verdict.check == "independence":
        total = _weighted_sum(verdict.relation, vectors, B.n)
        return any(x != 0 for x in verdict.relation) and all(x == 0 for x in total)
    seq, coord = verdict.witness
    images = eta_images(B, list(seq), vectors)
    j = coord - 1
    if verdict.check == "common_cone":
        signs = {_sgn(v[j]) for v in images}
        return 1 in signs and -1 in signs
    if verdict.check == "equivalence":
        return _sgn(images[0][j]) != _sgn(images[1][j])
    if verdict.check in ("coherence", "null_tangle"):
        linear = _weighted_sum(coefficients, images, B.n)
        if linear[j] != 0:
            return True
        truncated = _weighted_sum(coefficients, [min_with_zero(v) for v in images], B.n)
        return truncated[j] != 0
    raise ValueError(f"unknown check {verdict.check!r}")


class SignTable:
    """
    Sign vectors of a fixed list of vectors at every node of the search tree.

    signs has shape (len(vectors), nodes, n). Pairwise compatibility is read off with
    numpy instead of repeating the mutation walk for every pair.
    """

    def __init__(self, B: ExchangeMatrix, vectors, depth=None):
        self.B = B
        self.depth = _resolve_depth(B, depth)
        self.nodes = search_tree(B, self.depth)
        self.vectors = [tuple(v) for v in vectors]
        self.signs = np.stack([self.profile(v) for v in self.vectors]) if self.vectors else \
            np.zeros((0, len(self.nodes), B.n), dtype=np.int8)
        logging.debug(f"Sign table: {len(self.vectors)} vectors x {len(self.nodes)} sequences.")

    def profile(self, a) -> np.ndarray:
        """Sign vectors of eta(B, seq, a) for every node, shape (nodes, n)."""
        a = tuple(a)
        if len(a) != self.B.n:
            raise ShapeError(f"vector of length {len(a)} used with a rank {self.B.n} matrix")
        images = [a]
        for seq, parent, k, matrix in self.nodes[1:]:
            images.append(_step(matrix.rows, k - 1, images[parent]))
        return np.array([[_sgn(x) for x in v] for v in images], dtype=np.int8)

    def opposed_mask(self, profile: np.ndarray) -> np.ndarray:
        """Boolean array: which table vectors are separated from the profiled vector."""
        if not self.vectors:
            return np.zeros(0, dtype=bool)
        return ((self.signs * profile[np.newaxis, :, :]) < 0).any(axis=(1, 2))

    def separation(self, i: int, j: int):
        """First (seq, coord) separating vectors i and j, or None."""
        hits = np.argwhere((self.signs[i] * self.signs[j]) < 0)
        if len(hits) == 0:
            return None
        node, coord = hits[0]
        return self.nodes[int(node)][0], int(coord) + 1

    def compatibility_graph(self) -> nx.Graph:
        """Graph on vector indices with an edge for every pair no sequence separates."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vectors)))
        for i in range(len(self.vectors)):
            opposed = self.opposed_mask(self.signs[i])
            for j in range(i + 1, len(self.vectors)):
                if not opposed[j]:
                    graph.add_edge(i, j)
        logging.info(
            f"Compatibility graph: {graph.number_of_nodes()} vectors, {graph.number_of_edges()} compatible pairs."
        )
        return graph


class ConeDecomposer:
    """Nonnegative decompositions of targets over a fixed candidate list."""

    def __init__(self, B: ExchangeMatrix, candidates, depth=None, table: SignTable = None):
        self.B = B
        self.table = table or SignTable(B, candidates, depth)
        self.candidates = self.table.vectors
        self.graph = self.table.compatibility_graph()

    def all_decompositions(self, target, integral=None) -> list:
        """
        Every distinct nonnegative decomposition of target over a compatible candidate set.

        Zero coefficients are dropped before comparing supports.

        Returns:
            list[tuple]: Each entry is a tuple of (candidate index, Fraction coefficient).
        """
        target = tuple(Fraction(x) for x in target)
        if integral is None:
            integral = all(x.denominator == 1 for x in target)
        if all(x == 0 for x in target):
            return [()]
        opposed = self.table.opposed_mask(self.table.profile(target))
        usable = [i for i in range(len(self.candidates)) if not opposed[i]]
        found = {}
        for clique in nx.enumerate_all_cliques(self.graph.subgraph(usable)):
            if len(clique) > self.B.n:
                break
            clique = sorted(clique)
            columns = [self.candidates[i] for i in clique]
            if exact.rank(columns) < len(columns):
                continue
            x = exact.solve(columns, target)
            if x is None or any(c < 0 for c in x):
                continue
            if integral and any(c.denominator != 1 for c in x):
                continue
            combo = tuple((i, c) for i, c in zip(clique, x) if c != 0)
            found.setdefault(tuple(i for i, _ in combo), combo)
        return [found[key] for key in sorted(found, key=lambda s: (len(s), s))]

    def decompose(self, target, integral=None):
        """The smallest-support decomposition, or None if there is none."""
        options = self.all_decompositions(target, integral)
        return options[0] if options else None


def decompose_in_cone(B: ExchangeMatrix, target, candidates, depth=None, integral=None):
    """
    Writes target as a nonnegative combination of pairwise compatible candidates.

    Args:
        integral (bool): Demand integer coefficients. Defaults to True for integral targets.

    Returns:
        list[tuple] or None: (candidate index, coefficient) pairs, 0-based indices into
        candidates, or None when no decomposition exists.
    """
    combo = ConeDecomposer(B, candidates, depth).decompose(target, integral)
    return None if combo is None else list(combo)


__all__ = [
    "ConeDecomposer",
    "DepthVerdict",
    "SeparationCertificate",
    "SignTable",
    "WeightedFamily",
    "b_equivalent_up_to_depth",
    "common_cone_up_to_depth",
    "decompose_in_cone",
    "find_separating_sequence",
    "independent_up_to_depth",
    "is_b_coherent_up_to_depth",
    "iter_images",
    "replay_certificate",
    "replay_witness",
    "search_tree",
    "sign_vector",
]
