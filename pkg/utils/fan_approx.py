"""Rational polyhedral cones, truncated quasi-lamination fans and their projection to the plane."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from utils import exact


class ContractError(ValueError):
    """Raised when fan inputs break their contract (asymmetric oracle, bad rays)."""
    pass


class ProjectionError(ValueError):
    """Raised for vectors that cannot be projected (zero, or the antipode of the centre)."""
    pass


@dataclass(frozen=True)
class RationalCone:
    """Nonnegative span of primitive, pairwise non-parallel integer generators."""
    generators: tuple

    @classmethod
    def from_generators(cls, generators) -> "RationalCone":
        """Makes every generator primitive and sorts them lexicographically."""
        gens = set()
        for g in generators:
            if all(Fraction(x) == 0 for x in g):
                raise ContractError("cone generators must be nonzero")
            gens.add(exact.primitive(g))
        return cls(tuple(sorted(gens)))

    @property
    def dim(self) -> int:
        return exact.rank(self.generators) if self.generators else 0

    def is_simplicial(self) -> bool:
        return self.dim == len(self.generators)

    def faces(self) -> list:
        """Cones spanned by subsets of the generators (all faces, for simplicial cones)."""
        return [
            RationalCone(subset)
            for size in range(len(self.generators) + 1)
            for subset in itertools.combinations(self.generators, size)
        ]

    def to_dict(self) -> dict:
        return {"gens": [list(g) for g in self.generators]}


@dataclass
class FanTruncation:
    """Finite list of cones, closed under faces, built from rays with labels."""
    cones: list = field(default_factory=list)
    parameter: int = None
    labels: dict = field(default_factory=dict)

    def maximal_cones(self) -> list:
        gens = [set(c.generators) for c in self.cones]
        return [c for c, s in zip(self.cones, gens) if not any(s < t for t in gens)]

    def cones_containing_face(self, face_generators, dim=None) -> list:
        face = {exact.primitive(g) for g in face_generators}
        return [
            c for c in self.cones
            if face <= set(c.generators) and (dim is None or len(c.generators) == dim)
        ]

    def to_dict(self) -> dict:
        return {
            "cones": [c.to_dict() for c in self.cones],
            "labels": {",".join(str(x) for x in g): label for g, label in sorted(self.labels.items())},
            "parameter": self.parameter,
        }


def _canonical_order(cones):
    return sorted(set(cones), key=lambda c: (len(c.generators), c.generators))


def build_quasilam_fan(rays, compat, maxdim: int, parameter=None) -> FanTruncation:
    """
    Builds the cones C_L over every clique L of the compatibility graph of rays.

    Args:
        rays (list): (curve id, vector) pairs. Vectors must be primitive integer vectors.
        compat: Callable taking two curve ids and returning whether they are compatible.
        maxdim (int): Largest clique size (the rank n).
        parameter: Truncation parameter recorded on the result.

    Returns:
        FanTruncation: Cones in canonical order, the zero cone first.

    Raises:
        ContractError: If a ray is not primitive or the oracle is not symmetric.
    """
    graph = nx.Graph()
    labels = {}
    for ray_id, vector in rays:
        prim = exact.primitive(vector)
        if any(Fraction(x) != y for x, y in zip(vector, prim)):
            raise ContractError(f"ray {ray_id!r} is not a primitive integer vector: {vector}")
        graph.add_node(ray_id, vector=prim)
        labels[prim] = str(ray_id)
    ids = [ray_id for ray_id, _ in rays]
    for a, b in itertools.combinations(ids, 2):
        forward, backward = compat(a, b), compat(b, a)
        if forward != backward:
            raise ContractError(f"compatibility oracle is not symmetric on {a!r}, {b!r}")
        if forward:
            graph.add_edge(a, b)
    cones = [RationalCone(())]
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > maxdim:
            break
        cones.append(RationalCone.from_generators([graph.nodes[r]["vector"] for r in clique]))
    fan = FanTruncation(_canonical_order(cones), parameter, labels)
    logging.info(f"Built a fan with {len(fan.cones)} cones from {len(ids)} rays.")
    return fan


def _annihilator(vectors, n):
    """Rows spanning the linear forms vanishing on span(vectors)."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return exact.nullspace(vectors, n)


def _has_nonnegative_kernel(columns) -> bool:
    """Whether some nonzero x >= 0 has sum x_i columns[i] = 0, tested through circuits."""
    m = len(columns)
    if m == 0:
        return False
    length = len(columns[0])
    for size in range(1, m + 1):
        for subset in itertools.combinations(range(m), size):
            rows = [[columns[i][r] for i in subset] for r in range(length)]
            kernel = exact.nullspace(rows, size)
            if len(kernel) != 1:
                continue
            x = kernel[0]
            if all(v > 0 for v in x) or all(v < 0 for v in x):
                return True
    return False


def _intersection_is_common_face(c1: RationalCone, c2: RationalCone, n: int) -> bool:
    shared = set(c1.generators) & set(c2.generators)
    only1 = [g for g in c1.generators if g not in shared]
    only2 = [g for g in c2.generators if g not in shared]
    if not only1 or not only2:
        return True
    forms = _annihilator(sorted(shared), n)
    project = lambda g: tuple(sum((f[i] * g[i] for i in range(n)), Fraction(0)) for f in forms)
    columns = [project(g) for g in only1] + [tuple(-x for x in project(g)) for g in only2]
    return not _has_nonnegative_kernel(columns)


def check_fan(fan: FanTruncation) -> dict:
    """
    Verifies that a fan truncation is a simplicial fan.

    Checks simpliciality of every cone, closure under faces and that each pairwise
    intersection is the cone over the shared generators. For simplicial cones the
    intersection is that face exactly when no nonzero nonnegative combination of the
    unshared generators of one cone meets the other modulo the shared span.

    Returns:
        dict: {"ok": bool, "reason": str or None, "pair": list of two cones or None}.
    """
    present = set(fan.cones)
    dims = {len(g) for c in fan.cones for g in c.generators}
    n = dims.pop() if dims else 0
    for cone in fan.cones:
        if not cone.is_simplicial():
            return {"ok": False, "pair": [cone.to_dict()], "reason": "not simplicial"}
        for face in cone.faces():
            if face not in present:
                return {"ok": False, "pair": [cone.to_dict(), face.to_dict()], "reason": "missing face"}
    maximal = fan.maximal_cones()
    for c1, c2 in itertools.combinations(maximal, 2):
        if not _intersection_is_common_face(c1, c2, n):
            logging.info(f"Cones {c1.generators} and {c2.generators} overlap outside a common face.")
            return {"ok": False, "pair": [c1.to_dict(), c2.to_dict()], "reason": "bad intersection"}
    return {"ok": True, "pair": None, "reason": None}


def cone_contains(cone: RationalCone, a) -> bool:
    """Exact test that a is a nonnegative rational combination of the cone's generators."""
    a = tuple(Fraction(x) for x in a)
    if all(x == 0 for x in a):
        return True
    for size in range(1, len(cone.generators) + 1):
        for subset in itertools.combinations(cone.generators, size):
            if exact.rank(subset) < size:
                continue
            x = exact.solve(list(subset), a)
            if x is not None and all(c >= 0 for c in x):
                return True
    return False


# Orthonormal frame with (1,1,1)/sqrt(3) as the last axis.
_FRAME = np.array([
    np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0),
    np.array([1.0, 1.0, -2.0]) / np.sqrt(6.0),
    np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0),
])


def stereographic_project(a) -> tuple:
    """
    Projects a nonzero rank-3 vector to the plane.

    The vector is normalized, rotated so (1,1,1)/sqrt(3) becomes the north pole, and
    projected from the south pole onto the tangent plane at the north pole.

    Raises:
        ProjectionError: For the zero vector, the direction of (-1,-1,-1), or rank != 3.
    """
    if len(a) != 3:
        raise ProjectionError(f"stereographic projection needs a rank 3 vector, got {len(a)}")
    v = np.array([float(x) for x in a])
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ProjectionError("cannot project the zero vector")
    x, y, z = _FRAME @ (v / norm)
    if np.isclose(1.0 + z, 0.0):
        raise ProjectionError(f"{list(a)} points at the projection pole")
    return (float(2.0 * x / (1.0 + z)), float(2.0 * y / (1.0 + z)))


__all__ = [
    "ContractError",
    "FanTruncation",
    "ProjectionError",
    "RationalCone",
    "build_quasilam_fan",
    "check_fan",
    "cone_contains",
    "stereographic_project",
]
