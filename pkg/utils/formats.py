"""
JSON and CSV input/output for matrices, vectors, families, rays, fans, triangulations,
curves and tangles.

Output is canonical: keys sorted, two-space indentation, rationals as "p/q" strings.
Parsing errors carry the path of the offending field.
"""
import json
from fractions import Fraction

import pandas as pd

from utils.annulus import AnnulusCurve, InvalidAnnulusCurveError
from utils.coherence import WeightedFamily
from utils.exchange_core import ExchangeMatrix, ExtendedExchangeMatrix
from utils.fan_approx import FanTruncation, RationalCone
from utils.surface import BoundaryEnd, Curve, SpiralEnd, Triangle, Triangulation
from utils.tangles import Tangle, VectorCurve


class FormatError(ValueError):
    """Raised when an input file does not match its schema."""

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def format_rational(x):
    """Integers stay integers; other rationals become "p/q" strings."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(vector) -> list:
    return [format_rational(x) for x in vector]


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def loads_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from e
    return loads_json(text)


def _require(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"missing {key!r}", field=where)
    return data[key]


def _as_list(value, where) -> list:
    if not isinstance(value, list):
        raise FormatError("expected a list", field=where)
    return value


def parse_rational(value, where="value") -> Fraction:
    if isinstance(value, bool):
        raise FormatError("expected a rational, got a boolean", field=where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"cannot read {value!r} as a rational", field=where) from e
    raise FormatError(f"expected an integer or a \"p/q\" string, got {value!r}", field=where)


def parse_int(value, where="value") -> int:
    x = parse_rational(value, where)
    if x.denominator != 1:
        raise FormatError(f"expected an integer, got {value!r}", field=where)
    return int(x)


def parse_vector(value, where="vector") -> tuple:
    """A vector from a JSON list or a comma-separated string such as "0,1,-1"."""
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return tuple(parse_rational(p, f"{where}[{i}]") for i, p in enumerate(parts))
    return tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(_as_list(value, where)))


def parse_sequence(value, where="seq") -> tuple:
    if isinstance(value, str):
        return tuple(parse_int(p, f"{where}[{i}]") for i, p in enumerate(value.split(",")) if p.strip())
    return tuple(parse_int(x, f"{where}[{i}]") for i, x in enumerate(_as_list(value, where)))


def parse_matrix(data) -> ExchangeMatrix:
    """{"n": int, "rows": [[int, ...], ...]}; a bare list of rows is accepted too."""
    if isinstance(data, dict) and "coeff_rows" in data:
        return parse_extended_matrix(data).base
    rows = data if isinstance(data, list) else _require(data, "rows", "matrix")
    rows = [
        [parse_int(x, f"rows[{i}][{j}]") for j, x in enumerate(_as_list(row, f"rows[{i}]"))]
        for i, row in enumerate(_as_list(rows, "rows"))
    ]
    if isinstance(data, dict) and "n" in data and parse_int(data["n"], "n") != len(rows):
        raise FormatError(f"n says {data['n']} but {len(rows)} rows are given", field="n")
    return ExchangeMatrix.from_rows(rows)


def parse_extended_matrix(data) -> ExtendedExchangeMatrix:
    base = parse_matrix({k: v for k, v in data.items() if k != "coeff_rows"})
    rows = []
    for i, entry in enumerate(_as_list(data["coeff_rows"], "coeff_rows")):
        row_id = _require(entry, "id", f"coeff_rows[{i}]")
        rows.append((str(row_id), parse_vector(_require(entry, "v", f"coeff_rows[{i}]"), f"coeff_rows[{i}].v")))
    return ExtendedExchangeMatrix.build(base, rows, integral=bool(data.get("integral", False)))


def matrix_to_dict(B) -> dict:
    if isinstance(B, ExtendedExchangeMatrix):
        out = matrix_to_dict(B.base)
        out["coeff_rows"] = [
            {"id": row_id, "v": [str(format_rational(x)) for x in v]} for row_id, v in B.coefficient_rows
        ]
        return out
    return {"n": B.n, "rows": [list(r) for r in B.rows]}


def parse_family(data) -> WeightedFamily:
    """{"items": [{"v": [...], "c": "p/q"}, ...]}"""
    pairs = []
    for i, item in enumerate(_as_list(_require(data, "items", "family"), "items")):
        where = f"items[{i}]"
        pairs.append((
            parse_vector(_require(item, "v", where), f"{where}.v"),
            parse_rational(_require(item, "c", where), f"{where}.c"),
        ))
    return WeightedFamily.build(pairs)


def parse_rays(data) -> list:
    """{"rays": [{"id": str, "v": [int, ...]}, ...]} as (id, vector) pairs."""
    rays = []
    for i, item in enumerate(_as_list(_require(data, "rays", "rays"), "rays")):
        where = f"rays[{i}]"
        vector = tuple(parse_int(x, f"{where}.v[{j}]") for j, x in enumerate(_as_list(_require(item, "v", where), f"{where}.v")))
        rays.append((str(_require(item, "id", where)), vector))
    return rays


def rays_to_dict(rays) -> dict:
    return {"rays": [{"id": ray_id, "v": list(v)} for ray_id, v in rays]}


def parse_fan(data) -> FanTruncation:
    cones = []
    for i, cone in enumerate(_as_list(_require(data, "cones", "fan"), "cones")):
        gens = _as_list(_require(cone, "gens", f"cones[{i}]"), f"cones[{i}].gens")
        cones.append(RationalCone(tuple(
            tuple(parse_int(x, f"cones[{i}].gens[{j}][{k}]") for k, x in enumerate(g)) for j, g in enumerate(gens)
        )))
    labels = {}
    for key, label in (data.get("labels") or {}).items():
        labels[tuple(parse_int(x, "labels") for x in key.split(","))] = label
    return FanTruncation(cones, data.get("parameter"), labels)


def _parse_edge(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"an edge is an arc number or a boundary segment name, got {value!r}", field=where)
    return value


def parse_triangulation(data) -> Triangulation:
    """
    {"arcs": n, "triangles": [[e, e, e], ...], "vertices": [[v, v, v], ...],
    "boundary": [...], "punctures": [...], "tags": {"notched": [...]}}
    """
    triangles = _as_list(_require(data, "triangles", "triangulation"), "triangles")
    vertices = _as_list(_require(data, "vertices", "triangulation"), "vertices")
    if len(vertices) != len(triangles):
        raise FormatError("one vertex triple is needed per triangle", field="vertices")
    built = []
    for i, (edges, verts) in enumerate(zip(triangles, vertices)):
        edges = [_parse_edge(e, f"triangles[{i}][{j}]") for j, e in enumerate(_as_list(edges, f"triangles[{i}]"))]
        verts = [str(v) for v in _as_list(verts, f"vertices[{i}]")]
        if len(edges) != 3 or len(verts) != 3:
            raise FormatError("triangles have three edges and three vertices", field=f"triangles[{i}]")
        built.append(Triangle(tuple(edges), tuple(verts)))
    tags = data.get("tags") or {}
    tri = Triangulation(
        tuple(built),
        frozenset(str(p) for p in data.get("punctures", [])),
        frozenset(str(p) for p in tags.get("notched", [])),
    )
    if "arcs" in data and parse_int(data["arcs"], "arcs") != tri.n:
        raise FormatError(f"arcs says {data['arcs']} but the triangles use {tri.n}", field="arcs")
    if "boundary" in data and sorted(str(s) for s in data["boundary"]) != [str(s) for s in tri.boundary_segments]:
        raise FormatError("boundary segments do not match the triangles", field="boundary")
    return tri


def _parse_end(value, where):
    if isinstance(value, dict) and "boundary" in value:
        return BoundaryEnd(str(value["boundary"]))
    if isinstance(value, dict) and "spiral" in value:
        return SpiralEnd(str(value["spiral"]), str(value.get("direction", "cw")))
    raise FormatError("an end is {\"boundary\": segment} or {\"spiral\": puncture, \"direction\": cw|ccw}", field=where)


def parse_curve(data) -> Curve:
    """{"ends": [...], "crossings": [arc or [arc, position], ...], "closed": bool}"""
    crossings = []
    for i, c in enumerate(_as_list(data.get("crossings", []), "crossings")):
        if isinstance(c, list):
            if len(c) != 2:
                raise FormatError("a positional crossing is [arc, position]", field=f"crossings[{i}]")
            crossings.append((parse_int(c[0], f"crossings[{i}][0]"), parse_int(c[1], f"crossings[{i}][1]")))
        else:
            crossings.append(parse_int(c, f"crossings[{i}]"))
    ends = tuple(_parse_end(e, f"ends[{i}]") for i, e in enumerate(_as_list(data.get("ends", []), "ends")))
    return Curve(tuple(crossings), ends, bool(data.get("closed", False)))


def parse_annulus_curve(data, where="curve") -> AnnulusCurve:
    family = str(_require(data, "family", where))
    try:
        return AnnulusCurve(family, parse_int(data.get("n", 0), f"{where}.n"))
    except InvalidAnnulusCurveError as e:
        raise FormatError(str(e), field=where) from e


def curve_to_dict(curve) -> dict:
    if isinstance(curve, AnnulusCurve):
        return {"family": curve.family, "n": curve.n}
    if isinstance(curve, VectorCurve):
        out = {"vector": list(curve.vector)}
        if curve.name:
            out["name"] = curve.name
        return out
    return curve.to_dict()


def parse_tangle(data) -> Tangle:
    """{"items": [{"curve": {"family": "+", "n": 0}, "w": 1}, ...]}; a curve may also be {"vector": [...]}."""
    items = []
    for i, item in enumerate(_as_list(_require(data, "items", "tangle"), "items")):
        where = f"items[{i}]"
        entry = _require(item, "curve", where)
        if isinstance(entry, dict) and "vector" in entry:
            curve = VectorCurve(tuple(parse_int(x, f"{where}.curve.vector") for x in entry["vector"]), entry.get("name"))
        else:
            curve = parse_annulus_curve(entry, f"{where}.curve")
        items.append((curve, parse_int(_require(item, "w", where), f"{where}.w")))
    return Tangle(tuple(items))


def tangle_to_dict(tangle: Tangle) -> dict:
    return {"items": [{"curve": curve_to_dict(c), "w": w} for c, w in tangle.items]}


def read_vector_csv(path: str) -> list:
    """One vector per line, comma-separated, no header."""
    try:
        frame = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"cannot read vectors from {path}: {e}") from e
    return [
        tuple(parse_rational(x, f"line {i + 1}[{j}]") for j, x in enumerate(row))
        for i, row in enumerate(frame.itertuples(index=False, name=None))
    ]


def vectors_to_csv(vectors) -> str:
    frame = pd.DataFrame([[str(format_rational(x)) for x in v] for v in vectors])
    return frame.to_csv(header=False, index=False, lineterminator="\n")


__all__ = [
    "FormatError",
    "curve_to_dict",
    "dump_json",
    "format_rational",
    "format_vector",
    "load_json",
    "loads_json",
    "matrix_to_dict",
    "parse_annulus_curve",
    "parse_curve",
    "parse_extended_matrix",
    "parse_fan",
    "parse_family",
    "parse_int",
    "parse_matrix",
    "parse_rational",
    "parse_rays",
    "parse_sequence",
    "parse_tangle",
    "parse_triangulation",
    "parse_vector",
    "rays_to_dict",
    "read_vector_csv",
    "tangle_to_dict",
    "vectors_to_csv",
]
