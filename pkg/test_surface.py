import os

import pytest

from utils import annulus
from utils.annulus import ANNULUS_MATRIX, NAMED_VECTORS, AnnulusCurve, annulus_allowable_curves
from utils.exchange_core import mutate_matrix
from utils.formats import load_json, parse_curve, parse_triangulation
from utils.mutation_maps import eta_step
from utils.surface import (
    CCW,
    CW,
    NOTCHED,
    PLAIN,
    BoundaryEnd,
    Curve,
    InvalidSurfaceError,
    InvalidTriangulationError,
    MalformedCurveError,
    MarkedSurface,
    SpiralEnd,
    Triangulation,
    UnflippableArcError,
    UnsupportedSurfaceError,
    elementary_lamination_check,
    flip,
    shear_coordinates,
    signed_adjacency,
    transport_curve,
)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def load_triangulation(name):
    return parse_triangulation(load_json(os.path.join(DATA_DIR, name)))


@pytest.fixture
def annulus_T():
    return annulus.annulus_triangulation()


@pytest.fixture
def digon():
    return load_triangulation("digon_triangulation.json")


@pytest.fixture
def hexagon():
    return load_triangulation("hexagon_triangulation.json")


def test_marked_surface_rank():
    assert MarkedSurface(0, (1, 2), 0).rank == 3
    assert MarkedSurface(0, (6,), 0).rank == 3
    assert MarkedSurface(0, (2,), 1).rank == 2
    assert MarkedSurface(1, (), 1).rank == 3
    assert MarkedSurface(0, (), 4).rank == 6


@pytest.mark.parametrize("genus,boundary,punctures", [
    (0, (3,), 0),
    (0, (2,), 0),
    (0, (1,), 1),
    (0, (), 3),
    (1, (), 0),
    (0, (0, 2), 0),
])
def test_excluded_surfaces(genus, boundary, punctures):
    with pytest.raises(InvalidSurfaceError):
        MarkedSurface(genus, boundary, punctures)


def test_annulus_matrix(annulus_T):
    assert signed_adjacency(annulus_T) == ANNULUS_MATRIX


def test_hexagon_matrix(hexagon):
    assert signed_adjacency(hexagon).to_lists() == [[0, -1, 0], [1, 0, -1], [0, 1, 0]]


def test_digon_matrix_is_zero(digon):
    assert digon.self_folded() == [(1, 2, "p")]
    assert signed_adjacency(digon).to_lists() == [[0, 0], [0, 0]]


def test_invalid_triangulations():
    with pytest.raises(InvalidTriangulationError):
        Triangulation([((1, "a", "b"), ("x", "y", "z"))])
    with pytest.raises(InvalidTriangulationError):
        # the two sides of arc 1 run the same way
        Triangulation([((1, "a", "b"), ("x", "y", "z")), ((1, "c", "d"), ("x", "y", "w"))])
    with pytest.raises(InvalidTriangulationError):
        Triangulation([((1, "a", "b"), ("x", "y", "z")), ((1, "c", "d"), ("y", "x", "w"))], notched={"x"})
    with pytest.raises(InvalidTriangulationError):
        Triangulation(annulus.annulus_triangulation().triangles, surface=MarkedSurface(0, (6,), 1))


@pytest.mark.parametrize("arc", [1, 2, 3])
def test_flip_matches_mutation(annulus_T, hexagon, arc):
    for T in (annulus_T, hexagon):
        assert signed_adjacency(flip(T, arc)) == mutate_matrix(signed_adjacency(T), arc)


@pytest.mark.parametrize("arc", [1, 2, 3])
def test_flip_twice_returns(annulus_T, hexagon, arc):
    assert flip(flip(annulus_T, arc), arc) == annulus_T
    assert flip(flip(hexagon, arc), arc) == hexagon


def test_flip_sequence_matches_mutation(annulus_T):
    T, B = annulus_T, ANNULUS_MATRIX
    for arc in (1, 3, 2, 1, 2, 3):
        T, B = flip(T, arc), mutate_matrix(B, arc)
        assert signed_adjacency(T) == B


def test_unflippable(annulus_T):
    with pytest.raises(UnflippableArcError):
        flip(annulus_T, 7)
    with pytest.raises(UnflippableArcError):
        flip(annulus_T, "o1")


def test_digon_flips(digon):
    for arc in (1, 2):
        flipped = flip(digon, arc)
        assert signed_adjacency(flipped) == mutate_matrix(signed_adjacency(digon), arc)
        assert flipped.self_folded() == []
    assert flip(flip(digon, 1), 1) == digon


def test_digon_radius_flip_uses_tags(digon):
    flipped = flip(digon, 2)
    assert flipped.notched == {"p"}
    twice = flip(flipped, 2)
    for arc in (1, 2):
        assert twice.tagged_ends(arc) == digon.tagged_ends(arc)


def test_tags(digon):
    assert digon.tagged_ends(1) == (("P", PLAIN), ("p", NOTCHED))
    assert digon.tagged_ends(2) == (("P", PLAIN), ("p", PLAIN))
    notched = Triangulation(digon.triangles, digon.punctures, {"p"})
    assert notched.tag(2, 1) == NOTCHED
    assert notched.tag(1, 1) == PLAIN
    assert notched.tag(2, 0) == PLAIN


@pytest.mark.parametrize("name", list(NAMED_VECTORS))
def test_named_curves_by_crossing_walk(annulus_T, name):
    family = {"v+": "+", "v-": "-", "vinf": "inf"}.get(name, name[1:])
    curve = annulus.annulus_curve(AnnulusCurve(family))
    assert shear_coordinates(annulus_T, curve) == NAMED_VECTORS[name]


def test_lambda_plus_from_file(annulus_T):
    curve = parse_curve(load_json(os.path.join(DATA_DIR, "lambda_plus.json")))
    assert curve.crossings == (1, 3, 2)
    assert shear_coordinates(annulus_T, curve) == (0, 1, -1)
    closed = parse_curve(load_json(os.path.join(DATA_DIR, "lambda_inf.json")))
    assert shear_coordinates(annulus_T, closed) == (1, 0, -1)


def test_families_match_closed_form(annulus_T):
    for n in range(5):
        for curve in (AnnulusCurve("1", n), AnnulusCurve("2", -n), AnnulusCurve("3", n), AnnulusCurve("4", -n)):
            walked = shear_coordinates(annulus_T, annulus.annulus_curve(curve))
            assert walked == annulus.annulus_shear(curve), curve.label


@pytest.mark.parametrize("arc", [1, 2, 3])
def test_shear_follows_mutation_across_flips(annulus_T, arc):
    flipped = flip(annulus_T, arc)
    for c in annulus_allowable_curves(2):
        curve = annulus.annulus_curve(c)
        before = shear_coordinates(annulus_T, curve)
        after = shear_coordinates(flipped, transport_curve(annulus_T, arc, curve))
        assert after == eta_step(ANNULUS_MATRIX, arc, before), c.label


def test_malformed_curves(annulus_T):
    with pytest.raises(MalformedCurveError):
        Curve((1, 3, 2), ())
    with pytest.raises(MalformedCurveError):
        Curve((1,), (BoundaryEnd("o1"), BoundaryEnd("o1")), closed=True)
    with pytest.raises(MalformedCurveError):
        Curve((), (BoundaryEnd("o1"), BoundaryEnd("o1")))
    with pytest.raises(MalformedCurveError):
        shear_coordinates(annulus_T, Curve((1, 1), (BoundaryEnd("o1"), BoundaryEnd("o2"))))
    with pytest.raises(MalformedCurveError):
        shear_coordinates(annulus_T, Curve((5,), (BoundaryEnd("o1"), BoundaryEnd("in"))))
    with pytest.raises(MalformedCurveError):
        shear_coordinates(annulus_T, Curve((1, 3), (BoundaryEnd("nowhere"), BoundaryEnd("o1"))))
    with pytest.raises(MalformedCurveError):
        SpiralEnd("p", "sideways")


def test_spiral_into_the_puncture(digon):
    cw = Curve((1,), (BoundaryEnd("b1"), SpiralEnd("p", CW)))
    ccw = Curve((1,), (BoundaryEnd("b1"), SpiralEnd("p", CCW)))
    assert shear_coordinates(digon, cw) == (1, 0)
    assert shear_coordinates(digon, ccw) == (0, 1)
    notched = Triangulation(digon.triangles, digon.punctures, {"p"})
    assert shear_coordinates(notched, cw) == shear_coordinates(digon, ccw)


@pytest.mark.parametrize("arc", [1, 2])
@pytest.mark.parametrize("direction", [CW, CCW])
def test_digon_spiral_shear_follows_mutation(digon, arc, direction):
    # after either flip the curve from b1 spirals into p without crossing an arc
    before = Curve((1,), (BoundaryEnd("b1"), SpiralEnd("p", direction)))
    after = Curve((), (BoundaryEnd("b1"), SpiralEnd("p", direction)))
    expected = eta_step(signed_adjacency(digon), arc, shear_coordinates(digon, before))
    assert shear_coordinates(flip(digon, arc), after) == expected


def test_spiral_curves_are_not_transported(digon):
    cw = Curve((1,), (BoundaryEnd("b1"), SpiralEnd("p", CW)))
    with pytest.raises(UnsupportedSurfaceError):
        transport_curve(digon, 1, cw)


@pytest.mark.parametrize("flipped_at", [None, 1, 3])
def test_elementary_laminations(annulus_T, flipped_at):
    T = annulus_T if flipped_at is None else flip(annulus_T, flipped_at)
    for arc in (1, 2, 3):
        expected = tuple(-1 if j == arc else 0 for j in (1, 2, 3))
        assert elementary_lamination_check(T, arc) == expected


def test_elementary_lamination_without_model(annulus_T, hexagon):
    with pytest.raises(UnsupportedSurfaceError):
        elementary_lamination_check(flip(annulus_T, 2), 2)
    with pytest.raises(UnsupportedSurfaceError):
        elementary_lamination_check(hexagon, 1)
