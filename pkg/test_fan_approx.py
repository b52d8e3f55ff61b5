import itertools

import pytest

from utils.annulus import ANNULUS_MATRIX, NAMED_VECTORS, annulus_allowable_curves, annulus_shear
from utils.coherence import ConeDecomposer, SignTable
from utils.fan_approx import (
    ContractError,
    FanTruncation,
    ProjectionError,
    RationalCone,
    build_quasilam_fan,
    check_fan,
    cone_contains,
    stereographic_project,
)


def always(a, b):
    return True


@pytest.fixture(scope="module")
def annulus_fan():
    curves = annulus_allowable_curves(4)
    rays = [(c.label, annulus_shear(c)) for c in curves]
    table = SignTable(ANNULUS_MATRIX, [v for _, v in rays], 8)
    index = {label: i for i, (label, _) in enumerate(rays)}
    return build_quasilam_fan(rays, lambda x, y: table.separation(index[x], index[y]) is None, 3, parameter=8)


def test_annulus_fan_is_a_fan(annulus_fan):
    assert check_fan(annulus_fan) == {"ok": True, "pair": None, "reason": None}
    assert annulus_fan.cones[0] == RationalCone(())
    assert annulus_fan.parameter == 8
    assert annulus_fan.labels[NAMED_VECTORS["vinf"]] == "lambdainf"


def test_annulus_fan_limit_faces(annulus_fan):
    # vinf is a limit ray: its 2-faces sit on the boundary of the truncation
    for other in ("v+", "v-"):
        face = [NAMED_VECTORS[other], NAMED_VECTORS["vinf"]]
        assert len(annulus_fan.cones_containing_face(face, dim=2)) == 1
        assert len(annulus_fan.cones_containing_face(face, dim=3)) < 2


def test_annulus_fan_has_no_plus_minus_cone(annulus_fan):
    assert annulus_fan.cones_containing_face([NAMED_VECTORS["v+"], NAMED_VECTORS["v-"]]) == []


def test_cone_generators_are_primitive_and_sorted():
    cone = RationalCone.from_generators([(0, 3, 0), (2, 0, 0)])
    assert cone.generators == ((0, 1, 0), (1, 0, 0))
    assert cone.dim == 2
    assert cone.is_simplicial()
    with pytest.raises(ContractError):
        RationalCone.from_generators([(0, 0, 0)])


def test_non_primitive_ray_rejected():
    with pytest.raises(ContractError):
        build_quasilam_fan([("a", (2, 0, -2))], always, 3)


def test_asymmetric_oracle_rejected():
    rays = [("a", (1, 0, 0)), ("b", (0, 1, 0))]
    with pytest.raises(ContractError):
        build_quasilam_fan(rays, lambda x, y: x == "a", 3)


def test_check_fan_not_simplicial():
    rays = [("a", (1, 0, 0)), ("b", (0, 1, 0)), ("c", (1, 1, 0))]
    result = check_fan(build_quasilam_fan(rays, always, 3))
    assert not result["ok"]
    assert result["reason"] == "not simplicial"


def test_check_fan_bad_intersection():
    rays = [("a", (1, 0, 0)), ("b", (0, 1, 0)), ("c", (1, 1, 1)), ("d", (1, 1, -1))]
    pairs = {frozenset("ab"), frozenset("cd")}
    fan = build_quasilam_fan(rays, lambda x, y: frozenset((x, y)) in pairs, 3)
    result = check_fan(fan)
    assert not result["ok"]
    assert result["reason"] == "bad intersection"


def test_check_fan_missing_face():
    fan = FanTruncation([RationalCone.from_generators([(1, 0, 0), (0, 1, 0)])])
    assert check_fan(fan)["reason"] == "missing face"


def test_fan_to_dict():
    fan = build_quasilam_fan([("x", (1, 0, -1)), ("y", (0, 1, -1))], always, 3, parameter=4)
    data = fan.to_dict()
    assert data["parameter"] == 4
    assert data["labels"] == {"0,1,-1": "y", "1,0,-1": "x"}
    assert data["cones"][0] == {"gens": []}
    assert data["cones"][-1] == {"gens": [[0, 1, -1], [1, 0, -1]]}


def test_cone_contains():
    cone = RationalCone.from_generators([(1, 0, 0), (0, 1, 0)])
    assert cone_contains(cone, (1, 2, 0))
    assert cone_contains(cone, (0, 0, 0))
    assert not cone_contains(cone, (1, -1, 0))
    assert not cone_contains(cone, (1, 1, 1))


def test_stereographic_projection():
    assert stereographic_project((1, 1, 1)) == pytest.approx((0.0, 0.0))
    assert stereographic_project((2, 2, 2)) == pytest.approx(stereographic_project((1, 1, 1)))
    # (1,0,-1) lies on the equator of the rotated sphere
    assert stereographic_project((1, 0, -1)) == pytest.approx((1.0, 3.0 ** 0.5))


def test_stereographic_projection_errors():
    with pytest.raises(ProjectionError):
        stereographic_project((0, 0, 0))
    with pytest.raises(ProjectionError):
        stereographic_project((-1, -1, -1))
    with pytest.raises(ProjectionError):
        stereographic_project((1, 0))


def test_cone_contains_agrees_with_decomposition(annulus_fan):
    box = list(itertools.product(range(-2, 3), repeat=3))
    for cone in annulus_fan.cones:
        if not cone.generators:
            continue
        decomposer = ConeDecomposer(ANNULUS_MATRIX, list(cone.generators), 8)
        for target in box:
            decomposed = decomposer.decompose(target, integral=False) is not None
            assert cone_contains(cone, target) == decomposed, (cone.generators, target)
