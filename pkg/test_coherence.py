from fractions import Fraction

import pytest

from utils.annulus import ANNULUS_MATRIX, NAMED_VECTORS, annulus_allowable_curves, annulus_shear
from utils.coherence import (
    HOLDS,
    REFUTED,
    ConeDecomposer,
    SeparationCertificate,
    SignTable,
    WeightedFamily,
    b_equivalent_up_to_depth,
    common_cone_up_to_depth,
    decompose_in_cone,
    find_separating_sequence,
    independent_up_to_depth,
    is_b_coherent_up_to_depth,
    replay_certificate,
    replay_witness,
    search_tree,
    sign_vector,
)
from utils.exchange_core import ShapeError
from utils.mutation_maps import eta

V = NAMED_VECTORS


@pytest.fixture
def plus_minus_inf():
    return WeightedFamily.build([(V["v+"], 1), (V["v-"], 1), (V["vinf"], -1)])


def test_sign_vector():
    assert sign_vector((3, 0, Fraction(-1, 2))) == (1, 0, -1)


def test_search_tree_sizes_and_order():
    assert len(search_tree(ANNULUS_MATRIX, 8)) == 766
    assert len(search_tree(ANNULUS_MATRIX, 10)) == 3070
    seqs = [node[0] for node in search_tree(ANNULUS_MATRIX, 2)]
    assert seqs == [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]


def test_negative_depth_rejected():
    with pytest.raises(ValueError):
        common_cone_up_to_depth(ANNULUS_MATRIX, [V["v+"], V["vinf"]], depth=-1)


def test_common_cone():
    assert common_cone_up_to_depth(ANNULUS_MATRIX, [V["v+"], V["vinf"]], 6).status == HOLDS
    verdict = common_cone_up_to_depth(ANNULUS_MATRIX, [V["v+"], V["v-"]], 6)
    assert verdict.status == REFUTED
    assert verdict.witness == ((), 2)
    assert replay_witness(ANNULUS_MATRIX, [V["v+"], V["v-"]], verdict)


def test_common_cone_of_a_single_vector_holds():
    assert common_cone_up_to_depth(ANNULUS_MATRIX, [V["v1"]], 4).holds


def test_separating_sequence_is_the_first_in_search_order():
    cert = find_separating_sequence(ANNULUS_MATRIX, V["v+"], V["v-"], 8)
    assert cert == SeparationCertificate((), 2, (1, -1))
    assert replay_certificate(ANNULUS_MATRIX, V["v+"], V["v-"], cert)


def test_mutation_at_two_also_separates():
    # eta along [2] sends v+ to (0,-1,0) and v- to (0,1,0)
    cert = SeparationCertificate((2,), 2, (-1, 1))
    assert replay_certificate(ANNULUS_MATRIX, V["v+"], V["v-"], cert)
    assert not replay_certificate(ANNULUS_MATRIX, V["v+"], V["v-"], SeparationCertificate((1,), 1, (1, -1)))


def test_positive_multiples_never_separate():
    a = (1, -2, 3)
    assert find_separating_sequence(ANNULUS_MATRIX, a, tuple(2 * x for x in a), 8) is None
    assert b_equivalent_up_to_depth(ANNULUS_MATRIX, a, tuple(2 * x for x in a), 8).holds


def test_b_equivalence_refuted_at_root():
    verdict = b_equivalent_up_to_depth(ANNULUS_MATRIX, V["v1"], V["v3"], 8)
    assert verdict.status == REFUTED
    assert verdict.witness == ((), 1)
    assert replay_witness(ANNULUS_MATRIX, [V["v1"], V["v3"]], verdict)


def test_coherence_depends_on_depth(plus_minus_inf):
    assert is_b_coherent_up_to_depth(ANNULUS_MATRIX, plus_minus_inf, 0).holds
    verdict = is_b_coherent_up_to_depth(ANNULUS_MATRIX, plus_minus_inf, 3)
    assert verdict.status == REFUTED
    assert verdict.witness == ((2,), 1)
    assert replay_witness(ANNULUS_MATRIX, plus_minus_inf.vectors, verdict, plus_minus_inf.coefficients)
    assert verdict.to_dict() == {"check": "coherence", "depth": 3, "status": "refuted", "witness": {"coord": 1, "seq": [2]}}


def test_empty_family_is_coherent():
    assert is_b_coherent_up_to_depth(ANNULUS_MATRIX, WeightedFamily(), 4).holds


def test_family_rejects_repeated_vectors():
    with pytest.raises(ShapeError):
        WeightedFamily.build([(V["v+"], 1), (V["v+"], 2)])


def test_independence():
    verdict = independent_up_to_depth(ANNULUS_MATRIX, [V["v+"], V["v-"], V["vinf"]], 4)
    assert verdict.holds
    assert verdict.witness == ((2,), None)
    verdict = independent_up_to_depth(ANNULUS_MATRIX, [V["v1"], V["v2"], V["v3"]], 4)
    assert verdict.holds
    assert verdict.witness == ((2,), None)


def test_independence_refuted_by_multiples():
    a = V["vinf"]
    vectors = [a, tuple(2 * x for x in a)]
    verdict = independent_up_to_depth(ANNULUS_MATRIX, vectors, 5, ring="Z")
    assert verdict.status == REFUTED
    r = verdict.relation
    assert r[0] == -2 * r[1]
    assert all(x.denominator == 1 for x in r)
    assert replay_witness(ANNULUS_MATRIX, vectors, verdict)


def test_independence_ring_validation():
    with pytest.raises(ValueError):
        independent_up_to_depth(ANNULUS_MATRIX, [V["v1"]], 2, ring="R")


def test_sign_table_compatibility_graph():
    table = SignTable(ANNULUS_MATRIX, [V["v+"], V["v-"], V["vinf"]], 6)
    assert table.separation(0, 1) == ((), 2)
    assert table.separation(0, 2) is None
    assert sorted(table.compatibility_graph().edges()) == [(0, 2), (1, 2)]


def test_decomposition_of_plus_and_inf():
    candidates = [annulus_shear(c) for c in annulus_allowable_curves(4)]
    plus, inf = candidates.index(V["v+"]), candidates.index(V["vinf"])
    combo = decompose_in_cone(ANNULUS_MATRIX, (1, 1, -2), candidates, 11)
    assert combo == sorted([(plus, Fraction(1)), (inf, Fraction(1))])


def test_every_box_vector_decomposes_exactly_once():
    candidates = [annulus_shear(c) for c in annulus_allowable_curves(6)]
    decomposer = ConeDecomposer(ANNULUS_MATRIX, candidates, 11)
    box = range(-5, 6)
    counts = {}
    for x in box:
        for y in box:
            for z in box:
                found = len(decomposer.all_decompositions((x, y, z)))
                counts[found] = counts.get(found, 0) + 1
    assert counts == {1: 11 ** 3}


def test_zero_decomposes_trivially():
    assert decompose_in_cone(ANNULUS_MATRIX, (0, 0, 0), [V["v+"]], 2) == []


def test_incompatible_pair_does_not_decompose():
    # v+ + v- = (1, 0, -1) only through vinf, which is not offered
    assert decompose_in_cone(ANNULUS_MATRIX, (1, 0, -1), [V["v+"], V["v-"]], 6) is None


@pytest.fixture(scope="module")
def curve_pairs():
    vectors = [annulus_shear(c) for c in annulus_allowable_curves(2)]
    return [(a, b) for i, a in enumerate(vectors) for b in vectors[i + 1:]]


def test_eta_is_additive_on_common_cones(curve_pairs):
    sequences = [node[0] for node in search_tree(ANNULUS_MATRIX, 4)]
    shared = 0
    for a, b in curve_pairs:
        if not common_cone_up_to_depth(ANNULUS_MATRIX, [a, b], 4).holds:
            continue
        shared += 1
        total = tuple(x + y for x, y in zip(a, b))
        for seq in sequences:
            summed = tuple(x + y for x, y in zip(eta(ANNULUS_MATRIX, seq, a), eta(ANNULUS_MATRIX, seq, b)))
            assert eta(ANNULUS_MATRIX, seq, total) == summed
    assert shared > 0


def test_no_separation_means_a_common_cone(curve_pairs):
    for depth in range(5):
        for a, b in curve_pairs:
            separated = find_separating_sequence(ANNULUS_MATRIX, a, b, depth) is not None
            assert separated != common_cone_up_to_depth(ANNULUS_MATRIX, [a, b], depth).holds


def test_sums_in_a_common_cone_stay_coherent(curve_pairs):
    depth = 6
    checked = 0
    for a, b in curve_pairs:
        if not common_cone_up_to_depth(ANNULUS_MATRIX, [a, b], depth).holds:
            continue
        total = tuple(x + y for x, y in zip(a, b))
        family = WeightedFamily.build([(a, 1), (b, 1), (total, -1)])
        assert is_b_coherent_up_to_depth(ANNULUS_MATRIX, family, 0).holds
        assert common_cone_up_to_depth(ANNULUS_MATRIX, [a, b, total], depth).holds
        assert is_b_coherent_up_to_depth(ANNULUS_MATRIX, family, depth).holds
        checked += 1
    assert checked > 0


def holds_by_depth(check, depths=range(7)):
    return [check(depth).holds for depth in depths]


def test_verdicts_only_weaken_with_depth(plus_minus_inf, curve_pairs):
    def nonincreasing(values):
        return values == sorted(values, reverse=True)

    assert holds_by_depth(lambda d: is_b_coherent_up_to_depth(ANNULUS_MATRIX, plus_minus_inf, d)) == [True] + [False] * 6
    for a, b in curve_pairs:
        assert nonincreasing(holds_by_depth(lambda d: common_cone_up_to_depth(ANNULUS_MATRIX, [a, b], d)))
        assert nonincreasing(holds_by_depth(lambda d: b_equivalent_up_to_depth(ANNULUS_MATRIX, a, b, d)))


def test_independence_only_strengthens_with_depth():
    # a relation coherent to depth D is coherent to every smaller depth
    vectors = [annulus_shear(c) for c in annulus_allowable_curves(1)]
    for subset in (vectors, vectors[:4], [V["v+"], V["v-"], V["vinf"], V["v1"]]):
        values = holds_by_depth(lambda d: independent_up_to_depth(ANNULUS_MATRIX, subset, d))
        assert values == sorted(values)
