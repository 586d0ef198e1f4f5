import pytest
from hypothesis import given, settings

from conftest import weighted_complexes
from orbihom.complex import SimplexClass, build_complex, classify
from orbihom.errors import NotDivisiblyWeighted
from orbihom.exactalg import HomologyGroup as G
from orbihom.generators import generate
from orbihom.homology import ST, WT, st_homology
from orbihom.subdivision import (
    barycentric_subdivide,
    check_sd_chain_map,
    iterated_subdivision,
    pi_projection,
    pi_sd_is_identity,
    sd_chain,
    verify_subdivision_invariance,
)

CORPUS = ["interval1:3", "interval2:2,4", "disk:2,3", "triangle:2,3,4", "teardrop:5", "football:4,6",
          "sphere:2,3,5", "surface:g=1;k=2", "surface:c=1;k=3"]


def test_edge_subdivision_by_hand():
    k = 5
    K = build_complex({"x0": 1, "x1": k}, [["x0", "x1"]])
    rec = barycentric_subdivide(K)
    R = rec.result
    b = rec.barycenter((0, 1))
    assert R.vertex_weights[b] == 1
    assert R.weight(tuple(sorted((0, b)))) == 1
    assert R.weight(tuple(sorted((1, b)))) == k
    # Sd[x0 x1] = b . (d[x0 x1]) = b . (x1 - k x0) = k [x0 b] - [x1 b]
    assert sd_chain(rec, (0, 1)) == {(0, b): k, (1, b): -1}


def test_counts_of_subdivided_triangle():
    K = build_complex([1, 1, 1], [[0, 1, 2]])
    R = barycentric_subdivide(K).result
    assert [R.count(n) for n in range(3)] == [7, 12, 6]


def test_pi_examples():
    K = build_complex({"a": 1, "b": 1, "c": 2, "d": 4}, [["a", "b"], ["a", "c"], ["c", "d"]])
    rec = barycentric_subdivide(K)
    pi = pi_projection(rec)
    assert pi.vertex_map[rec.barycenter((0, 1))] == 0
    assert pi.vertex_map[rec.barycenter((0, 2))] == 0
    assert pi.vertex_map[rec.barycenter((2, 3))] == 2


def test_refuses_non_divisibly_weighted():
    K = build_complex({"a": 2, "b": 3}, [["a", "b"]], {("a", "b"): 6})
    with pytest.raises(NotDivisiblyWeighted):
        barycentric_subdivide(K)


@pytest.mark.parametrize("spec", CORPUS)
def test_corpus_invariance(spec):
    K = generate(spec)
    rec = barycentric_subdivide(K)
    assert check_sd_chain_map(rec)
    assert pi_sd_is_identity(rec)
    assert verify_subdivision_invariance(K, WT, rec)
    assert verify_subdivision_invariance(K, ST, rec)


def test_teardrop_twice():
    K = generate("teardrop:3")
    r1, r2 = iterated_subdivision(K, 2)
    assert st_homology(r2.result).groups == [G(0, (3,)), G(), G(1)]
    assert verify_subdivision_invariance(r1.result, ST, r2)
    assert pi_sd_is_identity(r2)


def test_unit_sphere_invariance():
    sphere = build_complex([1] * 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert verify_subdivision_invariance(sphere, WT)


@pytest.mark.parametrize("spec", ["football:2,4", "triangle:2,3,4"])
def test_classes_are_refined(spec):
    K = generate(spec)
    rec = barycentric_subdivide(K)
    for s in K.simplices():
        cls = classify(K, s)
        images = {classify(rec.result, t) for t in sd_chain(rec, s)}
        if cls is SimplexClass.SEMI_REGULAR:
            assert images <= {SimplexClass.REGULAR, SimplexClass.SEMI_REGULAR}
        else:
            assert images == {cls}


@settings(max_examples=25)
@given(weighted_complexes(max_vertices=5, max_dim=2))
def test_random_invariance(K):
    rec = barycentric_subdivide(K)
    assert check_sd_chain_map(rec)
    assert pi_sd_is_identity(rec)
    assert verify_subdivision_invariance(K, WT, rec)
    assert verify_subdivision_invariance(K, ST, rec)
