import pytest
from hypothesis import given

from conftest import weighted_complexes
from orbihom.chains import (
    MapKind,
    SimplicialMapData,
    chain_complex,
    induced_chain_map,
    relative_weighted_boundary,
    weighted_boundary,
)
from orbihom.complex import build_complex, cartesian_product, embed_ids, singular_subcomplex
from orbihom.errors import InvalidMap
from orbihom.exactalg import IntMatrix
from orbihom.generators import generate


def test_edge_boundary_hand_computed(edge_12):
    # d[x0 x1] = (2/2) x1 - (2/1) x0
    assert weighted_boundary(edge_12, 1).tolist() == [[-2], [1]]
    assert weighted_boundary(edge_12, 0).shape == (0, 2)


def test_triangle_boundary_hand_computed():
    K = build_complex({"a": 1, "b": 2, "c": 4}, [["a", "b", "c"]])
    # edges in order (a b), (a c), (b c); d[a b c] = (4/4)[b c] - (4/4)[a c] + (4/2)[a b]
    assert weighted_boundary(K, 2).tolist() == [[2], [-1], [1]]


def test_unit_weights_give_classical_boundary():
    K = build_complex([1, 1, 1], [[0, 1, 2]])
    assert weighted_boundary(K, 2).tolist() == [[1], [-1], [1]]
    assert weighted_boundary(K, 1).tolist() == [[-1, -1, 0], [1, 0, -1], [0, 1, 1]]


def test_relative_boundary_is_row_and_column_deletion():
    K = generate("teardrop:5")
    A = singular_subcomplex(K)
    inA = embed_ids(A, K)
    for n in range(K.dim + 1):
        full = weighted_boundary(K, n)
        rows = [i for i, s in enumerate(K.simplices(n - 1)) if s not in inA] if n else []
        cols = [j for j, s in enumerate(K.simplices(n)) if s not in inA]
        expected = [[full[i, j] for j in cols] for i in rows]
        assert relative_weighted_boundary(K, A, n).tolist() == expected
    # every semi-regular edge at the cone point loses its cone-point term
    d1 = relative_weighted_boundary(K, A, 1)
    assert d1.rows == K.count(0) - 1


def test_football_relative_basis_counts():
    K = generate("football:4,6")
    cc = chain_complex(K, singular_subcomplex(K))
    assert cc.kind == "relative"
    assert cc.counts() == [K.count(0) - 2, K.count(1), K.count(2)]


@given(weighted_complexes(max_dim=3))
def test_boundary_squares_to_zero(K):
    for n in range(2, K.dim + 1):
        assert (weighted_boundary(K, n - 1) @ weighted_boundary(K, n)).is_zero()
    A = singular_subcomplex(K)
    for n in range(2, K.dim + 1):
        assert (relative_weighted_boundary(K, A, n - 1) @ relative_weighted_boundary(K, A, n)).is_zero()


def test_identity_chain_map():
    K = generate("teardrop:3")
    f = SimplicialMapData(K, K, list(range(K.n_vertices)))
    for n in range(3):
        assert induced_chain_map(f, n) == IntMatrix.identity(K.count(n))


def test_collapse_to_point_is_a_morphism_chain_map(edge_12):
    pt = build_complex([1])
    f = SimplicialMapData(edge_12, pt, [0, 0], MapKind.MORPHISM)
    assert induced_chain_map(f, 1).shape == (0, 1)
    assert (induced_chain_map(f, 0) @ weighted_boundary(edge_12, 1)).is_zero()


def test_weight_preserving_validation(edge_12):
    pt = build_complex([1])
    with pytest.raises(InvalidMap):
        SimplicialMapData(edge_12, pt, [0, 0], MapKind.WEIGHT_PRESERVING)
    heavy = build_complex([3])
    with pytest.raises(InvalidMap):
        SimplicialMapData(edge_12, heavy, [0, 0], MapKind.MORPHISM)


@given(weighted_complexes(max_vertices=4), weighted_complexes(max_vertices=3, max_dim=1))
def test_product_projection_is_a_chain_map(K, L):
    P = cartesian_product(K, L)
    # product vertex ids enumerate pairs (a, b) row by row
    vm = [i // L.n_vertices for i in range(P.n_vertices)]
    f = SimplicialMapData(P, K, vm, MapKind.MORPHISM)
    for n in range(1, P.dim + 1):
        lhs = weighted_boundary(K, n) @ induced_chain_map(f, n) if n <= K.dim else None
        rhs = induced_chain_map(f, n - 1) @ weighted_boundary(P, n)
        if lhs is None:
            assert rhs.is_zero()
        else:
            assert lhs == rhs


def test_compose_order():
    K = generate("interval2:2")
    flip = SimplicialMapData.from_names(K, K, {"x0": "x1", "m": "m", "x1": "x0"})
    twice = flip.compose(flip)
    assert twice.vertex_map == tuple(range(K.n_vertices))
