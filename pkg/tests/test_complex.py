from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cgstp.complex import (ComplexError, DegenerateDelaunayError, combination_rank,
                           combination_unrank, delaunay_candidates, edge_rank, full_complex,
                           read_triangle_list, restricted_complex, triangle_edges,
                           triangle_rank, write_triangle_list)
from cgstp.instance import from_coords, from_matrix, random_euclidean


@pytest.mark.parametrize("n, tris, per_edge", [(3, 1, 1), (5, 10, 3), (10, 120, 8)])
def test_full_complex_sizes(n, tris, per_edge):
    cx = full_complex(n)
    assert len(cx.candidates) == tris
    assert len(cx.edges) == comb(n, 2)
    assert {len(ts) for ts in cx.edge_to_tris.values()} == {per_edge}
    assert len(list(cx.incidences())) == 3 * tris
    assert all(len(cx.groups[v]) == comb(n - 1, 2) for v in range(n))
    assert cx.is_full


def test_full_complex_rejects_small_n():
    with pytest.raises(ComplexError):
        full_complex(2)


def test_restricted_examples():
    cx = restricted_complex(4, [(0, 1, 2), (0, 2, 3), (2, 0, 1)])
    assert cx.candidates == ((0, 1, 2), (0, 2, 3))
    assert cx.edge_to_tris[(0, 2)] == ((0, 1, 2), (0, 2, 3))
    assert cx.edge_to_tris[(1, 3)] == ()
    assert not cx.is_full
    empty = restricted_complex(4, [])
    assert empty.candidates == () and len(empty.edges) == 6


@pytest.mark.parametrize("bad", [(0, 1, 4), (0, 0, 1), (-1, 1, 2), (0, 1)])
def test_restricted_rejects_invalid(bad):
    with pytest.raises(ComplexError):
        restricted_complex(4, [bad])


def test_triangle_edges_examples():
    assert triangle_edges((0, 1, 2)) == ((0, 1), (0, 2), (1, 2))
    assert triangle_edges((2, 5, 7)) == ((2, 5), (2, 7), (5, 7))


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_ranks_are_dense_lex_bijections(n):
    for k, rank in ((2, edge_rank), (3, triangle_rank)):
        combos = list(combinations(range(n), k))
        assert [rank(c, n) for c in combos] == list(range(len(combos)))
        assert [combination_unrank(r, n, k) for r in range(len(combos))] == combos
        assert all(combination_rank(c, n) == rank(c, n) for c in combos)


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(*[st.integers(0, n - 1)] * 3).filter(
        lambda t: len(set(t)) == 3).map(lambda t: tuple(sorted(t)))))))
def test_incidence_and_group_invariants(args):
    n, tris = args
    cx = restricted_complex(n, tris)
    for t in cx.candidates:
        for e in triangle_edges(t):
            assert set(e) <= set(t)
            assert t in cx.edge_to_tris[e]
    for e, ts in cx.edge_to_tris.items():
        assert all(e in triangle_edges(t) for t in ts)
    for v in range(n):
        assert cx.groups[v] == {t for t in cx.candidates if v in t}


def test_delaunay_three_points():
    assert delaunay_candidates(from_coords([(0, 0), (5, 0), (1, 7)])) == [(0, 1, 2)]


def test_delaunay_square_is_degenerate(square10):
    with pytest.raises(DegenerateDelaunayError, match="cocircular"):
        delaunay_candidates(square10)


def test_delaunay_four_point_example():
    inst = from_coords([(0, 0), (10, 0), (10, 10), (3, 4)])
    assert delaunay_candidates(inst) == [(0, 1, 3), (1, 2, 3)]


def test_delaunay_needs_coordinates():
    with pytest.raises(ComplexError):
        delaunay_candidates(from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))


def test_delaunay_skips_collinear_triples():
    inst = from_coords([(0, 0), (5, 0), (10, 0), (5, 7)])
    tris = delaunay_candidates(inst)
    assert (0, 1, 2) not in tris
    assert sorted(tris) == [(0, 1, 3), (1, 2, 3)]


@pytest.mark.parametrize("seed", range(10))
def test_delaunay_agrees_with_scipy(seed):
    spatial = pytest.importorskip("scipy.spatial")
    inst = random_euclidean(12, seed)
    ours = delaunay_candidates(inst)
    ref = sorted(tuple(sorted(map(int, s))) for s in spatial.Delaunay(inst.coords).simplices)
    assert ours == ref
    # a planar triangulation of n points has 2n - 2 - hull triangles
    hull = len(spatial.ConvexHull(inst.coords).vertices)
    assert len(ours) == 2 * inst.n - 2 - hull


def test_triangle_list_round_trip():
    tris = [(0, 1, 2), (1, 2, 3)]
    assert read_triangle_list(write_triangle_list(tris), 4) == tris
    assert read_triangle_list("# header\n2 1 0   # comment\n\n", 4) == [(0, 1, 2)]
    with pytest.raises(ComplexError, match="line 1"):
        read_triangle_list("0 1\n", 4)
    with pytest.raises(ComplexError, match="line 2"):
        read_triangle_list("0 1 2\n0 1 9\n", 4)
