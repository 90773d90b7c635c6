import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cgstp.instance import (InstanceError, edge_length, euc_2d, from_coords, from_matrix,
                            instance_from_json, instance_to_json, parse_tsplib,
                            random_euclidean, to_tsplib)

EUC = """NAME : {name}
TYPE : TSP
DIMENSION : {n}
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
{body}
EOF
"""


def euc_text(coords, name="t"):
    body = "\n".join(f"{i + 1} {x} {y}" for i, (x, y) in enumerate(coords))
    return EUC.format(name=name, n=len(coords), body=body)


def test_parse_345(tri345):
    inst = parse_tsplib(euc_text([(0, 0), (30, 0), (0, 40)]))
    assert (inst.length(0, 1), inst.length(0, 2), inst.length(1, 2)) == (30, 40, 50)
    assert inst == tri345


def test_parse_square_diagonal_rounds_to_14():
    inst = parse_tsplib(euc_text([(0, 0), (0, 10), (10, 10), (10, 0)]))
    assert [inst.length(0, 1), inst.length(1, 2), inst.length(0, 2), inst.length(1, 3)] == [10, 10, 14, 14]


def test_explicit_full_matrix_zero_rejected():
    text = ("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 0 4\n0 0 5\n4 5 0\nEOF\n")
    with pytest.raises(InstanceError, match="non-positive length"):
        parse_tsplib(text)


def test_explicit_upper_row():
    text = ("TYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2 3\n4 5\n6\nEOF\n")
    inst = parse_tsplib(text)
    assert inst.coords is None
    assert inst.as_lists() == [[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]]


@pytest.mark.parametrize("text, msg", [
    (euc_text([(0, 0), (1, 1)]), "DIMENSION < 3"),
    (euc_text([(0, 0), (1, 1), (2, 5)]).replace("EUC_2D", "GEO"), "unsupported EDGE_WEIGHT_TYPE"),
    (euc_text([(0, 0), (1, 1), (2, 5)]).replace("3 2 5\n", ""), "malformed"),
    (euc_text([(0, 0), (1, 1), (2, 5)]).replace("2 5", "2.5 5"), "non-integer"),
    (euc_text([(0, 0), (0, 0), (2, 5)]), "non-positive length"),
    ("TYPE : ATSP\nDIMENSION : 3\n", "unsupported TYPE"),
    ("TYPE : TSP\nEDGE_WEIGHT_TYPE : EUC_2D\n", "missing DIMENSION"),
    ("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : LOWER_ROW\n",
     "unsupported EDGE_WEIGHT_FORMAT"),
])
def test_parse_errors(text, msg):
    with pytest.raises(InstanceError, match=msg):
        parse_tsplib(text)


def test_edge_length_examples(tri345, square10):
    assert edge_length(tri345, (0, 1)) == 30
    assert edge_length(tri345, (1, 0)) == 30
    assert edge_length(square10, (0, 2)) == 14
    with pytest.raises(InstanceError):
        edge_length(tri345, (0, 3))
    with pytest.raises(InstanceError):
        edge_length(tri345, (1, 1))


def test_euc_2d_matches_float_rounding_on_grid():
    for dx in range(80):
        for dy in range(80):
            assert euc_2d((0, 0), (dx, dy)) == math.floor(math.hypot(dx, dy) + 0.5)


def test_euc_2d_exact_for_huge_coordinates():
    # floats lose the last digit here
    big = 10**12
    assert euc_2d((0, 0), (big, 1)) == big


def test_random_instance_deterministic_and_distinct():
    a = random_euclidean(3, 5, 100)
    assert a == random_euclidean(3, 5, 100)
    assert len(set(a.coords)) == 3
    assert all(0 <= c <= 100 for p in a.coords for c in p)
    assert a != random_euclidean(3, 6, 100)


def test_random_instance_preconditions():
    with pytest.raises(InstanceError):
        random_euclidean(2, 0)
    with pytest.raises(InstanceError):
        random_euclidean(5, 0, coord_range=3)


def test_dense_random_instance_resamples_duplicates():
    inst = random_euclidean(16, 3, coord_range=16)
    assert len(set(inst.coords)) == 16


def test_lengths_read_only(tri345):
    with pytest.raises(ValueError):
        tri345.lengths[0, 1] = 7


def test_asymmetric_matrix_rejected():
    with pytest.raises(InstanceError, match="symmetric"):
        from_matrix([[0, 1, 2], [3, 0, 4], [2, 4, 0]])


def test_zero_distance_lifted():
    inst = from_coords([(0, 0), (0, 0), (5, 0)], lift_zero=True)
    assert inst.length(0, 1) == 1
    with pytest.raises(InstanceError):
        from_coords([(0, 0), (0, 0), (5, 0)])


def _sym(n, vals):
    m = np.zeros((n, n), dtype=np.int64)
    m[np.triu_indices(n, 1)] = vals
    return m + m.T


matrices = st.integers(3, 7).flatmap(lambda n: st.lists(
    st.integers(1, 10**6), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2
).map(lambda vals, n=n: _sym(n, vals)))


@given(st.integers(3, 12), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_tsplib_round_trip_euclidean(n, seed):
    inst = random_euclidean(n, seed)
    assert parse_tsplib(to_tsplib(inst)) == inst
    assert instance_from_json(instance_to_json(inst)) == inst


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_tsplib_round_trip_matrix(m):
    inst = from_matrix(m)
    assert parse_tsplib(to_tsplib(inst)) == inst
    assert instance_from_json(instance_to_json(inst)) == inst


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_edge_length_symmetric_positive(m):
    inst = from_matrix(m)
    for i in range(inst.n):
        for j in range(inst.n):
            if i != j:
                assert edge_length(inst, (i, j)) == edge_length(inst, (j, i)) >= 1
