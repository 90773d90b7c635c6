import pytest
from hypothesis import given, settings, strategies as st

from cgstp.admissibility import check_admissible, decode_tour
from cgstp.complex import full_complex, restricted_complex
from cgstp.encode import FanNotInComplexError, fan_encode, fan_triangles
from cgstp.instance import random_euclidean
from cgstp.objective import net_weight, tour_length
from cgstp.tours import TourError, canonical_tour, format_tour, parse_tour


def test_fan_of_square_tour():
    sel = fan_encode((0, 1, 2, 3), 0, full_complex(4))
    assert sorted(sel.K) == [(0, 1, 2), (0, 2, 3)]


@pytest.mark.parametrize("apex", range(3))
def test_triangle_fan_apex_irrelevant(apex):
    assert sorted(fan_encode((0, 1, 2), apex, full_complex(3)).K) == [(0, 1, 2)]


def test_fan_apex_rotation():
    assert fan_triangles((3, 1, 4, 0, 2), 2) == [(0, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_restricted_fan_retries_other_apexes():
    cx = restricted_complex(4, [(0, 1, 3), (1, 2, 3)])
    sel = fan_encode((0, 1, 2, 3), 0, cx)
    assert sorted(sel.K) == [(0, 1, 3), (1, 2, 3)]


def test_missing_fan_reports_triangles():
    cx = restricted_complex(4, [(0, 1, 2)])
    with pytest.raises(FanNotInComplexError) as err:
        fan_encode((0, 1, 2, 3), 0, cx)
    assert set(err.value.missing) == {0, 1, 2, 3}
    assert err.value.missing[0] == [(0, 2, 3)]


def test_fan_rejects_bad_input():
    with pytest.raises(TourError):
        fan_encode((0, 1, 1, 3), 0, full_complex(4))
    with pytest.raises(ValueError):
        fan_encode((0, 1, 2, 3), 4, full_complex(4))


def test_canonical_tour_and_text_format():
    assert canonical_tour((2, 3, 0, 1)) == (0, 1, 2, 3)
    assert canonical_tour((0, 3, 2, 1)) == (0, 1, 2, 3)
    assert parse_tour(format_tour((0, 2, 1))) == (0, 2, 1)
    assert format_tour((0, 1, 2)) == "0 1 2\n"


tours = st.integers(3, 9).flatmap(lambda n: st.permutations(range(n)))


@given(tours)
def test_canonical_tour_idempotent(t):
    c = canonical_tour(t)
    assert canonical_tour(c) == c
    assert canonical_tour(t[::-1]) == c
    assert c[0] == 0 and c[1] < c[-1]


@given(tours, st.data())
@settings(max_examples=200, deadline=None)
def test_fan_round_trip_admissible_and_objective(t, data):
    n = len(t)
    apex = data.draw(st.integers(0, n - 1))
    sel = fan_encode(t, apex, full_complex(n))
    assert check_admissible(sel).admissible
    assert len(sel.K) == n - 2 and len(sel.edges) == 2 * n - 3
    assert decode_tour(sel) == canonical_tour(t)
    inst = random_euclidean(n, data.draw(st.integers(0, 1000)))
    assert net_weight(sel, inst).net == -tour_length(t, inst)
