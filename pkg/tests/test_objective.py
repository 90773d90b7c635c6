import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cgstp.admissibility import boundary, induce_selection
from cgstp.complex import full_complex
from cgstp.encode import fan_encode
from cgstp.instance import MAX_LENGTH, from_matrix, random_euclidean
from cgstp.objective import (IdentityPreconditionError, ObjectiveError, check_boundary_identity,
                             net_weight, tour_length)
from cgstp.tours import TourError


def test_single_triangle_345(tri345):
    br = net_weight(induce_selection(full_complex(3), [(0, 1, 2)]), tri345)
    assert (br.profit_sum, br.cost_sum, br.net, br.boundary_length) == (120, 240, -120, 120)


def test_square_fan(square10):
    sel = induce_selection(full_complex(4), [(0, 1, 2), (0, 2, 3)])
    br = net_weight(sel, square10)
    # four sides once, the diagonal twice: profit 40 + 28, cost 80 + 28
    assert br.to_json() == {"profit_sum": 68, "cost_sum": 108, "net": -40, "boundary_length": 40}
    assert check_boundary_identity(sel, square10)


def test_empty_selection_net_zero(square10):
    br = net_weight(induce_selection(full_complex(4), []), square10)
    assert br.net == br.profit_sum == br.cost_sum == br.boundary_length == 0


@pytest.mark.parametrize("tour, length", [((0, 1, 2, 3), 40), ((0, 2, 1, 3), 48), ((0, 1, 3, 2), 48)])
def test_tour_lengths(square10, tour, length):
    assert tour_length(tour, square10) == length


def test_tour_length_345(tri345):
    assert tour_length((0, 1, 2), tri345) == 120


@pytest.mark.parametrize("bad", [(0, 1, 1, 3), (0, 1, 2), (0, 1, 2, 3, 4)])
def test_tour_length_rejects_non_tours(square10, bad):
    with pytest.raises(TourError):
        tour_length(bad, square10)


def test_identity_precondition_error(square10):
    inst = random_euclidean(5, 0)
    sel = induce_selection(full_complex(5), [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    with pytest.raises(IdentityPreconditionError, match="C2"):
        check_boundary_identity(sel, inst)


def test_mismatched_n(square10):
    sel = induce_selection(full_complex(3), [(0, 1, 2)])
    with pytest.raises(ObjectiveError):
        net_weight(sel, square10)


def test_no_overflow_at_length_cap():
    n = 12
    m = np.full((n, n), MAX_LENGTH, dtype=np.int64)
    inst = from_matrix(m)
    sel = fan_encode(tuple(range(n)), 0, full_complex(n))
    br = net_weight(sel, inst)
    assert br.net == -n * MAX_LENGTH
    assert br.cost_sum == 2 * (2 * n - 3) * MAX_LENGTH


lengths = st.integers(3, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, 10**9), min_size=n * (n - 1) // 2,
                         max_size=n * (n - 1) // 2)))


def _inst(n, vals, scale=1):
    m = np.zeros((n, n), dtype=np.int64)
    m[np.triu_indices(n, 1)] = [v * scale for v in vals]
    return from_matrix(m + m.T)


@given(lengths, st.data())
@settings(max_examples=150, deadline=None)
def test_boundary_identity_on_c1_c2_selections(nv, data):
    n, vals = nv
    inst = _inst(n, vals)
    cx = full_complex(n)
    K = data.draw(st.sets(st.sampled_from(cx.candidates), max_size=n))
    sel = induce_selection(cx, K)
    if max(sel.incidence_counts().values(), default=0) > 2:
        with pytest.raises(IdentityPreconditionError):
            check_boundary_identity(sel, inst)
        return
    br = net_weight(sel, inst)
    assert check_boundary_identity(sel, inst)
    assert -br.net == br.boundary_length
    # per edge: two incidences cancel, one leaves -L_e
    cnt = sel.incidence_counts()
    for e in sel.edges:
        L = inst.length(*e)
        contribution = cnt[e] * L - 2 * L
        assert contribution == (0 if cnt[e] == 2 else -L)
        assert (cnt[e] == 1) == (e in boundary(sel))


@given(lengths, st.integers(2, 50), st.data())
@settings(max_examples=100, deadline=None)
def test_scaling_equivariance(nv, c, data):
    n, vals = nv
    cx = full_complex(n)
    sel = induce_selection(cx, data.draw(st.sets(st.sampled_from(cx.candidates), max_size=n)))
    a = net_weight(sel, _inst(n, vals))
    b = net_weight(sel, _inst(n, vals, c))
    assert (b.profit_sum, b.cost_sum, b.net, b.boundary_length) == \
        (c * a.profit_sum, c * a.cost_sum, c * a.net, c * a.boundary_length)
