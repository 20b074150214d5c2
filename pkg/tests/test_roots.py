from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbilines import roots
from orbilines.exactalg import determinant

FINITE = [(4,), (2, 5), (3, 3), (2, 2, 2), (2, 2, 4), (2, 3, 3), (2, 3, 4), (2, 3, 5)]


def test_star_graph_shape():
    g = roots.star_graph((2, 2, 3))
    assert len(g) == 5
    assert g.vertices == [0, (0, 1), (1, 1), (2, 1), (2, 2)]
    assert sorted(g.edges) == [(0, 1), (0, 2), (0, 3), (3, 4)]


def test_cartan_determinants():
    # det of the Cartan matrix: n+1 for A_n, 4 for D_n, 3, 2, 1 for E6, E7, E8
    expected = {(2, 5): 7, (2, 2, 4): 4, (2, 3, 3): 3, (2, 3, 4): 2, (2, 3, 5): 1}
    for sig, det in expected.items():
        assert determinant(roots.cartan_matrix(roots.star_graph(sig))) == det


def test_types():
    assert roots.dynkin_type((2, 2, 3)) == "D_5"
    assert roots.dynkin_type((3, 4)) == "A_6"
    assert roots.dynkin_type((2, 3, 5)) == "E8"
    with pytest.raises(ValueError):
        roots.dynkin_type((2, 3, 7))


def test_root_counts():
    for sig in FINITE:
        label = roots.dynkin_type(sig)
        assert len(roots.positive_roots(roots.star_graph(sig))) == roots.classical_root_count(label)
    assert len(roots.positive_roots(roots.star_graph((2, 2, 3)))) == 20
    assert len(roots.positive_roots(roots.star_graph((2, 3, 5)))) == 120


def test_max_ranks():
    assert roots.max_indecomposable_rank((7,)) == 1
    assert roots.max_indecomposable_rank((4, 6)) == 1
    for n in range(2, 9):
        assert roots.max_indecomposable_rank((2, 2, n)) == 2
    assert roots.max_indecomposable_rank((2, 3, 3)) == 3
    assert roots.max_indecomposable_rank((2, 3, 4)) == 4
    assert roots.max_indecomposable_rank((2, 3, 5)) == 6


def test_infinite_type():
    for sig in [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 2, 2), (2, 3, 7)]:
        g = roots.star_graph(sig)
        assert not roots.is_finite_type(g)
        assert roots.max_indecomposable_rank(sig) is roots.UNBOUNDED
        with pytest.raises(ValueError):
            roots.positive_roots(g)


def test_highest_root_of_e8():
    g = roots.star_graph((2, 3, 5))
    top = max(roots.positive_roots(g), key=lambda r: sum(r.vector()))
    assert top.a0 == 6
    assert sum(top.vector()) == 29  # height of the highest root is h - 1 = 29


def test_root_vector_round_trip():
    g = roots.star_graph((2, 3, 4))
    for r in roots.positive_roots(g):
        assert roots.RootVector.from_vector(g, r.vector()) == r


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FINITE))
def test_roots_are_real_and_closed(sig):
    g = roots.star_graph(sig)
    C = roots.cartan_matrix(g)
    pos = {r.vector() for r in roots.positive_roots(g)}
    for v in pos:
        assert roots.quadratic_form(C, v) == 2
        for i in range(len(g)):
            w = roots.reflect(C, i, v)
            assert w in pos or tuple(-x for x in w) in pos


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(2, 7), min_size=1, max_size=4))
def test_finite_type_iff_dual_sum_exceeds(sig):
    # the star graph is Dynkin exactly when sum(1/p_i) > n - 2
    from fractions import Fraction

    n = len(sig)
    dynkin = n <= 2 or sum(Fraction(1, p) for p in sig) > n - 2
    assert roots.is_finite_type(roots.star_graph(sig)) == dynkin
