import pytest

from rgc.properad import CompositionError, compose, twist_differential
from rgc.ribbon import (FormalSum, bracket_graph, dumbbell, lollipop,
                        loop_graph, unit_white)


def delta(fs):
    return fs.map_terms(twist_differential)


def test_compose_bracket_with_itself():
    b = bracket_graph(1)
    c = compose(b, 1, b, 1)
    assert len(c) == 2
    for g, _coeff in c:
        assert g.n_white == 3
        assert g.n_edges == 2
        assert g.n_boundaries == 1


def test_compose_rejects_missing_labels():
    b = bracket_graph(1)
    with pytest.raises((CompositionError, Exception)):
        compose(b, 7, b, 1)


def test_differential_squares_to_zero_on_small_graphs():
    for d in (0, 1, 2, 3):
        for g in (unit_white(d), bracket_graph(d), lollipop(d),
                  dumbbell(d), loop_graph(d)):
            fs = twist_differential(g)
            assert delta(fs).is_zero()


def test_differential_of_loop_has_two_terms():
    fs = twist_differential(loop_graph(1))
    assert len(fs) == 2


def test_differential_is_linear():
    a = FormalSum([(bracket_graph(1), 2)])
    b = FormalSum([(loop_graph(1), -3)])
    lhs = delta(a + b)
    rhs = delta(a) + delta(b)
    assert lhs == rhs


def test_compose_then_differential_matches_leibniz_sample():
    # delta(g1 o g2) = delta(g1) o g2 +/- g1 o delta(g2); with delta(g1) = 0
    # and delta(g2) = 0, the composite must be a cycle too.
    b = bracket_graph(2)
    assert twist_differential(b).map_terms(twist_differential).is_zero()
    c = compose(b, 1, b, 1)
    assert delta(delta(c)).is_zero()
