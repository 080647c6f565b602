import pytest

from rgc.ribbon import (BoundaryMismatch, FormalSum, InvolutionError,
                        LabelError, bracket_graph, build_graph, dumbbell,
                        graph_from_text, graph_to_text, lollipop, loop_graph,
                        relabel_whites, unit_white, validate)


def test_unit_white_shape():
    g = unit_white(1)
    assert g.n_edges == 0
    assert g.genus() == 0
    assert g.n_white == 1
    assert g.n_boundaries == 1


def test_bracket_graph_counts():
    g = bracket_graph(1)
    assert g.n_white == 2
    assert g.n_black == 0
    assert g.n_edges == 1
    assert g.n_boundaries == 1
    assert g.genus() == 0


def test_loop_graph_counts():
    g = loop_graph(2)
    assert g.n_white == 1
    assert g.n_boundaries == 2


def test_bad_involution_rejected():
    with pytest.raises(InvolutionError):
        build_graph(1, (0, 1), (("w", 1, (0, 1)),), (1,))


def test_boundary_label_count_must_match():
    g = unit_white(1)
    with pytest.raises(BoundaryMismatch):
        build_graph(g.d, g.alpha, g.vertices, (1, 2))


def test_white_labels_must_be_a_range():
    g = bracket_graph(1)
    verts = tuple((kind, 5 if lab == 2 else lab, cyc)
                  for kind, lab, cyc in g.vertices)
    with pytest.raises(LabelError):
        build_graph(g.d, g.alpha, verts, g.bnd_labels)


def test_text_round_trip():
    for g in (unit_white(0), bracket_graph(1), dumbbell(2), lollipop(3),
              loop_graph(1)):
        h = graph_from_text(graph_to_text(g))
        assert h == g


def test_relabel_whites_is_involutive():
    g = bracket_graph(1)
    swap = {1: 2, 2: 1}
    h = relabel_whites(relabel_whites(g, swap), swap)
    assert h == g


def test_canonical_form_identifies_relabelings():
    g = dumbbell(1)
    h = relabel_whites(g, {1: 2, 2: 1})
    assert g.canonical()[0] == h.canonical()[0]


def test_formal_sum_cancellation():
    g = unit_white(1)
    s = FormalSum([(g, 1)]) + FormalSum([(g, -1)])
    assert s.is_zero()


def test_formal_sum_orientation_sign_folds():
    g = bracket_graph(1)
    flipped = build_graph(g.d, g.alpha, g.vertices, g.bnd_labels,
                          or_sign=-g.or_sign)
    s = FormalSum([(g, 1)]) + FormalSum([(flipped, 1)])
    assert s.is_zero()


def test_validate_accepts_standard_graphs():
    for g in (unit_white(0), bracket_graph(2), dumbbell(3), loop_graph(0)):
        validate(g)
