"""Lie bialgebra structure carried by the one-edge graphs.

The one-edge two-white graph acts as a bracket (two inputs, one output) and
the one-white loop graph as a cobracket (one input, two outputs), both of
degree 1 - d.  Their images satisfy the involutive Lie bialgebra relations
inside the ribbon graph properad: Jacobi, co-Jacobi, the five-term
compatibility between bracket and cobracket, and bracket after cobracket
equals zero.  The functions below build the corresponding relation images
as formal sums; all of them must vanish identically.
"""

from .properad import compose, self_glue
from .ribbon import FormalSum, bracket_graph, loop_graph, relabel_boundaries, \
    relabel_whites


def _relabel_sum(fs, white_map=None, bnd_map=None):
    out = FormalSum()
    for gr, c in fs.terms.items():
        if white_map:
            gr = relabel_whites(gr, white_map)
        if bnd_map:
            gr = relabel_boundaries(gr, bnd_map)
        out.add(gr, c)
    return out


def jacobiator(d):
    """Cyclic sum of the double bracket; zero by the Jacobi identity."""
    b = bracket_graph(d)
    base = compose(b, 1, b, 1)
    out = FormalSum()
    for perm in ({1: 1, 2: 2, 3: 3}, {1: 2, 2: 3, 3: 1}, {1: 3, 2: 1, 3: 2}):
        out += _relabel_sum(base, white_map=perm)
    return out


def cojacobiator(d):
    """Cyclic sum of the double cobracket; zero by co-Jacobi."""
    c = loop_graph(d)
    base = compose(c, 1, c, 1)
    out = FormalSum()
    for perm in ({1: 1, 2: 2, 3: 3}, {1: 2, 2: 3, 3: 1}, {1: 3, 2: 1, 3: 2}):
        out += _relabel_sum(base, bnd_map=perm)
    return out


def _zigzag(d, cob_input, leg_output):
    """Bracket applied to one output of the cobracket.

    cob_input: which input feeds the cobracket (the other feeds the
    bracket directly); leg_output: the label of the cobracket output that
    stays free (the bracket output takes the other label).
    """
    b = bracket_graph(d)
    c = loop_graph(d)
    base = compose(b, 1, c, 1)
    other_in = 2 if cob_input == 1 else 1
    other_out = 2 if leg_output == 1 else 1
    # after composition white 1 is the remaining bracket input and white 2
    # the cobracket input; boundary 1 is the bracket output and boundary 2
    # the free cobracket output
    return _relabel_sum(base,
                        white_map={1: other_in, 2: cob_input},
                        bnd_map={1: other_out, 2: leg_output})


def drinfeld_image(d):
    """Five-term compatibility between bracket and cobracket; zero."""
    b = bracket_graph(d)
    c = loop_graph(d)
    s = -1 if d % 2 else 1
    out = compose(c, 1, b, 1)
    out += _zigzag(d, 1, 1)
    out += _zigzag(d, 2, 1).scaled(s)
    out += _zigzag(d, 2, 2)
    out += _zigzag(d, 1, 2).scaled(s)
    return out


def involutivity_image(d):
    """Bracket composed with both outputs of the cobracket; zero."""
    b = bracket_graph(d)
    c = loop_graph(d)
    half = compose(b, 1, c, 1)
    out = FormalSum()
    for gr, coeff in half.terms.items():
        out += self_glue(gr, 1, 2).scaled(coeff)
    return out
