"""String topology quotient of the chain gravity complex.

The ambient complex is the "chgrav" family (black vertices at least
trivalent).  The ideal is spanned by graphs with a black vertex of valence
four or more, or with a boundary that meets no white vertex, together with
the differential images of such graphs.  The quotient carries an induced
differential; on the quotient basis (graphs with all black vertices exactly
trivalent and every boundary touching a white vertex) it agrees with a
simple combinatorial rule: split a white vertex against a new trivalent
black vertex and discard ideal terms.
"""

from . import linalg
from .complexes import differential_matrix, family_complex
from .families import enumerate_basis
from .properad import delta_split_white
from .ribbon import BLACK, WHITE, FormalSum


def has_fat_black(g):
    """True when some black vertex has valence four or more."""
    return any(c == BLACK and len(ds) >= 4 for c, l, ds in g.vertices)


def has_all_black_boundary(g):
    """True when some boundary meets only black vertices."""
    owner_white = {}
    for c, l, ds in g.vertices:
        for x in ds:
            owner_white[x] = (c != BLACK)
    for cyc in g.boundaries():
        if not any(owner_white[x] for x in cyc):
            return True
    return False


def is_ideal(g):
    return has_fat_black(g) or has_all_black_boundary(g)


def st_basis(d, g, m, n, k):
    """Quotient basis: non-ideal chgrav graphs of the given slice."""
    return [gr for gr in enumerate_basis("chgrav", d, g, m, n, k)
            if not is_ideal(gr)]


def st_quotient(d, g, m, n, kmax):
    """The quotient complex of the (g; m, n) chgrav slice by the ideal.

    Returns (bases_by_k, quotient) where quotient is a
    linalg.QuotientComplex whose rep_coords index into the ambient bases.
    Coordinates of ideal graphs are preferred as pivots, so the transversal
    is spanned by the non-ideal graphs whenever possible.
    """
    bases, dims, mats = family_complex("chgrav", d, g, m, n, kmax)
    ideal_flags = {k: [is_ideal(gr) for gr in bases[k]]
                   for k in range(kmax + 1)}
    ideal_by_k = {}
    for k in range(kmax + 1):
        vecs = [{i: 1} for i, flag in enumerate(ideal_flags[k]) if flag]
        if k > 0:
            mat = mats.get(k - 1)
            if mat is not None:
                for i, flag in enumerate(ideal_flags[k - 1]):
                    if flag:
                        col = mat.column(i)
                        if col:
                            vecs.append(col)
        ideal_by_k[k] = vecs

    def priority(k, j):
        return (0 if ideal_flags[k][j] else 1, j)

    quot = linalg.quotient_complex(dims, mats, ideal_by_k, kmax,
                                   priority=priority)
    return bases, quot


def st_cohomology(d, g, m, n, kmax, coeff="auto"):
    """Cohomology table of the string topology quotient complex."""
    _, quot = st_quotient(d, g, m, n, kmax)
    return linalg.cohomology_dims(quot.dims, quot.matrices, kmax,
                                  coeff=coeff)


def direct_differential(g):
    """Combinatorial differential on the quotient basis.

    Splits every white vertex against a new trivalent black vertex (the
    white-split term of the ambient differential keeping only terms where
    the new black vertex picks up exactly two old darts) and discards ideal
    graphs.  Only valid on non-ideal chgrav graphs.
    """
    out = FormalSum()
    for h, c in delta_split_white(g).terms.items():
        if all(len(ds) == 3 for cc, l, ds in h.vertices if cc == BLACK) \
                and not has_all_black_boundary(h):
            out.add(h, c)
    return out


def st_matrix_direct(src_basis, dst_basis):
    """Matrix of the direct combinatorial rule between quotient bases."""
    return differential_matrix(src_basis, dst_basis,
                               diff=direct_differential)


def symmetrize_labels(g, d=None):
    """Sum over all white and boundary relabelings of a graph.

    Signed by both permutation parities for odd d, plain sum for even d.
    Which parity yields nonzero classes depends on the orientation
    convention (here: edge directions plus black vertex order for odd d,
    edge order for even d); with this choice the signed sum is the one
    that survives for odd d.  The result is S_n x S_m (anti)invariant, so
    label choices can be dropped from the description of the class.
    """
    from itertools import permutations

    from .ribbon import relabel_boundaries, relabel_whites
    if d is None:
        d = g.d
    out = FormalSum()
    for wperm in permutations(range(1, g.n_white + 1)):
        wmap = {i + 1: w for i, w in enumerate(wperm)}
        gw = relabel_whites(g, wmap)
        for bperm in permutations(range(1, g.n_boundaries + 1)):
            bmap = {i + 1: b for i, b in enumerate(bperm)}
            sign = 1
            if d % 2:
                sign = _perm_sign(wperm) * _perm_sign(bperm)
            out.add(relabel_boundaries(gw, bmap), sign)
    return out


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _one_black_graph(d, white_darts):
    """One trivalent black vertex on darts 0, 2, 4 plus the given whites."""
    from .ribbon import RibbonGraph, build_graph
    verts = [(BLACK, 0, (0, 2, 4))]
    for i, ds in enumerate(white_darts):
        verts.append((WHITE, i + 1, tuple(ds)))
    alpha = (1, 0, 3, 2, 5, 4)
    probe = RibbonGraph(d, alpha, verts, ())
    return build_graph(d, alpha, verts,
                       tuple(range(1, probe.n_boundaries + 1)))


def quartette(d):
    """Four symmetrized one-black-vertex classes of the quotient complex.

    Returns a list of (g, m, n, k, FormalSum) entries: the trivalent black
    vertex joined to three whites (one boundary), to one white by three
    edges in the planar way (three boundaries), to two whites by a double
    and a single edge (two boundaries), and to one white by three edges in
    the genus one way (one boundary).
    """
    three_whites = _one_black_graph(d, [(1,), (3,), (5,)])
    planar_triple = None
    genus_one_triple = None
    for rot in ((1, 3, 5), (1, 5, 3)):
        cand = _one_black_graph(d, [rot])
        if cand.n_boundaries == 3:
            planar_triple = cand
        elif cand.n_boundaries == 1:
            genus_one_triple = cand
    double_single = _one_black_graph(d, [(1, 3), (5,)])
    out = []
    for gr in (three_whites, planar_triple, double_single, genus_one_triple):
        out.append((gr.genus(), gr.n_boundaries, gr.n_white, 1,
                    symmetrize_labels(gr)))
    return out
