"""Properadic composition and the twisted differential on ribbon graphs.

Composition substitutes a boundary of one graph into a white vertex of
another: the vertex disappears and its darts are redistributed over the
corners of that boundary in every way compatible with both cyclic orders.
The same engine drives self-gluing (a boundary into a vertex of the same
graph) and the differential: composition with the one-edge white-black graph
at every boundary and white vertex, plus splitting of each black vertex by
the one-edge black-black graph, the latter weighted 1/2 against the double
count of ordered splittings.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from .ribbon import (BLACK, WHITE, FormalSum, GraphError, LabelError,
                     RibbonGraph, dumbbell, lollipop)


class CompositionError(GraphError):
    pass


def _placements(hd, q):
    """Distributions of the cyclically ordered darts `hd` over q corners.

    Yields lists `content` of length q; content[c] is the sequence of darts
    landing in corner c, in boundary-walk order.  The first dart is the
    cyclic reference: it may land in any corner, the others follow weakly
    ordered behind it (an offset of q means corner 0 of the walk relative to
    the reference, but placed just before the reference dart).
    """
    p = len(hd)
    if p == 0:
        yield [[] for _ in range(q)]
        return
    for t in range(q):
        for offs in combinations_with_replacement(range(q + 1), p - 1):
            content = [[] for _ in range(q)]
            before = []          # offset q: just before the reference dart
            for h, o in zip(hd[1:], offs):
                if o == q:
                    before.append(h)
                else:
                    content[(t + o) % q].append(h)
            content[t] = before + [hd[0]] + content[t]
            yield content


def _substitute(host, v_idx, guest, b_label, white_map, bnd_map):
    """All gluings of guest's boundary b_label into host vertex v_idx.

    Pass guest=None to glue a boundary of the host into one of its own
    vertices.  white_map / bnd_map translate (origin, old_label) pairs to the
    labels of the result, where origin is "h" or "g"; the substituted vertex
    and boundary must not appear in them.  Returns a FormalSum.
    """
    is_self = guest is None
    if is_self:
        guest = host
        shift = 0
    else:
        shift = len(host.alpha)
    hv = host.vertices[v_idx]
    hd = list(hv[2])
    p = len(hd)

    bcycle = None
    for cyc, lab in zip(guest.boundaries(), guest.bnd_labels):
        if lab == b_label:
            bcycle = cyc
    if bcycle is None:
        raise LabelError("no boundary labeled %d" % b_label)
    if is_self and set(hd) & set(bcycle):
        raise CompositionError("vertex meets the boundary being glued into it")

    dartless_guest = not guest.alpha
    anchors = [guest.alpha[b] + shift for b in bcycle]

    # fixed vertex list: host vertices minus v, then guest vertices; white
    # labels are translated here so host and guest labels cannot collide
    base = []
    owner = {}  # anchor dart -> index into base
    for i, (c, l, ds) in enumerate(host.vertices):
        if i == v_idx:
            continue
        lab = white_map[("h", l)] if c == WHITE else 0
        base.append((c, lab, list(ds)))
    if not is_self:
        for c, l, ds in guest.vertices:
            lab = white_map[("g", l)] if c == WHITE else 0
            base.append((c, lab, [x + shift for x in ds]))
    for t, (c, l, ds) in enumerate(base):
        for x in ds:
            owner[x] = t

    if is_self:
        alpha2 = host.alpha
    else:
        alpha2 = tuple(host.alpha) + tuple(x + shift for x in guest.alpha)

    # choose placements
    if dartless_guest:
        if is_self:
            raise CompositionError("self-gluing needs darts on the boundary")
        # the single corner is the whole rotation of the unique guest vertex
        all_placements = [None]
    else:
        all_placements = _placements(hd, len(anchors))

    out = FormalSum()
    coeff = host.or_sign * (1 if is_self else guest.or_sign)
    for content in all_placements:
        verts = [(c, l, list(ds)) for c, l, ds in base]
        if content is None:
            gi = len(verts) - 1  # the dartless guest vertex sits last
            verts[gi] = (verts[gi][0], verts[gi][1], list(hd))
        else:
            for u, seq in zip(anchors, content):
                if not seq:
                    continue
                c, l, rot = verts[owner[u]]
                pos = rot.index(u) + 1
                verts[owner[u]] = (c, l, rot[:pos] + seq + rot[pos:])
        raw = RibbonGraph(host.d, alpha2, verts, (), or_sign=1)
        labels = _boundary_labels(host, guest, b_label, is_self, shift, raw,
                                  bnd_map)
        raw = RibbonGraph(host.d, alpha2, raw.vertices, labels, or_sign=1)
        out.add(raw, coeff)
    return out


def _boundary_labels(host, guest, b_label, is_self, shift, raw, bnd_map):
    """Assign labels to the boundaries of the assembled graph.

    Each new cycle continues exactly one surviving boundary of the inputs:
    old boundaries are tracked through the darts they own (the consumed
    boundary owns none after the gluing).
    """
    origin_of_dart = {}
    for cyc, lab in zip(host.boundaries(), host.bnd_labels):
        if is_self and lab == b_label:
            continue
        for x in cyc:
            origin_of_dart[x] = ("h", lab)
    if not is_self:
        for cyc, lab in zip(guest.boundaries(), guest.bnd_labels):
            if lab == b_label:
                continue
            for x in cyc:
                origin_of_dart[x + shift] = ("g", lab)
    empty_origin = None
    for cyc, lab in zip(host.boundaries(), host.bnd_labels):
        if not cyc:
            empty_origin = ("h", lab)
    labels = []
    for cyc in raw.boundaries():
        origins = {origin_of_dart[x] for x in cyc if x in origin_of_dart}
        if not origins and empty_origin is not None:
            origins = {empty_origin}
        if len(origins) != 1:
            raise CompositionError(
                "boundary tracking failed: new cycle continues %d old ones"
                % len(origins))
        labels.append(bnd_map[origins.pop()])
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise CompositionError("boundary labels after gluing are not 1..m")
    return tuple(labels)


def compose(g1, i, g2, j):
    """Substitute boundary j of g2 into white vertex i of g1.

    Output labels: boundaries of g1 keep their labels, boundaries of g2
    except j follow in order; white vertices of g1 except i close ranks,
    white vertices of g2 follow in order.  Returns a FormalSum.
    """
    if g1.d != g2.d:
        raise CompositionError("mixed d")
    v_idx = g1.white_vertex(i)
    n1, m1 = g1.n_white, g1.n_boundaries
    white_map, bnd_map = {}, {}
    for l in range(1, n1 + 1):
        if l != i:
            white_map[("h", l)] = l if l < i else l - 1
    for l in range(1, g2.n_white + 1):
        white_map[("g", l)] = n1 - 1 + l
    for l in range(1, m1 + 1):
        bnd_map[("h", l)] = l
    r = 0
    for l in range(1, g2.n_boundaries + 1):
        if l != j:
            r += 1
            bnd_map[("g", l)] = m1 + r
    return _substitute(g1, v_idx, g2, j, white_map, bnd_map)


def self_glue(g, i, j):
    """Substitute boundary j of g into its own white vertex i.

    The vertex must not meet the boundary.  Raises CompositionError
    otherwise.  Genus goes up by one; whites except i and boundaries except
    j close ranks.
    """
    v_idx = g.white_vertex(i)
    white_map, bnd_map = {}, {}
    for l in range(1, g.n_white + 1):
        if l != i:
            white_map[("h", l)] = l if l < i else l - 1
    for l in range(1, g.n_boundaries + 1):
        if l != j:
            bnd_map[("h", l)] = l if l < j else l - 1
    return _substitute(g, v_idx, None, j, white_map, bnd_map)


def _split_black(g, v_idx):
    """Ordered splittings of black vertex v_idx by the one-edge black-black
    graph; each unordered splitting is produced twice."""
    db = dumbbell(g.d)
    white_map = {("h", l): l for l in range(1, g.n_white + 1)}
    bnd_map = {("h", l): l for l in range(1, g.n_boundaries + 1)}
    return _substitute(g, v_idx, db, 1, white_map, bnd_map)


def delta_attach(g):
    """Differential term attaching a black leaf in every boundary corner."""
    lol = lollipop(g.d)
    out = FormalSum()
    for i in range(1, g.n_boundaries + 1):
        # lollipop's single boundary becomes the new boundary i
        term = compose(lol, 1, g, i)
        remap = {1: i}
        r = 0
        for l in range(1, g.n_boundaries + 1):
            if l != i:
                r += 1
                remap[1 + r] = l
        out += _remap_boundaries(term, remap)
    return out


def delta_split_white(g):
    """Differential term splitting every white vertex against a black leaf,
    including the sign prefactor."""
    lol = lollipop(g.d)
    sgn = -1 if g.degree() % 2 else 1
    out = FormalSum()
    for j in range(1, g.n_white + 1):
        term = compose(g, j, lol, 1)
        remap = {}
        for l in range(1, g.n_white + 1):
            if l < j:
                remap[l] = l
            elif l > j:
                remap[l - 1] = l
        remap[g.n_white] = j  # the lollipop's white takes the old slot
        out += _remap_whites(term, remap).scaled(-sgn)
    return out


def delta_split_black(g):
    """Differential term splitting every black vertex in two, including the
    sign prefactor and the 1/2 from double counting."""
    sgn = -1 if g.degree() % 2 else 1
    out = FormalSum()
    for pos, v_idx in enumerate(g.black_indices()):
        f = Fraction(-sgn, 2)
        if g.d % 2:
            # for odd d the black vertex ordering is part of the
            # orientation; splitting the vertex in position pos inserts
            # the new pair against that order
            if (pos + g.n_black) % 2 == 0:
                f = -f
        out += _split_black(g, v_idx).scaled(f)
    return out


def twist_differential(g):
    """The differential of the twisted ribbon graph properad.

    d(G) = sum_i (wb ∘_i G)  -  (-1)^{|G|} sum_j (G ∘_j wb)
           -  (-1)^{|G|} (1/2) sum_{black v} split(v)
    where wb is the one-edge white-black graph, the first sum attaches a
    black leaf in every corner of every boundary, the second splits every
    white vertex against a new black leaf, and the third splits every black
    vertex.  Exact over Q; zero-orientation terms drop out.
    """
    out = delta_attach(g)
    out += delta_split_white(g)
    out += delta_split_black(g)
    return out


_DIFF_CACHE = {}


def twist_differential_cached(g):
    """Memoized twist_differential, keyed by the canonical form."""
    can, sign = g.canonical()
    if sign == 0:
        return FormalSum()
    fs = _DIFF_CACHE.get(can._key)
    if fs is None:
        fs = twist_differential(can)
        _DIFF_CACHE[can._key] = fs
    return fs if sign == 1 else fs.scaled(-1)


def _remap_boundaries(fs, remap):
    out = FormalSum()
    for gr, c in fs.terms.items():
        labels = tuple(remap[l] for l in gr.bnd_labels)
        out.add(RibbonGraph(gr.d, gr.alpha, gr.vertices, labels, gr.or_sign), c)
    return out


def _remap_whites(fs, remap):
    out = FormalSum()
    for gr, c in fs.terms.items():
        verts = [(cc, (remap[l] if cc == WHITE else 0), ds)
                 for cc, l, ds in gr.vertices]
        out.add(RibbonGraph(gr.d, gr.alpha, verts, gr.bnd_labels, gr.or_sign), c)
    return out
