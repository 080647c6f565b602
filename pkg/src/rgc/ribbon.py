"""Ribbon graphs as combinatorial maps with signed orientation data.

A graph is a fixed-point-free involution `alpha` pairing 2E darts into edges
together with a rotation `sigma` whose cycles are the vertices (cyclic order
of darts).  Boundaries are the cycles of sigma \\circ alpha.  White vertices
carry labels 1..n, black vertices are unlabeled, boundaries carry labels 1..m.

Orientation data is kept normalized against the current dart labeling:

* d even: the ordering of edges, normalized to increasing minimal dart;
* d odd: a direction per edge (tail = smaller dart) and an ordering of the
  black vertices (increasing minimal dart).

Deviations from the normalized datum are absorbed into a single or_sign in
{+1, -1}.  Graphs whose automorphisms reverse orientation are zero; the
canonicalization reports those with sign 0.
"""

from collections import deque
from fractions import Fraction

WHITE = "w"
BLACK = "b"


class GraphError(Exception):
    pass


class InvolutionError(GraphError):
    pass


class LabelError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class BoundaryMismatch(GraphError):
    pass


class NonIntegralGenus(GraphError):
    pass


def _parity(perm):
    """Sign of a permutation given as a list of images of 0..len-1."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


class RibbonGraph:
    """Immutable ribbon graph.  Use build_graph for validated construction."""

    __slots__ = ("d", "alpha", "vertices", "bnd_labels", "or_sign",
                 "_key", "_sigma", "_boundaries", "_hash")

    def __init__(self, d, alpha, vertices, bnd_labels, or_sign=1):
        self.d = d
        self.alpha = tuple(alpha)
        self.vertices = tuple((c, l, tuple(ds)) for (c, l, ds) in vertices)
        self.bnd_labels = tuple(bnd_labels)
        self.or_sign = or_sign
        self._sigma = None
        self._boundaries = None
        self._key = (d, self.alpha, self.vertices, self.bnd_labels)
        self._hash = hash(self._key)

    # -- basic structure -------------------------------------------------

    @property
    def sigma(self):
        if self._sigma is None:
            sig = [0] * len(self.alpha)
            for _, _, ds in self.vertices:
                for t, x in enumerate(ds):
                    sig[x] = ds[(t + 1) % len(ds)]
            self._sigma = tuple(sig)
        return self._sigma

    def boundaries(self):
        """Cycles of sigma(alpha(.)), each rotated to start at its minimal
        dart, sorted by minimal dart.  A dartless graph has one empty cycle."""
        if self._boundaries is None:
            if not self.alpha:
                self._boundaries = ((),)
            else:
                sig = self.sigma
                alf = self.alpha
                seen = [False] * len(alf)
                cycles = []
                for s in range(len(alf)):
                    if seen[s]:
                        continue
                    cyc = []
                    x = s
                    while not seen[x]:
                        seen[x] = True
                        cyc.append(x)
                        x = sig[alf[x]]
                    cycles.append(tuple(cyc))
                self._boundaries = tuple(sorted(cycles))
        return self._boundaries

    @property
    def n_edges(self):
        return len(self.alpha) // 2

    @property
    def n_white(self):
        return sum(1 for c, _, _ in self.vertices if c == WHITE)

    @property
    def n_black(self):
        return sum(1 for c, _, _ in self.vertices if c == BLACK)

    @property
    def n_boundaries(self):
        return len(self.boundaries())

    def genus(self):
        e, v, b = self.n_edges, len(self.vertices), self.n_boundaries
        if (e - v - b) % 2:
            raise NonIntegralGenus("e - v - b = %d is odd" % (e - v - b))
        return 1 + (e - v - b) // 2

    def degree(self):
        """Cohomological degree: (1 - d) * edges + d * black vertices."""
        return (1 - self.d) * self.n_edges + self.d * self.n_black

    def bidegree(self):
        return (self.genus(), self.n_boundaries, self.n_white, self.n_black)

    def white_vertex(self, label):
        for idx, (c, l, _) in enumerate(self.vertices):
            if c == WHITE and l == label:
                return idx
        raise LabelError("no white vertex labeled %d" % label)

    def boundary_cycle(self, label):
        for cyc, l in zip(self.boundaries(), self.bnd_labels):
            if l == label:
                return cyc
        raise LabelError("no boundary labeled %d" % label)

    def black_indices(self):
        return [i for i, (c, _, _) in enumerate(self.vertices) if c == BLACK]

    # -- dictionary protocol ----------------------------------------------

    def __eq__(self, other):
        return isinstance(other, RibbonGraph) and self._key == other._key \
            and self.or_sign == other.or_sign

    def __hash__(self):
        return self._hash

    def key(self):
        return self._key

    def __repr__(self):
        return "RibbonGraph(d=%d, E=%d, %s)" % (self.d, self.n_edges, self.short())

    def short(self):
        g, m, n, k = self.bidegree()
        return "g=%d m=%d n=%d k=%d" % (g, m, n, k)

    # -- relabeling and canonical form --------------------------------------

    def relabel_darts(self, mapping):
        """Apply a dart bijection; returns (graph, sign) where sign is the
        orientation change against the normalized datum."""
        nd = len(self.alpha)
        alpha2 = [0] * nd
        for x in range(nd):
            alpha2[mapping[x]] = mapping[self.alpha[x]]
        verts2 = []
        for c, l, ds in self.vertices:
            nds = tuple(mapping[x] for x in ds)
            if nds:
                t = nds.index(min(nds))
                nds = nds[t:] + nds[:t]
            verts2.append((c, l, nds))
        verts2.sort(key=lambda v: v[2][0] if v[2] else -1)
        # carry boundary labels through the relabeling
        old_bnds = self.boundaries()
        label_of_dart = {}
        for cyc, l in zip(old_bnds, self.bnd_labels):
            for x in cyc:
                label_of_dart[mapping[x]] = l
        g2 = RibbonGraph(self.d, alpha2, verts2, (), or_sign=1)
        if self.alpha:
            labels2 = tuple(label_of_dart[cyc[0]] for cyc in g2.boundaries())
        else:
            labels2 = self.bnd_labels
        g2 = RibbonGraph(self.d, alpha2, verts2, labels2, or_sign=1)
        return g2, self._relabel_sign(mapping)

    def _relabel_sign(self, mapping):
        if self.d % 2 == 0:
            # parity of the induced permutation of the edge ordering
            edges = []
            for x in range(len(self.alpha)):
                if x < self.alpha[x]:
                    edges.append(x)
            order_new = sorted(range(len(edges)),
                               key=lambda t: min(mapping[edges[t]],
                                                 mapping[self.alpha[edges[t]]]))
            inv = [0] * len(edges)
            for pos, t in enumerate(order_new):
                inv[t] = pos
            return _parity(inv)
        sign = 1
        for x in range(len(self.alpha)):
            y = self.alpha[x]
            if x < y and mapping[x] > mapping[y]:
                sign = -sign
        blacks = [i for i, (c, _, _) in enumerate(self.vertices) if c == BLACK and self.vertices[i][2]]
        order_new = sorted(range(len(blacks)),
                           key=lambda t: min(mapping[x] for x in self.vertices[blacks[t]][2]))
        inv = [0] * len(blacks)
        for pos, t in enumerate(order_new):
            inv[t] = pos
        return sign * _parity(inv)

    def _bfs_mapping(self, root):
        nd = len(self.alpha)
        sig = self.sigma
        alf = self.alpha
        mapping = [-1] * nd
        mapping[root] = 0
        nxt = 1
        queue = deque((root,))
        while queue:
            x = queue.popleft()
            for y in (sig[x], alf[x]):
                if mapping[y] < 0:
                    mapping[y] = nxt
                    nxt += 1
                    queue.append(y)
        if nxt != nd:
            raise DisconnectedError("graph is not connected")
        return mapping

    def canonical(self):
        """Canonical representative and sign.

        Returns (graph, sign) with graph.or_sign == 1 and sign in
        {-1, 0, +1}; sign 0 means the isomorphism class is the zero vector
        (some automorphism reverses orientation).
        """
        if not self.alpha:
            return RibbonGraph(self.d, (), self.vertices, self.bnd_labels), self.or_sign
        nd = len(self.alpha)
        sig = self.sigma
        alf = self.alpha
        # per-dart structure shared by all roots
        vcol = [0] * nd      # white label, or -1 for black
        for c, l, ds in self.vertices:
            code = l if c == WHITE else -1
            for x in ds:
                vcol[x] = code
        blab = [0] * nd
        for cyc, l in zip(self.boundaries(), self.bnd_labels):
            for x in cyc:
                blab[x] = l
        # only roots minimizing the first encoding entry can win; that
        # entry is the BFS index of alpha(root), which is 1 exactly when
        # sigma(root) is the root itself or its edge partner
        head_inv = [1 if (sig[r] == r or sig[r] == alf[r]) else 2
                    for r in range(nd)]
        m0 = min(head_inv)
        best = None
        best_alpha = None
        best_mappings = []
        mapping = [0] * nd
        order = [0] * nd
        for root in range(nd):
            if head_inv[root] != m0:
                continue
            # BFS relabeling from this root
            for i in range(nd):
                mapping[i] = -1
            mapping[root] = 0
            order[0] = root
            nxt = 1
            head = 0
            while head < nxt:
                x = order[head]
                head += 1
                y = sig[x]
                if mapping[y] < 0:
                    mapping[y] = nxt
                    order[nxt] = y
                    nxt += 1
                y = alf[x]
                if mapping[y] < 0:
                    mapping[y] = nxt
                    order[nxt] = y
                    nxt += 1
            if nxt != nd:
                raise DisconnectedError("graph is not connected")
            enc_a = [mapping[alf[o]] for o in order]
            if best_alpha is not None and enc_a > best_alpha:
                continue
            enc = tuple(enc_a
                        + [mapping[sig[o]] for o in order]
                        + [vcol[o] for o in order]
                        + [blab[o] for o in order])
            if best is None or enc < best:
                best = enc
                best_alpha = enc_a
                best_mappings = [tuple(mapping)]
            elif enc == best:
                best_mappings.append(tuple(mapping))
        g2, sign0 = self.relabel_darts(best_mappings[0])
        for mp in best_mappings[1:]:
            if self._relabel_sign(mp) != sign0:
                return g2, 0
        return g2, sign0 * self.or_sign

    def is_canonical_zero(self):
        return self.canonical()[1] == 0


def build_graph(d, alpha, vertices, bnd_labels, or_sign=1, check=True):
    """Validated construction.

    alpha: sequence with alpha[alpha[x]] == x, no fixed points.
    vertices: iterable of (color, label, darts) with darts in rotation order;
      white labels must be 1..n, black labels are ignored (use 0).
    bnd_labels: boundary labels listed against the boundary cycles sorted by
      minimal dart (see RibbonGraph.boundaries); must be 1..m.
    """
    verts = []
    for c, l, ds in vertices:
        ds = tuple(ds)
        if ds:
            t = ds.index(min(ds))
            ds = ds[t:] + ds[:t]
        verts.append((c, (l if c == WHITE else 0), ds))
    verts.sort(key=lambda v: v[2][0] if v[2] else -1)
    g = RibbonGraph(d, alpha, verts, bnd_labels, or_sign)
    if check:
        validate(g)
    return g


def validate(g):
    nd = len(g.alpha)
    for x in range(nd):
        if g.alpha[x] == x or g.alpha[g.alpha[x]] != x:
            raise InvolutionError("alpha is not a fixed-point-free involution")
    seen = set()
    for _, _, ds in g.vertices:
        for x in ds:
            if x in seen or not (0 <= x < nd):
                raise InvolutionError("vertex rotations do not partition the darts")
            seen.add(x)
    if len(seen) != nd:
        raise InvolutionError("vertex rotations do not partition the darts")
    if nd == 0:
        if len(g.vertices) != 1:
            raise DisconnectedError("a dartless graph must be a single vertex")
    else:
        if any(not ds for _, _, ds in g.vertices):
            raise GraphError("zero-valent vertices are only allowed as a whole graph")
        g._bfs_mapping(0)  # raises DisconnectedError if not connected
    wl = sorted(l for c, l, _ in g.vertices if c == WHITE)
    if wl != list(range(1, len(wl) + 1)):
        raise LabelError("white labels must be exactly 1..n, got %s" % (wl,))
    bl = sorted(g.bnd_labels)
    if len(g.bnd_labels) != g.n_boundaries:
        raise BoundaryMismatch("expected %d boundary labels, got %d"
                               % (g.n_boundaries, len(g.bnd_labels)))
    if bl != list(range(1, len(bl) + 1)):
        raise LabelError("boundary labels must be exactly 1..m, got %s" % (bl,))
    g.genus()  # raises NonIntegralGenus (never for a genuine map)
    if g.or_sign not in (1, -1):
        raise GraphError("or_sign must be +1 or -1")
    return g


def relabel_whites(g, mapping):
    """Relabel white vertices; mapping is a dict old label -> new label."""
    verts = [(c, (mapping[l] if c == WHITE else 0), ds)
             for c, l, ds in g.vertices]
    return RibbonGraph(g.d, g.alpha, verts, g.bnd_labels, g.or_sign)


def relabel_boundaries(g, mapping):
    labels = tuple(mapping[l] for l in g.bnd_labels)
    return RibbonGraph(g.d, g.alpha, g.vertices, labels, g.or_sign)


class FormalSum:
    """Finite Q-linear combination of canonical ribbon graphs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for gr, coeff in (terms.items() if isinstance(terms, dict) else terms):
                self.add(gr, coeff)

    def add(self, graph, coeff=1):
        coeff = Fraction(coeff)
        if not coeff:
            return self
        can, sign = graph.canonical()
        if sign == 0:
            return self
        c = self.terms.get(can, Fraction(0)) + sign * coeff
        if c:
            self.terms[can] = c
        elif can in self.terms:
            del self.terms[can]
        return self

    def __iadd__(self, other):
        for gr, c in other.terms.items():
            cc = self.terms.get(gr, Fraction(0)) + c
            if cc:
                self.terms[gr] = cc
            elif gr in self.terms:
                del self.terms[gr]
        return self

    def __add__(self, other):
        out = FormalSum()
        out.terms = dict(self.terms)
        out += other
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        c = Fraction(c)
        out = FormalSum()
        if c:
            out.terms = {g: v * c for g, v in self.terms.items()}
        return out

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].key()))

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def map_terms(self, fn):
        """Apply fn(graph) -> FormalSum linearly."""
        out = FormalSum()
        for gr, c in self.terms.items():
            out += fn(gr).scaled(c)
        return out

    def __repr__(self):
        if not self.terms:
            return "FormalSum(0)"
        return "FormalSum(%d terms)" % len(self.terms)


# -- text format ------------------------------------------------------------

def graph_to_text(g):
    """One-line text form, round-tripped by graph_from_text."""
    gg, m, n, k = g.bidegree()
    head = "%d %d %d %d %d" % (g.d, gg, m, n, k)
    pairs = " ".join("%d-%d" % (x, g.alpha[x])
                     for x in range(len(g.alpha)) if x < g.alpha[x])
    cycs = []
    cols = []
    for c, l, ds in g.vertices:
        cycs.append("(" + " ".join(str(x) for x in ds) + ")")
        cols.append("W%d" % l if c == WHITE else "B")
    bnd = " ".join(str(l) for l in g.bnd_labels)
    sign = "+" if g.or_sign > 0 else "-"
    return " / ".join([head, "alpha: " + pairs, "sigma: " + "".join(cycs),
                       "colors: " + " ".join(cols), "boundaries: " + bnd, sign])


def graph_from_text(line):
    parts = [p.strip() for p in line.strip().split(" / ")]
    if len(parts) != 6:
        raise GraphError("expected 6 sections, got %d" % len(parts))
    d = int(parts[0].split()[0])
    alpha_part = parts[1]
    if not alpha_part.startswith("alpha:"):
        raise GraphError("missing alpha section")
    pair_text = alpha_part[len("alpha:"):].split()
    nd = 2 * len(pair_text)
    alpha = [0] * nd
    for pt in pair_text:
        a, b = (int(t) for t in pt.split("-"))
        alpha[a], alpha[b] = b, a
    sig_part = parts[2]
    if not sig_part.startswith("sigma:"):
        raise GraphError("missing sigma section")
    body = sig_part[len("sigma:"):].strip()
    cycles = []
    if body:
        for chunk in body.strip(")").split(")"):
            chunk = chunk.strip().lstrip("(")
            cycles.append(tuple(int(t) for t in chunk.split()) if chunk else ())
    col_part = parts[3]
    if not col_part.startswith("colors:"):
        raise GraphError("missing colors section")
    cols = col_part[len("colors:"):].split()
    if len(cols) != len(cycles):
        raise GraphError("colors do not match sigma cycles")
    vertices = []
    for col, cyc in zip(cols, cycles):
        if col == "B":
            vertices.append((BLACK, 0, cyc))
        elif col.startswith("W"):
            vertices.append((WHITE, int(col[1:]), cyc))
        else:
            raise GraphError("bad color token %r" % col)
    bnd_part = parts[4]
    if not bnd_part.startswith("boundaries:"):
        raise GraphError("missing boundaries section")
    bnd = tuple(int(t) for t in bnd_part[len("boundaries:"):].split())
    sign = {"+": 1, "-": -1}.get(parts[5])
    if sign is None:
        raise GraphError("bad sign token %r" % parts[5])
    return build_graph(d, alpha, vertices, bnd, or_sign=sign)


# -- elementary graphs -------------------------------------------------------

def unit_white(d):
    """The dartless white vertex: identity for composition."""
    return build_graph(d, (), [(WHITE, 1, ())], (1,))


def lone_black(d):
    return build_graph(d, (), [(BLACK, 0, ())], (1,))


def lollipop(d):
    """One white vertex joined to one black vertex by a single edge."""
    return build_graph(d, (1, 0), [(WHITE, 1, (0,)), (BLACK, 0, (1,))], (1,))


def dumbbell(d):
    """Two black vertices joined by a single edge."""
    return build_graph(d, (1, 0), [(BLACK, 0, (0,)), (BLACK, 0, (1,))], (1,))


def bracket_graph(d):
    """Two white vertices joined by a single edge; one boundary."""
    return build_graph(d, (1, 0), [(WHITE, 1, (0,)), (WHITE, 2, (1,))], (1,))


def loop_graph(d):
    """One white vertex with a loop; two boundaries."""
    return build_graph(d, (1, 0), [(WHITE, 1, (0, 1))], (1, 2))
