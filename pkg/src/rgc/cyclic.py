"""Cyclic words over a graded space with a pairing, acted on by ribbon graphs.

A GradedSpace is a finite list of letters with integer degrees, a pairing
theta of degree 1 - d obeying theta(w2,w1) = (-1)^(d + |w1||w2|) theta(w1,w2),
and an optional square-zero degree 1 differential compatible with theta.
Cyclic words are stored in a canonical rotation (lexicographically minimal
letter index sequence) with the Koszul sign of the rotation folded into the
coefficient; words equal to minus a rotation of themselves vanish.

A ribbon graph with n white vertices and m boundaries acts on n cyclic
words: every assignment that maps the half-edges of white vertex i
injectively to letters of word i, compatibly with both cyclic orders,
contributes one term.  Letters hit by the two ends of an edge contract via
theta, the remaining corner letters are read off along the boundary walks as
the m output words.  All signs come from one convention implemented in
_evaluate below: reorderings of graded letters, the operator degree of
theta, and the graph's orientation datum (edge order for even d, edge
directions for odd d, deviations absorbed in or_sign).  The convention is
certified by the properad-morphism, chain-map and Lie bialgebra identities
in the test suite, not by matching any printed formula.
"""

from fractions import Fraction
from itertools import combinations, product

from .ribbon import BLACK, WHITE, bracket_graph, loop_graph


class ArityMismatch(Exception):
    pass


class PairingDegreeMismatch(Exception):
    pass


class DegreeError(Exception):
    pass


class GradedSpace:
    """Letters with degrees, a pairing theta, and an optional differential.

    theta maps pairs of letter indices to scalars; diff maps a letter index
    to a dict {letter index: scalar}.  All invariants (degree homogeneity of
    theta, its d-dependent symmetry, diff of degree +1 squaring to zero,
    compatibility of theta with diff) are checked at construction.
    """

    __slots__ = ("d", "deg", "theta", "diff", "names")

    def __init__(self, d, degrees, theta, diff=None, names=None):
        self.d = d
        self.deg = tuple(degrees)
        self.theta = {k: v for k, v in theta.items() if v}
        self.diff = {i: {j: c for j, c in row.items() if c}
                     for i, row in (diff or {}).items()}
        self.diff = {i: row for i, row in self.diff.items() if row}
        self.names = tuple(names) if names else tuple(
            "w%d" % i for i in range(len(self.deg)))
        self._validate()

    @property
    def dim(self):
        return len(self.deg)

    def _validate(self):
        deg = self.deg
        d = self.d
        for (i, j), v in self.theta.items():
            if deg[i] + deg[j] != d - 1:
                raise PairingDegreeMismatch(
                    "theta(%s,%s) nonzero but degrees sum to %d, want %d"
                    % (self.names[i], self.names[j], deg[i] + deg[j], d - 1))
        for i in range(len(deg)):
            for j in range(len(deg)):
                lhs = self.theta.get((j, i), 0)
                rhs = self.theta.get((i, j), 0)
                if lhs != (-1) ** (d + deg[i] * deg[j]) * rhs:
                    raise PairingDegreeMismatch(
                        "theta symmetry fails on (%s,%s)"
                        % (self.names[i], self.names[j]))
        for i, row in self.diff.items():
            for j in row:
                if deg[j] != deg[i] + 1:
                    raise DegreeError("differential is not of degree +1")
        # diff squared
        for i in range(len(deg)):
            acc = {}
            for j, c in self.diff.get(i, {}).items():
                for k, c2 in self.diff.get(j, {}).items():
                    acc[k] = acc.get(k, 0) + c * c2
            if any(acc.values()):
                raise DegreeError("differential does not square to zero")
        # theta(dw1, w2) + (-1)^{|w1|} theta(w1, dw2) = 0
        for i in range(len(deg)):
            for j in range(len(deg)):
                acc = 0
                for k, c in self.diff.get(i, {}).items():
                    acc += c * self.theta.get((k, j), 0)
                for k, c in self.diff.get(j, {}).items():
                    acc += (-1) ** deg[i] * c * self.theta.get((i, k), 0)
                if acc:
                    raise PairingDegreeMismatch(
                        "theta is not compatible with the differential")

    def word_degree(self, word):
        return sum(self.deg[x] for x in word)

    def word_name(self, word):
        return "(" + ",".join(self.names[x] for x in word) + ")"


def cyclic_normalize(degrees, word):
    """Canonical rotation of a cyclic word and its Koszul sign.

    Returns (rotated word, sign); sign 0 when some rotation carries the word
    to minus itself (the word is then zero in the space of cyclic words).
    """
    word = tuple(word)
    k = len(word)
    if k == 0:
        return word, 1
    total = sum(degrees[x] for x in word)
    seen = {}
    cur = word
    s = 1
    for _ in range(k):
        prev = seen.get(cur)
        if prev is not None:
            if prev != s:
                return word, 0
            break
        seen[cur] = s
        a = degrees[cur[0]]
        if (a * (total - a)) % 2:
            s = -s
        cur = cur[1:] + cur[:1]
    else:
        # full cycle: the identity rotation must come back with sign +1
        if s != seen[word]:
            return word, 0
    best = min(seen)
    return best, seen[best]


class WordSum:
    """Linear combination of tuples of canonical cyclic words.

    Keys are tuples of words (one word per output slot); every word is held
    in canonical rotation, the rotation signs living in the coefficients.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space):
        self.space = space
        self.terms = {}

    def add(self, words, coeff=1):
        if not coeff:
            return self
        out = []
        for w in words:
            cw, s = cyclic_normalize(self.space.deg, w)
            if s == 0:
                return self
            coeff = coeff * s
            out.append(cw)
        key = tuple(out)
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = c
        elif key in self.terms:
            del self.terms[key]
        return self

    def __iadd__(self, other):
        for key, c in other.terms.items():
            cc = self.terms.get(key, 0) + c
            if cc:
                self.terms[key] = cc
            elif key in self.terms:
                del self.terms[key]
        return self

    def __add__(self, other):
        out = WordSum(self.space)
        out.terms = dict(self.terms)
        out += other
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        out = WordSum(self.space)
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WordSum) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def degrees(self):
        return sorted({sum(self.space.word_degree(w) for w in key)
                       for key in self.terms})

    def __repr__(self):
        if not self.terms:
            return "WordSum(0)"
        bits = []
        for key, c in sorted(self.terms.items()):
            bits.append("%s %s" % (c, "|".join(
                self.space.word_name(w) for w in key)))
        return "WordSum[" + "; ".join(bits) + "]"


def word_sum(space, word, coeff=1):
    """Single-word sum helper."""
    return WordSum(space).add((tuple(word),), coeff)


def _vertex_assignments(length, valence):
    """Cyclic-order-compatible injections of the vertex half-edges into the
    positions of a word: the image of the first half-edge plus an increasing
    choice of offsets for the rest."""
    if valence > length:
        return
    for s in range(length):
        for rest in combinations(range(1, length), valence - 1):
            yield (s,) + tuple((s + r) % length for r in rest)


def represent(G, space, words, reduced=False):
    """Apply the ribbon graph G to n cyclic words; a WordSum over m-tuples.

    G must be all-white (graphs with black vertices act through an algebra's
    Maurer-Cartan element; see frobenius.act).  With reduced=True, terms
    producing an empty output word are dropped.
    """
    if G.d != space.d:
        raise PairingDegreeMismatch(
            "graph parameter d=%d does not match the space (d=%d)"
            % (G.d, space.d))
    if G.n_black:
        raise ArityMismatch("represent needs an all-white graph")
    n = G.n_white
    if len(words) != n:
        raise ArityMismatch("graph has %d inputs, got %d words"
                            % (n, len(words)))
    words = [tuple(w) for w in words]
    out = WordSum(space)
    if not G.alpha:
        # the unit: a single dartless white vertex, identity on its input
        out.add((words[0],), G.or_sign)
        return out
    darts_of = [None] * (n + 1)
    for c, l, ds in G.vertices:
        darts_of[l] = ds
    choices = [list(_vertex_assignments(len(words[i - 1]), len(darts_of[i])))
               for i in range(1, n + 1)]
    if not all(choices):
        return out
    bnds = list(zip(G.bnd_labels, G.boundaries()))
    bnds.sort()
    walk = [cyc for _, cyc in bnds]
    for assign in product(*choices):
        key, coeff = _evaluate(G, space, words, darts_of, assign, walk)
        if coeff and not (reduced and any(not w for w in key)):
            out.add(key, coeff)
    return out


def _evaluate(G, space, words, darts_of, assign, walk):
    """One assignment's contribution: (tuple of output words, coefficient).

    The sign convention, in full:
      * each input word is rotated so that the letter assigned to the first
        half-edge of its vertex comes first (Koszul rotation sign), and the
        rotated words are concatenated in white label order;
      * edges contract in increasing order of their minimal dart; to apply
        theta to letters at positions a < b the second letter moves left
        next to the first (sign |letter_b| * degrees in between) and the
        operator theta, of degree 1 - d, passes the letters before position
        a (sign (1-d) * degrees before, in the current sequence);
      * theta's arguments are taken tail first (tail = smaller dart), at
        the cost of a transposition sign when the tail letter sits later;
      * the survivors are permuted (Koszul sign) from sequence order into
        boundary-walk order, and each output word's canonical rotation sign
        goes into the coefficient;
      * the graph's or_sign multiplies the lot.
    """
    deg = space.deg
    n = len(words)
    sign = 1
    seq = []          # letter indices, concatenated rotated words
    seq_dart = []     # dart assigned to this position, or -1
    corner_of = {}    # dart -> list of surviving sequence positions
    for i in range(1, n + 1):
        w = words[i - 1]
        ds = darts_of[i]
        pos = assign[i - 1]
        L = len(w)
        s = pos[0] if pos else 0
        # rotation sign of moving the first s letters to the end
        total = sum(deg[x] for x in w)
        for t in range(s):
            a = deg[w[t]]
            if (a * (total - a)) % 2:
                sign = -sign
        r = w[s:] + w[:s]
        offsets = [(p - s) % L for p in pos]
        base = len(seq)
        assigned_at = {}
        for j, o in enumerate(offsets):
            assigned_at[o] = ds[j]
        owner = None
        for o, letter in enumerate(r):
            dart = assigned_at.get(o, -1)
            if dart >= 0:
                owner = dart
                corner_of[dart] = []
            else:
                corner_of[owner].append(base + o)
            seq.append(letter)
            seq_dart.append(dart)
        # letters before the first assigned offset (only when the vertex has
        # no half-edges at all, which build_graph forbids inside a larger
        # graph) cannot occur: offset 0 is always assigned
    # contract the edges
    alive = list(range(len(seq)))
    d = space.d
    op_odd = (1 - d) % 2
    edges = [(x, G.alpha[x]) for x in range(len(G.alpha)) if x < G.alpha[x]]
    coeff = G.or_sign
    for x, y in edges:
        a = b = -1
        for t, p in enumerate(alive):
            if seq_dart[p] == x:
                a = t
            elif seq_dart[p] == y:
                b = t
        tail_first = a < b
        if not tail_first:
            a, b = b, a
        u, v = seq[alive[a]], seq[alive[b]]
        between = sum(deg[seq[alive[t]]] for t in range(a + 1, b))
        before = sum(deg[seq[alive[t]]] for t in range(a))
        e = deg[v] * between + op_odd * before
        if not tail_first:
            e += deg[u] * deg[v]
            u, v = v, u
        th = space.theta.get((u, v))
        if not th:
            return (), 0
        if e % 2:
            coeff = -coeff
        coeff = coeff * th
        del alive[b]
        del alive[a]
    # group survivors by boundary walk
    target = []
    words_out = []
    for cyc in walk:
        wd = []
        for xdart in cyc:
            for p in corner_of.get(G.alpha[xdart], ()):
                target.append(p)
                wd.append(seq[p])
        words_out.append(tuple(wd))
    # Koszul sign of the unshuffle from sequence order to walk order
    remaining = [p for p in alive if seq_dart[p] < 0]
    assert len(remaining) == len(target)
    for p in target:
        t = remaining.index(p)
        skipped = sum(deg[seq[q]] for q in remaining[:t])
        if (deg[seq[p]] * skipped) % 2:
            sign = -sign
        del remaining[t]
    return tuple(words_out), sign * coeff


def apply_graph(G, space, inputs, reduced=False):
    """Multilinear extension of represent to WordSum inputs (single-word)."""
    out = WordSum(space)
    for combo in product(*[ws.terms.items() for ws in inputs]):
        coeff = 1
        ws = []
        for (key, c) in combo:
            if len(key) != 1:
                raise ArityMismatch("inputs must be single-word sums")
            coeff *= c
            ws.append(key[0])
        out += represent(G, space, ws, reduced=reduced).scaled(coeff)
    return out


def lie_bracket(a, b, reduced=False):
    """Degree 1-d bracket: the one-edge two-vertex graph applied to a, b."""
    space = a.space
    return apply_graph(bracket_graph(space.d), space, [a, b],
                       reduced=reduced)


def cobracket(a, reduced=False):
    """Degree 1-d cobracket: the one-vertex loop graph; two-word outputs."""
    space = a.space
    return apply_graph(loop_graph(space.d), space, [a], reduced=reduced)


def differential(ws):
    """Extend the space differential to (tuples of) cyclic words."""
    space = ws.space
    deg = space.deg
    out = WordSum(space)
    for key, c in ws.terms.items():
        before = 0
        for slot, w in enumerate(key):
            for t, letter in enumerate(w):
                row = space.diff.get(letter)
                if row:
                    s = -1 if before % 2 else 1
                    for j, cf in row.items():
                        nw = w[:t] + (j,) + w[t + 1:]
                        nk = key[:slot] + (nw,) + key[slot + 1:]
                        out.add(nk, c * cf * s)
                before += deg[letter]
    return out


def mc_check(gamma):
    """True iff gamma has degree d, lengths >= 3, and d gamma + [gamma,gamma]/2 = 0."""
    space = gamma.space
    for key, _ in gamma.terms.items():
        if len(key) != 1:
            raise DegreeError("a Maurer-Cartan element is a sum of single words")
        if len(key[0]) < 3:
            raise DegreeError("Maurer-Cartan words must have length >= 3")
        if space.word_degree(key[0]) != space.d:
            raise DegreeError("Maurer-Cartan words must have degree %d"
                              % space.d)
    lhs = differential(gamma) + lie_bracket(gamma, gamma).scaled(Fraction(1, 2))
    return lhs.is_zero()


def twisted_differential(gamma, x, reduced=True):
    """d_gamma = d + [gamma, .] on (sums of) cyclic words."""
    return differential(x) + lie_bracket(gamma, x, reduced=reduced)


# -- Lie bialgebra identities on cyclic words --------------------------------
#
# All identities below use plain word degrees in the Koszul exponents; this
# matches the sign convention of represent (certified by the probes in the
# test suite).  Each builder returns a WordSum that must vanish.

def _degree_of(ws):
    degs = {sum(ws.space.word_degree(w) for w in k) for k in ws.terms}
    if len(degs) != 1:
        raise DegreeError("inputs must be homogeneous")
    return degs.pop()


def jacobiator_words(a, b, c):
    """Cyclic sum of double brackets; zero by Jacobi."""
    da, db, dc = _degree_of(a), _degree_of(b), _degree_of(c)
    t1 = lie_bracket(lie_bracket(a, b), c)
    t2 = lie_bracket(lie_bracket(b, c), a).scaled((-1) ** (da * (db + dc)))
    t3 = lie_bracket(lie_bracket(c, a), b).scaled((-1) ** (dc * (da + db)))
    return t1 + t2 + t3


def cojacobiator_words(a):
    """Cyclic sum (by Koszul-signed slot rotation) of the double cobracket."""
    sp = a.space
    out = WordSum(sp)
    for (w1, w2), c in cobracket(a).terms.items():
        for (u1, u2), c2 in cobracket(word_sum(sp, w1)).terms.items():
            cur, s = (u1, u2, w2), 1
            for _ in range(3):
                out.add(cur, c * c2 * s)
                dlast = sp.word_degree(cur[2])
                if (dlast * (sp.word_degree(cur[0])
                             + sp.word_degree(cur[1]))) % 2:
                    s = -s
                cur = (cur[2], cur[0], cur[1])
    return out


def _zigzag_words(cob_in, leg_out, a, b):
    """Bracket applied to one output of the cobracket (word level).

    cob_in: which of the two inputs feeds the cobracket; leg_out: output
    slot of the free cobracket leg (the bracket output takes the other).
    Signs: the cobracket operator (degree 1-d) passes the other input plus
    one structural transposition, (-1)^{(1-d)(1+|u|)}; splicing the first
    cobracket output into the bracket costs (-1)^{|y1||u|}; feeding the
    cobracket from input 1 swaps the two input blocks, (-1)^{|a||b|}; and
    putting the free leg first swaps the two output words.
    """
    sp = a.space
    d = sp.d
    u, y = (b, a) if cob_in == 1 else (a, b)
    du = _degree_of(u)
    block = du * _degree_of(y) if cob_in == 1 else 0
    out = WordSum(sp)
    for (y1, y2), c in cobracket(y).terms.items():
        d1 = sp.word_degree(y1)
        s = (-1) ** ((1 - d) * (1 + du) + d1 * du + block)
        for (z,), c2 in lie_bracket(word_sum(sp, y1), u).terms.items():
            if leg_out == 2:
                out.add((z, y2), c * c2 * s)
            else:
                sw = (-1) ** (sp.word_degree(z) * sp.word_degree(y2))
                out.add((y2, z), c * c2 * s * sw)
    return out


def drinfeld_words(a, b):
    """Five-term bracket/cobracket compatibility on cyclic words; zero."""
    d = a.space.d
    s = -1 if d % 2 else 1
    acc = cobracket(lie_bracket(a, b)).scaled((-1) ** ((1 - d) % 2))
    acc += _zigzag_words(1, 1, a, b)
    acc += _zigzag_words(2, 1, a, b).scaled(s)
    acc += _zigzag_words(2, 2, a, b)
    acc += _zigzag_words(1, 2, a, b).scaled(s)
    return acc


def involution_words(a):
    """Bracket of the two cobracket outputs; zero by involutivity."""
    sp = a.space
    out = WordSum(sp)
    for (w1, w2), c in cobracket(a).terms.items():
        out += lie_bracket(word_sum(sp, w1), word_sum(sp, w2)).scaled(c)
    return out


# -- random paired spaces for property tests ---------------------------------

def random_paired_space(d, rng, with_diff=False):
    """Random GradedSpace of dimension <= 4 with a nondegenerate pairing.

    Built from theta-paired letter blocks; with_diff adds a differential
    compatible with theta (an acyclic two-step piece and its theta-dual).
    """
    if with_diff:
        a = rng.randrange(-2, 3)
        degs = [a, a + 1, d - 2 - a, d - 1 - a]
        names = ["x", "y", "ybar", "xbar"]
        theta = {}

        def put(i, j, v):
            theta[(i, j)] = v
            theta[(j, i)] = (-1) ** (d + degs[i] * degs[j]) * v

        put(0, 3, Fraction(rng.randrange(1, 4)))
        put(1, 2, Fraction(rng.randrange(1, 4)))
        c = -((-1) ** (a % 2)) * theta[(1, 2)] / theta[(0, 3)]
        diff = {0: {1: Fraction(1)}, 2: {3: c}}
        return GradedSpace(d, degs, theta, diff=diff, names=names)
    nblk = rng.randrange(1, 3)
    degs, theta, names = [], {}, []
    for b in range(nblk):
        a = rng.randrange(-2, 3)
        i = len(degs)
        degs += [a, d - 1 - a]
        names += ["p%d" % b, "q%d" % b]
        v = Fraction(rng.randrange(1, 4))
        theta[(i, i + 1)] = v
        theta[(i + 1, i)] = (-1) ** (d + degs[i] * degs[i + 1]) * v
    return GradedSpace(d, degs, theta, names=names)


def random_word(space, rng, maxlen=5):
    """Random nonzero single cyclic word as a WordSum."""
    while True:
        w = tuple(rng.randrange(space.dim)
                  for _ in range(rng.randrange(1, maxlen + 1)))
        ws = word_sum(space, w)
        if not ws.is_zero():
            return ws


def wordsum_to_lines(ws):
    """Serialize: one line per term, `coeff ; l,l,... | l,...` per slot."""
    out = []
    for key in sorted(ws.terms):
        c = ws.terms[key]
        slots = " | ".join(",".join(str(l) for l in w) for w in key)
        out.append("%s ; %s" % (c, slots))
    return "\n".join(out)


def wordsum_from_lines(space, text):
    """Parse the line format back into a WordSum (exact rationals)."""
    from fractions import Fraction
    ws = WordSum(space)
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        coeff, _, slots = ln.partition(";")
        words = tuple(tuple(int(t) for t in s.split(",") if t.strip())
                      for s in slots.split("|"))
        ws.add(words, Fraction(coeff.strip()))
    return ws
