"""Poincare duality algebras and their Maurer-Cartan elements.

A PDAlgebra is a finite-dimensional graded-commutative associative unital
algebra with an orientation functional o of degree -d whose induced pairing
<a,b> = o(ab) is nondegenerate, plus an optional degree 1 differential that
is a derivation, squares to zero, and satisfies o(da) = 0.  All axioms are
checked exhaustively on the basis at construction.

The Maurer-Cartan element gamma lives in cyclic words over the shifted dual
W: one letter per basis element e_a, of degree 1 - |e_a|, with the pairing
theta given by the inverse Gram matrix (sign convention below).  Ribbon
graphs with parameter 3 - d act on cyclic words over W; black vertices are
fed gamma.
"""

from fractions import Fraction
from itertools import product as iproduct

from .cyclic import (GradedSpace, WordSum, mc_check, represent, word_sum)
from .ribbon import BLACK, WHITE, RibbonGraph


class AlgebraError(Exception):
    pass


class NotAssociative(AlgebraError):
    pass


class NotGradedCommutative(AlgebraError):
    pass


class DegeneratePairing(AlgebraError):
    pass


class OrientationDegreeError(AlgebraError):
    pass


class DifferentialError(AlgebraError):
    pass


class NotConnected(AlgebraError):
    pass


class UnknownBuiltin(AlgebraError):
    pass


class NotACycle(Exception):
    pass


class PDAlgebra:
    """Validated Poincare duality algebra.

    names: basis element names, names[0] the unit.
    degrees: integer degrees, degrees[0] == 0.
    product: dict {(i, j): {k: coeff}} for e_i e_j = sum coeff e_k; missing
      entries mean zero.  The full table (both orders) is required.
    orientation: list of o(e_i) values.
    d: duality degree.
    diff: optional dict {i: {j: coeff}} for the differential.
    """

    def __init__(self, d, names, degrees, product, orientation, diff=None):
        self.d = d
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.product = {k: {i: c for i, c in row.items() if c}
                        for k, row in product.items()}
        self.product = {k: row for k, row in self.product.items() if row}
        self.orientation = tuple(orientation)
        self.diff = {i: {j: c for j, c in row.items() if c}
                     for i, row in (diff or {}).items()}
        self.diff = {i: row for i, row in self.diff.items() if row}
        self._validate()

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def mul(self, i, j):
        return self.product.get((i, j), {})

    def mul_vec(self, va, vb):
        """Product of two coordinate vectors (dicts)."""
        out = {}
        for i, a in va.items():
            for j, b in vb.items():
                for k, c in self.mul(i, j).items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def o_vec(self, v):
        return sum(c * self.orientation[i] for i, c in v.items())

    def pairing(self, i, j):
        """<e_i, e_j> = o(e_i e_j)."""
        return sum(c * self.orientation[k] for k, c in self.mul(i, j).items())

    def _validate(self):
        n = self.dim
        deg = self.degrees
        if n == 0 or deg[0] != 0:
            raise NotConnected("the first basis element must be the unit, degree 0")
        if any(dg <= 0 for dg in deg[1:]):
            raise NotConnected("the augmentation ideal must be positively graded")
        for i in range(n):
            for k, c in self.mul(0, i).items():
                pass
            if self.mul(0, i) != {i: 1} or self.mul(i, 0) != {i: 1}:
                raise AlgebraError("%s is not a two-sided unit" % self.names[0])
        for (i, j), row in self.product.items():
            for k in row:
                if deg[k] != deg[i] + deg[j]:
                    raise AlgebraError("product table is not degree homogeneous")
        for i in range(n):
            for j in range(n):
                lhs = self.mul(i, j)
                rhs = {k: (-1) ** (deg[i] * deg[j]) * c
                       for k, c in self.mul(j, i).items()}
                if lhs != rhs:
                    raise NotGradedCommutative(
                        "on (%s, %s)" % (self.names[i], self.names[j]))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.mul_vec(self.mul(i, j), {k: 1})
                    rhs = self.mul_vec({i: 1}, self.mul(j, k))
                    if lhs != rhs:
                        raise NotAssociative(
                            "on (%s, %s, %s)" % (self.names[i], self.names[j],
                                                 self.names[k]))
        for i in range(n):
            if self.orientation[i] and deg[i] != self.d:
                raise OrientationDegreeError(
                    "o(%s) nonzero in degree %d" % (self.names[i], deg[i]))
        if not any(self.orientation):
            raise DegeneratePairing("orientation functional is zero")
        self._gram_inverse()  # raises DegeneratePairing
        for i, row in self.diff.items():
            for j in row:
                if deg[j] != deg[i] + 1:
                    raise DifferentialError("differential is not of degree +1")
            if sum(c * self.orientation[j] for j, c in row.items()):
                raise DifferentialError("o does not kill the differential")
        for i in range(n):
            acc = {}
            for j, c in self.diff.get(i, {}).items():
                for k, c2 in self.diff.get(j, {}).items():
                    acc[k] = acc.get(k, 0) + c * c2
            if any(acc.values()):
                raise DifferentialError("differential does not square to zero")
        # Leibniz: d(ab) = (da)b + (-1)^{|a|} a (db)
        for i in range(n):
            for j in range(n):
                lhs = {}
                for k, c in self.mul(i, j).items():
                    for l, c2 in self.diff.get(k, {}).items():
                        lhs[l] = lhs.get(l, 0) + c * c2
                rhs = {}
                for k, c in self.diff.get(i, {}).items():
                    for l, c2 in self.mul(k, j).items():
                        rhs[l] = rhs.get(l, 0) + c * c2
                s = (-1) ** deg[i]
                for k, c in self.diff.get(j, {}).items():
                    for l, c2 in self.mul(i, k).items():
                        rhs[l] = rhs.get(l, 0) + s * c * c2
                if {k: v for k, v in lhs.items() if v} != \
                        {k: v for k, v in rhs.items() if v}:
                    raise DifferentialError("Leibniz rule fails on (%s, %s)"
                                            % (self.names[i], self.names[j]))

    def _gram_inverse(self):
        """Inverse of the Gram matrix G[i][j] = <e_i, e_j>, exact."""
        n = self.dim
        gram = [[Fraction(self.pairing(i, j)) for j in range(n)]
                for i in range(n)]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        mat = [row[:] for row in gram]
        for col in range(n):
            piv = next((r for r in range(col, n) if mat[r][col]), None)
            if piv is None:
                raise DegeneratePairing("Gram matrix is singular")
            mat[col], mat[piv] = mat[piv], mat[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            pv = mat[col][col]
            mat[col] = [x / pv for x in mat[col]]
            inv[col] = [x / pv for x in inv[col]]
            for r in range(n):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return inv

    def dual_basis(self):
        """Coordinates of the dual basis: e^a = sum_b B[a][b] e_b with
        <e^a, e_b> = delta_ab (pairing against the second slot)."""
        inv = self._gram_inverse()
        # row a of the inverse transposed appropriately: since
        # sum_b B[a][b] <e_b, e_c> = delta_ac, B = G^{-1} with rows indexing a
        return inv

    def diagonal(self, i):
        """Delta(e_i) = sum e_i e^a (x) e_a, degree |e_i| + d."""
        dual = self.dual_basis()
        out = {}
        for a in range(self.dim):
            left = self.mul_vec({i: 1}, {b: c for b, c in enumerate(dual[a]) if c})
            for k, c in left.items():
                v = out.get((k, a), 0) + c
                if v:
                    out[(k, a)] = v
                elif (k, a) in out:
                    del out[(k, a)]
        return out

    def frobenius_identity_holds(self):
        """Delta(e_i e_j) = sum (e_i e_j') (x) e_j'' on all basis pairs."""
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = {}
                for k, c in self.mul(i, j).items():
                    for (a, b), c2 in self.diagonal(k).items():
                        lhs[(a, b)] = lhs.get((a, b), 0) + c * c2
                rhs = {}
                for (a, b), c in self.diagonal(j).items():
                    for k, c2 in self.mul(i, a).items():
                        rhs[(k, b)] = rhs.get((k, b), 0) + c * c2
                if {k: v for k, v in lhs.items() if v} != \
                        {k: v for k, v in rhs.items() if v}:
                    return False
        return True

    def __repr__(self):
        return "PDAlgebra(d=%d, dim=%d: %s)" % (self.d, self.dim,
                                                ",".join(self.names))


# -- built-ins ----------------------------------------------------------------

def sphere(d):
    """Cohomology of the d-sphere: {1, w}, w^2 = 0 unless 2|w| = d."""
    if d < 1:
        raise UnknownBuiltin("sphere(d) needs d >= 1")
    names = ["1", "w"]
    degrees = [0, d]
    product = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    # w^2 has degree 2d > d: zero
    return PDAlgebra(2 * 0 + d, names, degrees, product, [0, 1])


def cp(n):
    """Cohomology of complex projective n-space: K[x]/(x^{n+1}), |x| = 2."""
    if n < 1:
        raise UnknownBuiltin("cp(n) needs n >= 1")
    names = ["1"] + ["x^%d" % i for i in range(1, n + 1)]
    names[1] = "x"
    degrees = [2 * i for i in range(n + 1)]
    product = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j <= n:
                product[(i, j)] = {i + j: 1}
    orientation = [0] * (n + 1)
    orientation[n] = 1
    return PDAlgebra(2 * n, names, degrees, product, orientation)


def surface(g):
    """Cohomology of the closed oriented genus g surface, d = 2."""
    if g < 1:
        raise UnknownBuiltin("surface(g) needs g >= 1")
    names = ["1"] + ["a%d" % i for i in range(1, g + 1)] \
        + ["b%d" % i for i in range(1, g + 1)] + ["w"]
    n = len(names)
    degrees = [0] + [1] * (2 * g) + [2]
    top = n - 1
    product = {(0, 0): {0: 1}}
    for i in range(1, n):
        product[(0, i)] = {i: 1}
        product[(i, 0)] = {i: 1}
    for i in range(1, g + 1):
        ai, bi = i, g + i
        product[(ai, bi)] = {top: 1}
        product[(bi, ai)] = {top: -1}
    orientation = [0] * n
    orientation[top] = 1
    return PDAlgebra(2, names, degrees, product, orientation)


def builtin(name, *params):
    table = {"sphere": sphere, "cp": cp, "surface": surface}
    if name not in table:
        raise UnknownBuiltin("unknown builtin %r" % name)
    return table[name](*params)


# -- file format ----------------------------------------------------------------

def load_pd_algebra(text):
    """Parse the plain-text algebra format; returns a validated PDAlgebra.

    Sections: `degree d`, `basis name:deg ...`, `product a b = c1 n1 + ...`,
    `orientation name = c`, optional `differential name = c1 n1 + ...`.
    """
    d = None
    names, degrees = [], []
    product, orientation, diff = {}, {}, {}

    def parse_comb(rhs, idx):
        out = {}
        rhs = rhs.strip()
        if rhs in ("0", ""):
            return out
        for term in rhs.replace("- ", "+ -").split("+"):
            term = term.strip()
            if not term:
                continue
            bits = term.split()
            if len(bits) == 1:
                c, nm = 1, bits[0]
                if nm.startswith("-"):
                    c, nm = -1, nm[1:]
            else:
                c, nm = Fraction(bits[0]), bits[1]
            out[idx[nm]] = out.get(idx[nm], 0) + c
        return out

    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    idx = {}
    for ln in lines:
        if not ln:
            continue
        head, _, rest = ln.partition(" ")
        if head == "degree":
            d = int(rest)
        elif head == "basis":
            for tok in rest.split():
                nm, _, dg = tok.partition(":")
                idx[nm] = len(names)
                names.append(nm)
                degrees.append(int(dg))
        elif head == "product":
            lhs, _, rhs = rest.partition("=")
            a, b = lhs.split()
            product[(idx[a], idx[b])] = parse_comb(rhs, idx)
        elif head == "orientation":
            lhs, _, rhs = rest.partition("=")
            orientation[idx[lhs.strip()]] = Fraction(rhs.strip())
        elif head == "differential":
            lhs, _, rhs = rest.partition("=")
            diff[idx[lhs.strip()]] = parse_comb(rhs, idx)
        else:
            raise AlgebraError("unknown section %r" % head)
    if d is None:
        raise AlgebraError("missing degree section")
    ovec = [orientation.get(i, 0) for i in range(len(names))]
    return PDAlgebra(d, names, degrees, product, ovec, diff)


def dump_pd_algebra(A):
    """Serialize back to the text format (round-trips through load)."""
    out = ["degree %d" % A.d,
           "basis " + " ".join("%s:%d" % (nm, dg)
                               for nm, dg in zip(A.names, A.degrees))]

    def comb(row):
        if not row:
            return "0"
        return " + ".join("%s %s" % (c, A.names[k])
                          for k, c in sorted(row.items()))

    for (i, j), row in sorted(A.product.items()):
        out.append("product %s %s = %s" % (A.names[i], A.names[j], comb(row)))
    for i, c in enumerate(A.orientation):
        if c:
            out.append("orientation %s = %s" % (A.names[i], c))
    for i, row in sorted(A.diff.items()):
        out.append("differential %s = %s" % (A.names[i], comb(row)))
    return "\n".join(out) + "\n"


# -- shifted dual space and gamma ---------------------------------------------

def dual_space(A):
    """Cyclic-word letters for A: one letter per basis element of A (the
    shifted dual), letter i of degree 1 - |e_i|, theta from the inverse Gram
    matrix.  Graphs of parameter 3 - d act on words over this space.
    """
    dpar = 3 - A.d
    deg = [1 - dg for dg in A.degrees]
    inv = A._gram_inverse()
    theta = {}
    for i in range(A.dim):
        for j in range(A.dim):
            v = inv[i][j]
            if v:
                # convention certified by GradedSpace validation plus
                # mc_check on the built-ins: theta is plain G^{-1}
                theta[(i, j)] = v
    diff = None
    if A.diff:
        # dual differential: theta-compatibility pins it up to the global
        # convention; <d* f, a> = -(-1)^{|f|} <f, d a>
        diff = _dual_diff(A, deg)
    names = tuple("%s*" % nm for nm in A.names)
    return GradedSpace(dpar, deg, theta, diff=diff, names=names)


def _dual_diff(A, letter_deg):
    """Differential on the dual letters, dual to A's differential:
    (d* e^i)(a) = -(-1)^{|letter i|} e^i(d a), so the coefficient of
    letter k in d*(letter i) is -(-1)^{|letter i|} A.diff[k][i].
    GradedSpace validation rechecks degree, square-zero and theta."""
    out = {}
    for i in range(A.dim):
        s = -((-1) ** (letter_deg[i] % 2))
        row = {}
        for k in range(A.dim):
            c = A.diff.get(k, {}).get(i, 0)
            if c:
                row[k] = s * c
        if row:
            out[i] = row
    return out


class MCElement:
    """gamma = sum eps(a,b,c) o(e_a e_b e_c) (a*, b*, c*) over the shifted
    dual, with eps = (-1)^{|e_b| + |e_a||e_b| + |e_a||e_c| + |e_b||e_c|}.
    The sign makes the dressed tensor invariant under Koszul-signed
    rotation (so mc_to_ainfty recovers the product on the nose) and the
    Maurer-Cartan equation is verified at construction."""

    __slots__ = ("algebra", "space", "gamma", "mc_verified")

    def __init__(self, algebra, check=True):
        self.algebra = algebra
        self.space = dual_space(algebra)
        A = algebra
        gamma = WordSum(self.space)
        for a in range(A.dim):
            for b in range(A.dim):
                ab = A.mul(a, b)
                for c in range(A.dim):
                    val = Fraction(0)
                    for k, cf in ab.items():
                        for l, cf2 in A.mul(k, c).items():
                            val += cf * cf2 * A.orientation[l]
                    if val:
                        da, db, dc = A.degrees[a], A.degrees[b], A.degrees[c]
                        e = db + da * db + da * dc + db * dc
                        s = (-1) ** (e % 2)
                        gamma.add(((a, b, c),), Fraction(s * val, 3))
        self.gamma = gamma
        self.mc_verified = mc_check(gamma) if check else False
        if check and not self.mc_verified:
            raise AlgebraError("Maurer-Cartan equation fails for %r" % A)


def mc_element(A, check=True):
    return MCElement(A, check=check)


def diagonal(A, vec):
    """Delta extended linearly to a coordinate vector (dict or index)."""
    if isinstance(vec, int):
        vec = {vec: 1}
    out = {}
    for i, c in vec.items():
        for key, c2 in A.diagonal(i).items():
            v = out.get(key, 0) + c * c2
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def mc_to_ainfty(mc):
    """Recover the k-ary operations from gamma by raising the last index.

    Returns {k: {(a_1..a_k): {b: coeff}}} so that mu_k(letters a_1..a_k) =
    sum coeff * letter b.  For the gamma of a PDAlgebra, mu_2 is the
    algebra product written against the letters (indices match basis
    indices) and mu_k = 0 for k >= 3.
    """
    space = mc.space
    deg = space.deg
    n = len(deg)
    # ordered tensor from the canonically stored cyclic words
    tensors = {}
    for (w,), c in mc.gamma.terms.items():
        L = len(w)
        T = tensors.setdefault(L, {})
        tot = sum(deg[l] for l in w)
        rsign = 1
        cur = w
        for r in range(L):
            T[cur] = T.get(cur, 0) + rsign * c
            a = deg[cur[0]]
            if (a * (tot - a)) % 2:
                rsign = -rsign
            cur = cur[1:] + cur[:1]
    # invert theta (as a matrix over the letters)
    th = [[Fraction(space.theta.get((i, j), 0)) for j in range(n)]
          for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if th[r][col])
        th[col], th[piv] = th[piv], th[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = th[col][col]
        th[col] = [x / pv for x in th[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(n):
            if r != col and th[r][col]:
                f = th[r][col]
                th[r] = [x - f * y for x, y in zip(th[r], th[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    ops = {}
    for L, T in tensors.items():
        k = L - 1
        op = {}
        for w, c in T.items():
            args, last = w[:k], w[k]
            # Koszul sign of the raising, certified by mu_2 == product
            e = 0
            for p in range(k - 1):
                e += deg[args[p]] * (1 + sum(deg[args[q]]
                                             for q in range(p + 1, k)))
            if e % 2:
                c = -c
            row = op.setdefault(args, {})
            for b in range(n):
                if inv[last][b]:
                    v = row.get(b, 0) + c * inv[last][b]
                    if v:
                        row[b] = v
                    elif b in row:
                        del row[b]
        ops[k] = {a: r for a, r in op.items() if r}
    return {k: op for k, op in ops.items() if op}


# -- twisted graphs acting through gamma --------------------------------------

def blacks_as_inputs(g):
    """Recolor the black vertices as extra white inputs n+1, n+2, ... in
    their orientation order (increasing minimal dart); the orientation
    deviation is already absorbed in or_sign."""
    n = g.n_white
    verts = []
    nxt = n + 1
    for c, l, ds in g.vertices:
        if c == BLACK:
            verts.append((WHITE, nxt, ds))
            nxt += 1
        else:
            verts.append((WHITE, l, ds))
    return RibbonGraph(g.d, g.alpha, verts, g.bnd_labels, g.or_sign)


def act(graphs, mc, inputs, reduced=True):
    """Evaluate a (sum of) twisted graphs on cyclic words over mc.space.

    mc may be an MCElement or a PDAlgebra (converted on the fly).  Black
    vertices are fed gamma; against a length-3 gamma any graph with a
    black vertex of valence != 3 contributes zero, and graphs with an
    all-black boundary only produce empty output words (dropped when
    reduced).  inputs: list of single-word WordSums.
    """
    from .ribbon import FormalSum
    if isinstance(mc, PDAlgebra):
        mc = mc_element(mc)
    if isinstance(graphs, RibbonGraph):
        fs = FormalSum()
        fs.add(graphs, 1)
        graphs = fs
    space = mc.space
    out = WordSum(space)
    for g, coeff in graphs.terms.items():
        if any(c == BLACK and len(ds) != 3 for c, l, ds in g.vertices):
            continue
        gw = blacks_as_inputs(g)
        k = g.n_black
        for combo in iproduct(*([list(mc.gamma.terms.items())] * k)):
            cf = coeff
            words = [next(iter(ws.terms))[0] for ws in inputs]
            for key, c in combo:
                cf *= c
                words.append(key[0])
            res = represent(gw, space, words, reduced=reduced)
            out += res.scaled(cf)
    # inputs may carry coefficients of their own
    scale = 1
    for ws in inputs:
        (key, c), = ws.terms.items()
        scale *= c
    return out.scaled(scale)


# -- cyclic Hochschild complex -------------------------------------------------

def flat_diff(mc):
    """Fast twisted differential [gamma, -] for flat algebras.

    Specializes the one-edge bracket graph to the length-3 gamma: letter
    x_q of the input contracts against letter p of a gamma word g, the
    result is the rotated input tail followed by the two remaining gamma
    letters, and the signs collapse to the two rotation signs times
    (-1)^{(deg of the gamma tail) * (total degree of the input)}.
    Returns a function word -> {word: coeff}; agreement with the generic
    lie_bracket path is covered by the test suite.
    """
    if mc.algebra.diff:
        raise AlgebraError("flat_diff needs a flat algebra")
    space = mc.space
    deg = space.deg
    rules = {}  # letter t -> list of (tail pair, coeff, tail degree parity)
    for (gword,), cg in mc.gamma.terms.items():
        gtot = sum(deg[l] for l in gword)
        rsign = 1
        for p in range(3):
            gp = gword[p]
            tail = (gword[(p + 1) % 3], gword[(p + 2) % 3])
            dtail = (deg[tail[0]] + deg[tail[1]]) % 2
            for (u, t), th in space.theta.items():
                if u == gp:
                    rules.setdefault(t, []).append(
                        (tail, cg * th * rsign, dtail))
            a = deg[gp]
            if (a * (gtot - a)) % 2:
                rsign = -rsign
    from .cyclic import cyclic_normalize

    def diff(word):
        out = {}
        tot = sum(deg[l] for l in word) % 2
        rsign = 1
        L = len(word)
        for q in range(L):
            t = word[q]
            for tail, c, dtail in rules.get(t, ()):
                s = -c if (dtail and tot) else c
                if rsign < 0:
                    s = -s
                raw = word[q + 1:] + word[:q] + tail
                cw, csign = cyclic_normalize(deg, raw)
                if not csign:
                    continue
                v = out.get(cw, 0) + s * csign
                if v:
                    out[cw] = v
                elif cw in out:
                    del out[cw]
            a = deg[t]
            if a % 2 and (tot - a) % 2:
                rsign = -rsign
        return out

    return diff


def reduced_letters(A):
    """Letters excluding the dual of the unit."""
    return tuple(range(1, A.dim))


def word_basis(mc, length, reduced=True):
    """Canonical nonzero cyclic words of the given length, sorted."""
    from .cyclic import cyclic_normalize
    space = mc.space
    letters = reduced_letters(mc.algebra) if reduced else range(mc.algebra.dim)
    seen = set()
    for w in iproduct(letters, repeat=length):
        cw, sign = cyclic_normalize(space.deg, w)
        if sign and cw == w:
            seen.add(w)
    return sorted(seen)


def hochschild_matrices(mc, length_cutoff, reduced=True):
    """Bases and twisted-differential matrices of the cyclic word complex.

    Returns (bases, mats) where bases[L] is the word basis at length L
    (L = 1..length_cutoff) and mats[L] is the matrix of the twisted
    differential from length L, rows indexed by target words.  When the
    algebra is flat the twisted differential raises length by exactly one,
    so length is a grading; with a nonzero algebra differential the
    internal part preserves length and the matrices are block maps into
    lengths L and L+1 combined (rows carry (length, word) keys).
    """
    from .cyclic import twisted_differential, word_sum
    space = mc.space
    fast = None if mc.algebra.diff else flat_diff(mc)
    bases = {L: word_basis(mc, L, reduced=reduced)
             for L in range(1, length_cutoff + 1)}
    index = {L: {w: i for i, w in enumerate(bases[L])} for L in bases}
    mats = {}
    for L in bases:
        cols = []
        for w in bases[L]:
            col = {}
            if fast is not None:
                img_terms = [((tw,), c) for tw, c in fast(w).items()]
            else:
                img = twisted_differential(mc.gamma, word_sum(space, w))
                img_terms = list(img.terms.items())
            for key, c in img_terms:
                (tw,) = key
                tl = len(tw)
                if reduced and any(l == 0 for l in tw):
                    raise AlgebraError(
                        "twisted differential leaves the reduced complex "
                        "on %r" % (w,))
                if tl in index and tw in index[tl]:
                    col[(tl, index[tl][tw])] = c
                elif tl <= length_cutoff:
                    raise AlgebraError("image word %r missing from basis" % (tw,))
                # words beyond the cutoff are truncated; callers must not
                # trust cohomology at the top length
            cols.append(col)
        mats[L] = cols
    return bases, mats


class HochschildComplex:
    """Bases and twisted-differential matrices of the cyclic word complex,
    graded by word length, with per-degree exactness bookkeeping."""

    __slots__ = ("mc", "reduced", "length_cutoff", "bases", "matrices")

    def __init__(self, mc, length_cutoff, reduced=True):
        self.mc = mc
        self.reduced = reduced
        self.length_cutoff = length_cutoff
        self.bases, self.matrices = hochschild_matrices(
            mc, length_cutoff, reduced=reduced)

    def dims_by_length(self):
        return {L: len(b) for L, b in self.bases.items()}

    def degree_exact(self, degree):
        """A total degree is exact when no word longer than the cutoff can
        reach it; true when all letters have strictly negative degree and
        the cutoff words already overshoot."""
        letters = (reduced_letters(self.mc.algebra) if self.reduced
                   else range(self.mc.algebra.dim))
        top = max(self.mc.space.deg[l] for l in letters)
        if top >= 0:
            return False
        return degree > top * (self.length_cutoff + 1)

    def cohomology(self):
        return hochschild_cohomology(self.mc.algebra, self.length_cutoff,
                                     reduced=self.reduced)


def hochschild_complex(A, reduced=True, length_cutoff=6):
    return HochschildComplex(mc_element(A), length_cutoff, reduced=reduced)


def hochschild_cohomology(A, length_cutoff, reduced=True):
    """Cohomology of the (reduced) cyclic word complex through the cutoff.

    Returns {length: dim} for lengths 1..length_cutoff-1 (the top length is
    truncated and omitted).  Requires a flat algebra so that length grades
    the complex.
    """
    from .linalg import SparseMatrix, rank
    if A.diff:
        raise AlgebraError("length-graded cohomology needs a flat algebra")
    mc = mc_element(A)
    bases, mats = hochschild_matrices(mc, length_cutoff, reduced=reduced)
    ranks = {}
    for L in range(1, length_cutoff):
        cols = [{i: c for (tl, i), c in col.items()} for col in mats[L]]
        ranks[L] = rank(SparseMatrix.from_columns(len(bases[L + 1]), cols))
    dims = {}
    for L in range(1, length_cutoff):
        ker = len(bases[L]) - ranks.get(L, 0)
        im = ranks.get(L - 1, 0)
        dims[L] = ker - im
    return dims
