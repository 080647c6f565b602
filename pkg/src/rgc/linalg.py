"""Exact sparse linear algebra over Q with a certified prime-field fast path.

All ranks and cohomology dimensions computed here are exact.  The fast path
runs Gaussian elimination over two distinct word-sized prime fields; ranks can
only drop modulo a prime, so agreement of two primes is accepted and any
disagreement falls back to rational elimination.
"""

from fractions import Fraction


class LinalgError(Exception):
    pass


class NotACycle(LinalgError):
    """Raised when a coboundary test is attempted on a non-cycle."""


class NotAComplex(LinalgError):
    """Raised when consecutive differentials do not compose to zero."""


class NotDifferentialClosed(LinalgError):
    """Raised when a claimed subcomplex is not preserved by the differential."""


#: primes used by the fast rank path; both exceed 2**20
FAST_PRIMES = (1048583, 1048589)


class SparseMatrix:
    """Immutable-ish sparse matrix with Fraction entries keyed by (row, col)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise LinalgError("entry (%d, %d) out of shape (%d, %d)"
                                      % (i, j, rows, cols))
                v = Fraction(v)
                if v:
                    self.entries[(i, j)] = v

    @classmethod
    def from_columns(cls, rows, columns):
        """Build from a list of columns, each a dict row -> coefficient."""
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                v = Fraction(v)
                if v:
                    m.entries[(i, j)] = v
        return m

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def row_lists(self):
        """Entries grouped by row: list of dicts col -> value."""
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_lists(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def nnz(self):
        return len(self.entries)

    def mul_vec(self, vec):
        """Apply to a sparse vector (dict col -> Fraction); returns dict."""
        out = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j)
            if c:
                out[i] = out.get(i, Fraction(0)) + v * c
        return {i: v for i, v in out.items() if v}

    def compose(self, other):
        """self @ other (other maps into the domain of self)."""
        if other.rows != self.cols:
            raise LinalgError("shape mismatch in compose")
        out = SparseMatrix(self.rows, other.cols)
        by_col = other.col_lists()
        by_row_of_self = {}
        for (i, j), v in self.entries.items():
            by_row_of_self.setdefault(j, []).append((i, v))
        for j, col in enumerate(by_col):
            acc = {}
            for k, c in col.items():
                for i, v in by_row_of_self.get(k, ()):
                    acc[i] = acc.get(i, Fraction(0)) + v * c
            for i, v in acc.items():
                if v:
                    out.entries[(i, j)] = v
        return out

    def is_zero(self):
        return not self.entries

    def to_sms(self):
        """Render in SMS sparse text format (1-based indices, `0 0 0` sentinel)."""
        lines = ["%d %d M" % (self.rows, self.cols)]
        for (i, j) in sorted(self.entries):
            v = self.entries[(i, j)]
            lines.append("%d %d %s" % (i + 1, j + 1, v))
        lines.append("0 0 0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_sms(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 3 or head[2] != "M":
            raise LinalgError("bad SMS header: %r" % lines[0])
        m = cls(int(head[0]), int(head[1]))
        for ln in lines[1:]:
            a, b, v = ln.split()
            if a == "0" and b == "0":
                return m
            val = Fraction(v)
            if val:
                m.entries[(int(a) - 1, int(b) - 1)] = val
        raise LinalgError("SMS text missing `0 0 0` terminator")

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return "SparseMatrix(%d x %d, %d nonzero)" % (self.rows, self.cols, self.nnz())


def _eliminate_modp(rows, p):
    """Rank of a list of sparse rows (dicts col -> int) over F_p.

    Pivots are chosen Markowitz-style: the candidate minimizing
    (row fill) with ties broken by smallest column index, so runs are
    deterministic.
    """
    rows = [{j: v % p for j, v in r.items() if v % p} for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        # pick the sparsest row; among its columns take the smallest index
        ri = min(range(len(rows)), key=lambda i: (len(rows[i]), min(rows[i])))
        row = rows.pop(ri)
        piv = min(row)
        inv = pow(row[piv], p - 2, p)
        row = {j: (v * inv) % p for j, v in row.items()}
        rank += 1
        nxt = []
        for r in rows:
            c = r.get(piv)
            if c:
                s = dict(r)
                del s[piv]
                for j, v in row.items():
                    if j == piv:
                        continue
                    w = (s.get(j, 0) - c * v) % p
                    if w:
                        s[j] = w
                    elif j in s:
                        del s[j]
                r = s
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def _eliminate_rational(rows):
    """Rank over Q by sparse elimination on rows of Fraction dicts."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        ri = min(range(len(rows)), key=lambda i: (len(rows[i]), min(rows[i])))
        row = rows.pop(ri)
        piv = min(row)
        pv = row[piv]
        row = {j: v / pv for j, v in row.items()}
        rank += 1
        nxt = []
        for r in rows:
            c = r.get(piv)
            if c:
                s = dict(r)
                del s[piv]
                for j, v in row.items():
                    if j == piv:
                        continue
                    w = s.get(j, Fraction(0)) - c * v
                    if w:
                        s[j] = w
                    elif j in s:
                        del s[j]
                r = s
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def rank(matrix, coeff="auto"):
    """Rank of a SparseMatrix.

    coeff: "auto" (two-prime fast path with rational fallback), "q"
    (rational elimination), or an integer prime p (single prime field;
    exact only generically, intended for the CLI's --coeff p:<prime>).
    """
    rows = matrix.row_lists()
    if coeff == "q":
        return _eliminate_rational(rows)
    if isinstance(coeff, int):
        p = coeff
        int_rows = _clear_denominators(rows, p)
        return _eliminate_modp(int_rows, p)
    if coeff != "auto":
        raise LinalgError("unknown coefficient spec %r" % (coeff,))
    ranks = []
    for p in FAST_PRIMES:
        int_rows = _clear_denominators(rows, p)
        if int_rows is None:
            return _eliminate_rational(rows)
        ranks.append(_eliminate_modp(int_rows, p))
    if ranks[0] == ranks[1]:
        return ranks[0]
    return _eliminate_rational(rows)


def _clear_denominators(rows, p):
    """Rows with Fraction entries -> integer rows mod p, or None if some
    denominator vanishes mod p."""
    out = []
    for r in rows:
        row = {}
        for j, v in r.items():
            if v.denominator % p == 0:
                return None
            row[j] = v.numerator * pow(v.denominator, p - 2, p) % p
        out.append(row)
    return out


def _rref(vectors, priority=None):
    """Reduced row echelon form of a list of sparse vectors (dict -> Fraction).

    Returns (rows, pivots) where rows[i] has pivot pivots[i] scaled to 1 and
    pivots are mutually eliminated.  `priority` optionally maps a coordinate
    to a sort key; lower keys are preferred as pivots.
    """
    if priority is None:
        def priority(j):
            return j
    basis = []     # list of (pivot, row)
    for vec in vectors:
        row = dict(vec)
        for piv, brow in basis:
            c = row.get(piv)
            if c:
                del row[piv]
                for j, v in brow.items():
                    if j == piv:
                        continue
                    w = row.get(j, Fraction(0)) - c * v
                    if w:
                        row[j] = w
                    elif j in row:
                        del row[j]
        if not row:
            continue
        piv = min(row, key=lambda j: (priority(j), j))
        pv = row[piv]
        row = {j: v / pv for j, v in row.items()}
        # back-substitute into earlier rows
        for t, (bp, br) in enumerate(basis):
            c = br.get(piv)
            if c:
                nr = dict(br)
                del nr[piv]
                for j, v in row.items():
                    if j == piv:
                        continue
                    w = nr.get(j, Fraction(0)) - c * v
                    if w:
                        nr[j] = w
                    elif j in nr:
                        del nr[j]
                basis[t] = (bp, nr)
        basis.append((piv, row))
    return [r for _, r in basis], [p for p, _ in basis]


def reduce_mod(vec, rref_rows, pivots):
    """Reduce a sparse vector modulo the span of RREF rows."""
    row = dict(vec)
    for piv, brow in zip(pivots, rref_rows):
        c = row.get(piv)
        if c:
            del row[piv]
            for j, v in brow.items():
                if j == piv:
                    continue
                w = row.get(j, Fraction(0)) - c * v
                if w:
                    row[j] = w
                elif j in row:
                    del row[j]
    return row


def in_span(vec, rref_rows, pivots):
    return not reduce_mod(vec, rref_rows, pivots)


def is_coboundary(vec, matrix_in, matrix_out=None):
    """Is the sparse vector in the column span of matrix_in?

    If matrix_out is given, the vector is first required to be a cycle
    (matrix_out @ vec == 0), else NotACycle is raised.
    """
    if matrix_out is not None and matrix_out.mul_vec(vec):
        raise NotACycle("vector is not annihilated by the outgoing differential")
    cols = matrix_in.col_lists() if matrix_in is not None else []
    rows, pivots = _rref(cols)
    return in_span(vec, rows, pivots)


class CohomologyTable:
    """Cohomology dimensions of a cochain complex, degree by degree.

    dims[k] is None when the truncation window makes the value unreliable;
    flags[k] is "exact" or "truncated".
    """

    def __init__(self, degrees, dims, flags, ranks=None, basis_sizes=None):
        self.degrees = list(degrees)
        self.dims = dict(dims)
        self.flags = dict(flags)
        self.ranks = dict(ranks or {})
        self.basis_sizes = dict(basis_sizes or {})

    def __getitem__(self, k):
        return self.dims[k]

    def as_rows(self):
        return [(k, self.basis_sizes.get(k), self.dims[k], self.flags[k])
                for k in self.degrees]


def cohomology_dims(dims_by_k, matrices_by_k, kmax, coeff="auto", check=True):
    """Cohomology dimensions of a complex given as dims and matrices by slot k.

    matrices_by_k[k] maps slot k to slot k+1 and must be present for
    k < kmax.  Slots k <= kmax - 1 are exact; slot kmax is flagged
    truncated (its outgoing differential is not available).
    """
    if check:
        for k in range(kmax):
            a, b = matrices_by_k.get(k), matrices_by_k.get(k + 1)
            if a is not None and b is not None and not b.compose(a).is_zero():
                raise NotAComplex("differential does not square to zero at slot %d" % k)
    ranks = {}
    for k, m in matrices_by_k.items():
        ranks[k] = rank(m, coeff) if m is not None else 0
    table_dims, flags = {}, {}
    for k in sorted(dims_by_k):
        dim = dims_by_k[k]
        r_out = ranks.get(k)
        r_in = ranks.get(k - 1, 0) if k > 0 else 0
        if k >= kmax or r_out is None:
            table_dims[k] = None
            flags[k] = "truncated"
        else:
            table_dims[k] = dim - r_out - r_in
            flags[k] = "exact"
    return CohomologyTable(sorted(dims_by_k), table_dims, flags,
                           ranks=ranks, basis_sizes=dims_by_k)


class QuotientComplex:
    """A complex presented as ambient slots modulo a differential-closed ideal.

    rep_coords[k]: ambient coordinate indices representing the quotient basis.
    matrices[k]: induced differential in quotient coordinates.
    """

    def __init__(self, dims, rep_coords, matrices, rref_data):
        self.dims = dims
        self.rep_coords = rep_coords
        self.matrices = matrices
        self._rref = rref_data

    def project(self, k, vec):
        """Ambient sparse vector -> quotient coordinates at slot k."""
        rows, pivots = self._rref[k]
        red = reduce_mod(vec, rows, pivots)
        index = {c: t for t, c in enumerate(self.rep_coords[k])}
        out = {}
        for j, v in red.items():
            if j not in index:
                raise LinalgError("reduced vector leaves the chosen transversal")
            out[index[j]] = v
        return out


def quotient_complex(dims_by_k, matrices_by_k, ideal_by_k, kmax, priority=None):
    """Quotient of a complex by a differential-closed span.

    ideal_by_k[k] is a list of sparse vectors in ambient coordinates.
    priority, if given, maps (k, coord) to a pivot preference key so that
    ideal-supported coordinates can be forced into the pivot set.
    Raises NotDifferentialClosed when d(ideal_k) leaves ideal_{k+1}.
    """
    rref_data = {}
    for k in range(kmax + 1):
        prio = (lambda j, kk=k: priority(kk, j)) if priority else None
        rref_data[k] = _rref(ideal_by_k.get(k, []), prio)
    for k in range(kmax):
        mat = matrices_by_k.get(k)
        if mat is None:
            continue
        rows, pivots = rref_data[k + 1]
        for vec in ideal_by_k.get(k, []):
            if not in_span(mat.mul_vec(vec), rows, pivots):
                raise NotDifferentialClosed(
                    "ideal at slot %d is not mapped into ideal at slot %d" % (k, k + 1))
    rep_coords, q_dims = {}, {}
    for k in range(kmax + 1):
        _, pivots = rref_data[k]
        piv = set(pivots)
        rep_coords[k] = [j for j in range(dims_by_k.get(k, 0)) if j not in piv]
        q_dims[k] = len(rep_coords[k])
    q_mats = {}
    for k in range(kmax):
        mat = matrices_by_k.get(k)
        if mat is None:
            continue
        rows, pivots = rref_data[k + 1]
        index = {c: t for t, c in enumerate(rep_coords[k + 1])}
        cols = []
        for j in rep_coords[k]:
            red = reduce_mod(mat.column(j), rows, pivots)
            col = {}
            for c, v in red.items():
                if c not in index:
                    raise LinalgError("induced differential leaves the transversal")
                col[index[c]] = v
            cols.append(col)
        q_mats[k] = SparseMatrix.from_columns(q_dims[k + 1], cols)
    return QuotientComplex(q_dims, rep_coords, q_mats, rref_data)
