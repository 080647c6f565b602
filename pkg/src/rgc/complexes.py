"""Chain complexes spanned by graph family slices.

The differential raises the black vertex count k by one (and the edge count
with it), so a (g; m, n) slice is a complex graded by k.  The cohomological
degree of the slot k piece is (1 - d) * E + k * d with E = n + k + m + 2g - 2.
"""

from . import linalg
from .families import edge_count, enumerate_basis
from .properad import twist_differential_cached


class NotInFamily(Exception):
    """A differential term left the span of the target basis."""


def differential_matrix(src_basis, dst_basis, diff=None):
    """Matrix of the differential from one basis list to the next.

    Column j holds the coordinates of diff(src_basis[j]) in dst_basis.
    """
    if diff is None:
        diff = twist_differential_cached
    idx = {gr.key(): i for i, gr in enumerate(dst_basis)}
    cols = []
    for gr in src_basis:
        col = {}
        for h, c in diff(gr).terms.items():
            i = idx.get(h.key())
            if i is None:
                raise NotInFamily("differential term leaves the basis span")
            col[i] = c
        cols.append(col)
    return linalg.SparseMatrix.from_columns(len(dst_basis), cols)


def family_complex(family, d, g, m, n, kmax):
    """Bases and differential matrices for slots k = 0 .. kmax.

    Returns (bases_by_k, dims_by_k, matrices_by_k); matrices_by_k[k] maps
    slot k to slot k + 1 and stops at kmax - 1.
    """
    bases = {k: enumerate_basis(family, d, g, m, n, k)
             for k in range(kmax + 1)}
    dims = {k: len(bases[k]) for k in range(kmax + 1)}
    mats = {k: differential_matrix(bases[k], bases[k + 1])
            for k in range(kmax)}
    return bases, dims, mats


def degree_of_slot(d, g, m, n, k):
    """Cohomological degree of the slot k piece of the (g; m, n) slice."""
    e = edge_count(g, m, n, k)
    return (1 - d) * e + k * d


def family_cohomology(family, d, g, m, n, kmax, coeff="auto"):
    """Cohomology table of the (g; m, n) slice up to slot kmax.

    Slot kmax is flagged truncated (its outgoing differential is unknown);
    all lower slots are exact.
    """
    _, dims, mats = family_complex(family, d, g, m, n, kmax)
    return linalg.cohomology_dims(dims, mats, kmax, coeff=coeff)
