"""Consistency sweeps for the twisted differential.

delta commutes with the relabeling action on white vertices and boundaries,
so delta^2 = 0 only needs to be checked on one representative per label
orbit; equivariance itself is checked separately on random relabelings.
"""

import itertools
import random

from .families import enumerate_basis, enumerate_orbit_reps, edge_count
from .properad import twist_differential_cached
from .ribbon import FormalSum, relabel_boundaries, relabel_whites


def bidegrees(e_max, k_max, g_max=None):
    """All (g, m, n, k) with m >= 1 and edge count <= e_max, k <= k_max."""
    out = []
    g = 0
    while edge_count(g, 1, 0, 0) <= e_max:
        for k in range(k_max + 1):
            for m in itertools.count(1):
                if edge_count(g, m, 0, k) > e_max:
                    break
                for n in itertools.count(0):
                    if edge_count(g, m, n, k) > e_max:
                        break
                    out.append((g, m, n, k))
        g += 1
        if g_max is not None and g > g_max:
            break
    return out


def delta_of_sum(fs):
    out = FormalSum()
    for gr, c in fs.terms.items():
        out += twist_differential_cached(gr).scaled(c)
    return out


def delta_squared_sweep(d_values, e_max, k_max, progress=None):
    """Check delta^2 = 0 on orbit representatives of every slice.

    Returns (graphs_checked, failures) where failures is a list of
    (d, g, m, n, k, graph) for which delta^2 was nonzero.
    """
    checked = 0
    failures = []
    for d in d_values:
        for (g, m, n, k) in bidegrees(e_max, k_max):
            for rep in enumerate_orbit_reps("tw", d, g, m, n, k):
                can, sign = rep.canonical()
                if sign == 0:
                    continue
                dd = delta_of_sum(twist_differential_cached(can))
                checked += 1
                if not dd.is_zero():
                    failures.append((d, g, m, n, k, can))
            if progress:
                progress(d, g, m, n, k, checked)
    return checked, failures


def _compose_sum(fs, i, g2, j):
    from .properad import compose
    out = FormalSum()
    for gr, c in fs.terms.items():
        out += compose(gr, i, g2, j).scaled(c)
    return out


_POOL_CACHE = {}


def _graph_pool(d, e_max, need_white=True):
    key = (d, e_max, need_white)
    if key in _POOL_CACHE:
        return _POOL_CACHE[key]
    pool = []
    for g in range(0, 2):
        for m in range(1, 4):
            for n in range(0 if not need_white else 1, 4):
                e = edge_count(g, m, n, 0)
                if 1 <= e <= e_max:
                    pool.extend(enumerate_basis("tw", d, g, m, n, 0))
    _POOL_CACHE[key] = pool
    return pool


def associativity_trials(d_values, trials, e_max=3, seed=0):
    """Composition is associative: plugging g3 into a white of g2 before or
    after plugging g2 into g1 gives the same FormalSum (the inner graph's
    whites land at slots n1, n1+1, ... of the composite)."""
    from .properad import compose
    rng = random.Random(seed)
    failures = []
    done = 0
    for _ in range(trials):
        d = d_values[rng.randrange(len(d_values))]
        pool = _graph_pool(d, e_max)
        g1 = pool[rng.randrange(len(pool))]
        g2 = pool[rng.randrange(len(pool))]
        g3 = pool[rng.randrange(len(pool))]
        i = rng.randrange(1, g1.n_white + 1)
        j2 = rng.randrange(1, g2.n_boundaries + 1)
        w = rng.randrange(1, g2.n_white + 1)
        j3 = rng.randrange(1, g3.n_boundaries + 1)
        inner = compose(g2, w, g3, j3)
        lhs = FormalSum()
        for gr, c in inner.terms.items():
            lhs += compose(g1, i, gr, j2).scaled(c)
        outer = compose(g1, i, g2, j2)
        rhs = FormalSum()
        n1 = g1.n_white
        for gr, c in outer.terms.items():
            rhs += compose(gr, n1 - 1 + w, g3, j3).scaled(c)
        done += 1
        if not (lhs - rhs).is_zero():
            failures.append((d, g1, i, g2, j2, w, g3, j3))
    return done, failures


def random_all_white_pool(d, e_max=3):
    """All-white graphs with 1 <= E <= e_max (the k = 0 slices)."""
    return _graph_pool(d, e_max)


def _word_degree(space, ws):
    degs = {sum(space.word_degree(w) for w in key) for key in ws.terms}
    if len(degs) != 1:
        raise ValueError("inhomogeneous word sum")
    return degs.pop()


def rho_morphism_trials(d_values, trials, e_max=3, maxlen=5, dim_max=4,
                        seed=0):
    """rho(g1 o_i g2) equals rho(g1) o rho(g2) on random instances.

    The composite places g2's whites at slots n1..n1+n2-1.  Matching the
    two evaluations costs three Koszul signs: rho(g2) (operator degree
    (1-d)E2) passes the words in slots 1..i-1; the inner argument block
    moves left past the words in slots i..n1-1; and the two operators
    exchange ((1-d)E2 * (1-d)E1).
    """
    from .cyclic import (WordSum, apply_graph, random_paired_space,
                         random_word, word_sum)
    from .properad import compose
    rng = random.Random(seed)
    failures = []
    done = 0
    for _ in range(trials):
        d = d_values[rng.randrange(len(d_values))]
        pool = _graph_pool(d, e_max)
        single = [p for p in pool if p.n_boundaries == 1]
        g1 = pool[rng.randrange(len(pool))]
        g2 = single[rng.randrange(len(single))]
        i = rng.randrange(1, g1.n_white + 1)
        j = rng.randrange(1, g2.n_boundaries + 1)
        comp = compose(g1, i, g2, j)
        sp = random_paired_space(d, rng)
        n1, n2 = g1.n_white, g2.n_white
        words = [random_word(sp, rng, maxlen) for _ in range(n1 - 1 + n2)]
        lhs = WordSum(sp)
        for gr, c in comp.terms.items():
            lhs += apply_graph(gr, sp, words).scaled(c)
        inner = apply_graph(g2, sp, words[n1 - 1:])
        pre = sum(_word_degree(sp, ws) for ws in words[:i - 1])
        post = sum(_word_degree(sp, ws) for ws in words[i - 1:n1 - 1])
        vin = sum(_word_degree(sp, ws) for ws in words[n1 - 1:])
        opdeg = (1 - d) * g2.n_edges
        sgn = (-1) ** ((opdeg * pre + vin * post
                        + opdeg * (1 - d) * g1.n_edges) % 2)
        rhs = WordSum(sp)
        for key, c in inner.terms.items():
            w1 = words[:i - 1] + [word_sum(sp, key[j - 1])] \
                + words[i - 1:n1 - 1]
            rhs += apply_graph(g1, sp, w1).scaled(c * sgn)
        done += 1
        if not (lhs - rhs).is_zero():
            failures.append((d, g1, i, g2, j))
    return done, failures


def rho_chain_map_trials(d_values, trials, e_max=3, maxlen=5, seed=0):
    """The boundary commutes with rho up to the operator-degree sign:
    del(rho(G)(words)) = (-1)^{(1-d)E} sum_t (Koszul) rho(G)(.., del w_t, ..)."""
    from .cyclic import (WordSum, apply_graph, differential,
                         random_paired_space, random_word)
    rng = random.Random(seed)
    failures = []
    done = 0
    for _ in range(trials):
        d = d_values[rng.randrange(len(d_values))]
        pool = _graph_pool(d, e_max)
        gr = pool[rng.randrange(len(pool))]
        sp = random_paired_space(d, rng, with_diff=True)
        words = [random_word(sp, rng, maxlen) for _ in range(gr.n_white)]
        lhs = differential(apply_graph(gr, sp, words))
        deg_op = (1 - d) * gr.n_edges
        rhs = WordSum(sp)
        pre = 0
        for t, ws in enumerate(words):
            w2 = list(words)
            w2[t] = differential(ws)
            rhs += apply_graph(gr, sp, w2).scaled((-1) ** ((deg_op + pre) % 2))
            pre += _word_degree(sp, ws)
        done += 1
        if not (lhs - rhs).is_zero():
            failures.append((d, gr))
    return done, failures


def lob_word_trials(d_values, trials, seed=0):
    """Word-level Lie bialgebra identities on random paired spaces:
    Jacobi, co-Jacobi, Drinfeld compatibility, involutivity."""
    from .cyclic import (cojacobiator_words, drinfeld_words,
                         involution_words, jacobiator_words,
                         random_paired_space, random_word)
    rng = random.Random(seed)
    failures = []
    done = 0
    for _ in range(trials):
        d = d_values[rng.randrange(len(d_values))]
        sp = random_paired_space(d, rng)
        a, b, c = (random_word(sp, rng) for _ in range(3))
        checks = [("jacobi", jacobiator_words(a, b, c)),
                  ("cojacobi", cojacobiator_words(a)),
                  ("drinfeld", drinfeld_words(a, b)),
                  ("involutivity", involution_words(a))]
        done += 1
        for name, ws in checks:
            if not ws.is_zero():
                failures.append((name, d, a, b, c))
    return done, failures


def st_class_report(d, canary=False):
    """Cycle / coboundary status of the four symmetrized classes in ST_d.

    Returns a list of dicts with the slice, cycle flag and coboundary flag.
    canary=True flips nothing but also reports the ambient (chgrav) status
    of the differential on each class.
    """
    from .linalg import is_coboundary
    from .st import quartette, st_quotient
    out = []
    for (g, m, n, k, fs) in quartette(d):
        bases, quot = st_quotient(d, g, m, n, k + 1)
        index = {gr: t for t, gr in enumerate(bases[k])}
        vec = {}
        for gr, c in fs.terms.items():
            can, sign = gr.canonical()
            vec[index[can]] = vec.get(index[can], 0) + c * sign
        qvec = quot.project(k, {t: c for t, c in vec.items() if c})
        mat = quot.matrices.get(k)
        img = mat.mul_vec(qvec) if mat is not None else {}
        is_cycle = not any(img.values())
        cob = False
        if is_cycle and k > 0:
            cob = is_coboundary(qvec, quot.matrices.get(k - 1))
        elif is_cycle:
            cob = is_coboundary(qvec, None)
        out.append({"slice": (g, m, n, k), "cycle": is_cycle,
                    "coboundary": cob, "quotient_dim": quot.dims.get(k)})
    return out


def st_cobracket_check(d):
    """delta of the cobracket generator's image: nonzero in chgrav, but
    every term lies in the ideal, so the image is delta-closed in ST.

    Returns a dict with the term count, the nonzero flag and the all-ideal
    flag (both must be true)."""
    from .ribbon import BLACK, loop_graph
    from .st import is_ideal
    fs = FormalSum()
    fs.add(loop_graph(d), 1)
    img = delta_of_sum(fs)
    in_chgrav = all(
        all(len(ds) >= 3 for col, l, ds in g.vertices if col == BLACK)
        for g in img.terms)
    return {"terms": len(img.terms),
            "nonzero_in_chgrav": not img.is_zero() and in_chgrav,
            "all_ideal": all(is_ideal(g) for g in img.terms)}


def st_direct_vs_induced(d, e_max=5):
    """The induced quotient differential equals the direct split rule on
    every quotient basis with E <= e_max.  The direct rule's output is an
    ambient chain (non-ideal chgrav graphs); both sides are compared in
    quotient coordinates.  Returns (graphs_checked, mismatches)."""
    from .st import direct_differential, st_quotient
    checked = 0
    mismatches = []
    for (g, m, n, k) in bidegrees(e_max, e_max):
        if edge_count(g, m, n, k + 1) > e_max:
            continue
        bases, quot = st_quotient(d, g, m, n, k + 1)
        if not quot.rep_coords[k]:
            continue
        induced = quot.matrices.get(k)
        index = {gr: t for t, gr in enumerate(bases[k + 1])}
        for col_j, amb_j in enumerate(quot.rep_coords[k]):
            vec = {}
            for gr, c in direct_differential(bases[k][amb_j]).terms.items():
                can, sign = gr.canonical()
                if sign == 0:
                    continue
                t = index[can]
                v = vec.get(t, 0) + c * sign
                if v:
                    vec[t] = v
                elif t in vec:
                    del vec[t]
            want = quot.project(k + 1, vec)
            got = induced.column(col_j) if induced is not None else {}
            checked += 1
            if {a: b for a, b in want.items() if b} != \
                    {a: b for a, b in got.items() if b}:
                mismatches.append((g, m, n, k, col_j))
    return checked, mismatches


def equivariance_trials(d_values, e_max, trials, seed=0):
    """Check delta(sigma G) = sigma delta(G) on random relabelings.

    sigma acts by permuting white labels and boundary labels; for odd d a
    label permutation can change the orientation, which relabel_* absorb
    into the graph sign, so the identity must hold on the nose.
    """
    rng = random.Random(seed)
    pool = []
    for d in d_values:
        for (g, m, n, k) in bidegrees(e_max, e_max):
            if n < 2 and m < 2:
                continue
            basis = enumerate_basis("tw", d, g, m, n, k)
            pool.extend((gr, m, n) for gr in basis)
    if not pool:
        return 0, []
    failures = []
    done = 0
    for _ in range(trials):
        gr, m, n = pool[rng.randrange(len(pool))]
        wperm = list(range(1, n + 1))
        bperm = list(range(1, m + 1))
        rng.shuffle(wperm)
        rng.shuffle(bperm)
        wmap = {i + 1: wperm[i] for i in range(n)}
        bmap = {i + 1: bperm[i] for i in range(m)}
        moved = relabel_boundaries(relabel_whites(gr, wmap), bmap)
        lhs = FormalSum()
        lhs.add(moved)
        lhs = delta_of_sum(lhs)
        rhs = FormalSum()
        for t, c in twist_differential_cached(gr).terms.items():
            rhs.add(relabel_boundaries(relabel_whites(t, wmap), bmap), c)
        done += 1
        if not (lhs - rhs).is_zero():
            failures.append((gr, wmap, bmap))
    return done, failures
