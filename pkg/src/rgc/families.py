"""Basis enumeration for the graph families.

Families:

* "tw":     all ribbon graphs (black vertices of any positive valence);
* "chgrav": black vertices at least trivalent;
* "st":     ambient slice used by the string topology quotient (same
            enumeration as "chgrav"; the quotient itself lives elsewhere);
* "trees":  genus 0, one boundary, black vertices at least trivalent.

Enumeration is two-staged: stage one lists connected unlabeled maps per edge
count (vertex partition + matching, deduplicated by canonical form), stage
two colors vertices, assigns white and boundary labels, and drops graphs
killed by orientation-reversing automorphisms.  Connected maps with as many
vertices as edges are unicyclic and generated directly from plane trees on a
cycle, which keeps the two-boundary all-black family reachable at nine edges.
"""

from itertools import combinations, permutations

from .ribbon import (BLACK, WHITE, RibbonGraph, build_graph, lone_black,
                     unit_white)

FAMILIES = ("tw", "chgrav", "st", "trees")


def edge_count(g, m, n, k):
    return n + k + m + 2 * g - 2


def _partitions(total, max_part=None):
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _matchings(darts):
    """All perfect matchings of the list, as lists of pairs."""
    if not darts:
        yield []
        return
    a = darts[0]
    for t in range(1, len(darts)):
        b = darts[t]
        rest = darts[1:t] + darts[t + 1:]
        for m in _matchings(rest):
            yield [(a, b)] + m


def _uncolored_key(alpha, verts):
    """Canonical key of a map forgetting colors and labels."""
    g = RibbonGraph(0, alpha, [(BLACK, 0, ds) for ds in verts],
                    tuple(range(1, 1 + _n_cycles(alpha, verts))))
    can, _ = g.canonical()
    return can.alpha, tuple(ds for _, _, ds in can.vertices)


def _n_cycles(alpha, verts):
    g = RibbonGraph(0, alpha, [(BLACK, 0, ds) for ds in verts], ())
    return g.n_boundaries


def connected_maps(n_edges):
    """Connected unlabeled maps with the given edge count, up to isomorphism.

    Returns a list of (alpha, rotations) pairs in canonical dart labeling.
    """
    if n_edges == 0:
        return []
    found = {}
    nd = 2 * n_edges
    for part in _partitions(nd):
        # vertices are blocks of consecutive darts with rotation order
        verts = []
        pos = 0
        for p in part:
            verts.append(tuple(range(pos, pos + p)))
            pos += p
        vert_of = {}
        for vi, ds in enumerate(verts):
            for x in ds:
                vert_of[x] = vi
        for match in _matchings(list(range(nd))):
            alpha = [0] * nd
            for a, b in match:
                alpha[a], alpha[b] = b, a
            # connectivity over vertices
            parent = list(range(len(verts)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x
            for a, b in match:
                ra, rb = find(vert_of[a]), find(vert_of[b])
                if ra != rb:
                    parent[ra] = rb
            if len({find(v) for v in range(len(verts))}) != 1:
                continue
            key = _uncolored_key(tuple(alpha), verts)
            if key not in found:
                found[key] = key
    return sorted(found.values())


def _plane_trees(n):
    """Rooted plane trees with n vertices as nested tuples of children."""
    if n == 1:
        yield ()
        return
    for first in range(1, n):
        for left in _plane_trees(first):
            for rest in _forests(n - 1 - first):
                yield (left,) + rest


def _forests(n):
    """Ordered forests of rooted plane trees with n vertices total."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for tree in _plane_trees(first):
            for rest in _forests(n - first):
                yield (tree,) + rest


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def unicyclic_maps(n_vertices):
    """Connected maps with as many vertices as edges, up to isomorphism.

    These are cycles with plane trees planted in the corners; every such map
    has genus 0 and exactly two boundaries.
    """

    found = {}

    def emit(alpha, verts):
        key = _uncolored_key(tuple(alpha), [tuple(v) for v in verts])
        found.setdefault(key, key)

    k = n_vertices
    for c in range(1, k + 1):
        for sizes in _compositions(k - c, 2 * c):
            forest_choices = [list(_forests(s)) for s in sizes]
            _assemble_unicyclic(c, forest_choices, emit)
    return sorted(found.values())


def _assemble_unicyclic(c, forest_choices, emit):
    import itertools as it
    for combo in it.product(*forest_choices):
        # darts are allocated on the fly
        counter = [0]

        def new_dart():
            counter[0] += 1
            return counter[0] - 1
        alpha_pairs = []
        verts = []

        def build_tree(tree, parent_dart):
            """Returns the rotation of the tree's root, starting with the
            dart toward the parent."""
            root_rot = [parent_dart]
            for child in tree:
                up = new_dart()
                down = new_dart()
                alpha_pairs.append((up, down))
                root_rot.append(up)
                verts.append(build_tree(child, down))
            return root_rot

        # cycle darts: vertex t has darts fwd[t] (to t+1) and back[t] (to t-1)
        fwd = [new_dart() for _ in range(c)]
        back = [new_dart() for _ in range(c)]
        for t in range(c):
            alpha_pairs.append((fwd[t], back[(t + 1) % c]))
        cycle_rots = []
        for t in range(c):
            # rotation: fwd dart, corner A forest, back dart, corner B forest
            rot = [fwd[t]]
            for tree in combo[2 * t]:
                up = new_dart()
                down = new_dart()
                alpha_pairs.append((up, down))
                rot.append(up)
                verts.append(build_tree(tree, down))
            rot.append(back[t])
            for tree in combo[2 * t + 1]:
                up = new_dart()
                down = new_dart()
                alpha_pairs.append((up, down))
                rot.append(up)
                verts.append(build_tree(tree, down))
            cycle_rots.append(rot)
        nd = counter[0]
        alpha = [0] * nd
        for a, b in alpha_pairs:
            alpha[a], alpha[b] = b, a
        emit(alpha, cycle_rots + verts)


def _stage2(maps, d, g, m, n, k, min_black):
    """Color, label, and dedup stage-one maps into a basis."""
    out = {}
    for alpha, rotations in maps:
        nv = len(rotations)
        if nv != n + k:
            continue
        # quick genus/boundary screen
        probe = RibbonGraph(d, alpha, [(BLACK, 0, ds) for ds in rotations], ())
        if probe.n_boundaries != m:
            continue
        degs = [len(ds) for ds in rotations]
        for whites in combinations(range(nv), n):
            wset = set(whites)
            if any(degs[i] < min_black for i in range(nv) if i not in wset):
                continue
            for wperm in permutations(range(1, n + 1)):
                verts = []
                wi = 0
                for i, ds in enumerate(rotations):
                    if i in wset:
                        verts.append((WHITE, wperm[wi], ds))
                        wi += 1
                    else:
                        verts.append((BLACK, 0, ds))
                for bperm in permutations(range(1, m + 1)):
                    cand = RibbonGraph(d, alpha, verts, bperm)
                    can, sign = cand.canonical()
                    if sign != 0:
                        out[can.key()] = can
    return [out[key] for key in sorted(out)]


def _stage2_orbits(maps, d, g, m, n, k, min_black):
    """One labeled representative per orbit of the white/boundary label
    action.  Much smaller than the full basis; useful for per-graph
    identities that commute with relabeling."""
    out = {}
    for alpha, rotations in maps:
        nv = len(rotations)
        if nv != n + k:
            continue
        probe = RibbonGraph(d, alpha, [(BLACK, 0, ds) for ds in rotations], ())
        if probe.n_boundaries != m:
            continue
        degs = [len(ds) for ds in rotations]
        for whites in combinations(range(nv), n):
            wset = set(whites)
            if any(degs[i] < min_black for i in range(nv) if i not in wset):
                continue
            verts = []
            stripped = []
            wi = 0
            for i, ds in enumerate(rotations):
                if i in wset:
                    wi += 1
                    verts.append((WHITE, wi, ds))
                    stripped.append((WHITE, 1, ds))
                else:
                    verts.append((BLACK, 0, ds))
                    stripped.append((BLACK, 0, ds))
            # orbit key: canonical form with labels collapsed
            skey = RibbonGraph(0, alpha, stripped,
                               (1,) * m).canonical()[0].key()
            if skey in out:
                continue
            out[skey] = RibbonGraph(d, alpha, verts, tuple(range(1, m + 1)))
    return [out[key] for key in sorted(out)]


def enumerate_orbit_reps(family, d, g, m, n, k):
    """Labeled representatives, one per label orbit of the basis slice.

    May include representatives whose isomorphism class is orientation
    killed; callers testing linear identities can skip those.
    """
    if family not in FAMILIES:
        raise ValueError("unknown family %r" % family)
    if family == "trees" and (g != 0 or m != 1):
        return []
    if g < 0 or m < 1 or n < 0 or k < 0:
        return []
    e = edge_count(g, m, n, k)
    if e < 0:
        return []
    if e == 0:
        return enumerate_basis(family, d, g, m, n, k)
    if n + k == 0:
        return []
    min_black = 1 if family == "tw" else 3
    maps = _stage1(e, n + k)
    return _stage2_orbits(maps, d, g, m, n, k, min_black)


_STAGE1_CACHE = {}


def _stage1(n_edges, n_vertices):
    key = (n_edges, n_vertices)
    if key in _STAGE1_CACHE:
        return _STAGE1_CACHE[key]
    if n_vertices == n_edges:
        maps = unicyclic_maps(n_vertices)
    else:
        from . import cache
        maps = cache.cached_maps(n_edges)
        maps = [mp for mp in maps if len(mp[1]) == n_vertices]
    _STAGE1_CACHE[key] = maps
    return maps


def enumerate_basis(family, d, g, m, n, k):
    """Basis of the (g; m, n; k) slice of the chosen family over Q.

    Returns canonical graphs sorted by their keys; orientation-killed
    isomorphism classes are omitted.
    """
    if family not in FAMILIES:
        raise ValueError("unknown family %r" % family)
    if family == "trees" and (g != 0 or m != 1):
        return []
    if g < 0 or m < 1 or n < 0 or k < 0:
        return []
    e = edge_count(g, m, n, k)
    if e < 0:
        return []
    if e == 0:
        if g == 0 and m == 1 and n == 1 and k == 0:
            return [unit_white(d).canonical()[0]]
        if g == 0 and m == 1 and n == 0 and k == 1 and family == "tw":
            return [lone_black(d).canonical()[0]]
        return []
    if n + k == 0:
        return []
    min_black = 1 if family == "tw" else 3
    maps = _stage1(e, n + k)
    return _stage2(maps, d, g, m, n, k, min_black)
