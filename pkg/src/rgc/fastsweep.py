"""Driver for the native delta^2 sweep.

The C helper reimplements the twisted differential and the canonical form;
validate_native() checks it term by term against the Python differential
before any sweep result is trusted.  The helper binary is compiled on
demand into the cache directory.
"""

import os
import subprocess
from fractions import Fraction

from .cache import cache_dir
from .families import enumerate_basis, enumerate_orbit_reps
from .properad import twist_differential
from .ribbon import WHITE
from .verify import bidegrees

_SOURCE = os.path.join(os.path.dirname(__file__), "_native", "delta2.c")


class NativeUnavailable(RuntimeError):
    pass


def native_binary():
    """Compile the helper once per cache directory; returns the path."""
    out = os.path.join(cache_dir(), "delta2")
    if os.path.exists(out) and os.path.getmtime(out) >= os.path.getmtime(_SOURCE):
        return out
    os.makedirs(cache_dir(), exist_ok=True)
    for cc in ("cc", "gcc", "clang"):
        try:
            subprocess.run([cc, "-O2", "-o", out, _SOURCE],
                           check=True, capture_output=True)
            return out
        except (FileNotFoundError, subprocess.CalledProcessError):
            continue
    raise NativeUnavailable("no working C compiler for the sweep helper")


def graph_line(g):
    """Serialize a canonical graph for the helper."""
    nd = len(g.alpha)
    sig = g.sigma
    vcol = [0] * nd
    for c, l, ds in g.vertices:
        code = l if c == WHITE else 0
        for x in ds:
            vcol[x] = code
    blab = [0] * nd
    for cyc, l in zip(g.boundaries(), g.bnd_labels):
        for x in cyc:
            blab[x] = l
    nums = [nd] + list(g.alpha) + list(sig) + vcol + blab
    return "G " + " ".join(str(v) for v in nums)


def key_hex(g):
    """The helper's canonical key for a canonical graph, as hex."""
    nd = len(g.alpha)
    sig = g.sigma
    vcol = [0] * nd
    for c, l, ds in g.vertices:
        code = l if c == WHITE else 0
        for x in ds:
            vcol[x] = code
    blab = [0] * nd
    for cyc, l in zip(g.boundaries(), g.bnd_labels):
        for x in cyc:
            blab[x] = l
    data = bytes([nd] + list(g.alpha) + list(sig) + vcol + blab)
    return data.hex()


def _run(mode, dpar, lines, timeout=None):
    exe = native_binary()
    proc = subprocess.run([exe, mode, str(dpar)],
                          input="\n".join(lines) + "\n",
                          capture_output=True, text=True, timeout=timeout)
    if proc.returncode not in (0, 2):
        raise RuntimeError("helper failed: %s" % proc.stderr[:500])
    return proc


def validate_native(d, graphs):
    """Compare native delta with the Python delta on the given graphs.

    Returns the number of graphs compared; raises AssertionError on any
    mismatch in the term sets or coefficients.
    """
    cans = []
    for g in graphs:
        can, sign = g.canonical()
        if sign != 0 and len(can.alpha) >= 2:
            cans.append(can)
    proc = _run("delta", d % 2, [graph_line(c) for c in cans])
    lines = proc.stdout.split()
    pos = 0
    for can in cans:
        assert lines[pos] == "D", "bad helper output"
        cnt = int(lines[pos + 1])
        pos += 2
        got = {}
        for _ in range(cnt):
            coeff2 = int(lines[pos])
            hx = lines[pos + 1]
            pos += 2
            got[hx] = Fraction(coeff2, 2)
        want = {}
        for t, c in twist_differential(can).terms.items():
            want[key_hex(t)] = c
        assert got == want, "native delta disagrees on %r" % (can,)
    return len(cans)


def _source_fingerprint():
    """Hash of the sources that define the differential semantics; sweep
    results are cached against it."""
    import hashlib
    here = os.path.dirname(__file__)
    h = hashlib.sha256()
    for name in (_SOURCE, os.path.join(here, "properad.py"),
                 os.path.join(here, "ribbon.py"),
                 os.path.join(here, "families.py"), __file__):
        with open(name, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()[:16]


def sweep_cached(d, e_max, k_max, timeout=None):
    """sweep() with its (checked, failures) result cached on disk."""
    from . import cache
    params = {"d": d, "e": e_max, "k": k_max, "src": _source_fingerprint()}
    data = cache.load("sweep", params)
    if data is not None:
        return tuple(data)
    res = sweep(d, e_max, k_max, timeout=timeout)
    cache.store("sweep", params, list(res))
    return res


def sweep(d, e_max, k_max, timeout=None):
    """Native delta^2 = 0 check over orbit representatives of all slices
    with the given bounds.  Returns (checked, failures)."""
    lines = []
    small = 0
    for (g, m, n, k) in bidegrees(e_max, k_max):
        lines.append("S")
        for rep in enumerate_orbit_reps("tw", d, g, m, n, k):
            can, sign = rep.canonical()
            if sign == 0:
                continue
            if len(can.alpha) < 2:
                # dartless corollas: checked directly in Python
                from .verify import delta_of_sum
                from .properad import twist_differential_cached
                dd = delta_of_sum(twist_differential_cached(can))
                assert dd.is_zero(), "delta^2 != 0 on dartless corolla"
                small += 1
                continue
            lines.append(graph_line(can))
    proc = _run("sweep", d % 2, lines, timeout=timeout)
    out = proc.stdout.strip().split()
    assert out[0] == "CHECKED" and out[2] == "FAIL", proc.stdout
    return int(out[1]) + small, int(out[3])
