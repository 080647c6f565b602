"""Content-addressed result cache.

Results live under $RGC_CACHE_DIR (default ./.rgc-cache) keyed by a hash of
the computation kind, its parameters, and the cache format version.  Entries
are JSON; hitting a corrupt entry falls back to recomputation.
"""

import hashlib
import json
import os

CACHE_VERSION = 1


def cache_dir():
    return os.environ.get("RGC_CACHE_DIR", os.path.join(os.curdir, ".rgc-cache"))


def _key_path(kind, params):
    blob = json.dumps({"kind": kind, "params": params,
                       "version": CACHE_VERSION}, sort_keys=True)
    h = hashlib.sha256(blob.encode()).hexdigest()
    return os.path.join(cache_dir(), "%s-%s.json" % (kind, h[:24]))


def load(kind, params):
    path = _key_path(kind, params)
    try:
        with open(path) as fh:
            return json.load(fh)["data"]
    except (OSError, ValueError, KeyError):
        return None


def store(kind, params, data):
    path = _key_path(kind, params)
    os.makedirs(cache_dir(), exist_ok=True)
    tmp = path + ".tmp.%d" % os.getpid()
    with open(tmp, "w") as fh:
        json.dump({"kind": kind, "params": params, "data": data}, fh)
    os.replace(tmp, path)


def cached_maps(n_edges):
    """Stage-one map enumeration, cached on disk (it is the slow part)."""
    from .families import connected_maps
    data = load("maps", {"edges": n_edges})
    if data is not None:
        return [(tuple(alpha), tuple(tuple(v) for v in verts))
                for alpha, verts in data]
    maps = connected_maps(n_edges)
    store("maps", {"edges": n_edges},
          [[list(alpha), [list(v) for v in verts]] for alpha, verts in maps])
    return maps
