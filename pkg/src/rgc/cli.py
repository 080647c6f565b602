"""Command line interface: basis sizes, cohomology tables, verification
suites, string operations on cyclic words, matrix export, and a report
mode that renders figures next to the machine-readable output.

All commands emit a versioned JSON report (schema rgc-report/1) unless csv
or sms output is selected.
"""

import argparse
import csv
import io
import json
import os
import sys
import time

SCHEMA = "rgc-report/1"


class ConfigError(Exception):
    pass


def parse_coeff(text):
    if text in (None, "", "auto"):
        return "auto"
    if text == "q":
        return "q"
    if text.startswith("p:"):
        p = int(text[2:])
        if p < 2:
            raise ConfigError("not a prime: %d" % p)
        return p
    raise ConfigError("bad --coeff %r (use q or p:<prime>)" % text)


def parse_d_values(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def _report(command, config, tables, t0):
    return {"schema": SCHEMA, "command": command, "config": config,
            "tables": tables, "timing": {"seconds": round(time.time() - t0, 3)}}


def _emit(report, args, rows_for_csv=None):
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        for row in rows_for_csv or []:
            w.writerow(row)
        text = buf.getvalue()
    else:
        raise ConfigError("format %r not supported for this command" % fmt)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_of(args, keys):
    return {k: getattr(args, k) for k in keys if getattr(args, k, None)
            is not None}


def cmd_basis(args):
    from .families import enumerate_basis
    from .st import st_basis
    t0 = time.time()
    ks = [args.k] if args.k is not None else list(range(args.kmax + 1))
    sizes = {}
    listing = {}
    for k in ks:
        if args.family == "st":
            basis = st_basis(args.d, args.g, args.m, args.n, k)
        else:
            basis = enumerate_basis(args.family, args.d, args.g, args.m,
                                    args.n, k)
        sizes[k] = len(basis)
        if args.list:
            from .ribbon import graph_to_text
            listing[k] = [graph_to_text(g) for g in basis]
    tables = {"sizes": sizes}
    if args.list:
        tables["graphs"] = listing
    rep = _report("basis", _config_of(args, ("family", "d", "g", "m", "n",
                                             "k", "kmax")), tables, t0)
    _emit(rep, args, [("k", "size")] + sorted(sizes.items()))


def cmd_cohomology(args):
    from .complexes import degree_of_slot, family_cohomology
    from .st import st_cohomology
    t0 = time.time()
    coeff = parse_coeff(args.coeff)
    if args.family == "st":
        tab = st_cohomology(args.d, args.g, args.m, args.n, args.kmax,
                            coeff=coeff)
    else:
        tab = family_cohomology(args.family, args.d, args.g, args.m, args.n,
                                args.kmax, coeff=coeff)
    rows = []
    for k in tab.degrees:
        rows.append({"k": k,
                     "degree": degree_of_slot(args.d, args.g, args.m,
                                              args.n, k),
                     "dim_basis": tab.basis_sizes.get(k),
                     "dim_cohomology": tab.dims[k],
                     "flag": tab.flags[k]})
    rep = _report("cohomology",
                  _config_of(args, ("family", "d", "g", "m", "n", "kmax",
                                    "coeff")),
                  {"cohomology": rows}, t0)
    _emit(rep, args, [("k", "degree", "dim_basis", "dim_cohomology", "flag")]
          + [(r["k"], r["degree"], r["dim_basis"], r["dim_cohomology"],
              r["flag"]) for r in rows])


SUITES = ("delta2", "equivariance", "associativity", "lob-graphs",
          "lob-words", "rho", "st-classes", "st-direct", "st-cobracket",
          "mc")


def run_suite(suite, d_values, e_max, k_max, trials, seed):
    from . import verify
    if suite == "delta2":
        try:
            from .fastsweep import sweep_cached
            total, failures = 0, []
            for d in d_values:
                checked, fails = sweep_cached(d, e_max, k_max)
                total += checked
                failures += fails
            return {"checked": total, "failures": failures, "passed":
                    not failures, "engine": "native"}
        except Exception:
            checked, failures = verify.delta_squared_sweep(
                d_values, e_max, k_max)
            return {"checked": checked, "failures": [str(f) for f in failures],
                    "passed": not failures, "engine": "python"}
    if suite == "equivariance":
        done, failures = verify.equivariance_trials(d_values, min(e_max, 4),
                                                    trials, seed=seed)
        return {"checked": done, "failures": len(failures),
                "passed": not failures}
    if suite == "associativity":
        done, failures = verify.associativity_trials(d_values, trials,
                                                     e_max=min(e_max, 3),
                                                     seed=seed)
        return {"checked": done, "failures": len(failures),
                "passed": not failures}
    if suite == "lob-graphs":
        from .lob import (cojacobiator, drinfeld_image, involutivity_image,
                          jacobiator)
        rows = {}
        for d in d_values:
            rows[d] = {"jacobi": jacobiator(d).is_zero(),
                       "cojacobi": cojacobiator(d).is_zero(),
                       "drinfeld": drinfeld_image(d).is_zero(),
                       "involutivity": involutivity_image(d).is_zero()}
        return {"by_d": rows,
                "passed": all(all(v.values()) for v in rows.values())}
    if suite == "lob-words":
        done, failures = verify.lob_word_trials(d_values, trials, seed=seed)
        return {"checked": done, "failures": len(failures),
                "passed": not failures}
    if suite == "rho":
        done1, f1 = verify.rho_morphism_trials(d_values, trials, seed=seed)
        done2, f2 = verify.rho_chain_map_trials(d_values, trials, seed=seed)
        return {"morphism_checked": done1, "morphism_failures": len(f1),
                "chain_map_checked": done2, "chain_map_failures": len(f2),
                "passed": not (f1 or f2)}
    if suite == "st-classes":
        rows = {d: verify.st_class_report(d) for d in d_values}
        ok = all(r["cycle"] and not r["coboundary"]
                 for rs in rows.values() for r in rs)
        return {"by_d": rows, "passed": ok}
    if suite == "st-direct":
        rows = {}
        ok = True
        for d in d_values:
            checked, mism = verify.st_direct_vs_induced(d, e_max=min(e_max, 5))
            rows[d] = {"checked": checked, "mismatches": mism}
            ok = ok and not mism
        return {"by_d": rows, "passed": ok}
    if suite == "st-cobracket":
        rows = {d: verify.st_cobracket_check(d) for d in d_values}
        ok = all(r["nonzero_in_chgrav"] and r["all_ideal"]
                 for r in rows.values())
        return {"by_d": rows, "passed": ok}
    if suite == "mc":
        from .frobenius import builtin, flat_diff, mc_element, word_basis
        rows = {}
        ok = True
        for name, par in (("sphere", 2), ("sphere", 3), ("cp", 2),
                          ("surface", 2)):
            mc = mc_element(builtin(name, par))
            fd = flat_diff(mc)
            d2 = True
            cutoff = min(k_max + 4, 6)
            for length in range(1, cutoff):
                for w in word_basis(mc, length):
                    img = fd(w)
                    acc = {}
                    for tw, c in img.items():
                        for tw2, c2 in fd(tw).items():
                            acc[tw2] = acc.get(tw2, 0) + c * c2
                    if any(acc.values()):
                        d2 = False
            key = "%s(%d)" % (name, par)
            rows[key] = {"mc": mc.mc_verified, "d2_zero": d2}
            ok = ok and mc.mc_verified and d2
        return {"by_algebra": rows, "passed": ok}
    raise ConfigError("unknown suite %r" % suite)


def cmd_verify(args):
    t0 = time.time()
    d_values = parse_d_values(args.d)
    result = run_suite(args.suite, d_values, args.emax, args.kmax,
                       args.trials, args.seed)
    rep = _report("verify",
                  {"suite": args.suite, "d": args.d, "emax": args.emax,
                   "kmax": args.kmax, "trials": args.trials,
                   "seed": args.seed},
                  {args.suite: result}, t0)
    _emit(rep, args, [("suite", "passed"), (args.suite, result["passed"])])
    return 0 if result["passed"] else 1


def load_algebra(spec):
    from .frobenius import builtin, load_pd_algebra
    if ":" in spec and not os.path.exists(spec):
        name, _, par = spec.partition(":")
        return builtin(name, int(par))
    with open(spec) as fh:
        return load_pd_algebra(fh.read())


def parse_words(space, text):
    from .cyclic import word_sum
    out = []
    for part in text.split("|"):
        letters = tuple(int(t) for t in part.split(",") if t.strip())
        ws = word_sum(space, letters)
        if ws.is_zero():
            raise ConfigError("word %r is zero after normalization" % (part,))
        out.append(ws)
    return out


def cmd_string_ops(args):
    from .cyclic import (cobracket, lie_bracket, twisted_differential,
                         wordsum_to_lines)
    from .frobenius import mc_element
    t0 = time.time()
    A = load_algebra(args.algebra)
    mc = mc_element(A)
    words = parse_words(mc.space, args.words)
    if args.op == "bracket":
        if len(words) != 2:
            raise ConfigError("bracket needs two words")
        res = lie_bracket(words[0], words[1], reduced=True)
    elif args.op == "cobracket":
        if len(words) != 1:
            raise ConfigError("cobracket needs one word")
        res = cobracket(words[0], reduced=True)
    elif args.op == "diff":
        if len(words) != 1:
            raise ConfigError("diff needs one word")
        res = twisted_differential(mc.gamma, words[0])
    else:
        raise ConfigError("unknown op %r" % args.op)
    letters = {i: nm for i, nm in enumerate(mc.space.names or ())}
    rep = _report("string-ops",
                  {"algebra": args.algebra, "op": args.op,
                   "words": args.words},
                  {"letters": letters,
                   "result": wordsum_to_lines(res).splitlines()}, t0)
    _emit(rep, args)


def write_sms(matrix, path):
    """SMS sparse matrix format, 1-based indices, `0 0 0` terminator."""
    with open(path, "w") as fh:
        fh.write("%d %d M\n" % (matrix.rows, matrix.cols))
        for (i, j), v in sorted(matrix.entries.items()):
            fh.write("%d %d %s\n" % (i + 1, j + 1, v))
        fh.write("0 0 0\n")


def read_sms(path):
    from .linalg import SparseMatrix
    with open(path) as fh:
        head = fh.readline().split()
        rows, cols = int(head[0]), int(head[1])
        entries = {}
        for ln in fh:
            i, j, v = ln.split()
            if i == "0" and j == "0":
                break
            from fractions import Fraction
            entries[(int(i) - 1, int(j) - 1)] = Fraction(v)
    return SparseMatrix(rows, cols, entries)


def cmd_export(args):
    from .complexes import family_complex
    from .ribbon import graph_to_text
    t0 = time.time()
    os.makedirs(args.out, exist_ok=True)
    bases, dims, mats = family_complex(args.family, args.d, args.g, args.m,
                                       args.n, args.kmax)
    manifest = {"schema": SCHEMA, "command": "export",
                "config": _config_of(args, ("family", "d", "g", "m", "n",
                                            "kmax")),
                "files": {}}
    for k in sorted(bases):
        bpath = os.path.join(args.out, "basis-k%d.txt" % k)
        with open(bpath, "w") as fh:
            for g in bases[k]:
                fh.write(graph_to_text(g) + "\n")
        manifest["files"]["basis-k%d" % k] = bpath
    for k in sorted(mats):
        mpath = os.path.join(args.out, "delta-k%d.sms" % k)
        write_sms(mats[k], mpath)
        manifest["files"]["delta-k%d" % k] = mpath
    manifest["timing"] = {"seconds": round(time.time() - t0, 3)}
    mpath = os.path.join(args.out, "manifest.json")
    with open(mpath, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    sys.stdout.write(mpath + "\n")


def cmd_report(args):
    from .complexes import degree_of_slot, family_cohomology
    from .st import st_cohomology
    t0 = time.time()
    os.makedirs(args.out, exist_ok=True)
    coeff = parse_coeff(args.coeff)
    if args.family == "st":
        tab = st_cohomology(args.d, args.g, args.m, args.n, args.kmax,
                            coeff=coeff)
    else:
        tab = family_cohomology(args.family, args.d, args.g, args.m, args.n,
                                args.kmax, coeff=coeff)
    rows = [{"k": k,
             "degree": degree_of_slot(args.d, args.g, args.m, args.n, k),
             "dim_basis": tab.basis_sizes.get(k),
             "dim_cohomology": tab.dims[k],
             "flag": tab.flags[k]} for k in tab.degrees]
    rep = _report("report",
                  _config_of(args, ("family", "d", "g", "m", "n", "kmax",
                                    "coeff")),
                  {"cohomology": rows}, t0)
    jpath = os.path.join(args.out, "report.json")
    with open(jpath, "w") as fh:
        json.dump(rep, fh, indent=2, sort_keys=True)
    cpath = os.path.join(args.out, "cohomology.csv")
    with open(cpath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("k", "degree", "dim_basis", "dim_cohomology", "flag"))
        for r in rows:
            w.writerow((r["k"], r["degree"], r["dim_basis"],
                        r["dim_cohomology"], r["flag"]))
    ppath = os.path.join(args.out, "cohomology.png")
    _render_figure(rows, args, ppath)
    sys.stdout.write("\n".join((jpath, cpath, ppath)) + "\n")


def _render_figure(rows, args, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ks = [r["k"] for r in rows]
    ax1.bar(ks, [r["dim_basis"] or 0 for r in rows], color="#888888")
    ax1.set_xlabel("slot k")
    ax1.set_ylabel("basis size")
    ax1.set_title("%s(%d; %d,%d) d=%d" % (args.family, args.g, args.m,
                                          args.n, args.d))
    exact = [r for r in rows if r["flag"] == "exact"]
    ax2.bar([r["degree"] for r in exact],
            [r["dim_cohomology"] for r in exact], color="#336699")
    ax2.set_xlabel("cohomological degree")
    ax2.set_ylabel("dim H")
    ax2.set_title("cohomology (exact window)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _add_slice_flags(p, kdefault=None):
    p.add_argument("--family", default="tw",
                   choices=("tw", "chgrav", "st", "trees"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--kmax", type=int, default=kdefault if kdefault
                   is not None else 3)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rgc",
        description="ribbon graph complexes, string topology quotients, "
                    "and cyclic Hochschild representations")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="basis sizes of a slice")
    _add_slice_flags(p)
    p.add_argument("--k", type=int)
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("cohomology", help="cohomology table of a slice")
    _add_slice_flags(p)
    p.add_argument("--coeff", default="auto")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="verification suites")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--d", default="0..3")
    p.add_argument("--emax", type=int, default=4)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("string-ops",
                       help="bracket/cobracket/twisted differential on "
                            "cyclic words over a PD algebra")
    p.add_argument("--algebra", required=True,
                   help="sphere:<d> | cp:<n> | surface:<g> | file path")
    p.add_argument("--op", required=True,
                   choices=("bracket", "cobracket", "diff"))
    p.add_argument("--words", required=True,
                   help="letter indices, comma separated; slots split by |")
    p.add_argument("--format", default="json", choices=("json",))
    p.add_argument("--out")
    p.set_defaults(func=cmd_string_ops)

    p = sub.add_parser("export", help="write bases and SMS matrices")
    _add_slice_flags(p)
    p.add_argument("--format", default="sms", choices=("sms",))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report",
                       help="cohomology report with figures (json + csv + png)")
    _add_slice_flags(p)
    p.add_argument("--coeff", default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rc = args.func(args)
    except ConfigError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
