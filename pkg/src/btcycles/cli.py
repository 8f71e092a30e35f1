"""Command line front end: compute, oracle-check, census.

Exit codes: 0 success, 2 ingest failure, 3 oracle discrepancy, 4 window or
cap exhaustion.  All outputs are emitted with sorted keys so that repeated
runs (any --threads value) are byte-identical.
"""

import argparse
import json
import os
import sys

from . import building as bd
from .algorithm import run_multi, seed_vertex
from .cycles import (SpecialTuple, all_components_above_in_cycle, in_cycle,
                     kr_stratum, splits_off, tuple_report)
from .errors import BtcyclesError, IngestError, TooLarge, WindowTooSmall
from .lattices import HermSpace, Vertex, canonicalize, lattice_from_dict
from .oracle import cross_validate, oracle_support
from .scalars import PadicContext, scalar_from_tuple

EXIT_OK = 0
EXIT_INGEST = 2
EXIT_DISCREPANCY = 3
EXIT_WINDOW = 4


def load_problem(path):
    """Parse and validate a problem file; raises IngestError."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise IngestError("cannot read problem file: %s" % e) from None
    for field in ("p", "gram", "vectors"):
        if field not in doc:
            raise IngestError("missing field %r" % field)
    ctx = PadicContext(doc["p"], doc.get("eps"))
    gram = [[scalar_from_tuple(ctx, t) for t in row] for row in doc["gram"]]
    space = HermSpace(ctx, gram)
    if space.det_parity != 1:
        raise IngestError("gram determinant valuation must be odd, got %d"
                          % space.det_val)
    vectors = [[scalar_from_tuple(ctx, t) for t in v] for v in doc["vectors"]]
    st = SpecialTuple(space, vectors)
    window = doc.get("window", {})
    radius = window.get("radius", 2)
    if not isinstance(radius, int) or radius < 0:
        raise IngestError("window.radius must be a nonnegative integer")
    seed_spec = window.get("seed", "auto")
    if seed_spec == "auto":
        seed = seed_vertex(st)
    else:
        seed = Vertex.from_lattice(lattice_from_dict(space, seed_spec))
    caps = doc.get("caps", {})
    cap = caps.get("max_vertices")
    top_radius = caps.get("top_radius")
    force_top = bool(caps.get("force_top", False))
    return {"st": st, "radius": radius, "seed": seed, "cap": cap,
            "top_radius": top_radius, "force_top": force_top}


def _write(outdir, name, text):
    if outdir is None:
        sys.stdout.write(text)
        return
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, name), "w") as f:
        f.write(text)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_compute(args):
    prob = load_problem(args.problem)
    st, seed = prob["st"], prob["seed"]
    radius = args.radius if args.radius is not None else prob["radius"]
    trace = []
    window = bd.ball(seed, radius, cap=prob["cap"])
    support, info = run_multi(st, window_radius=radius,
                              top_radius=prob["top_radius"],
                              cap=prob["cap"], trace=trace, window=window,
                              force_top=prob["force_top"])
    shown = bd.ComplexSubset(st.space)
    for v in support.vertices():
        if v.key in window._v:
            shown.add(v, depth=window.depth.get(v.key))
    shown.seed_key = seed.key
    for v in shown.vertices():
        meta = shown.meta.setdefault(v.key, {})
        for i, x in enumerate(st.xd):
            s = kr_stratum(v, x)
            meta["kr%d" % i] = "(%d,%d)" % (s.a, s.b)
    emit = set(args.emit.split(","))
    if "json" in emit:
        _write(args.out, "support.json", _dump(shown.to_json_dict()))
    if "dot" in emit:
        _write(args.out, "support.dot", shown.to_dot())
    summary = dict(tuple_report(st))
    summary.update(info)
    summary["window_radius"] = radius
    summary["window_size"] = len(window)
    summary["support_in_window"] = len(shown)
    _write(args.out, "summary.json", _dump(summary))
    _write(args.out, "trace.jsonl",
           "".join(json.dumps(t, sort_keys=True) + "\n" for t in trace))
    return EXIT_OK


def cmd_oracle_check(args):
    prob = load_problem(args.problem)
    radius = args.radius if args.radius is not None else prob["radius"]
    report = cross_validate(prob["st"], window_radius=radius,
                            top_radius=prob["top_radius"], cap=prob["cap"],
                            threads=args.threads,
                            force_top=prob["force_top"])
    _write(args.out, "report.json", _dump(report.to_json_dict()))
    return EXIT_OK if report.ok else EXIT_DISCREPANCY


def cmd_census(args):
    prob = load_problem(args.problem)
    st, seed = prob["st"], prob["seed"]
    radius = args.radius if args.radius is not None else prob["radius"]
    window = bd.ball(seed, radius, cap=prob["cap"])
    support = oracle_support(st, window, threads=args.threads)
    tmax = st.space.max_type
    rows = []
    for v in support.vertices():
        if v.type != tmax:
            continue
        subs = bd.neighbors_below(v, tmax - 2)
        n_all = n_one = n_other = n_split = 0
        for g in subs:
            above = bd.neighbors_above(g, tmax)
            inside = sum(1 for w in above if in_cycle(w, st))
            if inside == len(above):
                n_all += 1
            elif inside == 1:
                n_one += 1
            else:
                n_other += 1
            if st.m == 1 and splits_off(g, st.xd[0]):
                n_split += 1
        rows.append({"subvertices": len(subs), "all_above": n_all,
                     "exactly_one": n_one, "other": n_other,
                     "splits_off": n_split})
    census = {"max_type": tmax, "max_vertices": len(rows), "rows": rows,
              "window_radius": radius, "support_size": len(support)}
    _write(args.out, "census.json", _dump(census))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="btcycles",
        description="support complexes of special-cycle intersections")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (("compute", cmd_compute),
                     ("oracle-check", cmd_oracle_check),
                     ("census", cmd_census)):
        sp = sub.add_parser(name)
        sp.add_argument("--problem", required=True)
        sp.add_argument("--out", default=None)
        sp.add_argument("--radius", type=int, default=None)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--emit", default="json,dot")
        sp.set_defaults(fn=fn)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except IngestError as e:
        print("ingest error: %s" % e, file=sys.stderr)
        return EXIT_INGEST
    except (WindowTooSmall, TooLarge) as e:
        print("window error: %s" % e, file=sys.stderr)
        return EXIT_WINDOW
    except BtcyclesError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DISCREPANCY


if __name__ == "__main__":
    sys.exit(main())
