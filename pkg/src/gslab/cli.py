"""Command line interface: one subcommand per experiment.

Exit codes: 0 on success, 1 when a checked property is violated, 2 on
input errors.  All randomized subcommands require an explicit seed and all
outputs are written atomically with a fixed column order, so a repeated
run with the same inputs is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .census import census as census_of
from . import decomposition as dec
from . import generators as gen
from . import graphs as gr
from . import metrics as met
from . import operators as ops
from . import spectral as spec

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gslab-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) if isinstance(x, float) else str(x) for x in row))
    _write_atomic(path, "\n".join(lines) + "\n")


def _write_json(path: str, obj) -> None:
    _write_atomic(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _threads() -> int:
    raw = os.environ.get("GSLAB_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        raise SystemExit(f"gslab: invalid GSLAB_THREADS value {raw!r}")
    if cap < 1:
        raise SystemExit("gslab: GSLAB_THREADS must be >= 1")
    return cap


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def _family_graph(family: str, n: int) -> gr.ColoredGraph:
    table = {"path": gen.path, "cycle": gen.cycle, "grid2d": gen.grid2d,
             "grid3d": gen.grid3d}
    if family not in table:
        raise ValueError(f"unknown family {family!r}")
    return table[family](n)


def cmd_generate(args) -> int:
    if args.family in ("path", "cycle", "grid2d", "grid3d"):
        if args.n is None:
            print("gslab generate: --n is required for this family", file=sys.stderr)
            return INPUT_ERROR
        g = _family_graph(args.family, args.n)
    elif args.family == "selfsimilar":
        spec_obj = gen.default_chain_spec() if args.spec is None else \
            gen.spec_from_json(json.load(open(args.spec, encoding="utf-8")))
        g, _ = gen.self_similar(spec_obj, args.levels)
    elif args.family == "glued-box":
        oracle = gen.glued_lattice_oracle()
        g = gen.folner_boxes(oracle, args.side, [args.n])[0].graph
    else:
        print(f"gslab generate: unknown family {args.family!r}", file=sys.stderr)
        return INPUT_ERROR
    _write_json(args.out, gr.graph_to_json(g))
    return OK


def cmd_census(args) -> int:
    g = gr.load_graph(args.input)
    dist = census_of(g, args.radius)
    rows = [[args.radius, code.hex(), count, count / dist.total]
            for code, count in sorted(dist.counts.items())]
    if args.out:
        _write_csv(args.out, ["radius", "code_hex", "count", "frequency"], rows)
    else:
        print("radius,code_hex,count,frequency")
        for r in rows:
            print(f"{r[0]},{r[1]},{r[2]},{_fmt(r[3])}")
    return OK


def cmd_metric(args) -> int:
    a = gr.load_graph(args.a)
    b = gr.load_graph(args.b)
    if args.mode == "exact":
        res = met.delta_s_exact(a, b, max_n=args.exact_threshold)
    elif args.mode == "heuristic":
        res = met.delta_s_heuristic(a, b)
    elif args.mode == "rho-upper":
        res = met.delta_rho_upper(a, b, max_scale=args.max_scale,
                                  exact_threshold=args.exact_threshold)
    elif args.mode == "rho-lower":
        res = met.delta_rho_lower(a, b, r=args.radius)
    else:
        print(f"gslab metric: unknown mode {args.mode!r}", file=sys.stderr)
        return INPUT_ERROR
    out = {"value": res.value, "kind": res.kind, "scale": res.scale}
    if isinstance(res.witness, tuple):
        out["witness"] = list(res.witness)
    elif isinstance(res.witness, bytes):
        out["witness"] = res.witness.hex()
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.out:
        _write_atomic(args.out, text + "\n")
    else:
        print(text)
    return OK


def cmd_decompose(args) -> int:
    if getattr(args, "input", None):
        g = gr.load_graph(args.input)
    elif getattr(args, "family", None):
        g = _family_graph(args.family, args.n)
    else:
        print("gslab decompose: need --input or a family", file=sys.stderr)
        return INPUT_ERROR
    cert = dec.decompose_by_growth(g, args.epsilon)
    _write_json(args.out, dec.certificate_to_json(cert))
    k_max = args.k_max if args.k_max is not None else cert.k
    if not dec.verify_certificate(g, cert, args.epsilon, k_max):
        print(f"gslab decompose: certificate failed verification "
              f"(K={cert.k}, fraction={cert.edges_removed_fraction:.6f})",
              file=sys.stderr)
        return VIOLATION
    return OK


def cmd_folner(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    oracle = gen.glued_lattice_oracle()
    if args.generator in ("glued-2d", "glued-3d"):
        side = args.generator.split("-")[1]
        subs = gen.folner_boxes(oracle, side, sizes)
        profile = dec.folner_profile(oracle, (s.ids for s in subs))
    elif args.generator == "tree":
        oracle = gen.regular_tree_oracle(3)
        subs_ids = []
        for r in sizes:
            pat = ops.oracle_ball(oracle, (), r)
            subs_ids.append(pat.origin)
        profile = dec.folner_profile(oracle, subs_ids)
    else:
        print(f"gslab folner: unknown generator {args.generator!r}", file=sys.stderr)
        return INPUT_ERROR
    rows = [[r.size, r.boundary_size, r.ratio] for r in profile.rows]
    _write_csv(args.out, ["size", "boundary", "ratio"], rows)
    return OK


def cmd_ids(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    if sorted(sizes) != sizes or len(set(sizes)) != len(sizes):
        print("gslab ids: sizes must be strictly increasing", file=sys.stderr)
        return INPUT_ERROR
    items = []
    for n in sizes:
        g = _family_graph(args.family, n)
        if args.rule:
            rule = ops.load_rule(args.rule)
            kern = ops.kernel_from_rule(g, rule)
        else:
            kern = ops.laplacian(g)
        items.append((g, kern))
    report = spec.ids_run(items, k_max=args.k_max)
    rows = []
    for i, n in enumerate(report.sizes):
        gap = report.sup_gaps[i - 1] if i else 0.0
        mom = list(report.moment_gaps[i - 1]) if i else [0.0] * (args.k_max + 1)
        rows.append([n, gap] + mom)
    header = ["n", "sup_gap_prev"] + [f"moment_gap_k{k}" for k in range(args.k_max + 1)]
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "ids.csv"), header, rows)
    _write_csv(os.path.join(args.out_dir, "distribution.csv"), ["lambda", "N"],
               [[x, v] for x, v in report.grid])
    _write_json(os.path.join(args.out_dir, "summary.json"),
                {"sizes": list(report.sizes), "cauchy": report.cauchy,
                 "sup_gaps": list(report.sup_gaps)})
    return OK if report.cauchy else VIOLATION


def cmd_counterexample(args) -> int:
    volumes = [int(v) for v in args.volumes.split(",")]
    oracle = gen.glued_lattice_oracle()
    rows = []
    sups = []
    for vol in volumes:
        n2 = max(2, round(math.sqrt(vol)))
        n3 = max(2, round(vol ** (1.0 / 3.0)))
        b2 = gen.folner_boxes(oracle, "2d", [n2])[0]
        b3 = gen.folner_boxes(oracle, "3d", [n3])[0]
        k2 = ops.restrict(ops.ambient_laplacian_rule(oracle, b2.ids), oracle, b2)
        k3 = ops.restrict(ops.ambient_laplacian_rule(oracle, b3.ids), oracle, b3)
        d2 = spec.distribution(spec.eigenvalues(k2))
        d3 = spec.distribution(spec.eigenvalues(k3))
        s = spec.sup_distance(d2, d3)
        sups.append(s)
        rows.append([vol, b2.graph.n, b3.graph.n, s])
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "counterexample.csv"),
               ["volume", "n_2d", "n_3d", "sup_distance"], rows)
    separated = all(s > 0.05 for s in sups)
    _write_json(os.path.join(args.out_dir, "summary.json"),
                {"sup_distances": sups, "separated": separated})
    return OK if separated else VIOLATION


def cmd_selfsimilar(args) -> int:
    spec_obj = gen.default_chain_spec() if args.spec is None else \
        gen.spec_from_json(json.load(open(args.spec, encoding="utf-8")))
    levels = gen.self_similar_sequence(spec_obj, args.levels)
    rows = []
    ok = True
    for i, (g, conn) in enumerate(levels):
        ratio = len(conn) / g.n
        contained = True
        if i + 1 < len(levels):
            nxt, _ = levels[i + 1]
            bnd = dec.boundary(gen.graph_oracle(nxt), set(range(g.n)))
            contained = bnd <= set(conn)
            ok = ok and contained
        rows.append([i + 1, g.n, len(conn), ratio, int(contained)])
    _write_csv(args.out, ["level", "n", "connectors", "ratio", "boundary_inside"], rows)
    return OK if ok else VIOLATION


def cmd_rankcheck(args) -> int:
    rng = np.random.RandomState(args.seed)
    violations = 0
    worst = 0.0
    for _ in range(args.trials):
        c = rng.randn(args.n, args.n)
        c = (c + c.T) / 2.0
        r = int(rng.randint(1, args.max_rank + 1))
        vs = rng.randn(args.n, r)
        lam = rng.randn(r)
        d = c + (vs * lam) @ vs.T
        chk = spec.rank_bound_check(c, d)
        worst = max(worst, chk.sup_distance - chk.rank / args.n)
        if not chk.bound_ok:
            violations += 1
    _write_json(args.out, {"trials": args.trials, "n": args.n,
                           "max_rank": args.max_rank, "seed": args.seed,
                           "violations": violations, "worst_slack": worst,
                           "bound_ok": violations == 0})
    return OK if violations == 0 else VIOLATION


def cmd_conjecture_probe(args) -> int:
    """Geometric-distance Cauchy diagnostics along a growing family.

    Reports certified upper bounds between consecutive members; decreasing
    bounds are consistent with strong convergence.  No claim is asserted.
    """
    sizes = [int(s) for s in args.sizes.split(",")]
    graphs = [_family_graph(args.family, n) for n in sizes]
    rows = []
    for i in range(1, len(graphs)):
        up = met.delta_rho_upper(graphs[i - 1], graphs[i], max_scale=args.max_scale)
        low = met.delta_rho_lower(graphs[i - 1], graphs[i], r=args.radius)
        rows.append([sizes[i - 1], sizes[i], up.value, low.value])
    _write_csv(args.out, ["n_prev", "n_next", "rho_upper", "rho_lower"], rows)
    return OK


def cmd_run(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    experiment = cfg.get("experiment")
    ns = argparse.Namespace()
    for key, value in cfg.items():
        if key != "experiment":
            setattr(ns, key, value)
    handlers = {
        "ids": (cmd_ids, {"family": "path", "sizes": None, "rule": None,
                          "k_max": 4, "out_dir": None}),
        "counterexample": (cmd_counterexample, {"volumes": None, "out_dir": None}),
        "selfsimilar": (cmd_selfsimilar, {"spec": None, "levels": 10, "out": None}),
        "rankcheck": (cmd_rankcheck, {"trials": 1000, "n": 200, "max_rank": 20,
                                      "seed": None, "out": None}),
        "conjecture-probe": (cmd_conjecture_probe,
                             {"family": "grid2d", "sizes": None, "radius": 1,
                              "max_scale": 2, "out": None}),
        "decompose": (cmd_decompose, {"input": None, "family": None, "n": None,
                                      "epsilon": None, "out": None, "k_max": None}),
        "census": (cmd_census, {"input": None, "radius": 1, "out": None}),
        "folner": (cmd_folner, {"generator": None, "sizes": None, "out": None}),
    }
    required = {
        "ids": ["sizes", "out_dir"],
        "counterexample": ["volumes", "out_dir"],
        "selfsimilar": ["out"],
        "rankcheck": ["seed", "out"],
        "conjecture-probe": ["sizes", "out"],
        "decompose": ["epsilon", "out"],
        "census": ["input", "out"],
        "folner": ["generator", "sizes", "out"],
    }
    if experiment not in handlers:
        print(f"gslab run: unknown experiment {experiment!r}", file=sys.stderr)
        return INPUT_ERROR
    handler, defaults = handlers[experiment]
    for key, default in defaults.items():
        if not hasattr(ns, key):
            setattr(ns, key, default)
    missing = [k for k in required[experiment] if getattr(ns, k, None) is None]
    if missing:
        print(f"gslab run: config missing required keys: {missing}", file=sys.stderr)
        return INPUT_ERROR
    return handler(ns)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gslab")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a graph JSON file")
    g.add_argument("--family", required=True,
                   choices=["path", "cycle", "grid2d", "grid3d", "selfsimilar", "glued-box"])
    g.add_argument("--n", type=int)
    g.add_argument("--levels", type=int, default=5)
    g.add_argument("--spec", help="self-similar spec JSON")
    g.add_argument("--side", choices=["2d", "3d"], default="2d")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", help="radius-r pattern class frequencies")
    c.add_argument("--input", required=True)
    c.add_argument("--radius", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_census)

    m = sub.add_parser("metric", help="star-distance computations")
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--mode", required=True,
                   choices=["exact", "heuristic", "rho-upper", "rho-lower"])
    m.add_argument("--radius", type=int, default=1)
    m.add_argument("--max-scale", type=int, default=3, dest="max_scale")
    m.add_argument("--exact-threshold", type=int, default=10, dest="exact_threshold")
    m.add_argument("--out")
    m.set_defaults(func=cmd_metric)

    d = sub.add_parser("decompose", help="hyperfinite decomposition certificate")
    d.add_argument("--input", required=True)
    d.add_argument("--epsilon", type=float, required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--k-max", type=int, dest="k_max")
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("folner", help="boundary/volume profile of subgraphs")
    f.add_argument("--generator", required=True,
                   choices=["glued-2d", "glued-3d", "tree"])
    f.add_argument("--sizes", required=True)
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_folner)

    i = sub.add_parser("ids", help="spectral distribution convergence report")
    i.add_argument("--family", default="path",
                   choices=["path", "cycle", "grid2d", "grid3d"])
    i.add_argument("--sizes", required=True)
    i.add_argument("--rule", help="invariant rule JSON (default: Laplacian)")
    i.add_argument("--k-max", type=int, default=4, dest="k_max")
    i.add_argument("--out-dir", required=True, dest="out_dir")
    i.set_defaults(func=cmd_ids)

    x = sub.add_parser("counterexample",
                       help="two-sided glued-lattice distribution gap")
    x.add_argument("--volumes", required=True)
    x.add_argument("--out-dir", required=True, dest="out_dir")
    x.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("selfsimilar", help="connecting-set profile of the chain")
    s.add_argument("--levels", type=int, default=10)
    s.add_argument("--spec")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_selfsimilar)

    r = sub.add_parser("rankcheck", help="randomized rank perturbation bound")
    r.add_argument("--trials", type=int, default=1000)
    r.add_argument("--n", type=int, default=200)
    r.add_argument("--max-rank", type=int, default=20, dest="max_rank")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_rankcheck)

    q = sub.add_parser("conjecture-probe",
                       help="geometric-distance Cauchy diagnostics (report only)")
    q.add_argument("--family", default="grid2d",
                   choices=["path", "cycle", "grid2d", "grid3d"])
    q.add_argument("--sizes", required=True)
    q.add_argument("--radius", type=int, default=1)
    q.add_argument("--max-scale", type=int, default=2, dest="max_scale")
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_conjecture_probe)

    run = sub.add_parser("run", help="run one experiment from a config file")
    run.add_argument("--config", required=True)
    run.set_defaults(func=cmd_run)
    return p


def main(argv: list[str] | None = None) -> int:
    _threads()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"gslab: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
