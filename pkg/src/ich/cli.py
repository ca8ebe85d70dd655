"""Command-line entry point ``ich``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .category import categorize
from .codec import (
    BudgetExceeded,
    VectorXorCode,
    dump_code,
    load_code,
    minrank_bruteforce,
    simulate_decode,
    verify_vector_code,
    verify_xor_code,
)
from .instance import (
    dump_instance,
    enumerate_intersecting_sets,
    geometric_instance,
    load_canonical,
    load_instance,
    load_layout,
    union_expansion,
    validate_ich,
    zipf_instance,
)
from .sigraph import build_side_info_graph, decompose, dump_edges
from .simbench import TrialConfig, parse_range, sweep
from .vectorcolor import solve_vector
from .xorcolor import METHODS, clique_system, graver_basis, load_basis, save_basis, solve_xor


def _fail(msg: str, code: int = 2) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_gen(args) -> int:
    inst = zipf_instance(args.library, args.zipf, args.helpers, args.users_per_helper, args.cache, seed=args.seed)
    dump_instance(inst, args.output)
    print(f"wrote {args.output}: n={inst.n} k={inst.k}")
    return 0


def cmd_reduce(args) -> int:
    net = load_instance(args.input)
    report = validate_ich(net)
    if not report.ok:
        return _fail(f"instance violates the cache-miss/distinct-request conditions: {report}")
    canon = union_expansion(net)
    dump_instance(canon, args.output)
    print(f"wrote {args.output}: {net.k} helpers -> {canon.k} virtual helpers, {len(canon.uncovered)} uncovered users")
    return 0


def cmd_geom(args) -> int:
    layout, caches = load_layout(args.layout)
    fam = enumerate_intersecting_sets(layout)
    d = args.check_ply if args.check_ply is not None else layout.d_ply
    print(f"helpers={len(layout.disks)} intersecting_sets={fam.size} bound={fam.bound} max_depth={fam.max_depth}")
    ok = fam.within_bound and fam.max_depth <= d
    if fam.max_depth > d:
        print(f"ply check failed: some point lies in {fam.max_depth} disks > {d}")
    if args.output:
        if caches is None:
            return _fail("layout has no caches; cannot build an instance")
        canon = union_expansion(geometric_instance(layout, caches))
        dump_instance(canon, args.output)
        print(f"wrote {args.output}: k={canon.k}")
    return 0 if ok else 1


def cmd_graph(args) -> int:
    canon = load_canonical(args.input)
    gd = build_side_info_graph(canon)
    dec = decompose(gd)
    print(f"n={gd.n} directed_edges={gd.n_edges} g2_vertices={len(dec.g2)} g2_edges={len(dec.g2.edges())} out={len(dec.out_vertices)}")
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(dump_edges(gd))
        print(f"wrote {args.dump}")
    if args.categories:
        lab = categorize(dec)
        cg = lab.graph
        print("category\tweight")
        for v in cg.vertices:
            print(f"{v.render(cg.k)}\t{cg.w(v)}")
    return 0


def cmd_color(args) -> int:
    canon = load_canonical(args.input)
    basis = load_basis(args.basis) if args.basis else None
    try:
        sol = solve_xor(canon, args.method, basis)
    except BudgetExceeded as exc:
        return _fail(str(exc))
    gd = build_side_info_graph(canon)
    if not verify_xor_code(sol.code, gd):
        return _fail("internal error: emitted code fails verification", 3)
    dump_code(sol.code, args.output)
    print(f"method={sol.method} t={sol.length} n={canon.n}")
    return 0


def cmd_graver(args) -> int:
    start = time.perf_counter()
    cs = clique_system(args.k)
    gb = graver_basis(cs, method=args.method, max_k=args.k)
    save_basis(gb, cs, args.output)
    print(f"k={args.k} f2={cs.f2} elements={gb.size} delta={gb.delta} in {time.perf_counter() - start:.1f}s")
    return 0


def cmd_fraccolor(args) -> int:
    canon = load_canonical(args.input)
    try:
        vs = solve_vector(canon)
    except BudgetExceeded as exc:
        return _fail(str(exc))
    if not verify_vector_code(vs.code, build_side_info_graph(canon)):
        return _fail("internal error: emitted code fails verification", 3)
    dump_code(vs.code, args.output)
    print(f"rate={vs.rate} g2_rate={vs.g2_rate} t={vs.code.t} p={vs.code.p}")
    return 0


def cmd_verify(args) -> int:
    canon = load_canonical(args.input)
    gd = build_side_info_graph(canon)
    code = load_code(args.code, canon.n)
    verify = verify_vector_code if isinstance(code, VectorXorCode) else verify_xor_code
    ok = verify(code, gd)
    decoded = ok and simulate_decode(code, gd, trials=args.payload_trials, seed=args.seed)
    print(f"verify={'pass' if ok else 'FAIL'} decode={'pass' if decoded else 'FAIL'} trials={args.payload_trials}")
    return 0 if decoded else 1


def cmd_minrank(args) -> int:
    canon = load_canonical(args.input)
    gd = build_side_info_graph(canon)
    try:
        res = minrank_bruteforce(gd)
    except BudgetExceeded as exc:
        return _fail(f"refusing: {exc}")
    print(f"minrank={res.value}")
    return 0


def cmd_bench(args) -> int:
    ks = parse_range(args.k)
    caches = parse_range(args.cache)
    methods = tuple(m.strip() for m in args.methods.split(","))
    base = TrialConfig(
        ks[0], args.users_per_helper, args.library, args.zipf, caches[0],
        args.trials, args.seed, methods, args.payload_trials,
    )
    res = sweep(base, ks, caches, users_per_helper=args.users_per_helper, jobs=args.jobs)
    with open(args.output, "w") as fh:
        fh.write(res.to_csv())
    if args.plot_data:
        with open(args.plot_data, "w") as fh:
            fh.write(res.plot_data())
    for s in res.summaries():
        gain = "n/a" if s.gain is None else f"{float(s.gain):.3f}"
        print(f"k={s.k} cache={s.cache} trials={s.trials} gain={gain}")
    for note in res.notes():
        print(f"note: {note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ich", description="Index coding with caching helpers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="random Zipf instance")
    s.add_argument("--library", type=int, required=True)
    s.add_argument("--zipf", type=float, required=True)
    s.add_argument("--helpers", type=int, required=True)
    s.add_argument("--users-per-helper", type=int, required=True)
    s.add_argument("--cache", type=int, required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("reduce", help="union expansion to canonical form")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("geom", help="intersection family of a disk layout")
    s.add_argument("--layout", required=True)
    s.add_argument("--check-ply", type=int, default=None)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_geom)

    s = sub.add_parser("graph", help="side-information graph summary")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--dump", default=None)
    s.add_argument("--categories", action="store_true")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("color", help="optimal scalar XOR coloring")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--basis", default=None, help="precomputed Graver basis file")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("graver", help="precompute a Graver basis")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--method", choices=("lift", "completion"), default="lift")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_graver)

    s = sub.add_parser("fraccolor", help="optimal vector XOR coloring")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_fraccolor)

    s = sub.add_parser("verify", help="verify a code and simulate decoding")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-c", "--code", required=True)
    s.add_argument("--payload-trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("minrank", help="exhaustive GF(2) minrank")
    s.add_argument("-i", "--input", required=True)
    s.set_defaults(func=cmd_minrank)

    s = sub.add_parser("bench", help="scheme comparison sweep")
    s.add_argument("--k", default="5")
    s.add_argument("--users-per-helper", type=int, default=120)
    s.add_argument("--library", type=int, default=1400)
    s.add_argument("--zipf", type=float, default=0.5)
    s.add_argument("--cache", default="450")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--methods", default="matching,xor,vector")
    s.add_argument("--payload-trials", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--plot-data", default=None)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
