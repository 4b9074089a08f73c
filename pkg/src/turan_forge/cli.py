"""Command-line entry point.

Exit codes: 0 success, 1 verification failure (a claimed-forbidden
structure was found, or an embedding tester failed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import embeddings as emb
from .constructions import (
    BrownSphere,
    ConstructionSpec,
    ErdosRenyi,
    InnerProduct,
    NormGraph,
    ProjNormGraph,
    Wenger,
    build_graph,
)
from .graph import EdgeListError, read_edge_list, write_edge_list
from .gridsearch import DEFAULT_BUDGET, check_kst_bound, find_kst, girth, max_codegree
from .report import build_report, dumps_report
from .theta import admissible_tuples, grid_dimension, theta_closed_form_k2, theta_poly

FAMILIES = ("er", "brown", "norm", "projnorm", "wenger", "inner")


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 's,t', got {text!r}") from None
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("s and t must be positive")
    return a, b


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.add_argument("--s", type=int, help="dimension for norm, projnorm, inner")
    p.add_argument("--t", type=int, help="Wenger parameter")
    p.add_argument("--alpha", type=int, default=1, help="right-hand side for brown")
    p.add_argument("--mode", choices=("generic", "explicit"), default="generic")
    p.add_argument("--seed", type=int, default=0)


def spec_from_args(args) -> ConstructionSpec:
    fam = args.family
    if fam in ("norm", "projnorm", "inner") and args.s is None:
        raise UsageError(f"--family {fam} requires --s")
    if fam == "wenger" and args.t is None:
        raise UsageError("--family wenger requires --t")
    family = {
        "er": lambda: ErdosRenyi(),
        "brown": lambda: BrownSphere(args.alpha),
        "norm": lambda: NormGraph(args.s),
        "projnorm": lambda: ProjNormGraph(args.s),
        "wenger": lambda: Wenger(args.t),
        "inner": lambda: InnerProduct(args.s, args.mode, args.seed),
    }[fam]()
    return ConstructionSpec(family, args.p)


def _emit(obj: dict, out_path: str | None = None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    spec = spec_from_args(args)
    result = build_graph(spec)
    g = result.graph
    write_edge_list(args.out, g, spec.p, spec.label())
    summary = {"out": args.out, "left": g.left_size, "right": g.right_size, "edges": g.edge_count(),
               "family": spec.label()}
    if args.json:
        _emit(summary)
    else:
        print(f"wrote {g.edge_count()} edges ({g.left_size}+{g.right_size} vertices) to {args.out}")
    return 0


def cmd_check(args) -> int:
    g, meta = read_edge_list(args.inp)
    out: dict = {"file": args.inp, "p": meta["p"], "family": meta.get("family"),
                 "left": g.left_size, "right": g.right_size, "edges": g.edge_count()}
    failed = False
    if args.forbid:
        s, t = args.forbid
        outcome = find_kst(g, s, t, args.budget)
        out["search"] = {"s": s, "t": t} | outcome.as_dict()
        out["kst_bound"] = check_kst_bound(g, s, t).as_dict()
        if args.sample is not None:
            out["max_codegree"] = max_codegree(g, s, args.sample, args.seed)
        failed |= outcome.found is not None
    if args.girth or args.forbid_cycle:
        gval = girth(g)
        out["girth"] = gval
        if args.forbid_cycle:
            failed |= gval is not None and gval <= args.forbid_cycle
    out["verified"] = not failed
    if args.json:
        _emit(out)
    else:
        for key, val in out.items():
            print(f"{key}: {json.dumps(val)}")
    return 1 if failed else 0


def cmd_theta(args) -> int:
    th = theta_poly(args.p, args.k)
    max_dim = args.max_dim if args.max_dim is not None else args.p + 5
    out = {
        "p": args.p,
        "k": args.k,
        "degree": th.degree,
        "support": sorted(list(m) for m in th.support()),
        "minimal_tuples": [list(t) for t in admissible_tuples(th, max_dim)],
        "max_dim": max_dim,
    }
    if args.k == 2:
        out["closed_form_agrees"] = th.support() == theta_closed_form_k2(args.p).support()
        out["d"] = grid_dimension(args.p)
    _emit(out)
    return 0


def cmd_embed(args) -> int:
    out: dict = {"kind": args.kind, "s": args.s, "p": args.p, "seed": args.seed}
    ok = True
    if args.kind == "veronese":
        if args.t is None or args.d is None:
            raise UsageError("--kind veronese requires --t and --d")
        fmap = emb.veronese_regular(args.s, args.t, args.d, seed=args.seed, p=args.p,
                                    project=not args.no_project)
        wits = emb.test_regularity(fmap, args.t, args.p, args.trials, args.seed)
        ok = all(w.passed for w in wits)
        out.update(t=args.t, d=args.d, n=fmap.n, resamples=fmap.meta.get("resamples", 0),
                   trials=len(wits), min_rank=min(w.rank for w in wits), passed=ok)
    else:
        if args.n is None:
            raise UsageError("--kind prime requires --n")
        fmap, assignment, bound = emb.prime_power_embedding(args.s, args.n)
        worst, _ = emb.test_nondegeneracy(fmap, args.s, args.p, args.trials, args.seed)
        ok = worst <= bound
        out.update(n=args.n, primes=[list(r) for r in assignment.p_ij], order_bound=bound,
                   trials=args.trials, max_fiber=worst, passed=ok)
    if args.show_map:
        out["map"] = fmap.to_text()
    _emit(out)
    return 0 if ok else 1


def cmd_report(args) -> int:
    spec = spec_from_args(args)
    report, verified = build_report(spec, budget=args.budget, sample=args.sample,
                                    sample_seed=args.sample_seed, timing=args.timing)
    text = dumps_report(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if verified else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turan-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph and write its edge list")
    _add_family_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="search an edge-list graph for forbidden structures")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--forbid", type=_pair, help="s,t for K_{s,t}")
    p.add_argument("--forbid-cycle", type=int, help="fail if the girth is at most this length")
    p.add_argument("--girth", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--sample", type=int, help="also report max codegree (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("theta", help="obstruction polynomial support and admissible dimensions")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-dim", type=int)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("embed", help="build an embedding and run its tester")
    p.add_argument("--kind", choices=("veronese", "prime"), required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=100, help="0 = exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-project", action="store_true", help="full Veronese map")
    p.add_argument("--show-map", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("report", help="construct, verify and print a JSON report")
    _add_family_args(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--sample", type=int, default=0, help="codegree samples (0 = skip)")
    p.add_argument("--sample-seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall-clock times")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EdgeListError, ValueError, OSError) as exc:
        print(f"turan-forge {args.command}: error: {exc}", file=sys.stderr)
        return 2


def run(argv: list[str]) -> int:
    """Like :func:`main` but returns argparse's exit status instead of raising."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

if __name__ == "__main__":
    sys.exit(main())
