"""Time the compiled and pure-Python bitset kernels on the same graphs.

    python benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from turan_forge import kernels
from turan_forge.constructions import BrownSphere, ConstructionSpec, ErdosRenyi, NormGraph, build_graph


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(sample: int):
    for label, family, p, s, t in [
        ("er p=17, K(2,2) scan", ErdosRenyi(), 17, 2, 2),
        ("er p=31, K(2,2) scan", ErdosRenyi(), 31, 2, 2),
        ("norm(2) p=23, K(2,3) scan", NormGraph(2), 23, 2, 3),
        ("brown p=7, K(3,3) scan", BrownSphere(), 7, 3, 3),
    ]:
        g = build_graph(ConstructionSpec(family, p)).graph
        yield label, lambda impl, g=g, s=s, t=t: impl.kst_scan(g.rows, s, t, 10**9)[:3]
    g = build_graph(ConstructionSpec(ErdosRenyi(), 23)).graph
    yield "er p=23, exhaustive codegree s=2", lambda impl, g=g: impl.max_codegree_exhaustive(g.rows, 2)
    rng = np.random.default_rng(0)
    subs = np.sort(np.array([rng.choice(g.left_size, 3, replace=False) for _ in range(sample)]), axis=1)
    yield f"er p=23, {sample} sampled 3-subsets", lambda impl, g=g: impl.subset_codegrees(g.rows, subs).max()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sample", type=int, default=20_000)
    args = ap.parse_args(argv)
    py = kernels.backend("python")
    try:
        cy = kernels.backend("cython")
    except ImportError:
        cy = None
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'case':40s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for label, run in cases(args.sample):
        tp, out_p = _time(lambda: run(py), args.repeat)
        if cy is None:
            print(f"{label:40s} {tp:11.4f} {'-':>11s} {'-':>8s}")
            continue
        tc, out_c = _time(lambda: run(cy), args.repeat)
        if out_p != out_c:
            raise SystemExit(f"backends disagree on {label}: {out_p} vs {out_c}")
        print(f"{label:40s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
