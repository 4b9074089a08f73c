"""Reference bounds and the JSON verification report."""

from __future__ import annotations

import json
import math
import time

from .constructions import (
    ConstructionResult,
    ConstructionSpec,
    Custom,
    InnerProduct,
    build_graph,
    expected_edge_count,
    lang_weil_check,
)
from .gridsearch import DEFAULT_BUDGET, check_kst_bound, find_kst, girth, max_codegree

__all__ = [
    "furedi_bound",
    "kst_upper_bound",
    "bondy_simonovits_bound",
    "build_report",
    "dumps_report",
    "REPORT_KEYS",
]

REPORT_KEYS = ("spec", "edges", "expected", "kst_bound", "search", "girth", "bounds", "seeds", "timing")


def furedi_bound(s: int, t: int, n: int) -> float:
    """Leading term (1/2) (t-s+1)^(1/s) n^(2-1/s) of Furedi's bound on ex(n, K_{s,t})."""
    if s > t:
        raise ValueError("Furedi's bound needs s <= t")
    if s < 1 or n < 1:
        raise ValueError("need s >= 1 and n >= 1")
    return 0.5 * (t - s + 1) ** (1 / s) * n ** (2 - 1 / s)


def kst_upper_bound(s: int, t: int, n: int) -> float:
    """Leading term (1/2) (t-1)^(1/s) n^(2-1/s) of the Kovari-Sos-Turan bound."""
    if s < 1 or t < 1 or n < 1:
        raise ValueError("need positive s, t, n")
    return 0.5 * (t - 1) ** (1 / s) * n ** (2 - 1 / s)


def bondy_simonovits_bound(t: int, n: int) -> float:
    """100 t n^(1+1/t), the reference upper bound for ex(n, C_2t)."""
    return 100 * t * n ** (1 + 1 / t)


def build_report(spec: ConstructionSpec, budget: int = DEFAULT_BUDGET, sample: int = 0,
                 sample_seed: int = 0, timing: bool = False,
                 result: ConstructionResult | None = None) -> tuple[dict, bool]:
    """Construct, verify and summarise.  Returns (report, verified).

    ``verified`` is False when the claimed forbidden structure was found.
    Wall-clock times are only included with ``timing=True`` so that reports
    are otherwise byte-reproducible.
    """
    clock = {}
    t0 = time.perf_counter()
    if result is None:
        result = build_graph(spec)
    clock["construct_s"] = time.perf_counter() - t0
    g = result.graph
    p = spec.p
    edges = g.edge_count()
    n = g.left_size + g.right_size
    claim = result.claimed_forbidden
    verified = True

    expected = None
    if not isinstance(spec.family, Custom):
        exp = expected_edge_count(spec)
        ratio, within = lang_weil_check(result)
        expected = exp.as_dict() | {"ratio": ratio, "within_window": within}

    kst = search = girth_block = None
    bounds: dict = {"n": n, "lower_order_terms": "omitted"}
    t1 = time.perf_counter()
    if claim is not None and claim.kind == "kst":
        s, t = claim.s, claim.t
        kst = check_kst_bound(g, s, t).as_dict()
        outcome = find_kst(g, s, t, budget)
        search = {"s": s, "t": t} | outcome.as_dict()
        if outcome.found is not None:
            verified = False
        if sample:
            search["max_codegree"] = {"s": s, "sample": sample, "seed": sample_seed,
                                      "value": max_codegree(g, s, sample, sample_seed)}
        kst_val = kst_upper_bound(s, t, n)
        bounds.update(
            furedi=furedi_bound(s, t, n) if s <= t else None,
            kst=kst_val,
            edges_over_kst=edges / kst_val if kst_val else None,
            ratio_within=(edges / kst_val < 1 + 10 / math.sqrt(p)) if kst_val else None,
        )
    elif claim is not None and claim.kind == "cycle":
        half = claim.cycle_length // 2
        gval = girth(g)
        exceeds = gval is None or gval > claim.cycle_length
        girth_block = {"girth": gval, "forbidden_cycle": claim.cycle_length, "exceeds": exceeds}
        if not exceeds:
            verified = False
        bs = bondy_simonovits_bound(half, n)
        bounds.update(bondy_simonovits=bs, edges_over_bondy_simonovits=edges / bs)
    clock["verify_s"] = time.perf_counter() - t1

    seeds = {"sample": sample_seed if sample else None}
    if isinstance(spec.family, InnerProduct):
        seeds["construction"] = spec.family.seed
    report = {
        "spec": spec.as_dict() | {"claimed_forbidden": None if claim is None else claim.as_dict()},
        "edges": edges,
        "expected": expected,
        "kst_bound": kst,
        "search": search,
        "girth": girth_block,
        "bounds": bounds,
        "seeds": seeds,
        "timing": clock if timing else None,
    }
    return report, verified


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
