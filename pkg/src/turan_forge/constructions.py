"""Algebraic bipartite graphs over F_p.

Both sides are F_p^k with vertices in lexicographic order of their
coordinate vectors; (x, y) is an edge iff every defining polynomial
vanishes at (x, y).  Defining polynomials use the variables
``x_1..x_k, y_1..y_k`` in that order.

Every equation is evaluated in separated form
``f(x, y) = sum_r L_r(x) R_r(y)``, so the whole adjacency matrix is a
blocked matrix product followed by a test for zero mod p.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import kernels
from .embeddings import PolyMap, domain_points, order_bound, prime_power_embedding, veronese_monomials, veronese_regular
from .gf import ExtField, is_prime
from .graph import BipartiteGraph, pack_bool_rows
from .poly import Polynomial

__all__ = [
    "ErdosRenyi",
    "BrownSphere",
    "NormGraph",
    "ProjNormGraph",
    "Wenger",
    "InnerProduct",
    "Custom",
    "ConstructionSpec",
    "ForbiddenStructure",
    "ConstructionResult",
    "EdgeExpectation",
    "LANG_WEIL_CONSTANT",
    "norm_form",
    "separate",
    "build_graph",
    "build_inner_product",
    "expected_edge_count",
    "lang_weil_check",
]

log = logging.getLogger(__name__)

LANG_WEIL_CONSTANT = 4.0


@dataclass(frozen=True)
class ErdosRenyi:
    name = "er"

    @property
    def side_dim(self) -> int:
        return 2


@dataclass(frozen=True)
class BrownSphere:
    alpha: int = 1
    name = "brown"

    @property
    def side_dim(self) -> int:
        return 3


@dataclass(frozen=True)
class NormGraph:
    s: int
    name = "norm"

    @property
    def side_dim(self) -> int:
        return self.s


@dataclass(frozen=True)
class ProjNormGraph:
    s: int
    name = "projnorm"

    @property
    def side_dim(self) -> int:
        return self.s


@dataclass(frozen=True)
class Wenger:
    t: int
    name = "wenger"

    @property
    def side_dim(self) -> int:
        return self.t


@dataclass(frozen=True)
class InnerProduct:
    s: int
    mode: str = "generic"
    seed: int = 0
    name = "inner"

    @property
    def side_dim(self) -> int:
        return self.s


@dataclass(frozen=True)
class Custom:
    equations: tuple[Polynomial, ...]
    side_dim: int
    forbid: tuple[int, int] | None = None
    name = "custom"


Family = Union[ErdosRenyi, BrownSphere, NormGraph, ProjNormGraph, Wenger, InnerProduct, Custom]


@dataclass(frozen=True)
class ConstructionSpec:
    family: Family
    p: int

    def label(self) -> str:
        """Whitespace-free name used in edge-list headers."""
        f = self.family
        if isinstance(f, BrownSphere):
            return f"brown(alpha={f.alpha})"
        if isinstance(f, (NormGraph, ProjNormGraph)):
            return f"{f.name}(s={f.s})"
        if isinstance(f, Wenger):
            return f"wenger(t={f.t})"
        if isinstance(f, InnerProduct):
            return f"inner(s={f.s},mode={f.mode},seed={f.seed})"
        return f.name

    def as_dict(self) -> dict:
        f = self.family
        d = {"family": f.name, "p": self.p}
        if isinstance(f, BrownSphere):
            d["alpha"] = f.alpha
        elif isinstance(f, (NormGraph, ProjNormGraph)):
            d["s"] = f.s
        elif isinstance(f, Wenger):
            d["t"] = f.t
        elif isinstance(f, InnerProduct):
            d.update(s=f.s, mode=f.mode, seed=f.seed)
        elif isinstance(f, Custom):
            d["side_dim"] = f.side_dim
        return d


@dataclass(frozen=True)
class ForbiddenStructure:
    """Either a K_{s,t} (``kind="kst"``) or a cycle of length ``cycle_length``."""

    kind: str
    s: int | None = None
    t: int | None = None
    cycle_length: int | None = None

    def as_dict(self) -> dict:
        if self.kind == "cycle":
            return {"kind": "cycle", "length": self.cycle_length}
        return {"kind": "kst", "s": self.s, "t": self.t}


@dataclass
class ConstructionResult:
    graph: BipartiteGraph
    spec: ConstructionSpec
    defining_polys: list[Polynomial]
    claimed_forbidden: ForbiddenStructure | None
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EdgeExpectation:
    expected: int
    rel_window: float
    exact: bool
    note: str

    def as_dict(self) -> dict:
        return {"expected": self.expected, "rel_window": self.rel_window,
                "exact": self.exact, "note": self.note}


# -- defining polynomials -----------------------------------------------------

def norm_form(p: int, m: int) -> Polynomial:
    """N_m as a degree-m form in the coordinates of F_{p^m} over F_p.

    Computed as the determinant of multiplication by ``sum x_i w^(i-1)`` in
    the polynomial basis of :class:`~turan_forge.gf.ExtField`.
    """
    F = ExtField(p, m)
    xs = Polynomial.variables(m, p)
    # coordinates of w^e for e < 2m - 1
    powers = [F.one()]
    for _ in range(2 * m - 2):
        powers.append(powers[-1] * F.gen())
    M = [[Polynomial.zero(m, p) for _ in range(m)] for _ in range(m)]
    for j in range(m):
        for i in range(m):
            coords = powers[i + j].coeffs
            for k in range(m):
                if coords[k]:
                    M[k][j] = M[k][j] + xs[i] * coords[k]
    return _det(M)


def _det(M: list[list[Polynomial]]) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Polynomial.zero(M[0][0].nvars, M[0][0].modulus)
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _xy_vars(k: int, p: int) -> tuple[list[Polynomial], list[Polynomial]]:
    vs = Polynomial.variables(2 * k, p)
    return vs[:k], vs[k:]


def defining_polynomials(spec: ConstructionSpec) -> list[Polynomial]:
    f, p = spec.family, spec.p
    if isinstance(f, ErdosRenyi):
        x, y = _xy_vars(2, p)
        return [x[0] * y[0] + x[1] * y[1] - 1]
    if isinstance(f, BrownSphere):
        x, y = _xy_vars(3, p)
        return [sum(((a - b) ** 2 for a, b in zip(x, y)), Polynomial.zero(6, p)) - f.alpha]
    if isinstance(f, NormGraph):
        x, y = _xy_vars(f.s, p)
        return [norm_form(p, f.s).substitute([a + b for a, b in zip(x, y)]) - 1]
    if isinstance(f, ProjNormGraph):
        x, y = _xy_vars(f.s, p)
        n_low = norm_form(p, f.s - 1).substitute([a + b for a, b in zip(x[1:], y[1:])])
        return [n_low - x[0] * y[0]]
    if isinstance(f, Wenger):
        x, y = _xy_vars(f.t, p)
        return [y[j] - x[j] - x[j + 1] * y[f.t - 1] for j in range(f.t - 1)]
    if isinstance(f, Custom):
        return [g.reduce(p) for g in f.equations]
    raise TypeError(f"no defining polynomials for {type(f).__name__}")


def separate(f: Polynomial, k: int) -> list[tuple[Polynomial, Polynomial]]:
    """Write a polynomial in (x, y) as sum of L(x) * R(y), grouping by the x-monomial."""
    if f.nvars != 2 * k:
        raise ValueError(f"expected {2 * k} variables")
    groups: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for exps, c in f.items():
        groups.setdefault(exps[:k], {})[exps[k:]] = c
    return [(Polynomial({xm: 1}, k, f.modulus), Polynomial(rest, k, f.modulus))
            for xm, rest in sorted(groups.items())]


def _features(polys: Sequence[Polynomial], pts: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Values of each polynomial at every point plus a mask of points where all are defined."""
    vals = np.empty((pts.shape[0], len(polys)), dtype=np.int64)
    for j, g in enumerate(polys):
        vals[:, j] = g.evaluate_many(pts, p, on_nonunit="ignore")
    ok = (vals >= 0).all(axis=1)
    vals[~ok] = 0
    return vals, ok


def _adjacency_rows(equations: list[tuple[np.ndarray, np.ndarray]], left_ok: np.ndarray,
                    right_ok: np.ndarray, p: int, threads: int = 1) -> np.ndarray:
    """Bit rows of {(x, y) : every sum_r A[x, r] B[y, r] == 0 mod p}."""
    nx, ny = left_ok.shape[0], right_ok.shape[0]
    nw = (ny + 63) // 64
    rows = np.zeros((nx, nw), dtype=np.uint64)
    prepared = []
    for A, B in equations:
        r = A.shape[1]
        exact_float = r * (p - 1) ** 2 < 2**52
        if exact_float:
            prepared.append((A.astype(np.float64), B.T.astype(np.float64).copy(), True))
        else:
            prepared.append((A, B.T.copy(), False))
    block = max(1, min(nx, 2**22 // max(ny, 1)))

    def work(lo: int) -> None:
        hi = min(nx, lo + block)
        hit = np.ones((hi - lo, ny), dtype=bool)
        hit &= left_ok[lo:hi, None]
        hit &= right_ok[None, :]
        for A, BT, is_float in prepared:
            if is_float:
                vals = A[lo:hi] @ BT
                # integers below 2^52: v/p rounds to an integer exactly iff p | v
                hit &= np.rint(vals / p) * p == vals
            else:
                acc = np.zeros((hi - lo, ny), dtype=np.int64)
                for j in range(A.shape[1]):
                    acc = (acc + np.outer(A[lo:hi, j], BT[j]) % p) % p
                hit &= acc == 0
        rows[lo:hi] = pack_bool_rows(hit)

    starts = range(0, nx, block)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, starts))
    else:
        for lo in starts:
            work(lo)
    return rows


def _graph_from_separated(eqs: list[tuple[Sequence[Polynomial], Sequence[Polynomial]]],
                          k: int, p: int) -> BipartiteGraph:
    pts = domain_points(k, p)
    left_ok = np.ones(pts.shape[0], dtype=bool)
    right_ok = np.ones(pts.shape[0], dtype=bool)
    mats = []
    for lefts, rights in eqs:
        A, okA = _features(lefts, pts, p)
        B, okB = _features(rights, pts, p)
        left_ok &= okA
        right_ok &= okB
        mats.append((A, B))
    rows = _adjacency_rows(mats, left_ok, right_ok, p, kernels.worker_count())
    return BipartiteGraph(pts.shape[0], pts.shape[0], rows, pts, pts)


def _claimed(spec: ConstructionSpec) -> ForbiddenStructure | None:
    f = spec.family
    if isinstance(f, ErdosRenyi):
        return ForbiddenStructure("kst", 2, 2)
    if isinstance(f, BrownSphere):
        return ForbiddenStructure("kst", 3, 3)
    if isinstance(f, NormGraph):
        return ForbiddenStructure("kst", f.s, math.factorial(f.s) + 1)
    if isinstance(f, ProjNormGraph):
        return ForbiddenStructure("kst", f.s, math.factorial(f.s - 1) + 1)
    if isinstance(f, Wenger):
        return ForbiddenStructure("cycle", cycle_length=2 * f.t)
    if isinstance(f, Custom) and f.forbid is not None:
        return ForbiddenStructure("kst", *f.forbid)
    return None


def _validate(spec: ConstructionSpec) -> None:
    f, p = spec.family, spec.p
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p >= 2**31:
        raise ValueError("p must be below 2^31")
    if isinstance(f, BrownSphere) and f.alpha % p == 0:
        raise ValueError("BrownSphere needs alpha != 0 mod p")
    if isinstance(f, NormGraph) and f.s < 1:
        raise ValueError("NormGraph needs s >= 1")
    if isinstance(f, ProjNormGraph) and f.s < 2:
        raise ValueError("ProjNormGraph needs s >= 2")
    if isinstance(f, Wenger) and f.t < 2:
        raise ValueError("Wenger needs t >= 2")
    if isinstance(f, InnerProduct) and f.s < 2:
        raise ValueError("InnerProduct needs s >= 2")
    if isinstance(f, Custom):
        if not f.equations:
            raise ValueError("Custom needs at least one equation")
        if any(g.nvars != 2 * f.side_dim for g in f.equations):
            raise ValueError("Custom equations must have 2 * side_dim variables")


def build_graph(spec: ConstructionSpec) -> ConstructionResult:
    """Build the graph of ``spec`` over F_p."""
    _validate(spec)
    f = spec.family
    if isinstance(f, InnerProduct):
        return build_inner_product(f.s, spec.p, f.mode, f.seed)
    polys = defining_polynomials(spec)
    k = f.side_dim
    eqs = []
    for g in polys:
        pairs = separate(g, k)
        eqs.append(([a for a, _ in pairs], [b for _, b in pairs]))
    graph = _graph_from_separated(eqs, k, spec.p)
    return ConstructionResult(graph, spec, polys, _claimed(spec))


def _dense_random_poly(rng, s: int, d: int, p: int) -> Polynomial:
    monos = veronese_monomials(s, d)
    coeffs = rng.integers(0, p, size=len(monos))
    return Polynomial({m: int(c) for m, c in zip(monos, coeffs)}, s, p)


def build_inner_product(s: int, p: int, mode: str = "generic", seed: int = 0) -> ConstructionResult:
    """Hypersurface <f1(x), f2(y)> = 0 with f1, f2 : F_p^s -> F_p^{s(s+1)}.

    ``generic``: f1, f2 are dense polynomial maps of degree s^2(s+1) with
    coefficients drawn uniformly from [0, p) by a generator seeded with
    ``seed`` (f1 first, then f2).  The claimed forbidden grid is
    (s, (s^2(s+1))^s).

    ``explicit``: f1 is a seeded s-regular Veronese projection of the same
    degree and f2 the prime-exponent Laurent map; right vertices with a zero
    coordinate are isolated.  The claimed t is the order bound of f2.
    """
    if s < 2:
        raise ValueError("InnerProduct needs s >= 2")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    n = s * (s + 1)
    d = s * s * (s + 1)
    degree_t = d**s
    meta = {"seed": seed, "mode": mode, "degree": d, "target_dim": n, "degree_t_bound": degree_t}
    if mode == "generic":
        rng = np.random.default_rng(seed)
        f1 = PolyMap([_dense_random_poly(rng, s, d, p) for _ in range(n)], s, d)
        f2 = PolyMap([_dense_random_poly(rng, s, d, p) for _ in range(n)], s, d)
        t_claim = degree_t
    elif mode == "explicit":
        f2, assignment, bound = prime_power_embedding(s, n)
        if assignment.max_prime >= p:
            raise ValueError(f"explicit mode needs p > {assignment.max_prime} (largest prime exponent)")
        f1 = veronese_regular(s, s, d, seed=seed, p=p)
        f2 = PolyMap([g.reduce(p) for g in f2.components], s, f2.degree_bound, f2.meta)
        meta.update(order_bound=bound, primes=f2.meta["primes"], resamples=f1.meta["resamples"])
        t_claim = bound
    else:
        raise ValueError(f"unknown mode {mode!r}")
    graph = _graph_from_separated([(f1.components, f2.components)], s, p)
    x_part = [g.embed(2 * s, 0) for g in f1.components]
    y_part = [g.embed(2 * s, s) for g in f2.components]
    inner = Polynomial.zero(2 * s, p)
    for a, b in zip(x_part, y_part):
        inner = inner + a * b
    meta.update(f1=f1, f2=f2)
    spec = ConstructionSpec(InnerProduct(s, mode, seed), p)
    return ConstructionResult(graph, spec, [inner], ForbiddenStructure("kst", s, t_claim), meta)


def expected_edge_count(spec: ConstructionSpec, c: float = LANG_WEIL_CONSTANT) -> EdgeExpectation:
    """Point count of the defining variety: p^(2k-1) for a hypersurface, p^(t+1) for Wenger."""
    f, p = spec.family, spec.p
    if isinstance(f, Custom):
        raise ValueError("no expectation available for Custom families")
    if isinstance(f, Wenger):
        return EdgeExpectation(p ** (f.t + 1), 0.0, True, "determined system: exact")
    k = f.side_dim
    return EdgeExpectation(p ** (2 * k - 1), c / math.sqrt(p), False,
                           f"hypersurface point count, relative window {c}/sqrt(p)")


def lang_weil_check(result: ConstructionResult, c: float = LANG_WEIL_CONSTANT) -> tuple[float, bool]:
    """Ratio of actual to expected edges and whether it sits in the window (warns otherwise)."""
    exp = expected_edge_count(result.spec, c)
    actual = result.graph.edge_count()
    ratio = actual / exp.expected
    ok = actual == exp.expected if exp.exact else abs(ratio - 1) <= exp.rel_window
    if not ok:
        log.warning("edge count %d outside expected %d (window %.3f) for %s",
                    actual, exp.expected, exp.rel_window, result.spec.label())
    return ratio, ok
