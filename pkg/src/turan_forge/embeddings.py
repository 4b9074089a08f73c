"""Regular and nondegenerate polynomial maps F^s -> F^n, with testers over F_p.

A map is t-regular when the images of any t distinct points are linearly
independent, and nondegenerate of order t when every codimension-s linear
subspace meets the image in at most t points.  Neither property can be
machine-checked over C; the testers here work over F_p, where a failure is a
genuine refutation for that reduction and a pass is evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial

import numpy as np

from .gf import first_primes, rank_mod_p
from .poly import Polynomial, dumps_polys, loads_polys

__all__ = [
    "PolyMap",
    "PrimeAssignment",
    "RegularityWitness",
    "FiberWitness",
    "veronese_monomials",
    "veronese_regular",
    "prime_power_embedding",
    "order_bound",
    "domain_points",
    "test_regularity",
    "test_nondegeneracy",
    "rref_systems",
]

# prime used to probe integer-coefficient projections for unlucky draws
PROBE_PRIME = 32749
MAX_RESAMPLES = 32


@dataclass
class PolyMap:
    components: list[Polynomial]
    s: int
    degree_bound: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for f in self.components:
            if f.nvars != self.s:
                raise ValueError("every component must have s variables")

    @property
    def n(self) -> int:
        return len(self.components)

    def is_laurent(self) -> bool:
        return any(f.is_laurent() for f in self.components)

    def evaluate(self, point, p: int) -> tuple[int, ...]:
        return tuple(f.evaluate(point, p) for f in self.components)

    def evaluate_many(self, points: np.ndarray, p: int, on_nonunit: str = "raise") -> np.ndarray:
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.s)
        out = np.empty((pts.shape[0], self.n), dtype=np.int64)
        for j, f in enumerate(self.components):
            out[:, j] = f.evaluate_many(pts, p, on_nonunit)
        return out

    def to_text(self) -> str:
        return dumps_polys(self.components)

    @classmethod
    def from_text(cls, text: str, s: int) -> "PolyMap":
        comps = loads_polys(text, s)
        deg = max((max((sum(abs(e) for e in m) for m in f.support()), default=0) for f in comps), default=0)
        return cls(comps, s, deg)


@dataclass(frozen=True)
class PrimeAssignment:
    """n x s matrix of distinct primes, strictly increasing down each column."""

    p_ij: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [q for row in self.p_ij for q in row]
        if len(set(flat)) != len(flat):
            raise ValueError("prime exponents must be distinct")
        for col in zip(*self.p_ij):
            if any(a >= b for a, b in zip(col, col[1:])):
                raise ValueError("each column must be strictly increasing")

    @property
    def max_prime(self) -> int:
        return max(q for row in self.p_ij for q in row)


@dataclass(frozen=True)
class RegularityWitness:
    points: tuple[tuple[int, ...], ...]
    rank: int
    passed: bool
    seed: int | None = None


@dataclass(frozen=True)
class FiberWitness:
    form: tuple[tuple[int, ...], ...]
    count: int


def veronese_monomials(s: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= d, by degree then lexicographically descending."""
    out = []
    for deg in range(d + 1):
        layer = [e for e in itertools.product(range(deg + 1), repeat=s) if sum(e) == deg]
        out.extend(sorted(layer, reverse=True))
    return out


def _random_projection(rng, n: int, m: int, p: int | None) -> np.ndarray:
    if p is None:
        return rng.integers(-100, 101, size=(n, m))
    return rng.integers(0, p, size=(n, m))


def veronese_regular(s: int, t: int, d: int, seed: int = 0, p: int | None = None,
                     project: bool = True, probe_trials: int = 64) -> PolyMap:
    """Veronese map of degree ``d`` followed by a seeded random linear projection.

    The projection targets (s+1)t coordinates.  Each draw is probed with
    :func:`test_regularity` (mod ``p``, or mod a fixed large prime in integer
    mode); a failing draw is replaced using the next derived seed and the
    number of replacements is stored in ``meta["resamples"]``.
    ``project=False`` returns the full Veronese map.
    """
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if d < t - 1:
        raise ValueError(f"degree d={d} must be at least t-1={t - 1}")
    monos = veronese_monomials(s, d)
    mono_polys = [Polynomial({m: 1}, s, p) for m in monos]
    if not project:
        return PolyMap(mono_polys, s, d, {"veronese_dim": len(monos)})
    n = (s + 1) * t
    # generic projection argument needs st < n - (t - 1)
    assert s * t < n - (t - 1)
    probe_p = p if p is not None else PROBE_PRIME
    for attempt in range(MAX_RESAMPLES):
        rng = np.random.default_rng([seed, attempt])
        P = _random_projection(rng, n, len(monos), p)
        comps = [Polynomial({m: int(c) for m, c in zip(monos, row)}, s, p) for row in P]
        fmap = PolyMap(comps, s, d, {"seed": seed, "resamples": attempt, "veronese_dim": len(monos)})
        if probe_p**s < t:
            break
        witnesses = test_regularity(fmap, t, probe_p, probe_trials, seed)
        if all(w.passed for w in witnesses):
            break
    else:
        raise RuntimeError(f"no regular projection found in {MAX_RESAMPLES} draws")
    return fmap


def order_bound(s: int, max_prime: int) -> int:
    """ceil((4^s / s!) * (s * max_prime)^s), computed exactly."""
    if s < 1 or max_prime < 2:
        raise ValueError("need s >= 1 and max_prime >= 2")
    return ceil(Fraction(4**s, factorial(s)) * (s * max_prime) ** s)


def prime_power_embedding(s: int, n: int) -> tuple[PolyMap, PrimeAssignment, int]:
    """Laurent map with components sum_j x_j^{p_ij} + x_j^{-p_ij}.

    The first s*n primes fill the n x s exponent matrix row by row, which
    makes every column strictly increasing.
    """
    if s < 1 or n < 1:
        raise ValueError("s and n must be positive")
    primes = first_primes(s * n)
    matrix = tuple(tuple(primes[i * s + j] for j in range(s)) for i in range(n))
    assignment = PrimeAssignment(matrix)
    comps = []
    for row in matrix:
        terms = {}
        for j, q in enumerate(row):
            e = [0] * s
            e[j] = q
            terms[tuple(e)] = 1
            e[j] = -q
            terms[tuple(e)] = 1
        comps.append(Polynomial(terms, s))
    bound = order_bound(s, assignment.max_prime)
    fmap = PolyMap(comps, s, assignment.max_prime, {"primes": [list(r) for r in matrix]})
    return fmap, assignment, bound


def domain_points(s: int, p: int, units: bool = False) -> np.ndarray:
    """All of F_p^s (or (F_p^*)^s) in lexicographic order."""
    vals = range(1, p) if units else range(p)
    return np.array(list(itertools.product(vals, repeat=s)), dtype=np.int64).reshape(-1, s)


def _use_units(fmap: PolyMap, domain: str) -> bool:
    if domain == "auto":
        return fmap.is_laurent()
    if domain not in ("units", "all"):
        raise ValueError("domain must be 'auto', 'units' or 'all'")
    return domain == "units"


def test_regularity(fmap: PolyMap, t: int, p: int, trials: int = 100, seed: int = 0,
                    domain: str = "auto") -> list[RegularityWitness]:
    """Rank over F_p of the images of t distinct points, per trial.

    ``trials = 0`` checks every t-subset of the domain.  Each sampled trial
    uses its own generator seeded from ``(seed, trial)``.
    """
    if fmap.n < t:
        raise ValueError("target dimension is smaller than t")
    units = _use_units(fmap, domain)
    size = (p - 1 if units else p) ** fmap.s
    if size < t:
        raise ValueError(f"domain too small: {size} points < t={t}")
    out = []
    if trials == 0:
        pts = domain_points(fmap.s, p, units)
        values = fmap.evaluate_many(pts, p)
        for subset in itertools.combinations(range(size), t):
            r = rank_mod_p(values[list(subset)], p)
            out.append(RegularityWitness(tuple(tuple(int(c) for c in pts[i]) for i in subset), r, r == t, None))
        return out
    lo = 1 if units else 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        while True:
            chosen = rng.integers(lo, p, size=(t, fmap.s))
            if len({tuple(r) for r in chosen.tolist()}) == t:
                break
        r = rank_mod_p(fmap.evaluate_many(chosen, p), p)
        out.append(RegularityWitness(tuple(tuple(row) for row in chosen.tolist()), r, r == t, seed))
    return out


def rref_systems(s: int, n: int, p: int):
    """Every rank-s s x n matrix over F_p in reduced row echelon form."""
    for pivots in itertools.combinations(range(n), s):
        free = [(i, j) for i in range(s) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            A = np.zeros((s, n), dtype=np.int64)
            for i, c in enumerate(pivots):
                A[i, c] = 1
            for (i, j), v in zip(free, vals):
                A[i, j] = v
            yield A


def test_nondegeneracy(fmap: PolyMap, s: int, p: int, trials: int = 100, seed: int = 0,
                       domain: str = "auto") -> tuple[int, list[FiberWitness]]:
    """Largest number of domain points mapped into a codimension-s subspace.

    Each trial draws a seeded random s x n system of rank s (redrawn until
    the rank is right) and counts domain points whose image satisfies every
    equation.  ``trials = 0`` runs over all rank-s systems instead.
    Laurent maps are scanned on (F_p^*)^s unless ``domain`` says otherwise.
    """
    if s != fmap.s:
        raise ValueError("s must match the map's domain dimension")
    pts = domain_points(s, p, _use_units(fmap, domain))
    values = fmap.evaluate_many(pts, p)
    if fmap.n < s:
        raise ValueError("target dimension must be at least s")

    def fiber(A):
        hits = (values @ A.T) % p
        return int(np.count_nonzero(~hits.any(axis=1)))

    if trials == 0:
        systems = rref_systems(s, fmap.n, p)
    else:
        def draw():
            for trial in range(trials):
                rng = np.random.default_rng([seed, trial])
                while True:
                    A = rng.integers(0, p, size=(s, fmap.n))
                    if rank_mod_p(A, p) == s:
                        break
                yield A
        systems = draw()
    witnesses = [FiberWitness(tuple(tuple(int(c) for c in row) for row in A), fiber(A)) for A in systems]
    return max((w.count for w in witnesses), default=0), witnesses


# these are library functions, not pytest tests
test_regularity.__test__ = False
test_nondegeneracy.__test__ = False
