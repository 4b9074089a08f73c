"""K_{s,t} (grid) detection, codegrees, girth and the counting bound."""

from __future__ import annotations

import json
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .graph import BipartiteGraph

__all__ = [
    "GridWitness",
    "SearchOutcome",
    "find_kst",
    "max_codegree",
    "check_kst_bound",
    "KSTBound",
    "girth",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class GridWitness:
    """An explicit K_{s,t}: every (left, right) pair is an edge."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def verify(self, g: BipartiteGraph) -> bool:
        if len(set(self.left)) != len(self.left) or len(set(self.right)) != len(self.right):
            return False
        return all(g.has_edge(u, v) for u in self.left for v in self.right)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def as_dict(self) -> dict:
        return {"left": list(self.left), "right": list(self.right)}

    @classmethod
    def from_json(cls, text: str) -> "GridWitness":
        d = json.loads(text)
        return cls(tuple(d["left"]), tuple(d["right"]))


@dataclass(frozen=True)
class SearchOutcome:
    found: GridWitness | None
    subsets_examined: int
    exhaustive: bool

    def as_dict(self) -> dict:
        return {
            "found": None if self.found is None else self.found.as_dict(),
            "subsets_examined": self.subsets_examined,
            "exhaustive": self.exhaustive,
        }


def _first_bits(row: np.ndarray, t: int) -> tuple[int, ...]:
    bits = np.unpackbits(row.astype("<u8").view(np.uint8), bitorder="little")
    return tuple(int(i) for i in np.flatnonzero(bits)[:t])


def _scan_side(rows: np.ndarray, s: int, t: int, budget: int, threads: int):
    """Search one orientation.  Returns (examined, complete, subset, common_row)."""
    n = rows.shape[0]
    if s > n or t > rows.shape[1] * 64:
        return 0, True, None, None
    node_bound = sum(comb(n, k) for k in range(1, s + 1))
    if threads <= 1 or kernels.BACKEND != "cython" or node_bound > budget or n < 2 * threads:
        return kernels.kst_scan(rows, s, t, budget)

    # One task per leading index.  Counts from tasks up to the first hit add up
    # to exactly what the serial scan reports, so the outcome is deterministic.
    best = [n]
    lock = threading.Lock()

    def task(lead):
        with lock:
            if lead > best[0]:
                return None
        res = kernels.kst_scan(rows, s, t, budget, lead, lead + 1)
        if res[2] is not None:
            with lock:
                best[0] = min(best[0], lead)
        return res

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(task, range(n)))
    examined = 0
    for res in results:
        if res is None:
            break
        examined += res[0]
        if res[2] is not None:
            return examined, True, res[2], res[3]
    return examined, True, None, None


def find_kst(g: BipartiteGraph, s: int, t: int, budget: int = DEFAULT_BUDGET,
             threads: int | None = None) -> SearchOutcome:
    """Look for an s-by-t or t-by-s grid (a K_{s,t} in either orientation).

    s-subsets are enumerated lexicographically on one side with their bit
    rows intersected; a branch is dropped as soon as its running intersection
    has fewer than ``t`` members.  The side with fewer vertices is searched
    first (left on ties).  ``budget`` caps the number of intersections.
    """
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    threads = kernels.worker_count() if threads is None else threads
    orientations = ["left", "right"]
    if g.right_size < g.left_size:
        orientations.reverse()
    examined = 0
    exhaustive = True
    transposed = None
    for side in orientations:
        if side == "left":
            rows = g.rows
        else:
            if transposed is None:
                transposed = g.transpose()
            rows = transposed.rows
        remaining = budget - examined
        if remaining <= 0:
            exhaustive = False
            break
        n_ex, complete, subset, common = _scan_side(rows, s, t, remaining, threads)
        examined += n_ex
        if subset is not None:
            others = _first_bits(common, t)
            if side == "left":
                w = GridWitness(tuple(subset), others)
            else:
                w = GridWitness(others, tuple(subset))
            return SearchOutcome(w, examined, exhaustive and complete)
        if not complete:
            exhaustive = False
            break
    return SearchOutcome(None, examined, exhaustive)


def max_codegree(g: BipartiteGraph, s: int, sample: int = 0, seed: int = 0) -> int:
    """Largest common neighbourhood of s left vertices.

    ``sample = 0`` scans every s-subset; otherwise ``sample`` uniformly random
    s-subsets are drawn from a generator seeded with ``seed``.
    """
    if g.left_size < s:
        raise ValueError("left side has fewer than s vertices")
    if sample == 0:
        return int(kernels.max_codegree_exhaustive(g.rows, s))
    rng = np.random.default_rng(seed)
    subsets = np.empty((sample, s), dtype=np.int64)
    for i in range(sample):
        subsets[i] = np.sort(rng.choice(g.left_size, size=s, replace=False))
    return int(kernels.subset_codegrees(g.rows, subsets).max())


@dataclass(frozen=True)
class KSTBound:
    lhs: int
    rhs: int
    holds: bool

    def as_dict(self) -> dict:
        # big integers as strings keep the JSON exact
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds}


def check_kst_bound(g: BipartiteGraph, s: int, t: int) -> KSTBound:
    """Double count of (s-subset of left, right vertex) incidences.

    A graph with no s-by-t grid (s left, t right) satisfies
    sum over right y of C(d(y), s) <= (t - 1) C(left_size, s).
    """
    lhs = sum(comb(int(d), s) for d in g.right_degrees())
    rhs = (t - 1) * comb(g.left_size, s)
    return KSTBound(lhs, rhs, lhs <= rhs)


def girth(g: BipartiteGraph) -> int | None:
    """Shortest cycle length by breadth-first search from every vertex."""
    L = g.left_size
    n = L + g.right_size
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges():
        adj[u].append(L + v)
        adj[L + v].append(u)
    best = None
    dist = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if not adj[root]:
            continue
        touched = [root]
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    touched.append(y)
                    queue.append(y)
                elif y != parent[x]:
                    cyc = dist[x] + dist[y] + 1
                    if best is None or cyc < best:
                        best = cyc
        for x in touched:
            dist[x] = -1
            parent[x] = -1
    return best
