"""Pure-Python versions of the bitset kernels, using Python ints as bitsets."""

from __future__ import annotations

import numpy as np


def _as_ints(rows: np.ndarray) -> list[int]:
    data = np.ascontiguousarray(rows, dtype="<u8")
    return [int.from_bytes(data[i].tobytes(), "little") for i in range(data.shape[0])]


def _to_words(x: int, nw: int) -> np.ndarray:
    return np.frombuffer(x.to_bytes(nw * 8, "little"), dtype="<u8").astype(np.uint64)


def kst_scan(rows, s, t, budget, lead_lo=0, lead_hi=-1):
    n, nw = rows.shape
    if lead_hi < 0 or lead_hi > n:
        lead_hi = n
    if s < 1 or s > n or lead_lo >= lead_hi:
        return 0, True, None, None
    bits = _as_ints(rows)
    acc = [0] * s
    idx = [0] * s
    idx[0] = lead_lo
    examined = 0
    depth = 0
    while True:
        if idx[depth] > n - (s - depth) or (depth == 0 and idx[0] >= lead_hi):
            if depth == 0:
                return examined, True, None, None
            depth -= 1
            idx[depth] += 1
            continue
        if examined >= budget:
            return examined, False, None, None
        examined += 1
        cur = bits[idx[0]] if depth == 0 else acc[depth - 1] & bits[idx[depth]]
        acc[depth] = cur
        if cur.bit_count() < t:
            idx[depth] += 1
            continue
        if depth == s - 1:
            return examined, True, tuple(idx), _to_words(cur, nw)
        depth += 1
        idx[depth] = idx[depth - 1] + 1


def max_codegree_exhaustive(rows, s):
    n = rows.shape[0]
    if s < 1 or s > n:
        return 0
    bits = _as_ints(rows)
    best = -1

    def rec(start, depth, cur):
        nonlocal best
        for i in range(start, n - (s - depth) + 1):
            nxt = bits[i] if depth == 0 else cur & bits[i]
            c = nxt.bit_count()
            if c <= best:
                continue
            if depth == s - 1:
                best = c
            else:
                rec(i + 1, depth + 1, nxt)

    rec(0, 0, 0)
    return max(best, 0)


def subset_codegrees(rows, subsets):
    bits = _as_ints(rows)
    out = np.zeros(len(subsets), dtype=np.int64)
    for i, sub in enumerate(np.asarray(subsets).tolist()):
        x = bits[sub[0]]
        for j in sub[1:]:
            x &= bits[j]
        out[i] = x.bit_count()
    return out
