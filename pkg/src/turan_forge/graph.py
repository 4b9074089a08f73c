"""Bipartite graphs stored as packed bit rows, plus the edge-list file format."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

__all__ = ["BipartiteGraph", "EdgeListError", "write_edge_list", "read_edge_list", "EDGE_LIST_MAGIC"]

EDGE_LIST_MAGIC = "turan-forge v1"


def _nwords(n: int) -> int:
    return (n + 63) // 64


def pack_bool_rows(mat: np.ndarray) -> np.ndarray:
    """Pack a boolean (rows x n) matrix into little-endian uint64 bit rows."""
    mat = np.asarray(mat, dtype=bool)
    rows, n = mat.shape
    nw = _nwords(n)
    padded = np.zeros((rows, nw * 64), dtype=bool)
    padded[:, :n] = mat
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(rows, nw)


def unpack_bool_rows(rows: np.ndarray, n: int) -> np.ndarray:
    bytes_ = np.ascontiguousarray(rows.astype("<u8", copy=False)).view(np.uint8)
    bits = np.unpackbits(bytes_.reshape(rows.shape[0], -1), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


@dataclass(eq=False)
class BipartiteGraph:
    """Left vertices ``0..left_size-1``, right vertices ``0..right_size-1``.

    ``rows[u]`` is the neighbourhood of left vertex ``u`` as a bitset over the
    right side (bit ``v`` of word ``v // 64``).
    """

    left_size: int
    right_size: int
    rows: np.ndarray
    left_labels: np.ndarray | None = field(default=None, repr=False)
    right_labels: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.rows = np.ascontiguousarray(self.rows, dtype=np.uint64)
        if self.rows.shape != (self.left_size, _nwords(self.right_size)):
            raise ValueError(f"bit rows have shape {self.rows.shape}, expected "
                             f"{(self.left_size, _nwords(self.right_size))}")
        tail = self.right_size % 64
        if tail and self.left_size and (self.rows[:, -1] >> np.uint64(tail)).any():
            raise ValueError("bits set beyond right_size")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_matrix(cls, mat, **labels) -> "BipartiteGraph":
        mat = np.asarray(mat, dtype=bool)
        return cls(mat.shape[0], mat.shape[1], pack_bool_rows(mat), **labels)

    @classmethod
    def from_edges(cls, left_size: int, right_size: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        mat = np.zeros((left_size, right_size), dtype=bool)
        for u, v in edges:
            if not (0 <= u < left_size and 0 <= v < right_size):
                raise ValueError(f"edge ({u}, {v}) out of range")
            mat[u, v] = True
        return cls.from_matrix(mat)

    @classmethod
    def complete(cls, left_size: int, right_size: int) -> "BipartiteGraph":
        return cls.from_matrix(np.ones((left_size, right_size), dtype=bool))

    @classmethod
    def empty(cls, left_size: int, right_size: int) -> "BipartiteGraph":
        return cls(left_size, right_size, np.zeros((left_size, _nwords(right_size)), dtype=np.uint64))

    # -- queries -----------------------------------------------------------

    def to_matrix(self) -> np.ndarray:
        return unpack_bool_rows(self.rows, self.right_size)

    def edge_count(self) -> int:
        return int(np.bitwise_count(self.rows).sum())

    def left_degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)

    def right_degrees(self) -> np.ndarray:
        deg = np.zeros(self.right_size, dtype=np.int64)
        for lo in range(0, self.left_size, 2048):
            deg += unpack_bool_rows(self.rows[lo:lo + 2048], self.right_size).sum(axis=0)
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return bool((int(self.rows[u, v >> 6]) >> (v & 63)) & 1)

    def neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(unpack_bool_rows(self.rows[u:u + 1], self.right_size)[0])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges (u, v) in sorted order."""
        for lo in range(0, self.left_size, 2048):
            block = unpack_bool_rows(self.rows[lo:lo + 2048], self.right_size)
            us, vs = np.nonzero(block)
            for u, v in zip(us.tolist(), vs.tolist()):
                yield lo + u, v

    def transpose(self) -> "BipartiteGraph":
        """The same graph with the two sides exchanged."""
        L, R = self.left_size, self.right_size
        out_bytes = np.zeros((R, _nwords(L) * 8), dtype=np.uint8)
        step = 4096  # multiple of 64 so blocks land on word boundaries
        for lo in range(0, L, step):
            block = unpack_bool_rows(self.rows[lo:lo + step], R).T
            packed = np.packbits(block, axis=1, bitorder="little")
            out_bytes[:, lo // 8: lo // 8 + packed.shape[1]] = packed
        rows = out_bytes.view("<u8").astype(np.uint64, copy=False).reshape(R, _nwords(L))
        return BipartiteGraph(R, L, rows, self.right_labels, self.left_labels)

    def same_adjacency(self, other: "BipartiteGraph") -> bool:
        return (self.left_size == other.left_size and self.right_size == other.right_size
                and np.array_equal(self.rows, other.rows))


class EdgeListError(ValueError):
    pass


def write_edge_list(path, graph: BipartiteGraph, p: int, family: str) -> None:
    """Write ``graph`` in the versioned edge-list format (edges sorted)."""
    if any(ch.isspace() for ch in family):
        raise ValueError("family name must not contain whitespace")
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"{EDGE_LIST_MAGIC}\n")
        fh.write(f"p={p} left={graph.left_size} right={graph.right_size} family={family}\n")
        for lo in range(0, graph.left_size, 2048):
            block = unpack_bool_rows(graph.rows[lo:lo + 2048], graph.right_size)
            us, vs = np.nonzero(block)
            fh.writelines(f"{lo + u} {v}\n" for u, v in zip(us.tolist(), vs.tolist()))
    os.replace(tmp, path)


def read_edge_list(path) -> tuple[BipartiteGraph, dict]:
    """Parse an edge-list file; returns the graph and the header fields."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise EdgeListError(f"cannot read {path}: {exc.strerror}") from exc
    if len(lines) < 2 or lines[0].strip() != EDGE_LIST_MAGIC:
        raise EdgeListError(f"{path}: missing '{EDGE_LIST_MAGIC}' header")
    meta: dict = {}
    for tok in lines[1].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise EdgeListError(f"{path}: malformed header token {tok!r}")
        meta[key] = val
    try:
        left, right = int(meta["left"]), int(meta["right"])
        meta["p"] = int(meta["p"])
    except (KeyError, ValueError) as exc:
        raise EdgeListError(f"{path}: header needs integer p, left and right") from exc
    meta["left"], meta["right"] = left, right
    mat = np.zeros((left, right), dtype=bool)
    prev = (-1, -1)
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        parts = line.split()
        try:
            u, v = int(parts[0]), int(parts[1])
        except (ValueError, IndexError):
            raise EdgeListError(f"{path}:{lineno}: expected 'u v'") from None
        if len(parts) != 2 or not (0 <= u < left and 0 <= v < right):
            raise EdgeListError(f"{path}:{lineno}: edge out of range or malformed")
        if (u, v) <= prev:
            raise EdgeListError(f"{path}:{lineno}: edges not sorted or duplicated")
        prev = (u, v)
        mat[u, v] = True
    return BipartiteGraph.from_matrix(mat), meta
