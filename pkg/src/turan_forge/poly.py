"""Sparse multivariate Laurent polynomials over Z or F_p."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf import fp_inv

__all__ = [
    "Polynomial",
    "evaluate",
    "multiply",
    "support",
    "powmod_array",
    "dumps_polys",
    "loads_polys",
]

Monomial = tuple[int, ...]


def powmod_array(x: np.ndarray, e: int, p: int) -> np.ndarray:
    """Elementwise x**e mod p for a nonnegative exponent (int64, p < 2**31)."""
    x = np.asarray(x, dtype=np.int64) % p
    out = np.ones_like(x)
    base = x.copy()
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


class Polynomial:
    """Immutable sparse polynomial ``sum c_a x^a`` with integer exponent vectors.

    Negative exponents are allowed (Laurent).  With ``modulus`` set every
    coefficient is kept reduced into ``[0, modulus)``; otherwise coefficients
    are exact Python integers.
    """

    __slots__ = ("_terms", "nvars", "modulus", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None,
                 nvars: int | None = None, modulus: int | None = None):
        clean: dict[Monomial, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if nvars is None:
                nvars = len(exps)
            elif len(exps) != nvars:
                raise ValueError(f"monomial {exps} does not have {nvars} variables")
            clean[exps] = clean.get(exps, 0) + int(c)
        if modulus is not None:
            clean = {k: c % modulus for k, c in clean.items()}
        clean = {k: c for k, c in clean.items() if c}
        if nvars is None:
            raise ValueError("nvars is required for an empty polynomial")
        self._terms = clean
        self.nvars = nvars
        self.modulus = modulus
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, modulus: int | None = None) -> "Polynomial":
        return cls({}, nvars, modulus)

    @classmethod
    def const(cls, c: int, nvars: int, modulus: int | None = None) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, modulus)

    @classmethod
    def var(cls, i: int, nvars: int, modulus: int | None = None, power: int = 1) -> "Polynomial":
        exps = [0] * nvars
        exps[i] = power
        return cls({tuple(exps): 1}, nvars, modulus)

    @classmethod
    def variables(cls, nvars: int, modulus: int | None = None) -> list["Polynomial"]:
        return [cls.var(i, nvars, modulus) for i in range(nvars)]

    # -- accessors --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def support(self) -> frozenset[Monomial]:
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_laurent(self) -> bool:
        return any(e < 0 for exps in self._terms for e in exps)

    def total_degree(self) -> int:
        return max((sum(exps) for exps in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(exps) for exps in self._terms}) <= 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> int | None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.modulus is not None and other.modulus is not None and self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return self.modulus if self.modulus is not None else other.modulus

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, np.integer)):
            return Polynomial.const(int(other), self.nvars, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        mod = self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return Polynomial(acc, self.nvars, mod)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self._terms.items()}, self.nvars, self.modulus)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        mod = self._check(other)
        acc: dict[Monomial, int] = defaultdict(int)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                acc[tuple(x + y for x, y in zip(a, b))] += ca * cb
        if mod is not None:
            for k in acc:
                acc[k] %= mod
        return Polynomial(acc, self.nvars, mod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative powers of polynomials are not supported")
        acc = Polynomial.const(1, self.nvars, self.modulus)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars == other.nvars and self.modulus == other.modulus
                and self._terms == other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.modulus, frozenset(self._terms.items())))
        return self._hash

    def reduce(self, p: int) -> "Polynomial":
        """Coefficients reduced mod ``p``; the result carries modulus ``p``."""
        return Polynomial(self._terms, self.nvars, p)

    def lift(self) -> "Polynomial":
        """Forget the modulus (coefficients stay as their residues)."""
        return Polynomial(self._terms, self.nvars, None)

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Same polynomial viewed in ``nvars`` variables, its own starting at ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target variable count too small")
        out = {}
        for exps, c in self._terms.items():
            full = [0] * nvars
            full[offset:offset + self.nvars] = exps
            out[tuple(full)] = c
        return Polynomial(out, nvars, self.modulus)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace variable i by ``images[i]`` (nonnegative exponents only)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if self.is_laurent():
            raise ValueError("substitution into a Laurent polynomial is not supported")
        nv = images[0].nvars
        mod = self.modulus
        for im in images:
            if im.modulus is not None:
                mod = im.modulus
        out = Polynomial.zero(nv, mod)
        cache: dict[tuple[int, int], Polynomial] = {}
        for exps, c in self._terms.items():
            term = Polynomial.const(c, nv, mod)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    term = term * cache[(i, e)]
            out = out + term
        return out

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence[int], p: int | None = None) -> int:
        """Value at ``point``; modulo ``p`` (or the attached modulus) when given."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        p = p if p is not None else self.modulus
        if p is None:
            if self.is_laurent():
                raise ValueError("Laurent polynomials need a modulus to evaluate")
            total = 0
            for exps, c in self._terms.items():
                v = c
                for x, e in zip(point, exps):
                    v *= x**e
                total += v
            return total
        pt = [int(x) % p for x in point]
        total = 0
        for exps, c in self._terms.items():
            v = c % p
            for x, e in zip(pt, exps):
                if e < 0:
                    if x == 0:
                        raise ZeroDivisionError("non-unit at Laurent monomial")
                    v = v * pow(fp_inv(x, p), -e, p) % p
                elif e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def evaluate_many(self, points: np.ndarray, p: int, on_nonunit: str = "raise") -> np.ndarray:
        """Vectorised evaluation mod ``p`` at the rows of ``points``.

        ``on_nonunit="ignore"`` returns -1 at rows where a negative exponent
        meets a zero coordinate instead of raising.
        """
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.nvars) % p
        n = pts.shape[0]
        bad = np.zeros(n, dtype=bool)
        tables: dict[tuple[int, int], np.ndarray] = {}
        inverses: dict[int, np.ndarray] = {}
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e < 0:
                    bad |= pts[:, i] == 0
                    if i not in inverses:
                        inverses[i] = powmod_array(pts[:, i], p - 2, p)
        if bad.any() and on_nonunit == "raise":
            raise ZeroDivisionError("non-unit at Laurent monomial")
        out = np.zeros(n, dtype=np.int64)
        for exps, c in self._terms.items():
            v = np.full(n, c % p, dtype=np.int64)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                key = (i, e)
                if key not in tables:
                    src = inverses[i] if e < 0 else pts[:, i]
                    tables[key] = powmod_array(src, abs(e), p)
                v = v * tables[key] % p
            out = (out + v) % p
        if bad.any():
            out[bad] = -1
        return out

    # -- text form --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def to_text(self) -> str:
        return "".join(f"{c} {' '.join(map(str, exps))}\n" for exps, c in self.sorted_terms())

    @classmethod
    def from_text(cls, text: str, nvars: int | None = None, modulus: int | None = None) -> "Polynomial":
        terms: dict[Monomial, int] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [int(tok) for tok in line.split()]
            c, exps = parts[0], tuple(parts[1:])
            if nvars is None:
                nvars = len(exps)
            terms[exps] = terms.get(exps, 0) + c
        return cls(terms, nvars, modulus)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        out = []
        for exps, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        s = " + ".join(out)
        return s + (f" (mod {self.modulus})" if self.modulus else "")


def evaluate(f: Polynomial, point: Sequence[int], p: int) -> int:
    return f.evaluate(point, p)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def support(f: Polynomial) -> frozenset[Monomial]:
    return f.support()


def dumps_polys(polys: Iterable[Polynomial], label: str = "component") -> str:
    """Several polynomials in one text block, one ``# <label> i`` section each."""
    return "".join(f"# {label} {i}\n{f.to_text()}" for i, f in enumerate(polys))


def loads_polys(text: str, nvars: int, modulus: int | None = None) -> list[Polynomial]:
    sections: list[list[str]] = []
    for line in text.splitlines():
        if line.startswith("#"):
            sections.append([])
        elif line.strip():
            if not sections:
                sections.append([])
            sections[-1].append(line)
    return [Polynomial.from_text("\n".join(s), nvars, modulus) for s in sections]
