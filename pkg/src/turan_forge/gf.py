"""Arithmetic in prime fields F_p and their extensions F_{p^m}.

Extension elements are coefficient vectors in the polynomial basis
``1, w, ..., w^(m-1)`` where ``w`` is a root of the lexicographically
smallest monic irreducible of degree ``m``.  Vectors of F_p^m are identified
with extension elements coefficientwise in that basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "is_prime",
    "primes_up_to",
    "first_primes",
    "fp_inv",
    "rank_mod_p",
    "PrimeField",
    "ExtField",
    "ExtElement",
    "find_irreducible",
    "is_irreducible",
    "norm",
]


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed base set).

    The base set is exact for every n < 3.3 * 10^24.
    """
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns all primes <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.flatnonzero(sieve).astype(np.int64)


def first_primes(count: int) -> list[int]:
    """The first ``count`` primes in increasing order."""
    if count <= 0:
        return []
    bound = 16
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return [int(q) for q in ps[:count]]
        bound *= 2


def fp_inv(a: int, p: int) -> int:
    """Inverse of ``a`` modulo the prime ``p``."""
    if a % p == 0:
        raise ZeroDivisionError(f"non-invertible element: {a} mod {p}")
    return pow(a, -1, p)


def rank_mod_p(matrix, p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2 or m.size == 0:
        return 0
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), -1, p) % p
        below = m[rank + 1 :, c].copy()
        if below.any():
            m[rank + 1 :] = (m[rank + 1 :] - np.outer(below, m[rank])) % p
        rank += 1
    return rank


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        return fp_inv(a, self.p)

    def elements(self) -> range:
        return range(self.p)


# -- polynomials over F_p as coefficient lists, constant term first --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        _trim(a)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= m/2."""
    poly = _trim([c % p for c in poly])
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if poly[0] == 0:
        return False
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _polymod(poly, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``m`` over F_p.

    Candidates ``x^m + c_{m-1}x^{m-1} + ... + c_0`` are ordered by the tuple
    ``(c_{m-1}, ..., c_0)``, i.e. by the integer ``sum c_i p^i``.  The result
    is returned constant term first, including the leading 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class ExtField:
    """The field F_{p^m} = F_p[w] / (irreducible)."""

    p: int
    m: int
    irreducible: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if not self.irreducible:
            object.__setattr__(self, "irreducible", find_irreducible(self.p, self.m))
        irr = tuple(int(c) % self.p for c in self.irreducible)
        if len(irr) != self.m + 1 or irr[-1] != 1:
            raise ValueError("irreducible must be monic of degree m")
        if self.m > 1 and any(sum(c * pow(r, i, self.p) for i, c in enumerate(irr)) % self.p == 0
                              for r in range(self.p)):
            raise ValueError("modulus has a root in F_p")
        if not is_irreducible(list(irr), self.p):
            raise ValueError("modulus is reducible")
        object.__setattr__(self, "irreducible", irr)

    @property
    def order(self) -> int:
        return self.p**self.m

    def __call__(self, coeffs) -> "ExtElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs] + [0] * (self.m - 1)
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return ExtElement(coeffs, self)

    def zero(self) -> "ExtElement":
        return self(0)

    def one(self) -> "ExtElement":
        return self(1)

    def gen(self) -> "ExtElement":
        """The basis element ``w``; for m = 1 this is 1."""
        if self.m == 1:
            return self(1)
        return self([0, 1] + [0] * (self.m - 2))

    def from_index(self, idx: int) -> "ExtElement":
        """Element whose coefficient vector, read most significant first, encodes ``idx``."""
        digits = [(idx // self.p ** (self.m - 1 - i)) % self.p for i in range(self.m)]
        return self(digits)

    def elements(self):
        """All field elements in lexicographic order of their coefficient vectors."""
        for c in itertools.product(range(self.p), repeat=self.m):
            yield ExtElement(c, self)

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        irr = self.irreducible
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * irr[i]
            prod[k] = 0
        return tuple(x % p for x in prod[:m])

    @cached_property
    def multiplicative_generator(self) -> "ExtElement":
        """Smallest element (in lexicographic order) of multiplicative order p^m - 1."""
        q1 = self.order - 1
        factors = _prime_factors(q1)
        for e in self.elements():
            if not any(e.coeffs):
                continue
            if all(e ** (q1 // r) != self.one() for r in factors):
                return e
        raise AssertionError("unreachable: F_q^* is cyclic")

    def norm_table(self) -> np.ndarray:
        """norm(e) for every element, indexed by lexicographic element index."""
        out = np.zeros(self.order, dtype=np.int64)
        if self.m == 1:
            return np.arange(self.p, dtype=np.int64)
        g = self.multiplicative_generator
        # N(g^k) = N(g)^k, so walk the cyclic group once
        ng = norm(g)
        x, nx = self.one(), 1
        for _ in range(self.order - 1):
            out[x.index] = nx
            x = x * g
            nx = nx * ng % self.p
        return out


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ExtElement:
    coeffs: tuple[int, ...]
    field: ExtField = field(repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.field.m or any(not 0 <= c < self.field.p for c in self.coeffs):
            raise ValueError("coefficients must be a length-m vector of residues")

    def _coerce(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return self.field(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self.field(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return self.field(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return ExtElement(self.field._mul(self.coeffs, other.coeffs), self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ExtElement":
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = self.field.one(), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "ExtElement":
        if not any(self.coeffs):
            raise ZeroDivisionError("non-invertible element: 0")
        return self ** (self.field.order - 2)

    def __bool__(self):
        return any(self.coeffs)

    @property
    def index(self) -> int:
        """Lexicographic index of the coefficient vector (first coefficient most significant)."""
        idx = 0
        for c in self.coeffs:
            idx = idx * self.field.p + c
        return idx


def norm(a: ExtElement) -> int:
    """Norm of ``a`` down to F_p, computed as a^((p^m - 1)/(p - 1))."""
    f = a.field
    if not a:
        return 0
    val = a ** ((f.order - 1) // (f.p - 1))
    if any(val.coeffs[1:]):
        raise AssertionError("norm landed outside the prime field")
    return val.coeffs[0]
