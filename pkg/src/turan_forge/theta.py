"""The grid obstruction polynomial theta in F_p[w_1, ..., w_k] and its monomial criterion.

theta is the square root of the product of all nonzero linear forms
``c_1 w_1 + ... + c_k w_k`` over F_p.  A monomial ``w^i`` of theta with
``2 i_l <= (p - 1)(d_l - 1)`` for every l certifies that every continuous
function on R^{d_1} x ... x R^{d_k} is constant on some p x ... x p grid.
Only the support of theta is used, so theta is computed up to a nonzero
scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .gf import is_prime
from .poly import Polynomial

__all__ = [
    "ThetaPoly",
    "DimensionTuple",
    "theta_poly",
    "theta_closed_form_k2",
    "full_linear_form_product",
    "admissible_tuples",
    "grid_dimension",
    "criterion_grid_dimension",
    "MAX_FIELD_POWER",
]

MAX_FIELD_POWER = 10**6

DimensionTuple = tuple[int, ...]


@dataclass(frozen=True)
class ThetaPoly:
    p: int
    k: int
    poly: Polynomial
    sign_normalized: bool = False

    def support(self) -> frozenset[tuple[int, ...]]:
        return self.poly.support()

    @property
    def degree(self) -> int:
        return (self.p**self.k - 1) // 2


def _check_p(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _representatives(p: int, k: int):
    """One vector from each pair {c, -c}: first nonzero coordinate in [1, (p-1)/2]."""
    half = (p - 1) // 2
    for lead in range(k):
        for a in range(1, half + 1):
            for rest in np.ndindex(*(p,) * (k - lead - 1)):
                yield (0,) * lead + (a,) + tuple(rest)


def _all_nonzero(p: int, k: int):
    for c in np.ndindex(*(p,) * k):
        if any(c):
            yield c


def _product_of_forms(forms, p: int, k: int, degree: int) -> Polynomial:
    """Multiply linear forms of a homogeneous polynomial stored densely.

    The coefficient array is indexed by (i_1, ..., i_{k-1}); the exponent of
    w_k is implied by the running degree, so multiplying by w_k is a no-op
    on the index and multiplying by w_j (j < k) shifts along axis j.
    """
    shape = (degree + 1,) * (k - 1)
    arr = np.zeros(shape if shape else (1,), dtype=np.int64)
    arr[(0,) * (k - 1) if k > 1 else 0] = 1
    deg = 0
    for c in forms:
        deg += 1
        new = arr * c[k - 1] % p
        for j in range(k - 1):
            if c[j]:
                src = [slice(None)] * (k - 1)
                dst = [slice(None)] * (k - 1)
                src[j] = slice(0, deg)
                dst[j] = slice(1, deg + 1)
                new[tuple(dst)] += arr[tuple(src)] * c[j]
        arr = new % p
    terms = {}
    if k == 1:
        if arr[0]:
            terms[(deg,)] = int(arr[0])
        return Polynomial(terms, 1, p)
    for idx in zip(*np.nonzero(arr)):
        idx = tuple(int(i) for i in idx)
        terms[idx + (deg - sum(idx),)] = int(arr[idx])
    return Polynomial(terms, k, p)


def theta_poly(p: int, k: int) -> ThetaPoly:
    """theta up to a nonzero scalar: product over representatives of {c, -c}."""
    _check_p(p)
    if k < 1:
        raise ValueError("k must be positive")
    if p**k > MAX_FIELD_POWER:
        raise ValueError(f"p^k = {p**k} exceeds the cap {MAX_FIELD_POWER}")
    degree = (p**k - 1) // 2
    poly = _product_of_forms(_representatives(p, k), p, k, degree)
    return ThetaPoly(p, k, poly)


def full_linear_form_product(p: int, k: int) -> Polynomial:
    """Product of c . w over every nonzero c in F_p^k (this is theta squared up to sign)."""
    _check_p(p)
    if p**k > MAX_FIELD_POWER:
        raise ValueError(f"p^k = {p**k} exceeds the cap {MAX_FIELD_POWER}")
    return _product_of_forms(_all_nonzero(p, k), p, k, p**k - 1)


def theta_closed_form_k2(p: int) -> ThetaPoly:
    """theta for k = 2 as w1^m w2^m (w1^(p-1) - w2^(p-1))^m with m = (p-1)/2."""
    _check_p(p)
    m = (p - 1) // 2
    terms = {}
    for l in range(m + 1):
        c = comb(m, l) * (-1) ** (m - l)
        terms[(m + (p - 1) * l, m + (p - 1) * (m - l))] = c
    return ThetaPoly(p, 2, Polynomial(terms, 2, p))


def _minimal_dims(i: int, p: int) -> int:
    # smallest d >= 1 with 2i <= (p-1)(d-1)
    return -(-2 * i // (p - 1)) + 1


def admissible_tuples(theta: ThetaPoly, max_dim: int) -> list[DimensionTuple]:
    """Antichain of minimal (d_1, ..., d_k) certified by some monomial of theta.

    Tuples with an entry above ``max_dim`` are dropped.  Any tuple dominating
    a listed one is also certified.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    cands = {tuple(_minimal_dims(i, theta.p) for i in mono) for mono in theta.support()}
    cands = {c for c in cands if max(c) <= max_dim}
    minimal = [c for c in cands
               if not any(o != c and all(a <= b for a, b in zip(o, c)) for o in cands)]
    return sorted(minimal)


def criterion_grid_dimension(p: int) -> int:
    """Least d with (d, d) dominating a minimal tuple derived from theta(p, 2)."""
    tuples = admissible_tuples(theta_poly(p, 2), max_dim=p + 5)
    return min(max(t) for t in tuples)


def grid_dimension(p: int) -> int:
    """2 * ceil((p - 1) / 4) + 2, cross-checked against the monomial criterion."""
    _check_p(p)
    d = 2 * (-(-(p - 1) // 4)) + 2
    derived = criterion_grid_dimension(p)
    if d != derived:
        raise ArithmeticError(f"formula gives d={d} but the criterion gives {derived} for p={p}")
    return d
