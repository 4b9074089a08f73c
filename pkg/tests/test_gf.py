import itertools

import numpy as np
import pytest

from turan_forge.gf import (
    ExtField,
    PrimeField,
    find_irreducible,
    first_primes,
    fp_inv,
    is_irreducible,
    is_prime,
    norm,
    primes_up_to,
    rank_mod_p,
)


@pytest.mark.parametrize("a,p,expected", [(2, 5, 3), (1, 7, 1), (4, 7, 2)])
def test_fp_inv_examples(a, p, expected):
    assert fp_inv(a, p) == expected


def test_fp_inv_zero_raises():
    with pytest.raises(ZeroDivisionError, match="non-invertible"):
        fp_inv(0, 7)
    with pytest.raises(ZeroDivisionError):
        fp_inv(14, 7)


def test_fp_inv_is_an_involution():
    for p in (int(q) for q in primes_up_to(101)):
        for a in range(1, p):
            b = fp_inv(a, p)
            assert a * b % p == 1
            assert fp_inv(b, p) == a


def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(5000).tolist())
    assert [n for n in range(5001) if is_prime(n)] == sorted(sieve)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_prime_field_rejects_composites():
    assert PrimeField(7).inv(3) == 5
    with pytest.raises(ValueError):
        PrimeField(9)


def _monic(p, m):
    """Monic polynomials of degree m (constant first) in the (c_{m-1}, ..., c_0) order."""
    for high_first in itertools.product(range(p), repeat=m):
        yield list(reversed(high_first)) + [1]


def _mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def _reducibles(p, m):
    """Every product of two monic polynomials of positive degree summing to m."""
    red = set()
    for a in range(1, m // 2 + 1):
        for f in _monic(p, a):
            for g in _monic(p, m - a):
                red.add(_mul(f, g, p))
    return red


@pytest.mark.parametrize("p,m,expected", [(3, 2, (1, 0, 1)), (2, 2, (1, 1, 1)), (5, 2, (2, 0, 1))])
def test_find_irreducible_examples(p, m, expected):
    assert find_irreducible(p, m) == expected


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_find_irreducible_is_first_in_order(p, m):
    red = _reducibles(p, m)
    first = next(tuple(f) for f in _monic(p, m) if tuple(f) not in red)
    assert find_irreducible(p, m) == first
    for f in _monic(p, m):
        assert is_irreducible(f, p) == (tuple(f) not in red)


def test_ext_field_validation():
    F = ExtField(3, 2)
    assert F.irreducible == (1, 0, 1)
    with pytest.raises(ValueError, match="root"):
        ExtField(3, 2, (2, 0, 1))  # x^2 - 1
    with pytest.raises(ValueError):
        ExtField(4, 2)
    with pytest.raises(ValueError):
        F((1, 2, 0))


def test_norm_examples_f9():
    F = ExtField(3, 2, (1, 0, 1))
    i = F((0, 1))
    assert i * i == F(2)
    assert norm(F.one()) == 1
    assert norm(i) == 1
    g = F.multiplicative_generator
    assert norm(g) == 2
    assert norm(F.zero()) == 0


def _log_tables(F):
    """Discrete log / antilog of F^* built by repeated multiplication with a generator."""
    g = F.multiplicative_generator
    q1 = F.order - 1
    antilog = np.zeros(q1, dtype=np.int64)
    log = np.full(F.order, -1, dtype=np.int64)
    x = F.one()
    for k in range(q1):
        antilog[k] = x.index
        log[x.index] = k
        x = x * g
    assert x == F.one() and (log[1:] >= 0).sum() == q1
    return log, antilog


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (3, 4), (5, 2), (7, 2), (5, 3), (7, 3), (7, 4)])
def test_norm_is_multiplicative_exhaustively(p, m):
    F = ExtField(p, m)
    norms = np.array([norm(e) for e in F.elements()], dtype=np.int64)
    log, antilog = _log_tables(F)
    nz = np.arange(1, F.order)
    # every ordered pair of nonzero elements
    prod_idx = antilog[(log[nz][:, None] + log[nz][None, :]) % (F.order - 1)]
    lhs = norms[prod_idx]
    rhs = norms[nz][:, None] * norms[nz][None, :] % p
    assert np.array_equal(lhs, rhs)
    # kernel of the norm map
    assert int((norms[1:] == 1).sum()) == (F.order - 1) // (p - 1)
    assert np.array_equal(F.norm_table(), norms)


def test_element_arithmetic_roundtrip():
    F = ExtField(5, 3)
    for e in itertools.islice(F.elements(), 1, 60):
        assert e * e.inverse() == F.one()
        assert F.from_index(e.index) == e
        assert (e - e) == F.zero()


def test_rank_mod_p():
    assert rank_mod_p([[1, 2], [2, 4]], 5) == 1
    assert rank_mod_p([[1, 2], [2, 4]], 7) == 1
    assert rank_mod_p([[1, 0], [0, 5]], 5) == 1
    assert rank_mod_p(np.eye(4, dtype=int), 3) == 4
    assert rank_mod_p([[1, 1, 1], [1, 2, 4], [1, 3, 9]], 7) == 3


def test_first_primes():
    assert first_primes(6) == [2, 3, 5, 7, 11, 13]
    assert len(first_primes(10_000)) == 10_000
