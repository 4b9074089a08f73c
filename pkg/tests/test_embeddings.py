import itertools
import math

import numpy as np
import pytest

from turan_forge.embeddings import (
    PolyMap,
    PrimeAssignment,
    domain_points,
    order_bound,
    prime_power_embedding,
    rref_systems,
    test_nondegeneracy as nondegeneracy,
    test_regularity as regularity,
    veronese_monomials,
    veronese_regular,
)
from turan_forge.gf import first_primes, rank_mod_p
from turan_forge.poly import Polynomial


def _det_mod(m, p):
    """Leibniz determinant, independent of the elimination code."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = sign
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total % p


def _rank_by_minors(vectors, p):
    vectors = [list(v) for v in vectors]
    r, n = len(vectors), len(vectors[0])
    for k in range(r, 0, -1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(n), k):
                if _det_mod([[vectors[i][j] for j in cols] for i in rows], p):
                    return k
    return 0


# -- veronese -----------------------------------------------------------------

def test_veronese_monomial_order():
    assert veronese_monomials(1, 3) == [(0,), (1,), (2,), (3,)]
    assert veronese_monomials(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(veronese_monomials(2, 12)) == math.comb(14, 2)


def test_veronese_s1_t2_d1():
    fmap = veronese_regular(1, 2, 1, seed=0, p=101)
    assert fmap.n == 4
    wits = regularity(fmap, 2, 101, trials=50, seed=1)
    assert all(w.passed and w.rank == 2 for w in wits)


def test_veronese_s1_t3_d3_rank_at_small_nodes():
    p = 7
    fmap = veronese_regular(1, 3, 3, seed=0, p=p)
    assert fmap.n == 6
    vals = [fmap.evaluate((x,), p) for x in (0, 1, 2)]
    assert rank_mod_p(vals, p) == 3 == _rank_by_minors(vals, p)
    assert all(w.passed for w in regularity(fmap, 3, p, trials=0))


def test_veronese_degree_too_small():
    with pytest.raises(ValueError, match="at least t-1"):
        veronese_regular(2, 2, 0)


def test_veronese_integer_mode_and_seeds():
    a = veronese_regular(2, 3, 3, seed=5)
    b = veronese_regular(2, 3, 3, seed=5)
    c = veronese_regular(2, 3, 3, seed=6)
    assert a.components == b.components and a.components != c.components
    assert a.n == 9 and a.meta["seed"] == 5 and a.meta["resamples"] >= 0
    assert all(-100 <= co <= 100 for f in a.components for _, co in f.items())


@pytest.mark.parametrize("p", [7, 11, 13])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_full_veronese_regular_exhaustively(p, d):
    fmap = veronese_regular(1, 1, d, project=False)
    for t in range(1, d + 2):
        wits = regularity(fmap, t, p, trials=0)
        assert len(wits) == math.comb(p, t)
        assert all(w.passed for w in wits)


def test_regularity_detects_dependent_map():
    x, = Polynomial.variables(1)
    fmap = PolyMap([x, 2 * x], 1, 1)
    wits = regularity(fmap, 2, 5, trials=20)
    assert all(not w.passed and w.rank == 1 for w in wits)
    exhaustive = regularity(fmap, 2, 5, trials=0)
    pair = next(w for w in exhaustive if w.points == ((1,), (2,)))
    assert pair.rank == 1 and not pair.passed


def test_regularity_domain_too_small():
    fmap = veronese_regular(2, 1, 29, project=False)
    with pytest.raises(ValueError, match="domain too small"):
        regularity(fmap, 30, 5)


def test_regularity_witnesses_record_seed():
    fmap = veronese_regular(1, 2, 1, project=False)
    wits = regularity(fmap, 2, 11, trials=3, seed=9)
    assert [w.seed for w in wits] == [9, 9, 9]
    assert wits == regularity(fmap, 2, 11, trials=3, seed=9)
    for w in wits:
        assert len(set(w.points)) == 2


# -- prime-exponent map -------------------------------------------------------

def test_prime_power_s1_n2():
    fmap, assignment, bound = prime_power_embedding(1, 2)
    assert assignment.p_ij == ((2,), (3,))
    assert fmap.components == [Polynomial({(2,): 1, (-2,): 1}), Polynomial({(3,): 1, (-3,): 1})]
    assert bound == 12


def test_prime_power_s2_n2():
    _, assignment, _ = prime_power_embedding(2, 2)
    cols = list(zip(*assignment.p_ij))
    assert cols == [(2, 5), (3, 7)]
    flat = [q for row in assignment.p_ij for q in row]
    assert len(set(flat)) == 4
    assert all(a < b for col in cols for a, b in zip(col, col[1:]))


def test_prime_power_s1_n1():
    fmap, _, bound = prime_power_embedding(1, 1)
    assert fmap.components == [Polynomial({(2,): 1, (-2,): 1})]
    assert bound == 8


def test_prime_assignment_validation():
    with pytest.raises(ValueError):
        PrimeAssignment(((2, 3), (2, 5)))
    with pytest.raises(ValueError):
        PrimeAssignment(((5, 3), (2, 7)))


@pytest.mark.parametrize("s,q,expected", [(1, 3, 12), (2, 13, 5408), (1, 2, 8)])
def test_order_bound_examples(s, q, expected):
    assert order_bound(s, q) == expected


def test_order_bound_envelope():
    for s in range(1, 7):
        for q in range(2, 1001):
            assert order_bound(s, q) <= (4 * math.e * q) ** s


def test_prime_envelope_first_10k():
    primes = first_primes(10_000)
    for m in range(3, 10_001):
        assert primes[m - 1] < 2 * m * math.log(m)


def _fiber_oracle(p):
    """Max over all nonzero (a, b) of #{x in F_p^* : a f1(x) + b f2(x) = 0}, scalar loops."""
    f1 = [(pow(x, 2, p) + pow(x, -2, p)) % p for x in range(1, p)]
    f2 = [(pow(x, 3, p) + pow(x, -3, p)) % p for x in range(1, p)]
    best = 0
    for a in range(p):
        for b in range(p):
            if a or b:
                best = max(best, sum(1 for u, v in zip(f1, f2) if (a * u + b * v) % p == 0))
    return best


def test_prime_map_nondegenerate_over_f101():
    p = 101
    fmap, _, bound = prime_power_embedding(1, 2)
    exhaustive, wits = nondegeneracy(fmap, 1, p, trials=0)
    assert len(wits) == p + 1  # one per point of the projective line
    assert exhaustive == _fiber_oracle(p)
    assert exhaustive <= bound == 12
    sampled, wits = nondegeneracy(fmap, 1, p, trials=200, seed=0)
    assert len(wits) == 200 and sampled <= exhaustive


@pytest.mark.parametrize("p", [5, 7, 11, 101])
def test_x_plus_inverse_has_small_fibers(p):
    x = Polynomial({(1,): 1, (-1,): 1})
    worst, _ = nondegeneracy(PolyMap([x], 1, 1), 1, p, trials=0)
    assert worst <= 2


def test_constant_map_is_degenerate():
    p = 7
    const = PolyMap([Polynomial.const(1, 1), Polynomial.const(2, 1)], 1, 0)
    worst, wits = nondegeneracy(const, 1, p, trials=0, domain="units")
    assert worst == p - 1
    assert any(w.count == p - 1 for w in wits)


def test_nondegeneracy_s_mismatch():
    fmap, _, _ = prime_power_embedding(1, 2)
    with pytest.raises(ValueError):
        nondegeneracy(fmap, 2, 11)


def test_rref_systems_count():
    # number of s-dimensional subspaces of F_p^n (Gaussian binomial)
    def gauss(n, k, q):
        num = den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        return num // den

    for s, n, p in [(1, 2, 5), (1, 3, 3), (2, 3, 3), (2, 4, 2)]:
        systems = list(rref_systems(s, n, p))
        assert len(systems) == gauss(n, s, p)
        assert all(rank_mod_p(A, p) == s for A in systems)


def test_domain_points():
    assert domain_points(1, 3).tolist() == [[0], [1], [2]]
    assert domain_points(2, 3, units=True).tolist() == [[1, 1], [1, 2], [2, 1], [2, 2]]


def test_polymap_text_round_trip():
    fmap, _, _ = prime_power_embedding(2, 3)
    back = PolyMap.from_text(fmap.to_text(), 2)
    assert back.components == fmap.components
    assert back.is_laurent()


def test_polymap_evaluate_many_matches_scalar():
    fmap = veronese_regular(2, 2, 2, seed=1, p=13)
    pts = domain_points(2, 13)
    many = fmap.evaluate_many(pts, 13)
    assert many.tolist() == [list(fmap.evaluate(tuple(pt), 13)) for pt in pts.tolist()]
    assert np.all((0 <= many) & (many < 13))
