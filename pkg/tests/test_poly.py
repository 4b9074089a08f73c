import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turan_forge.poly import Polynomial, dumps_polys, evaluate, loads_polys, multiply, support


def test_evaluate_examples():
    x1, x2, y1, y2 = Polynomial.variables(4)
    f = x1 * y1 + x2 * y2 - 1
    assert evaluate(f, (1, 0, 1, 2), 5) == 0
    g = Polynomial({(1,): 1, (-1,): 1})
    assert evaluate(g, (2,), 5) == 0
    with pytest.raises(ZeroDivisionError, match="non-unit"):
        evaluate(g, (0,), 5)


def test_multiply_examples():
    w1, w2 = Polynomial.variables(2, 5)
    assert multiply(w1 - w2, w1 + w2) == w1**2 - w2**2
    x = Polynomial({(1,): 1, (-1,): 1})
    assert multiply(x, x) == Polynomial({(2,): 1, (0,): 2, (-2,): 1})
    assert multiply(x, Polynomial.zero(1)) == Polynomial.zero(1)
    with pytest.raises(ValueError, match="mismatch"):
        multiply(x, w1.lift())


def test_support_examples():
    w1, w2 = Polynomial.variables(2)
    assert support(w1**3 * w2 - w1 * w2**3) == {(3, 1), (1, 3)}
    assert support(Polynomial.zero(2)) == frozenset()
    x = Polynomial({(1,): 1, (-1,): 1})
    assert support(x * x) == {(2,), (0,), (-2,)}


def test_modulus_drops_zero_terms():
    f = Polynomial({(1,): 5, (2,): 6}, modulus=5)
    assert f.support() == {(2,)} and f.coeff((2,)) == 1
    assert not Polynomial({(1,): 3, (0,): 0}, modulus=3)


terms_st = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-50, 50), max_size=8)


@settings(max_examples=1000, deadline=None)
@given(terms_st, terms_st, st.tuples(st.integers(1, 12), st.integers(1, 12)), st.sampled_from([13, 17, 101]))
def test_evaluation_is_a_ring_homomorphism(ft, gt, point, p):
    f, g = Polynomial(ft, 2), Polynomial(gt, 2)
    assert evaluate(multiply(f, g), point, p) == evaluate(f, point, p) * evaluate(g, point, p) % p
    assert evaluate(f + g, point, p) == (evaluate(f, point, p) + evaluate(g, point, p)) % p


@settings(max_examples=300, deadline=None)
@given(terms_st, terms_st)
def test_product_support_in_minkowski_sum(ft, gt):
    f, g = Polynomial(ft, 2), Polynomial(gt, 2)
    mink = {(a[0] + b[0], a[1] + b[1]) for a in f.support() for b in g.support()}
    assert support(f * g) <= mink


@settings(max_examples=200, deadline=None)
@given(terms_st)
def test_evaluate_many_matches_scalar(ft):
    p = 11
    f = Polynomial(ft, 2)
    pts = np.array(list(itertools.product(range(p), repeat=2)))
    vals = f.evaluate_many(pts, p, on_nonunit="ignore")
    for pt, v in zip(pts.tolist(), vals.tolist()):
        try:
            assert evaluate(f, pt, p) == v
        except ZeroDivisionError:
            assert v == -1


def test_evaluate_many_raises_on_nonunit():
    f = Polynomial({(-1,): 1})
    with pytest.raises(ZeroDivisionError):
        f.evaluate_many(np.array([[0], [1]]), 7)


def test_integer_evaluation_is_exact():
    x, y = Polynomial.variables(2)
    f = (x + y) ** 10
    assert f.evaluate((10**6, 1)) == (10**6 + 1) ** 10
    assert f.coeff((5, 5)) == 252


def test_substitute_and_embed():
    x, y = Polynomial.variables(2, 7)
    f = x * x + 3 * y
    g = f.substitute([x + y, x - y])
    assert g == (x + y) ** 2 + 3 * (x - y)
    h = f.embed(4, 2)
    assert h.support() == {(0, 0, 2, 0), (0, 0, 0, 1)}


def test_text_roundtrip_and_order():
    x, y = Polynomial.variables(2)
    f = 3 * x**2 * y - 7 * y + 2 + x
    text = f.to_text()
    assert text.splitlines()[0] == "3 2 1"  # highest total degree first
    assert Polynomial.from_text(text) == f
    polys = [f, x - y, Polynomial({(-1, 2): 4}, 2)]
    assert loads_polys(dumps_polys(polys), 2) == polys
