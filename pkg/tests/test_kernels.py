import numpy as np
import pytest

from conftest import HAVE_CYTHON, random_graph
from turan_forge import kernels

pytestmark = pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernels not built")


@pytest.mark.parametrize("seed", range(20))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    L, R = rng.integers(2, 90, size=2)
    g = random_graph(rng, int(L), int(R), rng.uniform(0.05, 0.6))
    cy, py = kernels.backend("cython"), kernels.backend("python")
    for s in (1, 2, 3):
        if s > L:
            continue
        t = int(rng.integers(1, 6))
        for budget in (7, 10**6):
            a = cy.kst_scan(g.rows, s, t, budget)
            b = py.kst_scan(g.rows, s, t, budget)
            assert a[:3] == b[:3]
            assert (a[3] is None) == (b[3] is None)
            if a[3] is not None:
                assert np.array_equal(a[3], b[3])
        lo = int(rng.integers(0, L))
        assert cy.kst_scan(g.rows, s, t, 10**6, lo, lo + 1)[:3] == py.kst_scan(g.rows, s, t, 10**6, lo, lo + 1)[:3]
        assert cy.max_codegree_exhaustive(g.rows, s) == py.max_codegree_exhaustive(g.rows, s)
        subs = np.sort(np.array([rng.choice(L, size=s, replace=False) for _ in range(50)]), axis=1)
        assert np.array_equal(cy.subset_codegrees(g.rows, subs), py.subset_codegrees(g.rows, subs))


def test_backend_lookup():
    assert kernels.backend("python").__name__.endswith("_kernels_py")
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def test_worker_count(monkeypatch):
    monkeypatch.setenv("TURAN_FORGE_THREADS", "3")
    assert kernels.worker_count() == 3
    monkeypatch.setenv("TURAN_FORGE_THREADS", "zero")
    assert kernels.worker_count() == 1
    monkeypatch.delenv("TURAN_FORGE_THREADS")
    assert kernels.worker_count() == 1
