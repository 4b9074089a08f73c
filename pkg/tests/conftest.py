import numpy as np
import pytest

from turan_forge import kernels
from turan_forge.graph import BipartiteGraph

try:
    from turan_forge import _kernels  # noqa: F401
    HAVE_CYTHON = True
except ImportError:
    HAVE_CYTHON = False

BACKENDS = ["python"] + (["cython"] if HAVE_CYTHON else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    impl = kernels.backend(request.param)
    monkeypatch.setattr(kernels, "kst_scan", impl.kst_scan)
    monkeypatch.setattr(kernels, "max_codegree_exhaustive", impl.max_codegree_exhaustive)
    monkeypatch.setattr(kernels, "subset_codegrees", impl.subset_codegrees)
    monkeypatch.setattr(kernels, "BACKEND", request.param)
    return request.param


def random_graph(rng, left, right, density=0.5) -> BipartiteGraph:
    return BipartiteGraph.from_matrix(rng.random((left, right)) < density)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}: {detail}")
