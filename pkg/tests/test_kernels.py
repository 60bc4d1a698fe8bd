"""The compiled kernels and the pure-Python fallback must agree exactly."""

import numpy as np
import pytest

from catgalois import _kernels_py as py, corpus, kernels

compiled = kernels.compiled_backend
needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")

ALGS = corpus.family("group", 12) + corpus.family("loop", 5) + corpus.family("ring", 8)


def test_backend_selected():
    assert kernels.BACKEND_NAME in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("A", ALGS, ids=lambda A: A.name)
def test_table_kernels_agree(A):
    t = A.tables
    assert py.check_associative(t[0]) == compiled.check_associative(t[0])
    assert np.array_equal(py.canonical_form(A.primary_tables),
                          compiled.canonical_form(A.primary_tables))
    rng = np.random.default_rng(A.n)
    for _ in range(3):
        member = (rng.random(A.n) < 0.3).astype(np.uint8)
        member[0] = 1
        assert np.array_equal(py.saturate(member, A.closure_tables, A.normality_maps),
                              compiled.saturate(member, A.closure_tables, A.normality_maps))
        seeds = rng.integers(0, A.n, size=(2, 2)).astype(np.int32)
        assert np.array_equal(py.congruence(t, seeds), compiled.congruence(t, seeds))


@needs_compiled
@pytest.mark.parametrize("A", ALGS[:20], ids=lambda A: A.name)
def test_extend_hom_agrees(A):
    for B in ALGS[:20]:
        if B.kind is not A.kind:
            continue
        allowed = np.ones((A.n, B.n), dtype=np.uint8)
        for g in range(1, A.n):
            for w in range(B.n):
                outs = []
                for be in (py, compiled):
                    f = np.full(A.n, -1, dtype=np.int32)
                    f[0] = 0
                    f[g] = w
                    used = np.zeros(B.n, dtype=np.uint8)
                    ok = be.extend_hom(A.tables, B.tables, f, allowed, False, used)
                    outs.append((bool(ok), f.tolist() if ok else None))
                assert outs[0] == outs[1]


@needs_compiled
@pytest.mark.parametrize("n,assoc", [(n, a) for n in range(1, 6) for a in (False, True)])
def test_enumerate_loops_agree(n, assoc):
    a = py.enumerate_loops(n, assoc)
    b = compiled.enumerate_loops(n, assoc)
    assert len(a) == len(b)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_fallback_importable_without_extension(monkeypatch):
    import importlib

    monkeypatch.setenv("CATGALOIS_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND_NAME == "python"
        assert mod.check_associative(np.array([[0, 1], [1, 0]])) is None
    finally:
        monkeypatch.delenv("CATGALOIS_PURE_PYTHON")
        importlib.reload(kernels)
