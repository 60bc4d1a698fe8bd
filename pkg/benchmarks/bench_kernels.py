"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from catgalois import _kernels_py as py, corpus, kernels


def workloads():
    groups = corpus.family("group", 16)
    loops = corpus.family("loop", 6)
    rings = corpus.family("ring", 8)
    small = [A for A in groups + loops + rings if A.n <= 8]
    rng = np.random.default_rng(0)
    subsets = []
    for A in groups + loops:
        m = (rng.random(A.n) < 0.2).astype(np.uint8)
        m[0] = 1
        subsets.append((m, A.closure_tables, A.normality_maps))

    def hom_search(be):
        for A in groups[:12]:
            for B in groups[:12]:
                f = np.full(A.n, -1, dtype=np.int32)
                f[0] = 0
                allowed = np.ones((A.n, B.n), dtype=np.uint8)
                for w in range(B.n):
                    g = f.copy()
                    g[1 % A.n] = w
                    be.extend_hom(A.tables, B.tables, g, allowed, False,
                                  np.zeros(B.n, dtype=np.uint8))

    return {
        "check_associative": lambda be: [be.check_associative(A.mul) for A in groups + loops],
        "saturate": lambda be: [be.saturate(*s) for s in subsets],
        "congruence": lambda be: [be.congruence(A.tables, np.array([[0, i]], dtype=np.int32))
                                  for A in groups + rings for i in range(A.n)],
        "extend_hom": hom_search,
        "canonical_form": lambda be: [be.canonical_form(A.primary_tables) for A in small],
        "enumerate_loops(5)": lambda be: be.enumerate_loops(5, False),
    }


def bench(fn, be, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(be)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    print(f"{'kernel':<22}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in workloads().items():
        tp = bench(fn, py, args.repeat)
        tc = bench(fn, kernels.compiled_backend, args.repeat)
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
