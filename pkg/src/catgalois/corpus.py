"""Named small algebras and the exhaustive test corpora.

Groups of order <= 16 come from stored presentations (metacyclic parameters,
direct and semidirect products, permutation and matrix generators); loops of
order <= 6 and rings of order <= 8 come from exhaustive table search.  Each
family is deduplicated by canonical form and cached as JSON under
``$GALOIS_CORPUS_DIR`` (default ``~/.cache/catgalois``).
"""

import itertools
import json
import os
from functools import lru_cache
from math import gcd
from pathlib import Path

import numpy as np

from . import kernels
from .finalg import FiniteAlgebra, Kind, canonical_form, make_algebra, product

# Isomorphism class counts by order, with the method that produced them.
KNOWN_COUNTS = {
    # stored presentations, checked pairwise non-isomorphic; orders <= 8
    # also re-derived by Latin-square backtracking with associativity pruning
    "group": [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14],
    # Latin-square backtracking, deduplicated by canonical form
    "loop": [1, 1, 1, 2, 6, 109],
    # structure constants on each additive group, associativity backtracking
    "ring": [1, 2, 2, 11, 2, 4, 2, 52],
}
MAX_ORDER = {"group": 16, "loop": 6, "ring": 8}


# ---------------------------------------------------------------------------
# builders


def _algebra(kind, tables, name):
    return make_algebra(kind, tables, name=name)[0]


def cyclic_group(n, name=None):
    ar = np.arange(n)
    return _algebra("group", (ar[:, None] + ar[None, :]) % n, name or f"Z{n}")


def metacyclic_group(m, k, r, t, name=None):
    """``<a, b | a^m, b^k = a^t, b a b^-1 = a^r>``; element ``a^i b^j`` is ``i + m j``."""
    if pow(r, k, m) != 1 % m or (r * t - t) % m:
        raise ValueError("inconsistent metacyclic parameters")
    n = m * k
    tab = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % m, x // m
        for y in range(n):
            u, v = y % m, y // m
            e = i + u * pow(r, j, m)
            s = j + v
            if s >= k:
                e += t
                s -= k
            tab[x, y] = e % m + m * s
    return _algebra("group", tab, name)


def group_from_generators(gens, mul, identity, name=None):
    """Close hashable generators under ``mul``; the identity gets index 0."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(elems)
    tab = np.array([[index[mul(a, b)] for b in elems] for a in elems])
    return _algebra("group", tab, name)


def _perm_mul(p, q):
    # apply p then q
    return tuple(q[i] for i in p)


def permutation_group(gens, name=None):
    deg = len(gens[0])
    return group_from_generators([tuple(g) for g in gens], _perm_mul,
                                 tuple(range(deg)), name)


def _mat_mul(a, b):
    n = int(round(len(a) ** 0.5))
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n))
                 for i in range(n) for j in range(n))


def matrix_group(gens, name=None):
    """Group generated by square matrices with exact (integer or Gaussian) entries."""
    n = int(round(len(gens[0]) ** 0.5))
    ident = tuple(complex(int(i == j)) for i in range(n) for j in range(n))
    gens = [tuple(complex(v) for v in g) for g in gens]
    return group_from_generators(gens, _mat_mul, ident, name)


def semidirect_group(N, H, action, name=None):
    """``N ⋊ H`` where ``action[h]`` is an automorphism of ``N`` as an index array;
    element ``(x, h)`` has index ``x + |N| h``."""
    nn, nh = N.n, H.n
    mN, mH = N.mul, H.mul
    act = np.asarray(action)
    tab = np.empty((nn * nh, nn * nh), dtype=np.int64)
    for a in range(nn * nh):
        x, h = a % nn, a // nn
        for b in range(nn * nh):
            y, k = b % nn, b // nn
            tab[a, b] = mN[x, act[h, y]] + nn * mH[h, k]
    return _algebra("group", tab, name)


def direct_product(A, B, name=None):
    P = product(A, B)[0]
    return FiniteAlgebra(P.kind, P.tables, name=name or f"{A.name}x{B.name}")


def symmetric_group_3():
    return permutation_group([(1, 0, 2), (1, 2, 0)], "S3")


def dihedral_group(m):
    return metacyclic_group(m, 2, m - 1, 0, f"D{m}")


def quaternion_group():
    return metacyclic_group(4, 2, 3, 2, "Q8")


def klein_four():
    return direct_product(cyclic_group(2), cyclic_group(2), "Z2^2")


def alternating_group_4():
    return permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)], "A4")


def pauli_group():
    i = 1j
    return matrix_group([(0, 1, 1, 0), (1, 0, 0, -1), (i, 0, 0, i)], "Pauli")


def _g16_3():
    # (Z4 x Z2) ⋊ Z2 with c a c^-1 = a b, b central
    N = metacyclic_group(4, 2, 1, 0, "Z4xZ2")
    flip = np.empty(8, dtype=np.int64)
    for x in range(8):
        i, j = x % 4, x // 4
        flip[x] = i + 4 * ((j + i) % 2)
    return semidirect_group(N, cyclic_group(2), [np.arange(8), flip], "G16_3")


def zmod_ring(n, name=None):
    ar = np.arange(n)
    add = (ar[:, None] + ar[None, :]) % n
    mul = (ar[:, None] * ar[None, :]) % n
    return _algebra("ring", [add, mul], name or f"Z/{n}")


def zero_ring(n, name=None):
    """Z/n with zero multiplication."""
    ar = np.arange(n)
    add = (ar[:, None] + ar[None, :]) % n
    return _algebra("ring", [add, np.zeros_like(add)], name or f"0Z/{n}")


def ring_product(A, B, name=None):
    P = product(A, B)[0]
    return FiniteAlgebra(P.kind, P.tables, name=name or f"{A.name}x{B.name}")


def upper_triangular_f2():
    """2x2 upper triangular matrices over F2; element (a, b, d) is a + 2b + 4d."""
    def dec(x):
        return x & 1, (x >> 1) & 1, (x >> 2) & 1

    def enc(a, b, d):
        return (a % 2) + 2 * (b % 2) + 4 * (d % 2)

    add = np.empty((8, 8), dtype=np.int64)
    mul = np.empty((8, 8), dtype=np.int64)
    for x in range(8):
        a, b, d = dec(x)
        for y in range(8):
            e, f, h = dec(y)
            add[x, y] = enc(a + e, b + f, d + h)
            mul[x, y] = enc(a * e, a * f + b * h, d * h)
    return _algebra("ring", [add, mul], "UT2(F2)")


def least_nonassociative_loop(n=5):
    """The non-associative loop of order ``n`` with lexicographically least table."""
    for t in kernels.enumerate_loops(n, False):
        if kernels.check_associative(t) is not None:
            return _algebra("loop", t, f"L{n}min")
    raise ValueError(f"every loop of order {n} is a group")


# ---------------------------------------------------------------------------
# corpora


def _group_recipes():
    Z = cyclic_group
    P = direct_product
    Z2 = Z(2)
    mc = metacyclic_group
    return [
        lambda: Z(1, "1"), lambda: Z(2), lambda: Z(3), lambda: Z(4), klein_four,
        lambda: Z(5), lambda: Z(6), symmetric_group_3, lambda: Z(7),
        lambda: Z(8), lambda: mc(4, 2, 1, 0, "Z4xZ2"),
        lambda: P(klein_four(), Z2, "Z2^3"), lambda: dihedral_group(4),
        quaternion_group, lambda: Z(9), lambda: mc(3, 3, 1, 0, "Z3^2"),
        lambda: Z(10), lambda: dihedral_group(5), lambda: Z(11), lambda: Z(12),
        lambda: mc(6, 2, 1, 0, "Z6xZ2"), alternating_group_4,
        lambda: dihedral_group(6), lambda: mc(3, 4, 2, 0, "Dic3"), lambda: Z(13),
        lambda: Z(14), lambda: dihedral_group(7), lambda: Z(15), lambda: Z(16),
        lambda: mc(4, 4, 1, 0, "Z4^2"), _g16_3, lambda: mc(4, 4, 3, 0, "Z4:Z4"),
        lambda: mc(8, 2, 1, 0, "Z8xZ2"), lambda: mc(8, 2, 5, 0, "M16"),
        lambda: dihedral_group(8), lambda: mc(8, 2, 3, 0, "QD16"),
        lambda: mc(8, 2, 7, 4, "Q16"),
        lambda: P(mc(4, 2, 1, 0, "Z4xZ2"), Z2, "Z4xZ2^2"),
        lambda: P(dihedral_group(4), Z2, "D4xZ2"),
        lambda: P(quaternion_group(), Z2, "Q8xZ2"),
        lambda: P(P(klein_four(), Z2, "Z2^3"), Z2, "Z2^4"),
        pauli_group,
    ]


def generate_groups(max_order=16):
    out = [r() for r in _group_recipes()]
    return sorted((g for g in out if g.n <= max_order), key=lambda g: g.n)


def generate_loops(max_order=6):
    out = []
    for n in range(1, max_order + 1):
        seen = {}
        for t in kernels.enumerate_loops(n, False):
            key = kernels.canonical_form(t[None]).tobytes()
            if key not in seen:
                seen[key] = t
        for i, key in enumerate(sorted(seen)):
            t = np.frombuffer(key, dtype=np.int32).reshape(n, n)
            out.append(_algebra("loop", t, f"L{n}.{i}"))
    return out


def abelian_invariants(n):
    """Every invariant-factor list ``d1 | d2 | ...`` with product ``n``."""
    out = []

    def rec(rest, prev, acc):
        if rest == 1:
            out.append(tuple(reversed(acc)))
            return
        # build from the largest factor down: each new factor divides the previous
        for d in range(2, rest + 1):
            if rest % d == 0 and (prev is None or prev % d == 0):
                rec(rest // d, d, acc + [d])

    rec(n, None, [])
    return sorted(set(out))


def ring_structures(d):
    """All associative bilinear products on ``⊕ Z/d_i`` as (add, mul) tables."""
    k = len(d)
    elems = list(itertools.product(*[range(di) for di in d]))
    index = {v: i for i, v in enumerate(elems)}

    def killed(g):
        return [v for v in elems if all((g * v[i]) % d[i] == 0 for i in range(k))]

    order = [(i, j) for i in range(k) for j in range(k)]
    opts = [killed(gcd(d[i], d[j])) for i, j in order]
    basis = [tuple(int(a == i) for a in range(k)) for i in range(k)]
    triples = list(itertools.product(range(k), repeat=3))
    c = {}

    def prod(x, y):
        out = [0] * k
        for i in range(k):
            if x[i]:
                for j in range(k):
                    if y[j]:
                        v = c.get((i, j))
                        if v is None:
                            return None
                        for t in range(k):
                            out[t] += x[i] * y[j] * v[t]
        return tuple(out[t] % d[t] for t in range(k))

    def consistent():
        # (e_i e_j) e_l = e_i (e_j e_l) wherever both sides are determined
        for i, j, l in triples:
            a, b = c.get((i, j)), c.get((j, l))
            if a is None or b is None:
                continue
            lhs, rhs = prod(a, basis[l]), prod(basis[i], b)
            if lhs is not None and rhs is not None and lhs != rhs:
                return False
        return True

    found = []

    def rec(p):
        if p == len(order):
            found.append(dict(c))
            return
        for v in opts[p]:
            c[order[p]] = v
            if consistent():
                rec(p + 1)
            del c[order[p]]

    rec(0)
    n = len(elems)
    add = np.array([[index[tuple((a[t] + b[t]) % d[t] for t in range(k))]
                     for b in elems] for a in elems])
    for sol in found:
        c.clear()
        c.update(sol)
        mul = np.array([[index[prod(a, b)] for b in elems] for a in elems])
        yield add, mul


def generate_rings(max_order=8):
    out = []
    for n in range(1, max_order + 1):
        seen = {}
        for d in abelian_invariants(n) if n > 1 else [()]:
            if not d:
                seen[b""] = np.zeros((2, 1, 1), dtype=np.int32)
                continue
            for add, mul in ring_structures(d):
                tabs = np.stack([add, mul]).astype(np.int32)
                key = kernels.canonical_form(tabs).tobytes()
                if key not in seen:
                    seen[key] = tabs
        for i, key in enumerate(sorted(seen)):
            out.append(_algebra("ring", seen[key], f"R{n}.{i}"))
    return out


_GENERATORS = {"group": generate_groups, "loop": generate_loops, "ring": generate_rings}


def corpus_dir():
    env = os.environ.get("GALOIS_CORPUS_DIR")
    return Path(env) if env else Path.home() / ".cache" / "catgalois"


def write_family(kind, algebras, directory=None):
    directory = Path(directory) if directory else corpus_dir()
    directory.mkdir(parents=True, exist_ok=True)
    payload = [{"name": A.name, "tables": A.primary_tables.tolist()} for A in algebras]
    path = directory / f"{kind}s.json"
    path.write_text(json.dumps({"kind": kind, "algebras": payload}, sort_keys=True))
    return path


@lru_cache(maxsize=None)
def _family(kind):
    path = corpus_dir() / f"{kind}s.json"
    if path.exists():
        data = json.loads(path.read_text())
        algs = [_algebra(kind, np.array(a["tables"]), a["name"])
                for a in data["algebras"]]
        if len(algs) == sum(KNOWN_COUNTS[kind]):
            return tuple(algs)
    algs = _GENERATORS[kind](MAX_ORDER[kind])
    try:
        write_family(kind, algs)
    except OSError:
        pass  # read-only cache location: keep the in-memory copy
    return tuple(algs)


def corpus_gen(seed=0, max_size=None, directory=None):
    """Write the three families to ``directory`` and return their paths.

    Generation is exhaustive, so ``seed`` does not change the output; it is
    accepted for interface symmetry with the random suites.
    """
    out = {}
    for kind in ("group", "loop", "ring"):
        algs = family(kind, max_size)
        out[kind] = write_family(kind, algs, directory)
    return out


def family(kind, max_order=None):
    """The cached corpus of ``kind`` ('group', 'loop', 'ring') up to ``max_order``."""
    algs = _family(Kind(kind).value)
    if max_order is None:
        return list(algs)
    return [A for A in algs if A.n <= max_order]


def groups(max_order=16):
    return family("group", max_order)


def loops(max_order=6):
    return family("loop", max_order)


def rings(max_order=8):
    return family("ring", max_order)


def counts_by_order(algebras, max_order):
    out = [0] * max_order
    for A in algebras:
        out[A.n - 1] += 1
    return out


def canonical_key(A):
    return canonical_form(A, max_size=64).tobytes()
