"""Finitely generated abelian groups over exact Python integers.

A group ``FgAb(rank, factors)`` comes with its standard basis: one generator
of order ``d_i`` per invariant factor, followed by ``rank`` free generators.
Elements are integer column vectors in that basis, subgroups are lattices
``L`` with ``R <= L <= Z^n`` (``R`` the relation lattice) stored in Hermite
normal form, and maps are integer matrices of shape ``cod.ngens x dom.ngens``.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Tuple

from .errors import BasisMismatch, ParseError


def as_matrix(M):
    """Copy to a list of lists of Python ints."""
    if hasattr(M, "tolist"):
        M = M.tolist()
    return [[int(v) for v in row] for row in M]


def identity_matrix(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A, cols=None):
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*A)]


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M):
    """``(D, U, V)`` with ``U M V = D`` diagonal, ``d1 | d2 | ...``, U, V unimodular.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block, first in row-major order.
    """
    D = as_matrix(M)
    m = len(D)
    n = len(D[0]) if m else 0
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q col_src
        if q:
            for row in D:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(D[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                continue
            # divisibility: fold an offending row into the pivot row
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
    return D, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(A, ncols=None):
    """Basis (rows) of ``{x in Z^n : A x = 0}``."""
    A = as_matrix(A)
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity_matrix(n)
    D, _, V = smith_normal_form(A)
    d = diagonal(D)
    rank = sum(1 for v in d if v)
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def hnf(rows, ncols):
    """Row Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped).

    Pivots are positive and entries above a pivot are reduced into ``[0, pivot)``.
    """
    M = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < ncols:
        nz = [r for r in M if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in M if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [p] + rest
        p = nz[0]
        if p[col] < 0:
            p = [-v for v in p]
        out.append(p)
        M = zero
        col += 1
    for i, p in enumerate(out):
        c = next(j for j, v in enumerate(p) if v)
        for k in range(i):
            q = out[k][c] // p[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], p)]
    return out


def _solve_in_lattice(basis, v):
    """Integer coefficients expressing ``v`` in an HNF basis, or None."""
    v = list(v)
    coeffs = []
    for b in basis:
        c = next(j for j, x in enumerate(b) if x)
        if v[c] % b[c]:
            return None
        q = v[c] // b[c]
        coeffs.append(q)
        if q:
            v = [a - q * x for a, x in zip(v, b)]
    return coeffs if not any(v) else None


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FgAb:
    """Isomorphism type ``Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`` with ``d1 | ... | dk``."""

    rank: int
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", f)
        if self.rank < 0 or any(d < 2 for d in f):
            raise ValueError("factors must be >= 2 and rank >= 0")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"factors {f} do not form a divisibility chain")

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.factors]
        return " x ".join(parts) if parts else "0"

    @property
    def ngens(self):
        return len(self.factors) + self.rank

    @property
    def orders(self):
        """Order of each standard generator, 0 for free ones."""
        return list(self.factors) + [0] * self.rank

    @property
    def order(self):
        """``|G|`` or None when infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.factors

    @property
    def exponent(self):
        return self.factors[-1] if self.factors else 1

    def relation_rows(self):
        n = self.ngens
        return [[d if j == i else 0 for j in range(n)] for i, d in enumerate(self.factors)]

    def reduce(self, v):
        return [x % d if d else x for x, d in zip(v, self.orders)]

    @cached_property
    def relations(self):
        return hnf(self.relation_rows(), self.ngens)


def parse_fgab(text):
    """``"2,2"`` (factors), ``"Z^2,4"`` or ``"Z x Z/4"`` style descriptions."""
    text = text.strip()
    if text in ("", "0"):
        return FgAb(0)
    rank = 0
    orders = []
    for tok in re.split(r",|\s+x\s+|\s*⊕\s*", text):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "Z":
            rank += 1
        elif tok.startswith("Z^"):
            rank += int(tok[2:])
        elif tok.startswith("Z/"):
            orders.append(int(tok[2:]))
        else:
            try:
                orders.append(int(tok))
            except ValueError:
                raise ParseError(f"cannot parse group component {tok!r}") from None
    if any(d < 0 for d in orders):
        raise ParseError("negative order")
    return from_cyclic(orders, rank)


def from_presentation(relations, ngens=None):
    """Cokernel of the relation matrix (one relation per row) on ``ngens`` generators."""
    R = as_matrix(relations)
    if ngens is None:
        if not R:
            raise ValueError("ngens is required when there are no relations")
        ngens = len(R[0])
    if any(len(r) != ngens for r in R):
        raise BasisMismatch("relation rows must have one entry per generator")
    if not R:
        return FgAb(ngens)
    D, _, _ = smith_normal_form(R)
    d = [abs(x) for x in diagonal(D)]
    nonzero = [x for x in d if x]
    return FgAb(ngens - len(nonzero), tuple(x for x in nonzero if x > 1))


def from_cyclic(orders, rank=0):
    """``Z^rank ⊕ (⊕ Z/orders[i])`` in canonical form (0 means a free factor)."""
    rank += sum(1 for d in orders if d == 0)
    orders = [abs(d) for d in orders if d not in (0, 1, -1)]
    k = len(orders)
    if k == 0:
        return FgAb(rank)
    rows = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    G = from_presentation(rows, k)
    return FgAb(rank, G.factors)


def direct_sum(G, H):
    return from_cyclic(list(G.factors) + list(H.factors), G.rank + H.rank)


def torsion(G):
    return FgAb(0, G.factors)


def tf_quotient(G):
    return FgAb(G.rank)


def _cyclic_parts(G):
    return list(G.factors) + [0] * G.rank


def _tensor_cyclic(a, b):
    # Z/a ⊗ Z/b = Z/gcd(a, b), with Z (order 0) acting as the identity
    return gcd(a, b)


def tensor(G, H):
    orders = [_tensor_cyclic(a, b) for a in _cyclic_parts(G) for b in _cyclic_parts(H)]
    return from_cyclic(orders)


def exterior_square(G):
    parts = _cyclic_parts(G)
    orders = [_tensor_cyclic(parts[i], parts[j])
              for i in range(len(parts)) for j in range(i + 1, len(parts))]
    return from_cyclic(orders)


# ---------------------------------------------------------------------------
# maps and subgroups


@dataclass(frozen=True, eq=False)
class FgAbMap:
    dom: FgAb
    cod: FgAb
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(int(v) for v in row) for row in as_matrix(self.matrix))
        object.__setattr__(self, "matrix", M)
        if len(M) != self.cod.ngens or any(len(r) != self.dom.ngens for r in M):
            raise BasisMismatch(
                f"matrix must be {self.cod.ngens} x {self.dom.ngens}")
        for j, d in enumerate(self.dom.orders):
            if d == 0:
                continue
            col = [d * M[i][j] for i in range(self.cod.ngens)]
            if _solve_in_lattice(self.cod.relations, col) is None:
                raise BasisMismatch(
                    f"generator {j} of order {d} is not sent to an element of order dividing {d}")

    def __call__(self, v):
        return self.cod.reduce([sum(a * b for a, b in zip(row, v)) for row in self.matrix])

    def then(self, g):
        """``g ∘ self``."""
        return FgAbMap(self.dom, g.cod, matmul([list(r) for r in g.matrix],
                                               [list(r) for r in self.matrix]))


def identity_map(G):
    return FgAbMap(G, G, identity_matrix(G.ngens))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``ambient`` as a lattice containing its relations (HNF rows)."""

    ambient: FgAb
    basis: tuple

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __le__(self, other):
        return all(_solve_in_lattice(other.basis, b) is not None for b in self.basis)

    def __repr__(self):
        return f"Subgroup({self.ambient}, {[list(b) for b in self.basis]})"

    def contains(self, v):
        return _solve_in_lattice(self.basis, list(v)) is not None

    @property
    def iso_type(self):
        return subgroup_type(self)


def subgroup(G, generators):
    """Subgroup generated by element vectors in ``G``'s basis."""
    gens = as_matrix(generators)
    if any(len(g) != G.ngens for g in gens):
        raise BasisMismatch(f"generators must have {G.ngens} coordinates")
    return Subgroup(G, tuple(tuple(r) for r in hnf(gens + G.relation_rows(), G.ngens)))


def zero_subgroup(G):
    return subgroup(G, [])


def whole(G):
    return subgroup(G, identity_matrix(G.ngens))


def subgroup_type(S):
    """Isomorphism type of ``S = L / R``."""
    basis = [list(b) for b in S.basis]
    rel = [_solve_in_lattice(basis, r) for r in S.ambient.relation_rows()]
    if any(c is None for c in rel):
        raise BasisMismatch("subgroup lattice does not contain the relations")
    return from_presentation(rel, len(basis)) if rel else FgAb(len(basis))


def quotient_map(G, S):
    """Canonical surjection ``G -> G/S`` onto the standard basis of ``G/S``."""
    n = G.ngens
    basis = [list(b) for b in S.basis]
    if not basis:
        return FgAbMap(G, G, identity_matrix(n))
    D, _, V = smith_normal_form(basis)
    d = diagonal(D)
    k = len(basis)
    keep = [i for i in range(k) if d[i] > 1] + list(range(k, n))
    Q = FgAb(n - k, tuple(d[i] for i in range(k) if d[i] > 1))
    # x in L  iff  x^T V lies in diag(d) Z^k ⊕ 0, so the coordinates are V^T x
    mat = [[V[r][i] for r in range(n)] for i in keep]
    mat = [[v % Q.orders[i] if Q.orders[i] else v for v in row]
           for i, row in enumerate(mat)]
    return FgAbMap(G, Q, mat)


def quotient(G, S):
    return quotient_map(G, S).cod


def preimage(f, S):
    """``f^{-1}(S)`` for a subgroup ``S`` of ``f.cod``."""
    n = f.dom.ngens
    M = [list(r) for r in f.matrix]
    B = [list(b) for b in S.basis]
    m = f.cod.ngens
    # x in preimage  iff  M x = B^T y for some integer y
    big = [M[i] + [-B[j][i] for j in range(len(B))] for i in range(m)]
    if m == 0:
        return whole(f.dom)
    ker = integer_kernel(big, n + len(B))
    return subgroup(f.dom, [row[:n] for row in ker])


def image(f, S):
    return subgroup(f.cod, [f([*b]) for b in S.basis])


def kernel_subgroup(f):
    return preimage(f, zero_subgroup(f.cod))


def kernel_image(f):
    """Isomorphism types of ``ker f`` and ``im f``."""
    return subgroup_type(kernel_subgroup(f)), subgroup_type(image(f, whole(f.dom)))


def meet(S, T):
    G = S.ambient
    n = G.ngens
    A, B = [list(b) for b in S.basis], [list(b) for b in T.basis]
    if not A or not B:
        return zero_subgroup(G)
    # sum_i a_i A_i = sum_j b_j B_j
    big = [[A[i][c] for i in range(len(A))] + [-B[j][c] for j in range(len(B))]
           for c in range(n)]
    ker = integer_kernel(big, len(A) + len(B))
    vecs = [[sum(k[i] * A[i][c] for i in range(len(A))) for c in range(n)] for k in ker]
    return subgroup(G, vecs)


def join(S, T):
    return subgroup(S.ambient, [list(b) for b in S.basis] + [list(b) for b in T.basis])


def torsion_subgroup(G):
    return subgroup(G, [[int(i == j) for j in range(G.ngens)]
                        for i in range(len(G.factors))])


def parse_matrix(text):
    """Matrix file: ``rows cols`` then row-major integers; ``#`` comments."""
    toks = []
    for line in text.splitlines():
        toks += line.split("#", 1)[0].split()
    try:
        vals = [int(t) for t in toks]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if len(vals) < 2:
        raise ParseError("missing 'rows cols' header")
    r, c = vals[:2]
    if r < 0 or c < 0:
        raise ParseError("negative dimensions")
    body = vals[2:]
    if len(body) != r * c:
        raise ParseError(f"expected {r * c} entries, got {len(body)}")
    return [body[i * c:(i + 1) * c] for i in range(r)], c
