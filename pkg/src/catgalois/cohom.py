"""Second cohomology with cyclic coefficients and the Schur multiplier of a
finite group, computed from normalised 2-cocycles (trivial action).

Linear algebra is done over the local rings ``Z/p^k`` by elimination with a
least-valuation pivot; composite moduli are split by the Chinese remainder
theorem.
"""

import numpy as np

from . import fgab
from .errors import InternalMismatch, TooLarge
from .finalg import Kind

SCHUR_BOUND = 16


def factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation_table(p, k):
    q = p ** k
    v = np.zeros(q, dtype=np.int64)
    v[0] = k
    for x in range(1, q):
        y, e = x, 0
        while y % p == 0:
            y //= p
            e += 1
        v[x] = e
    return v


def local_snf(M, p, k, track=False):
    """Diagonalise ``M`` over ``Z/p^k``.

    Returns the pivot valuations (length ``min(rows, cols)``, ``k`` for a zero
    diagonal entry) and, when ``track`` is set, ``Qinv`` with
    ``P M Q = D`` for some invertible ``P``.  Pivots: least valuation, then
    row-major position.
    """
    q = p ** k
    val = _valuation_table(p, k)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(q):
        if x % p:
            inv[x] = pow(x, -1, q)
    M = np.asarray(M, dtype=np.int64)
    A = M % q
    rows, cols = A.shape
    Qinv = np.eye(cols, dtype=np.int64) if track else None
    vals = []
    for t in range(min(rows, cols)):
        if t >= A.shape[0]:
            break
        sub = A[t:, t:]
        units = sub % p != 0
        if units.any():
            best = 0
            i, j = divmod(int(np.argmax(units)), sub.shape[1])
        else:
            v = val[sub]
            best = int(v.min())
            if best >= k:
                break
            i, j = divmod(int(np.argmax(v == best)), sub.shape[1])
        i += t
        j += t
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            if track:
                Qinv[[t, j]] = Qinv[[j, t]]
        # scale the pivot row so the pivot is exactly p^best
        piv = p ** best
        u = int(A[t, t]) // piv
        A[t] = (A[t] * inv[u % q]) % q
        # clear the pivot column (rows) and the pivot row (columns), touching
        # only the rows and columns that need it
        r = t + 1 + np.flatnonzero(A[t + 1:, t])
        if len(r):
            coef = A[r, t] // piv
            A[r] = (A[r] - coef[:, None] * A[t][None, :]) % q
        c = t + 1 + np.flatnonzero(A[t, t + 1:])
        if len(c):
            ccoef = A[t, c] // piv
            A[t, c] = 0
            if track:
                # column op col_c -= a col_t  ->  inverse row op row_t += a row_c
                Qinv[t] = (Qinv[t] + ccoef @ Qinv[c]) % q
        vals.append(best)
        # rows reduced to zero never pivot again
        if len(r):
            dead = r[~A[r].any(axis=1)]
            if len(dead):
                A = np.delete(A, dead, axis=0)
    vals += [k] * (min(M.shape) - len(vals))
    return (vals, Qinv) if track else vals


def cocycle_matrix(B):
    """Rows: ``c(b,g) - c(ab,g) + c(a,bg) - c(a,b)`` over nonzero ``a, b, g``;
    columns: ``c(x, y)`` for nonzero ``x, y``."""
    n = B.n
    m = B.mul
    idx = -np.ones((n, n), dtype=np.int64)
    idx[1:, 1:] = np.arange((n - 1) ** 2).reshape(n - 1, n - 1)
    a, b, g = [x.ravel() for x in np.meshgrid(*(np.arange(1, n),) * 3, indexing="ij")]
    rows = np.arange(len(a))
    M = np.zeros((len(a), (n - 1) ** 2 + 1), dtype=np.int64)  # last column absorbs c(x,0)=c(0,y)=0
    for sign, (x, y) in ((1, (b, g)), (-1, (m[a, b], g)), (1, (a, m[b, g])), (-1, (a, b))):
        col = idx[x, y]
        col = np.where(col < 0, (n - 1) ** 2, col)
        np.add.at(M, (rows, col), sign)
    return np.unique(M[:, :-1], axis=0)


def coboundary_matrix(B):
    """Columns ``δφ`` for the basis functions ``φ = e_x``, ``x != 0``:
    ``δφ(a, b) = φ(a) + φ(b) - φ(ab)``."""
    n = B.n
    m = B.mul
    a, b = [x.ravel() for x in np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")]
    D = np.zeros(((n - 1) ** 2, n - 1), dtype=np.int64)
    r = np.arange(len(a))
    for sign, x in ((1, a), (1, b), (-1, m[a, b])):
        ok = x > 0
        np.add.at(D, (r[ok], x[ok] - 1), sign)
    return D


def _h2_local(B, p, k):
    """Exponents ``e`` with ``H^2(B; Z/p^k) ≅ ⊕ Z/p^e``."""
    n = B.n
    if n == 1:
        return []
    C = cocycle_matrix(B)
    vals, Qinv = local_snf(C, p, k, track=True)
    N = (n - 1) ** 2
    vals = vals + [k] * (N - len(vals))
    # kernel in y = Qinv x coordinates: y_i in p^(k - v_i) Z/p^k, i.e. Z/p^(v_i)
    q = p ** k
    Y = (Qinv @ coboundary_matrix(B)) % q
    gens = [i for i in range(N) if vals[i] > 0]
    rel = []
    for i, gi in enumerate(gens):
        rel.append([p ** vals[gi] if j == i else 0 for j in range(len(gens))])
    for col in Y.T:
        z = []
        for gi in gens:
            s = p ** (k - vals[gi])
            if col[gi] % s:
                raise InternalMismatch("coboundary outside the cocycle module")
            z.append(int(col[gi] // s))
        rel.append(z)
    if not gens:
        return []
    w = local_snf(np.array(rel, dtype=np.int64), p, k)
    w = w + [k] * (len(gens) - len(w))
    return sorted(e for e in w if e > 0)


def h2_mod(B, m):
    """``H^2(B; Z/m)`` for a finite group table ``B`` and ``m >= 2``."""
    if B.kind is not Kind.GROUP:
        raise ValueError("h2_mod expects a group")
    orders = []
    for p, k in sorted(factorize(m).items()):
        orders += [p ** e for e in _h2_local(B, p, k)]
    return fgab.from_cyclic(orders)


def abelian_invariants(A):
    """Invariant factors of a finite abelian group table."""
    n = A.n
    m = A.mul
    orders = []
    for p, v in sorted(factorize(n).items()):
        # counts[j] = |{x : p^j x = 0}|
        counts = [1]
        power = np.arange(n)
        while counts[-1] < p ** v:
            y = np.zeros(n, dtype=np.int64)
            for _ in range(p):
                y = m[y, power]
            power = y
            counts.append(int((power == 0).sum()))
        # ranks[j] = number of cyclic factors of order >= p^(j+1)
        ranks = [round(np.log(counts[j] / counts[j - 1]) / np.log(p))
                 for j in range(1, len(counts))] + [0]
        for j in range(len(ranks) - 1):
            orders += [p ** (j + 1)] * (ranks[j] - ranks[j + 1])
    return fgab.from_cyclic(orders)


def _p_exponents(G, p):
    out = []
    for d in G.factors:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            out.append(e)
    return sorted(out)


def _truncate(exps, k):
    return sorted(min(e, k) for e in exps)


def _peel(total, part):
    rest = list(total)
    for e in part:
        if e not in rest:
            return None
        rest.remove(e)
    return rest


def group_exponent(B):
    n = B.n
    m = B.mul
    order = np.ones(n, dtype=np.int64)
    cur = np.arange(n)
    for i in range(1, n + 1):
        hit = (cur == 0) & (order == 1)
        order[hit & (np.arange(n) != 0)] = i
        cur = m[cur, np.arange(n)]
    e = 1
    for o in order.tolist():
        e = e * o // np.gcd(e, o)
    return int(e)


def schur_multiplier(B, bound=SCHUR_BOUND):
    """``H_2(B; Z)`` from ``H^2(B; Z/p^k)`` by removing ``Ext(B^ab, Z/p^k)``.

    Universal coefficients give ``H^2(B; Z/p^k) ≅ Hom(H_2 B, Z/p^k) ⊕
    Ext(B^ab, Z/p^k)``; each summand is the ``p``-part truncated at ``p^k``.
    ``|B|`` kills ``H_2 B``, so ``k = v_p(|B|)`` loses nothing; every smaller
    ``k`` is computed too and must be consistent.
    """
    if B.kind is not Kind.GROUP:
        raise ValueError("schur_multiplier expects a group")
    if B.n > bound:
        raise TooLarge(f"group of order {B.n} exceeds the bound {bound}")
    if B.n == 1:
        return fgab.FgAb(0)
    from .reflect import AB

    Bab = abelian_invariants(AB.reflect(B)[0])
    orders = []
    for p, K in sorted(factorize(B.n).items()):
        ab_p = _p_exponents(Bab, p)
        mult = _peel(_h2_local(B, p, K), _truncate(ab_p, K))
        if mult is None:
            raise InternalMismatch(f"H^2(B; Z/{p}^{K}) does not contain the Ext term")
        for k in range(1, K):
            expect = sorted(_truncate(mult, k) + _truncate(ab_p, k))
            if _h2_local(B, p, k) != expect:
                raise InternalMismatch(f"inconsistent cohomology data at {p}^{k}")
        orders += [p ** e for e in mult]
    return fgab.from_cyclic(orders)


def fgab_to_group(G):
    """Group table of a finite ``FgAb``."""
    from .corpus import cyclic_group, direct_product

    if G.rank:
        raise ValueError("only finite groups have tables")
    A = cyclic_group(1)
    for d in G.factors:
        A = direct_product(A, cyclic_group(d))
    return A
