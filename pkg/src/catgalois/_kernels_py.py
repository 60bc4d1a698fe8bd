"""Pure-Python implementations of the table kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Inputs are numpy integer arrays; they are converted to nested lists once so
the inner loops run on plain Python ints.
"""

import numpy as np


def check_associative(t):
    """Return the first triple ``(a, b, c)`` with ``(ab)c != a(bc)``, else None."""
    t = np.asarray(t).tolist()
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tab = t[ab]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return (a, b, c)
    return None


def saturate(member, tables, maps):
    """Close a subset under the binary ``tables`` and the unary ``maps``.

    ``member`` is a 0/1 vector of length n, ``tables`` has shape (k, n, n) and
    ``maps`` shape (m, n).  Returns the closed 0/1 vector as uint8.
    """
    tabs = np.asarray(tables).tolist()
    mps = np.asarray(maps).tolist()
    inset = [bool(x) for x in np.asarray(member).tolist()]
    elems = [i for i, x in enumerate(inset) if x]
    queue = list(elems)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for t in tabs:
            tx = t[x]
            for y in elems:
                for z in (tx[y], t[y][x]):
                    if not inset[z]:
                        inset[z] = True
                        elems.append(z)
                        queue.append(z)
        for m in mps:
            z = m[x]
            if not inset[z]:
                inset[z] = True
                elems.append(z)
                queue.append(z)
    return np.array(inset, dtype=np.uint8)


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def congruence(tables, seeds):
    """Class labels of the congruence generated by the pairs in ``seeds``.

    Each element is labelled by the smallest member of its class.
    """
    tabs = np.asarray(tables).tolist()
    n = len(tabs[0]) if tabs else 0
    parent = list(range(n))
    pending = []

    def union(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
            pending.append((a, b))

    for a, b in np.asarray(seeds, dtype=np.int64).reshape(-1, 2).tolist():
        union(a, b)
    while pending:
        a, b = pending.pop()
        for t in tabs:
            ta, tb = t[a], t[b]
            for c in range(n):
                union(ta[c], tb[c])
                tc = t[c]
                union(tc[a], tc[b])
    return np.array([_find(parent, x) for x in range(n)], dtype=np.int32)


def extend_hom(dom, cod, fmap, allowed, injective, used):
    """Propagate a partial map through the operations; update in place.

    ``fmap`` holds -1 for unassigned points.  Returns False on a conflict
    (operation not preserved, image outside ``allowed``, or an injectivity
    clash).  ``used`` marks images taken, maintained only when injective.
    """
    dt = np.asarray(dom).tolist()
    ct = np.asarray(cod).tolist()
    f = fmap.tolist()
    al = allowed.tolist()
    us = used.tolist()
    mapped = [x for x in range(len(f)) if f[x] >= 0]
    queue = list(mapped)
    head = 0
    ok = True
    while head < len(queue) and ok:
        x = queue[head]
        head += 1
        fx = f[x]
        for k in range(len(dt)):
            d, c = dt[k], ct[k]
            dx, cx = d[x], c[fx]
            for y in mapped:
                fy = f[y]
                for z, w in ((dx[y], cx[fy]), (d[y][x], c[fy][fx])):
                    fz = f[z]
                    if fz < 0:
                        if not al[z][w] or (injective and us[w]):
                            ok = False
                            break
                        f[z] = w
                        if injective:
                            us[w] = 1
                        mapped.append(z)
                        queue.append(z)
                    elif fz != w:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
    fmap[:] = f
    used[:] = us
    return ok


def _relabel(tabs, n, gens):
    """BFS order from ``0, gens...``; returns (order, pos) or None if not generating."""
    order = [0]
    pos = [-1] * n
    pos[0] = 0
    for g in gens:
        if pos[g] >= 0:
            return None
        pos[g] = len(order)
        order.append(g)
    i = 0
    while i < len(order):
        a = order[i]
        for j in range(i + 1):
            b = order[j]
            for t in tabs:
                for z in (t[a][b], t[b][a]):
                    if pos[z] < 0:
                        pos[z] = len(order)
                        order.append(z)
        i += 1
    if len(order) < n:
        return None
    return order, pos


def canonical_form(tables):
    """Isomorphism-invariant relabelling of ``tables``.

    Tries every ordered generating tuple of minimal length, relabels the
    elements in breadth-first order from that tuple, and keeps the
    lexicographically least resulting table stack.
    """
    tabs = np.asarray(tables).tolist()
    n = len(tabs[0])
    if n == 1:
        return np.asarray(tables, dtype=np.int32).copy()
    best = None
    for glen in range(1, n):
        idx = [1] * glen
        found = False
        while True:
            r = _relabel(tabs, n, idx)
            if r is not None:
                found = True
                order, pos = r
                cand = [pos[t[order[a]][order[b]]] for t in tabs
                        for a in range(n) for b in range(n)]
                if best is None or cand < best:
                    best = cand
            # odometer over 1..n-1
            p = glen - 1
            while p >= 0:
                idx[p] += 1
                if idx[p] < n:
                    break
                idx[p] = 1
                p -= 1
            if p < 0:
                break
        if found:
            break
    return np.array(best, dtype=np.int32).reshape(len(tabs), n, n)


def enumerate_loops(n, associative):
    """All multiplication tables on 0..n-1 with two-sided identity 0 that are
    Latin squares (loops); with ``associative`` only the groups."""
    if n == 1:
        return [np.zeros((1, 1), dtype=np.int32)]
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    # rowused[r][v]: value v already in row r (t[r][0] = r); same for columns
    rowused = [[v == r for v in range(n)] for r in range(n)]
    colused = [[v == c for v in range(n)] for c in range(n)]
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    out = []

    def assoc_ok(i, j):
        v = t[i][j]
        for z in range(n):
            # (i j) z = i (j z)
            a, b = t[v][z], t[j][z]
            if a >= 0 and b >= 0:
                c = t[i][b]
                if c >= 0 and c != a:
                    return False
            # (x i) j = x (i j)
            xi = t[z][i]
            if xi >= 0:
                a = t[xi][j]
                c = t[z][v]
                if a >= 0 and c >= 0 and a != c:
                    return False
        for x in range(n):
            tx = t[x]
            for y in range(n):
                w = tx[y]
                if w == i:
                    # (x y) j = x (y j)
                    yj = t[y][j]
                    if yj >= 0:
                        c = tx[yj]
                        if c >= 0 and c != v:
                            return False
                if w == j:
                    # (i x) y = i (x y)
                    ix = t[i][x]
                    if ix >= 0:
                        a = t[ix][y]
                        if a >= 0 and a != v:
                            return False
        return True

    def rec(k):
        if k == len(cells):
            out.append(np.array(t, dtype=np.int32))
            return
        i, j = cells[k]
        for v in range(n):
            if rowused[i][v] or colused[j][v]:
                continue
            t[i][j] = v
            rowused[i][v] = colused[j][v] = True
            if not associative or assoc_ok(i, j):
                rec(k + 1)
            rowused[i][v] = colused[j][v] = False
            t[i][j] = -1

    rec(0)
    return out
