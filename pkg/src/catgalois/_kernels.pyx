# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; same signatures as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def check_associative(t_in):
    cdef const int[:, ::1] t = np.ascontiguousarray(t_in, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = t[a, b]
            for c in range(n):
                if t[ab, c] != t[a, t[b, c]]:
                    return (int(a), int(b), int(c))
    return None


def saturate(member_in, tables_in, maps_in):
    cdef const int[:, :, ::1] tabs = np.ascontiguousarray(tables_in, dtype=np.int32)
    cdef const int[:, ::1] maps = np.ascontiguousarray(maps_in, dtype=np.int32).reshape(
        -1, tabs.shape[1])
    cdef Py_ssize_t k = tabs.shape[0], n = tabs.shape[1], m = maps.shape[0]
    out = np.ascontiguousarray(member_in, dtype=np.uint8).copy()
    cdef unsigned char[::1] inset = out
    cdef int[::1] elems = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t count = 0, head = 0, i, j, q
    cdef int x, y, z
    for i in range(n):
        if inset[i]:
            elems[count] = <int>i
            count += 1
    while head < count:
        x = elems[head]
        head += 1
        for q in range(k):
            j = 0
            while j < count:
                y = elems[j]
                z = tabs[q, x, y]
                if not inset[z]:
                    inset[z] = 1
                    elems[count] = z
                    count += 1
                z = tabs[q, y, x]
                if not inset[z]:
                    inset[z] = 1
                    elems[count] = z
                    count += 1
                j += 1
        for q in range(m):
            z = maps[q, x]
            if not inset[z]:
                inset[z] = 1
                elems[count] = z
                count += 1
    return out


cdef inline int _find(int[::1] parent, int x) nogil:
    cdef int root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline bint _union(int[::1] parent, int a, int b) nogil:
    cdef int ra = _find(parent, a), rb = _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def congruence(tables_in, seeds_in):
    cdef const int[:, :, ::1] tabs = np.ascontiguousarray(tables_in, dtype=np.int32)
    cdef Py_ssize_t k = tabs.shape[0], n = tabs.shape[1]
    seeds_arr = np.ascontiguousarray(seeds_in, dtype=np.int32).reshape(-1, 2)
    cdef const int[:, ::1] seeds = seeds_arr
    parent_arr = np.arange(n, dtype=np.int32)
    cdef int[::1] parent = parent_arr
    # at most n - 1 successful unions are ever pending
    cdef int[:, ::1] stack = np.empty((n + 1, 2), dtype=np.int32)
    cdef Py_ssize_t top = 0, i, q, c
    cdef int a, b
    for i in range(seeds.shape[0]):
        if _union(parent, seeds[i, 0], seeds[i, 1]):
            stack[top, 0] = seeds[i, 0]
            stack[top, 1] = seeds[i, 1]
            top += 1
    while top > 0:
        top -= 1
        a = stack[top, 0]
        b = stack[top, 1]
        for q in range(k):
            for c in range(n):
                if _union(parent, tabs[q, a, c], tabs[q, b, c]):
                    stack[top, 0] = tabs[q, a, c]
                    stack[top, 1] = tabs[q, b, c]
                    top += 1
                if _union(parent, tabs[q, c, a], tabs[q, c, b]):
                    stack[top, 0] = tabs[q, c, a]
                    stack[top, 1] = tabs[q, c, b]
                    top += 1
    for i in range(n):
        parent[i] = _find(parent, <int>i)
    return parent_arr


def extend_hom(dom_in, cod_in, fmap_arr, allowed_in, bint injective, used_arr):
    cdef const int[:, :, ::1] dt = np.ascontiguousarray(dom_in, dtype=np.int32)
    cdef const int[:, :, ::1] ct = np.ascontiguousarray(cod_in, dtype=np.int32)
    cdef const unsigned char[:, ::1] allowed = np.ascontiguousarray(allowed_in, dtype=np.uint8)
    work = np.ascontiguousarray(fmap_arr, dtype=np.int32).copy()
    uwork = np.ascontiguousarray(used_arr, dtype=np.uint8).copy()
    cdef int[::1] f = work
    cdef unsigned char[::1] used = uwork
    cdef Py_ssize_t k = dt.shape[0], n = dt.shape[1]
    cdef int[::1] mapped = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t count = 0, head = 0, i, j, q, r
    cdef int x, y, fx, fy, z, w
    cdef bint ok = True
    for i in range(n):
        if f[i] >= 0:
            mapped[count] = <int>i
            count += 1
    while head < count and ok:
        x = mapped[head]
        head += 1
        fx = f[x]
        for q in range(k):
            if not ok:
                break
            j = 0
            while j < count:
                y = mapped[j]
                fy = f[y]
                for r in range(2):
                    if r == 0:
                        z = dt[q, x, y]
                        w = ct[q, fx, fy]
                    else:
                        z = dt[q, y, x]
                        w = ct[q, fy, fx]
                    if f[z] < 0:
                        if not allowed[z, w] or (injective and used[w]):
                            ok = False
                            break
                        f[z] = w
                        if injective:
                            used[w] = 1
                        mapped[count] = z
                        count += 1
                    elif f[z] != w:
                        ok = False
                        break
                if not ok:
                    break
                j += 1
    fmap_arr[:] = work
    used_arr[:] = uwork
    return bool(ok)


cdef Py_ssize_t _relabel(const int[:, :, ::1] tabs, Py_ssize_t n, int[::1] gens,
                         Py_ssize_t glen, int[::1] order, int[::1] pos) nogil:
    cdef Py_ssize_t k = tabs.shape[0], cnt = 1, i, j, q, r, g
    cdef int a, b, z
    for i in range(n):
        pos[i] = -1
    order[0] = 0
    pos[0] = 0
    for g in range(glen):
        if pos[gens[g]] >= 0:
            return 0
        pos[gens[g]] = <int>cnt
        order[cnt] = gens[g]
        cnt += 1
    i = 0
    while i < cnt:
        a = order[i]
        for j in range(i + 1):
            b = order[j]
            for q in range(k):
                for r in range(2):
                    if r == 0:
                        z = tabs[q, a, b]
                    else:
                        z = tabs[q, b, a]
                    if pos[z] < 0:
                        pos[z] = <int>cnt
                        order[cnt] = z
                        cnt += 1
        i += 1
    return cnt


def canonical_form(tables_in):
    cdef const int[:, :, ::1] tabs = np.ascontiguousarray(tables_in, dtype=np.int32)
    cdef Py_ssize_t k = tabs.shape[0], n = tabs.shape[1]
    if n == 1:
        return np.asarray(tabs).copy()
    best_arr = np.empty((k, n, n), dtype=np.int32)
    cdef int[:, :, ::1] best = best_arr
    cdef int[::1] order = np.empty(n, dtype=np.int32)
    cdef int[::1] pos = np.empty(n, dtype=np.int32)
    cdef int[::1] gens = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t glen, p, q, a, b
    cdef bint have = False, found, decided
    cdef int v
    for glen in range(1, n):
        found = False
        for p in range(glen):
            gens[p] = 1
        while True:
            if _relabel(tabs, n, gens, glen, order, pos) == n:
                found = True
                if not have:
                    for q in range(k):
                        for a in range(n):
                            for b in range(n):
                                best[q, a, b] = pos[tabs[q, order[a], order[b]]]
                    have = True
                else:
                    # lexicographic comparison, copying once we are smaller
                    decided = False
                    for q in range(k):
                        if decided:
                            break
                        for a in range(n):
                            if decided:
                                break
                            for b in range(n):
                                v = pos[tabs[q, order[a], order[b]]]
                                if v < best[q, a, b]:
                                    _copy_relabel(tabs, order, pos, best, q, a, b)
                                    decided = True
                                    break
                                elif v > best[q, a, b]:
                                    decided = True
                                    break
            p = glen - 1
            while p >= 0:
                gens[p] += 1
                if gens[p] < n:
                    break
                gens[p] = 1
                p -= 1
            if p < 0:
                break
        if found:
            break
    return best_arr


cdef void _copy_relabel(const int[:, :, ::1] tabs, int[::1] order, int[::1] pos,
                        int[:, :, ::1] best, Py_ssize_t q0, Py_ssize_t a0,
                        Py_ssize_t b0) nogil:
    cdef Py_ssize_t k = tabs.shape[0], n = tabs.shape[1], q, a, b
    for q in range(q0, k):
        for a in range(n):
            for b in range(n):
                if q == q0 and (a < a0 or (a == a0 and b < b0)):
                    continue
                best[q, a, b] = pos[tabs[q, order[a], order[b]]]


cdef bint _assoc_ok(int[:, ::1] t, Py_ssize_t n, int i, int j) nogil:
    cdef int v = t[i, j], z, a, b, c, xi, x, y, w, yj, ix
    for z in range(n):
        a = t[v, z]
        b = t[j, z]
        if a >= 0 and b >= 0:
            c = t[i, b]
            if c >= 0 and c != a:
                return False
        xi = t[z, i]
        if xi >= 0:
            a = t[xi, j]
            c = t[z, v]
            if a >= 0 and c >= 0 and a != c:
                return False
    for x in range(n):
        for y in range(n):
            w = t[x, y]
            if w == i:
                yj = t[y, j]
                if yj >= 0:
                    c = t[x, yj]
                    if c >= 0 and c != v:
                        return False
            if w == j:
                ix = t[i, x]
                if ix >= 0:
                    a = t[ix, y]
                    if a >= 0 and a != v:
                        return False
    return True


def enumerate_loops(int n, bint associative):
    if n == 1:
        return [np.zeros((1, 1), dtype=np.int32)]
    t_arr = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] t = t_arr
    rowused_arr = np.zeros((n, n), dtype=np.uint8)
    colused_arr = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] rowused = rowused_arr
    cdef unsigned char[:, ::1] colused = colused_arr
    cdef int i, j, v, ncells = (n - 1) * (n - 1), kk
    for i in range(n):
        t[0, i] = i
        t[i, 0] = i
        rowused[i, i] = 1
        colused[i, i] = 1
    cdef int[::1] choice = np.full(ncells, -1, dtype=np.int32)
    out = []
    kk = 0
    # iterative backtracking over the (n-1)^2 free cells in row-major order
    while kk >= 0:
        if kk == ncells:
            out.append(t_arr.copy())
            kk -= 1
            continue
        i = kk // (n - 1) + 1
        j = kk % (n - 1) + 1
        v = choice[kk]
        if v >= 0:
            rowused[i, v] = 0
            colused[j, v] = 0
            t[i, j] = -1
        v += 1
        while v < n:
            if not rowused[i, v] and not colused[j, v]:
                t[i, j] = v
                if not associative or _assoc_ok(t, n, i, j):
                    break
                t[i, j] = -1
            v += 1
        if v < n:
            choice[kk] = v
            rowused[i, v] = 1
            colused[j, v] = 1
            kk += 1
        else:
            choice[kk] = -1
            kk -= 1
    return out
