"""Finite pointed algebras (groups, loops, rings) given by operation tables.

Elements are the integers ``0..n-1`` and the point (group identity, ring
zero, loop unit) is always ``0``.  Every construction here materialises its
result as explicit tables.

Table stacks by signature:

* group: ``[mul]``
* loop: ``[mul, ldiv, rdiv]`` with ``x * (x \\ y) = y`` and ``(x / y) * y = x``
* ring: ``[add, mul]``
"""

import hashlib
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import (AxiomViolation, CatGaloisError, NotNormal, NotSurjective,
                     ParseError, TooLarge)

CANONICAL_BOUND = 10


class NotHomomorphism(CatGaloisError):
    pass


class Kind(str, Enum):
    GROUP = "group"
    LOOP = "loop"
    RING = "ring"


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """An algebra of one of the three signatures; compare with ``is`` or
    :func:`find_isomorphism`, never by value."""

    kind: Kind
    tables: np.ndarray
    labels: Optional[tuple] = None
    name: Optional[str] = None

    def __post_init__(self):
        t = np.array(self.tables, dtype=np.int32, copy=True)
        if t.ndim == 2:
            t = t[None]
        t.setflags(write=False)
        object.__setattr__(self, "tables", t)
        object.__setattr__(self, "kind", Kind(self.kind))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<{self.kind.value}{tag} of size {self.n}>"

    @property
    def n(self):
        return self.tables.shape[1]

    @property
    def mul(self):
        return self.tables[1] if self.kind is Kind.RING else self.tables[0]

    @property
    def add(self):
        if self.kind is not Kind.RING:
            raise AttributeError("only rings have an additive table")
        return self.tables[0]

    @property
    def primary_tables(self):
        """The tables that determine the algebra (loop divisions are derived)."""
        return self.tables[:1] if self.kind is Kind.LOOP else self.tables

    @cached_property
    def cache(self):
        # memo for derived data keyed by the computing module
        return {}

    @cached_property
    def neg(self):
        """Additive inverse (rings) or inverse (groups)."""
        t = self.add if self.kind is Kind.RING else self.mul
        return np.argmin(t, axis=1).astype(np.int32) if self.n else t[:, 0]

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    @cached_property
    def is_commutative(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def is_associative(self):
        return kernels.check_associative(self.mul) is None

    @cached_property
    def closure_tables(self):
        """Tables under which a normal subobject must be closed."""
        if self.kind is Kind.LOOP:
            return self.tables
        return self.tables[:1]

    @cached_property
    def normality_maps(self):
        """Unary maps a normal subobject is invariant under (rows of an array)."""
        n = self.n
        m = self.mul.astype(np.intp)
        ar = np.arange(n)
        if self.kind is Kind.GROUP:
            maps = m[m, self.neg[:, None]]  # row g: x -> g x g^-1
        elif self.kind is Kind.RING:
            maps = np.concatenate([m, m.T])  # x -> a x and x -> x a
        else:
            ld, rd = self.tables[1], self.tables[2]
            t = rd[m, ar[:, None]]  # T_x(k) = (x k) / x
            # L_{x,y}(k) = (y x) \ (y (x k)),  R_{x,y}(k) = ((k x) y) / (x y)
            yx = m.T[:, :, None]
            y_xk = m[ar[None, :, None], m[:, None, :]]
            lmaps = ld[yx, y_xk].reshape(-1, n)
            kx_y = m[m.T[:, None, :], ar[None, :, None]]
            rmaps = rd[kx_y, m[:, :, None]].reshape(-1, n)
            maps = np.concatenate([t, lmaps, rmaps])
        maps = np.ascontiguousarray(maps, dtype=np.int32)
        # distinct rows in first-seen order; hashing beats a lexicographic sort here
        keep = {}
        for i, row in enumerate(maps):
            keep.setdefault(row.tobytes(), i)
        return maps[sorted(keep.values())]

    @cached_property
    def generators(self):
        """A greedy generating tuple (smallest missing element each step)."""
        gens = []
        member = np.zeros(self.n, dtype=np.uint8)
        member[0] = 1
        member = kernels.saturate(member, self.tables, _NO_MAPS[self.n])
        while not member.all():
            g = int(np.argmin(member))
            gens.append(g)
            member[g] = 1
            member = kernels.saturate(member, self.tables, _NO_MAPS[self.n])
        return tuple(gens)

    @cached_property
    def element_profile(self):
        """Per-element isomorphism invariants packed into one integer."""
        n = self.n
        prof = np.zeros(n, dtype=np.int64)
        for x in range(n):
            member = np.zeros(n, dtype=np.uint8)
            member[0] = member[x] = 1
            size = int(kernels.saturate(member, self.tables, _NO_MAPS[n]).sum())
            flags = 0
            for i, t in enumerate(self.primary_tables):
                flags |= int(t[x, x] == x) << (2 * i)
                flags |= int(t[x, x] == 0) << (2 * i + 1)
            prof[x] = size * 64 + flags
        return prof


class _NoMaps(dict):
    def __missing__(self, n):
        v = np.zeros((0, n), dtype=np.int32)
        self[n] = v
        return v


_NO_MAPS = _NoMaps()


@dataclass(frozen=True, eq=False)
class NormalSubobject:
    """A subset of ``ambient`` that is the kernel of a surjection."""

    ambient: FiniteAlgebra
    members: np.ndarray

    def __post_init__(self):
        m = np.array(self.members, dtype=bool, copy=True)
        m.setflags(write=False)
        object.__setattr__(self, "members", m)

    @cached_property
    def key(self):
        return np.packbits(self.members).tobytes()

    def __eq__(self, other):
        if not isinstance(other, NormalSubobject):
            return NotImplemented
        return self.ambient is other.ambient and self.key == other.key

    def __hash__(self):
        return hash((id(self.ambient), self.key))

    def __le__(self, other):
        return bool(np.all(other.members[self.members]))

    def __repr__(self):
        return f"NormalSubobject({list(self.elements)})"

    @cached_property
    def elements(self):
        return tuple(int(x) for x in np.flatnonzero(self.members))

    @property
    def size(self):
        return int(self.members.sum())

    @property
    def is_zero(self):
        return self.size == 1

    @property
    def is_top(self):
        return bool(self.members.all())


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: np.ndarray

    def __post_init__(self):
        m = np.array(self.map, dtype=np.int32, copy=True)
        m.setflags(write=False)
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return int(self.map[x])

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r}, {self.map.tolist()})"

    def is_valid(self):
        m = self.map
        if m.shape != (self.dom.n,) or self.dom.kind is not self.cod.kind:
            return False
        if m.min(initial=0) < 0 or m.max(initial=0) >= self.cod.n or m[0] != 0:
            return False
        for td, tc in zip(self.dom.tables, self.cod.tables):
            if not np.array_equal(m[td], tc[m[:, None], m[None, :]]):
                return False
        return True

    @cached_property
    def image_mask(self):
        out = np.zeros(self.cod.n, dtype=bool)
        out[self.map] = True
        return out

    @property
    def is_surjective(self):
        return bool(self.image_mask.all())

    @property
    def is_injective(self):
        return len(np.unique(self.map)) == self.dom.n

    @property
    def is_iso(self):
        return self.is_injective and self.is_surjective

    def then(self, g):
        """``g ∘ self``."""
        if g.dom is not self.cod:
            raise ValueError("morphisms are not composable")
        return Morphism(self.dom, g.cod, g.map[self.map])

    def inverse(self):
        inv = np.empty(self.cod.n, dtype=np.int32)
        inv[self.map] = np.arange(self.dom.n)
        return Morphism(self.cod, self.dom, inv)


def morphism(dom, cod, mapping):
    """Validated constructor."""
    f = Morphism(dom, cod, np.asarray(mapping))
    if not f.is_valid():
        raise NotHomomorphism("map does not preserve the point and operations")
    return f


def identity(A):
    return Morphism(A, A, np.arange(A.n))


def subobject(A, elements, check=True):
    """NormalSubobject from an element list (0 is always added)."""
    mask = np.zeros(A.n, dtype=bool)
    mask[0] = True
    mask[np.asarray(list(elements), dtype=np.intp)] = True
    N = NormalSubobject(A, mask)
    if check and not is_normal(A, mask):
        raise NotNormal(f"{list(N.elements)} is not a kernel")
    return N


def zero_sub(A):
    return _sub(A, np.arange(A.n) == 0)


def top_sub(A):
    return _sub(A, np.ones(A.n, dtype=bool))


def _sub(A, mask):
    return NormalSubobject(A, mask)


# ---------------------------------------------------------------------------
# construction and validation


def make_algebra(kind, tables, labels=None, name=None):
    """Validate primary tables, move the point to 0 and derive loop divisions.

    Returns ``(algebra, perm)`` where ``perm[i]`` is the index given to the
    input element ``i``.
    """
    kind = Kind(kind)
    tabs = np.asarray(tables)
    if tabs.ndim == 2:
        tabs = tabs[None]
    nt = 2 if kind is Kind.RING else 1
    if tabs.ndim != 3 or tabs.shape[0] != nt or tabs.shape[1] != tabs.shape[2]:
        raise ParseError(f"{kind.value} needs {nt} square table(s)")
    n = tabs.shape[1]
    if n == 0:
        raise ParseError("empty carrier")
    bad = np.argwhere((tabs < 0) | (tabs >= n))
    if len(bad):
        raise AxiomViolation("table entries in 0..n-1", bad[0])
    tabs = tabs.astype(np.int32)
    base = tabs[0]
    ar = np.arange(n)
    ids = [e for e in range(n)
           if np.array_equal(base[e], ar) and np.array_equal(base[:, e], ar)]
    if not ids:
        raise AxiomViolation("two-sided neutral element", ())
    e = ids[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0
    # perm is an involution, so relabelling x -> perm[x] is its own inverse
    tabs = perm[tabs[:, perm[:, None], perm[None, :]]].astype(np.int32)
    if labels is not None:
        labels = tuple(labels[perm[i]] for i in range(n))
    _check_axioms(kind, tabs)
    if kind is Kind.LOOP:
        tabs = np.stack([tabs[0], *_loop_divisions(tabs[0])])
    return FiniteAlgebra(kind, tabs, labels, name), perm


def _loop_divisions(m):
    n = m.shape[0]
    ld = np.empty_like(m)
    rd = np.empty_like(m)
    ar = np.arange(n)
    ld[ar[:, None], m] = ar[None, :]  # x \ (x y) = y
    rd[m, ar[None, :]] = ar[:, None]  # (x y) / y = x
    return ld, rd


def _first(mask):
    w = np.argwhere(mask)
    return w[0] if len(w) else None


def _check_axioms(kind, tabs):
    n = tabs.shape[1]
    if kind is Kind.GROUP:
        w = kernels.check_associative(tabs[0])
        if w is not None:
            raise AxiomViolation("associativity", w)
        w = _first(~(tabs[0] == 0).any(axis=1))
        if w is not None:
            raise AxiomViolation("inverses", w)
    elif kind is Kind.LOOP:
        m = tabs[0]
        for x in range(n):
            seen = {}
            for y in range(n):
                z = int(m[x, y])
                if z in seen:
                    raise AxiomViolation("y = x\\(x*y)", (x, y))
                seen[z] = y
        for y in range(n):
            seen = {}
            for x in range(n):
                z = int(m[x, y])
                if z in seen:
                    raise AxiomViolation("x = (x*y)/y", (x, y))
                seen[z] = x
    else:
        add, mul = tabs
        w = kernels.check_associative(add)
        if w is not None:
            raise AxiomViolation("additive associativity", w)
        w = _first(add != add.T)
        if w is not None:
            raise AxiomViolation("additive commutativity", w)
        w = _first(~(add == 0).any(axis=1))
        if w is not None:
            raise AxiomViolation("additive inverses", w)
        w = kernels.check_associative(mul)
        if w is not None:
            raise AxiomViolation("multiplicative associativity", w)
        x = np.arange(n)[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        w = _first(mul[x, add[y, z]] != add[mul[x, y], mul[x, z]])
        if w is not None:
            raise AxiomViolation("left distributivity", w)
        w = _first(mul[add[x, y], z] != add[mul[x, z], mul[y, z]])
        if w is not None:
            raise AxiomViolation("right distributivity", w)


# ---------------------------------------------------------------------------
# file formats


def _strip(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_algebra(text, name=None):
    """Parse the algebra file format; returns ``(algebra, perm)``."""
    lines = _strip(text)
    if not lines:
        raise ParseError("empty algebra file")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in {k.value for k in Kind}:
        raise ParseError(f"bad header {lines[0]!r}; expected 'kind n'")
    kind = Kind(head[0])
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad size {head[1]!r}") from None
    if n < 1:
        raise ParseError("size must be positive")
    pos = 1
    labels = None
    if pos < len(lines) and lines[pos].split()[0] == "labels":
        labels = lines[pos].split()[1:]
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}")
        pos += 1
    ntab = 2 if kind is Kind.RING else 1
    rows = lines[pos:]
    if len(rows) < ntab * n:
        raise ParseError(f"expected {ntab * n} table rows, got {len(rows)}")
    if len(rows) > ntab * n:
        raise ParseError(f"trailing content: {rows[ntab * n]!r}")
    try:
        vals = [[int(v) for v in r.split()] for r in rows]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for i, r in enumerate(vals):
        if len(r) != n:
            raise ParseError(f"table row {i} has {len(r)} entries, expected {n}")
    tabs = np.array(vals, dtype=np.int64).reshape(ntab, n, n)
    return make_algebra(kind, tabs, labels, name)


def load_algebra(path):
    path = Path(path)
    A, perm = parse_algebra(path.read_text(encoding="utf-8"), name=path.stem)
    A.cache["file_perm"] = perm
    return A


def dump_algebra(A):
    lines = [f"{A.kind.value} {A.n}"]
    if A.labels is not None:
        lines.append("labels " + " ".join(str(x) for x in A.labels))
    for i, t in enumerate(A.primary_tables):
        if i:
            lines.append("")
        lines.extend(" ".join(str(v) for v in row) for row in t.tolist())
    return "\n".join(lines) + "\n"


def parse_morphism_body(text, dom, cod):
    """The index list of a morphism file (header already removed)."""
    try:
        vals = [int(v) for line in _strip(text) for v in line.split()]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if len(vals) != dom.n:
        raise ParseError(f"expected {dom.n} indices, got {len(vals)}")
    pd = dom.cache.get("file_perm", np.arange(dom.n))
    pc = cod.cache.get("file_perm", np.arange(cod.n))
    if min(vals) < 0 or max(vals) >= cod.n:
        raise ParseError("index out of range")
    mapping = np.empty(dom.n, dtype=np.int64)
    mapping[pd] = pc[np.asarray(vals)]
    try:
        return morphism(dom, cod, mapping)
    except NotHomomorphism as exc:
        raise ParseError(str(exc)) from None


def load_morphism(path, dom=None, cod=None):
    """Load ``dom-file cod-file`` plus indices; paths relative to the file."""
    path = Path(path)
    lines = _strip(path.read_text(encoding="utf-8"))
    if not lines:
        raise ParseError("empty morphism file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("morphism header must be 'dom-file cod-file'")
    if dom is None:
        dom = load_algebra(path.parent / head[0])
    if cod is None:
        cod = load_algebra(path.parent / head[1])
    return parse_morphism_body("\n".join(lines[1:]), dom, cod)


def dump_morphism(f, dom_file, cod_file):
    return f"{dom_file} {cod_file}\n" + " ".join(str(v) for v in f.map.tolist()) + "\n"


# ---------------------------------------------------------------------------
# kernels, quotients, closures


def kernel(f):
    return _sub(f.dom, f.map == 0)


def congruence_classes(A, pairs):
    """Labels (least class member) of the congruence generated by ``pairs``."""
    seeds = np.asarray(pairs, dtype=np.int32).reshape(-1, 2)
    return kernels.congruence(A.tables, seeds)


def _zero_pairs(mask):
    el = np.flatnonzero(mask)
    return np.stack([np.zeros_like(el), el], axis=1)


def is_normal(A, mask):
    """Kernel-of-a-surjection test: the 0-class of the generated congruence."""
    mask = np.asarray(mask, dtype=bool)
    if not mask[0]:
        return False
    lab = congruence_classes(A, _zero_pairs(mask))
    return bool(np.array_equal(lab == 0, mask))


def quotient(A, N):
    """``(A/N, q_N)`` with classes numbered by their least element."""
    memo = A.cache.setdefault("quotient", {})
    hit = memo.get(N.key)
    if hit is not None:
        return hit
    lab = congruence_classes(A, _zero_pairs(N.members))
    if not np.array_equal(lab == 0, N.members):
        raise NotNormal(f"{list(N.elements)} is not the kernel of a surjection")
    out = quotient_by_labels(A, lab)
    memo[N.key] = out
    return out


def quotient_by_labels(A, lab):
    """Quotient by a congruence given as least-member class labels."""
    reps = np.unique(lab)
    index = np.full(A.n, -1, dtype=np.int32)
    index[reps] = np.arange(len(reps))
    cls = index[lab]
    tabs = cls[A.tables[:, reps[:, None], reps[None, :]]]
    Q = FiniteAlgebra(A.kind, tabs)
    q = Morphism(A, Q, cls)
    if not q.is_valid():
        raise NotNormal("classes do not form a congruence")
    return Q, q


def normal_closure(A, S):
    """Smallest normal subobject containing the elements ``S``."""
    mask = np.zeros(A.n, dtype=np.uint8)
    mask[0] = 1
    mask[np.asarray(list(S), dtype=np.intp)] = 1
    return _sub(A, _saturate_normal(A, mask))


def _saturate_normal(A, mask):
    return kernels.saturate(mask, A.closure_tables, A.normality_maps).astype(bool)


def normal_closure_by_congruence(A, S):
    """Independent route: the 0-class of the congruence generated by ``{(0, s)}``."""
    mask = np.zeros(A.n, dtype=bool)
    mask[0] = True
    mask[np.asarray(list(S), dtype=np.intp)] = True
    lab = congruence_classes(A, _zero_pairs(mask))
    return _sub(A, lab == 0)


def join(N1, N2):
    _same(N1, N2)
    return _sub(N1.ambient, _saturate_normal(N1.ambient, N1.members | N2.members))


def meet(N1, N2):
    _same(N1, N2)
    return _sub(N1.ambient, N1.members & N2.members)


def _same(N1, N2):
    if N1.ambient is not N2.ambient:
        raise ValueError("normal subobjects live in different algebras")


def pushout_of_quotients(N1, N2):
    """Pushout of ``q_{N1}`` and ``q_{N2}`` as a quotient of the ambient.

    Returns the diagonal ``A -> P``; its kernel is ``N1 ∨ N2``.
    """
    _same(N1, N2)
    A = N1.ambient
    pairs = []
    for N in (N1, N2):
        lab = congruence_classes(A, _zero_pairs(N.members))
        pairs.append(np.stack([np.arange(A.n), lab], axis=1))
    lab = congruence_classes(A, np.concatenate(pairs))
    return quotient_by_labels(A, lab)[1]


def normal_subobjects(A):
    """Every normal subobject, sorted by size then elements."""
    hit = A.cache.get("normal_subobjects")
    if hit is not None:
        return hit
    n = A.n
    principal = {}
    for x in range(n):
        m = np.zeros(n, dtype=np.uint8)
        m[0] = m[x] = 1
        s = _saturate_normal(A, m)
        principal.setdefault(s.tobytes(), s)
    seen = dict(principal)
    frontier = list(principal.values())
    gens = list(principal.values())
    while frontier:
        cur = frontier.pop()
        for p in gens:
            if np.all(cur[p]):
                continue
            j = _saturate_normal(A, (cur | p).astype(np.uint8))
            k = j.tobytes()
            if k not in seen:
                seen[k] = j
                frontier.append(j)
    subs = [_sub(A, m) for m in seen.values()]
    subs.sort(key=lambda N: (N.size, N.elements))
    subs = tuple(subs)
    A.cache["normal_subobjects"] = subs
    return subs


def as_algebra(N):
    """The subobject as an algebra together with its inclusion."""
    A = N.ambient
    el = np.flatnonzero(N.members)
    index = np.full(A.n, -1, dtype=np.int32)
    index[el] = np.arange(len(el))
    tabs = index[A.tables[:, el[:, None], el[None, :]]]
    if (tabs < 0).any():
        raise NotNormal("subset is not closed under the operations")
    S = FiniteAlgebra(A.kind, tabs)
    return S, Morphism(S, A, el)


def direct_image(f, N):
    if not f.is_surjective:
        raise NotSurjective("direct image is taken along surjections")
    mask = np.zeros(f.cod.n, dtype=bool)
    mask[f.map[N.members]] = True
    if not is_normal(f.cod, mask):
        raise NotNormal("regular image of a normal subobject is not normal")
    return _sub(f.cod, mask)


def preimage(f, N):
    return _sub(f.dom, N.members[f.map])


def restrict(f, N, M):
    """``f`` restricted to ``N -> M`` as a morphism of algebras."""
    SN, iN = as_algebra(N)
    SM, iM = as_algebra(M)
    index = np.full(M.ambient.n, -1, dtype=np.int32)
    index[iM.map] = np.arange(SM.n)
    m = index[f.map[iN.map]]
    if (m < 0).any():
        raise ValueError("image leaves the target subobject")
    return Morphism(SN, SM, m)


# ---------------------------------------------------------------------------
# limits


class KernelPair(NamedTuple):
    R: FiniteAlgebra
    pi1: Morphism
    pi2: Morphism
    delta: Morphism


def pullback(f, g):
    """``{(a, b) : f(a) = g(b)}`` ordered lexicographically, with projections."""
    if f.cod is not g.cod:
        raise ValueError("pullback needs a common codomain")
    A, B = f.dom, g.dom
    a, b = np.nonzero(f.map[:, None] == g.map[None, :])
    code = np.full(A.n * B.n, -1, dtype=np.int32)
    code[a * B.n + b] = np.arange(len(a))
    ta = A.tables[:, a[:, None], a[None, :]].astype(np.int64)
    tb = B.tables[:, b[:, None], b[None, :]]
    P = FiniteAlgebra(A.kind, code[ta * B.n + tb])
    return P, Morphism(P, A, a), Morphism(P, B, b)


def kernel_pair(f):
    # R[f] depends only on the fibres of f
    memo = f.dom.cache.setdefault("kernel_pair", {})
    key = f.map.tobytes()
    hit = memo.get(key)
    if hit is not None:
        return hit
    R, p1, p2 = pullback(f, f)
    n = f.dom.n
    code = np.full(n * n, -1, dtype=np.int32)
    code[p1.map.astype(np.int64) * n + p2.map] = np.arange(R.n)
    ar = np.arange(n)
    out = KernelPair(R, p1, p2, Morphism(f.dom, R, code[ar * n + ar]))
    memo[key] = out
    return out


def zero_algebra(kind):
    k = Kind(kind)
    nt = {Kind.GROUP: 1, Kind.LOOP: 3, Kind.RING: 2}[k]
    return FiniteAlgebra(k, np.zeros((nt, 1, 1), dtype=np.int32), name="0")


def to_zero(A, Z=None):
    Z = Z if Z is not None else zero_algebra(A.kind)
    return Morphism(A, Z, np.zeros(A.n, dtype=np.int32))


def product(A, B):
    """``A × B`` with both projections."""
    Z = zero_algebra(A.kind)
    return pullback(to_zero(A, Z), to_zero(B, Z))


def pairing(f, g, P, p1, p2):
    """``⟨f, g⟩ : X -> P`` for a materialised pullback ``(P, p1, p2)``."""
    nb = p2.cod.n
    code = np.full(p1.cod.n * nb, -1, dtype=np.int32)
    code[p1.map.astype(np.int64) * nb + p2.map] = np.arange(P.n)
    m = code[f.map.astype(np.int64) * nb + g.map]
    if (m < 0).any():
        raise ValueError("the two maps do not form a cone")
    return Morphism(f.dom, P, m)


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    k: Morphism
    f: Morphism
    s: Optional[Morphism] = None


def is_split_exact(seq):
    k, f, s = seq.k, seq.f, seq.s
    if k.cod is not f.dom or not (k.is_injective and f.is_surjective):
        return False
    if not np.array_equal(k.image_mask, f.map == 0):
        return False
    if s is None:
        return False
    return s.dom is f.cod and s.cod is f.dom and bool(
        np.array_equal(f.map[s.map], np.arange(f.cod.n)))


def find_section(f):
    """A morphism ``s`` with ``f ∘ s = id`` or None (exhaustive search)."""
    allowed = (f.map[None, :] == np.arange(f.cod.n)[:, None])
    return next(homomorphisms(f.cod, f.dom, allowed=allowed), None)


# ---------------------------------------------------------------------------
# homomorphism search and isomorphism types


def homomorphisms(A, B, allowed=None, injective=False):
    """Yield every morphism ``A -> B`` with ``f(x) = y`` only where ``allowed[x, y]``."""
    if A.kind is not B.kind:
        return
    if allowed is None:
        allowed = np.ones((A.n, B.n), dtype=np.uint8)
    allowed = np.ascontiguousarray(allowed, dtype=np.uint8)
    if not allowed[0, 0]:
        return
    fmap = np.full(A.n, -1, dtype=np.int32)
    fmap[0] = 0
    used = np.zeros(B.n, dtype=np.uint8)
    used[0] = 1
    if not kernels.extend_hom(A.tables, B.tables, fmap, allowed, injective, used):
        return
    gens = A.generators
    cands = [np.flatnonzero(allowed[g]) for g in gens]

    def rec(i, fmap, used):
        if i == len(gens):
            yield Morphism(A, B, fmap)
            return
        g = gens[i]
        if fmap[g] >= 0:
            yield from rec(i + 1, fmap, used)
            return
        for w in cands[i]:
            if injective and used[w]:
                continue
            f2, u2 = fmap.copy(), used.copy()
            f2[g] = w
            u2[w] = 1
            if kernels.extend_hom(A.tables, B.tables, f2, allowed, injective, u2):
                yield from rec(i + 1, f2, u2)

    yield from rec(0, fmap, used)


def find_isomorphism(A, B):
    if A.kind is not B.kind or A.n != B.n:
        return None
    pa, pb = A.element_profile, B.element_profile
    if not np.array_equal(np.sort(pa), np.sort(pb)):
        return None
    allowed = (pa[:, None] == pb[None, :])
    return next(homomorphisms(A, B, allowed=allowed, injective=True), None)


def is_isomorphic(A, B):
    return find_isomorphism(A, B) is not None


def canonical_form(A, max_size=CANONICAL_BOUND):
    if A.n > max_size:
        raise TooLarge(f"canonical form requested for size {A.n} > {max_size}")
    return kernels.canonical_form(A.primary_tables)


def commutator_elements(A):
    """Elements measuring non-commutativity of the multiplication."""
    m = A.mul
    if A.kind is Kind.GROUP:
        inv = A.neg
        return np.unique(m[m[inv[:, None], inv[None, :]], m])  # x^-1 y^-1 x y
    if A.kind is Kind.RING:
        return np.unique(A.sub(m, m.T))
    return np.unique(A.tables[1][m.T, m])  # (y x) \ (x y)


def fingerprint(A):
    """Cheap isomorphism invariant usable at any size."""
    prof = np.unique(A.element_profile, return_counts=True)
    centre = int(np.all(A.mul == A.mul.T, axis=1).sum())
    series = [A.n]
    B = A
    while B.n > 1:
        N = normal_closure(B, commutator_elements(B))
        if N.size == B.n:
            break
        B = as_algebra(N)[0]
        series.append(B.n)
    parts = [A.kind.value, str(A.n), f"c{centre}", "d" + ".".join(map(str, series))]
    parts.append(".".join(f"{int(v)}x{int(c)}" for v, c in zip(*prof)))
    return "-".join(parts)


def iso_type(A, bound=CANONICAL_BOUND):
    """Canonical label up to ``bound`` elements, a ``~`` fingerprint above."""
    if A.n <= bound:
        digest = hashlib.sha1(canonical_form(A, bound).tobytes()).hexdigest()[:16]
        return f"{A.kind.value}{A.n}:{digest}"
    return "~" + fingerprint(A)
