"""Reflectors onto subcategories, their composites and the protoadditivity search.

A reflector is described by the kernel of its unit: ``I(A) = A / ker(η_A)``.
The action on a morphism ``f`` is obtained by factoring ``η_B ∘ f`` through
the surjection ``η_A``.
"""

import numpy as np

from . import fgab, finalg
from .errors import AmbientMismatch, InternalMismatch, NotCommutative
from .finalg import FiniteAlgebra, Kind, Morphism

# subcategory label -> every ambient label containing it
_SUPER = {
    "group": {"group"},
    "loop": {"loop"},
    "ring": {"ring"},
    "ab": {"ab", "group"},
    "grp": {"grp", "loop"},
    "crng": {"crng", "ring"},
    "redcrng": {"redcrng", "crng", "ring"},
    "fgab": {"fgab"},
    "tf": {"tf", "fgab"},
}


def category_of(A):
    """Smallest shipped subcategory label containing ``A``."""
    if isinstance(A, fgab.FgAb):
        return "tf" if not A.factors else "fgab"
    if A.kind is Kind.GROUP:
        return "ab" if A.is_commutative else "group"
    if A.kind is Kind.LOOP:
        return "grp" if A.is_associative else "loop"
    if not A.is_commutative:
        return "ring"
    return "redcrng" if _nilradical(A).is_zero else "crng"


class Reflector:
    """A named reflector given by the kernel of its unit."""

    def __init__(self, name, ambient, image, birkhoff, unit_kernel=None):
        self.name = name
        self.ambient = ambient  # label, or "*" for every ambient
        self.image = image  # label of the reflective subcategory, "*" = same
        self.birkhoff = birkhoff
        self._kernel = unit_kernel

    def __repr__(self):
        return f"Reflector({self.name!r})"

    def accepts(self, A):
        return self.ambient == "*" or self.ambient in _SUPER[category_of(A)]

    def _require(self, A):
        if not self.accepts(A):
            if self.ambient == "crng" and not isinstance(A, fgab.FgAb) \
                    and A.kind is Kind.RING:
                raise NotCommutative(f"{self.name} needs a commutative ring")
            raise AmbientMismatch(f"{self.name} does not apply to {A!r}")

    def unit_kernel(self, A):
        """``ker(η_A)``, the closure of zero in ``A``."""
        if isinstance(A, fgab.FgAb):
            self._require(A)
            return self._kernel(A)
        memo = A.cache.setdefault("unit_kernel", {})
        if self.name not in memo:
            self._require(A)
            memo[self.name] = self._kernel(A)
        return memo[self.name]

    def reflect(self, A):
        """``(I(A), η_A)``."""
        if isinstance(A, fgab.FgAb):
            u = fgab.quotient_map(A, self.unit_kernel(A))
            return u.cod, u
        memo = A.cache.setdefault("reflect", {})
        if self.name not in memo:
            memo[self.name] = finalg.quotient(A, self.unit_kernel(A))
        return memo[self.name]

    def unit(self, A):
        return self.reflect(A)[1]

    def membership(self, A):
        K = self.unit_kernel(A)
        if isinstance(A, fgab.FgAb):
            return K == fgab.zero_subgroup(A)
        return K.is_zero

    def apply(self, f):
        """``I(f)``, the unique map with ``I(f) ∘ η_A = η_B ∘ f``."""
        ea = self.unit(f.dom)
        eb = self.unit(f.cod)
        if isinstance(f, fgab.FgAbMap):
            return _factor_fgab(ea, f.then(eb))
        return factor_through(ea, f.then(eb))


class CompositeReflector(Reflector):
    """``F ∘ I`` with unit ``η²_{I(A)} ∘ η¹_A``."""

    def __init__(self, inner, outer):
        super().__init__(f"{inner.name}+{outer.name}", inner.ambient,
                         outer.image if outer.image != "*" else inner.image,
                         inner.birkhoff and outer.birkhoff)
        self.inner = inner
        self.outer = outer

    def accepts(self, A):
        return self.inner.accepts(A)

    def unit_kernel(self, A):
        if isinstance(A, fgab.FgAb):
            e1 = self.inner.unit(A)
            return fgab.preimage(e1, self.outer.unit_kernel(e1.cod))
        memo = A.cache.setdefault("unit_kernel", {})
        if self.name not in memo:
            self._require(A)
            e1 = self.inner.unit(A)
            memo[self.name] = finalg.preimage(e1, self.outer.unit_kernel(e1.cod))
        return memo[self.name]

    def reflect(self, A):
        if isinstance(A, fgab.FgAb):
            IA, e1 = self.inner.reflect(A)
            FIA, e2 = self.outer.reflect(IA)
            return FIA, e1.then(e2)
        memo = A.cache.setdefault("reflect", {})
        if self.name not in memo:
            IA, e1 = self.inner.reflect(A)
            FIA, e2 = self.outer.reflect(IA)
            memo[self.name] = (FIA, e1.then(e2))
        return memo[self.name]


def factor_through(e, g):
    """The ``h`` with ``h ∘ e = g`` for a surjection ``e`` (must exist)."""
    m = np.full(e.cod.n, -1, dtype=np.int64)
    m[e.map] = g.map
    if not np.array_equal(m[e.map], g.map) or (m < 0).any():
        raise InternalMismatch("map is not constant on the fibres of the unit")
    return Morphism(e.cod, g.cod, m)


def _factor_fgab(e, g):
    # e is a canonical quotient; lift the standard basis of e.cod through e
    lifts = []
    for j in range(e.cod.ngens):
        target = [int(i == j) for i in range(e.cod.ngens)]
        lifts.append(_lift(e, target))
    cols = [g(v) for v in lifts]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(g.cod.ngens)]
    return fgab.FgAbMap(e.cod, g.cod, mat)


def _lift(e, target):
    # brute preimage of a basis vector: solve e(x) = target modulo relations
    n = e.dom.ngens
    m = e.cod.ngens
    rel = e.cod.relation_rows()
    big = [[e.matrix[i][j] for j in range(n)] + [-r[i] for r in rel] + [-target[i]]
           for i in range(m)]
    for row in fgab.integer_kernel(big, n + len(rel) + 1):
        if abs(row[-1]) == 1:
            return [row[-1] * v for v in row[:n]]
    raise InternalMismatch("unit is not surjective")


# ---------------------------------------------------------------------------
# the shipped reflectors


def _commutator_closure(A):
    return finalg.normal_closure(A, finalg.commutator_elements(A))


def _nilradical(A):
    """``{a : a^k = 0 for some k <= n}``; powers of an element cycle within n steps."""
    m = A.mul
    p = np.arange(A.n)
    nil = p == 0
    for _ in range(A.n):
        p = m[p, np.arange(A.n)]
        nil |= p == 0
    return finalg.subobject(A, np.flatnonzero(nil))


def associators(A):
    """``((x y) z) \\ (x (y z))`` for all triples of a loop."""
    m, ld = A.mul, A.tables[1]
    ar = np.arange(A.n)
    xy_z = m[m[:, :, None], ar[None, None, :]]
    x_yz = m[ar[:, None, None], m[None, :, :]]
    return np.unique(ld[xy_z, x_yz])


def _associator_closure(A):
    return finalg.normal_closure(A, associators(A))


def _zero(A):
    if isinstance(A, fgab.FgAb):
        return fgab.zero_subgroup(A)
    return finalg.zero_sub(A)


AB = Reflector("ab", "group", "ab", True, _commutator_closure)
CRNG = Reflector("crng", "ring", "crng", True, _commutator_closure)
RED = Reflector("red", "crng", "redcrng", False, _nilradical)
GRP = Reflector("grp", "loop", "grp", True, _associator_closure)
TF = Reflector("tf", "fgab", "tf", False, fgab.torsion_subgroup)
ID = Reflector("id", "*", "*", True, _zero)

REGISTRY = {r.name: r for r in (AB, CRNG, RED, GRP, TF, ID)}


def ab_of_group(A):
    return AB.reflect(A)


def crng_of_ring(A):
    return CRNG.reflect(A)


def red_of_crng(A):
    return RED.reflect(A)


def grp_of_loop(A):
    return GRP.reflect(A)


def tf_of_fgab(G):
    return TF.reflect(G)


def compose(inner, outer):
    if outer.ambient != "*" and inner.image != "*" \
            and outer.ambient not in _SUPER[inner.image]:
        raise AmbientMismatch(
            f"{outer.name} is defined on {outer.ambient}, not on the image of {inner.name}")
    if inner.image == "*" and outer.ambient != "*":
        raise AmbientMismatch(f"{outer.name} is not defined on every image of {inner.name}")
    return CompositeReflector(inner, outer)


def get_reflector(name):
    """Look up ``ab``, ``crng``, ``red``, ``grp``, ``tf``, ``id`` or ``inner+outer``."""
    if name in REGISTRY:
        return REGISTRY[name]
    if "+" in name:
        inner, outer = name.split("+", 1)
        return compose(get_reflector(inner), get_reflector(outer))
    raise KeyError(f"unknown reflector {name!r}")


def split_adjunction(name):
    """``(inner, outer)`` for an adjunction name; a bare name gets outer ``id``."""
    R = get_reflector(name)
    if isinstance(R, CompositeReflector):
        return R.inner, R.outer
    return R, ID


# ---------------------------------------------------------------------------
# checks


def quotient_surjections(A):
    """Every canonical quotient map ``A -> A/N``."""
    return [finalg.quotient(A, N)[1] for N in finalg.normal_subobjects(A)]


def idempotence_holds(R, A):
    IA = R.reflect(A)[0]
    return R.unit(IA).is_iso


def birkhoff_violations(R, algebras):
    """Surjections ``f`` with ``f(ker η_A) != ker η_B`` (stability under quotients)."""
    out = []
    for A in algebras:
        if not R.accepts(A):
            continue
        KA = R.unit_kernel(A)
        for f in quotient_surjections(A):
            if finalg.direct_image(f, KA) != R.unit_kernel(f.cod):
                out.append({"algebra": A.name, "kernel": list(finalg.kernel(f).elements)})
    return out


def red_pushforward_witness(max_n=64):
    """Search the surjections ``Z -> Z/n`` for one not carrying the nilradical
    of the source onto that of the target.

    ``Z`` is reduced (it is an integral domain), so the image of its
    nilradical is always ``0``; the nilradical of ``Z/n`` is computed from
    its table.  Returns ``(n, nil(Z/n))`` for the least failing ``n``.
    """
    from .corpus import zmod_ring

    for n in range(2, max_n + 1):
        nil = RED.unit_kernel(zmod_ring(n))
        if not nil.is_zero:
            return n, nil.elements
    return None


def protoadditivity_search(F, algebras):
    """First split short exact sequence ``0 -> K -> A -> B -> 0`` whose image under
    ``F`` is not split exact, or None."""
    for A in algebras:
        if not F.accepts(A):
            continue
        for N in finalg.normal_subobjects(A):
            B, f = finalg.quotient(A, N)
            s = finalg.find_section(f)
            if s is None:
                continue
            K, k = finalg.as_algebra(N)
            seq = finalg.ShortExactSequence(F.apply(k), F.apply(f), F.apply(s))
            if not finalg.is_split_exact(seq):
                return {"algebra": A.name, "size": A.n, "kernel": list(N.elements),
                        "section": s.map.tolist(),
                        "reflected_sizes": [seq.k.dom.n, seq.k.cod.n, seq.f.cod.n]}
    return None
