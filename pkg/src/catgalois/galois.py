"""Extensions, relative commutators, centralisation and Galois groups.

An extension is a surjective :class:`~catgalois.finalg.Morphism` ``p: E -> B``.
An adjunction ``Γ`` is either a bare reflector or a composite ``inner+outer``
(:class:`~catgalois.reflect.CompositeReflector`).
"""

from dataclasses import dataclass

import numpy as np

from . import finalg
from .errors import (InternalMismatch, NotBCentral, NotNormal, NotNormalExtension,
                     NotSurjective)
from .reflect import ID, CompositeReflector, factor_through


def _require_surjective(f):
    if not f.is_surjective:
        raise NotSurjective("an extension must be surjective")


def parts(G):
    """``(inner, outer)`` of an adjunction; a bare reflector has outer ``id``."""
    if isinstance(G, CompositeReflector):
        return G.inner, G.outer
    return G, ID


# ---------------------------------------------------------------------------
# relative commutator and centrality


def relative_commutator(RB, f):
    """``[K[f], E]_B``: second components of the pairs in ``cl0(R[f])`` whose
    first component is ``0``."""
    _require_surjective(f)
    kp = finalg.kernel_pair(f)
    zr = RB.unit_kernel(kp.R)
    members = zr.members & (kp.pi1.map == 0)
    elems = np.unique(kp.pi2.map[members])
    return finalg.subobject(f.dom, elems)


def commutator_oracle(f):
    """Group-theoretic ``[K, A]``: normal closure of ``k^-1 a^-1 k a``."""
    A = f.dom
    K = finalg.kernel(f).elements
    m, inv = A.mul, A.neg
    k = np.asarray(K)
    comms = m[m[inv[k][:, None], inv[None, :]], m[k][:, :]]
    return finalg.normal_closure(A, np.unique(comms))


def is_B_central(RB, f):
    return relative_commutator(RB, f).is_zero


def kernel_object(f):
    return finalg.as_algebra(finalg.kernel(f))


def in_subcategory(G, X):
    """``X`` lies in the image of the adjunction ``G``."""
    inner, outer = parts(G)
    return (inner.accepts(X) and inner.membership(X)
            and outer.accepts(X) and outer.membership(X))


# ---------------------------------------------------------------------------
# trivial and normal extensions


def comparison_is_bijective(G, f):
    """Is ``E -> B ×_{I(B)} I(E)``, ``e -> (f(e), η_E(e))``, a bijection?"""
    eE = G.unit(f.dom)
    eB = G.unit(f.cod)
    If = G.apply(f)
    codes = f.map.astype(np.int64) * eE.cod.n + eE.map
    if len(np.unique(codes)) != f.dom.n:
        return False
    fibre = np.bincount(eB.map, minlength=eB.cod.n)
    return int(fibre[If.map].sum()) == f.dom.n


def is_trivial_ext(G, f):
    _require_surjective(f)
    return comparison_is_bijective(G, f)


def is_normal_ext(G, f):
    _require_surjective(f)
    return comparison_is_bijective(G, finalg.kernel_pair(f).pi1)


def is_F_central(G, f):
    """Centrality for the composite: ``B``-central with kernel in ``F``."""
    inner, _ = parts(G)
    return is_B_central(inner, f) and in_subcategory(G, kernel_object(f)[0])


def classify(G, f):
    inner, _ = parts(G)
    rc = relative_commutator(inner, f)
    return {"trivial": is_trivial_ext(G, f), "normal": is_normal_ext(G, f),
            "B_central": rc.is_zero, "F_central": is_F_central(G, f),
            "relative_commutator": [int(x) for x in rc.elements]}


# ---------------------------------------------------------------------------
# centralisation


def centralize_I1(RB, f):
    """``E/[K,E]_B -> B``."""
    C = relative_commutator(RB, f)
    _, q = finalg.quotient(f.dom, C)
    return factor_through(q, f)


def centralize_F1(G, f):
    """``E / cl0^F(K[f]) -> B`` for a ``B``-central ``f``."""
    inner, outer = parts(G)
    if not is_B_central(inner, f):
        raise NotBCentral("F1 needs a B-central extension")
    K, k = kernel_object(f)
    if not outer.accepts(K):
        raise NotBCentral("the kernel object is outside the middle subcategory")
    Z = outer.unit_kernel(K)
    try:
        N = finalg.subobject(f.dom, k.map[Z.members])
    except NotNormal:
        raise InternalMismatch("closure of zero in the kernel is not normal in E") from None
    _, q = finalg.quotient(f.dom, N)
    return factor_through(q, f)


def centralize(G, f):
    """``F1 I1 (f)``."""
    inner, _ = parts(G)
    return centralize_F1(G, centralize_I1(inner, f))


# ---------------------------------------------------------------------------
# Galois groupoid and group


@dataclass(frozen=True, eq=False)
class GaloisGroup:
    group: finalg.FiniteAlgebra  # kernel of <I(pi1), I(pi2)> as an algebra
    witness: tuple  # its elements inside I(R[p])
    intersection: tuple  # K[p] ∧ K[η_E] inside E
    iso_type: str


def galois_group(G, p):
    """Kernel of ``<I(π1), I(π2)>: I(R[p]) -> I(E) × I(E)``, cross-checked
    against ``K[p] ∧ K[η_E]`` through ``e -> η_R(0, e)``."""
    _require_surjective(p)
    if not is_normal_ext(G, p):
        raise NotNormalExtension("the Galois group is defined for normal extensions")
    kp = finalg.kernel_pair(p)
    IR, eR = G.reflect(kp.R)
    s = G.apply(kp.pi1)
    t = G.apply(kp.pi2)
    gal = finalg.subobject(IR, np.flatnonzero((s.map == 0) & (t.map == 0)))

    E = p.dom
    inter = finalg.meet(finalg.kernel(p), G.unit_kernel(E))
    # (0, e) has index code[e] in R[p]
    n = E.n
    code = np.full(n * n, -1, dtype=np.int64)
    code[kp.pi1.map.astype(np.int64) * n + kp.pi2.map] = np.arange(kp.R.n)
    e = np.asarray(inter.elements, dtype=np.int64)
    image = eR.map[code[e]]
    Gal, inc = finalg.as_algebra(gal)
    Int, _ = finalg.as_algebra(inter)
    index = np.full(IR.n, -1, dtype=np.int64)
    index[inc.map] = np.arange(Gal.n)
    cmp = index[image]
    if (cmp < 0).any() or len(set(cmp.tolist())) != len(cmp) or len(cmp) != Gal.n:
        raise InternalMismatch(
            f"Galois group routes disagree: {Gal.n} vs {Int.n} elements")
    if not finalg.Morphism(Int, Gal, cmp).is_valid():
        raise InternalMismatch("comparison map is not a homomorphism")
    return GaloisGroup(Gal, gal.elements, inter.elements, finalg.iso_type(Gal))


@dataclass(frozen=True, eq=False)
class GaloisGroupoid:
    objects: finalg.FiniteAlgebra
    arrows: finalg.FiniteAlgebra
    source: finalg.Morphism
    target: finalg.Morphism
    unit: finalg.Morphism


def galois_groupoid(G, p):
    """The reflected kernel-equivalence diagram, with composability verified:
    ``I(R) ×_{I(E)} I(R) ≅ I(R ×_E R)`` through the canonical comparison."""
    _require_surjective(p)
    if not is_normal_ext(G, p):
        raise NotNormalExtension("the Galois groupoid is defined for normal extensions")
    kp = finalg.kernel_pair(p)
    IE = G.reflect(p.dom)[0]
    IR = G.reflect(kp.R)[0]
    s, t, u = G.apply(kp.pi1), G.apply(kp.pi2), G.apply(kp.delta)
    ident = np.arange(IE.n)
    if not (np.array_equal(s.map[u.map], ident) and np.array_equal(t.map[u.map], ident)):
        raise InternalMismatch("identities of the groupoid are not split by source and target")
    R2, q1, q2 = finalg.pullback(kp.pi2, kp.pi1)
    PB, r1, r2 = finalg.pullback(t, s)
    cmp = finalg.pairing(G.apply(q1), G.apply(q2), PB, r1, r2)
    if not cmp.is_iso:
        raise InternalMismatch("reflected composable pairs differ from composable pairs")
    return GaloisGroupoid(IE, IR, s, t, u)


def factorisations(p, q):
    """Every ``u`` with ``p = q ∘ u`` (both over the same base object)."""
    if p.cod is not q.cod:
        raise ValueError("extensions must share their base")
    allowed = p.map[:, None] == q.map[None, :]
    return finalg.homomorphisms(p.dom, q.dom, allowed=allowed)


def weakly_universal_check(p, others):
    """For each candidate ``q``, a factorisation ``u`` of ``p`` through ``q`` or None."""
    out = []
    for q in others:
        u = next(factorisations(p, q), None)
        out.append({"target": q.dom.name or "", "factors": u is not None,
                    "map": None if u is None else u.map.tolist()})
    return out
