import itertools

import numpy as np
import pytest

from catgalois import corpus, fgab, finalg, reflect
from catgalois.errors import AmbientMismatch, NotCommutative
from catgalois.reflect import AB, CRNG, GRP, ID, RED, TF

from _util import by_name

Z = corpus.cyclic_group


def brute_subgroup_closure(m, gens):
    """Subgroup generated by ``gens`` in a finite group table by fixpoint."""
    S = {0, *map(int, gens)}
    while True:
        new = {int(m[a, b]) for a in S for b in S} - S
        if not new:
            return S
        S |= new


def brute_derived(A):
    m, inv = A.mul, A.neg
    comms = {int(m[m[inv[x], inv[y]], m[x, y]]) for x in range(A.n) for y in range(A.n)}
    return brute_subgroup_closure(m, comms)


def brute_ideal(R, seeds):
    """Two-sided ideal generated by ``seeds``: close under +, and x*r, r*x."""
    I = {0, *map(int, seeds)}
    while True:
        new = ({int(R.add[a, b]) for a in I for b in I}
               | {int(R.mul[a, r]) for a in I for r in range(R.n)}
               | {int(R.mul[r, a]) for a in I for r in range(R.n)}) - I
        if not new:
            return I
        I |= new


def brute_nilradical(R):
    out = set()
    for a in range(R.n):
        p = a
        for _ in range(R.n):
            if p == 0:
                out.add(a)
                break
            p = int(R.mul[p, a])
    return out


def test_ab_of_abelian_is_identity():
    IA, u = AB.reflect(Z(6))
    assert IA.n == 6 and np.array_equal(u.map, np.arange(6))


@pytest.mark.parametrize("name,size", [("S3", 2), ("Q8", 4), ("A4", 3), ("D4", 4)])
def test_abelianisation_orders(name, size):
    A = by_name("group", name)
    assert set(AB.unit_kernel(A).elements) == brute_derived(A)
    IA, _ = AB.reflect(A)
    assert IA.n == size and IA.is_commutative


def test_q8_abelianisation_is_klein():
    IA, _ = AB.reflect(corpus.quaternion_group())
    assert finalg.is_isomorphic(IA, corpus.klein_four())


def test_crng_examples():
    R = corpus.zmod_ring(6)
    assert CRNG.reflect(R)[0].n == 6
    U = corpus.upper_triangular_f2()
    comms = {int(U.sub(U.mul[x, y], U.mul[y, x])) for x in range(8) for y in range(8)}
    ideal = brute_ideal(U, comms)
    assert set(CRNG.unit_kernel(U).elements) == ideal
    IU = CRNG.reflect(U)[0]
    assert IU.n == 8 // len(ideal) and IU.is_commutative
    Z0 = finalg.zero_algebra("ring")
    assert CRNG.reflect(Z0)[0].n == 1


def test_red_examples():
    R = corpus.zmod_ring(8)
    assert set(RED.unit_kernel(R).elements) == brute_nilradical(R) == {0, 2, 4, 6}
    IR = RED.reflect(R)[0]
    assert finalg.is_isomorphic(IR, corpus.zmod_ring(2))
    F = corpus.ring_product(corpus.zmod_ring(2), corpus.zmod_ring(3))
    assert RED.unit_kernel(F).is_zero
    assert RED.unit_kernel(corpus.zmod_ring(6)).is_zero


def test_red_rejects_noncommutative():
    with pytest.raises(NotCommutative):
        RED.reflect(corpus.upper_triangular_f2())


def test_wrong_ambient():
    with pytest.raises(AmbientMismatch):
        AB.reflect(corpus.zmod_ring(4))
    with pytest.raises(AmbientMismatch):
        GRP.reflect(Z(4))


def test_grp_examples():
    for A in corpus.family("loop", 4):
        assert GRP.unit_kernel(A).is_zero  # every loop of order <= 4 is a group
    L = corpus.least_nonassociative_loop(5)
    K = GRP.unit_kernel(L)
    oracle = finalg.normal_closure_by_congruence(L, reflect.associators(L))
    assert K == oracle
    IL = GRP.reflect(L)[0]
    assert IL.is_associative
    assert GRP.reflect(corpus.family("loop", 1)[0])[0].n == 1


def test_tf_examples():
    IG, u = TF.reflect(fgab.parse_fgab("Z,4"))
    assert str(IG) == "Z"
    assert TF.reflect(fgab.from_cyclic([12]))[0].is_trivial
    G = fgab.FgAb(3)
    IG, u = TF.reflect(G)
    assert IG == G and u.matrix == tuple(tuple(r) for r in fgab.identity_matrix(3))


def test_compose_crng_red():
    C = reflect.compose(CRNG, RED)
    IR, u = C.reflect(corpus.zmod_ring(8))
    assert finalg.is_isomorphic(IR, corpus.zmod_ring(2))
    assert set(C.unit_kernel(corpus.zmod_ring(8)).elements) == {0, 2, 4, 6}
    F = corpus.ring_product(corpus.zmod_ring(2), corpus.zmod_ring(3))
    IF, u = C.reflect(F)
    assert u.is_iso


def test_compose_mismatch():
    with pytest.raises(AmbientMismatch):
        reflect.compose(AB, RED)


def test_registry_lookup():
    assert reflect.get_reflector("ab") is AB
    assert reflect.get_reflector("crng+red").name == "crng+red"
    with pytest.raises(KeyError):
        reflect.get_reflector("nope")


@pytest.mark.parametrize("R,kind", [(AB, "group"), (CRNG, "ring"), (GRP, "loop"), (ID, "group")])
def test_idempotence_and_functoriality(R, kind):
    for A in corpus.family(kind, 8 if kind != "loop" else 5):
        if not R.accepts(A):
            continue
        assert reflect.idempotence_holds(R, A)
        IA, u = R.reflect(A)
        assert R.membership(IA)
        for f in itertools.islice(finalg.homomorphisms(A, A), 6):
            If = R.apply(f)
            # naturality: I(f) ∘ η_A = η_A ∘ f
            assert np.array_equal(If.map[u.map], u.map[f.map])


def test_red_idempotent_on_rings():
    for A in corpus.family("ring", 8):
        if RED.accepts(A):
            assert reflect.idempotence_holds(RED, A)


def test_birkhoff_flags_hold_on_corpus():
    assert not reflect.birkhoff_violations(AB, corpus.family("group", 8))
    assert not reflect.birkhoff_violations(CRNG, corpus.family("ring", 8))
    assert not reflect.birkhoff_violations(GRP, corpus.family("loop", 5))


def test_red_not_closed_under_quotients():
    # Z is reduced while Z/4 is not; the finite witness is Z/(n) for the least n
    n, (nil0, nil1) = reflect.red_pushforward_witness()
    assert n == 4 and nil1 != 0


def test_protoadditivity_search():
    assert reflect.protoadditivity_search(RED, corpus.family("ring", 8)) is None
    w = reflect.protoadditivity_search(AB, corpus.family("group", 16))
    assert w is not None and w["size"] == 6
    assert reflect.protoadditivity_search(ID, corpus.family("group", 8)) is None


def test_named_entry_points():
    assert reflect.ab_of_group(corpus.symmetric_group_3())[0].n == 2
    assert reflect.crng_of_ring(corpus.zmod_ring(4))[0].n == 4
    assert reflect.red_of_crng(corpus.zmod_ring(8))[0].n == 2
    assert reflect.grp_of_loop(corpus.least_nonassociative_loop(5))[0].is_associative
    assert str(reflect.tf_of_fgab(fgab.parse_fgab("Z,4"))[0]) == "Z"
