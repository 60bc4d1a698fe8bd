import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from catgalois import corpus, finalg
from catgalois.errors import AxiomViolation, NotNormal, ParseError

from _util import by_name, canonical_surjections, residue_map, sub

Z = corpus.cyclic_group
S3 = corpus.symmetric_group_3()
A3 = (0, 2, 5)


def brute_cosets(A, N):
    """Left cosets of ``N`` by direct set arithmetic (independent of finalg)."""
    m = A.mul
    return {frozenset(int(m[a, k]) for k in N) for a in range(A.n)}


# ---------------------------------------------------------------------------
# construction and parsing


def test_z2_table():
    A, perm = finalg.make_algebra("group", [[0, 1], [1, 0]])
    assert A.n == 2 and list(perm) == [0, 1]


def test_non_latin_loop_rejected():
    t = np.array([[0, 1, 2, 3, 4],
                  [1, 1, 3, 4, 2],
                  [2, 3, 4, 0, 1],
                  [3, 4, 0, 1, 2],
                  [4, 2, 1, 2, 3]])
    with pytest.raises(AxiomViolation) as exc:
        finalg.make_algebra("loop", t)
    assert exc.value.witness


def test_z8_ring_tables():
    R = corpus.zmod_ring(8)
    assert R.n == 8 and R.kind is finalg.Kind.RING
    assert R.mul[3, 5] == 7 and R.add[5, 6] == 3


def test_point_is_normalised_to_zero():
    # Z/3 with its identity stored at index 2
    t = np.array([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
    A, perm = finalg.make_algebra("group", t)
    assert perm[2] == 0
    assert np.array_equal(A.mul[0], np.arange(3))


@pytest.mark.parametrize("text", [
    "group 2\n0 1\n1 0\n0 1\n",       # trailing rows
    "group 2\n0 1\n",                 # too few rows
    "groop 2\n0 1\n1 0\n",            # bad kind
    "group 2\n0 1 1\n1 0\n",          # ragged row
    "group x\n0\n",                   # bad size
])
def test_parser_rejects(text):
    with pytest.raises(ParseError):
        finalg.parse_algebra(text)


def test_round_trip_with_comments(tmp_path):
    R = corpus.zmod_ring(6)
    text = "# ring Z/6\n" + finalg.dump_algebra(R)
    B, perm = finalg.parse_algebra(text)
    assert np.array_equal(B.tables, R.tables)


def test_morphism_file(tmp_path):
    (tmp_path / "z4.alg").write_text(finalg.dump_algebra(Z(4)))
    (tmp_path / "z2.alg").write_text(finalg.dump_algebra(Z(2)))
    (tmp_path / "f.mor").write_text("z4.alg z2.alg\n0 1 0 1\n")
    f = finalg.load_morphism(tmp_path / "f.mor")
    assert f.map.tolist() == [0, 1, 0, 1]
    (tmp_path / "g.mor").write_text("z4.alg z2.alg\n0 1 1 1\n")
    with pytest.raises(ParseError):
        finalg.load_morphism(tmp_path / "g.mor")


# ---------------------------------------------------------------------------
# kernels, quotients, closures


def test_kernel_examples():
    assert finalg.kernel(residue_map(Z(4), Z(2))).elements == (0, 2)
    A = Z(6)
    assert finalg.kernel(finalg.identity(A)).elements == (0,)
    assert finalg.kernel(finalg.to_zero(A)).is_top


def test_quotient_z4_mod_2():
    Q, q = finalg.quotient(Z(4), sub(Z(4), [0, 2]))
    assert Q.n == 2 and finalg.is_isomorphic(Q, Z(2))


def test_quotient_s3_by_a3():
    Q, q = finalg.quotient(S3, sub(S3, A3))
    assert finalg.is_isomorphic(Q, Z(2))
    # fibres of q are exactly the cosets found by set arithmetic
    fibres = {frozenset(np.flatnonzero(q.map == c).tolist()) for c in range(Q.n)}
    assert fibres == brute_cosets(S3, A3)


def test_quotient_z8_ring_by_even():
    R = corpus.zmod_ring(8)
    Q, q = finalg.quotient(R, sub(R, [0, 2, 4, 6]))
    assert finalg.is_isomorphic(Q, corpus.zmod_ring(2))
    assert Q.mul[1, 1] == 1  # a field: 1 * 1 = 1


def test_non_normal_rejected():
    with pytest.raises(NotNormal):
        sub(S3, [0, 1])


@pytest.mark.parametrize("kind,alg,S,expect", [
    ("group", "Z6", [], (0,)),
    ("group", "S3", [1], (0, 1, 2, 3, 4, 5)),
])
def test_normal_closure(kind, alg, S, expect):
    assert finalg.normal_closure(by_name(kind, alg), S).elements == expect


def test_ideal_closure_in_z8():
    R = corpus.zmod_ring(8)
    assert finalg.normal_closure(R, [2]).elements == (0, 2, 4, 6)


def test_normal_closure_two_routes_agree():
    for A in corpus.family("group", 12) + corpus.family("loop", 5) + corpus.family("ring", 6):
        for x in range(A.n):
            assert finalg.normal_closure(A, [x]) == finalg.normal_closure_by_congruence(A, [x])


def test_join_meet_z12():
    A = Z(12)
    N1, N2 = sub(A, [0, 6]), sub(A, [0, 4, 8])
    assert finalg.join(N1, N2).elements == (0, 2, 4, 6, 8, 10)
    assert finalg.meet(N1, N2).elements == (0,)
    assert finalg.join(N1, finalg.zero_sub(A)) == N1


# ---------------------------------------------------------------------------
# limits


def test_kernel_pair_sizes():
    assert finalg.kernel_pair(residue_map(Z(4), Z(2))).R.n == 8
    sign = finalg.quotient(S3, sub(S3, A3))[1]
    assert finalg.kernel_pair(sign).R.n == 18
    A = Z(5)
    kp = finalg.kernel_pair(finalg.identity(A))
    assert kp.R.n == 5 and kp.delta.is_iso


def test_pullback_examples():
    f = residue_map(Z(4), Z(2))
    P, p1, p2 = finalg.pullback(f, finalg.identity(f.cod))
    assert P.n == 4 and p1.is_iso
    kp = finalg.kernel_pair(f)
    P, p1, p2 = finalg.pullback(f, f)
    assert P.n == kp.R.n and np.array_equal(p1.map, kp.pi1.map)
    prod = finalg.product(Z(2), Z(3))[0]
    assert prod.n == 6 and finalg.is_isomorphic(prod, Z(6))


def test_direct_image_and_preimage():
    f = residue_map(Z(4), Z(2))
    assert finalg.direct_image(f, finalg.top_sub(Z(4))).is_top
    assert finalg.direct_image(f, sub(Z(4), [0, 2])).is_zero
    sign = finalg.quotient(S3, sub(S3, A3))[1]
    assert finalg.direct_image(sign, sub(S3, A3)).is_zero
    g = residue_map(Z(12), Z(6))
    assert finalg.preimage(g, sub(Z(6), [0, 3])).elements == (0, 3, 6, 9)
    assert finalg.preimage(g, finalg.zero_sub(Z(6))) == finalg.kernel(g)
    assert finalg.preimage(g, finalg.top_sub(Z(6))).is_top


def test_split_exact():
    P, p1, p2 = finalg.product(Z(2), Z(3))
    k = finalg.pairing(finalg.identity(Z(2)), finalg.morphism(Z(2), Z(3), [0, 0]), P, p1, p2)
    s = finalg.find_section(p2)
    assert finalg.is_split_exact(finalg.ShortExactSequence(k, p2, s))
    f = residue_map(Z(4), Z(2))
    inc = finalg.morphism(Z(2), Z(4), [0, 2])
    assert finalg.find_section(f) is None
    assert not finalg.is_split_exact(finalg.ShortExactSequence(inc, f, None))
    A = Z(3)
    zero_in = finalg.morphism(finalg.zero_algebra("group"), A, [0])
    ident = finalg.identity(A)
    assert finalg.is_split_exact(finalg.ShortExactSequence(zero_in, ident, ident))


def test_no_section_by_enumeration():
    # both candidate maps Z/2 -> Z/4 over the identity of Z/2
    cands = [[0, 1], [0, 3]]
    f = residue_map(Z(4), Z(2))
    for c in cands:
        valid = all(f.map[c[i]] == i for i in range(2))
        is_hom = all(Z(4).mul[c[a], c[b]] == c[Z(2).mul[a, b]]
                     for a in range(2) for b in range(2))
        assert not (valid and is_hom)


# ---------------------------------------------------------------------------
# isomorphism


def test_iso_examples():
    assert finalg.find_isomorphism(Z(4), corpus.klein_four()) is None
    A = by_name("group", "D4")
    assert finalg.find_isomorphism(A, A) is not None
    iso = finalg.find_isomorphism(Z(6), finalg.product(Z(2), Z(3))[0])
    assert iso is not None and iso.is_iso and iso.is_valid()


def test_iso_type_distinguishes_corpus():
    for kind in ("group", "loop", "ring"):
        algs = corpus.family(kind, 8 if kind != "loop" else 6)
        types = [finalg.iso_type(A) for A in algs]
        assert len(set(types)) == len(types)


def test_iso_type_invariant_under_relabelling():
    rng = np.random.default_rng(3)
    for A in corpus.family("group", 10):
        p = np.concatenate([[0], 1 + rng.permutation(A.n - 1)])
        inv = np.argsort(p)
        t = p[A.mul[inv[:, None], inv[None, :]]]
        B = finalg.make_algebra("group", t)[0]
        assert finalg.iso_type(A) == finalg.iso_type(B)


# ---------------------------------------------------------------------------
# properties over the corpus


SMALL = corpus.family("group", 12) + corpus.family("loop", 5) + corpus.family("ring", 8)


@given(st.sampled_from(SMALL), st.data())
def test_first_isomorphism_property(A, data):
    subs = finalg.normal_subobjects(A)
    N = data.draw(st.sampled_from(subs))
    Q, q = finalg.quotient(A, N)
    assert finalg.kernel(q) == N
    kp = finalg.kernel_pair(q)
    P, p1, p2 = finalg.pullback(q, q)
    assert np.array_equal(P.tables, kp.R.tables)


@given(st.sampled_from(SMALL), st.data())
def test_join_is_pushout_kernel(A, data):
    subs = finalg.normal_subobjects(A)
    N1 = data.draw(st.sampled_from(subs))
    N2 = data.draw(st.sampled_from(subs))
    assert finalg.join(N1, N2) == finalg.kernel(finalg.pushout_of_quotients(N1, N2))


@given(st.sampled_from(corpus.family("group", 8) + corpus.family("ring", 4)), st.data())
def test_direct_image_of_kernel_is_normal(A, data):
    qs = list(canonical_surjections([A]))
    f = data.draw(st.sampled_from(qs))
    N = data.draw(st.sampled_from(finalg.normal_subobjects(A)))
    M = finalg.direct_image(f, N)
    assert finalg.is_normal(f.cod, M.members)


def test_kernel_square_pullback_iff_cokernel_map_injective():
    """A map of exact sequences over ``f: A -> B``: the kernel square is a
    pullback iff the map on cokernels is injective."""
    for A in corpus.family("group", 8):
        for N in finalg.normal_subobjects(A):
            for M in finalg.normal_subobjects(A):
                if not N <= M:
                    continue
                # 0 -> N -> A -> A/N  mapped into  0 -> M -> A -> A/M
                QN, qN = finalg.quotient(A, N)
                QM, qM = finalg.quotient(A, M)
                w = finalg.morphism(QN, QM, [int(qM.map[np.flatnonzero(qN.map == c)[0]])
                                             for c in range(QN.n)])
                # square (1): N -> M over A -> A (identity); pullback iff N = M ∧ A
                pulled = finalg.meet(M, finalg.top_sub(A)) == N
                assert pulled == w.is_injective


def test_one_element_algebra():
    A = Z(1)
    assert finalg.quotient(A, finalg.zero_sub(A))[0].n == 1
    assert list(finalg.normal_subobjects(A)) == [finalg.zero_sub(A)]
