"""Verification suites over the corpus and replay of their witnesses.

Each suite is split into picklable work items so ``jobs > 1`` can fan out over
a process pool; reports are merged and canonically sorted, so the result does
not depend on the number of workers.
"""

import json
import random
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import closure, cohom, corpus, fgab, finalg, galois, hopf, reflect
from .errors import InternalMismatch
from .report import SuiteReport

ADJUNCTIONS = {"crng+red": "ring", "ab+id": "group", "grp+id": "loop"}
REFLECTOR_FAMILIES = {"ab": ("group",), "crng": ("ring",), "red": ("ring",),
                      "grp": ("loop",), "id": ("group", "ring", "loop"), "tf": ()}


def family_for(name, max_size=None):
    """Corpus members a reflector or adjunction applies to."""
    R = reflect.get_reflector(name)
    inner = name.split("+")[0]
    out = []
    for kind in REFLECTOR_FAMILIES[inner]:
        cap = corpus.MAX_ORDER[kind] if max_size is None else min(max_size, corpus.MAX_ORDER[kind])
        out += [A for A in corpus.family(kind, cap) if R.accepts(A)]
    return out


def _surjections(algebras):
    for A in algebras:
        for f in reflect.quotient_surjections(A):
            yield A, f


def _swit(A, f, **kw):
    """Witness for a check on the canonical surjection ``f: A -> A/K[f]``."""
    out = {"algebra": A.name or "", "tables": finalg.dump_algebra(A),
           "N": [int(x) for x in finalg.kernel(f).elements]}
    out.update(kw)
    return out


def _run(fn, items, jobs):
    if jobs <= 1 or len(items) < 2:
        reps = [fn(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reps = list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    out = reps[0] if reps else SuiteReport("empty")
    for r in reps[1:]:
        out.merge(r)
    return out


# ---------------------------------------------------------------------------
# closure axioms and the join lemma


def _closure_item(item):
    name, part, payload, max_size, seed = item
    R = reflect.get_reflector(name)
    algs = family_for(name, max_size)
    rep = SuiteReport(f"closure-axioms[{name}]")
    if part == "local":
        A = algs[payload]
        closure._local_axioms(R, A, rep)
        closure._axiom5(R, A, rep)
    elif part == "homs":
        for i, j, cap in payload:
            for f in closure.pair_morphisms(algs[i], algs[j], cap):
                closure._axiom3(R, f, rep)
    else:
        rep.merge(closure.fgab_axiom_suite(R, count=payload, seed=seed))
    for v in rep.violations:
        v["reflector"] = name
    return rep


def closure_axioms(name, max_size=None, seed=0, jobs=1, fgab_count=200):
    algs = family_for(name, max_size)
    items = [(name, "local", i, max_size, seed) for i in range(len(algs))]
    pairs = closure.morphism_pairs(algs, seed=seed)
    step = 64
    items += [(name, "homs", pairs[lo:lo + step], max_size, seed)
              for lo in range(0, len(pairs), step)]
    if name in ("tf", "id"):
        items.append((name, "fgab", fgab_count, max_size, seed))
    rep = _run(_closure_item, items, jobs)
    rep.suite = f"closure-axioms[{name}]"
    return rep


def join_closure(name, max_size=None, seed=0):
    R = reflect.get_reflector(name)
    rep = closure.fermeture_checks(R, family_for(name, max_size))
    if name in ("tf", "id"):
        rep.merge(closure.fgab_fermeture_checks(R, seed=seed))
    if name == "red":
        w = closure.red_integer_strict_witness()
        if w is not None:
            rep.info["strict"].append({"integers": w})
    for v in rep.violations:
        v["reflector"] = name
    rep.suite = f"join-closure[{name}]"
    if not R.birkhoff:
        rep.check("strict-witness", bool(rep.info["strict"]), {"reflector": name})
    return rep


# ---------------------------------------------------------------------------
# extensions


def normal_central(adj, max_size=None):
    """``is_normal_ext = (B-central and kernel in F)`` on every canonical surjection."""
    G = reflect.get_reflector(adj)
    rep = SuiteReport(f"normal-central[{adj}]")
    counts = {"normal": 0, "not_normal": 0}
    for A, f in _surjections(family_for(adj, max_size)):
        lhs = galois.is_normal_ext(G, f)
        rhs = galois.is_F_central(G, f)
        counts["normal" if lhs else "not_normal"] += 1
        rep.check("normal=F-central", lhs == rhs,
                  _swit(A, f, adjunction=adj, normal=lhs, central=rhs))
        if G.outer is reflect.ID:
            rep.check("normal=B-central", lhs == galois.is_B_central(G.inner, f),
                      _swit(A, f, adjunction=adj))
    rep.info.update(counts)
    return rep


GALOIS_ADJUNCTIONS = ("ab", "crng", "grp", "ab+id", "crng+red", "grp+id")
GROUPOID_LIMIT = 512


def galois_double_path(max_size=None):
    rep = SuiteReport("galois-double-path")
    seen = 0
    for adj in GALOIS_ADJUNCTIONS:
        G = reflect.get_reflector(adj)
        for A, f in _surjections(family_for(adj, max_size)):
            if not galois.is_normal_ext(G, f):
                continue
            seen += 1
            try:
                galois.galois_group(G, f)
                ok = True
            except InternalMismatch:
                ok = False
            rep.check("two-routes", ok, _swit(A, f, adjunction=adj))
            kp = finalg.kernel_pair(f)
            if kp.R.n * f.dom.n // max(f.cod.n, 1) <= GROUPOID_LIMIT:
                try:
                    galois.galois_groupoid(G, f)
                    ok = True
                except InternalMismatch:
                    ok = False
                rep.check("groupoid", ok, _swit(A, f, adjunction=adj))
    Q8 = corpus.quaternion_group()
    _, p = finalg.quotient(Q8, reflect.AB.unit_kernel(Q8))
    gal = galois.galois_group(reflect.AB, p)
    rep.check("pinned-Q8", gal.group.n == 2 and finalg.is_isomorphic(
        gal.group, corpus.cyclic_group(2)), {"size": gal.group.n})
    rep.info["normal_extensions"] = seen
    return rep


def hopf_identity(adj, max_size=None):
    G = reflect.get_reflector(adj)
    rep = SuiteReport(f"hopf-identity[{adj}]")
    for A, f in _surjections(family_for(adj, max_size)):
        r = hopf.hopf_identity_check(G, f)
        rep.check("identity", r["ok"], _swit(A, f, adjunction=adj,
                                               galois=r["galois_type"], rhs=r["rhs_type"]))
        den = hopf.outer_closure_denominator(G, f)
        rep.check("denominator-routes", tuple(den) == tuple(r["denominator"]),
                  _swit(A, f, adjunction=adj))
        if G.outer is reflect.ID:
            b = hopf.birkhoff_formula(G.inner, f)
            rhs = hopf.hopf_rhs(G, f).value
            rep.check("birkhoff-case", finalg.is_isomorphic(b, rhs),
                      _swit(A, f, adjunction=adj))
    return rep


# ---------------------------------------------------------------------------
# abelian engine and the multiplier oracle


def finite_abelian(max_order=16):
    out = []
    for n in range(1, max_order + 1):
        for inv in corpus.abelian_invariants(n):
            out.append(fgab.from_cyclic(list(inv)))
    return out


def pi1_engine(max_order=16):
    rep = SuiteReport("pi1-engine")
    for B in finite_abelian(max_order):
        ab = hopf.pi1_fgab(B, "ab")
        M = cohom.schur_multiplier(cohom.fgab_to_group(B))
        w = {"fgab": str(B), "engine": str(ab), "oracle": str(M)}
        rep.check("engine=oracle", ab == M, w)
        rep.check("abtf=tf(ab)", hopf.pi1_fgab(B, "abtf") == fgab.tf_quotient(ab), w)
        rep.check("finite-abtf", hopf.pi1_fgab(B, "abtf").is_trivial, w)
        if len(B.factors) <= 1:
            rep.check("cyclic", ab.is_trivial, w)
    V = fgab.from_cyclic([2, 2])
    rep.check("pinned-klein", str(hopf.pi1_fgab(V, "ab")) == "Z/2", {"fgab": str(V)})
    rep.check("pinned-Z2", str(hopf.pi1_fgab(fgab.FgAb(2), "abtf")) == "Z", {"fgab": "Z^2"})
    return rep


# ---------------------------------------------------------------------------
# protoadditivity, lemmas, numerics


def protoadditivity(name, max_size=None):
    R = reflect.get_reflector(name)
    w = reflect.protoadditivity_search(R, family_for(name, max_size))
    rep = SuiteReport(f"protoadditivity[{name}]")
    rep.info["counterexample"] = [w] if w else []
    return rep


def lemmas(count=500, seed=0):
    """The meet-quotient and unit-factorisation checks on seeded random corpus instances."""
    rng = random.Random(seed)
    rep = SuiteReport("lemmas")
    pool = corpus.groups() + corpus.rings() + corpus.loops()
    for _ in range(count):
        A = rng.choice(pool)
        subs = finalg.normal_subobjects(A)
        N = rng.choice(subs)
        B, f = finalg.quotient(A, N)
        bs = finalg.normal_subobjects(B)
        U, V = rng.choice(bs), rng.choice(bs)
        r = hopf.cube_lemma_check(f, U, V)
        rep.check("cube", r["ok"], {"algebra": A.name, "tables": finalg.dump_algebra(A),
                                    "N": list(N.elements), "U": list(U.elements),
                                    "V": list(V.elements)})
    adj = {"group": ["ab", "id"], "ring": ["crng"], "loop": ["grp", "id"]}
    done = 0
    while done < count:
        A = rng.choice(pool)
        names = adj[A.kind.value] + (["red"] if A.kind.value == "ring" and A.is_commutative else [])
        R = reflect.get_reflector(rng.choice(names))
        KA = R.unit_kernel(A)
        below = [N for N in finalg.normal_subobjects(A) if N <= KA]
        N = rng.choice(below)
        _, f = finalg.quotient(A, N)
        r = hopf.unit_factorisation_check(R, f)
        done += 1
        rep.check("unit-factorisation", r is not None and r["ok"],
                  {"algebra": A.name, "tables": finalg.dump_algebra(A),
                   "N": list(N.elements), "reflector": R.name})
    return rep


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_unimodular(rng, n, steps=12):
    U = fgab.identity_matrix(n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    if n and rng.random() < 0.5:
        U[0] = [-a for a in U[0]]
    return U


def snf_ok(M):
    D, U, V = fgab.smith_normal_form(M)
    prod = fgab.matmul(fgab.matmul(U, M), V)
    d = fgab.diagonal(D)
    off = all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [x for x in d if x]
    chain = all(x > 0 for x in nz) and all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1)) \
        and all(x == 0 for x in d[len(nz):])
    unimod = abs(fgab.determinant(U)) == 1 and abs(fgab.determinant(V)) == 1
    return prod == D and off and chain and unimod


def fgab_numerics(snf_count=1000, pres_count=200, seed=0):
    rng = random.Random(seed)
    rep = SuiteReport("fgab-numerics")
    for _ in range(snf_count):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        rep.check("snf", snf_ok(M), {"matrix": M})
    for _ in range(pres_count):
        g = rng.randint(1, 4)
        M = random_matrix(rng, rng.randint(0, 4), g, -6, 6)
        U = random_unimodular(rng, len(M))
        V = random_unimodular(rng, g)
        M2 = fgab.matmul(fgab.matmul(U, M), V) if M else []
        B1 = fgab.from_presentation(M, g)
        B2 = fgab.from_presentation(M2, g)
        w = {"relations": M, "paired": M2}
        rep.check("presentation", B1 == B2, w)
        for c in ("ab", "abtf"):
            rep.check(f"pi1-{c}", hopf.pi1_fgab(B1, c) == hopf.pi1_fgab(B2, c), w)
    return rep


def corpus_counts():
    rep = SuiteReport("corpus-counts")
    for kind, known in corpus.KNOWN_COUNTS.items():
        got = corpus.counts_by_order(corpus.family(kind), corpus.MAX_ORDER[kind])
        rep.check(kind, got == known, {"kind": kind, "got": got, "known": known})
    return rep


SUITES = {
    "closure-axioms": closure_axioms,
    "join-closure": join_closure,
    "normal-central": normal_central,
    "galois-double-path": galois_double_path,
    "hopf-identity": hopf_identity,
    "pi1-engine": pi1_engine,
    "protoadditivity": protoadditivity,
    "lemmas": lemmas,
    "fgab-numerics": fgab_numerics,
    "corpus-counts": corpus_counts,
}


# ---------------------------------------------------------------------------
# replay


def _alg(w, key="tables"):
    return finalg.parse_algebra(w[key])[0]


def _sub(A, elems):
    return finalg.subobject(A, elems)


def replay(w):
    """Re-run the single check a witness describes; True if it still fails."""
    check = w["check"]
    if "fgab" in w and check.startswith("axiom"):
        return not _replay_fgab_axiom(w)
    if check.startswith("axiom"):
        return not _replay_axiom(w)
    if check.startswith("part"):
        return not _replay_join_closure(w)
    if check in ("normal=F-central", "normal=B-central", "two-routes", "groupoid",
                 "identity", "denominator-routes", "birkhoff-case"):
        return not _replay_surjection(w)
    if check == "cube":
        A = _alg(w)
        _, f = finalg.quotient(A, _sub(A, w["N"]))
        return not hopf.cube_lemma_check(f, _sub(f.cod, w["U"]), _sub(f.cod, w["V"]))["ok"]
    if check == "unit-factorisation":
        A = _alg(w)
        _, f = finalg.quotient(A, _sub(A, w["N"]))
        r = hopf.unit_factorisation_check(reflect.get_reflector(w["reflector"]), f)
        return r is None or not r["ok"]
    if check in ("engine=oracle", "abtf=tf(ab)", "finite-abtf", "cyclic"):
        B = fgab.parse_fgab(w["fgab"])
        ab = hopf.pi1_fgab(B, "ab")
        if check == "engine=oracle":
            return ab != cohom.schur_multiplier(cohom.fgab_to_group(B))
        if check == "abtf=tf(ab)":
            return hopf.pi1_fgab(B, "abtf") != fgab.tf_quotient(ab)
        if check == "finite-abtf":
            return not hopf.pi1_fgab(B, "abtf").is_trivial
        return not ab.is_trivial
    if check == "snf":
        return not snf_ok(w["matrix"])
    if check == "presentation" or check.startswith("pi1-"):
        g = len(w["relations"][0]) if w["relations"] else None
        if g is None:
            return False
        B1 = fgab.from_presentation(w["relations"], g)
        B2 = fgab.from_presentation(w["paired"], g)
        if check == "presentation":
            return B1 != B2
        c = check.split("-", 1)[1]
        return hopf.pi1_fgab(B1, c) != hopf.pi1_fgab(B2, c)
    raise ValueError(f"no replay for check {check!r}")


def _replay_axiom(w):
    R = reflect.get_reflector(w["reflector"])
    A = _alg(w)
    c = w["check"]
    if c == "axiom3":
        C = _alg(w, "codomain")
        f = finalg.Morphism(A, C, np.asarray(w["map"]))
        K = _sub(C, w["K"])
        return closure.close(R, finalg.preimage(f, K)) <= finalg.preimage(f, closure.close(R, K))
    K = _sub(A, w["K"])
    if c == "axiom1":
        return K <= closure.close(R, K)
    if c == "axiom2":
        return closure.close(R, K) <= closure.close(R, _sub(A, w["L"]))
    if c == "axiom4":
        cK = closure.close(R, K)
        return closure.close(R, cK) == cK
    if c == "axiom5":
        B, g = finalg.quotient(A, _sub(A, w["N"]))
        K = _sub(B, w["K"])
        return closure.close(R, finalg.preimage(g, K)) == finalg.preimage(g, closure.close(R, K))
    raise ValueError(c)


def _fgab_sub(G, rows):
    return fgab.subgroup(G, rows)


def _replay_fgab_axiom(w):
    R = reflect.get_reflector(w["reflector"])
    G = fgab.parse_fgab(w["fgab"])
    K = _fgab_sub(G, w["K"])
    cK = closure.close(R, K)
    c = w["check"]
    if c == "axiom1":
        return K <= cK
    if c == "axiom2":
        return cK <= closure.close(R, _fgab_sub(G, w["L"]))
    if c == "axiom4":
        return closure.close(R, cK) == cK
    if c == "axiom3":
        H = fgab.parse_fgab(w["dom"])
        f = fgab.FgAbMap(H, G, w["map"])
        return closure.close(R, fgab.preimage(f, K)) <= fgab.preimage(f, cK)
    if c == "axiom5":
        g = fgab.quotient_map(G, _fgab_sub(G, w["S"]))
        K2 = fgab.image(g, K)
        return closure.close(R, fgab.preimage(g, K2)) == fgab.preimage(g, closure.close(R, K2))
    raise ValueError(c)


def _replay_join_closure(w):
    R = reflect.get_reflector(w["reflector"])
    A = _alg(w)
    K = _sub(A, w["K"])
    z = closure.close_zero(R, A)
    cK = closure.close(R, K)
    if w["check"] == "part1":
        return cK == closure.close(R, finalg.join(K, z))
    if w["check"] == "part2":
        return finalg.join(K, z) == cK
    L = _sub(A, w["L"])
    return closure.close(R, finalg.join(K, L)) == finalg.join(cK, closure.close(R, L))


def _replay_surjection(w):
    G = reflect.get_reflector(w["adjunction"])
    A = _alg(w)
    _, f = finalg.quotient(A, _sub(A, w["N"]))
    c = w["check"]
    if c == "normal=F-central":
        return galois.is_normal_ext(G, f) == galois.is_F_central(G, f)
    if c == "normal=B-central":
        return galois.is_normal_ext(G, f) == galois.is_B_central(G.inner, f)
    try:
        if c == "two-routes":
            galois.galois_group(G, f)
            return True
        if c == "groupoid":
            galois.galois_groupoid(G, f)
            return True
    except InternalMismatch:
        return False
    if c == "identity":
        return hopf.hopf_identity_check(G, f)["ok"]
    if c == "denominator-routes":
        return tuple(hopf.outer_closure_denominator(G, f)) == \
            tuple(hopf.hopf_rhs(G, f).denominator)
    return finalg.is_isomorphic(hopf.birkhoff_formula(G.inner, f), hopf.hopf_rhs(G, f).value)


def dumps(obj):
    """Deterministic JSON."""
    return json.dumps(obj, sort_keys=True, indent=2)
