"""Command-line front end.

Exit codes: 0 success, 1 a violation was found, 2 usage or input error,
3 two independent computations disagreed.
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import cohom, corpus, fgab, finalg, galois, hopf, reflect, suites
from .closure import close
from .errors import CatGaloisError, InternalMismatch


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _sha(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _perm(A):
    return A.cache.get("file_perm", np.arange(A.n))


def to_internal(A, elems):
    return [int(_perm(A)[e]) for e in elems]


def to_file(A, elems):
    inv = np.argsort(_perm(A))
    return sorted(int(inv[e]) for e in elems)


def map_to_file(f):
    """A morphism's index list in file labels of both sides."""
    pd, pc = _perm(f.dom), _perm(f.cod)
    inv = np.argsort(pc)
    return [int(inv[f.map[pd[i]]]) for i in range(f.dom.n)]


def parse_elements(text):
    text = (text or "").strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"bad element list {text!r}") from None


def parse_rows(text):
    text = (text or "").strip()
    if not text:
        return []
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise UsageError(f"bad subgroup rows {text!r}") from None


def _reflector(name):
    try:
        return reflect.get_reflector(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _load_map(args, inputs):
    if getattr(args, "pres", None):
        alg, _, mor = args.pres.partition(":")
        if not mor:
            raise UsageError("--pres expects P.alg:p.mor")
        dom = finalg.load_algebra(alg)
        inputs[alg] = _sha(alg)
        inputs[mor] = _sha(mor)
        return finalg.load_morphism(mor, dom=dom)
    if not args.map:
        raise UsageError("a morphism file is required (--map)")
    dom = finalg.load_algebra(args.total) if getattr(args, "total", None) else None
    if dom is not None:
        inputs[args.total] = _sha(args.total)
    inputs[args.map] = _sha(args.map)
    return finalg.load_morphism(args.map, dom=dom)


def _surjection(f):
    if not f.is_surjective:
        raise UsageError("the map is not surjective")
    return f


# ---------------------------------------------------------------------------
# commands (each returns (exit code, result dict))


def cmd_reflect(args, inputs):
    R = _reflector(args.reflector)
    if args.fgab:
        G = fgab.parse_fgab(args.fgab)
        IG, u = R.reflect(G)
        return 0, {"reflector": R.name, "image": str(IG), "unit": [list(r) for r in u.matrix],
                   "kernel": [list(r) for r in R.unit_kernel(G).basis],
                   "member": R.membership(G)}
    A = finalg.load_algebra(args.algebra)
    inputs[args.algebra] = _sha(args.algebra)
    IA, u = R.reflect(A)
    return 0, {"reflector": R.name, "image_size": IA.n, "image_type": finalg.iso_type(IA),
               "unit": [int(u.map[_perm(A)[i]]) for i in range(A.n)],
               "kernel": to_file(A, R.unit_kernel(A).elements), "member": R.membership(A)}


def cmd_closure(args, inputs):
    R = _reflector(args.reflector)
    if args.fgab:
        G = fgab.parse_fgab(args.fgab)
        K = fgab.subgroup(G, parse_rows(args.subgroup))
        return 0, {"reflector": R.name, "group": str(G),
                   "closure": [list(r) for r in close(R, K).basis]}
    A = finalg.load_algebra(args.algebra)
    inputs[args.algebra] = _sha(args.algebra)
    K = finalg.subobject(A, to_internal(A, parse_elements(args.subobject)))
    return 0, {"reflector": R.name, "subobject": to_file(A, K.elements),
               "closure": to_file(A, close(R, K).elements)}


def cmd_relcomm(args, inputs):
    R = _reflector(args.reflector)
    f = _surjection(_load_map(args, inputs))
    return 0, {"reflector": R.name,
               "relative_commutator": to_file(f.dom, galois.relative_commutator(R, f).elements)}


def cmd_classify(args, inputs):
    G = _reflector(args.adjunction)
    f = _surjection(_load_map(args, inputs))
    out = galois.classify(G, f)
    out["relative_commutator"] = to_file(f.dom, out["relative_commutator"])
    out["adjunction"] = G.name
    return 0, out


def _ext_summary(h):
    return {"total_size": h.dom.n, "total_type": finalg.iso_type(h.dom),
            "base_size": h.cod.n, "kernel_size": finalg.kernel(h).size}


def cmd_centralize(args, inputs):
    G = _reflector(args.adjunction)
    inner, _ = galois.parts(G)
    f = _surjection(_load_map(args, inputs))
    g = galois.centralize_I1(inner, f)
    h = galois.centralize_F1(G, g)
    return 0, {"adjunction": G.name, "I1": _ext_summary(g), "F1I1": _ext_summary(h)}


def cmd_galois(args, inputs):
    G = _reflector(args.adjunction)
    p = _surjection(_load_map(args, inputs))
    gal = galois.galois_group(G, p)
    return 0, {"adjunction": G.name, "size": gal.group.n, "type": gal.iso_type,
               "witness": list(map(int, gal.witness)),
               "intersection": to_file(p.dom, gal.intersection)}


def cmd_hopf(args, inputs):
    G = _reflector(args.adjunction)
    f = _surjection(_load_map(args, inputs))
    v = hopf.hopf_rhs(G, f)
    return 0, {"adjunction": G.name, "size": v.value.n, "type": finalg.iso_type(v.value),
               "numerator": to_file(f.dom, v.numerator),
               "denominator": to_file(f.dom, v.denominator),
               "label": "formula value"}


def cmd_hopf_identity(args, inputs):
    G = _reflector(args.adjunction)
    f = _surjection(_load_map(args, inputs))
    r = hopf.hopf_identity_check(G, f)
    r["numerator"] = to_file(f.dom, r["numerator"])
    r["denominator"] = to_file(f.dom, r["denominator"])
    return (0 if r["ok"] else 1), r


def cmd_pi1(args, inputs):
    B = fgab.parse_fgab(args.fgab)
    return 0, {"group": str(B), "coeff": args.coeff, "pi1": str(hopf.pi1_fgab(B, args.coeff))}


def cmd_h2(args, inputs):
    B = finalg.load_algebra(args.group)
    inputs[args.group] = _sha(args.group)
    if args.mod:
        return 0, {"H2_mod": str(cohom.h2_mod(B, args.mod)), "mod": args.mod}
    bound = args.max_size or cohom.SCHUR_BOUND
    return 0, {"schur_multiplier": str(cohom.schur_multiplier(B, bound=bound))}


def cmd_verify(args, inputs):
    name = args.suite
    kw = {}
    if name in ("closure-axioms", "join-closure", "protoadditivity"):
        if not args.reflector:
            raise UsageError(f"{name} needs --reflector")
        _reflector(args.reflector)
        kw["name"] = args.reflector
    if name in ("closure-axioms", "join-closure"):
        kw["seed"] = args.seed
    if name == "closure-axioms":
        kw["jobs"] = args.jobs
    if name in ("normal-central", "hopf-identity"):
        adj = args.adjunction or {"rng": "crng+red", "grp": "ab+id",
                                  "loop": "grp+id"}.get(args.variety or "")
        if not adj:
            raise UsageError(f"{name} needs --adjunction or --variety")
        _reflector(adj)
        kw["adj"] = adj
    if name in ("closure-axioms", "join-closure", "protoadditivity", "normal-central",
                "hopf-identity", "galois-double-path") and args.max_size:
        kw["max_size"] = args.max_size
    if name in ("lemmas", "fgab-numerics"):
        kw["seed"] = args.seed
    rep = suites.SUITES[name](**kw)
    out = rep.to_dict()
    return (0 if rep.ok else 1), out


def cmd_corpus(args, inputs):
    paths = corpus.corpus_gen(args.seed, args.max_size, args.out)
    out = {}
    for kind, path in paths.items():
        cap = min(args.max_size or corpus.MAX_ORDER[kind], corpus.MAX_ORDER[kind])
        out[kind] = {"counts": corpus.counts_by_order(corpus.family(kind, cap), cap),
                     "file": str(path)}
    return 0, out


def cmd_replay(args, inputs):
    data = json.loads(Path(args.report).read_text(encoding="utf-8"))
    inputs[args.report] = _sha(args.report)
    viol = data.get("violations", [])
    res = [{"check": w["check"], "reproduced": suites.replay(w)} for w in viol]
    return (1 if any(r["reproduced"] for r in res) else 0), {"replayed": res}


COMMANDS = {
    "reflect": cmd_reflect, "closure": cmd_closure, "relcomm": cmd_relcomm,
    "classify-ext": cmd_classify, "centralize": cmd_centralize,
    "galois-group": cmd_galois, "hopf": cmd_hopf, "hopf-identity": cmd_hopf_identity,
    "pi1": cmd_pi1, "h2": cmd_h2, "verify": cmd_verify, "corpus": cmd_corpus,
    "replay": cmd_replay,
}


# ---------------------------------------------------------------------------
# parser and output


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=None)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="report wall time")

    p = _Parser(prog="catgalois", description="Galois theory on finite algebras")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("reflect")
    s.add_argument("--reflector", required=True)
    s.add_argument("--algebra")
    s.add_argument("--fgab")
    s = add("closure")
    s.add_argument("--reflector", required=True)
    s.add_argument("--algebra")
    s.add_argument("--subobject", default="")
    s.add_argument("--fgab")
    s.add_argument("--subgroup", default="", help="rows like '2,0;0,3'")
    for name, flag in (("relcomm", "--reflector"), ("classify-ext", "--adjunction"),
                       ("centralize", "--adjunction"), ("galois-group", "--adjunction"),
                       ("hopf", "--adjunction"), ("hopf-identity", "--adjunction")):
        s = add(name)
        s.add_argument(flag, required=True)
        s.add_argument("--map")
        s.add_argument("--total")
        if name == "hopf":
            s.add_argument("--pres")
    s = add("pi1")
    s.add_argument("--fgab", required=True)
    s.add_argument("--coeff", choices=("ab", "abtf"), default="ab")
    s = add("h2")
    s.add_argument("--group", required=True)
    s.add_argument("--mod", type=int)
    s = add("verify")
    s.add_argument("suite", choices=sorted(suites.SUITES))
    s.add_argument("--reflector")
    s.add_argument("--adjunction")
    s.add_argument("--variety", choices=("rng", "grp", "loop"))
    s = add("corpus")
    s.add_argument("action", choices=("gen",))
    s.add_argument("--out")
    s = add("replay")
    s.add_argument("report")
    return p


def _text(obj, indent=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            elif isinstance(v, str):
                lines.append(f"{indent}{k}: {v}")
            else:
                lines.append(f"{indent}{k}: {json.dumps(v, sort_keys=True)}")
    else:
        lines.append(f"{indent}{obj}")
    return "\n".join(lines)


def run(argv=None, out=sys.stdout, err=sys.stderr):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    if not args.command:
        print("error: a command is required", file=err)
        return 2
    inputs = {}
    t0 = time.perf_counter()
    try:
        if args.command in ("reflect", "closure") and not (args.algebra or args.fgab):
            raise UsageError("give --algebra or --fgab")
        code, result = COMMANDS[args.command](args, inputs)
    except InternalMismatch as exc:
        print(f"internal mismatch: {exc}", file=err)
        return 3
    except (UsageError, CatGaloisError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    report = {"argv": list(sys.argv[1:] if argv is None else argv),
              "inputs": dict(sorted(inputs.items())), "results": result}
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2), file=out)
    else:
        print(_text(result), file=out)
        if args.timing:
            print(f"time: {report['timing_s']} s", file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
