import json

import pytest

from catgalois import suites
from catgalois.report import SuiteReport


def test_report_merge_and_order():
    a, b = SuiteReport("s"), SuiteReport("s")
    a.check("x", True)
    b.check("x", False, {"k": 2})
    a.check("x", False, {"k": 1})
    a.merge(b)
    d = a.to_dict()
    assert d["checked"] == {"x": 3} and not d["ok"]
    assert [v["k"] for v in d["violations"]] == [1, 2]
    assert "2 violations" in a.summary()


def test_worker_count_does_not_change_report():
    one = suites.closure_axioms("grp", max_size=5, jobs=1)
    two = suites.closure_axioms("grp", max_size=5, jobs=2)
    assert suites.dumps(one.to_dict()) == suites.dumps(two.to_dict())


@pytest.mark.parametrize("name,kw", [
    ("join-closure", {"name": "red", "max_size": 4}),
    ("normal-central", {"adj": "grp+id", "max_size": 5}),
    ("hopf-identity", {"adj": "ab+id", "max_size": 8}),
    ("galois-double-path", {"max_size": 6}),
    ("pi1-engine", {"max_order": 8}),
    ("lemmas", {"count": 40}),
    ("fgab-numerics", {"snf_count": 50, "pres_count": 20}),
    ("corpus-counts", {}),
])
def test_small_suites_clean(name, kw):
    rep = suites.SUITES[name](**kw)
    assert rep.ok, rep.violations[:2]
    json.loads(suites.dumps(rep.to_dict()))


def test_red_strict_witness_reported():
    rep = suites.join_closure("red", max_size=4)
    assert {"integers": {"ideal": 4, "join": 4, "closure": 2}} in rep.info["strict"]


def test_replay_kinds_do_not_reproduce_passing_checks():
    from catgalois import corpus, finalg


    A = corpus.quaternion_group()
    w = {"tables": finalg.dump_algebra(A), "N": [0, 2], "adjunction": "ab+id"}
    for check in ("normal=F-central", "normal=B-central", "two-routes", "identity",
                  "denominator-routes", "birkhoff-case"):
        assert suites.replay({**w, "check": check}) is False
    assert suites.replay({"check": "snf", "matrix": [[2, 4], [6, 8]]}) is False
    assert suites.replay({"check": "engine=oracle", "fgab": "2,2"}) is False


def test_replay_unknown_check():
    with pytest.raises(ValueError):
        suites.replay({"check": "nope"})
