import os

import pytest

import limlearn_py as ll


def test_term_round_trip():
    t = ll.parse_term("patch(finset(1),{2})")
    assert t.canonical == "patch(finset(1),{2})"
    assert t.eval(1) and t.eval(2) and not t.eval(0)
    assert ll.semantic_eq(t, ll.parse_term("finset(1,2)"))
    assert t != ll.parse_term("finset(1,2)")


def test_unknown_names_raise():
    with pytest.raises(ll.ConfigError):
        ll.learner("no_such_learner")
    with pytest.raises(ValueError):
        ll.check_restriction("Frobnicate", [ll.parse_term("finset()")], [], ll.finite_language([]))


def test_separating_learner_converges():
    h = ll.learner("sep_learner")
    assert h.kind == "Sd"
    target = ll.finite_language([0, 3])
    res = ll.run(h, ll.Text.canonical(target), 6)
    assert res["status"] == "ok"
    assert [t.canonical for t in res["terms"][:3]] == ["famidx(finz,0)", "finset(0)", "finset(0,3)"]
    v = ll.check_convergence("Ex", res["terms"], res["prefix"], target)
    assert v.outcome == "CONVERGED"
    assert v.n0 == 2


def test_restriction_violation_witness():
    terms = [ll.parse_term("finset(1)"), ll.parse_term("finset()")]
    v = ll.check_restriction("SMon", terms, [None], ll.finite_language([1]))
    assert v.outcome == "VIOLATION"
    assert v.indices == [0, 1]
    assert v.witness == 1
    assert v.render() == "SMon t0 VIOLATION@(0,1) witness=1 B=64 H=1"


def test_transform_and_locking():
    h = ll.apply_transform("star", ll.learner("sep_learner"))
    assert h.kind == "G"
    assert ll.find_locking(h, ll.finite_language([0, 3])) == [0, 3]
    patched = ll.apply_transform("make_consistent_patch", ll.learner("chain_lag"))
    assert patched.star([2, 0]).eval(2)


def test_falsifier_certificate():
    cert = ll.falsify_it(ll.learner("it_count10"))
    assert cert is not None
    assert cert["verified"]
    assert cert["digest1"] == cert["digest2"]
    assert cert["target1"] != cert["target2"]
    assert ll.falsify_it(ll.learner("it_injective"), 30) is None


def test_cli_exit_codes():
    code, out, _ = ll.run_cli(["catalog"])
    assert code == 0 and "sep_learner" in out
    assert ll.run_cli(["frobnicate"])[0] == 2
    fixtures = os.environ.get("LIMLEARN_FIXTURE_DIR")
    if fixtures:
        assert ll.run_cli(["run", os.path.join(fixtures, "pass.spec")])[0] == 0
        assert ll.run_cli(["run", os.path.join(fixtures, "fail.spec")])[0] == 1
