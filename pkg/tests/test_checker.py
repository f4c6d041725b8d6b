import pytest

from wpo.bench import gen_example1, gen_family, shipped_rpo_config, shipped_wpo_config
from wpo.checker import Engine, OrientationTimeout, certify, orient_trs
from wpo.orders import OrderConfig, SumWeight
from wpo.parser import parse_trs
from wpo.terms import Rule, Signature, Trs

EMPTY = Trs(Signature(), frozenset(), ())
SUM = OrderConfig.wpo({"f": 2, "g": 1}, SumWeight(1, {"f": 1, "g": 1}))


def test_empty_trs():
    assert orient_trs(SUM, EMPTY).certified
    assert certify(SUM, EMPTY)


def test_duplicating_rule_fails():
    trs = parse_trs("(VAR x)(RULES f(x) -> g(x,x))")
    rep = orient_trs(SUM, trs)
    assert not rep.certified and not rep.rules[0].strict and not rep.rules[0].nonstrict


def test_variable_lhs_fails():
    trs = parse_trs("(VAR x)(RULES x -> f(x))")
    assert not certify(OrderConfig.rpo({"f": 1}), trs)


@pytest.mark.parametrize("cfg", [shipped_rpo_config(), shipped_wpo_config()])
def test_r10_certified(cfg):
    assert certify(cfg, gen_family(10, 0))


@pytest.mark.parametrize("seed", range(4))
def test_engines_agree_on_small_families(seed):
    trs = gen_family(8, seed)
    for cfg in (shipped_rpo_config(), shipped_wpo_config()):
        naive = orient_trs(cfg, trs, Engine.NAIVE)
        memo = orient_trs(cfg, trs, Engine.MEMOIZED)
        assert [(v.strict, v.nonstrict) for v in naive.rules] == \
               [(v.strict, v.nonstrict) for v in memo.rules]
        assert naive.certified and memo.certified


def test_certified_is_monotone_under_rule_removal():
    trs = parse_trs("(VAR x)(RULES f(x) -> g(x) g(x) -> f(x) f(g(x)) -> x)")
    cfg = OrderConfig.rpo({"f": 2, "g": 1})
    full = orient_trs(cfg, trs).certified
    for k in range(len(trs.rules)):
        sub = Trs(trs.signature, trs.variables, trs.rules[:k] + trs.rules[k + 1:])
        assert orient_trs(cfg, sub).certified >= full
    assert orient_trs(cfg, Trs(trs.signature, trs.variables, trs.rules[:1])).certified


def test_report_counts_and_formats():
    trs = parse_trs("(VAR x)(RULES f(x) -> g(x) g(x) -> f(x))")
    rep = orient_trs(OrderConfig.rpo({"f": 2, "g": 1}), trs)
    assert [v.strict for v in rep.rules] == [True, False]
    assert rep.total_calls == sum(v.main_calls for v in rep.rules) > 0
    text = rep.to_text()
    assert "FAIL [2] g(x) -> f(x)" in text and text.endswith("NOT CERTIFIED: 1/2 rules strictly oriented (memoized engine)")
    assert rep.to_csv().splitlines()[0] == "rule,lhs,rhs,strict,nonstrict,calls,wall_ns"
    assert orient_trs(OrderConfig.rpo({"f": 2, "g": 1}), trs, instrumented=False).total_calls == 0


def test_timeout():
    s, t = gen_example1(40)
    trs = Trs(Signature({"f": 1}), frozenset({"x"}), (Rule(s, t),))
    with pytest.raises(OrientationTimeout):
        orient_trs(OrderConfig.wpo({}), trs, Engine.NAIVE, timeout=0.05)
