import pytest
from hypothesis import given, settings

from strategies import configs, terms
from wpo.bench import example1_config, gen_example1
from wpo.orders import GE, GT, NONE, OrderConfig, SumWeight
from wpo.reference import (CallBudgetExceeded, ComparisonTimeout, naive_call_count,
                           wpo_naive, wpo_naive_counted)
from wpo.terms import App, Var, chain, replace_at, iter_positions, substitute, subterm_occurrences

x, y = Var("x"), Var("y")
RPO_FG = OrderConfig.rpo({"f": 2, "g": 1})


def test_examples():
    assert wpo_naive(RPO_FG, App("f", (x,)), App("g", (x,))) == GT
    assert wpo_naive(OrderConfig.rpo({"f": 7}), chain("fff", x), chain("fff", x)) == GE
    assert wpo_naive(RPO_FG, x, x) == GE
    assert wpo_naive(OrderConfig.wpo({}, SumWeight(1, {"f": 1})), App("f", (x,)), x) == GT


def test_single_call_for_variables():
    r, st = wpo_naive_counted(RPO_FG, x, x)
    assert r == GE and st.calls == 1


def test_variables():
    assert wpo_naive(RPO_FG, x, y) == NONE
    assert wpo_naive(RPO_FG, App("g", (x,)), x) == GT
    assert wpo_naive(RPO_FG, x, App("g", (x,))) == NONE


def test_example1_first_counts():
    """One extra f roughly quadruples the work; the first values are small enough to count by hand."""
    counts = [wpo_naive_counted(example1_config(), *gen_example1(n))[1].calls for n in range(4)]
    assert counts == [5, 19, 69, 251]


def test_example1_doubling_small():
    counts = [wpo_naive_counted(example1_config(), *gen_example1(n))[1].calls for n in range(1, 10)]
    assert all(b >= 2 * a for a, b in zip(counts, counts[1:]))


def test_example1_budget_lower_bound():
    """f^21(x) against itself needs at least 2^20 calls; the budget abort proves it."""
    s, t = gen_example1(20)
    with pytest.raises(CallBudgetExceeded) as e:
        wpo_naive_counted(example1_config(), s, t, max_calls=2 ** 20 - 1)
    assert e.value.calls == 2 ** 20


def test_example1_counts_closed_form():
    from math import comb
    for n in range(9):
        assert naive_call_count(example1_config(), *gen_example1(n)) == (GE, comb(2 * n + 4, n + 2) - 1)


def test_call_count_on_family_rules():
    from wpo.bench import gen_family, shipped_rpo_config, shipped_wpo_config
    for cfg in (shipped_rpo_config(), shipped_wpo_config()):
        for rule in gen_family(9, 1).rules:
            r, st = wpo_naive_counted(cfg, rule.lhs, rule.rhs)
            assert naive_call_count(cfg, rule.lhs, rule.rhs) == (r, st.calls)


@given(configs(), terms(max_depth=4), terms(max_depth=4))
def test_call_count_matches_engine(cfg, s, t):
    r, st = wpo_naive_counted(cfg, s, t)
    assert naive_call_count(cfg, s, t) == (r, st.calls)


def test_timeout():
    s, t = gen_example1(30)
    with pytest.raises(ComparisonTimeout):
        wpo_naive_counted(example1_config(), s, t, timeout=0.05)


def test_deep_terms():
    # equal chains would blow up; a chain against its variable stays linear
    s = chain(["g"] * 5000, x)
    r, st = wpo_naive_counted(OrderConfig.rpo({"g": 1}), s, x)
    assert r == GT and st.calls == 5001


@given(configs(), terms(max_depth=4), terms(max_depth=4))
def test_strict_implies_nonstrict(cfg, s, t):
    r = wpo_naive(cfg, s, t)
    assert r.nonstrict or not r.strict


@given(configs(), terms(max_depth=4))
def test_irreflexive_and_reflexive(cfg, t):
    assert wpo_naive(cfg, t, t) == GE


@given(terms(max_depth=4))
def test_subterm_property_trivial_base(t):
    cfg = OrderConfig.rpo({"f": 1})
    for sub in subterm_occurrences(t)[1:]:
        assert wpo_naive(cfg, t, sub).strict


@settings(max_examples=200)
@given(configs(), terms(max_depth=3), terms(max_depth=3), terms(max_depth=3))
def test_transitivity_and_compatibility(cfg, s, t, u):
    st_, tu, su = wpo_naive(cfg, s, t), wpo_naive(cfg, t, u), wpo_naive(cfg, s, u)
    if st_.strict and tu.strict:
        assert su.strict
    if st_.nonstrict and tu.strict:
        assert su.strict
    if st_.nonstrict and tu.nonstrict:
        assert su.nonstrict


@given(configs(), terms(max_depth=3), terms(max_depth=3), terms(max_depth=3))
def test_closure(cfg, s, t, ctx):
    if not wpo_naive(cfg, s, t).strict:
        return
    assert wpo_naive(cfg, substitute(s, {"x": ctx}), substitute(t, {"x": ctx})).strict
    for pos, _ in list(iter_positions(ctx))[:3]:
        assert wpo_naive(cfg, replace_at(ctx, pos, s), replace_at(ctx, pos, t)).strict
