import itertools

import pytest
from hypothesis import given, strategies as st

from strategies import SIG, VARS, terms
from wpo.orders import (GE, GT, NONE, CompareResult, ContractError, OrderConfig, OrderKind,
                        Precedence, SumWeight, Trivial, base_compare, lex_ext, prec_gt,
                        term_weight)
from wpo.randterms import random_term
from wpo.terms import App, Var, chain, subterm_occurrences

x, y = Var("x"), Var("y")


def f(*a):
    return App("f", a)


def test_prec_gt_examples():
    p = Precedence({"f": 2, "g": 1})
    assert prec_gt(p, "f", "g")
    assert not prec_gt(p, "g", "f")
    assert not prec_gt(p, "f", "f")
    assert prec_gt(p, "g", "unmapped")


def test_prec_is_strict_total_order_on_ranks():
    p = Precedence({"a": 0, "b": 1, "c": 1, "d": 3})
    syms = "abcd"
    for a, b, c in itertools.product(syms, repeat=3):
        assert not prec_gt(p, a, a)
        if prec_gt(p, a, b) and prec_gt(p, b, c):
            assert prec_gt(p, a, c)
        # embedded in the total order of ranks
        assert prec_gt(p, a, b) == (p.rank(a) > p.rank(b))


@pytest.mark.parametrize("bad", [{"f": -1}, {"f": 1.5}, {"f": True}])
def test_precedence_rejects_non_naturals(bad):
    with pytest.raises(ValueError):
        Precedence(bad)


def test_compare_result_invariant():
    with pytest.raises(ValueError):
        CompareResult(True, False)
    assert str(GT) == "strict=true nonstrict=true"
    assert GE == (False, True)


def test_term_weight_examples():
    b = SumWeight(1, {"f": 1})
    assert term_weight(b, f(x)) == 2
    assert term_weight(b, f(f(x))) == 3
    assert term_weight(SumWeight(2, {"a": 0}), App("a")) == 0
    with pytest.raises(ContractError):
        term_weight(Trivial(), x)


def test_term_weight_deep():
    assert term_weight(SumWeight(1, {"g": 2}), chain(["g"] * 50000, x)) == 100001


def test_base_compare_examples():
    assert base_compare(Trivial(), f(x), y) == GE
    b = SumWeight(1, {"f": 1})
    assert base_compare(b, f(x), x) == GT
    assert base_compare(b, x, y) == NONE
    assert base_compare(b, x, f(x)) == NONE
    assert base_compare(b, f(x, y), f(y, x)) == GE


def test_order_config_invariant():
    with pytest.raises(ContractError):
        OrderConfig(Precedence(), SumWeight(), OrderKind.RPO)
    assert OrderConfig.rpo({"f": 1}).base == Trivial()


def test_lex_ext_examples():
    calls = []

    def cmp(s, t):
        calls.append((s, t))
        return {("a", "b"): GT, ("a", "a"): GE}.get((s, t), NONE)

    assert lex_ext(cmp, [], []) == GE
    assert lex_ext(cmp, ["a", "z"], ["b", "q"]) == GT
    assert calls == [("a", "b")]  # nothing after the strict position
    assert lex_ext(cmp, ["a", "a"], ["a", "b"]) == GT
    assert lex_ext(cmp, ["a", "a"], ["a", "a"]) == GE
    assert lex_ext(cmp, ["a", "b"], ["a", "a"]) == NONE
    with pytest.raises(ContractError):
        lex_ext(cmp, ["a"], [])


@given(st.lists(st.sampled_from([GT, GE, NONE]), max_size=6))
def test_lex_ext_matches_definition(pointwise):
    """strict iff some position is strict after a nonstrict prefix; nonstrict also if all are."""
    n = len(pointwise)
    got = lex_ext(lambda i, _: pointwise[i], range(n), range(n))
    strict = any(pointwise[i].strict and all(r.nonstrict for r in pointwise[:i])
                 for i in range(n))
    nonstrict = strict or all(r.nonstrict for r in pointwise)
    assert got == (strict, nonstrict)


def _sum_weight_samples(rng, k):
    for _ in range(k):
        w0 = rng.randint(1, 2)
        weights = {f: rng.randint(w0, w0 + 2) if n == 0 else rng.randint(0, 2)
                   for f, n in SIG.items()}
        b = SumWeight(w0, weights, w0)
        yield b, [random_term(rng, SIG, VARS, 4) for _ in range(3)]


def test_sum_weight_laws(rng):
    """Preorder, transitivity, compatibility, subterm condition on 600 sampled triples."""
    checked = 0
    for b, (s, t, u) in _sum_weight_samples(rng, 600):
        st_, tu, su = b.compare(s, t), b.compare(t, u), b.compare(s, u)
        for r in (st_, tu, su):
            assert r.nonstrict or not r.strict
        assert b.compare(s, s) == GE
        if st_.nonstrict and tu.nonstrict:
            assert su.nonstrict
        if st_.strict and tu.strict:
            assert su.strict
        if (st_.nonstrict and tu.strict) or (st_.strict and tu.nonstrict):
            assert su.strict
        for sub in subterm_occurrences(s):
            assert b.compare(s, sub).nonstrict
        checked += 1
    assert checked == 600


def test_sum_weight_is_stable_under_substitution(rng):
    from wpo.terms import substitute
    for b, (s, t, u) in _sum_weight_samples(rng, 500):
        r = b.compare(s, t)
        sigma = {"x": u, "y": random_term(rng, SIG, VARS, 3)}
        r2 = b.compare(substitute(s, sigma), substitute(t, sigma))
        assert (not r.strict or r2.strict) and (not r.nonstrict or r2.nonstrict)


@given(terms(), terms())
def test_trivial_is_total(s, t):
    assert Trivial().compare(s, t) == GE
