"""Random signatures, terms and order configurations for tests and self-checks."""

from __future__ import annotations

import random

from .orders import OrderConfig, SumWeight
from .terms import App, Signature, Term, Var

SYMBOL_NAMES = ("f", "g", "h", "a", "b")
VAR_NAMES = ("x", "y", "z")


def random_signature(rng: random.Random, max_symbols: int = 5, max_arity: int = 3) -> Signature:
    """At least one constant, so every depth budget can be met."""
    k = rng.randint(1, max_symbols)
    names = rng.sample(SYMBOL_NAMES, k)
    sig = Signature()
    sig.add(names[0], 0)
    for name in names[1:]:
        sig.add(name, rng.randint(0, max_arity))
    return sig


def random_term(rng: random.Random, sig: Signature, var_names=VAR_NAMES,
                max_depth: int = 6, max_size: int | None = None) -> Term:
    """Arity-correct random term of depth at most ``max_depth``.

    With ``max_size``, subterms stop branching once the budget is spent.
    """
    constants = [f for f, n in sig.items() if n == 0]
    funs = [f for f, n in sig.items() if n > 0]
    budget = [max_size if max_size is not None else float("inf")]

    def leaf():
        if var_names and (not constants or rng.random() < 0.6):
            return Var(rng.choice(list(var_names)))
        return App(rng.choice(constants), ())

    def build(depth):
        budget[0] -= 1
        if depth <= 1 or not funs or rng.random() < 0.3:
            return leaf()
        f = rng.choice(funs)
        n = sig.arity(f)
        if budget[0] < n:
            return leaf()
        budget[0] -= n  # reserve one node per argument
        args = []
        for _ in range(n):
            budget[0] += 1
            args.append(build(depth - 1))
        return App(f, args)

    return build(max_depth)


def random_config(rng: random.Random, sig: Signature, kind: str | None = None) -> OrderConfig:
    kind = kind or rng.choice(["rpo", "sum"])
    ranks = {f: rng.randrange(len(sig) + 1) for f in sig}
    if kind == "rpo":
        return OrderConfig.rpo(ranks)
    if kind == "trivial":
        return OrderConfig.wpo(ranks)
    w0 = rng.randrange(1, 3)
    # constants no lighter than a variable, else strictness breaks under substitution
    weights = {f: rng.randrange(w0, w0 + 2) if n == 0 else rng.randrange(3)
               for f, n in sig.items()}
    return OrderConfig.wpo(ranks, SumWeight(w0, weights, w0))
