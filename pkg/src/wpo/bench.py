"""Benchmark family and scaling runs.

``R_n`` has twelve rules: the eleven fixed rules in :data:`FILLER_RULES` and
one rule parametrized by ``n``::

    f(term(n), g(s(y))) -> f(term'(n), s(s(g(y))))

``term(n)`` and ``term'(n)`` are chains of ``n`` unary ``g``/``h`` symbols over
``x``, each symbol drawn from a seeded 64-bit LCG.  The two drawn chains are
swapped when needed so that the left one is not smaller than the right one
under the shipped precedence (``g > h``); without that no lexicographic path
order can orient the rule for every draw.  For equal-length chains that
comparison has a closed form, :func:`chain_key`, so generation does not need
an order engine.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

from .checker import Engine, OrientationTimeout, orient_trs
from .memo import wpo_mem_impl_counted
from .orders import OrderConfig, SumWeight
from .parser import parse_rule
from .reference import ComparisonTimeout, wpo_naive_counted
from .terms import App, Rule, Signature, Term, Trs, Var, chain

__all__ = [
    "Lcg", "BenchRow", "CSV_COLUMNS", "FILLER_RULES", "SHIPPED_RANKS",
    "shipped_rpo_config", "shipped_wpo_config", "example1_config",
    "gen_example1", "random_chain", "chain_key", "gen_family",
    "run_scaling", "run_example1", "rows_to_csv",
]

FAMILY_VARS = ("x", "y", "z")

FILLER_RULES = (
    "f(x,0) -> x",
    "f(0,x) -> x",
    "f(s(x),y) -> s(f(x,y))",
    "g(0) -> 0",
    "h(0) -> 0",
    "g(g(x)) -> h(g(x))",
    "h(s(x)) -> s(h(x))",
    "g(s(x)) -> s(g(x))",
    "f(g(x),y) -> g(f(x,y))",
    "f(h(x),y) -> h(f(x,y))",
    "f(f(x,y),z) -> f(x,f(y,z))",
)

SHIPPED_RANKS = {"f": 5, "g": 4, "h": 3, "s": 2, "0": 1}
SHIPPED_WEIGHTS = {"f": 1, "g": 0, "h": 0, "s": 0, "0": 1}


def shipped_rpo_config() -> OrderConfig:
    return OrderConfig.rpo(SHIPPED_RANKS)


def shipped_wpo_config() -> OrderConfig:
    return OrderConfig.wpo(SHIPPED_RANKS, SumWeight(1, SHIPPED_WEIGHTS, 1))


def example1_config() -> OrderConfig:
    """Empty strict base part, total nonstrict part, as in the blowup example."""
    return OrderConfig.wpo({})


class Lcg:
    """64-bit linear congruential generator (Knuth's MMIX constants)."""

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state

    def bit(self) -> int:
        # low bits of a power-of-two LCG are weak; take the top one
        return self.next() >> 63


def gen_example1(n: int) -> tuple[Term, Term]:
    """``(f^(n+1)(x), f^(n+1)(x))``."""
    t = chain(["f"] * (n + 1), Var("x"))
    return t, t


def random_chain(rng: Lcg, n: int) -> str:
    return "".join("g" if rng.bit() else "h" for _ in range(n))


def chain_key(word: str):
    """Sort key of g/h words of one length that agrees with the path order for ``g > h``.

    Words are read outermost symbol first.  The order compares the number of
    ``g`` first and then the lengths of the ``h`` runs between them, starting
    from the innermost run.
    """
    return word.count("g"), [len(run) for run in reversed(word.split("g"))]


def family_chains(n: int, seed: int) -> tuple[str, str]:
    if n < 1:
        raise ValueError(f"R_n needs n >= 1, got {n}")
    rng = Lcg(seed)
    left, right = random_chain(rng, n), random_chain(rng, n)
    if chain_key(left) < chain_key(right):
        left, right = right, left
    return left, right


def gen_family(n: int, seed: int = 0) -> Trs:
    left, right = family_chains(n, seed)
    x, y = Var("x"), Var("y")
    lhs = App("f", (chain(left, x), App("g", (App("s", (y,)),))))
    rhs = App("f", (chain(right, x), App("s", (App("s", (App("g", (y,)),)),))))
    sig = Signature()
    rules = [parse_rule(r, FAMILY_VARS, sig) for r in FILLER_RULES]
    rules.append(Rule(lhs, rhs))
    sig.add_term(lhs)
    sig.add_term(rhs)
    return Trs(sig, frozenset(FAMILY_VARS), tuple(rules))


@dataclass
class BenchRow:
    n: int
    engine: str
    order_kind: str
    wall_ns: int
    calls: int
    certified: bool
    timed_out: bool = False


CSV_COLUMNS = [f.name for f in fields(BenchRow)]


def _named(cfgs) -> list[tuple[str, OrderConfig]]:
    if isinstance(cfgs, Mapping):
        return list(cfgs.items())
    return [(c.kind.value, c) for c in cfgs]


def run_scaling(ns: Iterable[int], engines: Sequence[Engine | str],
                cfgs: Sequence[OrderConfig] | Mapping[str, OrderConfig],
                seed: int = 0, timeout_ms: int = 600_000) -> list[BenchRow]:
    """Orient ``R_n`` for every ``n``, engine and configuration.

    A run over budget becomes a row with ``timed_out`` set and ``certified``
    false.  Rows come out ordered by ``(n, engine, config)``.
    """
    engines = [Engine(e) for e in engines]
    named = _named(cfgs)
    rows = []
    for n in ns:
        trs = gen_family(n, seed)
        for eng in engines:
            for name, cfg in named:
                start = time.perf_counter_ns()
                try:
                    rep = orient_trs(cfg, trs, eng, timeout=timeout_ms / 1000)
                except OrientationTimeout as e:
                    rows.append(BenchRow(n, eng.value, name, time.perf_counter_ns() - start,
                                         e.calls, False, True))
                    continue
                rows.append(BenchRow(n, eng.value, name, time.perf_counter_ns() - start,
                                     rep.total_calls, rep.certified))
    return rows


def run_example1(ns: Iterable[int], engines: Sequence[Engine | str],
                 cfgs: Sequence[OrderConfig] | Mapping[str, OrderConfig] = (),
                 timeout_ms: int = 600_000) -> list[BenchRow]:
    """Self-comparison of ``f^(n+1)(x)``; ``certified`` records ``s >= s``."""
    engines = [Engine(e) for e in engines]
    named = _named(cfgs or {"example1": example1_config()})
    rows = []
    for n in ns:
        s, t = gen_example1(n)
        for eng in engines:
            for name, cfg in named:
                start = time.perf_counter_ns()
                try:
                    if eng is Engine.NAIVE:
                        r, st = wpo_naive_counted(cfg, s, t, timeout=timeout_ms / 1000)
                        calls = st.calls
                    else:
                        r, mst, _ = wpo_mem_impl_counted(cfg, s, t, timeout=timeout_ms / 1000)
                        calls = mst.main_calls
                except ComparisonTimeout as e:
                    rows.append(BenchRow(n, eng.value, name, time.perf_counter_ns() - start,
                                         e.calls, False, True))
                    continue
                rows.append(BenchRow(n, eng.value, name, time.perf_counter_ns() - start,
                                     calls, r.nonstrict))
    return rows


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.n, r.engine, r.order_kind, r.wall_ns, r.calls,
                    str(r.certified).lower(), str(r.timed_out).lower()])
    return buf.getvalue()
