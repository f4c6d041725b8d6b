"""Memoized weighted path order.

Both terms are indexed first (see :mod:`wpo.indexing`); the memory then maps
pairs of node indices ``(i, j)`` to the comparison result of the two
subterms.  Every pair of subterm occurrences is evaluated by :func:`wpo_main`
at most once, so one comparison of ``s`` and ``t`` costs at most
``size(s) * size(t)`` main evaluations.

Memoized functions take a memory and an input and return ``(result, memory)``.
The memory is a plain ``dict``; it is updated in place and handed back, and a
caller must keep using the returned one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

from ._stack import call_deep
from .indexing import IndexedTerm, ReverseIndex, index_term
from .orders import (GE, GT, NONE, CompareResult, ContractError, OrderConfig, Precedence,
                     Trivial)
from .reference import ComparisonTimeout, _make_naive
from .terms import Term

__all__ = [
    "Memory", "MemoStats", "MemoBoundViolation", "MemoryValidator",
    "exists_mem", "forall_mem", "lex_ext_mem",
    "wpo_mem", "wpo_main", "wpo_mem_impl", "wpo_mem_impl_counted", "rpo_mem_impl",
    "check_valid_memory", "comparison_observers",
]

Memory = dict  # (left index, right index) -> CompareResult

A = TypeVar("A")
B = TypeVar("B")
C = TypeVar("C")
M = TypeVar("M")

_CLOCK_EVERY = 0x3FF

# Called as fn(s, t, stats) after every instrumented top-level comparison.
comparison_observers: list[Callable] = []


@dataclass
class MemoStats:
    main_calls: int = 0
    lookups: int = 0
    hits: int = 0


class MemoBoundViolation(AssertionError):
    """More main evaluations than pairs of subterm occurrences; cannot happen."""


# ----------------------------------------------------------------------------
# Memoized combinators

def exists_mem(convert: Callable[[A], B], impl: Callable[[M, B], tuple[C, M]],
               project: Callable[[C], bool], mem: M, xs: Iterable[A]) -> tuple[bool, M]:
    for x in xs:
        r, mem = impl(mem, convert(x))
        if project(r):
            return True, mem
    return False, mem


def forall_mem(convert: Callable[[A], B], impl: Callable[[M, B], tuple[C, M]],
               project: Callable[[C], bool], mem: M, xs: Iterable[A]) -> tuple[bool, M]:
    for x in xs:
        r, mem = impl(mem, convert(x))
        if not project(r):
            return False, mem
    return True, mem


def lex_ext_mem(impl, mem, ss: Sequence, ts: Sequence) -> tuple[CompareResult, Memory]:
    """Lexicographic extension threading the memory through ``impl(mem, (s_i, t_i))``."""
    if len(ss) != len(ts):
        raise ContractError(f"lex_ext_mem on lists of length {len(ss)} and {len(ts)}")
    for pair in zip(ss, ts):
        r, mem = impl(mem, pair)
        if r.strict:
            return GT, mem
        if not r.nonstrict:
            return NONE, mem
    return GE, mem


def _strict(r):
    return r.strict


def _nonstrict(r):
    return r.nonstrict


# ----------------------------------------------------------------------------
# The engine

class _Engine:
    """``mem`` and ``main`` of one order configuration.

    The plain engine has no counters.  The instrumented one counts lookups,
    hits and main evaluations, honours a deadline, and calls ``after_mem``
    with the memory after every return of ``mem``.
    """

    def __init__(self, cfg: OrderConfig):
        self.cfg = cfg
        self.ranks = cfg.precedence.ranks
        self.base = None if isinstance(cfg.base, Trivial) else cfg.base.compare
        self.recurse = self.mem

    def mem(self, d: Memory, pair) -> tuple[CompareResult, Memory]:
        s, t = pair
        key = (s.index, t.index)
        r = d.get(key)
        if r is not None:
            return r, d
        r, d = self.main(d, s, t)
        d[key] = r
        return r, d

    def main(self, d: Memory, s: IndexedTerm, t: IndexedTerm) -> tuple[CompareResult, Memory]:
        if self.base is not None:
            b = self.base(s.stored, t.stored)
            if b.strict:
                return GT, d
            if not b.nonstrict:
                return NONE, d
        recurse = self.recurse
        if not s.is_var:
            found, d = exists_mem(lambda si: (si, t), recurse, _nonstrict, d, s.args)
            if found:
                return GT, d
        if t.is_var:
            return (GE if s.is_var and s.label == t.label else NONE), d
        if s.is_var:
            return NONE, d
        ranks = self.ranks
        bigger = ranks.get(s.label, 0) > ranks.get(t.label, 0)
        if not bigger and not (s.label == t.label and len(s.args) == len(t.args)):
            return NONE, d
        ok, d = forall_mem(lambda tj: (s, tj), recurse, _strict, d, t.args)
        if not ok:
            return NONE, d
        if bigger:
            return GT, d
        return lex_ext_mem(recurse, d, s.args, t.args)


class _CountingEngine(_Engine):
    def __init__(self, cfg: OrderConfig, stats: MemoStats, deadline: float | None = None,
                 after_mem: Callable[[Memory], None] | None = None):
        super().__init__(cfg)
        self.stats = stats
        self.deadline = deadline
        self.after_mem = after_mem

    def mem(self, d, pair):
        s, t = pair
        key = (s.index, t.index)
        stats = self.stats
        stats.lookups += 1
        r = d.get(key)
        if r is not None:
            stats.hits += 1
        else:
            stats.main_calls += 1
            if (self.deadline is not None and not stats.main_calls & _CLOCK_EVERY
                    and time.monotonic() > self.deadline):
                raise ComparisonTimeout(stats.main_calls)
            r, d = self.main(d, s, t)
            d[key] = r
        if self.after_mem is not None:
            self.after_mem(d)
        return r, d


def wpo_mem(cfg: OrderConfig, mem: Memory, s: IndexedTerm, t: IndexedTerm, *,
            stats: MemoStats | None = None,
            after_mem: Callable[[Memory], None] | None = None) -> tuple[CompareResult, Memory]:
    """Look up ``(index s, index t)``; on a miss evaluate :func:`wpo_main` and store it.

    ``s`` and ``t`` must be nodes of the two indexed top-level terms whose
    pair the memory belongs to.
    """
    eng = _Engine(cfg) if stats is None and after_mem is None else \
        _CountingEngine(cfg, stats if stats is not None else MemoStats(), None, after_mem)
    return eng.mem(mem, (s, t))


def wpo_main(cfg: OrderConfig, mem: Memory, s: IndexedTerm, t: IndexedTerm, *,
             stats: MemoStats | None = None) -> tuple[CompareResult, Memory]:
    """One unmemoized evaluation step; all recursion goes through :func:`wpo_mem`."""
    if stats is None:
        return _Engine(cfg).main(mem, s, t)
    stats.main_calls += 1
    return _CountingEngine(cfg, stats).main(mem, s, t)


def wpo_mem_impl(cfg: OrderConfig, s: Term, t: Term) -> CompareResult:
    """Compare two plain terms with a fresh memory."""
    eng = _Engine(cfg)
    si, ti = index_term(s), index_term(t)
    r, _ = call_deep(s.depth + t.depth, eng.mem, {}, (si, ti))
    return r


def wpo_mem_impl_counted(cfg: OrderConfig, s: Term, t: Term, *,
                         timeout: float | None = None,
                         after_mem: Callable[[Memory], None] | None = None,
                         ) -> tuple[CompareResult, MemoStats, Memory]:
    """Instrumented :func:`wpo_mem_impl`; also returns the counters and final memory."""
    stats = MemoStats()
    deadline = None if timeout is None else time.monotonic() + timeout
    eng = _CountingEngine(cfg, stats, deadline, after_mem)
    si, ti = index_term(s), index_term(t)
    r, mem = call_deep(s.depth + t.depth, eng.mem, {}, (si, ti))
    if stats.main_calls > s.size * t.size:
        raise MemoBoundViolation(
            f"{stats.main_calls} main evaluations for sizes {s.size} x {t.size}")
    for fn in comparison_observers:
        fn(s, t, stats)
    return r, stats, mem


def rpo_mem_impl(prec: Precedence, s: Term, t: Term) -> CompareResult:
    return wpo_mem_impl(OrderConfig.rpo(prec), s, t)


# ----------------------------------------------------------------------------
# Memory validity

class MemoryValidator:
    """Checks memories of one top-level pair against the naive engine.

    Naive results are computed once per key and reused, so checking after
    every step of a run stays affordable.
    """

    def __init__(self, cfg: OrderConfig, rli: ReverseIndex, rri: ReverseIndex):
        self.rli = rli
        self.rri = rri
        self._naive = _make_naive(cfg)
        self._truth: dict[tuple[int, int], CompareResult] = {}

    def expected(self, key) -> CompareResult:
        r = self._truth.get(key)
        if r is None:
            i, j = key
            s, t = self.rli[i], self.rri[j]
            r = call_deep(s.depth + t.depth, self._naive, s, t)
            self._truth[key] = r
        return r

    def bad_entries(self, mem: Memory) -> list:
        return [k for k, v in mem.items() if self.expected(k) != v]

    def __call__(self, mem: Memory) -> bool:
        return all(self.expected(k) == v for k, v in mem.items())


def check_valid_memory(cfg: OrderConfig, mem: Memory, rli: ReverseIndex, rri: ReverseIndex) -> bool:
    """Whether every entry ``(i, j) -> r`` has ``r`` equal to the naive order on ``rli[i], rri[j]``."""
    return MemoryValidator(cfg, rli, rri)(mem)
