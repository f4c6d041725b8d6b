"""Direct recursive evaluation of the weighted path order.

This engine recomputes every subcomparison it needs, so its running time is
exponential in the worst case.  It is kept deliberately naive: it is the
oracle the memoized engine is checked against, and the exhibit for the blowup.

Strict and nonstrict flags are computed in the same recursion.  Cases are
tried in this order:

1. the base pair is strict                    -> ``GT``
2. the base pair is not even nonstrict        -> ``NONE``
3. some argument ``s_i`` of ``s`` has ``s_i >= t``  -> ``GT``
4. ``t`` is a variable: ``GE`` iff ``s`` is the same variable
5. ``s`` is a variable                        -> ``NONE``
6. neither ``f > g`` nor ``f = g`` with equal arity -> ``NONE``
7. ``s > t_j`` for every argument of ``t``, else ``NONE``
8. ``f > g`` gives ``GT``; otherwise the lexicographic comparison of the
   argument lists decides.

Step 6 only skips work whose outcome cannot matter, so it changes call
counts but never results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ._stack import call_deep
from .indexing import index_term
from .orders import GE, GT, NONE, CompareResult, OrderConfig, Trivial, lex_ext
from .terms import Term

__all__ = [
    "RefStats", "CallBudgetExceeded", "ComparisonTimeout",
    "wpo_naive", "wpo_naive_counted", "naive_call_count",
]

_CLOCK_EVERY = 0x3FF


@dataclass
class RefStats:
    calls: int = 0


class CallBudgetExceeded(RuntimeError):
    def __init__(self, calls: int):
        super().__init__(f"comparison exceeded its budget after {calls} calls")
        self.calls = calls


class ComparisonTimeout(RuntimeError):
    def __init__(self, calls: int):
        super().__init__(f"comparison timed out after {calls} calls")
        self.calls = calls


def _make_naive(cfg: OrderConfig, stats: RefStats | None = None,
                max_calls: int | None = None, deadline: float | None = None):
    ranks = cfg.precedence.ranks
    base = None if isinstance(cfg.base, Trivial) else cfg.base.compare
    limit = max_calls if max_calls is not None else float("inf")
    clock = time.monotonic

    def wpo(s: Term, t: Term) -> CompareResult:
        if stats is not None:
            stats.calls += 1
            n = stats.calls
            if n > limit:
                raise CallBudgetExceeded(n)
            if deadline is not None and not n & _CLOCK_EVERY and clock() > deadline:
                raise ComparisonTimeout(n)
        if base is not None:
            b = base(s, t)
            if b.strict:
                return GT
            if not b.nonstrict:
                return NONE
        if not s.is_var:
            for si in s.args:
                if wpo(si, t).nonstrict:
                    return GT
        if t.is_var:
            return GE if s.is_var and s.name == t.name else NONE
        if s.is_var:
            return NONE
        bigger = ranks.get(s.fun, 0) > ranks.get(t.fun, 0)
        if not bigger and not (s.fun == t.fun and len(s.args) == len(t.args)):
            return NONE
        for tj in t.args:
            if not wpo(s, tj).strict:
                return NONE
        if bigger:
            return GT
        return lex_ext(wpo, s.args, t.args)

    return wpo


def wpo_naive(cfg: OrderConfig, s: Term, t: Term) -> CompareResult:
    return call_deep(s.depth + t.depth, _make_naive(cfg), s, t)


def wpo_naive_counted(cfg: OrderConfig, s: Term, t: Term, *,
                      max_calls: int | None = None,
                      timeout: float | None = None) -> tuple[CompareResult, RefStats]:
    """Like :func:`wpo_naive`, also counting every entry into the recursion.

    With ``max_calls`` the run aborts with :class:`CallBudgetExceeded` as soon
    as the count would exceed it, which is how lower bounds on the count are
    established without finishing an exponential run.  ``timeout`` (seconds)
    aborts with :class:`ComparisonTimeout`.
    """
    stats = RefStats()
    deadline = None if timeout is None else time.monotonic() + timeout
    fn = _make_naive(cfg, stats, max_calls, deadline)
    return call_deep(s.depth + t.depth, fn, s, t), stats


def naive_call_count(cfg: OrderConfig, s: Term, t: Term) -> tuple[CompareResult, int]:
    """Result and exact ``calls`` of :func:`wpo_naive_counted`, in polynomial time.

    The naive engine is pure, so the calls it makes below a pair of subterm
    occurrences depend on that pair alone.  Following the same case order and
    caching ``(result, calls)`` per pair of occurrences gives the count
    without performing the calls, which matters once the real count is far
    out of reach.
    """
    ranks = cfg.precedence.ranks
    base = None if isinstance(cfg.base, Trivial) else cfg.base.compare
    seen: dict = {}

    def count(s, t):
        key = (s.index, t.index)
        hit = seen.get(key)
        if hit is not None:
            return hit
        n = 1
        r = None
        if base is not None:
            b = base(s.stored, t.stored)
            if b.strict:
                r = GT
            elif not b.nonstrict:
                r = NONE
        if r is None and not s.is_var:
            for si in s.args:
                ri, ci = count(si, t)
                n += ci
                if ri.nonstrict:
                    r = GT
                    break
        if r is None and t.is_var:
            r = GE if s.is_var and s.label == t.label else NONE
        if r is None and s.is_var:
            r = NONE
        if r is None:
            bigger = ranks.get(s.label, 0) > ranks.get(t.label, 0)
            if not bigger and not (s.label == t.label and len(s.args) == len(t.args)):
                r = NONE
        if r is None:
            for tj in t.args:
                rj, cj = count(s, tj)
                n += cj
                if not rj.strict:
                    r = NONE
                    break
        if r is None and bigger:
            r = GT
        if r is None:
            r = GE
            for si, ti in zip(s.args, t.args):
                ri, ci = count(si, ti)
                n += ci
                if ri.strict:
                    r = GT
                    break
                if not ri.nonstrict:
                    r = NONE
                    break
        seen[key] = (r, n)
        return r, n

    return call_deep(s.depth + t.depth, count, index_term(s), index_term(t))
