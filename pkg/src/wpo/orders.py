"""Precedences, base reduction pairs and the lexicographic extension.

Every comparison in the package returns a :class:`CompareResult`, the pair of
flags ``(strict, nonstrict)``.  Only three values are legal, and they are
available as the constants ``GT``, ``GE`` and ``NONE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Sequence

from .terms import Term, var_multiset


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class _Flags(NamedTuple):
    strict: bool
    nonstrict: bool


class CompareResult(_Flags):
    __slots__ = ()

    def __new__(cls, strict: bool, nonstrict: bool):
        if strict and not nonstrict:
            raise ValueError("a strict result must also be nonstrict")
        return super().__new__(cls, bool(strict), bool(nonstrict))

    def __str__(self):
        return f"strict={str(self.strict).lower()} nonstrict={str(self.nonstrict).lower()}"


GT = CompareResult(True, True)
GE = CompareResult(False, True)
NONE = CompareResult(False, False)


def _naturals(mapping: Mapping[str, int], what: str) -> dict[str, int]:
    out = {}
    for k, v in mapping.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"{what} of {k!r} must be a natural number, got {v!r}")
        out[k] = v
    return out


@dataclass(frozen=True)
class Precedence:
    """Strict precedence induced by natural-number ranks; unmapped symbols rank 0."""

    ranks: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "ranks", _naturals(self.ranks, "rank"))

    def rank(self, f: str) -> int:
        return self.ranks.get(f, 0)

    def gt(self, f: str, g: str) -> bool:
        return self.ranks.get(f, 0) > self.ranks.get(g, 0)


def prec_gt(p: Precedence, f: str, g: str) -> bool:
    return p.ranks.get(f, 0) > p.ranks.get(g, 0)


@dataclass(frozen=True)
class Trivial:
    """Empty strict part, total nonstrict part."""

    def compare(self, s: Term, t: Term) -> CompareResult:
        return GE


@dataclass(frozen=True)
class SumWeight:
    """Linear weight order: a variable weighs ``w0``, ``f(ts)`` weighs ``w(f) + sum``.

    Both parts also require the variable multiset of the right term to be
    contained in that of the left one, which keeps the pair stable under
    substitutions as long as no constant weighs less than ``w0``.
    """

    w0: int = 1
    weights: Mapping[str, int] = field(default_factory=dict)
    default_weight: int = 1
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _naturals(self.weights, "weight"))
        _naturals({"w0": self.w0, "default_weight": self.default_weight}, "parameter")

    def weight_of(self, f: str) -> int:
        return self.weights.get(f, self.default_weight)

    def term_weight(self, t: Term) -> int:
        cache = self._cache
        w = cache.get(t)
        if w is not None:
            return w
        w0, weights, dflt = self.w0, self.weights, self.default_weight
        # post-order so intermediate nodes are cached too
        stack = [(t, False)]
        while stack:
            u, expanded = stack.pop()
            if u in cache:
                continue
            if u.is_var:
                cache[u] = w0
            elif expanded:
                cache[u] = weights.get(u.fun, dflt) + sum(cache[a] for a in u.args)
            else:
                stack.append((u, True))
                stack.extend((a, False) for a in u.args if a not in cache)
        return cache[t]

    def compare(self, s: Term, t: Term) -> CompareResult:
        vs, vt = var_multiset(s), var_multiset(t)
        for x, n in vt.items():
            if vs.get(x, 0) < n:
                return NONE
        ws, wt = self.term_weight(s), self.term_weight(t)
        if ws > wt:
            return GT
        if ws == wt:
            return GE
        return NONE


BasePair = Trivial | SumWeight


def term_weight(base, t: Term) -> int:
    if not isinstance(base, SumWeight):
        raise ContractError("term_weight needs a SumWeight base pair")
    return base.term_weight(t)


def base_compare(base, s: Term, t: Term) -> CompareResult:
    return base.compare(s, t)


class OrderKind(enum.Enum):
    WPO = "wpo"
    RPO = "rpo"


@dataclass(frozen=True)
class OrderConfig:
    """Everything that fixes one instance of the order."""

    precedence: Precedence = field(default_factory=Precedence)
    base: Trivial | SumWeight = field(default_factory=Trivial)
    kind: OrderKind = OrderKind.WPO

    def __post_init__(self):
        if self.kind is OrderKind.RPO and not isinstance(self.base, Trivial):
            raise ContractError("RPO is WPO over the trivial base pair; got " + repr(self.base))

    @classmethod
    def rpo(cls, ranks: Mapping[str, int] | Precedence = ()) -> "OrderConfig":
        prec = ranks if isinstance(ranks, Precedence) else Precedence(dict(ranks))
        return cls(prec, Trivial(), OrderKind.RPO)

    @classmethod
    def wpo(cls, ranks: Mapping[str, int] | Precedence = (), base=None) -> "OrderConfig":
        prec = ranks if isinstance(ranks, Precedence) else Precedence(dict(ranks))
        return cls(prec, base if base is not None else Trivial(), OrderKind.WPO)


def lex_ext(cmp: Callable[[Term, Term], CompareResult],
            ss: Sequence[Term], ts: Sequence[Term]) -> CompareResult:
    """Lexicographic extension of ``cmp`` to equal-length argument lists."""
    if len(ss) != len(ts):
        raise ContractError(f"lex_ext on lists of length {len(ss)} and {len(ts)}")
    for s, t in zip(ss, ts):
        r = cmp(s, t)
        if r.strict:
            return GT
        if not r.nonstrict:
            return NONE
    return GE
