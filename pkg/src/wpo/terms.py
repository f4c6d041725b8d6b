"""First-order terms, rules and term rewrite systems.

Terms are immutable.  Every node caches its hash, size and depth when it is
built, so equality checks, dictionary lookups and size queries stay cheap even
for the thousand-level chains used by the benchmark family.  Traversals are
iterative for the same reason.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be nonempty")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name!r}")


class ArityError(ValueError):
    """A symbol was used with two different arities."""


class Term:
    """Base class of :class:`Var` and :class:`App`."""

    __slots__ = ("_hash", "size", "depth", "_vars")
    is_var = False

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return _terms_equal(self, other)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return self._hash

    def __str__(self):
        return format_term(self)

    def __repr__(self):
        return f"{type(self).__name__}<{format_term(self)}>"

    def __reduce__(self):
        # rebuild from the printed form; avoids deep recursion in pickle
        return (_rebuild, (format_term(self), sorted(variables(self))))


class Var(Term):
    __slots__ = ("name",)
    is_var = True

    def __init__(self, name: str):
        if not name:
            raise ValueError("variable name must be nonempty")
        _set = object.__setattr__
        _set(self, "name", name)
        _set(self, "_hash", hash(("V", name)))
        _set(self, "size", 1)
        _set(self, "depth", 1)
        _set(self, "_vars", None)


class App(Term):
    __slots__ = ("fun", "args")

    def __init__(self, fun: str, args=()):
        if not fun:
            raise ValueError("function symbol name must be nonempty")
        args = tuple(args)
        for a in args:
            if not isinstance(a, Term):
                raise TypeError(f"argument {a!r} of {fun} is not a Term")
        _set = object.__setattr__
        _set(self, "fun", fun)
        _set(self, "args", args)
        _set(self, "_hash", hash((fun, tuple(a._hash for a in args))))
        _set(self, "size", 1 + sum(a.size for a in args))
        _set(self, "depth", 1 + max((a.depth for a in args), default=0))
        _set(self, "_vars", None)

    @property
    def symbol(self) -> Symbol:
        return Symbol(self.fun, len(self.args))


def _rebuild(text, var_names):
    from .parser import parse_term
    return parse_term(text, set(var_names))


def _terms_equal(s: Term, t: Term) -> bool:
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if a._hash != b._hash or a.is_var != b.is_var:
            return False
        if a.is_var:
            if a.name != b.name:
                return False
            continue
        if a.fun != b.fun or len(a.args) != len(b.args):
            return False
        stack.extend(zip(a.args, b.args))
    return True


def var(name: str) -> Var:
    return Var(name)


def app(fun: str, *args: Term) -> App:
    return App(fun, args)


def chain(funs, base: Term) -> Term:
    """Apply unary symbols to ``base``; ``funs[0]`` ends up outermost."""
    t = base
    for f in reversed(list(funs)):
        t = App(f, (t,))
    return t


# ----------------------------------------------------------------------------
# Structural helpers

def size(t: Term) -> int:
    return t.size


def subterm_occurrences(t: Term) -> list[Term]:
    """All subterm occurrences of ``t`` in pre-order, ``t`` first."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        out.append(u)
        if not u.is_var:
            stack.extend(reversed(u.args))
    return out


def iter_positions(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """Yield ``(position, subterm)`` pairs in pre-order.  Positions are 0-based."""
    stack = [((), t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        if not u.is_var:
            for i in range(len(u.args) - 1, -1, -1):
                stack.append((pos + (i,), u.args[i]))


def replace_at(t: Term, pos: tuple[int, ...], new: Term) -> Term:
    if not pos:
        return new
    i, rest = pos[0], pos[1:]
    args = list(t.args)
    args[i] = replace_at(args[i], rest, new)
    return App(t.fun, args)


def var_multiset(t: Term) -> Counter:
    """Multiset of variable occurrences.

    The result is cached on the node and shared; callers must not mutate it.
    """
    cached = t._vars
    if cached is not None:
        return cached
    # post-order fill so every node on the way gets its own cached multiset
    stack = [(t, False)]
    while stack:
        u, done = stack.pop()
        if u._vars is not None:
            continue
        if u.is_var:
            object.__setattr__(u, "_vars", Counter({u.name: 1}))
        elif done:
            c = Counter()
            for a in u.args:
                c.update(a._vars)
            object.__setattr__(u, "_vars", c)
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args if a._vars is None)
    return t._vars


def variables(t: Term) -> set[str]:
    return set(var_multiset(t))


def symbols(t: Term) -> dict[str, int]:
    """Map from function symbol name to arity for every symbol occurring in ``t``."""
    out: dict[str, int] = {}
    for u in subterm_occurrences(t):
        if not u.is_var:
            out.setdefault(u.fun, len(u.args))
    return out


def substitute(t: Term, sigma: Mapping[str, Term]) -> Term:
    if t.is_var:
        return sigma.get(t.name, t)
    # post-order rebuild
    done: dict[int, Term] = {}
    stack = [(t, False)]
    while stack:
        u, expanded = stack.pop()
        if u.is_var:
            done[id(u)] = sigma.get(u.name, u)
        elif expanded:
            done[id(u)] = App(u.fun, [done[id(a)] for a in u.args])
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return done[id(t)]


def format_term(t: Term) -> str:
    """Canonical printer: ``f(a,b)``, no spaces, variables bare."""
    parts = []
    stack: list = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, str):
            parts.append(u)
        elif u.is_var:
            parts.append(u.name)
        elif not u.args:
            parts.append(u.fun)
        else:
            parts.append(u.fun)
            parts.append("(")
            stack.append(")")
            for i in range(len(u.args) - 1, -1, -1):
                stack.append(u.args[i])
                if i:
                    stack.append(",")
    return "".join(parts)


# ----------------------------------------------------------------------------
# Signatures and rewrite systems

class Signature:
    """Symbol table mapping each function symbol name to its one arity."""

    def __init__(self, arities: Mapping[str, int] | None = None):
        self._arities: dict[str, int] = {}
        for name, n in (arities or {}).items():
            self.add(name, n)

    def add(self, name: str, arity: int) -> None:
        known = self._arities.get(name)
        if known is None:
            Symbol(name, arity)
            self._arities[name] = arity
        elif known != arity:
            raise ArityError(
                f"symbol {name!r} used with arity {arity}, earlier with arity {known}")

    def add_term(self, t: Term) -> None:
        for name, n in symbols(t).items():
            self.add(name, n)

    def arity(self, name: str) -> int:
        return self._arities[name]

    def __contains__(self, name):
        return name in self._arities

    def __iter__(self):
        return iter(self._arities)

    def __len__(self):
        return len(self._arities)

    def items(self):
        return self._arities.items()

    def symbols(self) -> list[Symbol]:
        return [Symbol(n, a) for n, a in self._arities.items()]

    def __eq__(self, other):
        return isinstance(other, Signature) and self._arities == other._arities

    def __repr__(self):
        return f"Signature({self._arities!r})"


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def is_variable_safe(self) -> bool:
        """Whether every variable of the right-hand side occurs on the left."""
        return variables(self.rhs) <= variables(self.lhs)

    def __str__(self):
        return f"{format_term(self.lhs)} -> {format_term(self.rhs)}"


@dataclass(frozen=True)
class Trs:
    signature: Signature
    variables: frozenset = field(default_factory=frozenset)
    rules: tuple = ()

    @classmethod
    def from_rules(cls, rules, var_names=None) -> "Trs":
        rules = tuple(rules)
        sig = Signature()
        seen: set[str] = set()
        for r in rules:
            sig.add_term(r.lhs)
            sig.add_term(r.rhs)
            seen |= variables(r.lhs) | variables(r.rhs)
        if var_names is None:
            var_names = seen
        return cls(sig, frozenset(var_names), rules)

    def __len__(self):
        return len(self.rules)
