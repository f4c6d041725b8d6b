"""Indexed terms.

``index_term`` numbers every subterm occurrence of a term in pre-order,
starting with 0 at the root.  Each node of the result also keeps the original
subterm it stands for, so the memoized engine gets the node's index and its
plain term in constant time.
"""

from __future__ import annotations

from .terms import App, Term, Var

__all__ = [
    "IndexedTerm", "IndexIntegrityError", "ReverseIndex",
    "index_term", "node_index", "node_stored", "unindex", "build_reverse_index",
    "iter_nodes",
]


class IndexIntegrityError(ValueError):
    """Indices of an indexed term are duplicated or not contiguous."""


class IndexedTerm:
    """A node of an indexed term.

    ``label`` is the variable name or function symbol, ``args`` the indexed
    children (empty for variables), ``stored`` the original subterm and
    ``index`` the number assigned to this occurrence.
    """

    __slots__ = ("label", "args", "stored", "index", "is_var", "depth")

    def __init__(self, label: str, args: tuple, stored: Term, index: int, is_var: bool):
        self.label = label
        self.args = args
        self.stored = stored
        self.index = index
        self.is_var = is_var
        self.depth = 1 + max((a.depth for a in args), default=0)

    @classmethod
    def var(cls, name: str, stored: Term, index: int) -> "IndexedTerm":
        return cls(name, (), stored, index, True)

    @classmethod
    def app(cls, fun: str, args, stored: Term, index: int) -> "IndexedTerm":
        return cls(fun, tuple(args), stored, index, False)

    def __repr__(self):
        return f"IndexedTerm({self.label!r}, #{self.index}, {len(self.args)} args)"


def index_term(t: Term, start: int = 0) -> IndexedTerm:
    order: list[Term] = []
    children: list[list[int]] = []
    stack: list[tuple[Term, int]] = [(t, -1)]
    while stack:
        u, parent = stack.pop()
        pos = len(order)
        order.append(u)
        children.append([])
        if parent >= 0:
            children[parent].append(pos)
        if not u.is_var:
            stack.extend((a, pos) for a in reversed(u.args))
    built: list = [None] * len(order)
    for pos in range(len(order) - 1, -1, -1):
        u = order[pos]
        if u.is_var:
            built[pos] = IndexedTerm(u.name, (), u, start + pos, True)
        else:
            args = tuple(built[c] for c in children[pos])
            built[pos] = IndexedTerm(u.fun, args, u, start + pos, False)
    return built[0]


def node_index(it: IndexedTerm) -> int:
    return it.index


def node_stored(it: IndexedTerm) -> Term:
    return it.stored


def iter_nodes(it: IndexedTerm):
    """All nodes in pre-order."""
    stack = [it]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(u.args))


def _unindex_all(it: IndexedTerm) -> dict[int, Term]:
    """Rebuild plain terms for every node, keyed by ``id(node)``; ignores ``stored``."""
    out: dict[int, Term] = {}
    stack = [(it, False)]
    while stack:
        u, expanded = stack.pop()
        if u.is_var:
            out[id(u)] = Var(u.label)
        elif expanded:
            out[id(u)] = App(u.label, [out[id(a)] for a in u.args])
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return out


def unindex(it: IndexedTerm) -> Term:
    return _unindex_all(it)[id(it)]


class ReverseIndex:
    """Table from index to the subterm occurrence carrying it."""

    def __init__(self, table: list[Term], start: int = 0):
        self.table = table
        self.start = start

    def __getitem__(self, i: int) -> Term:
        k = i - self.start
        if not 0 <= k < len(self.table):
            raise IndexIntegrityError(f"index {i} outside {self.start}..{self.start + len(self.table) - 1}")
        return self.table[k]

    def __len__(self):
        return len(self.table)

    def __call__(self, i: int) -> Term:
        return self[i]


def build_reverse_index(it: IndexedTerm) -> ReverseIndex:
    plain = _unindex_all(it)
    found: dict[int, Term] = {}
    for node in iter_nodes(it):
        if node.index in found:
            raise IndexIntegrityError(f"duplicate index {node.index}")
        found[node.index] = plain[id(node)]
    lo = min(found)
    if sorted(found) != list(range(lo, lo + len(found))):
        raise IndexIntegrityError("indices are not contiguous")
    return ReverseIndex([found[i] for i in range(lo, lo + len(found))], lo)
