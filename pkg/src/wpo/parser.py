"""Parser and printer for terms and the plain-text TRS format.

Format::

    (VAR x y)
    (RULES
      f(x,0) -> x
      f(s(x),y) -> s(f(x,y))
    )

An identifier is a variable exactly when it is listed in the ``VAR`` block;
every other identifier is a function symbol, and a bare one is a constant.
"""

from __future__ import annotations

import re
import warnings
from typing import Iterable

from .terms import App, ArityError, Rule, Signature, Term, Trs, Var, format_term

__all__ = [
    "ParseError", "VariableConditionWarning",
    "parse_term", "parse_rule", "parse_trs", "format_trs",
]

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z0-9_']+)|(?P<arrow>->)|(?P<punct>[(),]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class VariableConditionWarning(UserWarning):
    """A rule's right-hand side has a variable that does not occur on the left."""


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    end = len(text)
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             pos + len(rest) - len(stripped))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos)
        return pos

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def term(self, declared_vars, signature: Signature) -> Term:
        """Read one term; iterative so that very deep terms do not hit the recursion limit."""
        # frames: [name, position, collected args]
        frames: list[list] = []
        while True:
            kind, name, pos = self.next()
            if kind != "ident":
                found = "end of input" if kind == "eof" else repr(name)
                raise ParseError(f"expected identifier, found {found}", pos)
            if self.peek()[1] == "(" and self.peek()[0] == "punct":
                if name in declared_vars:
                    raise ParseError(f"variable {name!r} applied to arguments", pos)
                self.next()
                frames.append([name, pos, []])
                continue
            done: Term = Var(name) if name in declared_vars else self._app(name, [], pos, signature)
            # close as many frames as the input allows
            while frames:
                frame = frames[-1]
                frame[2].append(done)
                kind, val, p = self.next()
                if val == ",":
                    break
                if val == ")":
                    frames.pop()
                    done = self._app(frame[0], frame[2], frame[1], signature)
                    continue
                found = "end of input" if kind == "eof" else repr(val)
                raise ParseError(f"expected ',' or ')', found {found}", p)
            else:
                return done

    @staticmethod
    def _app(name, args, pos, signature: Signature) -> App:
        try:
            signature.add(name, len(args))
        except ArityError as e:
            raise ParseError(str(e), pos) from None
        return App(name, args)


def parse_term(text: str, declared_vars: Iterable[str] = (),
               signature: Signature | None = None) -> Term:
    """Parse a single term.

    Identifiers in ``declared_vars`` are variables.  If ``signature`` is given,
    symbol arities are recorded in it and checked against earlier entries.
    """
    declared = set(declared_vars)
    reader = _Reader(text)
    t = reader.term(declared, signature if signature is not None else Signature())
    if not reader.at_end():
        _, val, pos = reader.peek()
        raise ParseError(f"trailing input {val!r}", pos)
    return t


def parse_rule(text: str, declared_vars: Iterable[str] = (),
               signature: Signature | None = None) -> Rule:
    declared = set(declared_vars)
    sig = signature if signature is not None else Signature()
    reader = _Reader(text)
    rule = _read_rule(reader, declared, sig)
    if not reader.at_end():
        _, val, pos = reader.peek()
        raise ParseError(f"trailing input {val!r}", pos)
    return rule


def _read_rule(reader: _Reader, declared, sig) -> Rule:
    lhs = reader.term(declared, sig)
    kind, val, pos = reader.next()
    if kind != "arrow":
        found = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"expected '->', found {found}", pos)
    rhs = reader.term(declared, sig)
    rule = Rule(lhs, rhs)
    if not rule.is_variable_safe():
        warnings.warn(f"rule {rule}: right-hand side variables not in left-hand side",
                      VariableConditionWarning, stacklevel=3)
    return rule


def _block_header(reader: _Reader, keyword: str) -> bool:
    """Consume ``( KEYWORD`` if it is next; report whether it was there."""
    if reader.i + 1 < len(reader.tokens):
        (k0, v0, _), (k1, v1, _) = reader.tokens[reader.i], reader.tokens[reader.i + 1]
        if v0 == "(" and k0 == "punct" and k1 == "ident" and v1 == keyword:
            reader.i += 2
            return True
    return False


def parse_trs(text: str) -> Trs:
    reader = _Reader(text)
    declared: set[str] = set()
    if _block_header(reader, "VAR"):
        while reader.peek()[0] == "ident":
            declared.add(reader.next()[1])
        reader.expect(")")
    if not _block_header(reader, "RULES"):
        raise ParseError("missing (RULES ...) block", reader.peek()[2])
    sig = Signature()
    rules = []
    while not (reader.peek()[1] == ")" or reader.peek()[0] == "eof"):
        rules.append(_read_rule(reader, declared, sig))
    reader.expect(")")
    if not reader.at_end():
        _, val, pos = reader.peek()
        raise ParseError(f"trailing input {val!r}", pos)
    return Trs(sig, frozenset(declared), tuple(rules))


def format_trs(trs: Trs) -> str:
    lines = ["(VAR " + " ".join(sorted(trs.variables)) + ")", "(RULES"]
    for r in trs.rules:
        lines.append(f"  {format_term(r.lhs)} -> {format_term(r.rhs)}")
    lines.append(")")
    return "\n".join(lines) + "\n"
