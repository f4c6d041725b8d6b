"""Line-based order configuration files.

::

    # RPO with f > g > h
    order rpo
    prec f=3 g=2
    prec h=1
    base trivial

Keys: ``order wpo|rpo``, ``prec name=rank ...`` (repeatable), ``base
trivial|sum``, ``w0 <nat>``, ``weight name=nat ...`` (repeatable),
``default_weight <nat>``.  ``#`` starts a comment.
"""

from __future__ import annotations

from .orders import OrderConfig, OrderKind, Precedence, SumWeight, Trivial


class ConfigError(ValueError):
    pass


def _nat(text: str, where: str) -> int:
    if not text.isdigit():
        raise ConfigError(f"{where}: expected a natural number, got {text!r}")
    return int(text)


def _assignments(items, where, into):
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"{where}: expected name=value, got {item!r}")
        into[name] = _nat(value, where)


def parse_config(text: str) -> OrderConfig:
    order = "wpo"
    base = "trivial"
    ranks: dict[str, int] = {}
    weights: dict[str, int] = {}
    scalars: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        where = f"line {lineno}"
        if key == "order":
            if rest not in (["wpo"], ["rpo"]):
                raise ConfigError(f"{where}: order must be 'wpo' or 'rpo'")
            order = rest[0]
        elif key == "base":
            if rest not in (["trivial"], ["sum"]):
                raise ConfigError(f"{where}: base must be 'trivial' or 'sum'")
            base = rest[0]
        elif key == "prec":
            _assignments(rest, where, ranks)
        elif key == "weight":
            _assignments(rest, where, weights)
        elif key in ("w0", "default_weight"):
            if len(rest) != 1:
                raise ConfigError(f"{where}: {key} takes one value")
            scalars[key] = _nat(rest[0], where)
        else:
            raise ConfigError(f"{where}: unknown key {key!r}")
    if order == "rpo" and base == "sum":
        raise ConfigError("order rpo requires base trivial")
    if base == "trivial":
        if weights or scalars:
            raise ConfigError("weights given but base is trivial")
        pair = Trivial()
    else:
        pair = SumWeight(scalars.get("w0", 1), weights, scalars.get("default_weight", 1))
    return OrderConfig(Precedence(ranks), pair, OrderKind(order))


def format_config(cfg: OrderConfig) -> str:
    lines = [f"order {cfg.kind.value}"]
    if cfg.precedence.ranks:
        lines.append("prec " + " ".join(f"{k}={v}" for k, v in cfg.precedence.ranks.items()))
    if isinstance(cfg.base, SumWeight):
        lines.append("base sum")
        lines.append(f"w0 {cfg.base.w0}")
        if cfg.base.weights:
            lines.append("weight " + " ".join(f"{k}={v}" for k, v in cfg.base.weights.items()))
        lines.append(f"default_weight {cfg.base.default_weight}")
    else:
        lines.append("base trivial")
    return "\n".join(lines) + "\n"


def load_config(path) -> OrderConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())
