"""Command-line front end.

Exit status: 0 on success (for ``check``: certified), 1 when ``check``
evaluated every rule but could not orient some, 2 on usage, parse, config or
I/O errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import bench
from .checker import Engine, OrientationTimeout, orient_trs
from .config import ConfigError, format_config, load_config
from .memo import wpo_mem_impl, wpo_mem_impl_counted
from .orders import OrderConfig
from .parser import ParseError, format_trs, parse_term, parse_trs
from .reference import wpo_naive, wpo_naive_counted

BUILTIN_CONFIGS = {
    "rpo": bench.shipped_rpo_config,
    "wpo": bench.shipped_wpo_config,
    "example1": bench.example1_config,
}


class CliError(Exception):
    pass


def _config(path) -> OrderConfig:
    try:
        return load_config(path)
    except OSError as e:
        raise CliError(f"cannot read config {path}: {e.strerror or e}") from None
    except ConfigError as e:
        raise CliError(f"config {path}: {e}") from None


def _read(path) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}") from None


def _parse_ns(text: str) -> list[int]:
    """``10,20,30`` or ``start:stop:step`` (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, *step = (int(p) for p in text.split(":"))
            return list(range(start, stop + 1, step[0] if step else 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise CliError(f"bad --ns value {text!r}") from None


def cmd_compare(args) -> int:
    cfg = _config(args.config)
    names = args.vars.split()
    try:
        s = parse_term(args.s, names)
        t = parse_term(args.t, names)
    except ParseError as e:
        raise CliError(f"term: {e}") from None
    engine = Engine(args.engine)
    if args.stats:
        if engine is Engine.MEMOIZED:
            r, st, _ = wpo_mem_impl_counted(cfg, s, t)
            extra = f" main_calls={st.main_calls} lookups={st.lookups} hits={st.hits}"
        else:
            r, rs = wpo_naive_counted(cfg, s, t)
            extra = f" calls={rs.calls}"
    else:
        r = (wpo_mem_impl if engine is Engine.MEMOIZED else wpo_naive)(cfg, s, t)
        extra = ""
    print(f"{r}{extra}")
    return 0


def cmd_check(args) -> int:
    cfg = _config(args.config)
    try:
        trs = parse_trs(_read(args.trs))
    except ParseError as e:
        raise CliError(f"{args.trs}: {e}") from None
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    try:
        report = orient_trs(cfg, trs, Engine(args.engine), timeout=timeout)
    except OrientationTimeout as e:
        raise CliError(str(e)) from None
    print(report.to_text())
    if args.csv:
        _write(args.csv, report.to_csv())
    return 0 if report.certified else 1


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror or e}") from None


def cmd_gen(args) -> int:
    if args.n < 1:
        raise CliError("n must be at least 1")
    text = format_trs(bench.gen_family(args.n, args.seed))
    _write(args.out or "-", text)
    return 0


def cmd_bench(args) -> int:
    cfgs = {}
    for path in args.config or []:
        cfg = _config(path)
        name = cfg.kind.value
        while name in cfgs:
            name += "'"
        cfgs[name] = cfg
    if not cfgs and args.family == "example1":
        cfgs = {"example1": bench.example1_config()}
    elif not cfgs:
        cfgs = {"rpo": bench.shipped_rpo_config(), "wpo": bench.shipped_wpo_config()}
    ns = _parse_ns(args.ns)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    try:
        engines = [Engine(e) for e in engines]
    except ValueError as e:
        raise CliError(str(e)) from None
    if args.family == "example1":
        rows = bench.run_example1(ns, engines, cfgs, args.timeout_ms)
    else:
        rows = bench.run_scaling(ns, engines, cfgs, args.seed, args.timeout_ms)
    _write(args.csv or "-", bench.rows_to_csv(rows))
    return 0


def cmd_show_config(args) -> int:
    sys.stdout.write(format_config(BUILTIN_CONFIGS[args.name]()))
    return 0


def cmd_selftest(args) -> int:
    """Quick end-to-end checks that need no test framework."""
    from .randterms import random_config, random_signature, random_term

    rng = random.Random(args.seed)
    ok = True

    def report(name, passed, detail=""):
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} {name}{': ' + detail if detail else ''}")

    mismatches = 0
    for _ in range(args.samples):
        sig = random_signature(rng)
        cfg = random_config(rng, sig)
        s = random_term(rng, sig, ["x", "y", "z"], 4)
        t = random_term(rng, sig, ["x", "y", "z"], 4)
        if wpo_naive(cfg, s, t) != wpo_mem_impl(cfg, s, t):
            mismatches += 1
    report("memoized engine agrees with naive engine", mismatches == 0,
           f"{args.samples} random pairs, {mismatches} mismatches")

    counts = []
    for n in range(1, 9):
        s, t = bench.gen_example1(n)
        counts.append(wpo_naive_counted(bench.example1_config(), s, t)[1].calls)
    report("naive calls at least double per extra f",
           all(b >= 2 * a for a, b in zip(counts, counts[1:])), f"calls {counts}")

    s, t = bench.gen_example1(300)
    start = time.perf_counter()
    _, st, _ = wpo_mem_impl_counted(bench.example1_config(), s, t)
    report("memoized main calls within size bound", st.main_calls <= 302 * 302,
           f"{st.main_calls} <= {302 * 302} in {time.perf_counter() - start:.2f}s")

    for cfg in (bench.shipped_rpo_config(), bench.shipped_wpo_config()):
        rep = orient_trs(cfg, bench.gen_family(100, args.seed), Engine.MEMOIZED)
        report(f"R_100 certified by shipped {cfg.kind.value} config", rep.certified,
               f"{rep.total_calls} main calls")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wpo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def engine_flag(sp):
        sp.add_argument("--engine", choices=[e.value for e in Engine], default="memoized")

    c = sub.add_parser("compare", help="compare two terms")
    c.add_argument("--config", required=True)
    c.add_argument("--vars", default="", help='variables, e.g. "x y"')
    engine_flag(c)
    c.add_argument("--stats", action="store_true", help="print call counters")
    c.add_argument("s")
    c.add_argument("t")
    c.set_defaults(func=cmd_compare)

    k = sub.add_parser("check", help="orient every rule of a TRS file")
    k.add_argument("--config", required=True)
    engine_flag(k)
    k.add_argument("--stats", action="store_true", help="accepted for symmetry; counters are always shown")
    k.add_argument("--timeout-ms", type=int)
    k.add_argument("--csv", help="also write the per-rule report as CSV ('-' for stdout)")
    k.add_argument("trs")
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="write the benchmark system R_n")
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="scaling runs, CSV output")
    b.add_argument("--ns", default="10:100:10", help="'10,20,30' or 'start:stop:step'")
    b.add_argument("--engines", default="memoized", help="comma list of naive,memoized")
    b.add_argument("--config", action="append", help="config file; repeatable (default: shipped rpo and wpo, "
                   "or the example1 config for --family example1)")
    b.add_argument("--family", choices=["trs", "example1"], default="trs")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--timeout-ms", type=int, default=600_000)
    b.add_argument("--csv", help="output path (default stdout)")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("show-config", help="print a built-in configuration")
    s.add_argument("name", choices=sorted(BUILTIN_CONFIGS))
    s.set_defaults(func=cmd_show_config)

    t = sub.add_parser("selftest", help="run quick built-in checks")
    t.add_argument("--samples", type=int, default=300)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"wpo: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
