"""Orient every rule of a TRS with one order configuration."""

from __future__ import annotations

import csv
import enum
import io
import time
from dataclasses import dataclass, field

from .memo import wpo_mem_impl, wpo_mem_impl_counted
from .orders import OrderConfig
from .reference import CallBudgetExceeded, ComparisonTimeout, wpo_naive, wpo_naive_counted
from .terms import Rule, Trs


class Engine(enum.Enum):
    NAIVE = "naive"
    MEMOIZED = "memoized"


class OrientationTimeout(RuntimeError):
    """The whole orientation ran past its time budget."""

    def __init__(self, rules_done: int, calls: int):
        super().__init__(f"timed out after {rules_done} rules and {calls} calls")
        self.rules_done = rules_done
        self.calls = calls


@dataclass
class RuleVerdict:
    rule: Rule
    strict: bool
    nonstrict: bool
    main_calls: int = 0
    wall_nanoseconds: int = field(default=0, compare=False)


@dataclass
class OrientationReport:
    engine: Engine
    rules: list[RuleVerdict] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(v.strict for v in self.rules)

    @property
    def total_calls(self) -> int:
        return sum(v.main_calls for v in self.rules)

    @property
    def wall_nanoseconds(self) -> int:
        return sum(v.wall_nanoseconds for v in self.rules)

    def to_text(self) -> str:
        lines = []
        for k, v in enumerate(self.rules, 1):
            mark = "ok  " if v.strict else "FAIL"
            lines.append(f"{mark} [{k}] {v.rule}  strict={str(v.strict).lower()} "
                         f"nonstrict={str(v.nonstrict).lower()} calls={v.main_calls}")
        verdict = "CERTIFIED" if self.certified else "NOT CERTIFIED"
        lines.append(f"{verdict}: {sum(v.strict for v in self.rules)}/{len(self.rules)} "
                     f"rules strictly oriented ({self.engine.value} engine)")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rule", "lhs", "rhs", "strict", "nonstrict", "calls", "wall_ns"])
        for k, v in enumerate(self.rules, 1):
            w.writerow([k, v.rule.lhs, v.rule.rhs, str(v.strict).lower(),
                        str(v.nonstrict).lower(), v.main_calls, v.wall_nanoseconds])
        return buf.getvalue()


def orient_trs(cfg: OrderConfig, trs: Trs, engine: Engine = Engine.MEMOIZED, *,
               instrumented: bool = True, timeout: float | None = None) -> OrientationReport:
    """Compare ``lhs`` with ``rhs`` for each rule; each rule gets a fresh memory.

    With ``instrumented=False`` the counters stay zero and the uncounted
    engines are used.  ``timeout`` (seconds) bounds the whole run and raises
    :class:`OrientationTimeout`.
    """
    engine = Engine(engine)
    report = OrientationReport(engine)
    deadline = None if timeout is None else time.monotonic() + timeout
    spent = 0
    for rule in trs.rules:
        remaining = None if deadline is None else deadline - time.monotonic()
        if remaining is not None and remaining <= 0:
            raise OrientationTimeout(len(report.rules), spent)
        start = time.perf_counter_ns()
        try:
            if engine is Engine.MEMOIZED:
                if instrumented or remaining is not None:
                    r, stats, _ = wpo_mem_impl_counted(cfg, rule.lhs, rule.rhs, timeout=remaining)
                    calls = stats.main_calls
                else:
                    r, calls = wpo_mem_impl(cfg, rule.lhs, rule.rhs), 0
            else:
                if instrumented or remaining is not None:
                    r, rstats = wpo_naive_counted(cfg, rule.lhs, rule.rhs, timeout=remaining)
                    calls = rstats.calls
                else:
                    r, calls = wpo_naive(cfg, rule.lhs, rule.rhs), 0
        except (ComparisonTimeout, CallBudgetExceeded) as e:
            raise OrientationTimeout(len(report.rules), spent + e.calls) from None
        elapsed = time.perf_counter_ns() - start
        spent += calls
        report.rules.append(RuleVerdict(rule, r.strict, r.nonstrict, calls, elapsed))
    return report


def certify(cfg: OrderConfig, trs: Trs) -> bool:
    return orient_trs(cfg, trs, Engine.MEMOIZED, instrumented=False).certified
