"""Verification reports: one ``Check`` per axiom with a first-failure witness."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

__all__ = ["Check", "Report", "check_cases", "witness"]


@dataclass
class Check:
    axiom: str
    anchor: str
    passed: bool
    witness: dict | None = None
    cases: int = 0

    def to_dict(self):
        out = {"axiom": self.axiom, "anchor": self.anchor,
               "status": "pass" if self.passed else "fail", "cases": self.cases}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        text = f"[{mark}] {self.axiom}: {self.anchor} ({self.cases} cases)"
        if self.witness:
            text += "\n       witness: " + ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return text


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    sample_degree: int | None = None
    timing: float | None = None

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.axiom, c.anchor, c.passed, c.witness, c.cases))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def get(self, axiom: str) -> Check:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def to_dict(self, timing: bool = False):
        out: dict[str, Any] = {"structure": self.name, "passed": self.passed,
                               "sample_degree": self.sample_degree,
                               "checks": [c.to_dict() for c in self.checks]}
        if timing and self.timing is not None:
            out["timing_seconds"] = round(self.timing, 4)
        return out

    def __str__(self):
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'}"
        if self.sample_degree is not None:
            head += f" (sample degree {self.sample_degree})"
        return "\n".join([head] + ["  " + c.line() for c in self.checks])


def witness(names: Sequence[str], args: Sequence, lhs, rhs) -> dict:
    w = {"assignment": ", ".join(f"{n}={a}" for n, a in zip(names, args))}
    w["lhs"] = str(lhs)
    w["rhs"] = str(rhs)
    return w


def check_cases(axiom: str, anchor: str, names: Sequence[str], cases: Iterable,
                evaluate: Callable) -> Check:
    """Run ``evaluate(*case) -> (lhs, rhs)`` over ``cases``; stop at the first mismatch."""
    n = 0
    for case in cases:
        n += 1
        lhs, rhs = evaluate(*case)
        if lhs != rhs:
            return Check(axiom, anchor, False, witness(names, case, lhs, rhs), n)
    return Check(axiom, anchor, True, None, n)
