"""Outcome records for property suites and their JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from .sampling import derived_rng
from .textfmt import render

SCHEMA = "courant-verify-report/1"

# A property check draws its inputs from the rng it is given and returns
# None on success or a counterexample mapping (all values strings).
Check = Callable[[Any], Optional[Dict[str, str]]]


@dataclass
class PropertyResult:
    name: str
    statement: str
    samples: int
    passed: bool
    counterexample: Optional[Dict[str, str]] = None
    sample_index: Optional[int] = None

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "name": self.name,
            "statement": self.statement,
            "samples": self.samples,
            "passed": self.passed,
        }
        if not self.passed:
            out["failing_sample"] = self.sample_index
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteResult:
    suite: str
    properties: List[PropertyResult] = field(default_factory=list)
    expect_failure: bool = False

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    @property
    def ok(self) -> bool:
        """A negative-control suite is ok when at least one property fails."""
        if self.expect_failure:
            return not self.passed
        return self.passed

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "negative_control": self.expect_failure,
            "ok": self.ok,
            "properties": [p.to_json() for p in self.properties],
        }


@dataclass
class VerificationReport:
    config: Dict[str, Any]
    suites: List[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "config": self.config,
            "ok": self.ok,
            "suites": [s.to_json() for s in self.suites],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def run_property(seed: int, suite: str, name: str, statement: str, samples: int, check: Check) -> PropertyResult:
    """Evaluate ``check`` on ``samples`` independently seeded rngs; stop at the first failure."""
    for i in range(samples):
        rng = derived_rng(seed, suite, name, i)
        cex = check(rng)
        if cex is not None:
            return PropertyResult(name, statement, i + 1, False, dict(cex), i)
    return PropertyResult(name, statement, samples, True)


def mismatch(lhs, rhs, fmt=str, **inputs) -> Optional[Dict[str, str]]:
    """None when ``lhs == rhs``, else a counterexample with both sides rendered.

    ``fmt`` renders the two sides; inputs that are not already strings are
    rendered as plain values (forms, polynomials, vector fields).
    """
    if lhs == rhs:
        return None
    out = {k: (v if isinstance(v, str) else render(v)) for k, v in inputs.items()}
    out["lhs"] = fmt(lhs)
    out["rhs"] = fmt(rhs)
    return out
