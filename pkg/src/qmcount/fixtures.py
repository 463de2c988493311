"""Bundled regression fixtures: worked counting problems with their known integers."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional

from .excess import Ledger, build_ledger
from .problems import Problem, parse_problem


@dataclass
class FixtureResult:
    name: str
    passed: bool
    ledger: Optional[Ledger]
    mismatches: Dict[str, tuple]
    error: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "mismatches": {k: {"expected": e, "got": g} for k, (e, g) in self.mismatches.items()},
            "error": self.error,
            "ledger": self.ledger.to_json() if self.ledger else None,
        }


def fixture_names() -> List[str]:
    root = resources.files(__package__) / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    path = resources.files(__package__) / "fixtures" / f"{name}.json"
    return json.loads(path.read_text())


def fixture_problem(name: str) -> Problem:
    return parse_problem(load_fixture(name)["problem"], where=name)


def check_fixture(name: str) -> FixtureResult:
    fx = load_fixture(name)
    try:
        prob = parse_problem(fx["problem"], where=name)
        ledger = build_ledger(prob.data, prob.km, prob.strata, prob.quasi_stable)
    except Exception as exc:  # reported, not raised: one bad fixture should not hide the others
        return FixtureResult(name, False, None, {}, f"{type(exc).__name__}: {exc}")
    got = ledger.to_json()
    got["contributions"] = list(ledger.contributions)
    mismatches = {}
    for key, want in fx["expected"].items():
        if got.get(key) != want:
            mismatches[key] = (want, got.get(key))
    if prob.quasi_stable and prob.km is not None and ledger.residual != 0:
        mismatches.setdefault("residual", (0, ledger.residual))
    return FixtureResult(name, not mismatches, ledger, mismatches)


def run_all() -> List[FixtureResult]:
    return [check_fixture(n) for n in fixture_names()]
