"""Pass/fail reports produced by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def jsonify(value: Any) -> Any:
    """Turn witnesses (group elements, scalars, tuples) into plain JSON data."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (tuple, list)):
        return [jsonify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    return str(value)


def describe(value: Any) -> str:
    """Human-readable witness: tuples become ``(a, b, ...)``."""
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(describe(v) for v in value) + ")"
    return str(value)


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": jsonify(self.witness)}

    def __str__(self) -> str:
        line = f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"
        if self.detail:
            line += f": {self.detail}"
        if not self.passed and self.witness is not None:
            line += f" (witness {describe(self.witness)})"
        return line


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None, detail: str = "") -> Check:
        check = Check(name, bool(passed), witness, detail)
        self.checks.append(check)
        return check

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"axioms": [c.to_json() for c in self.checks]}

    def __str__(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        lines += [f"  {c}" for c in self.checks]
        return "\n".join(lines)
