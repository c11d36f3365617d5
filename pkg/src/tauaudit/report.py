"""Claim verdicts and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDETERMINED = "undetermined"
    NOT_DIRECTLY_TESTABLE = "not-directly-testable"


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    inputs: dict[str, Any]
    verdict: Verdict
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict is Verdict.FAILS and not self.witness:
            raise ValueError(f"{self.claim}: a failing verdict needs a counterexample witness")

    def to_json(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "inputs": _jsonable(self.inputs),
            "verdict": self.verdict.value,
            "witness": _jsonable(self.witness),
        }


def verdict_of(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.FAILS


def _jsonable(value: Any) -> Any:
    # big integers always travel as decimal strings
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def dumps(reports: Iterable[ClaimReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)


def exit_code(reports: Iterable[ClaimReport]) -> int:
    """0 all hold, 2 any failure, 3 undetermined without failures."""
    verdicts = {r.verdict for r in reports}
    if Verdict.FAILS in verdicts:
        return 2
    if Verdict.UNDETERMINED in verdicts:
        return 3
    return 0


def sort_reports(reports: Iterable[ClaimReport]) -> list[ClaimReport]:
    """Deterministic order: by p when present, then by claim id."""

    def key(r: ClaimReport) -> tuple[int, str]:
        p = r.inputs.get("p", 0)
        return (int(p) if isinstance(p, int) else 0, r.claim)

    return sorted(reports, key=key)
