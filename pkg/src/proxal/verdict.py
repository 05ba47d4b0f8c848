"""Outcome values shared by every axiom and theorem check."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"


@dataclass(frozen=True)
class Verdict:
    """Result of a single check.

    ``rule`` names the violated condition on FAIL. ``witness`` maps variable
    names to subset masks (or point indices, for variables named ``x``).
    """

    status: Status
    rule: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    note: Optional[str] = None

    def __bool__(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    @classmethod
    def ok(cls, note: Optional[str] = None) -> "Verdict":
        return cls(Status.PASS, note=note)

    @classmethod
    def fail(cls, rule: str, note: Optional[str] = None, **witness: Any) -> "Verdict":
        return cls(Status.FAIL, rule=rule, witness=dict(witness), note=note)

    @classmethod
    def vacuous(cls, note: Optional[str] = None) -> "Verdict":
        return cls(Status.VACUOUS, note=note)
