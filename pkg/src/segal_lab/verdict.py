"""Three-valued verdicts and the errors shared across the package."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Outcome(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Any = None
    reason: str = ""
    extra: dict = field(default_factory=dict)

    @classmethod
    def yes(cls, witness=None, reason="", **extra):
        return cls(Outcome.YES, witness, reason, extra)

    @classmethod
    def no(cls, witness=None, reason="", **extra):
        return cls(Outcome.NO, witness, reason, extra)

    @classmethod
    def unknown(cls, witness=None, reason="", **extra):
        return cls(Outcome.UNKNOWN, witness, reason, extra)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def __bool__(self):
        raise TypeError("use .is_yes / .is_no; a Verdict has three values")

    def to_json(self) -> dict:
        out = {"outcome": self.outcome.value, "witness": jsonable(self.witness),
               "reason": self.reason}
        if self.extra:
            out["extra"] = jsonable(self.extra)
        return out


class SizeBoundExceeded(Exception):
    """An enumeration went past its configured ceiling."""

    def __init__(self, what: str, reached: int, bound: int):
        super().__init__(f"{what}: reached {reached} (bound {bound})")
        self.what = what
        self.reached = reached
        self.bound = bound


class ConstructionError(Exception):
    """A construction produced something inconsistent (a bug, not bad input)."""


class FragmentViolation(Exception):
    """Two criteria that must agree on decidable instances disagreed."""


def jsonable(x):
    """Best-effort conversion of witnesses into JSON-compatible values."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)
