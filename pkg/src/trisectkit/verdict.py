"""Verdicts and the error taxonomy shared by every engine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

STATUSES = ("holds", "violated", "consistent", "refuted", "error")


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class BudgetExceeded(RuntimeError):
    """A configured resource limit was hit (CLI exit code 3)."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checked statement.

    ``lhs``/``rhs`` hold both sides of the checked inequality or identity
    when there is one; ``witness`` carries anything needed to audit a failure
    (the failing stage, a relator, an argmin point...).
    """

    status: str
    slack: Any = None
    lhs: Any = None
    rhs: Any = None
    witness: dict[str, Any] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown verdict status {self.status!r}")
        if self.status == "error" and not self.reason:
            raise ValueError("error verdicts need a machine-readable reason")

    @property
    def ok(self) -> bool:
        return self.status in ("holds", "consistent")

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def inequality(cls, lhs, rhs, **extra) -> "Verdict":
        """``lhs <= rhs``; the slack is ``rhs - lhs``."""
        status = "holds" if lhs <= rhs else "violated"
        return cls(status, slack=rhs - lhs, lhs=lhs, rhs=rhs, **extra)

    @classmethod
    def identity(cls, lhs, rhs, **extra) -> "Verdict":
        status = "holds" if lhs == rhs else "violated"
        return cls(status, slack=rhs - lhs, lhs=lhs, rhs=rhs, **extra)
