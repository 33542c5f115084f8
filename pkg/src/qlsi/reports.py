"""Uniform pass/fail records for numerical inequality checks.

Every check in this package reduces to "is lhs <= rhs up to a tolerance".
A :class:`CheckReport` stores both sides, the signed gap ``rhs - lhs``, and
a verdict computed with the shared rule: pass iff ``gap >= -tol * scale``
where ``scale = max(1, |rhs|)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality check on one instance."""

    name: str
    lhs: float
    rhs: float
    gap: float
    tol: float
    verdict: str  # "pass" or "fail"
    instance_seed: int
    instance_descriptor: str

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def check(
    name: str,
    lhs: float,
    rhs: float,
    tol: float,
    seed: int = 0,
    descriptor: str = "",
) -> CheckReport:
    """Build a CheckReport for the inequality ``lhs <= rhs`` at ``tol``."""
    lhs = float(lhs)
    rhs = float(rhs)
    gap = rhs - lhs
    scale = max(1.0, abs(rhs))
    verdict = "pass" if gap >= -tol * scale else "fail"
    return CheckReport(name, lhs, rhs, gap, float(tol), verdict, seed, descriptor)
