"""Pass/fail bookkeeping for the built-in identity checks.

Every closed-form identity exposed by this library can be re-derived by an
independent route (series summation, adaptive quadrature, finite differences,
or dense matrix algebra).  A check compares the two routes and records the
outcome as a :class:`VerificationReport`.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    ``residual`` is the computed deviation (absolute or relative, stated in
    the identity name), ``tolerance`` the threshold it was held against.
    """

    identity: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.identity}: residual={self.residual:.3e} tol={self.tolerance:.1e}"
        if self.detail:
            line += f"  ({self.detail})"
        return line


def check(identity: str, residual: float, tolerance: float, detail: str = "") -> VerificationReport:
    """Build a report, passing iff ``residual <= tolerance``."""
    residual = abs(float(residual))
    return VerificationReport(identity, residual, float(tolerance), residual <= tolerance, detail)


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def format_table(reports) -> str:
    """Fixed-width table of reports, one line per identity."""
    width = max((len(r.identity) for r in reports), default=10)
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status}  {r.identity:<{width}}  residual={r.residual:.6e}  tol={r.tolerance:.1e}"
            + (f"  {r.detail}" if r.detail else "")
        )
    return "\n".join(lines)
