from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity or comparison."""

    name: str
    passed: bool
    first_divergence: Optional[int] = None  # lowest exponent (or length) where the check fails
    verified_order: Optional[int] = None  # order to which the check holds
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Every check run by the verification suite, grouped by section."""

    order: int
    brute_cap: int
    sections: Tuple[Tuple[str, Tuple[CheckResult, ...]], ...]

    @property
    def checks(self) -> Tuple[CheckResult, ...]:
        return tuple(check for _, checks in self.sections for check in checks)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> Tuple[CheckResult, ...]:
        return tuple(check for check in self.checks if not check.passed)
