from dataclasses import dataclass
from typing import Optional, Tuple

from models.series import LaurentSeries, TruncatedSeries
from models.upolynomial import UPolynomial
from models.verification import CheckResult


@dataclass(frozen=True)
class KernelBasis:
    """Series data of the catastrophe kernel z^2u^3 - u^2 + 2zu - z^2."""

    order: int  # requested truncation order N
    working_order: int  # order the series were computed at
    t: TruncatedSeries  # t(1-t)^2 = z^3, t = z^3 + ...
    x: TruncatedSeries  # z^3
    u1: LaurentSeries  # z/t, valuation -2
    d_cata: TruncatedSeries  # -t + z - 2zt + zt^2
    kernel_cubic: UPolynomial
    bad_quadratic: UPolynomial  # (u - u2)(u - u3), monic


@dataclass(frozen=True)
class AirKernel:
    """Series data of the air-pocket denominator D_air(u) = (u - rho)(z^2u^2 + Ku + L)."""

    order: int
    working_order: int
    r: TruncatedSeries  # z^2 * rho, constant term 1
    rho: LaurentSeries  # valuation -2
    K: TruncatedSeries  # coefficients of z^2(u - sigma)(u - tau) = z^2u^2 + Ku + L
    L: TruncatedSeries
    d_air: UPolynomial
    bad_quadratic: UPolynomial  # (u - sigma)(u - tau), monic


@dataclass(frozen=True)
class RtlClosedForms:
    """Closed forms of the right-to-left catastrophe model at levels 0 and 1."""

    a0: TruncatedSeries
    a1: TruncatedSeries
    b0: TruncatedSeries
    b1: TruncatedSeries


@dataclass(frozen=True)
class LevelTotals:
    """Generating functions evaluated at u = 1 (sums over all levels)."""

    first: TruncatedSeries  # F(1) or A(1)
    second: TruncatedSeries  # G(1) or C(1)


@dataclass(frozen=True)
class CancellationReport:
    """Kernel-cancellation witnesses for the catastrophe and air-pocket models."""

    order: int
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def verified_order(self) -> Optional[int]:
        orders = [check.verified_order for check in self.checks if check.verified_order is not None]
        return min(orders) if orders else None
