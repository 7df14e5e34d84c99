import traceback
from math import comb
from typing import Callable, List, Optional, Tuple

from mpmath import mpf

from config.logger import logger
from config.settings import CROSS_CHECK_ORDER, IDENTITY_ORDER, get_brute_cap
from models.count_table import CountTable
from models.path_model import Layer, ModelKind
from models.series import SeriesLike, TruncatedSeries
from models.verification import CheckResult, VerificationReport
from services.asymptotics_service import cata_pole, plain_singularity, residue_amplitude
from services.dp_service import DPError, dp_counts, dp_series, open_total
from services.golden_data_service import create_golden_series
from services.kernel_service import (
    PERTURBATION_EXPONENT,
    PERTURBATION_TARGETS,
    PLAIN_KEYS,
    INDEXED_KEYS,
    closed_form,
    kernel_cancellation_check,
    t_lagrange,
)
from services.path_model_service import brute_force_counts
from services.series_service import first_difference

# Levels compared between closed forms and the DP
CROSS_CHECK_LEVELS = 5
# Printed constants with their acceptance tolerances
PRINTED_CONSTANTS = {
    "zbar": ("0.5248885986", 1e-9),
    "tbar": ("0.2755080409", 1e-9),
    "growth": ("1.905166167", 1e-8),
    "dDdz": ("-11.0530836206", 1e-6),
    "z_sing": ("0.5291336839", 1e-9),
    "plain_growth": ("1.88988157485", 1e-9),
    "amplitude_f0": ("0.0049752931", 1e-8),
    "amplitude_g0": ("0.0062160344", 1e-8),
    "printed_prefactor": ("21.0579609634", 1e-6),
}

Section = Tuple[str, Tuple[CheckResult, ...]]


class VerificationError(Exception):
    """Custom exception for verification suite errors."""
    pass


def _perturbed(key: str, series: SeriesLike, perturb: Optional[str], order: int) -> SeriesLike:
    """Disturb one closed form by z^3 (negative control)."""
    if perturb != key:
        return series
    logger.info(f"Perturbing closed form {key} by z^{PERTURBATION_EXPONENT}")
    return series + TruncatedSeries.monomial(PERTURBATION_EXPONENT, order)


def _compare(name: str, actual: SeriesLike, expected: SeriesLike, order: int) -> CheckResult:
    divergence = first_difference(actual, expected)
    if divergence is not None and divergence <= order:
        return CheckResult(name, False, first_divergence=divergence, detail=f"first difference at z^{divergence}")
    return CheckResult(name, True, verified_order=order)


def _run_section(name: str, build: Callable[[], List[CheckResult]]) -> Section:
    """Run one group of checks; a crash becomes a failing check named after the group."""
    try:
        checks = tuple(build())
    except Exception as e:
        logger.error(f"Verification section {name} crashed: {str(e)}")
        logger.debug(f"Traceback: {traceback.format_exc()}")
        checks = (CheckResult(f"{name}.error", False, detail=str(e)),)
    failed = sum(1 for c in checks if not c.passed)
    logger.info(f"Section {name}: {len(checks) - failed}/{len(checks)} checks passed")
    return name, checks


def golden_checks(perturb: Optional[str] = None) -> List[CheckResult]:
    """Closed forms, and the DP where it applies, against the printed expansions."""
    checks = []
    for entry in create_golden_series():
        expected = entry.to_series()
        actual = _perturbed(entry.key, closed_form(entry.key, entry.order), perturb, entry.order)
        checks.append(_compare(f"golden.{entry.key}", actual, expected, entry.order))
        if entry.key in ("cata.f0", "cata.g0"):
            layer = Layer.F if entry.key == "cata.f0" else Layer.G
            checks.append(_compare(f"golden.dp.{entry.key}", dp_series("cata", layer, 0, entry.order), expected, entry.order))
        elif entry.key == "cata.open":
            checks.append(_compare("golden.dp.cata.open", open_total("cata", entry.order), expected, entry.order))
    return checks


def _table_check(model: ModelKind, brute: CountTable, dp: CountTable) -> CheckResult:
    mismatch = brute.first_mismatch(dp)
    if mismatch is None:
        return CheckResult(f"brute_vs_dp.{model.value}", True, verified_order=brute.max_len)
    n, layer, level = mismatch
    return CheckResult(
        f"brute_vs_dp.{model.value}",
        False,
        first_divergence=n,
        detail=f"length {n}, state {layer.value}{level}: brute {brute.count(n, layer, level)} vs dp {dp.count(n, layer, level)}",
    )


def brute_vs_dp_checks(brute_cap: int) -> List[CheckResult]:
    """Exhaustive enumeration against the recursions for every model and state."""
    return [_table_check(kind, brute_force_counts(kind, brute_cap), dp_counts(kind, brute_cap)) for kind in ModelKind]


def _level_sum(model: str, layer: Layer, first_level: int, order: int) -> TruncatedSeries:
    table = dp_counts(model, order)
    return TruncatedSeries.from_coeffs(
        [sum(table.counts[layer][n][first_level:]) for n in range(order + 1)], order
    )


def closed_vs_dp_checks(order: int, perturb: Optional[str] = None) -> List[CheckResult]:
    """Every closed form against the DP series of the matching state."""
    pairs: List[Tuple[str, SeriesLike]] = [
        ("cata.f0", dp_series("cata", Layer.F, 0, order)),
        ("cata.g0", dp_series("cata", Layer.G, 0, order)),
        ("cata.open", open_total("cata", order)),
        ("cata.F1", _level_sum("cata", Layer.F, 1, order)),
        ("cata.G1", _level_sum("cata", Layer.G, 1, order)),
        ("rtl.a0", dp_series("cata-rtl", Layer.A, 0, order)),
        ("rtl.a1", dp_series("cata-rtl", Layer.A, 1, order)),
        ("rtl.b0", dp_series("cata-rtl", Layer.B, 0, order)),
        ("rtl.b1", dp_series("cata-rtl", Layer.B, 1, order)),
        ("air.A1", _level_sum("air", Layer.A, 0, order)),
        ("air.C1", _level_sum("air", Layer.C, 0, order)),
        ("air.open", open_total("air", order)),
    ]
    for k in range(CROSS_CHECK_LEVELS + 1):
        # [u^k]F(u) is the state at level k + 1
        pairs.append((f"cata.fk:{k}", dp_series("cata", Layer.F, k + 1, order)))
        pairs.append((f"cata.gk:{k}", dp_series("cata", Layer.G, k + 1, order)))
        for name, layer in (("ak", Layer.A), ("bk", Layer.B), ("ck", Layer.C), ("dk", Layer.D)):
            pairs.append((f"air.{name}:{k}", dp_series("air", layer, k, order)))

    return [
        _compare(f"closed_vs_dp.{key}", _perturbed(key, closed_form(key, order), perturb, order), expected, order)
        for key, expected in pairs
    ]


def identity_checks(order: int, perturb: Optional[str] = None) -> List[CheckResult]:
    kernel_perturb = perturb if perturb in PERTURBATION_TARGETS else None
    return list(kernel_cancellation_check(order, kernel_perturb).checks)


def structural_checks(order: int) -> List[CheckResult]:
    """Plain closed paths, reversal symmetry at the origin and the rejected right-to-left total."""
    plain = dp_series("plain", Layer.F, 0, order)
    checks = [
        _compare("structural.plain_f0_is_reciprocal_of_1_minus_t", plain, (1 - t_lagrange(order)).reciprocal(), order),
        _compare(
            "structural.rtl_a0_equals_cata_f0",
            dp_series("cata-rtl", Layer.A, 0, order),
            dp_series("cata", Layer.F, 0, order),
            order,
        ),
    ]

    off_multiple = [n for n in range(order + 1) if n % 3 and plain[n]]
    checks.append(
        CheckResult(
            "structural.plain_lengths_divisible_by_3",
            not off_multiple,
            first_divergence=off_multiple[0] if off_multiple else None,
            verified_order=order if not off_multiple else None,
        )
    )
    # Closed plain paths of length 3n are counted by the ternary numbers binom(3n, n)/(2n+1)
    ternary = TruncatedSeries.from_coeffs(
        [comb(n, n // 3) // (2 * n // 3 + 1) if n % 3 == 0 else 0 for n in range(order + 1)], order
    )
    checks.append(_compare("structural.plain_closed_paths_are_ternary_numbers", plain, ternary, order))
    checks.append(
        CheckResult("structural.t_integral", t_lagrange(order).is_integral(), verified_order=order)
    )

    try:
        open_total("cata-rtl", 1)
        checks.append(CheckResult("structural.rtl_open_total_rejected", False, detail="open_total accepted cata-rtl"))
    except DPError as e:
        checks.append(CheckResult("structural.rtl_open_total_rejected", True, detail=str(e)))
    return checks


def _constant_check(name: str, value: mpf, tolerance_override: Optional[float]) -> CheckResult:
    printed, tolerance = PRINTED_CONSTANTS[name]
    tolerance = tolerance_override or tolerance
    error = abs(value - mpf(printed))
    return CheckResult(
        f"asymptotics.{name}",
        error <= tolerance,
        detail=f"computed {float(value):.12g}, printed {printed}, |diff| {float(error):.2g}",
    )


def asymptotic_checks(tolerance: Optional[float] = None) -> List[CheckResult]:
    plain = plain_singularity()
    pole = cata_pole()
    f0 = residue_amplitude("f0", pole)
    g0 = residue_amplitude("g0", pole)
    return [
        _constant_check("z_sing", plain.z_sing, tolerance),
        _constant_check("plain_growth", plain.growth, tolerance),
        _constant_check("zbar", pole.zbar, tolerance),
        _constant_check("tbar", pole.tbar, tolerance),
        _constant_check("growth", pole.growth, tolerance),
        _constant_check("dDdz", pole.dDdz, tolerance),
        _constant_check("amplitude_f0", f0.printed_convention, tolerance),
        _constant_check("amplitude_g0", g0.printed_convention, tolerance),
        _constant_check("printed_prefactor", f0.printed_prefactor, tolerance),
        CheckResult("asymptotics.catastrophes_grow_faster", pole.growth > plain.growth),
    ]


def _validate_perturb(perturb: Optional[str]) -> None:
    if perturb is None:
        return
    closed_keys = set(PLAIN_KEYS) | {f"{k}:{i}" for k in INDEXED_KEYS for i in range(CROSS_CHECK_LEVELS + 1)}
    if perturb not in PERTURBATION_TARGETS and perturb not in closed_keys:
        raise VerificationError(f"Unknown perturbation target '{perturb}'")


def run_verification(
    order: int = CROSS_CHECK_ORDER,
    brute_cap: Optional[int] = None,
    identity_order: int = IDENTITY_ORDER,
    perturb: Optional[str] = None,
    tolerance: Optional[float] = None,
    include_asymptotics: bool = True,
) -> VerificationReport:
    """
    Run the full verification suite.

    Args:
        order: Order for closed form vs DP comparisons
        brute_cap: Longest word for brute force vs DP (default from settings)
        identity_order: Order for the algebraic identities
        perturb: Closed-form key or kernel series to disturb, as a negative control
        tolerance: Override for the asymptotic constant tolerances
        include_asymptotics: Also check the printed asymptotic constants

    Returns:
        VerificationReport; report.passed is False when any check failed

    Raises:
        VerificationError: For invalid arguments
    """
    if order < 0 or identity_order < 0:
        raise VerificationError("Verification orders must be non-negative")
    _validate_perturb(perturb)
    cap = get_brute_cap() if brute_cap is None else brute_cap
    logger.info(f"Running verification: order {order}, identities to {identity_order}, brute-force cap {cap}")

    sections = [
        _run_section("golden", lambda: golden_checks(perturb)),
        _run_section("brute_vs_dp", lambda: brute_vs_dp_checks(cap)),
        _run_section("closed_vs_dp", lambda: closed_vs_dp_checks(order, perturb)),
        _run_section("identities", lambda: identity_checks(identity_order, perturb)),
        _run_section("structural", lambda: structural_checks(order)),
    ]
    if include_asymptotics:
        sections.append(_run_section("asymptotics", lambda: asymptotic_checks(tolerance)))

    report = VerificationReport(order=order, brute_cap=cap, sections=tuple(sections))
    if report.passed:
        logger.info("All verification checks passed")
    else:
        logger.warning(f"{len(report.failures)} verification check(s) failed: {', '.join(c.name for c in report.failures)}")
    return report
