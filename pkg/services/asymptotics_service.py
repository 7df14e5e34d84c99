import traceback
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from mpmath import mp, mpf

from config.logger import logger
from config.settings import AMPLITUDE_ORDER, get_asymptotic_dps
from models.pole import (
    AmplitudeVerdict,
    AsymptoticReport,
    EmpiricalAmplitude,
    PlainSingularity,
    PoleLocation,
    ResidueAmplitude,
)
from models.series import TruncatedSeries
from services.dp_service import dp_series

# Seed rounded from zbar = 0.5248885986..., tbar = 0.2755080409...
POLE_SEED = ("0.52", "0.28")
POLE_MAX_STEPS = 100
POLE_TOLERANCE = mpf("1e-12")
# Three conjugate branch points share the modulus (4/27)^(1/3), so corrections repeat with period 3
RICHARDSON_STRIDE = 3
AMPLITUDE_WINDOW = (250, AMPLITUDE_ORDER)
AMPLITUDE_KINDS = ("f0", "g0")

CONVENTION_NOTE = (
    "The printed pole expansion rewrites -11.0530836206(z - zbar) as 21.0579609634(1 - z/zbar). "
    "21.0579609634 is -dD/dz / zbar, but the expansion forces -dD/dz * zbar (about 5.8016), "
    "so the printed amplitudes 0.0049752931 and 0.0062160344 equal the residue amplitudes times zbar^2. "
    "Both conventions are reported; the empirical estimate shows which one the coefficients follow."
)

Number = Union[int, Fraction, mpf, float]


class AsymptoticsError(Exception):
    """Custom exception for asymptotic analysis errors."""
    pass


def _to_mpf(value: Number) -> mpf:
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def plain_singularity() -> PlainSingularity:
    """x = 4/27, zSing = (4/27)^(1/3) = 0.5291336839..., growth 1.88988157485..."""
    with mp.workdps(get_asymptotic_dps()):
        z_sing = mp.cbrt(mpf(4) / 27)
        return PlainSingularity(x_sing=Fraction(4, 27), z_sing=z_sing, growth=1 / z_sing)


def _branch_equation(z, t):
    return t * (1 - t) ** 2 - z ** 3


def _denominator(z, t):
    return -t + z - 2 * z * t + z * t ** 2


def cata_pole() -> PoleLocation:
    """
    Locate the dominant pole of f_0 and g_0.

    Solves t(1-t)^2 = z^3 together with -t + z - 2zt + zt^2 = 0 with mpmath findroot
    (multidimensional Newton, mdnewton), then differentiates the denominator along the
    branch with dt/dz = 3z^2 / ((1-t)(1-3t)).

    Returns:
        PoleLocation with residual and closed-form witness norms

    Raises:
        AsymptoticsError: If Newton fails, leaves (0,1)^2 or misses the tolerance
    """
    try:
        with mp.workdps(get_asymptotic_dps()):
            try:
                root = mp.findroot(
                    [_branch_equation, _denominator],
                    (mpf(POLE_SEED[0]), mpf(POLE_SEED[1])),
                    solver="mdnewton",
                    maxsteps=POLE_MAX_STEPS,
                )
            except (ValueError, ZeroDivisionError) as e:
                raise AsymptoticsError(f"Pole search did not converge within {POLE_MAX_STEPS} steps: {e}") from e

            zbar, tbar = root[0], root[1]
            if not (0 < zbar < 1 and 0 < tbar < 1):
                raise AsymptoticsError(f"Pole search left the unit square: z = {zbar}, t = {tbar}")

            residual = max(abs(_branch_equation(zbar, tbar)), abs(_denominator(zbar, tbar)))
            if residual >= POLE_TOLERANCE:
                raise AsymptoticsError(f"Pole residual {mp.nstr(residual, 5)} exceeds {POLE_TOLERANCE}")

            # Eliminating z between the two equations gives t = (1-t)^4 and z^2 = t
            witness = max(abs(zbar ** 2 - tbar), abs(tbar - (1 - tbar) ** 4))
            if witness >= POLE_TOLERANCE:
                raise AsymptoticsError(f"Pole witness {mp.nstr(witness, 5)} exceeds {POLE_TOLERANCE}")

            dtdz = 3 * zbar ** 2 / ((1 - tbar) * (1 - 3 * tbar))
            dDdz = -dtdz + 1 - 2 * tbar - 2 * zbar * dtdz + tbar ** 2 + 2 * zbar * tbar * dtdz

            logger.debug(f"Catastrophe pole at z = {mp.nstr(zbar, 15)}, t = {mp.nstr(tbar, 15)}")
            return PoleLocation(
                zbar=zbar,
                tbar=tbar,
                growth=1 / zbar,
                dDdz=dDdz,
                dtdz=dtdz,
                residual_norm=residual,
                witness_norm=witness,
            )
    except AsymptoticsError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in cata_pole: {str(e)}")
        logger.error(f"Traceback: {traceback.format_exc()}")
        raise AsymptoticsError(f"Pole location failed: {str(e)}") from e


def residue_amplitude(kind: str, pole: Optional[PoleLocation] = None) -> ResidueAmplitude:
    """
    Amplitude A in [z^n] ~ A * growth^n for f_0 or g_0.

    The simple pole gives A = -N(zbar) / (dDdz * zbar) with N the numerator
    -t + z - zt (f_0) or z(z - t) (g_0). The printed convention is A * zbar^2.
    """
    if kind not in AMPLITUDE_KINDS:
        raise AsymptoticsError(f"Unknown amplitude kind '{kind}' (expected one of: {', '.join(AMPLITUDE_KINDS)})")
    pole = pole or cata_pole()
    with mp.workdps(get_asymptotic_dps()):
        z, t = pole.zbar, pole.tbar
        numerator = -t + z - z * t if kind == "f0" else z * (z - t)
        residue = -numerator / (pole.dDdz * z)
        return ResidueAmplitude(
            kind=kind,
            numerator=numerator,
            residue=residue,
            printed_convention=residue * z ** 2,
            printed_prefactor=-pole.dDdz / z,
            forced_prefactor=-pole.dDdz * z,
        )


def _coefficients(series: Union[TruncatedSeries, Sequence[Number]]) -> List[Number]:
    if isinstance(series, TruncatedSeries):
        return list(series.coeffs)
    return list(series)


def empirical_amplitude(
    series: Union[TruncatedSeries, Sequence[Number]],
    window: Tuple[int, int],
    pole: Optional[PoleLocation] = None,
) -> EmpiricalAmplitude:
    """
    Scale a_n by zbar^n over an inclusive window and extrapolate the limit.

    The raw sequence s_n = a_n zbar^n converges slowly because the branch
    points at |z| = 0.5291... sit just outside the pole. With
    q = zbar / zSing, the pair (s_n, s_{n+3}) gives the estimate
    (s_{n+3} - q^3 s_n) / (1 - q^3), which removes the geometric part of the
    branch-point correction.

    Args:
        series: Exact series or a plain coefficient sequence
        window: (first, last) indices, inclusive
        pole: Precomputed pole location (computed when omitted)

    Raises:
        AsymptoticsError: If the window is empty or exceeds the series order
    """
    coeffs = _coefficients(series)
    first, last = window
    if first < 0 or first > last:
        raise AsymptoticsError(f"Invalid window [{first}, {last}]")
    if last >= len(coeffs):
        raise AsymptoticsError(f"Window end {last} exceeds the series order {len(coeffs) - 1}")

    pole = pole or cata_pole()
    plain = plain_singularity()
    with mp.workdps(get_asymptotic_dps()):
        zbar = pole.zbar
        tail = [(n, _to_mpf(coeffs[n]) * zbar ** n) for n in range(first, last + 1)]
        scaled = dict(tail)
        q3 = (zbar / plain.z_sing) ** RICHARDSON_STRIDE
        extrapolated = [
            (n, (scaled[n + RICHARDSON_STRIDE] - q3 * scaled[n]) / (1 - q3))
            for n in range(first, last - RICHARDSON_STRIDE + 1)
        ]
        estimate = extrapolated[-1][1] if extrapolated else tail[-1][1]
    return EmpiricalAmplitude(window=(first, last), tail=tuple(tail), extrapolated=tuple(extrapolated), estimate=estimate)


def geometric_control(order: int, pole: Optional[PoleLocation] = None) -> List[mpf]:
    """Coefficients growth^n of 1/(1 - z/zbar), whose amplitude is exactly 1."""
    pole = pole or cata_pole()
    with mp.workdps(get_asymptotic_dps()):
        return [pole.growth ** n for n in range(order + 1)]


def compare_amplitude(kind: str, empirical: EmpiricalAmplitude, amplitude: ResidueAmplitude) -> AmplitudeVerdict:
    """Name the candidate constant the empirical estimate is closer to."""
    with mp.workdps(get_asymptotic_dps()):
        to_residue = abs(empirical.estimate - amplitude.residue)
        to_printed = abs(empirical.estimate - amplitude.printed_convention)
        if to_residue <= to_printed:
            nearer, candidate, distance = "residue", amplitude.residue, to_residue
        else:
            nearer, candidate, distance = "printed", amplitude.printed_convention, to_printed
        return AmplitudeVerdict(
            kind=kind,
            estimate=empirical.estimate,
            residue=amplitude.residue,
            printed_convention=amplitude.printed_convention,
            nearer=nearer,
            relative_error=distance / abs(candidate),
        )


def amplitude_study(
    order: int = AMPLITUDE_ORDER,
    window: Tuple[int, int] = AMPLITUDE_WINDOW,
    kinds: Iterable[str] = AMPLITUDE_KINDS,
) -> Tuple[Tuple[Tuple[str, EmpiricalAmplitude], ...], Tuple[AmplitudeVerdict, ...]]:
    """Run the empirical estimator on f_0 and g_0 from the exact DP to the given order."""
    if window[1] > order:
        raise AsymptoticsError(f"Window end {window[1]} exceeds the series order {order}")
    logger.info(f"Empirical amplitude study on window {window} (order {order})")
    pole = cata_pole()
    empirical, verdicts = [], []
    for kind in kinds:
        layer = "F" if kind == "f0" else "G"
        series = dp_series("cata", layer, 0, order)
        estimate = empirical_amplitude(series, window, pole)
        verdict = compare_amplitude(kind, estimate, residue_amplitude(kind, pole))
        logger.info(f"{kind}: estimate {mp.nstr(verdict.estimate, 12)} is nearer the {verdict.nearer} constant")
        empirical.append((kind, estimate))
        verdicts.append(verdict)
    return tuple(empirical), tuple(verdicts)


def asymptotic_report(include_empirical: bool = True, order: int = AMPLITUDE_ORDER) -> AsymptoticReport:
    """
    Collect every constant of the asymptotics command.

    Args:
        include_empirical: Also run the long-series amplitude study
        order: Series order for the study; the window ends at this order

    Returns:
        AsymptoticReport with both amplitude conventions and the convention note
    """
    try:
        logger.info("Computing asymptotic constants")
        plain = plain_singularity()
        pole = cata_pole()
        if pole.growth <= plain.growth:
            raise AsymptoticsError("Catastrophes must increase the exponential growth")
        amplitudes = tuple(residue_amplitude(kind, pole) for kind in AMPLITUDE_KINDS)

        empirical, verdicts = (), ()
        if include_empirical:
            window = (min(AMPLITUDE_WINDOW[0], max(order - 70, 0)), order)
            empirical, verdicts = amplitude_study(order, window)

        return AsymptoticReport(
            plain=plain,
            pole=pole,
            amplitudes=amplitudes,
            verdicts=verdicts,
            empirical=empirical,
            note=CONVENTION_NOTE,
            amplitude_order=order if include_empirical else None,
        )
    except AsymptoticsError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in asymptotic_report: {str(e)}")
        logger.error(f"Traceback: {traceback.format_exc()}")
        raise AsymptoticsError(f"Asymptotic report failed: {str(e)}") from e
