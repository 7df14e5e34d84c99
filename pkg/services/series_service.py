from fractions import Fraction
from typing import Optional, Tuple, Union

from config.logger import logger
from models.series import (
    LaurentSeries,
    SeriesError,
    SeriesLike,
    TruncatedSeries,
    as_laurent,
    collapse,
    precision_of,
)
from models.upolynomial import UPolynomial

# Newton doubles the valid order each step, so this covers orders far beyond 2**20
MAX_NEWTON_STEPS = 24


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum truncated at the smaller order."""
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    return a * b


def series_scale(a: TruncatedSeries, factor: Union[int, Fraction]) -> TruncatedSeries:
    """Multiply every coefficient by an exact scalar."""
    return a.scale(factor)


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """1/a as a power series; requires a nonzero constant term."""
    return a.reciprocal()


def laurent_div(a: SeriesLike, b: SeriesLike) -> LaurentSeries:
    """Quotient of two Laurent series; valuations subtract."""
    numerator = as_laurent(a)
    denominator = as_laurent(b)
    if denominator.is_zero():
        raise SeriesError("division by zero series")
    return numerator / denominator


def first_difference(a: SeriesLike, b: SeriesLike) -> Optional[int]:
    """Lowest exponent at which a and b differ within their common precision."""
    difference = as_laurent(a) - as_laurent(b)
    if difference.is_zero():
        return None
    return difference.valuation


def vanishing_order(value: SeriesLike) -> Optional[int]:
    """Precision to which value is known to be zero, or None if it is not zero."""
    if not value.is_zero():
        return None
    return precision_of(value)


def _extend(seed: TruncatedSeries, order: int) -> TruncatedSeries:
    if seed.order >= order:
        return seed.truncate(order)
    return TruncatedSeries.from_coeffs(seed.coeffs, order)


def _as_power_series(value: SeriesLike, what: str) -> TruncatedSeries:
    value = collapse(value)
    if not isinstance(value, TruncatedSeries):
        raise SeriesError(f"{what} is not a power series")
    return value


def newton_algebraic_root(poly: UPolynomial, seed: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """
    Solve poly(y) = 0 for a power series y by Newton iteration.

    Args:
        poly: Polynomial in y whose coefficients are power series in z
        seed: Approximate root with poly(seed) = 0 mod z
        order: Target truncation order (default: lowest coefficient order)

    Returns:
        The root y with poly(y) = 0 up to the target order

    Raises:
        SeriesError: If the seed is not an approximate root, the derivative is
            not invertible, or an iteration fails to double the valid order
    """
    target = order if order is not None else poly.precision
    if poly.precision < target:
        raise SeriesError(f"Polynomial coefficients are only known to order {poly.precision}, need {target}")

    derivative = poly.derivative()
    y = _extend(seed, target)
    residual = _as_power_series(poly.evaluate(y), "Residual").truncate(target)
    valid = residual.valuation()
    if valid is None:
        return y
    if valid < 1:
        raise SeriesError("seed is not an approximate root: residual has a nonzero constant term")

    logger.debug(f"Newton start: target order {target}, residual valuation {valid}")
    for step in range(MAX_NEWTON_STEPS):
        slope = _as_power_series(derivative.evaluate(y), "Derivative").truncate(target)
        if not slope[0]:
            raise SeriesError("singular Newton step")
        y = y - residual * slope.reciprocal()
        residual = _as_power_series(poly.evaluate(y), "Residual").truncate(target)
        new_valid = residual.valuation()
        logger.debug(f"Newton step {step + 1}: residual valuation {new_valid}")
        if new_valid is None:
            return y
        if new_valid < min(2 * valid, target + 1):
            raise SeriesError(f"Newton step did not double the valid order ({valid} -> {new_valid})")
        valid = new_valid

    raise SeriesError(f"Newton iteration did not converge within {MAX_NEWTON_STEPS} steps")


def _invert_leading(lead: SeriesLike) -> SeriesLike:
    if isinstance(lead, TruncatedSeries) and lead[0]:
        return lead.reciprocal()
    lifted = as_laurent(lead)
    if lifted.is_zero():
        raise SeriesError("non-invertible leading coefficient")
    return lifted.reciprocal()


def upoly_divrem(num: UPolynomial, den: UPolynomial) -> Tuple[UPolynomial, UPolynomial]:
    """
    Long division in u: num = den * quotient + remainder with deg(remainder) < deg(den).

    Laurent intermediates are collapsed back to power series wherever the
    valuation allows it.
    """
    den_degree = den.degree
    if den_degree < 0:
        raise SeriesError("division by the zero polynomial")

    lead_inverse = _invert_leading(den.leading)
    remainder = list(num.coeffs)
    num_degree = num.degree
    if num_degree < den_degree:
        return UPolynomial(()), num

    quotient = [None] * (num_degree - den_degree + 1)
    for shift in range(num_degree - den_degree, -1, -1):
        factor = collapse(remainder[shift + den_degree] * lead_inverse)
        quotient[shift] = factor
        for k in range(den_degree + 1):
            remainder[shift + k] = collapse(remainder[shift + k] - factor * den.coeffs[k])

    return UPolynomial(tuple(quotient)), UPolynomial(tuple(remainder[:den_degree]))
