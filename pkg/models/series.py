from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

Scalar = Union[int, Fraction]


class SeriesError(Exception):
    """Custom exception for series arithmetic errors."""
    pass


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in z with exact rational coefficients, known up to z^order."""

    coeffs: Tuple[Fraction, ...]  # coefficient of z^k at index k
    order: int  # truncation order, inclusive

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError(f"Truncation order must be non-negative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise SeriesError(f"Expected {self.order + 1} coefficients for order {self.order}, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "TruncatedSeries":
        """Build a series from leading coefficients, padding with zeros up to order."""
        values = [Fraction(c) for c in coeffs][:order + 1]
        values.extend([Fraction(0)] * (order + 1 - len(values)))
        return cls(tuple(values), order)

    @classmethod
    def from_terms(cls, terms: dict, order: int) -> "TruncatedSeries":
        """Build a series from an {exponent: coefficient} mapping."""
        values = [Fraction(0)] * (order + 1)
        for exponent, coefficient in terms.items():
            if exponent < 0:
                raise SeriesError(f"Negative exponent {exponent} in a power series")
            if exponent <= order:
                values[exponent] = Fraction(coefficient)
        return cls(tuple(values), order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([], order)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: Scalar = 1) -> "TruncatedSeries":
        return cls.from_terms({exponent: coefficient}, order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The indeterminate z."""
        return cls.monomial(1, order)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise SeriesError(f"Coefficient of z^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def valuation(self) -> Optional[int]:
        """Exponent of the lowest nonzero term, or None if zero to this order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        if order < 0:
            raise SeriesError(f"Truncation order must be non-negative, got {order}")
        return TruncatedSeries(self.coeffs[:order + 1], order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k; negative k divides and requires the low terms to vanish."""
        if k >= 0:
            return TruncatedSeries((Fraction(0),) * k + self.coeffs, self.order + k)
        drop = -k
        if drop > self.order:
            raise SeriesError(f"Precision exhausted: cannot divide an order-{self.order} series by z^{drop}")
        if any(self.coeffs[:drop]):
            raise SeriesError(f"Series is not divisible by z^{drop}")
        return TruncatedSeries(self.coeffs[drop:], self.order - drop)

    def first_difference(self, other: "TruncatedSeries", order: Optional[int] = None) -> Optional[int]:
        """Lowest exponent where the two series differ, within the common order."""
        limit = min(self.order, other.order)
        if order is not None:
            limit = min(limit, order)
        for k in range(limit + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def _coerce(self, other) -> Optional["TruncatedSeries"]:
        if isinstance(other, TruncatedSeries):
            return other
        if _is_scalar(other):
            return TruncatedSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        n = min(self.order, rhs.order)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:n + 1], rhs.coeffs[:n + 1])), n)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def scale(self, factor: Scalar) -> "TruncatedSeries":
        factor = Fraction(factor)
        return TruncatedSeries(tuple(c * factor for c in self.coeffs), self.order)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries(tuple(out), n)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        a = self.coeffs
        if not a[0]:
            raise SeriesError("not invertible as power series; use LaurentSeries division")
        inverse_head = 1 / a[0]
        out = [inverse_head]
        for n in range(1, self.order + 1):
            acc = sum((a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            out.append(-acc * inverse_head)
        return TruncatedSeries(tuple(out), self.order)

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise SeriesError("division by zero scalar")
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self.reciprocal().scale(other)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = TruncatedSeries.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result


@dataclass(frozen=True)
class LaurentSeries:
    """z^valuation * body, where body has a nonzero constant term or is zero."""

    valuation: int
    body: TruncatedSeries

    def __post_init__(self):
        if not self.body.is_zero() and not self.body.coeffs[0]:
            raise SeriesError("LaurentSeries body must have a nonzero constant term")

    @classmethod
    def from_parts(cls, valuation: int, body: TruncatedSeries) -> "LaurentSeries":
        """Normalize z^valuation * body by moving leading zeros into the valuation."""
        leading = body.valuation()
        if not leading:
            return cls(valuation, body)
        return cls(valuation + leading, body.shift(-leading))

    @classmethod
    def from_series(cls, series: TruncatedSeries) -> "LaurentSeries":
        return cls.from_parts(0, series)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: Scalar = 1) -> "LaurentSeries":
        """coefficient * z^exponent with a body known to the given relative order."""
        return cls(exponent, TruncatedSeries.constant(coefficient, order))

    @property
    def precision(self) -> int:
        """Highest exponent whose coefficient is known."""
        return self.valuation + self.body.order

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def coefficient(self, exponent: int) -> Fraction:
        if exponent > self.precision:
            raise SeriesError(f"Coefficient of z^{exponent} is beyond precision {self.precision}")
        return self.body[exponent - self.valuation]

    def terms(self):
        """(exponent, coefficient) pairs for every known coefficient."""
        return [(self.valuation + k, c) for k, c in enumerate(self.body.coeffs)]

    def to_series(self) -> TruncatedSeries:
        """Collapse to a power series; fails on a genuinely negative valuation."""
        if self.body.is_zero():
            if self.precision < 0:
                raise SeriesError("Precision exhausted while collapsing a zero Laurent series")
            return TruncatedSeries.zero(self.precision)
        if self.valuation < 0:
            raise SeriesError(f"Negative valuation {self.valuation}: not a power series")
        return self.body.shift(self.valuation)

    def _lift(self, other) -> Optional["LaurentSeries"]:
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, TruncatedSeries):
            return LaurentSeries.from_series(other)
        if _is_scalar(other):
            return LaurentSeries.from_series(TruncatedSeries.constant(other, max(self.precision, 0)))
        return None

    def __add__(self, other):
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        v = min(self.valuation, rhs.valuation)
        left = self.body.shift(self.valuation - v)
        right = rhs.body.shift(rhs.valuation - v)
        return LaurentSeries.from_parts(v, left + right)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.valuation, -self.body)

    def __sub__(self, other):
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other):
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return LaurentSeries.from_parts(self.valuation + rhs.valuation, self.body * rhs.body)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentSeries":
        if self.body.is_zero():
            raise SeriesError("division by zero series")
        return LaurentSeries(-self.valuation, self.body.reciprocal())

    def __truediv__(self, other):
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.reciprocal()

    def __rtruediv__(self, other):
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.reciprocal()

    def __pow__(self, exponent: int) -> "LaurentSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return LaurentSeries.from_parts(self.valuation * exponent, self.body ** exponent)


SeriesLike = Union[TruncatedSeries, LaurentSeries]


def precision_of(value: SeriesLike) -> int:
    """Highest exponent known for either series type."""
    if isinstance(value, LaurentSeries):
        return value.precision
    return value.order


def collapse(value: SeriesLike) -> SeriesLike:
    """Turn a Laurent series without negative powers back into a power series."""
    if isinstance(value, LaurentSeries):
        if value.valuation >= 0 or (value.is_zero() and value.precision >= 0):
            return value.to_series()
    return value


def as_laurent(value: SeriesLike) -> LaurentSeries:
    if isinstance(value, LaurentSeries):
        return value
    return LaurentSeries.from_series(value)
