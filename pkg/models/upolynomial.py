from dataclasses import dataclass
from typing import Iterable, Tuple

from models.series import (
    LaurentSeries,
    SeriesError,
    SeriesLike,
    TruncatedSeries,
    collapse,
    precision_of,
)


@dataclass(frozen=True)
class UPolynomial:
    """Polynomial in the level-marking variable u with series coefficients in z."""

    coeffs: Tuple[SeriesLike, ...]  # coefficient of u^k at index k

    def __post_init__(self):
        for c in self.coeffs:
            if not isinstance(c, (TruncatedSeries, LaurentSeries)):
                raise SeriesError(f"UPolynomial coefficients must be series, got {type(c).__name__}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[SeriesLike]) -> "UPolynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree ignoring coefficients that vanish to their precision; -1 for zero."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    @property
    def leading(self) -> SeriesLike:
        if self.degree < 0:
            raise SeriesError("The zero polynomial has no leading coefficient")
        return self.coeffs[self.degree]

    @property
    def precision(self) -> int:
        """Lowest absolute precision among the coefficients."""
        return min(precision_of(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return self.degree < 0

    def coefficient(self, k: int) -> SeriesLike:
        return self.coeffs[k]

    def collapse(self) -> "UPolynomial":
        return UPolynomial(tuple(collapse(c) for c in self.coeffs))

    def __add__(self, other: "UPolynomial") -> "UPolynomial":
        if not isinstance(other, UPolynomial):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(size):
            if k >= len(self.coeffs):
                out.append(other.coeffs[k])
            elif k >= len(other.coeffs):
                out.append(self.coeffs[k])
            else:
                out.append(self.coeffs[k] + other.coeffs[k])
        return UPolynomial(tuple(out))

    def __neg__(self) -> "UPolynomial":
        return UPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UPolynomial") -> "UPolynomial":
        if not isinstance(other, UPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UPolynomial):
            if not self.coeffs or not other.coeffs:
                return UPolynomial(())
            out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    term = a * b
                    out[i + j] = term if out[i + j] is None else out[i + j] + term
            return UPolynomial(tuple(out))
        if isinstance(other, (TruncatedSeries, LaurentSeries, int)) or hasattr(other, "denominator"):
            return UPolynomial(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def evaluate(self, u: SeriesLike) -> SeriesLike:
        """Horner evaluation at a series value of u."""
        if not self.coeffs:
            raise SeriesError("Cannot evaluate an empty polynomial")
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * u + c
        return collapse(acc)

    def derivative(self) -> "UPolynomial":
        """Formal derivative with respect to u."""
        if len(self.coeffs) <= 1:
            order = precision_of(self.coeffs[0]) if self.coeffs else 0
            return UPolynomial((TruncatedSeries.zero(max(order, 0)),))
        return UPolynomial(tuple(c * k for k, c in enumerate(self.coeffs) if k > 0))
