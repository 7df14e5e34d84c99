from dataclasses import dataclass
from typing import Tuple

from models.series import LaurentSeries, SeriesLike, TruncatedSeries


@dataclass(frozen=True)
class GoldenSeries:
    key: str  # closed-form key, e.g. "cata.f0"
    valuation: int  # exponent of the first listed coefficient
    order: int  # exponent of the last listed coefficient
    coefficients: Tuple[int, ...]
    description: str = ""

    def to_series(self) -> SeriesLike:
        if self.valuation >= 0:
            return TruncatedSeries.from_coeffs((0,) * self.valuation + self.coefficients, self.order)
        body = TruncatedSeries.from_coeffs(self.coefficients, self.order - self.valuation)
        return LaurentSeries.from_parts(self.valuation, body)
