from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from models.path_model import Layer, ModelKind
from models.series import TruncatedSeries


@dataclass(frozen=True)
class CountTable:
    """Exact integer counts of words indexed by (length n, layer, level)."""

    model: ModelKind
    max_len: int
    counts: Dict[Layer, Tuple[Tuple[int, ...], ...]]  # counts[layer][n][level], levels 0..max_len

    def count(self, n: int, layer: Layer, level: int) -> int:
        if layer not in self.counts:
            raise KeyError(f"Layer {layer.value} is not part of model {self.model.value}")
        if n < 0 or n > self.max_len:
            raise IndexError(f"Length {n} outside 0..{self.max_len}")
        if level < 0 or level > self.max_len:
            raise IndexError(f"Level {level} outside 0..{self.max_len}")
        return self.counts[layer][n][level]

    def series(self, layer: Layer, level: int) -> TruncatedSeries:
        """Coefficients of z^0..z^max_len at one state."""
        return TruncatedSeries.from_coeffs(
            (self.count(n, layer, level) for n in range(self.max_len + 1)), self.max_len
        )

    def rows(self) -> Iterator[Tuple[str, int, str, int, int]]:
        """(model, n, layer, level, count) rows in a fixed order."""
        for n in range(self.max_len + 1):
            for layer in self.counts:
                for level in range(self.max_len + 1):
                    yield self.model.value, n, layer.value, level, self.counts[layer][n][level]

    def first_mismatch(self, other: "CountTable") -> Optional[Tuple[int, Layer, int]]:
        """First (n, layer, level) where the two tables disagree over their common range."""
        limit = min(self.max_len, other.max_len)
        for n in range(limit + 1):
            for layer in self.counts:
                for level in range(limit + 1):
                    if self.count(n, layer, level) != other.count(n, layer, level):
                        return n, layer, level
        return None
