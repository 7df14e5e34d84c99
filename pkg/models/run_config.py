from dataclasses import dataclass
from typing import Optional

from config.settings import MAX_BRUTE_CAP
from models.path_model import ModelKind

OUTPUT_FORMATS = ("json", "csv", "human")


@dataclass(frozen=True)
class RunConfig:
    """Options shared by every command."""

    model: ModelKind
    order: int  # truncation order N
    brute_cap: int  # longest word enumerated by brute force
    output_format: str = "human"
    out_path: Optional[str] = None  # None writes to standard output
    tolerance: Optional[float] = None  # overrides the tolerances of the asymptotic checks

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {self.order}")
        if not 0 <= self.brute_cap <= MAX_BRUTE_CAP:
            raise ValueError(f"Brute-force cap must be between 0 and {MAX_BRUTE_CAP}, got {self.brute_cap}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{self.output_format}' (expected one of: {', '.join(OUTPUT_FORMATS)})")
        if self.tolerance is not None and self.tolerance <= 0:
            raise ValueError(f"Tolerance must be positive, got {self.tolerance}")
