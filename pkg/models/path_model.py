from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class ModelKind(str, Enum):
    """The four path models; values double as CLI names."""

    PLAIN = "plain"
    CATA = "cata"
    CATA_RTL = "cata-rtl"
    AIR_POCKETS = "air"


class Layer(str, Enum):
    F = "F"
    G = "G"
    A = "A"
    B = "B"
    C = "C"
    D = "D"


MODEL_LAYERS = {
    ModelKind.PLAIN: (Layer.F, Layer.G),
    ModelKind.CATA: (Layer.F, Layer.G),
    ModelKind.CATA_RTL: (Layer.A, Layer.B),
    ModelKind.AIR_POCKETS: (Layer.A, Layer.B, Layer.C, Layer.D),
}

START_LAYER = {
    ModelKind.PLAIN: Layer.F,
    ModelKind.CATA: Layer.F,
    ModelKind.CATA_RTL: Layer.A,
    ModelKind.AIR_POCKETS: Layer.A,
}


class StepKind(str, Enum):
    UP = "U"
    LEVEL = "L"
    DOWN = "D"
    CATASTROPHE = "C"
    DOWN_JUMP = "J"


@dataclass(frozen=True)
class StepSymbol:
    """One letter of a path word."""

    kind: StepKind
    # DownJump depth k >= 1; for right-to-left catastrophes the level reached (>= 2)
    depth: Optional[int] = None

    def __post_init__(self):
        if self.kind == StepKind.DOWN_JUMP and (self.depth is None or self.depth < 1):
            raise ValueError(f"DownJump depth must be >= 1, got {self.depth}")
        if self.kind == StepKind.CATASTROPHE and self.depth is not None and self.depth < 2:
            raise ValueError(f"Catastrophe target level must be >= 2, got {self.depth}")
        if self.kind in (StepKind.UP, StepKind.LEVEL, StepKind.DOWN) and self.depth is not None:
            raise ValueError(f"Step {self.kind.value} takes no depth")

    def __str__(self) -> str:
        return self.kind.value if self.depth is None else f"{self.kind.value}{self.depth}"


UP = StepSymbol(StepKind.UP)
LEVEL = StepSymbol(StepKind.LEVEL)
DOWN = StepSymbol(StepKind.DOWN)
CATASTROPHE = StepSymbol(StepKind.CATASTROPHE)


def down_jump(depth: int) -> StepSymbol:
    return StepSymbol(StepKind.DOWN_JUMP, depth)


def catastrophe_to(level: int) -> StepSymbol:
    return StepSymbol(StepKind.CATASTROPHE, level)


@dataclass(frozen=True)
class ModelState:
    """A state of a layered automaton: layer plus level."""

    layer: Layer
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"Level must be non-negative, got {self.level}")

    def __str__(self) -> str:
        return f"{self.layer.value}{self.level}"


@dataclass(frozen=True)
class Transition:
    """An outgoing edge; symbol None marks an epsilon edge."""

    symbol: Optional[StepSymbol]
    target: ModelState

    @property
    def is_epsilon(self) -> bool:
        return self.symbol is None


@dataclass(frozen=True)
class PathWord:
    """A finite sequence of step symbols; its length is the path length."""

    symbols: Tuple[StepSymbol, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.symbols)


@dataclass(frozen=True)
class ModelAutomaton:
    """Layered state graph of one path model."""

    kind: ModelKind
    layers: Tuple[Layer, ...]
    start: ModelState
    level_bound: int  # highest level enumerated by transitions()
