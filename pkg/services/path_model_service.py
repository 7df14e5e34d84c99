import re
from functools import lru_cache
from typing import Dict, List, Optional, Union

from config.logger import logger
from config.settings import MAX_BRUTE_CAP
from models.count_table import CountTable
from models.path_model import (
    CATASTROPHE,
    DOWN,
    LEVEL,
    MODEL_LAYERS,
    START_LAYER,
    UP,
    Layer,
    ModelAutomaton,
    ModelKind,
    ModelState,
    PathWord,
    StepSymbol,
    Transition,
    catastrophe_to,
    down_jump,
)

_SYMBOL_PATTERN = re.compile(r"^([ULDCJ])(\d*)$")


class PathModelError(Exception):
    """Custom exception for path model errors."""
    pass


def parse_model(model: Union[str, ModelKind]) -> ModelKind:
    """Resolve a model name such as 'cata' or 'cata-rtl'."""
    if isinstance(model, ModelKind):
        return model
    try:
        return ModelKind(str(model).strip().lower())
    except ValueError:
        names = ", ".join(kind.value for kind in ModelKind)
        raise PathModelError(f"Unknown model '{model}' (expected one of: {names})")


def parse_layer(model: ModelKind, layer: Union[str, Layer]) -> Layer:
    """Resolve a layer name and check it belongs to the model."""
    try:
        resolved = layer if isinstance(layer, Layer) else Layer(str(layer).strip().upper())
    except ValueError:
        raise PathModelError(f"Unknown layer '{layer}'")
    if resolved not in MODEL_LAYERS[model]:
        allowed = ", ".join(l.value for l in MODEL_LAYERS[model])
        raise PathModelError(f"Layer {resolved.value} is not part of model {model.value} (expected one of: {allowed})")
    return resolved


def parse_symbol(text: str) -> StepSymbol:
    """Parse one symbol: U, L, D, C, Ck (k >= 2) or Jk (k >= 1)."""
    match = _SYMBOL_PATTERN.match(text.strip().upper())
    if not match:
        raise PathModelError(f"Malformed step symbol '{text}'")
    letter, digits = match.groups()
    depth = int(digits) if digits else None
    try:
        if letter == "J":
            if depth is None:
                raise PathModelError("DownJump symbol needs a depth, e.g. J2")
            return down_jump(depth)
        if letter == "C":
            return CATASTROPHE if depth is None else catastrophe_to(depth)
        if depth is not None:
            raise PathModelError(f"Step {letter} takes no depth")
        return {"U": UP, "L": LEVEL, "D": DOWN}[letter]
    except ValueError as e:
        raise PathModelError(str(e)) from e


def parse_word(line: str) -> PathWord:
    """Parse a comma-separated word; an empty line is the empty word."""
    parts = [p for p in line.strip().split(",") if p.strip()]
    return PathWord(tuple(parse_symbol(p) for p in parts))


def _moves(kind: ModelKind, state: ModelState, level_bound: int) -> List[Transition]:
    """Raw outgoing edges of one state, epsilon edges included."""
    layer, level = state.layer, state.level
    edges: List[Transition] = []

    if kind in (ModelKind.PLAIN, ModelKind.CATA):
        if layer == Layer.F:
            edges.append(Transition(LEVEL, ModelState(Layer.G, level)))
            if level >= 1:
                edges.append(Transition(DOWN, ModelState(Layer.F, level - 1)))
            if kind == ModelKind.CATA and level >= 2:
                edges.append(Transition(CATASTROPHE, ModelState(Layer.F, 0)))
        else:
            edges.append(Transition(UP, ModelState(Layer.F, level + 1)))
            if level >= 1:
                edges.append(Transition(DOWN, ModelState(Layer.G, level - 1)))
            if kind == ModelKind.CATA and level >= 2:
                edges.append(Transition(CATASTROPHE, ModelState(Layer.G, 0)))

    elif kind == ModelKind.CATA_RTL:
        # Reversed edges of the catastrophe graph: U and D swap, catastrophes leave the origin
        if layer == Layer.A:
            edges.append(Transition(UP, ModelState(Layer.A, level + 1)))
            if level >= 1:
                edges.append(Transition(DOWN, ModelState(Layer.B, level - 1)))
        else:
            edges.append(Transition(LEVEL, ModelState(Layer.A, level)))
            edges.append(Transition(UP, ModelState(Layer.B, level + 1)))
        if level == 0:
            edges.extend(Transition(catastrophe_to(j), ModelState(layer, j)) for j in range(2, level_bound + 1))

    else:
        if layer == Layer.A:
            edges.append(Transition(None, ModelState(Layer.B, level)))
            edges.extend(Transition(down_jump(k), ModelState(Layer.B, level - k)) for k in range(1, level + 1))
        elif layer == Layer.B:
            edges.append(Transition(LEVEL, ModelState(Layer.C, level)))
        elif layer == Layer.C:
            edges.append(Transition(None, ModelState(Layer.D, level)))
            edges.extend(Transition(down_jump(k), ModelState(Layer.D, level - k)) for k in range(1, level + 1))
        else:
            edges.append(Transition(UP, ModelState(Layer.A, level + 1)))

    return edges


def epsilon_successor(model: Union[str, ModelKind], state: ModelState) -> Optional[ModelState]:
    """Target of the wavy edge A_i -> B_i or C_i -> D_i, if any."""
    kind = parse_model(model)
    if kind != ModelKind.AIR_POCKETS:
        return None
    if state.layer == Layer.A:
        return ModelState(Layer.B, state.level)
    if state.layer == Layer.C:
        return ModelState(Layer.D, state.level)
    return None


def _closure_moves(kind: ModelKind, state: ModelState, level_bound: int) -> List[Transition]:
    """Symbol edges available from the epsilon closure of a state."""
    closure = [state]
    successor = epsilon_successor(kind, state)
    if successor is not None:
        closure.append(successor)
    return [t for s in closure for t in _moves(kind, s, level_bound) if not t.is_epsilon]


def _check_state(kind: ModelKind, state: ModelState) -> None:
    if state.layer not in MODEL_LAYERS[kind]:
        raise PathModelError(f"State {state} is not part of model {kind.value}")


@lru_cache(maxsize=None)
def build_automaton(model: Union[str, ModelKind], level_bound: int = 2 * MAX_BRUTE_CAP + 2) -> ModelAutomaton:
    """Build a model automaton and assert determinism on every state up to level_bound."""
    kind = parse_model(model)
    for layer in MODEL_LAYERS[kind]:
        for level in range(level_bound + 1):
            state = ModelState(layer, level)
            seen: Dict[StepSymbol, ModelState] = {}
            for move in _closure_moves(kind, state, level_bound):
                if move.symbol in seen and seen[move.symbol] != move.target:
                    raise PathModelError(f"Model {kind.value} is nondeterministic at {state} on {move.symbol}")
                seen[move.symbol] = move.target
    logger.debug(f"Built automaton for {kind.value} with level bound {level_bound}")
    return ModelAutomaton(
        kind=kind,
        layers=MODEL_LAYERS[kind],
        start=ModelState(START_LAYER[kind], 0),
        level_bound=level_bound,
    )


def transitions(model: Union[str, ModelKind], state: ModelState, level_bound: Optional[int] = None) -> List[Transition]:
    """
    Complete outgoing edge list of a state.

    Epsilon edges are included with symbol None. Right-to-left catastrophes
    leave the origin towards every level >= 2; only levels up to level_bound
    are listed.
    """
    kind = parse_model(model)
    _check_state(kind, state)
    bound = level_bound if level_bound is not None else build_automaton(kind).level_bound
    return _moves(kind, state, bound)


def step(model: Union[str, ModelKind], state: ModelState, symbol: StepSymbol) -> Optional[ModelState]:
    """Deterministic successor after epsilon closure, or None if the symbol is rejected."""
    kind = parse_model(model)
    bound = max(symbol.depth or 0, state.level + 1)
    for move in _closure_moves(kind, state, bound):
        if move.symbol == symbol:
            return move.target
    return None


def recognize(model: Union[str, ModelKind], word: PathWord) -> Optional[ModelState]:
    """End state after reading the word from the start state, or None if rejected."""
    kind = parse_model(model)
    state = build_automaton(kind).start
    for symbol in word.symbols:
        state = step(kind, state, symbol)
        if state is None:
            return None
    return state


def accepts(model: Union[str, ModelKind], word: PathWord) -> bool:
    """True when the word is a closed path, i.e. it ends back at the origin."""
    kind = parse_model(model)
    return recognize(kind, word) == build_automaton(kind).start


def brute_force_counts(model: Union[str, ModelKind], max_len: int) -> CountTable:
    """
    Count words by exhaustive depth-first walk over the automaton.

    Every word is credited to the state it ends in; in the air-pocket model
    the co-located B/D state is credited as well, matching the epsilon
    convention of the recursions.
    """
    kind = parse_model(model)
    if max_len < 0:
        raise PathModelError(f"max_len must be non-negative, got {max_len}")
    if max_len > MAX_BRUTE_CAP:
        raise PathModelError(f"max_len {max_len} exceeds the brute-force cap {MAX_BRUTE_CAP}")

    logger.info(f"Brute-force enumeration of {kind.value} words up to length {max_len}")
    # Levels drop by at most one per step, so anything above 2*max_len never returns
    level_bound = 2 * max_len + 1
    layers = MODEL_LAYERS[kind]
    counts = {layer: [[0] * (max_len + 1) for _ in range(max_len + 1)] for layer in layers}
    move_cache: Dict[ModelState, List[Transition]] = {}
    words = 0

    def credit(state: ModelState, length: int) -> None:
        if state.level <= max_len:
            counts[state.layer][length][state.level] += 1
            successor = epsilon_successor(kind, state)
            if successor is not None:
                counts[successor.layer][length][successor.level] += 1

    def walk(state: ModelState, length: int) -> None:
        nonlocal words
        words += 1
        if kind != ModelKind.CATA_RTL and state.level > length:
            raise PathModelError(f"Word of length {length} reached level {state.level}")
        credit(state, length)
        if length == max_len:
            return
        moves = move_cache.get(state)
        if moves is None:
            moves = _closure_moves(kind, state, level_bound)
            move_cache[state] = moves
        for move in moves:
            if move.target.level - (max_len - length - 1) > max_len:
                continue
            walk(move.target, length + 1)

    walk(build_automaton(kind).start, 0)
    logger.debug(f"Enumerated {words} words for {kind.value}")
    return CountTable(
        model=kind,
        max_len=max_len,
        counts={layer: tuple(tuple(row) for row in counts[layer]) for layer in layers},
    )
