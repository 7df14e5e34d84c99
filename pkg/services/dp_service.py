from functools import lru_cache
from typing import Dict, List, Union

from config.logger import logger
from models.count_table import CountTable
from models.path_model import MODEL_LAYERS, START_LAYER, Layer, ModelKind
from models.series import TruncatedSeries
from services.path_model_service import PathModelError, parse_layer, parse_model

Vector = Dict[Layer, List[int]]


class DPError(Exception):
    """Custom exception for dynamic programming errors."""
    pass


def _tracked_height(kind: ModelKind, max_len: int) -> int:
    # One right-to-left catastrophe can reach any level; levels drop by at most
    # one per step there, so 2*max_len + 2 is lossless for levels <= max_len.
    if kind == ModelKind.CATA_RTL:
        return 2 * max_len + 2
    return max_len + 1


def _two_layer_step(prev: Vector, catastrophes: bool) -> Vector:
    """f_0 = 1 + z(f_1 + ...), f_i = z g_{i-1} + z f_{i+1}; g_0 = z f_0 + z(g_1 + ...), g_i = z f_i + z g_{i+1}."""
    f, g = prev[Layer.F], prev[Layer.G]
    size = len(f)
    nf, ng = [0] * size, [0] * size
    nf[0] = f[1] + (sum(f[2:]) if catastrophes else 0)
    ng[0] = f[0] + g[1] + (sum(g[2:]) if catastrophes else 0)
    for i in range(1, size):
        above_f = f[i + 1] if i + 1 < size else 0
        above_g = g[i + 1] if i + 1 < size else 0
        nf[i] = g[i - 1] + above_f
        ng[i] = f[i] + above_g
    return {Layer.F: nf, Layer.G: ng}


def _rtl_step(prev: Vector) -> Vector:
    """Right-to-left system: a_i from b_i, a_{i-1} and a_0; b_i from a_{i+1}, b_{i-1} and b_0."""
    a, b = prev[Layer.A], prev[Layer.B]
    size = len(a)

    def at(values: List[int], i: int) -> int:
        return values[i] if i < size else 0

    na, nb = [0] * size, [0] * size
    na[0] = b[0]
    na[1] = b[1] + a[0]
    nb[0] = a[1]
    nb[1] = b[0] + at(a, 2)
    for i in range(2, size):
        na[i] = b[i] + a[i - 1] + a[0]
        nb[i] = at(a, i + 1) + b[i - 1] + b[0]
    return {Layer.A: na, Layer.B: nb}


def _suffix_sums(values: List[int]) -> List[int]:
    """out[i] = sum of values[j] for j > i."""
    out = [0] * len(values)
    running = 0
    for i in range(len(values) - 1, -1, -1):
        out[i] = running
        running += values[i]
    return out


def _air_step(prev: Vector) -> Vector:
    """a_i = z d_{i-1}, b_i = a_i + z sum_{j>i} a_j, c_i = z b_i, d_i = c_i + z sum_{j>i} c_j."""
    size = len(prev[Layer.A])
    na = [0] + prev[Layer.D][:size - 1]
    above_a = _suffix_sums(prev[Layer.A])
    nb = [na[i] + above_a[i] for i in range(size)]
    nc = list(prev[Layer.B])
    above_c = _suffix_sums(prev[Layer.C])
    nd = [nc[i] + above_c[i] for i in range(size)]
    return {Layer.A: na, Layer.B: nb, Layer.C: nc, Layer.D: nd}


def _initial_vector(kind: ModelKind, height: int) -> Vector:
    vector = {layer: [0] * (height + 1) for layer in MODEL_LAYERS[kind]}
    vector[START_LAYER[kind]][0] = 1
    if kind == ModelKind.AIR_POCKETS:
        # The empty word also sits at B_0 through the wavy edge
        vector[Layer.B][0] = 1
    return vector


@lru_cache(maxsize=64)
def _dp_table(kind: ModelKind, max_len: int) -> CountTable:
    height = _tracked_height(kind, max_len)
    vector = _initial_vector(kind, height)
    rows = {layer: [] for layer in MODEL_LAYERS[kind]}

    for n in range(max_len + 1):
        if n > 0:
            if kind == ModelKind.CATA_RTL:
                vector = _rtl_step(vector)
            elif kind == ModelKind.AIR_POCKETS:
                vector = _air_step(vector)
            else:
                vector = _two_layer_step(vector, catastrophes=kind == ModelKind.CATA)
        for layer in rows:
            row = tuple(vector[layer][:max_len + 1])
            if kind != ModelKind.CATA_RTL and any(row[n + 1:]):
                raise DPError(f"Model {kind.value} reached a level above {n} at length {n}")
            rows[layer].append(row)

    return CountTable(model=kind, max_len=max_len, counts={layer: tuple(rows[layer]) for layer in rows})


def dp_counts(model: Union[str, ModelKind], max_len: int) -> CountTable:
    """
    Exact counts by length-major dynamic programming over the recursions.

    Args:
        model: Path model name or kind
        max_len: Largest word length (levels are reported up to the same bound)

    Returns:
        CountTable with counts[layer][n][level]

    Raises:
        DPError: If max_len is negative or the model is unknown
    """
    try:
        kind = parse_model(model)
    except PathModelError as e:
        raise DPError(str(e)) from e
    if max_len < 0:
        raise DPError(f"max_len must be non-negative, got {max_len}")
    logger.debug(f"DP counts for {kind.value} up to length {max_len}")
    return _dp_table(kind, max_len)


def dp_series(model: Union[str, ModelKind], layer: Union[str, Layer], level: int, order: int) -> TruncatedSeries:
    """Generating function of one state as an integer series to z^order."""
    try:
        kind = parse_model(model)
        resolved = parse_layer(kind, layer)
    except PathModelError as e:
        raise DPError(str(e)) from e
    if level < 0:
        raise DPError(f"Level must be non-negative, got {level}")
    table = dp_counts(kind, max(order, level))
    return table.series(resolved, level).truncate(order)


def open_total(model: Union[str, ModelKind], order: int) -> TruncatedSeries:
    """
    Number of paths of each length with arbitrary endpoint.

    For the two-layer models this is f_0 + F(1) + g_0 + G(1). In the air
    pocket model every word ends in exactly one of A_i, C_i or a jump into
    B_i, D_i, and the B/D layers already credit the A/C arrivals, so the total
    is B(1) + D(1).
    """
    try:
        kind = parse_model(model)
    except PathModelError as e:
        raise DPError(str(e)) from e
    if kind == ModelKind.CATA_RTL:
        raise DPError(
            "open_total is undefined for right-to-left catastrophes: "
            "there are infinitely many open paths of each length n >= 1"
        )

    table = dp_counts(kind, order)
    layers = (Layer.B, Layer.D) if kind == ModelKind.AIR_POCKETS else MODEL_LAYERS[kind]
    totals = [sum(sum(table.counts[layer][n]) for layer in layers) for n in range(order + 1)]
    return TruncatedSeries.from_coeffs(totals, order)
