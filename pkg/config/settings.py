import os
from pathlib import Path

import dotenv

dotenv.load_dotenv()

# Constants
ORDER_ENV_VAR = "SMOTZKIN_ORDER"
BRUTE_CAP_ENV_VAR = "SMOTZKIN_BRUTE_CAP"
GUARD_ORDER_ENV_VAR = "SMOTZKIN_GUARD_ORDER"
ASYMPTOTIC_DPS_ENV_VAR = "SMOTZKIN_ASYMPTOTIC_DPS"
GOLDEN_DATA_ENV_VAR = "GOLDEN_DATA_PATH"

DEFAULT_ORDER = 40
DEFAULT_BRUTE_CAP = 12
MAX_BRUTE_CAP = 16
DEFAULT_GUARD_ORDER = 12
MIN_GUARD_ORDER = 8
DEFAULT_ASYMPTOTIC_DPS = 40
MIN_ASYMPTOTIC_DPS = 30
DEFAULT_GOLDEN_DATA_PATH = Path(__file__).parent.parent / "data" / "golden_series.json"

# Orders used by the verification suite and the amplitude study
CROSS_CHECK_ORDER = 30
IDENTITY_ORDER = 40
AMPLITUDE_ORDER = 320


def _get_int(name: str, default: int, minimum: int, maximum: int = None) -> int:
    """Read an integer environment variable with bounds checking."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} environment variable must be an integer, got '{raw}'")
    if value < minimum or (maximum is not None and value > maximum):
        bounds = f">= {minimum}" if maximum is None else f"between {minimum} and {maximum}"
        raise ValueError(f"{name} environment variable must be {bounds}, got {value}")
    return value


def get_default_order() -> int:
    """Default truncation order N for series output."""
    return _get_int(ORDER_ENV_VAR, DEFAULT_ORDER, 0)


def get_brute_cap() -> int:
    """Default length cap for exhaustive enumeration."""
    return _get_int(BRUTE_CAP_ENV_VAR, DEFAULT_BRUTE_CAP, 0, MAX_BRUTE_CAP)


def get_guard_order() -> int:
    """Extra working order spent on precision lost in Laurent divisions."""
    return _get_int(GUARD_ORDER_ENV_VAR, DEFAULT_GUARD_ORDER, MIN_GUARD_ORDER)


def get_asymptotic_dps() -> int:
    """Decimal digits used by mpmath in the asymptotics module."""
    return _get_int(ASYMPTOTIC_DPS_ENV_VAR, DEFAULT_ASYMPTOTIC_DPS, MIN_ASYMPTOTIC_DPS)


def get_golden_data_path() -> str:
    """Location of the golden series file."""
    return os.getenv(GOLDEN_DATA_ENV_VAR) or str(DEFAULT_GOLDEN_DATA_PATH)
