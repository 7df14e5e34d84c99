import json
import os
from typing import List, Optional

from config.logger import logger
from config.settings import get_golden_data_path
from models.golden import GoldenSeries


def load_golden_data(path: Optional[str] = None) -> list:
    data_path = path or get_golden_data_path()

    # Handle file not found
    if not os.path.exists(data_path):
        raise FileNotFoundError(f"Golden data file not found at path: {data_path}")

    try:
        with open(data_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in golden data file: {e}")
    except Exception as e:
        raise RuntimeError(f"Error reading golden data file: {e}")

    # Handle empty or invalid data
    if not isinstance(data, list):
        raise ValueError("Golden data file must contain a list of series")

    return data


def create_golden_series(path: Optional[str] = None) -> List[GoldenSeries]:
    """Creates GoldenSeries objects from the golden data file, skipping malformed rows."""
    data = load_golden_data(path)

    golden = []
    for row in data:
        # Skip invalid rows
        if not isinstance(row, dict) or 'key' not in row or 'coefficients' not in row:
            continue
        coefficients = row['coefficients']
        if not isinstance(coefficients, list) or not all(isinstance(c, int) for c in coefficients):
            logger.warning(f"Skipping golden entry {row['key']}: coefficients must be integers")
            continue

        valuation = row.get('valuation', 0)
        order = row.get('order', valuation + len(coefficients) - 1)
        if order - valuation + 1 != len(coefficients):
            logger.warning(f"Skipping golden entry {row['key']}: {len(coefficients)} coefficients do not span z^{valuation}..z^{order}")
            continue

        golden.append(GoldenSeries(
            key=row['key'],
            valuation=valuation,
            order=order,
            coefficients=tuple(coefficients),
            description=row.get('description', ''),
        ))

    logger.debug(f"Loaded {len(golden)} golden series")
    return golden
