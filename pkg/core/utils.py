"""
General utility functions for the geometry toolkit.
Includes logging setup, response records, timing and the [re, im] codec.
"""

import sys
import time
import logging
from functools import wraps
from typing import Any, Dict, List, Optional

import numpy as np

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str = 'WARNING') -> None:
    """Configure root logging once; records go to stderr so reports stay clean."""
    numeric_level = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Unknown log level: {level}")

    logging.basicConfig(
        level=numeric_level,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True
    )


def create_error_response(message: str, error_type: str = 'GeophaseError',
                          details: Dict = None) -> Dict[str, Any]:
    """Create standardized error record."""
    response = {
        "success": False,
        "error": message,
        "error_type": error_type
    }

    if details:
        response["details"] = details

    return response


def create_success_response(data: Any = None, message: str = None) -> Dict[str, Any]:
    """Create standardized success record."""
    response = {
        "success": True
    }

    if message:
        response["message"] = message

    if data is not None:
        response["data"] = data

    return response


def log_performance(action: str):
    """Decorator to log execution time of a call."""
    def decorator(f):
        @wraps(f)
        def decorated_function(*args, **kwargs):
            start_time = time.perf_counter()

            try:
                result = f(*args, **kwargs)
                execution_time = (time.perf_counter() - start_time) * 1000  # milliseconds
                logger.info(f"performance_{action}: {f.__name__} took {execution_time:.1f} ms")
                return result

            except Exception as e:
                execution_time = (time.perf_counter() - start_time) * 1000
                logger.error(f"error_{action}: {f.__name__} failed after {execution_time:.1f} ms: {str(e)}")
                raise

        return decorated_function
    return decorator


def complex_to_pair(value: complex) -> List[float]:
    """Encode a complex scalar as [re, im]."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def matrix_to_pairs(matrix: Optional[np.ndarray]) -> Optional[List[List[List[float]]]]:
    """Encode a complex matrix as nested rows of [re, im] pairs."""
    if matrix is None:
        return None
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    return [[complex_to_pair(entry) for entry in row] for row in matrix]


def pairs_to_matrix(rows: List[List[List[float]]]) -> np.ndarray:
    """Decode nested [re, im] pairs (already validated) into a complex matrix."""
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
