"""
Tolerances and verification-suite settings.
Everything is passed explicitly; nothing is read from the environment.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional, Tuple

from dataclasses_json import dataclass_json

from .errors import ValidationError

DEFAULT_TRIALS = 100
DEFAULT_ORDER = 32
MIN_ORDER = 4
VERIFY_NORM_CAP = 0.7


@dataclass_json
@dataclass(frozen=True)
class Tolerances:
    """Residual bounds for every identity the library verifies."""
    algebraic: float = 1e-10
    exponential: float = 1e-9
    phase_area: float = 1e-12
    dupont_closed: float = 1e-12
    quadrature_area: float = 1e-6
    quadrature_cocycle: float = 1e-5
    zzz: float = 1e-9
    cocycle_condition: float = 1e-9
    automorphy: float = 1e-10
    rankone_quadrature: float = 1e-6
    rankone_algebraic: float = 1e-12
    plane: float = 1e-14

    def with_overrides(self, overrides: Optional[Dict[str, Any]]) -> "Tolerances":
        """Return a copy with some bounds replaced."""
        if not overrides:
            return self

        known = {f.name for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if key not in known:
                raise ValidationError(f"Unknown tolerance key: {key}")
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValidationError(f"Tolerance {key} must be a number, got {value!r}")
            if not value > 0:
                raise ValidationError(f"Tolerance {key} must be positive")
            changes[key] = value

        return replace(self, **changes)


@dataclass_json
@dataclass(frozen=True)
class ManifoldConfig:
    """(n, m, epsilon) triple plus the extreme-weight parameter."""
    n: int
    m: int
    epsilon: int
    weight_k: int = 1


def parse_manifold(text: str) -> Tuple[int, int, int]:
    """Parse an 'n,m,eps' string."""
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 3:
        raise ValidationError(f"Manifold must be 'n,m,eps', got {text!r}")
    try:
        n, m, eps = (int(p) for p in parts)
    except ValueError:
        raise ValidationError(f"Manifold entries must be integers, got {text!r}")
    if n < 1 or m < 1 or eps not in (1, -1):
        raise ValidationError(f"Invalid manifold {text!r}")
    return n, m, eps
