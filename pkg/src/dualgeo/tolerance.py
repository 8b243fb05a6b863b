"""Hybrid absolute/relative tolerance used by every geometric predicate."""

import math
import os
from dataclasses import dataclass

from .errors import ValidationError

DEFAULT_EPS = 1e-9
ENV_VAR = "DUALGEO_EPS"


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = DEFAULT_EPS
    eps_rel: float = DEFAULT_EPS

    def __post_init__(self):
        for name in ("eps_abs", "eps_rel"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be a positive finite number", name)

    def band(self, *terms):
        """Half-width of the On band for a residual built from ``terms``."""
        scale = max((abs(t) for t in terms), default=0.0)
        return self.eps_abs + self.eps_rel * scale

    def is_zero(self, residual, *terms):
        return abs(residual) <= self.band(*terms)


def default_tolerance():
    """Tolerance from ``DUALGEO_EPS`` if set, else 1e-9 for both components."""
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return Tolerance()
    try:
        eps = float(raw)
    except ValueError:
        raise ValidationError(f"{ENV_VAR} must be a number, got {raw!r}", ENV_VAR) from None
    return Tolerance(eps, eps)


def resolve(tol):
    return default_tolerance() if tol is None else tol
