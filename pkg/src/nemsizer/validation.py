"""Input validation helpers shared by the estimators and the functional API."""

from __future__ import annotations

import numpy as np

from .errors import ProbabilityOutOfRange


def as_sample_array(X) -> np.ndarray:
    """Coerce ``X`` to a 1-D float array of finite samples.

    Accepts lists, 1-D arrays or single-column 2-D arrays (the sklearn
    ``(n_samples, 1)`` convention).
    """
    x = np.asarray(X, dtype=float)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise ValueError(f"expected 1-D samples, got shape {x.shape}")
    if x.size == 0:
        raise ValueError("expected a nonempty sample set")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite (no NaN/inf)")
    return x


def check_probability(p: float) -> float:
    """Validate a quantile level, which must lie strictly inside (0, 1)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ProbabilityOutOfRange(f"probability must be in (0, 1), got {p}")
    return p


def check_nonnegative(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be finite and >= 0, got {value}")
    return value
