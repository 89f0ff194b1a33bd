"""Empirical distribution of a daily variable (consumption, irradiance).

One estimator serves both modes the sizing rules need: an exact step ECDF
for identity checks and cost expectations, and a Gaussian-kernel smoothed
CDF (Silverman bandwidth by default) for quantile inversion on the CDF
curve.  Partial expectations have closed forms in both modes, which keeps
expected-cost evaluation free of numerical quadrature.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import DegenerateSamples
from .validation import as_sample_array, check_probability

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def silverman_bandwidth(samples) -> float:
    """Silverman's rule of thumb: ``0.9 * min(sd, IQR/1.34) * n**(-1/5)``.

    Falls back to whichever of the two spread measures is positive when
    the other degenerates (heavily tied data can have IQR 0); raises
    :class:`DegenerateSamples` when both are 0.
    """
    x = as_sample_array(samples)
    if x.size < 2:
        raise DegenerateSamples("bandwidth needs at least 2 samples")
    sd = float(np.std(x, ddof=1))
    q75, q25 = np.percentile(x, [75.0, 25.0])
    iqr = float(q75 - q25)
    candidates = [c for c in (sd, iqr / 1.34) if c > 0.0]
    if not candidates:
        raise DegenerateSamples("all samples equal: no spread to estimate a bandwidth")
    return 0.9 * min(candidates) * x.size ** (-0.2)


class EmpiricalDistribution(BaseEstimator):
    """Distribution of a 1-D sample with CDF/quantile/partial-expectation queries.

    Parameters
    ----------
    mode : {"ecdf", "kde"}
        "ecdf" is the exact step estimate (default); "kde" smooths with
        Gaussian kernels.
    bandwidth : float, optional
        Kernel bandwidth in sample units; Silverman's rule when omitted.
        Ignored in ECDF mode.

    After ``fit(X)`` the instance is immutable in practice (all queries
    are pure) and exposes ``samples_`` (sorted), ``n_samples_``, ``mean_``
    and ``bandwidth_``.
    """

    def __init__(self, mode: str = "ecdf", bandwidth: float | None = None):
        self.mode = mode
        self.bandwidth = bandwidth

    def fit(self, X, y=None):
        if self.mode not in ("ecdf", "kde"):
            raise ValueError(f"mode must be 'ecdf' or 'kde', got {self.mode!r}")
        x = np.sort(as_sample_array(X))
        self.samples_ = x
        self.n_samples_ = x.size
        # Prefix sums back every partial expectation; deriving the mean from
        # them keeps above + below == mean_ exact in ECDF mode.
        self._prefix = np.concatenate([[0.0], np.cumsum(x)])
        self.mean_ = float(self._prefix[-1] / x.size)
        if self.mode == "kde":
            if self.bandwidth is not None:
                if not self.bandwidth > 0.0:
                    raise ValueError(f"bandwidth must be > 0, got {self.bandwidth}")
                self.bandwidth_ = float(self.bandwidth)
            else:
                self.bandwidth_ = silverman_bandwidth(x)
        else:
            self.bandwidth_ = None
        return self

    def cdf(self, x):
        """P(X <= x); scalar in, scalar out (arrays broadcast elementwise)."""
        check_is_fitted(self, "samples_")
        xs = np.asarray(x, dtype=float)
        if self.mode == "ecdf":
            out = np.searchsorted(self.samples_, xs, side="right") / self.n_samples_
        else:
            z = (xs[..., None] - self.samples_) / self.bandwidth_
            out = np.mean(ndtr(z), axis=-1)
        return float(out) if np.isscalar(x) else out

    def quantile(self, p: float) -> float:
        """Smallest x with ``cdf(x) >= p`` for p strictly inside (0, 1).

        ECDF mode returns an order statistic (no interpolation).  KDE mode
        bisects the monotone smoothed CDF to 1e-9 of the sample range.
        """
        check_is_fitted(self, "samples_")
        p = check_probability(p)
        if self.mode == "ecdf":
            cumprob = np.arange(1, self.n_samples_ + 1) / self.n_samples_
            return float(self.samples_[np.searchsorted(cumprob, p, side="left")])
        h = self.bandwidth_
        lo = float(self.samples_[0] - 40.0 * h)
        hi = float(self.samples_[-1] + 40.0 * h)
        span = float(self.samples_[-1] - self.samples_[0]) or h
        xtol = 1e-9 * span
        while hi - lo > xtol:
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) >= p:
                hi = mid
            else:
                lo = mid
        return hi

    def partial_expectation(self, t: float, side: str = "above", inclusive: bool | None = None) -> float:
        """Unnormalized tail expectation at threshold ``t``.

        ``side="above"`` gives E[X 1{X >= t}] and ``side="below"`` gives
        E[X 1{X < t}], so the two defaults partition: above + below equals
        ``mean_`` exactly.  ``inclusive`` overrides which side owns a
        sample tied with ``t`` (only observable in ECDF mode; the smoothed
        law puts no mass on points).
        """
        check_is_fitted(self, "samples_")
        if side not in ("above", "below"):
            raise ValueError(f"side must be 'above' or 'below', got {side!r}")
        if inclusive is None:
            inclusive = side == "above"
        t = float(t)
        n = self.n_samples_
        if self.mode == "kde":
            h = self.bandwidth_
            z = (t - self.samples_) / h
            upper = float(np.mean(self.samples_ * ndtr(-z) + h * np.exp(-0.5 * z * z) / _SQRT_2PI))
            return upper if side == "above" else self.mean_ - upper
        if side == "above":
            idx = np.searchsorted(self.samples_, t, side="left" if inclusive else "right")
            return float((self._prefix[-1] - self._prefix[idx]) / n)
        idx = np.searchsorted(self.samples_, t, side="right" if inclusive else "left")
        return float(self._prefix[idx] / n)

    def expected_shortage(self, b: float) -> float:
        """E[(X - b)+], the expected deficit above a threshold ``b``."""
        above = self.partial_expectation(b, "above", inclusive=False)
        return above - b * (1.0 - self.cdf(b))

    def expected_surplus(self, b: float) -> float:
        """E[(b - X)+], the expected slack below a threshold ``b``."""
        below = self.partial_expectation(b, "below", inclusive=True)
        return b * self.cdf(b) - below
