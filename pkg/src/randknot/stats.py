"""Binomial confidence intervals."""

from __future__ import annotations

import math

from scipy.stats import norm


def wilson_interval(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in 0..trials")
    z = float(norm.ppf(0.5 + level / 2))
    phat = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    lo, hi = max(0.0, centre - half), min(1.0, centre + half)
    # exact endpoints at the boundary
    if successes == 0:
        lo = 0.0
    if successes == trials:
        hi = 1.0
    return lo, hi
