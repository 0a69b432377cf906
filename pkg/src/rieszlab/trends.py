"""Log-log trend fitting for ladder diagnostics.

Statements about the untruncated model are reduced, at finite size, to
growth or decay trends of a quantity sampled over an increasing ladder
of dimensions.  The fitted slope of log(value) against log(N) is
compared against a declared threshold; slopes straddling the threshold
within a relative band are reported as inconclusive rather than forced
to a side.
"""
from __future__ import annotations

import numpy as np

GROWTH_THRESHOLD = 0.5
DECAY_THRESHOLD = -0.5
STRADDLE_BAND = 0.1
MIN_LADDER_POINTS = 4

_FLOOR = 1e-300


def loglog_slope(ns, values):
    """Least-squares slope of log(values) against log(ns).

    Values are clipped away from zero so exact zeros (a fully converged
    residual, say) read as steep decay instead of raising.
    """
    ns = np.asarray(ns, dtype=float)
    vals = np.clip(np.abs(np.asarray(values, dtype=float)), _FLOOR, None)
    if ns.size != vals.size:
        raise ValueError("ladder and value arrays must have equal length")
    if ns.size < 2:
        raise ValueError("need at least two ladder points to fit a slope")
    return float(np.polyfit(np.log(ns), np.log(vals), 1)[0])


def classify_growth(slope, threshold=GROWTH_THRESHOLD, band=STRADDLE_BAND):
    """Classify a fitted slope as 'bounded', 'growing' or 'inconclusive'."""
    lo = threshold * (1.0 - band)
    hi = threshold * (1.0 + band)
    if slope < lo:
        return "bounded"
    if slope > hi:
        return "growing"
    return "inconclusive"


def classify_decay(slope, threshold=DECAY_THRESHOLD, band=STRADDLE_BAND):
    """Classify a residual trend: decay faster than the threshold slope
    counts as 'convergent', slower as 'non-convergent'."""
    lo = threshold * (1.0 + band)
    hi = threshold * (1.0 - band)
    if slope < lo:
        return "convergent"
    if slope > hi:
        return "non-convergent"
    return "inconclusive"
