"""Smooth tensor-product cutoff window.

The 1-D profile w is even, C^infinity, equals 1 for |t| <= 1/4 and 0 for
|t| >= 3/8, with the standard exponential partition-of-unity glue in between:

    w(t) = g(u) / (g(u) + g(1-u)),   u = (3/8 - |t|) / (1/8),
    g(u) = exp(-1/u) for u > 0, else 0.

So w(5/16) = 1/2 exactly.  The d-dim window is v(xi) = prod_i w(xi_i), and the
scaled family is v_delta(xi) = v(xi / delta).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


def _glue(u: float) -> float:
    return math.exp(-1.0 / u) if u > 0.0 else 0.0


def window_profile(t: float) -> float:
    """The 1-D profile w(t)."""
    a = abs(t)
    if a <= 0.25:
        return 1.0
    if a >= 0.375:
        return 0.0
    u = (0.375 - a) / 0.125
    gu = _glue(u)
    return gu / (gu + _glue(1.0 - u))


def bump_window(xi: Sequence[float], delta: float = 1.0) -> float:
    """v_delta(xi) = prod_i w(xi_i / delta)."""
    if delta <= 0.0:
        raise ValueError(f"window scale must be positive, got {delta}")
    out = 1.0
    for t in np.atleast_1d(np.asarray(xi, dtype=float)):
        out *= window_profile(t / delta)
        if out == 0.0:
            break
    return out
