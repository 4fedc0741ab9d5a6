"""Parametric families of trigonometric test functions.

Each family is described by a plain dict (the same shape used in study
configs) and realized as a finite cosine/complex-exponential expansion:

    {"kind": "pure", "frequency": [k1, ..., kd]}
    {"kind": "power", "alpha": a, "cutoff": K}          (d = 1, a > 1/2)
    {"kind": "analytic", "cutoff": K}                   (d = 1)
    {"kind": "tensor", "factors": [spec, ...]}
    {"kind": "random", "support": n, "seed": s}
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping

import numpy as np

from ..spectrum import SpectralFunction


def build_test_function(spec: Mapping, d: int) -> SpectralFunction:
    kind = spec.get("kind")
    if kind == "pure":
        return _pure(spec, d)
    if kind == "power":
        return _power(spec, d)
    if kind == "analytic":
        return _analytic(spec, d)
    if kind == "tensor":
        return _tensor(spec, d)
    if kind == "random":
        return _random(spec, d)
    raise ValueError(f"unknown test-function kind {kind!r}")


def _pure(spec: Mapping, d: int) -> SpectralFunction:
    """cos(2 pi (k, x)): coefficients 1/2 at +-k."""
    k = tuple(int(v) for v in spec["frequency"])
    if len(k) != d:
        raise ValueError(f"frequency has dimension {len(k)}, expected {d}")
    if all(v == 0 for v in k):
        return SpectralFunction(d, {k: 1.0})
    neg = tuple(-v for v in k)
    return SpectralFunction(d, {k: 0.5, neg: 0.5})


def _power(spec: Mapping, d: int) -> SpectralFunction:
    """sum_{k=1}^{K} k^{-alpha} cos(2 pi k x); needs alpha > 1/2 for an L2 tail."""
    if d != 1:
        raise ValueError("power-decay family is one-dimensional; tensor it up")
    alpha = float(spec["alpha"])
    cutoff = int(spec["cutoff"])
    if alpha <= 0.5:
        raise ValueError(f"alpha must exceed 1/2, got {alpha}")
    if cutoff < 1:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    coeffs = {}
    for k in range(1, cutoff + 1):
        c = 0.5 * k ** (-alpha)
        coeffs[(k,)] = c
        coeffs[(-k,)] = c
    return SpectralFunction(1, coeffs)


def _analytic(spec: Mapping, d: int) -> SpectralFunction:
    """sum_{k=1}^{K} e^{-k} cos(2 pi k x): geometric spectrum, entire-type decay."""
    if d != 1:
        raise ValueError("analytic family is one-dimensional; tensor it up")
    cutoff = int(spec["cutoff"])
    if cutoff < 1:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    coeffs = {}
    for k in range(1, cutoff + 1):
        c = 0.5 * math.exp(-k)
        coeffs[(k,)] = c
        coeffs[(-k,)] = c
    return SpectralFunction(1, coeffs)


def _tensor(spec: Mapping, d: int) -> SpectralFunction:
    factors = spec["factors"]
    if len(factors) != d:
        raise ValueError(f"tensor needs {d} factors, got {len(factors)}")
    parts = [build_test_function(fs, 1) for fs in factors]
    coeffs = {}
    for combo in itertools.product(*(p.coeffs.items() for p in parts)):
        k = tuple(kk[0] for kk, _ in combo)
        c = 1.0 + 0.0j
        for _, ci in combo:
            c *= ci
        coeffs[k] = coeffs.get(k, 0.0j) + c
    return SpectralFunction(d, coeffs)


def _random(spec: Mapping, d: int) -> SpectralFunction:
    """Seeded real-valued random polynomial with full spectrum on [-n, n]^d."""
    n = int(spec["support"])
    seed = int(spec["seed"])
    if n < 1:
        raise ValueError(f"support must be positive, got {n}")
    rng = np.random.default_rng(seed)
    coeffs = {}
    for k in itertools.product(range(-n, n + 1), repeat=d):
        if k in coeffs:
            continue
        neg = tuple(-v for v in k)
        if k == neg:
            coeffs[k] = complex(rng.standard_normal())
        else:
            c = complex(rng.standard_normal(), rng.standard_normal())
            coeffs[k] = c
            coeffs[neg] = c.conjugate()
    scale = 1.0 / math.sqrt(sum(abs(c) ** 2 for c in coeffs.values()))
    return SpectralFunction(d, {k: c * scale for k, c in coeffs.items()})
