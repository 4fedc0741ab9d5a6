"""Finitely supported Fourier series on the d-torus and their calculus.

Convention: hat f(k) = integral over [0,1)^d of f(x) e^{-2 pi i (k,x)} dx, so
f(x) = sum_k hat f(k) e^{2 pi i (k,x)} and differentiation multiplies by
(2 pi i k)^alpha.  A SpectralFunction is the dict {k: hat f(k)} over a finite
support in Z^d.

Sampling analysis on a level-j lattice grid folds frequencies modulo M^j Z^d
(componentwise modulo the axis extents), which is what makes the spectral
route of the quasi-interpolation operators exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.special import binom

from .lattice import DilationLattice, IntVec, in_index_set, spectral_index_set
from .windows import bump_window

Coeffs = Dict[IntVec, complex]

# Hard ceiling on synthesis grids so a bad oversample/config cannot allocate
# the machine away (norm quadrature, not study j-ranges, which have their own cap).
MAX_GRID_POINTS = 2**24


@dataclass(frozen=True)
class SpectralFunction:
    """Trigonometric polynomial given by its Fourier coefficients."""

    d: int
    coeffs: Coeffs

    def __post_init__(self) -> None:
        clean: Coeffs = {}
        for k, c in self.coeffs.items():
            kk = tuple(int(v) for v in k)
            if len(kk) != self.d:
                raise ValueError(f"frequency {k} has dimension {len(kk)}, expected {self.d}")
            clean[kk] = complex(c)
        object.__setattr__(self, "coeffs", clean)

    @property
    def support(self) -> list[IntVec]:
        return sorted(self.coeffs.keys())

    def coeff(self, k: Sequence[int]) -> complex:
        return self.coeffs.get(tuple(int(v) for v in k), 0j)

    def axis_extent(self, axis: int) -> int:
        """2 * max |k_axis| + 1 (1 for the empty/constant function)."""
        if not self.coeffs:
            return 1
        return 2 * max(abs(k[axis]) for k in self.coeffs) + 1

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0j) + c
        return SpectralFunction(self.d, out)

    def __sub__(self, other: "SpectralFunction") -> "SpectralFunction":
        return self + other.scale(-1.0)

    def scale(self, a: complex) -> "SpectralFunction":
        return SpectralFunction(self.d, {k: a * c for k, c in self.coeffs.items()})

    def trimmed(self, tol: float = 0.0) -> "SpectralFunction":
        return SpectralFunction(self.d, {k: c for k, c in self.coeffs.items() if abs(c) > tol})


def spectral_function(d: int, coeffs: Mapping[Sequence[int], complex]) -> SpectralFunction:
    return SpectralFunction(d, {tuple(k): complex(c) for k, c in coeffs.items()})


def constant(d: int, value: complex = 1.0) -> SpectralFunction:
    return SpectralFunction(d, {(0,) * d: complex(value)})


@dataclass(frozen=True)
class GridSignal:
    """Samples of a periodic function on the uniform N_1 x ... x N_d grid."""

    shape: Tuple[int, ...]
    values: np.ndarray


# ---------------------------------------------------------------------------
# Evaluation and synthesis
# ---------------------------------------------------------------------------


def evaluate(f: SpectralFunction, x: Sequence[float]) -> complex:
    """f(x) by direct summation of the series at one point."""
    xv = np.asarray(x, dtype=float)
    if xv.shape != (f.d,):
        raise ValueError(f"point has shape {xv.shape}, expected ({f.d},)")
    if not f.coeffs:
        return 0j
    ks = np.array(list(f.coeffs.keys()), dtype=float)
    cs = np.array(list(f.coeffs.values()), dtype=complex)
    return complex(np.sum(cs * np.exp(2j * np.pi * (ks @ xv))))


def synthesize(f: SpectralFunction, shape: Sequence[int]) -> GridSignal:
    """Exact values of f on the uniform grid of the given shape.

    Coefficients are accumulated into FFT bins modulo N_i and transformed;
    e^{2 pi i k t / N} only depends on k mod N, so the grid values are exact
    for every shape (no oversampling requirement for synthesis itself).
    """
    shp = tuple(int(n) for n in shape)
    if len(shp) != f.d or any(n < 1 for n in shp):
        raise ValueError(f"bad grid shape {shape} for dimension {f.d}")
    if math.prod(shp) > MAX_GRID_POINTS:
        raise ValueError(f"synthesis grid {shp} exceeds {MAX_GRID_POINTS} points")
    arr = np.zeros(shp, dtype=complex)
    for k, c in f.coeffs.items():
        idx = tuple(ki % n for ki, n in zip(k, shp))
        arr[idx] += c
    values = np.fft.ifftn(arr) * math.prod(shp)
    return GridSignal(shp, values)


def evaluate_on_grid(f: SpectralFunction, shape: Sequence[int]) -> np.ndarray:
    return synthesize(f, shape).values


def quadrature_shape(f: SpectralFunction, oversample: int) -> Tuple[int, ...]:
    """Per-axis grid sizes N_i = oversample * (2 max|k_i| + 1)."""
    if oversample < 1:
        raise ValueError(f"oversample must be >= 1, got {oversample}")
    return tuple(oversample * f.axis_extent(i) for i in range(f.d))


# ---------------------------------------------------------------------------
# Analysis (sampling on a lattice grid)
# ---------------------------------------------------------------------------


def analyze_samples(values: Sequence[complex], lattice: DilationLattice, j: int) -> SpectralFunction:
    """Discrete analysis of samples given in canonical grid order.

    Returns the polynomial in T_{M^j} whose coefficients are
    (1/m^j) sum_k g(node_k) e^{-2 pi i (l, node_k)}, l in D(M^j); analyzing
    samples of e^{2 pi i (nu, x)} lands everything on the alias
    representative of nu.
    """
    extents = lattice.axis_extents(j)
    count = math.prod(extents)
    vals = np.asarray(values, dtype=complex).ravel()
    if vals.size != count:
        raise ValueError(f"expected exactly {count} samples in grid order, got {vals.size}")
    spect = np.fft.fftn(vals.reshape(extents)) / count
    coeffs: Coeffs = {}
    for l in spectral_index_set(lattice, j):
        idx = tuple(li % n for li, n in zip(l, extents))
        coeffs[l] = complex(spect[idx])
    return SpectralFunction(lattice.d, coeffs)


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------


def lp_norm(f: SpectralFunction, p: float, oversample: int = 16) -> float:
    """Rectangle-rule L_p(T^d) norm on the oversampled synthesis grid.

    p = inf takes the exact maximum over the grid (a lower bound for the true
    sup norm, converging as oversample grows).  For p = 2 the rectangle rule
    is exact up to rounding whenever the grid is unaliased for |f|^2, which
    the oversample >= 2 guarantee of quadrature_shape provides; agreement
    with the Parseval value is a test invariant.
    """
    if p != math.inf and p < 1:
        raise ValueError(f"p must be in [1, inf], got {p}")
    mags = np.abs(synthesize(f, quadrature_shape(f, oversample)).values)
    if p == math.inf:
        return float(mags.max(initial=0.0))
    return float((np.mean(mags**p)) ** (1.0 / p))


def l2_norm(f: SpectralFunction) -> float:
    """Parseval: ||f||_2 = sqrt(sum |hat f(k)|^2), exact for finite support."""
    if not f.coeffs:
        return 0.0
    return float(np.sqrt(sum(abs(c) ** 2 for c in f.coeffs.values())))


def norm(f: SpectralFunction, p: float, oversample: int = 16) -> float:
    """L_p norm, routed through Parseval when p == 2."""
    if p == 2:
        return l2_norm(f)
    return lp_norm(f, p, oversample)


def sequence_norm(values: Sequence[complex], p: float, count: int | None = None) -> float:
    """Normalized sequence norm ((1/m) sum |a_k|^p)^{1/p}, sup for p = inf."""
    vals = np.asarray(values, dtype=complex).ravel()
    m = vals.size if count is None else int(count)
    if count is not None and vals.size != m:
        raise ValueError(f"expected {m} values, got {vals.size}")
    if p != math.inf and p < 1:
        raise ValueError(f"p must be in [1, inf], got {p}")
    if p == math.inf:
        return float(np.abs(vals).max(initial=0.0))
    return float((np.mean(np.abs(vals) ** p)) ** (1.0 / p))


# ---------------------------------------------------------------------------
# Multipliers
# ---------------------------------------------------------------------------


def apply_multiplier(f: SpectralFunction, rule: Callable[[IntVec], complex]) -> SpectralFunction:
    """Coefficientwise multiplication hat g(k) = rule(k) * hat f(k)."""
    return SpectralFunction(f.d, {k: rule(k) * c for k, c in f.coeffs.items()})


def convolve_functional(symbol, f: SpectralFunction, j: int | None = None) -> SpectralFunction:
    """phitilde * f: the bounded function whose k-th coefficient is Lambda(k) hat f(k).

    `symbol` is either a level-indexed family (anything with .bind(j), in
    which case j is required) or a plain multiplier callable k -> complex.
    """
    if hasattr(symbol, "bind"):
        if j is None:
            raise ValueError("a level-indexed symbol family needs an explicit level j")
        rule = symbol.bind(j)
    else:
        rule = symbol
    return apply_multiplier(f, rule)


def partial_sum(f: SpectralFunction, lattice: DilationLattice, j: int, rho: float = 1.0) -> SpectralFunction:
    """S_{rho M^j} f: restriction of the coefficients to D(rho M^j)."""
    return SpectralFunction(
        f.d, {k: c for k, c in f.coeffs.items() if in_index_set(lattice, k, j, rho)}
    )


def vallee_poussin(f: SpectralFunction, lattice: DilationLattice, j: int) -> SpectralFunction:
    """V_{M^j} f: coefficients weighted by the smooth window v(M^{-j} k).

    Reproduces f exactly whenever the support of hat f lies in the window's
    plateau (in particular on (1/4) M^j [-1/2,1/2)^d), and vanishes outside
    (3/4) M^j [-1/2,1/2)^d, so V_{M^j} f is always in T_{M^j}.
    """
    out: Coeffs = {}
    for k, c in f.coeffs.items():
        w = bump_window(lattice.scale_point(k, j))
        if w != 0.0:
            out[k] = w * c
    return SpectralFunction(f.d, out)


# ---------------------------------------------------------------------------
# Fractional differences
# ---------------------------------------------------------------------------


def _difference_symbol(k: np.ndarray, h: np.ndarray, s: float) -> np.ndarray:
    """(1 - e^{2 pi i (k,h)})^s, principal branch (1 - z never leaves Re >= 0)."""
    z = np.exp(2j * np.pi * (k @ h))
    w = 1.0 - z
    out = np.zeros_like(w)
    nz = w != 0
    out[nz] = w[nz] ** s
    return out


def fractional_difference(
    f: SpectralFunction, h: Sequence[float], s: float, l_trunc: int = 200
) -> SpectralFunction:
    """Delta_h^s f via the multiplier (1 - e^{2 pi i (k,h)})^s.

    Exact for integer s (coincides with the s-fold forward difference with
    step h); for fractional s this is the principal branch, which agrees with
    the binomial series sum_l (-1)^l C(s,l) f(. + l h).  `l_trunc` names the
    truncation the result is certified against (the multiplier route is exact,
    so it never changes the output): the deviation from
    fractional_difference_series(f, h, s, l_trunc) stays within
    fractional_series_tail_bound at the support phases.
    """
    if l_trunc < 1:
        raise ValueError(f"truncation length must be positive, got {l_trunc}")
    if s <= 0:
        raise ValueError(f"difference order must be positive, got {s}")
    hv = np.asarray(h, dtype=float)
    if hv.shape != (f.d,):
        raise ValueError(f"step has shape {hv.shape}, expected ({f.d},)")
    if not f.coeffs:
        return f
    ks = np.array(list(f.coeffs.keys()), dtype=float)
    cs = np.array(list(f.coeffs.values()), dtype=complex)
    sym = _difference_symbol(ks, hv, s)
    return SpectralFunction(f.d, {k: complex(sym[i] * cs[i]) for i, k in enumerate(f.coeffs)})


def fractional_difference_series(
    f: SpectralFunction, h: Sequence[float], s: float, terms: int
) -> SpectralFunction:
    """Truncated binomial series sum_{l=0}^{terms} (-1)^l C(s,l) f(. + l h).

    The independent route for fractional_difference: each translate multiplies
    hat f(k) by e^{2 pi i (k,h) l}, so per frequency this is the partial sum
    of the binomial series of (1 - z)^s at z = e^{2 pi i (k,h)}.
    """
    if s <= 0:
        raise ValueError(f"difference order must be positive, got {s}")
    hv = np.asarray(h, dtype=float)
    ks = np.array(list(f.coeffs.keys()), dtype=float) if f.coeffs else np.zeros((0, f.d))
    z = np.exp(2j * np.pi * (ks @ hv))
    ls = np.arange(terms + 1, dtype=float)
    weights = (-1.0) ** ls * binom(s, ls)
    # Horner over l, vectorized across frequencies.
    acc = np.full(z.shape, weights[-1], dtype=complex)
    for w in weights[-2::-1]:
        acc = acc * z + w
    return SpectralFunction(f.d, {k: complex(acc[i] * c) for i, (k, c) in enumerate(f.coeffs.items())})


def fractional_series_tail_bound(
    s: float, terms: int, phases: Optional[Sequence[float]] = None, extra: int = 200_000
) -> float:
    """Upper bound for the binomial-series truncation error after `terms` terms.

    Without phases this is the crude l^1 tail sum_{l > terms} |C(s,l)| (a long
    stretch summed directly, closed with the integral tail of the l^{-s-1}
    envelope).  Given the phases theta = 2 pi (k,h) present in the function's
    support, each frequency gets the sharper Abel bound
    |C(s,terms+1)| / |sin(theta/2)| (partial sums of e^{i theta l} are bounded
    and the coefficients are eventually one-signed and monotone), and the
    maximum over the support is returned.
    """
    if s <= 0:
        raise ValueError(f"difference order must be positive, got {s}")
    if float(s).is_integer():
        if terms >= s:
            return 0.0
        return float(np.abs(binom(s, np.arange(terms + 1, int(s) + 1))).sum())
    b = abs(binom(s, terms + 1))
    crude = 0.0
    bb, l = b, terms + 1
    for _ in range(extra):
        crude += bb
        bb *= abs(s - l) / (l + 1)
        l += 1
    crude += bb * (l / s)
    if phases is None:
        return crude
    worst = 0.0
    for theta in phases:
        half = abs(math.sin(theta / 2.0))
        bound = crude if half < 1e-12 else min(crude, b / half)
        worst = max(worst, bound)
    return worst


# ---------------------------------------------------------------------------
# Multiplier l1 (Lebesgue-type) bound
# ---------------------------------------------------------------------------


def multiplier_l1_bound(
    rule: Callable[[IntVec], complex],
    support: Iterable[IntVec],
    oversample: int = 16,
) -> float:
    """Quadrature upper-bound route for the L_p boundedness of a multiplier.

    Returns ||sum_l rule(l) e^{2 pi i (l,x)}||_{L_1}, which dominates the
    multiplier operator norm on every L_p by Young's inequality.
    """
    coeffs: Coeffs = {}
    d = None
    for k in support:
        kk = tuple(int(v) for v in k)
        d = len(kk) if d is None else d
        val = complex(rule(kk))
        if val != 0:
            coeffs[kk] = val
    if not coeffs:
        return 0.0
    return lp_norm(SpectralFunction(d, coeffs), 1.0, oversample)


# ---------------------------------------------------------------------------
# Reality and serialization
# ---------------------------------------------------------------------------


def is_real(f: SpectralFunction, tol: float = 1e-12) -> bool:
    """True when f is (numerically) real-valued: hat f(-k) = conj(hat f(k))."""
    for k, c in f.coeffs.items():
        mk = tuple(-v for v in k)
        if abs(f.coeff(mk) - np.conj(c)) > tol:
            return False
    return True


def to_json_dict(f: SpectralFunction) -> dict:
    """Serialization schema: {"d": d, "coeffs": [{"k": [...], "re": r, "im": i}, ...]}."""
    return {
        "d": f.d,
        "coeffs": [
            {"k": list(k), "re": float(f.coeffs[k].real), "im": float(f.coeffs[k].imag)}
            for k in f.support
        ],
    }


def from_json_dict(payload: Mapping) -> SpectralFunction:
    d = int(payload["d"])
    coeffs: Coeffs = {}
    for entry in payload["coeffs"]:
        k = tuple(int(v) for v in entry["k"])
        if len(k) != d:
            raise ValueError(f"coefficient frequency {k} does not match dimension {d}")
        coeffs[k] = coeffs.get(k, 0j) + complex(float(entry["re"]), float(entry["im"]))
    return SpectralFunction(d, coeffs)
