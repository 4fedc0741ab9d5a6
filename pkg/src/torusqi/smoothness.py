"""Smoothness functionals: best approximation, moduli, K-functionals, Besov.

Everything here is grid-realized in a documented way: suprema over continuum
step sets are reported as maxima over explicit finite sample sets (axis
directions plus seeded random directions, a fixed magnitude ladder, and the
near-boundary magnitude always included), so every reported modulus is a
certified lower bound of its continuum value that converges as the sample
sets refine.  Norms route through Parseval when p = 2 and through the
oversampled rectangle rule otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.ndimage import maximum_filter
from scipy.special import binom

from .kernels import FunctionalSpec, functional_symbol
from .lattice import DilationLattice, in_index_set, spectral_index_set
from .spectrum import (
    SpectralFunction,
    apply_multiplier,
    fractional_difference,
    is_real,
    l2_norm,
    lp_norm,
    norm,
    partial_sum,
    quadrature_shape,
    synthesize,
    vallee_poussin,
)


class TaggedValue(NamedTuple):
    """A number together with the method that produced it."""

    value: float
    method: str


# ---------------------------------------------------------------------------
# Best and one-sided approximation
# ---------------------------------------------------------------------------


def best_approx(
    f: SpectralFunction, lattice: DilationLattice, j: int, p: float, oversample: int = 16
) -> TaggedValue:
    """E_{M^j}(f)_p, or a certified near-best proxy, with a method tag.

    p = 2        exact Parseval tail ("exact")
    1 < p < inf  ||f - S_{M^j} f||_p  ("near-best-S"; partial sums are
                 uniformly bounded on these p)
    p in {1,inf} ||f - V_{M^j} f||_p  ("near-best-V"; an upper bound for
                 E_{M^j} and comparable to E at half the scale)
    """
    if p == 2:
        tail = math.sqrt(
            sum(abs(c) ** 2 for k, c in f.coeffs.items() if not in_index_set(lattice, k, j))
        )
        return TaggedValue(tail, "exact")
    if p in (1, math.inf):
        return TaggedValue(lp_norm(f - vallee_poussin(f, lattice, j), p, oversample), "near-best-V")
    if 1 < p < math.inf:
        return TaggedValue(lp_norm(f - partial_sum(f, lattice, j), p, oversample), "near-best-S")
    raise ValueError(f"p must be in [1, inf], got {p}")


@dataclass(frozen=True)
class OneSidedPair:
    """t <= f <= T certified at the verification grid, with gap ||T - t||_p."""

    lower: SpectralFunction
    upper: SpectralFunction
    gap: float
    epsilon: float


def one_sided_upper(
    f: SpectralFunction, lattice: DilationLattice, j: int, p: float, oversample: int = 16
) -> OneSidedPair:
    """One-sided approximants T = Vf + eps, t = Vf - eps with eps the grid sup of |f - Vf|.

    Requires a real-valued f; both envelopes lie in T_{M^j} and the pair's
    gap is 2 eps in every L_p.  Feasibility holds at every verification-grid
    node by construction of eps.
    """
    if not is_real(f):
        raise ValueError("one-sided approximation needs a real-valued function")
    v = vallee_poussin(f, lattice, j)
    diff = f - v
    eps = lp_norm(diff, math.inf, oversample)
    shift = SpectralFunction(f.d, {(0,) * f.d: eps})
    upper = v + shift
    lower = v - shift
    gap = lp_norm(upper - lower, p, oversample)
    return OneSidedPair(lower, upper, gap, eps)


def one_sided_feasible_on_grid(
    pair: OneSidedPair, f: SpectralFunction, oversample: int = 16, tol: float = 1e-10
) -> bool:
    """Check t <= f <= T on the verification grid of f - lower/upper."""
    shape = quadrature_shape(f - pair.lower, oversample)
    fv = synthesize(f, shape).values.real
    lo = synthesize(pair.lower, shape).values.real
    hi = synthesize(pair.upper, shape).values.real
    return bool(np.all(lo <= fv + tol) and np.all(fv <= hi + tol))


def derivative(f: SpectralFunction, alpha: Sequence[int]) -> SpectralFunction:
    """D^alpha f via the multiplier prod_i (2 pi i k_i)^{alpha_i}."""
    a = tuple(int(v) for v in alpha)

    def rule(k):
        out: complex = 1.0
        for ki, ai in zip(k, a):
            out *= (2j * math.pi * ki) ** ai
        return out

    return apply_multiplier(f, rule)


def sobolev_onesided_bound(
    f: SpectralFunction, lattice: DilationLattice, j: int, p: float, oversample: int = 16
) -> TaggedValue:
    """sum over alpha in {0,1}^d, [alpha] > 0 of lambda^{-j [alpha]} E_{M^j}(D^alpha f)_p.

    The coordinatewise-derivative bound behind one-sided estimates; requires
    an isotropic dilation M = lambda I.
    """
    if not lattice.is_isotropic:
        raise ValueError("the Sobolev-type bound needs an isotropic dilation")
    lam = abs(lattice.diag[0])
    total = 0.0
    method = ""
    for alpha in itertools.product((0, 1), repeat=lattice.d):
        order = sum(alpha)
        if order == 0:
            continue
        e = best_approx(derivative(f, alpha), lattice, j, p, oversample)
        method = e.method
        total += lam ** (-j * order) * e.value
    return TaggedValue(total, method)


# ---------------------------------------------------------------------------
# Moduli of smoothness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModulusRequest:
    """Which modulus: total Omega_s, mixed omega_beta, or fractional omega_s."""

    kind: str  # "total" | "mixed" | "fractional"
    s: float = 0.0
    beta: Tuple[int, ...] = ()


def total(s: int) -> ModulusRequest:
    if s != int(s) or s < 1:
        raise ValueError(f"total modulus takes a positive integer order, got {s}")
    return ModulusRequest("total", s=float(s))


def mixed(beta: Sequence[int]) -> ModulusRequest:
    b = tuple(int(v) for v in beta)
    if not b or any(v < 0 for v in b) or sum(b) == 0:
        raise ValueError(f"mixed modulus needs a nonzero nonnegative multi-index, got {beta}")
    return ModulusRequest("mixed", beta=b)


def fractional(s: float) -> ModulusRequest:
    if s <= 0:
        raise ValueError(f"order must be positive, got {s}")
    return ModulusRequest("fractional", s=float(s))


def _unit_directions(d: int, direction_samples: int, seed: int) -> np.ndarray:
    axes = np.eye(d)
    if d == 1:
        return axes
    rng = np.random.default_rng(seed)
    extra = rng.standard_normal((direction_samples, d))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    return np.vstack([axes, extra])


def _magnitude_ladder(step_samples: int, closed: bool) -> np.ndarray:
    """Magnitudes in (0,1); the open ladder always includes 1 - 1e-6."""
    if closed:
        return np.arange(1, step_samples + 1) / step_samples
    inner = np.arange(1, step_samples) / step_samples
    return np.append(inner, 1.0 - 1e-6)

def total_sample_deltas(
    lattice: DilationLattice,
    j: int,
    direction_samples: int = 32,
    step_samples: int = 64,
    seed: int = 7,
) -> List[np.ndarray]:
    """Sample steps delta = r M^{-j} u, |M^j delta| = r < 1, for the total modulus."""
    powers = np.asarray(lattice.signed_powers(j), dtype=float)
    dirs = _unit_directions(lattice.d, direction_samples, seed)
    rs = _magnitude_ladder(step_samples, closed=False)
    return [r * (u / powers) for u in dirs for r in rs]


def difference_sup(
    f: SpectralFunction,
    deltas: Iterable[np.ndarray],
    s: float,
    p: float,
    oversample: int = 16,
) -> float:
    """max over the given steps of ||Delta_delta^s f||_p (the grid-realized sup)."""
    best = 0.0
    for delta in deltas:
        val = norm(fractional_difference(f, delta, s), p, oversample)
        if val > best:
            best = val
    return best


def modulus(
    f: SpectralFunction,
    request: ModulusRequest,
    lattice: DilationLattice,
    j: int,
    p: float,
    direction_samples: int = 32,
    step_samples: int = 64,
    seed: int = 7,
    oversample: int = 16,
) -> float:
    """Grid-realized modulus of smoothness at scale M^{-j}.

    total:       Omega_s(f, M^{-j})_p  = sup_{|M^j delta| < 1} ||Delta_delta^s f||_p
    mixed:       omega_beta(f, M^{-j})_p, iterated axis differences with
                 |delta_i| < |m_i|^{-j}
    fractional:  omega_s(f, lambda^{-j})_p = sup_{|h| <= lambda^{-j}}
                 ||Delta_h^s f||_p (d = 1 or isotropic M = lambda I)
    """
    if f.d != lattice.d:
        raise ValueError("function dimension does not match the lattice")
    if request.kind == "total":
        deltas = total_sample_deltas(lattice, j, direction_samples, step_samples, seed)
        return difference_sup(f, deltas, request.s, p, oversample)
    if request.kind == "fractional":
        if lattice.d > 1 and not lattice.is_isotropic:
            raise ValueError("fractional modulus needs d = 1 or an isotropic dilation")
        lam = abs(lattice.diag[0])
        dirs = _unit_directions(lattice.d, direction_samples, seed)
        rs = _magnitude_ladder(step_samples, closed=True)
        deltas = [r * lam ** (-j) * u for u in dirs for r in rs]
        return difference_sup(f, deltas, request.s, p, oversample)
    if request.kind == "mixed":
        return _mixed_modulus(f, request.beta, lattice, j, p, step_samples, oversample)
    raise ValueError(f"unknown modulus kind {request.kind!r}")


def _mixed_modulus(
    f: SpectralFunction,
    beta: Tuple[int, ...],
    lattice: DilationLattice,
    j: int,
    p: float,
    step_samples: int,
    oversample: int,
) -> float:
    if len(beta) != lattice.d:
        raise ValueError("multi-index dimension does not match the lattice")
    active = [i for i, b in enumerate(beta) if b > 0]
    # Keep the tensor sample grid at a sane size whatever d is.
    per_axis = step_samples
    while per_axis ** len(active) > 8192:
        per_axis //= 2
    ladder = _magnitude_ladder(per_axis, closed=False)
    extents = lattice.axis_extents(j)
    best = 0.0
    for combo in itertools.product(ladder, repeat=len(active)):
        g = f
        for i, r in zip(active, combo):
            h = np.zeros(lattice.d)
            h[i] = r / extents[i]
            g = fractional_difference(g, h, beta[i])
        val = norm(g, p, oversample)
        if val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# Fractional Laplacian and the K-functional realization
# ---------------------------------------------------------------------------


def fractional_laplacian(
    f: SpectralFunction, s: float, lattice: DilationLattice, j: int
) -> SpectralFunction:
    """(-Delta_{M^{-j}})^{s/2} f: the multiplier |M^{-j} k|^s (no 2 pi factor).

    s = 0 leaves f unchanged; for s > 0 the constant term is annihilated.
    """
    if s < 0:
        raise ValueError(f"order must be nonnegative, got {s}")
    if s == 0:
        return f
    return apply_multiplier(f, lambda k: lattice.scaled_norm(k, j) ** s)


def k_functional(
    f: SpectralFunction, s: float, lattice: DilationLattice, j: int, p: float, oversample: int = 16
) -> float:
    """Realized K-functional ||f - V_{M^j} f||_p + ||(-Delta_{M^{-j}})^{s/2} V_{M^j} f||_p.

    The window means make this a computable upper realization of the true
    infimum; for 1 < p < inf and isotropic M it is equivalent to the
    fractional modulus at the same scale.
    """
    v = vallee_poussin(f, lattice, j)
    return norm(f - v, p, oversample) + norm(fractional_laplacian(v, s, lattice, j), p, oversample)


# ---------------------------------------------------------------------------
# Besov norm and the functional classes behind it
# ---------------------------------------------------------------------------


def besov_norm(
    f: SpectralFunction,
    lattice: DilationLattice,
    s: float,
    p: float,
    q: float,
    nu_max: int,
    oversample: int = 16,
) -> float:
    """||f||_p + ( sum_{nu=1}^{nu_max} m^{(s/d) q nu} E_{M^nu}(f)_p^q )^{1/q}.

    q = inf takes the sup of m^{(s/d) nu} E_nu.  nu_max must already capture
    the whole support (E_{M^{nu_max}} = 0), so the truncation is exact.
    """
    if q != math.inf and q < 1:
        raise ValueError(f"q must be in [1, inf], got {q}")
    if any(not in_index_set(lattice, k, nu_max) for k in f.coeffs):
        raise ValueError(f"support of f exceeds D(M^{nu_max}); raise nu_max")
    m = lattice.det_abs
    rate = s / lattice.d
    terms = []
    for nu in range(1, nu_max + 1):
        e = best_approx(f, lattice, nu, p, oversample).value
        terms.append(m ** (rate * nu) * e)
    if q == math.inf:
        tail = max(terms, default=0.0)
    else:
        tail = float(np.sum(np.asarray(terms) ** q)) ** (1.0 / q)
    return norm(f, p, oversample) + tail


def besov_tail_sum(
    f: SpectralFunction,
    lattice: DilationLattice,
    j: int,
    n_order: int,
    p: float,
    nu_max: int,
    oversample: int = 16,
) -> float:
    """m^{-j(1/p + N/d)} sum_{nu >= j} m^{(1/p + N/d) nu} E_{M^nu}(f)_p.

    The error majorant produced by the Besov route for a functional of class
    order N; finite because the support of f is.
    """
    m = lattice.det_abs
    expo = 1.0 / p + n_order / lattice.d
    total = 0.0
    for nu in range(j, nu_max + 1):
        total += m ** (expo * nu) * best_approx(f, lattice, nu, p, oversample).value
    return m ** (-expo * j) * total


def class_Dnjp_ratio(
    functional: FunctionalSpec,
    n_order: int,
    p: float,
    lattice: DilationLattice,
    j: int,
    nu_range: Iterable[int],
    trials: int = 20,
    seed: int = 11,
    oversample: int = 16,
) -> float:
    """Measured class constant of a functional on random polynomials.

    max over trials and nu in nu_range of
    ||phitilde * T_nu||_p / ( m^{(N/d)(nu - j)} ||T_nu||_p ),
    T_nu random with full spectrum on D(M^nu).  Delta with N = 0 gives
    exactly 1; the first-derivative symbol stays below pi by the Bernstein
    inequality at the spectral edge.
    """
    rng = np.random.default_rng(seed)
    sym = functional_symbol(functional, lattice)
    m = lattice.det_abs
    best = 0.0
    for nu in nu_range:
        members = spectral_index_set(lattice, nu).members
        for _ in range(trials):
            coeffs = {
                k: complex(a, b)
                for k, a, b in zip(
                    members, rng.standard_normal(len(members)), rng.standard_normal(len(members))
                )
            }
            t = SpectralFunction(lattice.d, coeffs)
            denom = m ** ((n_order / lattice.d) * (nu - j)) * norm(t, p, oversample)
            val = norm(apply_multiplier(t, sym.bind(j)), p, oversample) / denom
            if val > best:
                best = val
    return best


# ---------------------------------------------------------------------------
# Sharp-constant derivative/difference comparison (d = 1)
# ---------------------------------------------------------------------------


def nsr_check(
    t: SpectralFunction, s: int, delta: float, p: float = 2, oversample: int = 16
) -> Tuple[float, float]:
    """Convention-consistent derivative-vs-difference pair for degree-n polynomials.

    Returns (lhs, rhs) with

        lhs = ||T^(s)||_p           (multiplier (2 pi i k)^s)
        rhs = (2 pi n / (2 sin(pi n delta)))^s ||Delta_delta^s T||_p,

    n the spectral degree and 0 < delta <= 1/(2n).  lhs <= rhs, with equality
    at T = e^{2 pi i n x} (||Delta_delta^s e^{2 pi i n .}||_p is exactly
    (2 sin(pi n delta))^s).
    """
    if t.d != 1:
        raise ValueError("the sharp comparison is one-dimensional")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"order must be a positive integer, got {s}")
    if not t.coeffs:
        raise ValueError("need a nonzero polynomial")
    n = max(abs(k[0]) for k in t.coeffs)
    if n < 1:
        # constants: both sides vanish for every order and step
        if delta <= 0.0:
            raise ValueError(f"delta must be positive, got {delta}")
        return 0.0, 0.0
    if not 0.0 < delta <= 1.0 / (2 * n):
        raise ValueError(f"delta must lie in (0, 1/(2n)] = (0, {1.0 / (2 * n)}], got {delta}")
    lhs = norm(derivative(t, (s,)), p, oversample)
    factor = (2.0 * math.pi * n / (2.0 * math.sin(math.pi * n * delta))) ** s
    rhs = factor * norm(fractional_difference(t, (delta,), s), p, oversample)
    return lhs, rhs


def jackson_defect(
    f: SpectralFunction,
    lattice: DilationLattice,
    j: int,
    s: int,
    p: float,
    step_samples: int = 64,
    oversample: int = 16,
) -> float:
    """E_{M^j}(f)_p divided by sum_i omega_{s e_i}(f, M^{-j})_p.

    Bounded across j by the direct (Jackson-type) estimate; returns 0.0 when
    both sides vanish (f already in T_{M^j} with flat axis moduli).
    """
    e = best_approx(f, lattice, j, p, oversample).value
    denom = 0.0
    for i in range(lattice.d):
        beta = tuple(s if a == i else 0 for a in range(lattice.d))
        denom += _mixed_modulus(f, beta, lattice, j, p, step_samples, oversample)
    if denom == 0.0:
        return 0.0
    return e / denom


# ---------------------------------------------------------------------------
# tau-modulus (averaged local oscillation), d <= 2
# ---------------------------------------------------------------------------


def tau_modulus(f: SpectralFunction, s: int, u: float, p: float, grid: int = 256) -> float:
    """Grid realization of the averaged s-th local oscillation at scale u.

    omega_s(f, x; u) = sup { |Delta_h^s f(t)| : t, t + s h in the ball of
    diameter s u around x }, reported through ||omega_s(f, .; u)||_p on a
    uniform grid (exact grid max for p = inf).  Steps h and anchors t run
    over the same grid, so the value is a lower bound of the continuum field
    that converges as `grid` refines.  Implemented for d <= 2.
    """
    if f.d > 2:
        raise ValueError("tau-modulus realization covers d <= 2")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"order must be a positive integer, got {s}")
    if u <= 0:
        raise ValueError(f"scale must be positive, got {u}")
    if p != math.inf and p < 1:
        raise ValueError(f"p must be in [1, inf], got {p}")
    d = f.d
    shape = (grid,) * d
    values = synthesize(f, shape).values
    radius = s * u / 2.0
    max_step = int(math.floor(u * grid))
    if max_step < 1:
        return 0.0
    weights = np.array([(-1.0) ** l * binom(s, l) for l in range(s + 1)])
    offsets = np.arange(-int(radius * grid), int(radius * grid) + 1)
    field = np.zeros(shape)
    for q in _step_vectors(d, max_step, grid):
        diff = np.zeros(shape, dtype=complex)
        for l, w in enumerate(weights):
            diff += w * np.roll(values, shift=tuple(-l * qi for qi in q), axis=tuple(range(d)))
        mags = np.abs(diff)
        fp = _tau_footprint(offsets, q, s, radius, grid, d)
        if fp is None:
            continue
        local = maximum_filter(mags, footprint=fp, mode="wrap")
        np.maximum(field, local, out=field)
    if p == math.inf:
        return float(field.max())
    return float(np.mean(field**p) ** (1.0 / p))


def _step_vectors(d: int, max_step: int, grid: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []
    rng = range(-max_step, max_step + 1)
    for q in itertools.product(*([rng] * d)):
        if any(q) and math.hypot(*q) <= max_step:
            out.append(q)
    return out


def _tau_footprint(
    offsets: np.ndarray, q: Tuple[int, ...], s: int, radius: float, grid: int, d: int
):
    """Boolean mask of anchor offsets o with |o| <= R and |o + s q| <= R (grid units)."""
    r_units = radius * grid
    grids = np.meshgrid(*([offsets] * d), indexing="ij")
    dist0 = np.sqrt(sum(g.astype(float) ** 2 for g in grids))
    dist1 = np.sqrt(sum((g + s * qi).astype(float) ** 2 for g, qi in zip(grids, q)))
    mask = (dist0 <= r_units) & (dist1 <= r_units)
    if not mask.any():
        return None
    return mask
