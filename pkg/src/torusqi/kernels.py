"""Kernel and functional catalog for periodic quasi-interpolation.

Kernels phi_j are trigonometric polynomials in T_{M^j}, described by their
symbol hat phi_j(l) on D(M^j) (zero outside).  Functionals phitilde_j act by
spectral multiplication with a symbol defined on all of Z^d.  Both symbols
are profiles of the scaled frequency xi = M^{-j} l, which is what makes the
whole family j-coherent:

  kernels:      dirichlet            1 on D(M^j)
                corrected_dirichlet  prod_i (pi sigma xi_i) / sin(pi sigma xi_i)
                vallee_poussin       v(xi)  (smooth window)
                riesz                (1 - |c_d xi|^s)_+^gamma, c_d = 4 sqrt(d)

  functionals:  delta                1
                average              prod_i sinc(sigma xi_i)
                discrete_weights     sum_r w_r e^{2 pi i (l, M^{-j-1} tau_r)}
                differential         sum_{[beta] <= N} c_beta (2 pi i xi)^beta

The defect symbol psi_j(l) = 1 - hat phi_j(l) * hat phitilde_j(l) measures
compatibility; it is evaluated as -(a*b + a + b) with a = hat phi - 1 and
b = hat phitilde - 1 so that near-zero values carry full relative accuracy
(per-variant Taylor branches kick in below |argument| < 1e-4).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from .lattice import DilationLattice, IntVec, in_index_set, spectral_index_set
from .spectrum import SpectralFunction, lp_norm
from .windows import bump_window

KERNEL_VARIANTS = ("dirichlet", "corrected_dirichlet", "vallee_poussin", "riesz")
FUNCTIONAL_VARIANTS = ("delta", "average", "discrete_weights", "differential")

# Switch point for Taylor evaluation of removable singularities.
_TAYLOR_SWITCH = 1e-4


class DefectSingularityError(ValueError):
    """Raised when a windowed defect quotient divides by a vanishing defect."""

    def __init__(self, frequency: IntVec) -> None:
        self.frequency = frequency
        super().__init__(f"defect symbol vanishes inside the window at k = {frequency}")


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelSpec:
    variant: str
    params: Tuple[Tuple[str, object], ...] = field(default_factory=tuple)

    @property
    def param_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class FunctionalSpec:
    variant: str
    params: Tuple[Tuple[str, object], ...] = field(default_factory=tuple)

    @property
    def param_dict(self) -> dict:
        return dict(self.params)


def dirichlet() -> KernelSpec:
    return KernelSpec("dirichlet")


def corrected_dirichlet(sigma: float) -> KernelSpec:
    if not 0.0 < sigma <= 1.0:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    return KernelSpec("corrected_dirichlet", (("sigma", float(sigma)),))


def vallee_poussin_kernel() -> KernelSpec:
    return KernelSpec("vallee_poussin")


def riesz_kernel(s: float, gamma: float) -> KernelSpec:
    if s <= 0 or gamma <= 0:
        raise ValueError(f"riesz parameters must be positive, got s={s}, gamma={gamma}")
    return KernelSpec("riesz", (("s", float(s)), ("gamma", float(gamma))))


def delta() -> FunctionalSpec:
    return FunctionalSpec("delta")


def average(sigma: float) -> FunctionalSpec:
    if not 0.0 < sigma <= 1.0:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    return FunctionalSpec("average", (("sigma", float(sigma)),))


def discrete_weights(weights: Sequence[float], shifts: Sequence[Sequence[int]]) -> FunctionalSpec:
    if len(weights) != len(shifts) or not weights:
        raise ValueError("need equally many (nonzero count) weights and shifts")
    w = tuple(float(x) for x in weights)
    if abs(sum(w) - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1, got {sum(w)}")
    t = tuple(tuple(int(v) for v in shift) for shift in shifts)
    if len({len(shift) for shift in t}) != 1:
        raise ValueError("shift vectors must share one dimension")
    return FunctionalSpec("discrete_weights", (("weights", w), ("shifts", t)))


def differential(coeffs: Mapping[Sequence[int], complex]) -> FunctionalSpec:
    """Differential-type symbol sum_{[beta] <= N} c_beta (2 pi i M^{-j} l)^beta.

    The beta = 0 coefficient pins the symbol's value at l = 0 (include it so
    the symbol does not degenerate there unless that is intended).
    """
    cleaned = tuple(
        sorted((tuple(int(b) for b in beta), complex(c)) for beta, c in coeffs.items())
    )
    if not cleaned:
        raise ValueError("differential functional needs at least one coefficient")
    if any(b < 0 for beta, _ in cleaned for b in beta):
        raise ValueError("multi-indices must be nonnegative")
    if len({len(beta) for beta, _ in cleaned}) != 1:
        raise ValueError("multi-indices must share one dimension")
    return FunctionalSpec("differential", (("coeffs", cleaned),))


def first_derivative(axis: int = 0, d: int = 1) -> FunctionalSpec:
    """The order-1 differential symbol 2 pi i (M^{-j} l)_axis."""
    beta = tuple(1 if i == axis else 0 for i in range(d))
    return differential({beta: 1.0})


def differential_order(spec: FunctionalSpec) -> int:
    if spec.variant != "differential":
        raise ValueError("order is defined for differential functionals")
    return max(sum(beta) for beta, _ in spec.param_dict["coeffs"])


# ---------------------------------------------------------------------------
# Scalar profile pieces with stable "minus one" branches
# ---------------------------------------------------------------------------


def _sinc_m1(t: float) -> float:
    """sin(pi t)/(pi t) - 1, accurate near 0."""
    u = math.pi * t
    if abs(u) < _TAYLOR_SWITCH:
        u2 = u * u
        return u2 * (-1.0 / 6.0 + u2 * (1.0 / 120.0 - u2 / 5040.0))
    return math.sin(u) / u - 1.0


def _inv_sinc_m1(t: float) -> float:
    """(pi t)/sin(pi t) - 1, accurate near 0 (the corrected-Dirichlet weight)."""
    u = math.pi * t
    if abs(u) < _TAYLOR_SWITCH:
        u2 = u * u
        return u2 * (1.0 / 6.0 + u2 * (7.0 / 360.0 + u2 * 31.0 / 15120.0))
    return u / math.sin(u) - 1.0


def _combine_m1(a: complex, b: complex) -> complex:
    """(1+a)(1+b) - 1 without cancellation: a + b + a*b."""
    return a + b + a * b


def _product_m1(parts: Iterable[complex]) -> complex:
    out: complex = 0.0
    for a in parts:
        out = _combine_m1(out, a)
    return out


def _expi_m1(theta: float) -> complex:
    """e^{i theta} - 1 = -2 sin^2(theta/2) + i sin(theta)."""
    half = math.sin(theta / 2.0)
    return complex(-2.0 * half * half, math.sin(theta))


# Per-variant continuous profiles, reported as "value minus one" at xi = M^{-j} l.


def _kernel_profile_m1(spec: KernelSpec, lattice: DilationLattice) -> Callable[[np.ndarray], complex]:
    d = lattice.d
    if spec.variant == "dirichlet":
        return lambda xi: 0.0
    if spec.variant == "corrected_dirichlet":
        sigma = spec.param_dict["sigma"]
        return lambda xi: _product_m1(_inv_sinc_m1(sigma * t) for t in xi)
    if spec.variant == "vallee_poussin":
        return lambda xi: bump_window(xi) - 1.0
    if spec.variant == "riesz":
        s, gamma = spec.param_dict["s"], spec.param_dict["gamma"]
        if gamma <= (d - 1) / 2.0:
            raise ValueError(f"riesz kernel needs gamma > (d-1)/2 = {(d - 1) / 2}, got {gamma}")
        c_d = 4.0 * math.sqrt(d)

        def m1(xi: np.ndarray) -> complex:
            z = (c_d * float(np.linalg.norm(xi))) ** s
            if z >= 1.0:
                return -1.0
            return math.expm1(gamma * math.log1p(-z))

        return m1
    raise ValueError(f"unknown kernel variant {spec.variant!r}")


def _functional_profile_m1(
    spec: FunctionalSpec, lattice: DilationLattice
) -> Callable[[np.ndarray], complex]:
    if spec.variant == "delta":
        return lambda xi: 0.0
    if spec.variant == "average":
        sigma = spec.param_dict["sigma"]
        return lambda xi: _product_m1(_sinc_m1(sigma * t) for t in xi)
    if spec.variant == "discrete_weights":
        weights = spec.param_dict["weights"]
        shifts = spec.param_dict["shifts"]
        if len(shifts[0]) != lattice.d:
            raise ValueError("shift dimension does not match the lattice")
        diag = np.asarray(lattice.diag, dtype=float)

        def m1(xi: np.ndarray) -> complex:
            # (l, M^{-j-1} tau) = sum_i xi_i tau_i / m_i  (signed entries).
            acc: complex = sum(weights) - 1.0
            for w, tau in zip(weights, shifts):
                theta = 2.0 * math.pi * float(np.dot(xi / diag, np.asarray(tau, dtype=float)))
                acc += w * _expi_m1(theta)
            return acc

        return m1
    if spec.variant == "differential":
        coeffs = spec.param_dict["coeffs"]
        if len(coeffs[0][0]) != lattice.d:
            raise ValueError("multi-index dimension does not match the lattice")

        def m1(xi: np.ndarray) -> complex:
            acc: complex = -1.0
            for beta, c in coeffs:
                term = c
                for b, t in zip(beta, xi):
                    term *= (2j * math.pi * t) ** b
                acc += term
            return acc

        return m1
    raise ValueError(f"unknown functional variant {spec.variant!r}")


# ---------------------------------------------------------------------------
# Symbol families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolFamily:
    """A level-indexed frequency multiplier (j, l) -> complex."""

    lattice: DilationLattice
    label: str
    rule: Callable[[int, IntVec], complex]
    support_fn: Callable[[int], List[IntVec]] | None = None

    def at(self, j: int, k: Sequence[int]) -> complex:
        return self.rule(j, tuple(int(v) for v in k))

    def bind(self, j: int) -> Callable[[IntVec], complex]:
        return lambda k: self.rule(j, k)

    def support(self, j: int) -> List[IntVec]:
        if self.support_fn is None:
            raise ValueError(f"symbol family {self.label!r} has unbounded support")
        return self.support_fn(j)

    def as_spectral_function(self, j: int) -> SpectralFunction:
        return SpectralFunction(
            self.lattice.d, {k: self.at(j, k) for k in self.support(j)}
        ).trimmed(0.0)


def kernel_symbol(spec: KernelSpec, lattice: DilationLattice) -> SymbolFamily:
    """hat phi_j as a symbol family, supported on D(M^j)."""
    m1 = _kernel_profile_m1(spec, lattice)

    def rule(j: int, k: IntVec) -> complex:
        if not in_index_set(lattice, k, j):
            return 0j
        return 1.0 + m1(lattice.scale_point(k, j))

    return SymbolFamily(
        lattice,
        spec.variant,
        rule,
        support_fn=lambda j: spectral_index_set(lattice, j).members,
    )


def functional_symbol(spec: FunctionalSpec, lattice: DilationLattice) -> SymbolFamily:
    """hat phitilde_j as a symbol family on all of Z^d (no support restriction)."""
    m1 = _functional_profile_m1(spec, lattice)

    def rule(j: int, k: IntVec) -> complex:
        return 1.0 + m1(lattice.scale_point(k, j))

    return SymbolFamily(lattice, spec.variant, rule)


def discrete_weights_doubled_symbol(spec: FunctionalSpec, lattice: DilationLattice) -> SymbolFamily:
    """Doubled-argument variant of a discrete-weights symbol (diagnostic only).

    The shift-sum definition yields e.g. cos^2(pi M^{-j-1} l) for the weights
    (1/4, 1/2, 1/4); a doubled-argument convention cos^2(2 pi M^{-j-1} l)
    appears in print for the same example.  Symbol studies report both so the
    discrepancy stays visible.
    """
    if spec.variant != "discrete_weights":
        raise ValueError("doubled-argument diagnostic applies to discrete_weights only")
    doubled = discrete_weights(
        spec.param_dict["weights"],
        [tuple(2 * v for v in tau) for tau in spec.param_dict["shifts"]],
    )
    fam = functional_symbol(doubled, lattice)
    return SymbolFamily(lattice, "alt_doubled_argument", fam.rule)


def defect_symbol(
    kernel: KernelSpec, functional: FunctionalSpec, lattice: DilationLattice
) -> SymbolFamily:
    """psi_j(l) = 1 - hat phi_j(l) hat phitilde_j(l) on D(M^j)."""
    km1 = _kernel_profile_m1(kernel, lattice)
    fm1 = _functional_profile_m1(functional, lattice)

    def rule(j: int, k: IntVec) -> complex:
        if not in_index_set(lattice, k, j):
            raise ValueError(f"defect symbol is defined on D(M^j); {k} is outside at level {j}")
        xi = lattice.scale_point(k, j)
        return -_combine_m1(km1(xi), fm1(xi))

    return SymbolFamily(
        lattice,
        f"defect[{kernel.variant}+{functional.variant}]",
        rule,
        support_fn=lambda j: spectral_index_set(lattice, j).members,
    )


def _defect_profile(
    kernel: KernelSpec, functional: FunctionalSpec, lattice: DilationLattice
) -> Callable[[np.ndarray], complex]:
    """Continuous-extension defect profile psi(xi), for limits at xi -> 0."""
    km1 = _kernel_profile_m1(kernel, lattice)
    fm1 = _functional_profile_m1(functional, lattice)
    return lambda xi: -_combine_m1(km1(xi), fm1(xi))


def smooth_window(lattice: DilationLattice, delta: float) -> SymbolFamily:
    """The scaled cutoff v_delta as a symbol family: (j, k) -> v(M^{-j}k / delta).

    Equals 1 for |xi_i| <= delta/4 in every axis and 0 once any axis passes
    3 delta / 8, with the C^infinity glue in between.
    """
    if delta <= 0.0:
        raise ValueError(f"window scale must be positive, got {delta}")

    def rule(j: int, k: IntVec) -> complex:
        return bump_window(lattice.scale_point(k, j), delta) + 0j

    def support(j: int) -> List[IntVec]:
        # v(xi/delta) vanishes once any |xi_i| >= 3 delta / 8; the symmetric
        # box below covers every strictly interior integer frequency.
        axes = []
        for n in lattice.axis_extents(j):
            hi = int(math.ceil(3.0 * delta * n / 8.0)) - 1
            axes.append(range(-hi, hi + 1))
        return [tuple(k) for k in itertools.product(*axes)]

    return SymbolFamily(lattice, f"window[{delta:g}]", rule, support_fn=support)


# ---------------------------------------------------------------------------
# Compatibility diagnostics
# ---------------------------------------------------------------------------

COMPAT_RHO_GRID = tuple((8 - i) / 8.0 for i in range(8))  # 1, 7/8, ..., 1/8


def compat_radius(
    kernel: KernelSpec,
    functional: FunctionalSpec,
    lattice: DilationLattice,
    j: int,
    tol: float = 1e-9,
) -> float:
    """Largest rho on the eighths grid with |hat phi hat phitilde - 1| <= tol on D(rho M^j).

    Strict compatibility at radius rho means Q_j reproduces T_{rho M^j}.
    Returns 0.0 when even rho = 1/8 fails.
    """
    km1 = _kernel_profile_m1(kernel, lattice)
    fm1 = _functional_profile_m1(functional, lattice)
    for rho in COMPAT_RHO_GRID:
        ok = True
        for k in spectral_index_set(lattice, j, rho):
            xi = lattice.scale_point(k, j)
            if abs(_combine_m1(km1(xi), fm1(xi))) > tol:
                ok = False
                break
        if ok:
            return rho
    return 0.0


def compat_order(
    kernel: KernelSpec,
    functional: FunctionalSpec,
    lattice: DilationLattice,
    j_range: Iterable[int],
    delta: float,
    s: float,
) -> float:
    """Lattice surrogate for the order-s compatibility constant.

    sup over j in j_range and k in D(delta M^j) \\ {0} of
    |psi_j(k)| / |M^{-j} k|^s.  Stable in j when the defect vanishes to order
    exactly s at 0; grows like m^{j(r-s)} when the true order r < s, which is
    exactly the behaviour the symbol studies look for.
    """
    if s < 1:
        raise ValueError(f"order must be at least 1, got {s}")
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    psi = defect_symbol(kernel, functional, lattice)
    best = 0.0
    for j in j_range:
        for k in spectral_index_set(lattice, j, delta):
            if all(v == 0 for v in k):
                continue
            ratio = abs(psi.at(j, k)) / lattice.scaled_norm(k, j) ** s
            if ratio > best:
                best = ratio
    return best


def fractional_condition_symbols(
    kernel: KernelSpec,
    functional: FunctionalSpec,
    lattice: DilationLattice,
    s: float,
    delta: float,
    direction: str,
) -> SymbolFamily:
    """Windowed quotient symbols behind the order-s fractional conditions.

    direction "upper":  psi_j(k) / |M^{-j} k|^s * v_delta(M^{-j} k)
    direction "lower":  |M^{-j} k|^s / psi_j(k) * v_{1/delta}(M^{-j} k)

    where v_delta(xi) = v(xi / delta).  The lower window reaches outside
    D(M^j); there hat phi_j = 0, so the defect is exactly 1.  The value at
    k = 0 is the continuous extension along the diagonal direction; for the
    lower symbol a vanishing defect inside the window raises
    DefectSingularityError with the offending frequency.
    """
    if direction not in ("upper", "lower"):
        raise ValueError(f"direction must be 'upper' or 'lower', got {direction!r}")
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    if s <= 0:
        raise ValueError(f"order must be positive, got {s}")
    profile = _defect_profile(kernel, functional, lattice)
    psi_fam = defect_symbol(kernel, functional, lattice)
    d = lattice.d
    xi0 = np.full(d, 1e-5 / math.sqrt(d))
    window_scale = delta if direction == "upper" else 1.0 / delta

    def psi_ext(j: int, k: IntVec) -> complex:
        if in_index_set(lattice, k, j):
            return psi_fam.at(j, k)
        return 1.0 + 0j  # hat phi_j = 0 outside D(M^j)

    def rule(j: int, k: IntVec) -> complex:
        if all(v == 0 for v in k):
            psi0 = profile(xi0)
            r0 = float(np.linalg.norm(xi0)) ** s
            if direction == "upper":
                return psi0 / r0
            if psi0 == 0:
                raise DefectSingularityError(k)
            return r0 / psi0
        xi = lattice.scale_point(k, j)
        w = bump_window(xi, window_scale)
        if w == 0.0:
            return 0j
        r = float(np.linalg.norm(xi)) ** s
        if direction == "upper":
            return psi_ext(j, k) / r * w
        psi = psi_ext(j, k)
        if psi == 0:
            raise DefectSingularityError(k)
        return r / psi * w

    def support_fn(j: int) -> List[IntVec]:
        # Per-axis reach of the window: |xi_i| < (3/8) * window_scale.
        out: List[IntVec] = []
        bounds = []
        for n in lattice.axis_extents(j):
            reach = int(math.floor(0.375 * window_scale * n)) + 1
            bounds.append(range(-reach, reach + 1))
        for k in itertools.product(*bounds):
            if all(v == 0 for v in k) or bump_window(lattice.scale_point(k, j), window_scale) != 0.0:
                out.append(k)
        return out

    label = f"{direction}[{kernel.variant}+{functional.variant},s={s},delta={delta}]"
    return SymbolFamily(lattice, label, rule, support_fn=support_fn)


# ---------------------------------------------------------------------------
# L_{q,j} norm of the averaging functional
# ---------------------------------------------------------------------------


def functional_lqj_norm(
    spec: FunctionalSpec,
    q: float,
    lattice: DilationLattice,
    j: int,
    samples_per_cell: int = 1 << 14,
) -> float:
    """Quadrature of the L_{q,j} norm of the averaging functional.

    phitilde_j = sigma^{-d} m^j chi_{M^{-j}[-sigma/2, sigma/2)^d} periodized;
    the density S(x) = (1/m^j) sum_{k in D(M^j)} |phitilde_j(x - M^{-j}k)|
    factorizes over axes, so the defining integral
    (m^j int_{M^{-j}T^d} S^q)^{1/q} (sup for q = inf) is evaluated one axis
    at a time by a midpoint rule, never via the closed form it is compared to.
    """
    if spec.variant != "average":
        raise ValueError("the L_{q,j} quadrature is implemented for the averaging functional")
    if q != math.inf and q < 1:
        raise ValueError(f"q must be in [1, inf], got {q}")
    sigma = spec.param_dict["sigma"]
    log_acc = 0.0
    for n in lattice.axis_extents(j):
        # One fundamental cell [0, 1/n); the translate centered at 0 covers
        # circle-distance < sigma/(2n).  Midpoints never hit the boundary.
        x = (np.arange(samples_per_cell) + 0.5) / (samples_per_cell * n)
        dist = np.minimum(x, 1.0 / n - x)
        covered = dist < sigma / (2.0 * n)
        density = covered / sigma
        if q == math.inf:
            axis_val = float(density.max())
        else:
            axis_val = float(np.mean(density**q)) ** (1.0 / q)
        if axis_val == 0.0:
            return 0.0
        log_acc += math.log(axis_val)
    return math.exp(log_acc)
