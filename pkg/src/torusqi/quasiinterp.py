"""Periodic quasi-interpolation operators Q_j(f, phi_j, phitilde_j).

Spatial form:  Q_j f = (1/m^j) sum_{k in D(M^j)} (phitilde_j * f)(M^{-j} k)
               phi_j(. - M^{-j} k).

Spectral form (exact, by folding frequencies over the sampling lattice):

    hat(Q_j f)(l) = hat phi_j(l) * sum_{nu ≡ l (mod M^j Z^d)}
                    hat phitilde_j(nu) hat f(nu),   l in D(M^j).

apply_spectral implements the fold directly on the support of hat f and is
the default route; apply_spatial evaluates the functional convolution at the
sample nodes by direct series summation and re-analyzes, which serves as the
independent cross-check of the fold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .kernels import FunctionalSpec, KernelSpec, functional_symbol, kernel_symbol
from .lattice import DilationLattice, IntVec, alias_representative, sample_grid
from .spectrum import (
    SpectralFunction,
    analyze_samples,
    apply_multiplier,
    convolve_functional,
    l2_norm,
    lp_norm,
    multiplier_l1_bound,
)


@dataclass(frozen=True)
class QuasiInterpOperator:
    kernel: KernelSpec
    functional: FunctionalSpec
    lattice: DilationLattice
    level: int

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level}")


def quasi_interpolant(
    kernel: KernelSpec, functional: FunctionalSpec, lattice: DilationLattice, level: int
) -> QuasiInterpOperator:
    # Build the symbols once up front so bad parameter combinations
    # (e.g. a Riesz gamma too small for the dimension) fail at construction.
    kernel_symbol(kernel, lattice)
    functional_symbol(functional, lattice)
    return QuasiInterpOperator(kernel, functional, lattice, level)


def apply_spectral(op: QuasiInterpOperator, f: SpectralFunction) -> SpectralFunction:
    """Default route: alias-fold the weighted coefficients onto D(M^j)."""
    if f.d != op.lattice.d:
        raise ValueError("function dimension does not match the lattice")
    j = op.level
    phi = kernel_symbol(op.kernel, op.lattice)
    phitilde = functional_symbol(op.functional, op.lattice)
    folded: Dict[IntVec, complex] = {}
    for nu, c in f.coeffs.items():
        l = alias_representative(op.lattice, nu, j)
        folded[l] = folded.get(l, 0j) + phitilde.at(j, nu) * c
    return SpectralFunction(
        f.d, {l: phi.at(j, l) * acc for l, acc in folded.items()}
    ).trimmed(0.0)


def apply_spatial(op: QuasiInterpOperator, f: SpectralFunction) -> SpectralFunction:
    """Oracle route: sample phitilde_j * f on the level-j grid, then analyze.

    The node values are computed by direct summation of the series (no FFT),
    so the only machinery shared with apply_spectral is the symbol catalog.
    """
    if f.d != op.lattice.d:
        raise ValueError("function dimension does not match the lattice")
    j = op.level
    phitilde = functional_symbol(op.functional, op.lattice)
    g = convolve_functional(phitilde, f, j)
    nodes = sample_grid(op.lattice, j)
    if g.coeffs:
        ks = np.array(list(g.coeffs.keys()), dtype=float)
        cs = np.array(list(g.coeffs.values()), dtype=complex)
        samples = np.exp(2j * np.pi * nodes @ ks.T) @ cs
    else:
        samples = np.zeros(nodes.shape[0], dtype=complex)
    analyzed = analyze_samples(samples, op.lattice, j)
    phi = kernel_symbol(op.kernel, op.lattice)
    return apply_multiplier(analyzed, phi.bind(j)).trimmed(0.0)


def approximation_error(
    op: QuasiInterpOperator, f: SpectralFunction, p: float, oversample: int = 16
) -> float:
    """||f - Q_j f||_p (Parseval-exact for p = 2, quadrature otherwise)."""
    diff = f - apply_spectral(op, f)
    if p == 2:
        return l2_norm(diff)
    return lp_norm(diff, p, oversample)


def operator_norm_bound(
    kernel: KernelSpec, lattice: DilationLattice, j: int, p: float, oversample: int = 16
) -> float:
    """Bound for the L_p operator norm of convolution with the kernel.

    p = 2 is exact (sup of |hat phi_j| over D(M^j), by Parseval); all other p
    fall back to the L_1 kernel norm, which dominates every K_{phi,p} by
    Young's inequality — this is where Dirichlet-type kernels show their
    j^d Lebesgue-constant growth while window-type kernels stay bounded.
    """
    sym = kernel_symbol(kernel, lattice)
    if p == 2:
        return max(abs(sym.at(j, k)) for k in sym.support(j))
    return multiplier_l1_bound(sym.bind(j), sym.support(j), oversample)
