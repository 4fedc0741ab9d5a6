"""Shared fixtures: small lattices and random trigonometric polynomials."""

import numpy as np
import pytest

from torusqi.lattice import DilationLattice, spectral_index_set
from torusqi.spectrum import SpectralFunction


@pytest.fixture(scope="session")
def line():
    return DilationLattice((2,))


@pytest.fixture(scope="session")
def line3():
    return DilationLattice((3,))


@pytest.fixture(scope="session")
def plane():
    return DilationLattice((2, 2))


@pytest.fixture(scope="session")
def aniso():
    return DilationLattice((2, 3))


def random_poly(lattice, j, rng, real=False, scale=1.0):
    """Random element of T_{M^j}; Hermitian-symmetrized when real=True."""
    members = spectral_index_set(lattice, j).members
    coeffs = {}
    for k in members:
        c = scale * complex(rng.standard_normal(), rng.standard_normal())
        coeffs[k] = c
    if real:
        sym = {}
        for k, c in coeffs.items():
            neg = tuple(-v for v in k)
            if neg in coeffs:
                sym[k] = 0.5 * (c + coeffs[neg].conjugate())
            # boundary frequencies whose mirror falls outside D(M^j) cannot
            # appear in a real-valued polynomial; drop them
        coeffs = sym
    return SpectralFunction(lattice.d, coeffs)
