"""Anisotropic dilation lattices on the d-torus.

A dilation is a diagonal integer matrix M = diag(m_1, ..., m_d) with every
|m_i| >= 2.  Level j works with M^j: the index set

    D(M^j) = (M^j [-1/2, 1/2)^d) ∩ Z^d

has exactly m^j = prod |m_i|^j members (componentwise k_i in
[-|m_i|^j/2, |m_i|^j/2)), and the sample grid consists of the m^j points
M^{-j} k mod 1.  Entries may be negative; index-set extents use |m_i|^j while
alias arithmetic uses the signed entries (both generate the same congruence,
since m_i^j Z = |m_i|^j Z).
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

import numpy as np

IntVec = Tuple[int, ...]

# Eager materialization guard: index sets at or below this cardinality are
# realized as lists; larger ones are only iterated.
MATERIALIZE_LIMIT = 2**20


@dataclass(frozen=True)
class DilationLattice:
    """Diagonal dilation matrix, stored by its diagonal."""

    diag: IntVec

    def __post_init__(self) -> None:
        if len(self.diag) == 0:
            raise ValueError("dilation needs at least one axis")
        for m in self.diag:
            if not isinstance(m, int) or abs(m) < 2:
                raise ValueError(f"dilation entries must be integers with |m_i| >= 2, got {m}")
        object.__setattr__(self, "diag", tuple(int(m) for m in self.diag))

    @property
    def d(self) -> int:
        return len(self.diag)

    @property
    def det_abs(self) -> int:
        """m = |det M|."""
        return math.prod(abs(m) for m in self.diag)

    @property
    def is_isotropic(self) -> bool:
        """True when M = lambda * I for a single integer lambda."""
        return len(set(self.diag)) == 1

    def axis_extents(self, j: int) -> IntVec:
        """(|m_1|^j, ..., |m_d|^j)."""
        _check_level(j)
        return tuple(abs(m) ** j for m in self.diag)

    def index_count(self, j: int) -> int:
        """m^j = |det M^j|."""
        return math.prod(self.axis_extents(j))

    def signed_powers(self, j: int) -> IntVec:
        """(m_1^j, ..., m_d^j) with signs."""
        _check_level(j)
        return tuple(m**j for m in self.diag)

    def scale_point(self, k: Sequence[int], j: int) -> np.ndarray:
        """M^{-j} k as a float vector (signed entries)."""
        return np.asarray(k, dtype=float) / np.asarray(self.signed_powers(j), dtype=float)

    def scaled_norm(self, k: Sequence[int], j: int) -> float:
        """|M^{-j} k| (Euclidean)."""
        return float(np.linalg.norm(self.scale_point(k, j)))


def _check_level(j: int) -> None:
    try:
        j = operator.index(j)
    except TypeError:
        raise ValueError(f"level must be a positive integer, got {j}") from None
    if j < 1:
        raise ValueError(f"level must be a positive integer, got {j}")


def _axis_range(n: int, rho: float) -> range:
    """Integers k with -rho*n/2 <= k < rho*n/2.

    Exact for dyadic rho (the use sites pass eighths); the half-open right end
    matches the half-open box M^j[-1/2,1/2)^d.
    """
    x = rho * n / 2.0
    return range(-math.floor(x), math.ceil(x))


@dataclass(frozen=True)
class SpectralIndexSet:
    """D(rho * M^j) = (rho M^j [-1/2,1/2)^d) ∩ Z^d, as per-axis integer ranges."""

    lattice: DilationLattice
    level: int
    rho: float
    ranges: Tuple[range, ...]

    def __iter__(self) -> Iterator[IntVec]:
        return itertools.product(*self.ranges)

    def __len__(self) -> int:
        return math.prod(len(r) for r in self.ranges)

    def __contains__(self, k: Sequence[int]) -> bool:
        if len(k) != len(self.ranges):
            return False
        return all(int(ki) in r for ki, r in zip(k, self.ranges))

    @property
    def members(self) -> list[IntVec]:
        """Materialized member list; guarded so huge sets stay streamed."""
        if len(self) > MATERIALIZE_LIMIT:
            raise ValueError(
                f"index set of size {len(self)} exceeds the materialization "
                f"limit {MATERIALIZE_LIMIT}; iterate instead"
            )
        return list(self)


def spectral_index_set(lattice: DilationLattice, j: int, rho: float = 1.0) -> SpectralIndexSet:
    """Index set D(rho * M^j).  rho in (0, 1], 1 by default."""
    _check_level(j)
    if not 0.0 < rho <= 1.0:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    ranges = tuple(_axis_range(n, rho) for n in lattice.axis_extents(j))
    return SpectralIndexSet(lattice, j, rho, ranges)


def in_index_set(lattice: DilationLattice, k: Sequence[int], j: int, rho: float = 1.0) -> bool:
    """Membership k in D(rho * M^j) without materializing anything."""
    _check_level(j)
    for ki, n in zip(k, lattice.axis_extents(j)):
        x = rho * n / 2.0
        if not (-x <= ki < x):
            return False
    return True


def alias_representative(lattice: DilationLattice, nu: Sequence[int], j: int) -> IntVec:
    """The unique l in D(M^j) with nu ≡ l (mod M^j Z^d), componentwise."""
    _check_level(j)
    out = []
    for nui, n in zip(nu, lattice.axis_extents(j)):
        half = n // 2
        out.append((int(nui) + half) % n - half)
    return tuple(out)


def sample_grid(lattice: DilationLattice, j: int) -> np.ndarray:
    """The m^j sample nodes, shape (m^j, d), in canonical grid order.

    Canonical order is the FFT layout: the flattened C-order product of the
    per-axis node lists (0, 1/n_i, ..., (n_i-1)/n_i).  As a set this equals
    {M^{-j} k mod 1 : k in D(M^j)} for either sign of the entries;
    analyze_samples expects values in exactly this order.
    """
    extents = lattice.axis_extents(j)
    axes = [np.arange(n, dtype=float) / n for n in extents]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)
