"""Single-particle hopping Hamiltonians for 1D free-fermion chains.

Two model families: power-law long-range hopping -1/|i-j|^alpha and its
nearest-neighbor (alpha -> infinity) limit, on open or periodic chains.
The spectral decomposition is computed once at construction and reused to
build exact propagators at arbitrary times.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class NearestNeighborType:
    """Sentinel for the nearest-neighbor (alpha -> infinity) hopping limit."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NearestNeighbor"


NEAREST_NEIGHBOR = NearestNeighborType()


class Boundary(enum.Enum):
    OPEN = "open"
    PERIODIC = "periodic"


class ValidationError(ValueError):
    """Invalid model parameters; `field` names the offending field."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass(frozen=True)
class ModelSpec:
    """Lattice model parameters.

    L sites, hopping exponent alpha (or NEAREST_NEIGHBOR), boundary
    condition, and particle count N (default half filling). L must be even
    unless allow_odd_L is set.
    """

    L: int
    alpha: float | NearestNeighborType = NEAREST_NEIGHBOR
    boundary: Boundary = Boundary.OPEN
    N: int | None = None
    allow_odd_L: bool = False

    def __post_init__(self):
        if not isinstance(self.L, (int, np.integer)) or self.L < 2:
            raise ValidationError("L", f"must be an integer >= 2, got {self.L!r}")
        if self.L % 2 != 0 and not self.allow_odd_L:
            raise ValidationError("L", f"must be even (got {self.L}); pass allow_odd_L=True to override")
        if not isinstance(self.alpha, NearestNeighborType):
            if not (isinstance(self.alpha, (int, float, np.floating)) and math.isfinite(self.alpha) and self.alpha > 0):
                raise ValidationError("alpha", f"must be a finite positive real or NEAREST_NEIGHBOR, got {self.alpha!r}")
        if not isinstance(self.boundary, Boundary):
            raise ValidationError("boundary", f"must be a Boundary, got {self.boundary!r}")
        if self.N is None:
            object.__setattr__(self, "N", self.L // 2)
        if not isinstance(self.N, (int, np.integer)) or not (0 <= self.N <= self.L):
            raise ValidationError("N", f"must be an integer in [0, {self.L}], got {self.N!r}")

    @property
    def is_tight_binding(self) -> bool:
        return isinstance(self.alpha, NearestNeighborType)


@dataclass(frozen=True)
class SingleParticleHamiltonian:
    """L x L real symmetric hopping matrix with its cached eigendecomposition.

    h = V diag(E) V^T with V orthogonal; hopping amplitude and hbar set to 1.
    """

    spec: ModelSpec
    matrix: np.ndarray
    eigenvalues: np.ndarray = field(default=None)
    eigenvectors: np.ndarray = field(default=None)

    def __post_init__(self):
        h = np.asarray(self.matrix, dtype=float)
        if h.shape != (self.spec.L, self.spec.L):
            raise ValidationError("matrix", f"shape {h.shape} does not match L={self.spec.L}")
        if not np.array_equal(h, h.T):
            raise ValidationError("matrix", "not exactly symmetric")
        object.__setattr__(self, "matrix", h)
        if self.eigenvalues is None or self.eigenvectors is None:
            E, V = np.linalg.eigh(h)
            object.__setattr__(self, "eigenvalues", E)
            object.__setattr__(self, "eigenvectors", V)

    @property
    def L(self) -> int:
        return self.spec.L

    def propagator(self, t: float) -> np.ndarray:
        """exp(-i h t), exact at any t via the cached spectral decomposition."""
        V = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * t)
        return (V * phases) @ V.T


def build_hamiltonian(spec: ModelSpec) -> SingleParticleHamiltonian:
    """Construct the hopping matrix for `spec` and diagonalize it.

    Long range: h_ij = -1/d(i,j)^alpha for i != j, with d the plain distance
    |i-j| on open chains and the minimal image min(|i-j|, L-|i-j|) on
    periodic ones. Nearest neighbor: h_ij = -1 iff d(i,j) = 1.
    """
    L = spec.L
    idx = np.arange(L)
    dist = np.abs(idx[:, None] - idx[None, :]).astype(float)
    if spec.boundary is Boundary.PERIODIC:
        dist = np.minimum(dist, L - dist)
    h = np.zeros((L, L))
    off = dist > 0
    if spec.is_tight_binding:
        h[dist == 1] = -1.0
    else:
        h[off] = -1.0 / dist[off] ** spec.alpha
    # exact symmetry regardless of floating-point quirks in the power
    h = np.triu(h)
    h = h + h.T
    return SingleParticleHamiltonian(spec=spec, matrix=h)


def dispersion(k):
    """Tight-binding single-particle energy, -2 cos k."""
    return -2.0 * np.cos(k)


def group_velocity(k):
    """Tight-binding quasiparticle velocity d(dispersion)/dk = 2 sin k.

    Maximum |velocity| is 2, attained at k = +/- pi/2.
    """
    return 2.0 * np.sin(k)


MAX_GROUP_VELOCITY = 2.0
