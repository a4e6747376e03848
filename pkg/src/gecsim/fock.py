"""Brute-force many-body oracle in the fixed-particle-number sector.

Evolves the full state vector for small chains and computes entanglement
by explicit partial trace, independently of the correlation-matrix path it
certifies. A test instrument: hard size guards, no performance claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from gecsim.gaussian import ProductState
from gecsim.lattice import SingleParticleHamiltonian

MAX_SITES = 14
MAX_SECTOR_DIM = 10_000


class SectorTooLargeError(ValueError):
    """Requested sector exceeds the oracle's hard size guards."""


def _check_size(L: int, N: int):
    if L > MAX_SITES:
        raise SectorTooLargeError(f"L={L} exceeds the oracle guard L <= {MAX_SITES}")
    dim = comb(L, N)
    if dim > MAX_SECTOR_DIM:
        raise SectorTooLargeError(f"sector dimension C({L},{N}) = {dim} exceeds {MAX_SECTOR_DIM}")
    return dim


def sector_basis(L: int, N: int) -> np.ndarray:
    """All L-bit patterns with popcount N, ascending as integers.

    Bit j of a pattern is site j+1 (site 1 = least significant bit).
    """
    patterns = [m for m in range(1 << L) if bin(m).count("1") == N]
    return np.array(patterns, dtype=np.int64)


@dataclass(frozen=True)
class FockState:
    """Normalized amplitude vector over the fixed-N occupation basis."""

    amplitudes: np.ndarray
    basis: np.ndarray
    L: int

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ValueError("state not normalized within 1e-12")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def from_product(cls, state: ProductState) -> "FockState":
        _check_size(state.L, state.N)
        basis = sector_basis(state.L, state.N)
        pattern = sum(int(b) << j for j, b in enumerate(state.occupations))
        amp = np.zeros(basis.size, dtype=complex)
        amp[np.searchsorted(basis, pattern)] = 1.0
        return cls(amplitudes=amp, basis=basis, L=state.L)


def _hop_sign(pattern: int, i: int, j: int) -> int:
    """Jordan-Wigner sign of c_i^dag c_j: parity of occupation strictly between i and j."""
    lo, hi = min(i, j), max(i, j)
    between = pattern & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1 if bin(between).count("1") % 2 else 1


def build_manybody_hamiltonian(h: SingleParticleHamiltonian, N: int) -> np.ndarray:
    """Dense sector Hamiltonian sum_ij h_ij c_i^dag c_j with fermionic signs."""
    L = h.L
    dim = _check_size(L, N)
    basis = sector_basis(L, N)
    index = {int(p): a for a, p in enumerate(basis)}
    H = np.zeros((dim, dim))
    hm = h.matrix
    for a, pattern in enumerate(basis):
        pattern = int(pattern)
        for j in range(L):
            if not pattern >> j & 1:
                continue
            H[a, a] += hm[j, j]
            for i in range(L):
                if i == j or pattern >> i & 1:
                    continue
                target = pattern ^ (1 << j) | (1 << i)
                H[index[target], a] += hm[i, j] * _hop_sign(pattern, i, j)
    return H


def evolve_fock(psi0: FockState, H_mb: np.ndarray, t: float) -> FockState:
    """Propagate by e^{-i H t} via full eigendecomposition."""
    if H_mb.shape[0] > MAX_SECTOR_DIM:
        raise SectorTooLargeError(f"dimension {H_mb.shape[0]} exceeds {MAX_SECTOR_DIM}")
    E, W = np.linalg.eigh(H_mb)
    amp = (W * np.exp(-1j * E * t)) @ (W.conj().T @ psi0.amplitudes)
    norm = np.linalg.norm(amp)
    if abs(norm - 1.0) > 1e-10:
        raise RuntimeError(f"propagation lost unitarity: |norm - 1| = {abs(norm - 1.0):.3e}")
    return FockState(amplitudes=amp / norm, basis=psi0.basis, L=psi0.L)


def entropy_partial_trace(psi: FockState, ell: int) -> float:
    """Von Neumann entropy (nats) of sites 1..ell by explicit partial trace.

    The sector state is embedded in the full 2^L space; with the
    Jordan-Wigner string ordered along the chain and a contiguous left
    block, the fermionic reduced state coincides with the spin one, so a
    reshape plus SVD gives the Schmidt spectrum directly.
    """
    L = psi.L
    if not 1 <= ell <= L - 1:
        raise ValueError(f"ell must be in [1, {L - 1}], got {ell}")
    _check_size(L, 0)
    full = np.zeros(1 << L, dtype=complex)
    full[psi.basis] = psi.amplitudes
    # bit j = site j+1; leading reshape axis must be sites 1..ell
    M = full.reshape(1 << (L - ell), 1 << ell).T
    sv = np.linalg.svd(M, compute_uv=False)
    p = sv**2
    p = p[p > 1e-16]
    return float(-(p * np.log(p)).sum())
