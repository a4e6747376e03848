"""Free-fermion lattice dynamics and entanglement-based circuit-cost bounds.

Exact Gaussian-state evolution via correlation matrices, entanglement
aggregated over all contiguous cuts (the geometric entanglement capacity),
quasiparticle-theory predictions, and a brute-force many-body oracle for
certification on small systems.
"""

from gecsim.lattice import ModelSpec, SingleParticleHamiltonian, build_hamiltonian
from gecsim.gaussian import (
    CorrelationMatrix,
    EntropyProfile,
    ProductState,
    block_entropy,
    entropy_profile,
    evolve,
    initial_correlation,
)
from gecsim.complexity import GecPoint, OccupationSpectrum, gec, gec_upper_bound

__version__ = "0.1.0"

__all__ = [
    "ModelSpec",
    "SingleParticleHamiltonian",
    "build_hamiltonian",
    "ProductState",
    "CorrelationMatrix",
    "EntropyProfile",
    "initial_correlation",
    "evolve",
    "block_entropy",
    "entropy_profile",
    "GecPoint",
    "OccupationSpectrum",
    "gec",
    "gec_upper_bound",
    "__version__",
]
