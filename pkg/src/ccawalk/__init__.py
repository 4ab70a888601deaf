"""Two-photon transport and delocalization in a coupled-cavity array.

Closed-form spectral dynamics for a uniform open chain of coupled cavities,
NOON-type two-photon inputs, coincidence and delocalization observables,
and an independent brute-force Fock-sector reference to verify it all
against.  See the ``ccawalk`` CLI for scenario runs and data export.
"""

from .errors import ValidationError
from .lattice import (
    LatticeSpec,
    PropagatorColumn,
    PropagatorMatrix,
    SpectralDecomposition,
    decompose,
    propagator_columns,
    propagator_matrix,
)
from .observables import (
    CorrelationMatrix,
    NoonInput,
    TpdSeries,
    concurrence,
    correlation_matrix,
    theta_for_concurrence,
    tpd_degree,
    tpd_series,
)
from .oracle import (
    TwoPhotonBasis,
    TwoPhotonStateVector,
    build_two_photon_hamiltonian,
    evolve,
    noon_state,
    oracle_correlation,
)

__version__ = "0.1.0"

__all__ = [
    "LatticeSpec",
    "SpectralDecomposition",
    "PropagatorMatrix",
    "PropagatorColumn",
    "decompose",
    "propagator_matrix",
    "propagator_columns",
    "NoonInput",
    "CorrelationMatrix",
    "TpdSeries",
    "concurrence",
    "theta_for_concurrence",
    "correlation_matrix",
    "tpd_degree",
    "tpd_series",
    "TwoPhotonBasis",
    "TwoPhotonStateVector",
    "noon_state",
    "build_two_photon_hamiltonian",
    "evolve",
    "oracle_correlation",
    "ValidationError",
    "__version__",
]
