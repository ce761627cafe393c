"""GHZ-state generation in three Coulomb-coupled charge qubits.

Energies are in ueV, times in ns and dephasing rates in GHz.
"""
from .dynamics import (
    HBAR,
    PLANCK,
    DephasingConfig,
    TimeGrid,
    TimeSeries,
    evolve_lindblad,
    evolve_unitary,
    fidelity_trace,
    first_peak,
    populations_trace,
)
from .effective import (
    FLIP_LABELS,
    GHZ_LABELS,
    effective_model,
    evolve_effective,
    formation_time,
    omega_closed_form,
    omega_numeric,
    partition,
)
from .entanglement import fidelity, tangle_report, tau_one_to_rest, tau_pair
from .errors import *  # noqa: F401,F403
from .model import (
    BASIS_LABELS,
    QubitParams,
    SixDotParams,
    basis_state,
    build_h3,
    build_h6,
    flip_state,
    ghz_state,
    map_params,
    project_to_qubit_subspace,
    w_state,
)
from .numerics import hermitian_eig, kron, matrix_sqrt_psd, partial_trace
from .spectrum import formation_time_sweep, sweep_spectrum

__version__ = "0.1.0"
