"""Quantum-walk search on graph families with connectivity and spectral tools."""

from .connectivity import (
    ConnectivityReport,
    algebraic_connectivity,
    connectivity_report,
    edge_connectivity,
    max_flow,
    normalized_algebraic_connectivity,
    vertex_connectivity,
)
from .dynamics import (
    OverlapTable,
    Schedule,
    SearchConfig,
    SearchSystem,
    TimeSeries,
    evolve,
    find_peak,
    overlap_spectrum,
    run_schedule,
    search_hamiltonian,
    uniform_state,
)
from .errors import ConfigError, ContractViolation, QwalkError
from .graphs import (
    FamilySpec,
    Graph,
    build,
    build_complete,
    build_cubic_lattice,
    build_hypercube,
    build_joined_complete,
    build_latin_square,
    build_paley,
    build_rook,
    build_simplex_complete,
    matrices,
    parse_graph_spec,
)
from .oracle import (
    Prediction,
    compare,
    effective_matrix,
    lattice_scaling_table,
    predict_complete,
    predict_joined,
    predict_simplex_stage1,
    predict_simplex_stage2,
    schedule_for,
)
from .spectral import (
    Partition,
    ReducedSystem,
    SpectralDecomposition,
    equitable_partition,
    hermitian_eig,
    lift_state,
    project_state,
    reduce,
)

__version__ = "0.1.0"
