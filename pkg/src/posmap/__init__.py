"""Positivity regions, Choi matrices and numeric oracles for a two-parameter
family of linear maps from M_n to M_n (x) M_n."""

from .linalg import (
    ConvergenceError,
    EigenResult,
    bell_projector,
    hermitian_eigenvalues,
    is_psd,
    kron,
    matrix_unit,
    partial_transpose,
    random_pure_state,
    random_unitary,
)
from .maps import MapKind, MapParams, apply_extended_map, apply_map, block_matrix, choi_matrix
from .oracle import (
    OracleVerdict,
    cp_ccp_equivalence,
    decomposition_consistency,
    equivariance_residual,
    monte_carlo_falsify,
    numeric_completely_positive,
    numeric_k_positive,
)
from .regions import (
    Classification,
    ConsistencyError,
    CubicRootResult,
    classify,
    cp_boundary,
    decomposability_boundary,
    is_completely_copositive,
    is_completely_positive,
    is_decomposable_and_two_positive,
    is_decomposable_sufficient,
    is_positive,
    is_positive_not_cp,
    is_two_positive,
    is_two_positive_not_cp,
    positivity_boundary,
    smallest_cubic_root,
    two_positivity_boundary,
)
from .scan import RegionGrid, ScanConfig, emit_csv, emit_plot, scan
from .spectra import (
    ClosedFormSpectrum,
    SpectrumReport,
    spectrum_block2,
    spectrum_choi,
    spectrum_choi_phi2,
    spectrum_phi_e11,
    verify_point,
    verify_spectrum,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
