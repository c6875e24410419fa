//! Coherent-state preparation: phase-estimation filtering of the kicked
//! Harper map applied to a cheap localized "square" initial state, plus
//! the spectral diagnostics that pick the working parameters.

mod square;
mod phase_estimation;
mod prepare;
mod diagnostics;

pub use square::{square_state, SquareStateSpec};
pub use phase_estimation::{
    approx_power, pe_config, peak_misalignment, phase_estimation_filter, resolution_qubits,
    run_phase_estimation, FilterCircuit, FilterOutcome, PeConfig, PowerMode, PowerPolicy,
};
pub use prepare::{prepare_coherent, PrepStats};
pub use diagnostics::{
    eigen_convergence, fidelity_curve, gap_vs_gamma, parameter_region, populations,
    select_aligned_gamma, spectral_diagnostics, FidelityCurve, GapFit, ParameterRegion,
    PopulationRow, SpectralDiagnostics,
};
