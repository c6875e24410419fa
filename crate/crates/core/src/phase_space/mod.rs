//! Torus phase space: domain types, operator constructors, the Harper
//! system, and direct (trace-based) evaluation of the three distributions.

mod types;
mod operators;
mod harper;
mod distributions;
mod classical;

pub use types::{
    CatParams, DensityOperator, Grid, HarperSpectrum, HilbertDim, LineSpec, PhasePoint, PureState,
    UnitaryMatrix,
};
pub use operators::{
    build_basic_operators, cat_map, fourier_matrix, phase_matrix, phase_point, reflection_matrix,
    shift_matrix, translation, BasicOperators,
};
pub use harper::{continuous_coherent, harper_ground, harper_system, kicked_map};
pub use distributions::{husimi_direct, kirkwood_direct, wigner_direct};
pub use classical::{cat_classical_step, harper_classical_energy, harper_classical_step};
