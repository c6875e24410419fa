//! Programmable gate arrays that measure the three distributions through
//! an ancilla probe, plus line/region averaging via cat-map transport.
//! Every circuit is checked against the direct-trace oracles in
//! [`crate::phase_space`].

mod program;
mod lines;
mod wigner;
mod kirkwood;
mod husimi;
mod sweeps;

pub use program::{line_program, point_program, rect_program, ProgramKind, WignerProgram};
pub use lines::{solve_cat_params, LineMapping};
pub use wigner::{
    run_wigner_program, wigner_line_average, wigner_line_oracle, wigner_point_circuit,
    wigner_region_average,
};
pub use kirkwood::kirkwood_circuit;
pub use husimi::husimi_circuit;
pub use sweeps::{husimi_grid, kirkwood_grid, wigner_grid, GridValue};

/// Readout mode shared by all circuits: exact expectation values or
/// finite shot statistics from a seeded stream.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled { shots: u64, seed: u64 },
}
