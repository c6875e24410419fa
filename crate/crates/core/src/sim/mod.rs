//! Exact multi-register qubit statevector simulator: named register
//! layouts, the gate catalogue used by the tomography circuits, probe
//! readout (exact and sampled) and ensemble handling of mixed inputs.

mod layout;
mod machine;
mod circuit;

pub use layout::{RegisterId, RegisterLayout};
pub use machine::{MachineState, Gate, ProbeReadout, RegisterInit, sample_mean};
pub use circuit::{run_for_density, run_for_state, run_sampled, CircuitSpec, SampleBases};
