//! The Husimi scattering circuit: a probe-controlled swap between a
//! program register holding the coherent state `|α⟩` and the system.
//! The probe reads `⟨σz⟩ = ⟨α|ρ|α⟩ = N·H(α)`; `⟨σy⟩` vanishes because
//! the swap traces to a real number against Hermitian inputs.

use crate::error::{Error, Result};
use crate::phase_space::{DensityOperator, HilbertDim, PureState};
use crate::sim::{
    run_for_density, run_sampled, CircuitSpec, Gate, ProbeReadout, RegisterInit, RegisterLayout,
    SampleBases,
};

use super::Mode;

/// Evaluate `H(α)` against a coherent program state. Returns the probe
/// readout and `H = ⟨σz⟩ / N`.
pub fn husimi_circuit(
    dim: HilbertDim,
    rho: &DensityOperator,
    alpha: &PureState,
    mode: Mode,
) -> Result<(ProbeReadout, f64)> {
    let n = dim.size();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "program state of dimension {} for system dimension {n}",
            alpha.dim()
        )));
    }
    let qubits = dim.qubits();
    let layout = RegisterLayout::new(vec![("probe", 1), ("program", qubits), ("system", qubits)])?;
    let program = layout.register("program").unwrap();
    let system = layout.register("system").unwrap();

    let gates = vec![
        Gate::Hadamard { qubit: 0 },
        Gate::ProbeCtrl {
            probe_qubit: 0,
            inner: vec![Gate::SwapRegisters {
                a: program,
                b: system,
            }],
        },
        Gate::Hadamard { qubit: 0 },
    ];

    let circuit = CircuitSpec {
        inits: vec![
            RegisterInit::Basis(0),
            RegisterInit::State(alpha.clone()),
            RegisterInit::Basis(0),
        ],
        system,
        probe_qubit: 0,
        gates,
        layout,
    };
    let out = match mode {
        Mode::Exact => run_for_density(&circuit, rho)?,
        Mode::Sampled { shots, seed } => {
            run_sampled(&circuit, rho, SampleBases { z: true, y: false }, shots, seed)?
        }
    };
    Ok((out, out.sz / n as f64))
}
