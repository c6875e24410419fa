use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::phase_space::{DensityOperator, PureState};

use super::layout::{RegisterId, RegisterLayout};
use super::machine::{sample_mean, Gate, MachineState, ProbeReadout, RegisterInit};

/// A probe-scattering circuit: layout, per-register initial states (the
/// system slot is overwritten by the input state on each run), gate list
/// and the probe qubit read out at the end.
#[derive(Clone, Debug)]
pub struct CircuitSpec {
    pub layout: RegisterLayout,
    pub inits: Vec<RegisterInit>,
    pub system: RegisterId,
    pub probe_qubit: usize,
    pub gates: Vec<Gate>,
}

/// Which probe bases a sampled run estimates.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SampleBases {
    pub z: bool,
    pub y: bool,
}

impl CircuitSpec {
    fn run_machine(&self, system_state: &PureState) -> Result<MachineState> {
        let mut inits = self.inits.clone();
        inits[self.system.0] = RegisterInit::State(system_state.clone());
        let mut machine = MachineState::init(self.layout.clone(), &inits)?;
        machine.apply_all(&self.gates)?;
        Ok(machine)
    }

    /// Exact `(P(σz=+1), ⟨σy⟩)` for a pure system input.
    fn contractions_for_state(&self, system_state: &PureState) -> Result<(f64, f64)> {
        let machine = self.run_machine(system_state)?;
        machine.probe_contractions(self.probe_qubit)
    }

    /// Exact `(P(σz=+1), ⟨σy⟩)` for a density-operator input, by
    /// eigen-ensemble averaging. Exact because both contractions are
    /// linear in ρ.
    fn contractions_for_density(&self, rho: &DensityOperator) -> Result<(f64, f64)> {
        let ensemble = rho.eigen_ensemble().map_err(|e| match e {
            Error::NonHermitianInput { deviation } => Error::NonPsdInput {
                min_eigenvalue: -deviation,
            },
            other => other,
        })?;
        let mut pz_plus = 0.0;
        let mut sy = 0.0;
        for (weight, state) in &ensemble {
            let (pz, y) = self.contractions_for_state(state)?;
            pz_plus += weight * pz;
            sy += weight * y;
        }
        Ok((pz_plus, sy))
    }
}

/// Run a probe circuit on a pure system state and read the probe exactly.
pub fn run_for_state(circuit: &CircuitSpec, state: &PureState) -> Result<ProbeReadout> {
    let (pz_plus, sy) = circuit.contractions_for_state(state)?;
    Ok(ProbeReadout::exact(2.0 * pz_plus - 1.0, sy))
}

/// Run a probe circuit on a density operator by spectral decomposition,
/// weighting the per-eigenvector readouts. Equals the density-matrix
/// result by linearity.
pub fn run_for_density(circuit: &CircuitSpec, rho: &DensityOperator) -> Result<ProbeReadout> {
    let (pz_plus, sy) = circuit.contractions_for_density(rho)?;
    Ok(ProbeReadout::exact(2.0 * pz_plus - 1.0, sy))
}

/// Finite-statistics readout: the exact outcome distribution is computed
/// once, then `shots` ±1 outcomes are drawn per requested basis from a
/// ChaCha stream seeded with `seed` (z first, then y).
pub fn run_sampled(
    circuit: &CircuitSpec,
    rho: &DensityOperator,
    bases: SampleBases,
    shots: u64,
    seed: u64,
) -> Result<ProbeReadout> {
    if shots == 0 {
        return run_for_density(circuit, rho);
    }
    let (pz_plus, sy_exact) = circuit.contractions_for_density(rho)?;
    let py_plus = (1.0 + sy_exact) / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sz = 2.0 * pz_plus - 1.0;
    let mut sy = sy_exact;
    let mut variance = 0.0;
    if bases.z {
        let (mean, se) = sample_mean(pz_plus, shots, &mut rng);
        sz = mean;
        variance += se * se;
    }
    if bases.y {
        let (mean, se) = sample_mean(py_plus, shots, &mut rng);
        sy = mean;
        variance += se * se;
    }
    Ok(ProbeReadout {
        sz,
        sy,
        shots_used: shots,
        standard_error: variance.sqrt(),
    })
}
