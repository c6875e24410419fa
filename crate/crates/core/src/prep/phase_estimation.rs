//! Phase estimation over the kicked Harper map, used as a filter: a
//! `t`-qubit counting register selects the eigenphase peak of the map's
//! ground state, collapsing the system toward the coherent state.

use crate::error::{Error, Result};
use crate::linalg::{mat_power, phase_distance, unitary_eigen, CMat};
use crate::phase_space::{harper_ground, kicked_map, HilbertDim, PureState, UnitaryMatrix};
use crate::sim::{Gate, MachineState, RegisterId, RegisterInit, RegisterLayout};

/// How the controlled powers `U(γ)^(2^j)` are realized.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum PowerPolicy {
    /// True matrix powers by repeated squaring.
    Exact,
    /// Semiclassical substitution `U(γ)^(2^j) ≈ U(2^j γ)`.
    Semiclassical,
    /// Semiclassical up to `2^threshold_exponent · γ`, then squares of the
    /// stored approximant — a fixed number of extra multiplications per
    /// additional qubit, independent of `N`.
    Hybrid { threshold_exponent: u32 },
}

/// Which realization [`approx_power`] actually used.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PowerMode {
    Exact,
    Semiclassical,
    Product,
}

/// The operator standing in for `U(γ)^(2^exponent)` under the policy.
pub fn approx_power(
    dim: HilbertDim,
    gamma: f64,
    exponent: u32,
    policy: PowerPolicy,
) -> (UnitaryMatrix, PowerMode) {
    match policy {
        PowerPolicy::Exact => {
            let mut m = kicked_map(dim, gamma).into_matrix();
            for _ in 0..exponent {
                m = &m * &m;
            }
            (
                UnitaryMatrix::new(m).expect("powers of a unitary are unitary"),
                PowerMode::Exact,
            )
        }
        PowerPolicy::Semiclassical => {
            let scaled = gamma * (1u64 << exponent) as f64;
            (kicked_map(dim, scaled), PowerMode::Semiclassical)
        }
        PowerPolicy::Hybrid { threshold_exponent } => {
            if exponent <= threshold_exponent {
                let scaled = gamma * (1u64 << exponent) as f64;
                (kicked_map(dim, scaled), PowerMode::Semiclassical)
            } else {
                let base = kicked_map(dim, gamma * (1u64 << threshold_exponent) as f64);
                let mut m = base.into_matrix();
                for _ in 0..(exponent - threshold_exponent) {
                    m = &m * &m;
                }
                (
                    UnitaryMatrix::new(m).expect("products of unitaries are unitary"),
                    PowerMode::Product,
                )
            }
        }
    }
}

/// Phase-estimation configuration.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PeConfig {
    pub system_qubits: usize,
    /// Counting qubits `t = ⌈n + log2(2 + 1/(2ε))⌉`.
    pub counting_qubits: usize,
    pub epsilon: f64,
    pub gamma: f64,
    pub policy: PowerPolicy,
    /// Whether `γN < 0.6`, the regime with a linear eigenphase gap.
    pub linear_gap_regime: bool,
}

/// Build a configuration from the failure budget: `ε = 1/4` gives
/// `t = n + 2`, the minimum the success bound needs.
pub fn pe_config(
    dim: HilbertDim,
    epsilon: f64,
    gamma: f64,
    policy: PowerPolicy,
) -> Result<PeConfig> {
    if !(0.0..1.0).contains(&epsilon) || epsilon == 0.0 {
        return Err(Error::InvalidBudget(epsilon));
    }
    if gamma <= 0.0 {
        return Err(Error::DimensionMismatch(format!(
            "kick strength gamma = {gamma} must be positive"
        )));
    }
    let n = dim.qubits();
    let t = (n as f64 + (2.0 + 1.0 / (2.0 * epsilon)).log2()).ceil() as usize;
    Ok(PeConfig {
        system_qubits: n,
        counting_qubits: t,
        epsilon,
        gamma,
        policy,
        linear_gap_regime: (gamma * dim.size() as f64) < 0.6,
    })
}

/// Counting qubits needed to resolve an eigenphase gap: `⌈log2(1/Δφ)⌉`.
pub fn resolution_qubits(gap: f64) -> usize {
    (1.0 / gap).log2().ceil() as usize
}

/// Outcome of one filter run.
#[derive(Clone, Debug)]
pub struct FilterOutcome {
    /// Measured counting integer `k`.
    pub outcome: usize,
    /// `k / 2^t`.
    pub phase_estimate: f64,
    /// Whether `k` hit the target peak.
    pub success: bool,
    /// Post-measurement system state.
    pub output_state: PureState,
    /// Probability of the measured outcome.
    pub outcome_probability: f64,
}

/// A built phase-estimation circuit, reusable across seeds and inputs.
///
/// Counting register first (the reading comes out of the inverse QFT in
/// integer order), system register second. Counting qubit `j` (0 = most
/// significant) controls the power with exponent `t - 1 - j`. The target
/// peak is the best `t`-bit estimate of the ground eigenphase of `U(γ)`,
/// taken from exact diagonalization.
pub struct FilterCircuit {
    layout: RegisterLayout,
    counting: RegisterId,
    system: RegisterId,
    gates: Vec<Gate>,
    target_peak: usize,
    ground_phase: f64,
    ground_state: PureState,
    counting_dim: usize,
}

impl FilterCircuit {
    pub fn new(dim: HilbertDim, config: &PeConfig) -> Result<Self> {
        if config.system_qubits != dim.qubits() {
            return Err(Error::DimensionMismatch(format!(
                "config for {} system qubits used with {}",
                config.system_qubits,
                dim.qubits()
            )));
        }
        let t = config.counting_qubits;
        let layout = RegisterLayout::new(vec![("counting", t), ("system", dim.qubits())])?;
        let counting = layout.register("counting").unwrap();
        let system = layout.register("system").unwrap();

        let mut gates: Vec<Gate> = (0..t).map(|qubit| Gate::Hadamard { qubit }).collect();
        for qubit in 0..t {
            let exponent = (t - 1 - qubit) as u32;
            let (power, _) = approx_power(dim, config.gamma, exponent, config.policy);
            gates.push(Gate::ProbeCtrl {
                probe_qubit: qubit,
                inner: vec![Gate::RegisterUnitary {
                    register: system,
                    matrix: power.into_matrix(),
                }],
            });
        }
        gates.push(Gate::InverseQft { register: counting });

        let (target_peak, ground_phase, ground_state) =
            ground_peak(dim, config.gamma, t)?;

        Ok(Self {
            layout,
            counting,
            system,
            gates,
            target_peak,
            ground_phase,
            ground_state,
            counting_dim: 1 << t,
        })
    }

    /// The counting outcome the filter post-selects.
    pub fn target_peak(&self) -> usize {
        self.target_peak
    }

    /// Exact ground eigenphase of `U(γ)` in `[0, 1)`.
    pub fn ground_phase(&self) -> f64 {
        self.ground_phase
    }

    /// The `U(γ)` eigenvector the filter converges to.
    pub fn ground_state(&self) -> &PureState {
        &self.ground_state
    }

    fn final_machine(&self, input: &PureState) -> Result<MachineState> {
        let mut machine = MachineState::init(
            self.layout.clone(),
            &[
                RegisterInit::Basis(0),
                RegisterInit::State(input.clone()),
            ],
        )?;
        machine.apply_all(&self.gates)?;
        Ok(machine)
    }

    /// Exact outcome distribution of the counting register, bypassing the
    /// measurement; the most probable entry cross-checks the target peak.
    pub fn counting_distribution(&self, input: &PureState) -> Result<Vec<f64>> {
        Ok(self.final_machine(input)?.register_distribution(self.counting))
    }

    /// One seeded filter run: full circuit, projective measurement of the
    /// counting register, collapse of the system.
    pub fn run(&self, input: &PureState, seed: u64) -> Result<FilterOutcome> {
        let machine = self.final_machine(input)?;
        let (outcome, collapsed, probability) = machine.measure_register(self.counting, seed);
        let output_state = collapsed.extract_register(self.system, &[(self.counting, outcome)])?;
        Ok(FilterOutcome {
            outcome,
            phase_estimate: outcome as f64 / self.counting_dim as f64,
            success: outcome == self.target_peak,
            output_state,
            outcome_probability: probability,
        })
    }
}

/// Target peak and ground eigendata of `U(γ)`: the eigenvector of maximal
/// overlap with the Harper ground state, its eigenphase, and the nearest
/// `t`-bit integer.
fn ground_peak(dim: HilbertDim, gamma: f64, t: usize) -> Result<(usize, f64, PureState)> {
    let ground = harper_ground(dim)?;
    let u = kicked_map(dim, gamma);
    let (phases, vectors) = unitary_eigen(u.matrix())?;
    let mut best = 0;
    let mut best_overlap = -1.0;
    for i in 0..phases.len() {
        let overlap = ground
            .amplitudes()
            .dotc(&vectors.column(i).into_owned())
            .norm_sqr();
        if overlap > best_overlap {
            best_overlap = overlap;
            best = i;
        }
    }
    let phase = phases[best];
    let dim_t = 1usize << t;
    let target = (phase * dim_t as f64).round() as usize % dim_t;
    let state = PureState::renormalized(vectors.column(best).into_owned())?;
    Ok((target, phase, state))
}

/// Convenience wrapper: build the circuit and run it once.
pub fn phase_estimation_filter(
    dim: HilbertDim,
    input: &PureState,
    config: &PeConfig,
    seed: u64,
) -> Result<FilterOutcome> {
    FilterCircuit::new(dim, config)?.run(input, seed)
}

/// Raw phase estimation over an arbitrary unitary: `t` counting qubits,
/// controlled powers `base^(2^j)` built by exact squaring. Used by tests
/// to pin the exact-eigenphase contract without the kicked-map machinery.
pub fn run_phase_estimation(
    base: &CMat,
    system_qubits: usize,
    t: usize,
    input: &PureState,
    seed: u64,
) -> Result<(usize, PureState, f64)> {
    let layout = RegisterLayout::new(vec![("counting", t), ("system", system_qubits)])?;
    let counting = layout.register("counting").unwrap();
    let system = layout.register("system").unwrap();
    let mut gates: Vec<Gate> = (0..t).map(|qubit| Gate::Hadamard { qubit }).collect();
    for qubit in 0..t {
        let exponent = (t - 1 - qubit) as u32;
        gates.push(Gate::ProbeCtrl {
            probe_qubit: qubit,
            inner: vec![Gate::RegisterUnitary {
                register: system,
                matrix: mat_power(base, 1u64 << exponent),
            }],
        });
    }
    gates.push(Gate::InverseQft { register: counting });
    let mut machine = MachineState::init(
        layout,
        &[RegisterInit::Basis(0), RegisterInit::State(input.clone())],
    )?;
    machine.apply_all(&gates)?;
    let (outcome, collapsed, probability) = machine.measure_register(counting, seed);
    let state = collapsed.extract_register(system, &[(counting, outcome)])?;
    Ok((outcome, state, probability))
}

/// Smallest circular distance between the ground phase and the counting
/// grid, in grid units; small values mean the peak is sharp.
pub fn peak_misalignment(ground_phase: f64, t: usize) -> f64 {
    let dim_t = (1usize << t) as f64;
    let scaled = ground_phase * dim_t;
    phase_distance(scaled / dim_t, scaled.round().rem_euclid(dim_t) / dim_t) * dim_t
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn dim(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn budget_arithmetic_matches_hand_values() {
        let d = dim(6);
        let config = pe_config(d, 0.25, 0.005, PowerPolicy::Exact).unwrap();
        assert_eq!(config.counting_qubits, 8);
        let config = pe_config(d, 0.5, 0.005, PowerPolicy::Exact).unwrap();
        assert_eq!(config.counting_qubits, 8);
        assert!(pe_config(d, 0.0, 0.005, PowerPolicy::Exact).is_err());
        assert!(pe_config(d, 1.5, 0.005, PowerPolicy::Exact).is_err());
    }

    #[test]
    fn resolution_qubit_count() {
        assert_eq!(resolution_qubits(1.0 / 128.0), 7);
        assert_eq!(resolution_qubits(0.01), 7);
    }

    #[test]
    fn exponent_zero_agrees_across_policies() {
        let d = dim(3);
        let gamma = 0.01;
        let (exact, m1) = approx_power(d, gamma, 0, PowerPolicy::Exact);
        let (semi, m2) = approx_power(d, gamma, 0, PowerPolicy::Semiclassical);
        let (hybrid, m3) = approx_power(
            d,
            gamma,
            0,
            PowerPolicy::Hybrid {
                threshold_exponent: 2,
            },
        );
        assert_eq!(m1, PowerMode::Exact);
        assert_eq!(m2, PowerMode::Semiclassical);
        assert_eq!(m3, PowerMode::Semiclassical);
        assert!(crate::linalg::max_abs(&(exact.matrix() - semi.matrix())) < 1e-12);
        assert!(crate::linalg::max_abs(&(exact.matrix() - hybrid.matrix())) < 1e-12);
    }

    #[test]
    fn hybrid_policy_mode_flags() {
        let d = dim(6);
        let gamma = 0.1 / 64.0;
        let threshold = (d.qubits() - 4) as u32; // n - 4
        let policy = PowerPolicy::Hybrid {
            threshold_exponent: threshold,
        };
        let (at_threshold, mode) = approx_power(d, gamma, threshold, policy);
        assert_eq!(mode, PowerMode::Semiclassical);
        let (semi, _) = approx_power(d, gamma, threshold, PowerPolicy::Semiclassical);
        assert!(crate::linalg::max_abs(&(at_threshold.matrix() - semi.matrix())) < 1e-12);

        let above_exponent = (d.qubits() - 1) as u32;
        let (above, mode) = approx_power(d, gamma, above_exponent, policy);
        assert_eq!(mode, PowerMode::Product);
        // Products of the stored approximant: square of the threshold map,
        // squared again, ...
        let mut expected = semi.into_matrix();
        for _ in 0..(above_exponent - threshold) {
            expected = &expected * &expected;
        }
        assert!(crate::linalg::max_abs(&(above.matrix() - expected)) < 1e-10);
    }

    #[test]
    fn exact_eigenphase_input_measures_its_peak_with_certainty() {
        // A diagonal unitary with eigenphase exactly k0 / 2^t on |0⟩.
        let t = 4;
        let k0 = 5usize;
        let n_sys = 2;
        let size = 1 << n_sys;
        let mut base = crate::linalg::identity(size);
        base[(0, 0)] = C64::from_polar(1.0, std::f64::consts::TAU * k0 as f64 / (1 << t) as f64);
        let input = PureState::basis(size, 0);
        for seed in [0u64, 1, 99] {
            let (outcome, state, probability) =
                run_phase_estimation(&base, n_sys, t, &input, seed).unwrap();
            assert_eq!(outcome, k0);
            assert!((probability - 1.0).abs() < 1e-10);
            assert!((state.overlap(&input).norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn filter_improves_ground_overlap_on_success() {
        let d = dim(4);
        let gamma = 0.5 / d.size() as f64;
        let config = pe_config(d, 0.25, gamma, PowerPolicy::Exact).unwrap();
        let circuit = FilterCircuit::new(d, &config).unwrap();
        let (square, _) = crate::prep::square_state(d).unwrap();
        let ground = harper_ground(d).unwrap();
        let before = ground.overlap(&square).norm();
        let mut successes = 0;
        for seed in 0..40u64 {
            let out = circuit.run(&square, seed).unwrap();
            if out.success {
                successes += 1;
                let after = ground.overlap(&out.output_state).norm();
                assert!(
                    after > before,
                    "seed {seed}: overlap {after} did not beat {before}"
                );
            }
        }
        assert!(successes > 0, "no successful runs at all");
    }

    #[test]
    fn most_probable_outcome_is_the_diagonalization_target() {
        let d = dim(4);
        let gamma = 0.5 / d.size() as f64;
        let config = pe_config(d, 0.25, gamma, PowerPolicy::Exact).unwrap();
        let circuit = FilterCircuit::new(d, &config).unwrap();
        let (square, _) = crate::prep::square_state(d).unwrap();
        let distribution = circuit.counting_distribution(&square).unwrap();
        let argmax = distribution
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(argmax, circuit.target_peak());
        let total: f64 = distribution.iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}
