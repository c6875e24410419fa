//! The Kirkwood scattering circuit.
//!
//! Registers: probe, two `N`-dimensional program registers holding `|q⟩`
//! and `|p⟩`, and the system. The probe-conditioned block is
//! `[FT† on system; swap(system, p-program); FT on system;
//! swap(system, q-program)]`, which makes the probe read
//! `⟨σz⟩ - i⟨σy⟩ = ⟨q|p⟩⟨p|ρ|q⟩ = K(q,p)`.
//!
//! Note the scale of the signal: typical Kirkwood values of a pure state
//! are `O(1/N)` (the grid sum is fixed at 1 over N² points), so estimating
//! a typical value from polarization measurements takes a precision — and
//! hence a shot count — growing with `N`, unlike the Wigner readout whose
//! `2N` factor is built into the circuit normalization.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::phase_space::{DensityOperator, HilbertDim};
use crate::sim::{
    run_for_density, run_sampled, CircuitSpec, Gate, ProbeReadout, RegisterInit, RegisterLayout,
    SampleBases,
};

use super::Mode;

/// Evaluate `K(q,p)` at one torus grid point. Returns the probe readout
/// and `K = ⟨σz⟩ - i⟨σy⟩`.
pub fn kirkwood_circuit(
    dim: HilbertDim,
    rho: &DensityOperator,
    q: usize,
    p: usize,
    mode: Mode,
) -> Result<(ProbeReadout, C64)> {
    let n = dim.size();
    if q >= n || p >= n {
        return Err(Error::PointOutOfRange {
            q: q as i64,
            p: p as i64,
            modulus: n,
        });
    }
    let qubits = dim.qubits();
    let layout = RegisterLayout::new(vec![
        ("probe", 1),
        ("prog_q", qubits),
        ("prog_p", qubits),
        ("system", qubits),
    ])?;
    let prog_q = layout.register("prog_q").unwrap();
    let prog_p = layout.register("prog_p").unwrap();
    let system = layout.register("system").unwrap();

    let gates = vec![
        Gate::Hadamard { qubit: 0 },
        Gate::ProbeCtrl {
            probe_qubit: 0,
            inner: vec![
                Gate::InverseQft { register: system },
                Gate::SwapRegisters {
                    a: system,
                    b: prog_p,
                },
                Gate::Qft { register: system },
                Gate::SwapRegisters {
                    a: system,
                    b: prog_q,
                },
            ],
        },
        Gate::Hadamard { qubit: 0 },
    ];

    let circuit = CircuitSpec {
        inits: vec![
            RegisterInit::Basis(0),
            RegisterInit::Basis(q),
            RegisterInit::Basis(p),
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
            run_sampled(&circuit, rho, SampleBases { z: true, y: true }, shots, seed)?
        }
    };
    Ok((out, C64::new(out.sz, -out.sy)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::phase_space::{kirkwood_direct, PhasePoint, PureState};

    fn dim(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn basis_state_reads_delta_row() {
        let d = dim(2);
        let rho = DensityOperator::from_pure(&PureState::basis(4, 1));
        for q in 0..4usize {
            for p in 0..4usize {
                let (_, k) = kirkwood_circuit(d, &rho, q, p, Mode::Exact).unwrap();
                let expected = if q == 1 { 0.25 } else { 0.0 };
                assert!((k - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn plus_state_hand_values() {
        let d = dim(1);
        let amps = crate::linalg::CVec::from_vec(vec![
            C64::new(1.0 / 2f64.sqrt(), 0.0),
            C64::new(1.0 / 2f64.sqrt(), 0.0),
        ]);
        let rho = DensityOperator::from_pure(&PureState::new(amps).unwrap());
        let (_, k00) = kirkwood_circuit(d, &rho, 0, 0, Mode::Exact).unwrap();
        let (_, k10) = kirkwood_circuit(d, &rho, 1, 0, Mode::Exact).unwrap();
        let (_, k01) = kirkwood_circuit(d, &rho, 0, 1, Mode::Exact).unwrap();
        assert!((k00 - C64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((k10 - C64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(k01.norm() < 1e-12);
    }

    #[test]
    fn matches_oracle_and_sums_to_one_on_mixed_state() {
        let d = dim(3);
        let n = d.size();
        let rho = fixtures::random_density(n, None, 313);
        let mut total = C64::new(0.0, 0.0);
        for q in 0..n {
            for p in 0..n {
                let (_, k) = kirkwood_circuit(d, &rho, q, p, Mode::Exact).unwrap();
                let oracle =
                    kirkwood_direct(d, &rho, PhasePoint::torus(d, q as i64, p as i64).unwrap())
                        .unwrap();
                assert!((k - oracle).norm() < 1e-9, "({q},{p})");
                total += k;
            }
        }
        assert!((total - C64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn typical_pure_state_values_live_at_the_one_over_n_scale() {
        let d = dim(6);
        let n = d.size();
        let psi = fixtures::random_pure(n, 616);
        let rho = DensityOperator::from_pure(&psi);
        let mut magnitudes: Vec<f64> = Vec::with_capacity(n * n);
        for q in 0..n {
            for p in 0..n {
                let k =
                    kirkwood_direct(d, &rho, PhasePoint::torus(d, q as i64, p as i64).unwrap())
                        .unwrap();
                magnitudes.push(k.norm());
            }
        }
        magnitudes.sort_by(f64::total_cmp);
        let median = magnitudes[magnitudes.len() / 2];
        let scaled = median * n as f64;
        assert!(
            (0.05..20.0).contains(&scaled),
            "median |K|·N = {scaled}, expected O(1)"
        );
    }
}
