//! The Wigner scattering circuit of the programmable tomography scheme.
//!
//! Registers: a probe qubit, two program registers of dimension `2N`, and
//! the system. Conditioned on the probe, the circuit applies
//! `A(q,p) = U^q R V^{-p} e^{iπpq/N}`, with the exponents read from the
//! program registers and the quadratic phase realized as a controlled
//! phase between them (also probe-conditioned, so the idle branch picks
//! up no phase). The probe polarization then returns
//! `⟨σz⟩ = (2N/K²) Σ_domain W`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::phase_space::{
    cat_map, fourier_matrix, shift_matrix, DensityOperator, HilbertDim, LineSpec,
};
use crate::sim::{
    run_for_density, run_sampled, CircuitSpec, Gate, ProbeReadout, RegisterInit, RegisterLayout,
    SampleBases,
};

use super::lines::solve_cat_params;
use super::program::{point_program, rect_program, WignerProgram};
use super::Mode;

pub(crate) struct WignerRegisters {
    pub layout: RegisterLayout,
    pub prog_q: crate::sim::RegisterId,
    pub prog_p: crate::sim::RegisterId,
    pub system: crate::sim::RegisterId,
}

pub(crate) fn wigner_registers(dim: HilbertDim) -> WignerRegisters {
    let n = dim.qubits();
    let layout = RegisterLayout::new(vec![
        ("probe", 1),
        ("prog_q", n + 1),
        ("prog_p", n + 1),
        ("system", n),
    ])
    .expect("wigner layout is valid");
    WignerRegisters {
        prog_q: layout.register("prog_q").unwrap(),
        prog_p: layout.register("prog_p").unwrap(),
        system: layout.register("system").unwrap(),
        layout,
    }
}

/// The probe-conditioned `A(q,p)` block between the two Hadamards.
fn scattering_gates(dim: HilbertDim, regs: &WignerRegisters) -> Vec<Gate> {
    let n = dim.size();
    let shift = shift_matrix(n);
    let momentum_shift_inv = crate::phase_space::phase_matrix(n).adjoint();
    let reflection = crate::phase_space::reflection_matrix(n);
    vec![
        Gate::Hadamard { qubit: 0 },
        Gate::ProbeCtrl {
            probe_qubit: 0,
            inner: vec![
                Gate::CtrlPower {
                    control: regs.prog_p,
                    target: regs.system,
                    base: momentum_shift_inv,
                },
                Gate::RegisterUnitary {
                    register: regs.system,
                    matrix: reflection,
                },
                Gate::CtrlPower {
                    control: regs.prog_q,
                    target: regs.system,
                    base: shift,
                },
                Gate::CtrlPhaseBetween {
                    a: regs.prog_q,
                    b: regs.prog_p,
                    angle_unit: PI / n as f64,
                },
            ],
        },
        Gate::Hadamard { qubit: 0 },
    ]
}

fn readout(circuit: &CircuitSpec, rho: &DensityOperator, mode: Mode) -> Result<ProbeReadout> {
    match mode {
        Mode::Exact => run_for_density(circuit, rho),
        Mode::Sampled { shots, seed } => run_sampled(
            circuit,
            rho,
            SampleBases { z: true, y: false },
            shots,
            seed,
        ),
    }
}

/// Run a product-form program. Returns the probe readout and the sum of
/// the Wigner function over the program's domain,
/// `Σ = ⟨σz⟩ · K² / 2N`.
pub fn run_wigner_program(
    dim: HilbertDim,
    rho: &DensityOperator,
    program: &WignerProgram,
    mode: Mode,
) -> Result<(ProbeReadout, f64)> {
    let regs = wigner_registers(dim);
    let gates = scattering_gates(dim, &regs);
    let circuit = CircuitSpec {
        inits: vec![
            RegisterInit::Basis(0),
            RegisterInit::State(program.q_state.clone()),
            RegisterInit::State(program.p_state.clone()),
            RegisterInit::Basis(0),
        ],
        system: regs.system,
        probe_qubit: 0,
        gates,
        layout: regs.layout,
    };
    let out = readout(&circuit, rho, mode)?;
    let sum = out.sz * program.support as f64 / dim.doubled() as f64;
    Ok((out, sum))
}

/// Evaluate `W(q,p)` at one grid point. Returns the raw readout
/// (`⟨σz⟩ = 2N·W`) and the Wigner value `⟨σz⟩ / 2N`.
pub fn wigner_point_circuit(
    dim: HilbertDim,
    rho: &DensityOperator,
    q: usize,
    p: usize,
    mode: Mode,
) -> Result<(ProbeReadout, f64)> {
    let program = point_program(dim, q, p)?;
    run_wigner_program(dim, rho, &program, mode)
}

/// Sum of the Wigner function along an arbitrary line with an odd
/// coefficient, evaluated through cat-map transport.
///
/// The solved parameters carry the canonical line `q'+p' = n3` onto the
/// requested line under the classical step, so the system is pre-evolved
/// with the *adjoint* cat map (plus an `FT` rotation when the axes were
/// exchanged) and the canonical entangled program is prepared in-circuit:
/// uniform `|q'⟩` against `|n3 - q'⟩`, built by a QFT and a controlled
/// inverse shift between the program registers.
pub fn wigner_line_average(
    dim: HilbertDim,
    rho: &DensityOperator,
    spec: LineSpec,
    mode: Mode,
) -> Result<(ProbeReadout, f64)> {
    let mapping = solve_cat_params(dim, spec)?;
    let regs = wigner_registers(dim);
    let m = dim.doubled();

    let mut gates = Vec::new();
    if mapping.exchanged {
        gates.push(Gate::RegisterUnitary {
            register: regs.system,
            matrix: fourier_matrix(dim.size()),
        });
    }
    gates.push(Gate::RegisterUnitary {
        register: regs.system,
        matrix: cat_map(dim, mapping.params).into_matrix().adjoint(),
    });
    // Canonical-line program: |0⟩|n3⟩ -> Σ_q' |q'⟩|n3 - q'⟩ / sqrt(2N).
    gates.push(Gate::Qft {
        register: regs.prog_q,
    });
    gates.push(Gate::CtrlPower {
        control: regs.prog_q,
        target: regs.prog_p,
        base: shift_matrix(m).adjoint(),
    });
    gates.extend(scattering_gates(dim, &regs));

    let circuit = CircuitSpec {
        inits: vec![
            RegisterInit::Basis(0),
            RegisterInit::Basis(0),
            RegisterInit::Basis(mapping.target.n3),
            RegisterInit::Basis(0),
        ],
        system: regs.system,
        probe_qubit: 0,
        gates,
        layout: regs.layout,
    };
    let out = readout(&circuit, rho, mode)?;
    // K² = 2N cancels the scattering normalization: ⟨σz⟩ is the line sum.
    Ok((out, out.sz))
}

/// Sum of the Wigner function over a rectangle, optionally transported by
/// a cat map: with `params`, the evaluated domain is the forward classical
/// image of the programmed rectangle (a tilted parallelogram).
pub fn wigner_region_average(
    dim: HilbertDim,
    rho: &DensityOperator,
    rect: (usize, usize, usize, usize),
    params: Option<crate::phase_space::CatParams>,
    mode: Mode,
) -> Result<(ProbeReadout, f64)> {
    let (q1, q2, p1, p2) = rect;
    let program = rect_program(dim, q1, q2, p1, p2)?;
    match params {
        None => run_wigner_program(dim, rho, &program, mode),
        Some(cat) => {
            let regs = wigner_registers(dim);
            let mut gates = vec![Gate::RegisterUnitary {
                register: regs.system,
                matrix: cat_map(dim, cat).into_matrix().adjoint(),
            }];
            gates.extend(scattering_gates(dim, &regs));
            let circuit = CircuitSpec {
                inits: vec![
                    RegisterInit::Basis(0),
                    RegisterInit::State(program.q_state.clone()),
                    RegisterInit::State(program.p_state.clone()),
                    RegisterInit::Basis(0),
                ],
                system: regs.system,
                probe_qubit: 0,
                gates,
                layout: regs.layout,
            };
            let out = readout(&circuit, rho, mode)?;
            let sum = out.sz * program.support as f64 / dim.doubled() as f64;
            Ok((out, sum))
        }
    }
}

/// Brute-force line sum straight from the oracle; shared by tests and the
/// acceptance suite.
pub fn wigner_line_oracle(dim: HilbertDim, rho: &DensityOperator, spec: LineSpec) -> Result<f64> {
    let mut sum = 0.0;
    for pt in spec.points(dim) {
        sum += crate::phase_space::wigner_direct(dim, rho, pt)?;
    }
    Ok(sum)
}
