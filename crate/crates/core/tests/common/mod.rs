//! Test-only dense density-matrix propagator: every gate is expanded to a
//! full machine-sized matrix straight from its mathematical definition,
//! the density matrix is conjugated gate by gate, and probe expectations
//! come from operator traces. Independent of the statevector simulator's
//! stride/fiber machinery.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use tomo_core::linalg::{fourier_matrix, CMat};
use tomo_core::phase_space::DensityOperator;
use tomo_core::sim::{CircuitSpec, Gate, RegisterInit, RegisterLayout};

fn basis_column(dim: usize, k: usize) -> CMat {
    let mut m = CMat::zeros(dim, 1);
    m[(k, 0)] = C64::new(1.0, 0.0);
    m
}

fn naive_power(base: &CMat, n: usize) -> CMat {
    let mut out = CMat::identity(base.nrows(), base.ncols());
    for _ in 0..n {
        out = base * out;
    }
    out
}

fn replace_register_value(layout: &RegisterLayout, index: usize, reg: usize, value: usize) -> usize {
    let id = layout.ids().nth(reg).unwrap();
    let stride = layout.stride(id);
    let dim = layout.dim(id);
    let old = (index / stride) % dim;
    index - old * stride + value * stride
}

fn register_value(layout: &RegisterLayout, index: usize, reg: usize) -> usize {
    let id = layout.ids().nth(reg).unwrap();
    (index / layout.stride(id)) % layout.dim(id)
}

fn qubit_bit(layout: &RegisterLayout, index: usize, qubit: usize) -> usize {
    (index >> (layout.total_qubits() - 1 - qubit)) & 1
}

/// Full `2^T x 2^T` matrix of one gate.
pub fn gate_full_matrix(layout: &RegisterLayout, gate: &Gate) -> CMat {
    let total = layout.total_dim();
    match gate {
        Gate::Hadamard { qubit } => {
            let mut m = CMat::zeros(total, total);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for col in 0..total {
                let bit = qubit_bit(layout, col, *qubit);
                let flipped = col ^ (1 << (layout.total_qubits() - 1 - qubit));
                if bit == 0 {
                    m[(col, col)] += C64::new(s, 0.0);
                    m[(flipped, col)] += C64::new(s, 0.0);
                } else {
                    m[(flipped, col)] += C64::new(s, 0.0);
                    m[(col, col)] += C64::new(-s, 0.0);
                }
            }
            m
        }
        Gate::PhaseShift { qubit, angle } => {
            let mut m = CMat::zeros(total, total);
            for col in 0..total {
                let phase = if qubit_bit(layout, col, *qubit) == 1 {
                    C64::from_polar(1.0, *angle)
                } else {
                    C64::new(1.0, 0.0)
                };
                m[(col, col)] = phase;
            }
            m
        }
        Gate::RegisterUnitary { register, matrix } => {
            register_matrix_full(layout, register.index(), matrix)
        }
        Gate::Qft { register } => {
            let ft = fourier_matrix(layout.dim(*register));
            register_matrix_full(layout, register.index(), &ft)
        }
        Gate::InverseQft { register } => {
            let ft = fourier_matrix(layout.dim(*register)).adjoint();
            register_matrix_full(layout, register.index(), &ft)
        }
        Gate::CtrlPower {
            control,
            target,
            base,
        } => {
            let mut m = CMat::zeros(total, total);
            let tdim = layout.dim(*target);
            for col in 0..total {
                let n = register_value(layout, col, control.index());
                let v = register_value(layout, col, target.index());
                let powered = naive_power(base, n);
                for r in 0..tdim {
                    let row = replace_register_value(layout, col, target.index(), r);
                    m[(row, col)] += powered[(r, v)];
                }
            }
            m
        }
        Gate::ProbeCtrl { probe_qubit, inner } => {
            let mut product = CMat::identity(total, total);
            for g in inner {
                product = gate_full_matrix(layout, g) * product;
            }
            let mut d0 = CMat::zeros(total, total);
            let mut d1 = CMat::zeros(total, total);
            for col in 0..total {
                if qubit_bit(layout, col, *probe_qubit) == 0 {
                    d0[(col, col)] = C64::new(1.0, 0.0);
                } else {
                    d1[(col, col)] = C64::new(1.0, 0.0);
                }
            }
            d0 + product * d1
        }
        Gate::SwapRegisters { a, b } => {
            let mut m = CMat::zeros(total, total);
            for col in 0..total {
                let va = register_value(layout, col, a.index());
                let vb = register_value(layout, col, b.index());
                let row = replace_register_value(
                    layout,
                    replace_register_value(layout, col, a.index(), vb),
                    b.index(),
                    va,
                );
                m[(row, col)] = C64::new(1.0, 0.0);
            }
            m
        }
        Gate::CtrlPhaseBetween { a, b, angle_unit } => {
            let mut m = CMat::zeros(total, total);
            for col in 0..total {
                let va = register_value(layout, col, a.index());
                let vb = register_value(layout, col, b.index());
                m[(col, col)] = C64::from_polar(1.0, angle_unit * (va * vb) as f64);
            }
            m
        }
    }
}

fn register_matrix_full(layout: &RegisterLayout, reg: usize, matrix: &CMat) -> CMat {
    let total = layout.total_dim();
    let dim = matrix.nrows();
    let mut m = CMat::zeros(total, total);
    for col in 0..total {
        let v = register_value(layout, col, reg);
        for r in 0..dim {
            let row = replace_register_value(layout, col, reg, r);
            m[(row, col)] += matrix[(r, v)];
        }
    }
    m
}

/// Propagate the full density matrix of the machine through the circuit
/// and return the probe's `(⟨σz⟩, ⟨σy⟩)`.
pub fn density_oracle_readout(circuit: &CircuitSpec, rho: &DensityOperator) -> (f64, f64) {
    let layout = &circuit.layout;
    let mut total_rho: CMat = DMatrix::identity(1, 1).map(|_: f64| C64::new(1.0, 0.0));
    for (slot, id) in layout.ids().enumerate() {
        let factor: CMat = if slot == circuit.system.index() {
            rho.matrix().clone()
        } else {
            match &circuit.inits[slot] {
                RegisterInit::Basis(k) => {
                    let col = basis_column(layout.dim(id), *k);
                    &col * col.adjoint()
                }
                RegisterInit::State(s) => {
                    let col = s.amplitudes();
                    col * col.adjoint()
                }
            }
        };
        total_rho = total_rho.kronecker(&factor);
    }
    for gate in &circuit.gates {
        let g = gate_full_matrix(layout, gate);
        total_rho = &g * total_rho * g.adjoint();
    }
    let total = layout.total_dim();
    let mut sz = C64::new(0.0, 0.0);
    let mut sy = C64::new(0.0, 0.0);
    for i in 0..total {
        let bit = qubit_bit(layout, i, circuit.probe_qubit);
        let sign = if bit == 0 { 1.0 } else { -1.0 };
        sz += C64::new(sign, 0.0) * total_rho[(i, i)];
        // σy = [[0, -i], [i, 0]] at the probe: ⟨σy⟩ picks the
        // probe-flipped matrix elements.
        let partner = i ^ (1 << (layout.total_qubits() - 1 - circuit.probe_qubit));
        let factor = if bit == 0 {
            C64::new(0.0, -1.0)
        } else {
            C64::new(0.0, 1.0)
        };
        sy += factor * total_rho[(partner, i)];
    }
    (sz.re, sy.re)
}
