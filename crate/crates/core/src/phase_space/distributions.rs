//! Direct (trace-based) evaluation of the Wigner, Kirkwood and Husimi
//! distributions. These are the oracles the programmable circuits are
//! checked against.

use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::types::{DensityOperator, Grid, HilbertDim, PhasePoint, PureState};

fn check_system(dim: HilbertDim, rho: &DensityOperator) -> Result<()> {
    if rho.dim() != dim.size() {
        return Err(Error::DimensionMismatch(format!(
            "density matrix of dimension {} but system dimension {}",
            rho.dim(),
            dim.size()
        )));
    }
    Ok(())
}

/// Discrete Wigner value `W(q,p) = Tr[A(q,p) ρ] / 2N` at a `2N x 2N` grid
/// point. The trace is real because `A` is Hermitian; its imaginary residue
/// stays below 1e-10 for valid inputs.
pub fn wigner_direct(dim: HilbertDim, rho: &DensityOperator, pt: PhasePoint) -> Result<f64> {
    check_system(dim, rho)?;
    if pt.grid != Grid::Wigner {
        return Err(Error::DimensionMismatch(
            "wigner_direct needs a Wigner-grid point".into(),
        ));
    }
    let n = dim.size();
    let (q, p) = (pt.q, pt.p);
    // A|j⟩ = exp(iπpq/N - i2πpj/N) |q-j mod N⟩, so the trace touches one
    // matrix element per column.
    let phase0 = PI * (p * q) as f64 / n as f64;
    let mut trace = C64::new(0.0, 0.0);
    let m = rho.matrix();
    for j in 0..n {
        let row = (q as i64 - j as i64).rem_euclid(n as i64) as usize;
        let a_entry = C64::from_polar(1.0, phase0 - TAU * (p * j) as f64 / n as f64);
        trace += a_entry * m[(j, row)];
    }
    debug_assert!(trace.im.abs() < 1e-10, "imaginary residue {}", trace.im);
    Ok(trace.re / dim.doubled() as f64)
}

/// Discrete Kirkwood value `K(q,p) = ⟨q|p⟩⟨p|ρ|q⟩` at an `N x N` grid
/// point, complex in general.
pub fn kirkwood_direct(dim: HilbertDim, rho: &DensityOperator, pt: PhasePoint) -> Result<C64> {
    check_system(dim, rho)?;
    if pt.grid != Grid::Torus {
        return Err(Error::DimensionMismatch(
            "kirkwood_direct needs a torus-grid point".into(),
        ));
    }
    let n = dim.size();
    let (q, p) = (pt.q, pt.p);
    let m = rho.matrix();
    // ⟨p|ρ|q⟩ = (1/√N) Σ_j exp(-i2πpj/N) ρ[j][q].
    let mut row = C64::new(0.0, 0.0);
    for j in 0..n {
        row += C64::from_polar(1.0, -TAU * (p * j) as f64 / n as f64) * m[(j, q)];
    }
    row /= (n as f64).sqrt();
    let bracket = C64::from_polar(1.0 / (n as f64).sqrt(), TAU * (p * q) as f64 / n as f64);
    Ok(bracket * row)
}

/// Husimi value `H(α) = ⟨α|ρ|α⟩ / N` against the coherent state `α`.
pub fn husimi_direct(dim: HilbertDim, rho: &DensityOperator, alpha: &PureState) -> Result<f64> {
    check_system(dim, rho)?;
    if alpha.dim() != dim.size() {
        return Err(Error::DimensionMismatch(format!(
            "coherent state of dimension {} but system dimension {}",
            alpha.dim(),
            dim.size()
        )));
    }
    let sandwich = alpha.amplitudes().dotc(&(rho.matrix() * alpha.amplitudes()));
    debug_assert!(sandwich.im.abs() < 1e-10);
    Ok(sandwich.re / dim.size() as f64)
}
