//! Constructors for the torus operators: cyclic shifts, reflection, the
//! discrete Fourier transform, phase-space translations, phase-point
//! operators and quantized cat maps.
//!
//! Convention: `⟨q|p⟩ = exp(i 2π p q / N) / √N`, so the momentum shift is
//! `V = FT · U · FT†` exactly, `U|p⟩ = exp(-i 2π p / N)|p⟩` and
//! `V|p⟩ = |p+1⟩`.

use num_complex::Complex64 as C64;
use std::f64::consts::TAU;

use crate::error::Result;
use crate::linalg::CMat;

use super::types::{CatParams, HilbertDim, UnitaryMatrix};

/// Cyclic position shift `U|q⟩ = |q+1 mod d⟩` in dimension `d`.
pub fn shift_matrix(d: usize) -> CMat {
    let mut m = CMat::zeros(d, d);
    for q in 0..d {
        m[((q + 1) % d, q)] = C64::new(1.0, 0.0);
    }
    m
}

/// Momentum shift `V|q⟩ = exp(i 2π q / d)|q⟩` in dimension `d`.
pub fn phase_matrix(d: usize) -> CMat {
    CMat::from_fn(d, d, |r, c| {
        if r == c {
            C64::from_polar(1.0, TAU * r as f64 / d as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Reflection `R|n⟩ = |d - n mod d⟩` in dimension `d`.
pub fn reflection_matrix(d: usize) -> CMat {
    let mut m = CMat::zeros(d, d);
    for n in 0..d {
        m[((d - n) % d, n)] = C64::new(1.0, 0.0);
    }
    m
}

pub use crate::linalg::fourier_matrix;

/// The four basic operators of the `N`-dimensional system register.
pub struct BasicOperators {
    /// Position shift `U`.
    pub shift: UnitaryMatrix,
    /// Momentum shift `V` (diagonal phase in the position basis).
    pub phase: UnitaryMatrix,
    /// Reflection `R`.
    pub reflection: UnitaryMatrix,
    /// Discrete Fourier transform.
    pub fourier: UnitaryMatrix,
}

pub fn build_basic_operators(dim: HilbertDim) -> BasicOperators {
    let n = dim.size();
    BasicOperators {
        shift: UnitaryMatrix::new(shift_matrix(n)).expect("shift is unitary"),
        phase: UnitaryMatrix::new(phase_matrix(n)).expect("phase is unitary"),
        reflection: UnitaryMatrix::new(reflection_matrix(n)).expect("reflection is unitary"),
        fourier: UnitaryMatrix::new(fourier_matrix(n)).expect("fourier is unitary"),
    }
}

/// Phase-space translation `T(q,p) = U^q V^p exp(iπ p q / N)`.
///
/// The operator powers reduce mod `N`; the scalar phase uses the given
/// integer representatives, which is what makes the `2N`-periodic grid
/// structure come out right.
pub fn translation(dim: HilbertDim, q: i64, p: i64) -> UnitaryMatrix {
    let n = dim.size();
    let qr = q.rem_euclid(n as i64) as usize;
    let phase0 = std::f64::consts::PI * (p.wrapping_mul(q)) as f64 / n as f64;
    // T|j⟩ = exp(iπpq/N) exp(i2πpj/N) |j+q⟩: one nonzero entry per column.
    let mut m = CMat::zeros(n, n);
    for j in 0..n {
        let angle = phase0 + TAU * (p as f64) * (j as f64) / n as f64;
        m[((j + qr) % n, j)] = C64::from_polar(1.0, angle);
    }
    UnitaryMatrix::new(m).expect("translation is unitary")
}

/// Phase-point operator `A(q,p) = U^q R V^{-p} exp(iπ p q / N)` for
/// `0 <= q, p < 2N`. Hermitian and unitary.
pub fn phase_point(dim: HilbertDim, q: usize, p: usize) -> Result<UnitaryMatrix> {
    let n = dim.size();
    let modulus = dim.doubled();
    if q >= modulus || p >= modulus {
        return Err(crate::error::Error::PointOutOfRange {
            q: q as i64,
            p: p as i64,
            modulus,
        });
    }
    // A|j⟩ = exp(iπpq/N) exp(-i2πpj/N) |q-j mod N⟩.
    let phase0 = std::f64::consts::PI * (p * q) as f64 / n as f64;
    let mut m = CMat::zeros(n, n);
    for j in 0..n {
        let angle = phase0 - TAU * (p * j) as f64 / n as f64;
        let row = (q as i64 - j as i64).rem_euclid(n as i64) as usize;
        m[(row, j)] = C64::from_polar(1.0, angle);
    }
    UnitaryMatrix::new(m)
}

/// Quantized cat map built from two position-diagonal quadratic kicks
/// `V_x|n⟩ = exp(-i 2π n²(1-x) / 2N)|n⟩` around a momentum-diagonal kick
/// `T_kick|k⟩ = exp(-i 2π k² / 2N)|k⟩`.
///
/// The kicks are ordered (`V_b` first, then `T_kick`, then `V_a`) so that
/// the resulting unitary transports the Wigner function exactly along the
/// classical map `(q,p) -> (b q + p, (ab-1) q + a p) mod 2N` — the matrix
/// `[[b, 1], [ab-1, a]]` of [`cat_classical_step`]. With the opposite
/// ordering the induced matrix has `a` and `b` exchanged.
///
/// [`cat_classical_step`]: super::classical::cat_classical_step
pub fn cat_map(dim: HilbertDim, params: CatParams) -> UnitaryMatrix {
    let n = dim.size();
    let two_n = dim.doubled() as f64;
    let quadratic = |coeff: i64| -> CMat {
        CMat::from_fn(n, n, |r, c| {
            if r == c {
                let angle = -TAU * ((r * r) as i64 * coeff) as f64 / two_n;
                C64::from_polar(1.0, angle)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    };
    let va = quadratic(1 - params.a);
    let vb = quadratic(1 - params.b);
    let kinetic = quadratic(1);
    let ft = fourier_matrix(n);
    let t_kick = &ft * kinetic * ft.adjoint();
    UnitaryMatrix::new(va * t_kick * vb).expect("cat map is unitary")
}
