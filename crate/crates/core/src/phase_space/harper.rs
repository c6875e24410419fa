//! The Harper system: Hamiltonian and spectrum, the kicked-map quantization
//! of its classical flow, and the two coherent-state constructions.

use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{fix_global_phase, hermitian_eigen, CMat, CVec};

use super::operators::fourier_matrix;
use super::types::{HarperSpectrum, HilbertDim, PureState, UnitaryMatrix};

/// Harper Hamiltonian `H = 2 - (U + U†)/2 - (V + V†)/2` and its exact
/// spectrum, eigenvalues ascending. Every eigenvector's global phase is
/// fixed (largest-magnitude amplitude real positive) so downstream
/// comparisons are deterministic.
///
/// Fails with `DegenerateGround` when the two lowest levels are closer
/// than 1e-12, which would make the filtered state ill-defined.
pub fn harper_system(dim: HilbertDim) -> Result<(CMat, HarperSpectrum)> {
    let n = dim.size();
    let mut h = CMat::zeros(n, n);
    for q in 0..n {
        // -(V + V†)/2 is diagonal: -cos(2π q / N).
        h[(q, q)] = C64::new(2.0 - (TAU * q as f64 / n as f64).cos(), 0.0);
        // -(U + U†)/2 couples neighbours with -1/2.
        h[((q + 1) % n, q)] += C64::new(-0.5, 0.0);
        h[(q, (q + 1) % n)] += C64::new(-0.5, 0.0);
    }
    let (eigenvalues, mut eigenvectors) = hermitian_eigen(&h)?;
    for i in 0..n {
        let mut col = eigenvectors.column(i).into_owned();
        fix_global_phase(&mut col);
        eigenvectors.set_column(i, &col);
    }
    if n > 1 {
        let gap = eigenvalues[1] - eigenvalues[0];
        if gap < 1e-12 {
            return Err(Error::DegenerateGround { gap });
        }
    }
    Ok((
        h,
        HarperSpectrum {
            eigenvalues,
            eigenvectors,
        },
    ))
}

/// Ground state of the Harper Hamiltonian, the coherent state at the origin.
pub fn harper_ground(dim: HilbertDim) -> Result<PureState> {
    let (_, spectrum) = harper_system(dim)?;
    spectrum.ground_state()
}

/// Kicked Harper map `U(γ) = M · FT† · K · FT` with position and momentum
/// kicks `exp(-i γ N cos(2π·/N))`. Its small-γ eigenstates approach the
/// Harper eigenstates.
pub fn kicked_map(dim: HilbertDim, gamma: f64) -> UnitaryMatrix {
    let n = dim.size();
    let kick = CMat::from_fn(n, n, |r, c| {
        if r == c {
            C64::from_polar(1.0, -gamma * n as f64 * (TAU * r as f64 / n as f64).cos())
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let ft = fourier_matrix(n);
    let map = &kick * ft.adjoint() * &kick * ft;
    UnitaryMatrix::new(map).expect("kicked map is unitary")
}

/// Gaussian periodized coherent state `|q,p⟩_c` centred at the torus point
/// `(q, p)`, built from the image-sum formula and renormalized. The image
/// sum stops once an entire ring of terms falls below 1e-18 in magnitude.
pub fn continuous_coherent(dim: HilbertDim, q: usize, p: usize) -> Result<PureState> {
    let n = dim.size();
    if q >= n || p >= n {
        return Err(Error::PointOutOfRange {
            q: q as i64,
            p: p as i64,
            modulus: n,
        });
    }
    let nf = n as f64;
    let qf = q as f64;
    let pf = p as f64;
    let prefactor = (2.0 / nf).powf(0.25) * (PI / (2.0 * nf) * (qf * qf + pf * pf)).exp();
    let mut amps = CVec::zeros(n);
    let mut ring = 0i64;
    loop {
        let mut ring_max: f64 = 0.0;
        let js: &[i64] = if ring == 0 { &[0] } else { &[ring, -ring] };
        for &j in js {
            for m in 0..n {
                let x = nf * j as f64 - qf + m as f64;
                let magnitude = (-PI / nf * x * x).exp();
                ring_max = ring_max.max(magnitude);
                let angle = -TAU / nf * pf * (nf * j as f64 + qf / 2.0 - m as f64);
                amps[m] += C64::from_polar(magnitude, angle);
            }
        }
        if ring > 0 && ring_max < 1e-18 {
            break;
        }
        ring += 1;
        if ring > 64 {
            break;
        }
    }
    PureState::renormalized(amps * C64::new(prefactor, 0.0))
}
