//! Deterministic pseudo-random states and unitaries for tests and demos.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{CMat, CVec};
use crate::phase_space::{DensityOperator, PureState, UnitaryMatrix};

fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

/// Haar-ish random pure state of the given dimension.
pub fn random_pure(size: usize, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: CVec = ginibre(size, 1, &mut rng).column(0).into_owned();
    PureState::renormalized(v).expect("nonzero Gaussian vector")
}

/// Random mixed state `ρ = GG† / Tr[GG†]` with `G` Ginibre of the given
/// rank (full rank when `None`).
pub fn random_density(size: usize, rank: Option<usize>, seed: u64) -> DensityOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rank.unwrap_or(size).max(1);
    let g = ginibre(size, k, &mut rng);
    let mut m = &g * g.adjoint();
    let trace = m.trace().re;
    m /= C64::new(trace, 0.0);
    // Symmetrize away the last bits of rounding noise.
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityOperator::new(m).expect("Ginibre density matrix is valid")
}

/// Haar random unitary via QR of a Ginibre matrix.
pub fn random_unitary(size: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(size, size, &mut rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix column phases so the distribution is Haar and the result is
    // independent of the QR sign convention.
    for j in 0..size {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let correction = phase.conj();
            for i in 0..size {
                q[(i, j)] *= correction;
            }
        }
    }
    UnitaryMatrix::new(q).expect("QR factor is unitary")
}
