//! Dense complex linear algebra helpers shared by the operator builders
//! and the spectral diagnostics.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Discrete Fourier transform `F|j⟩ = (1/√d) Σ_k exp(i 2π k j / d)|k⟩`.
pub fn fourier_matrix(d: usize) -> CMat {
    let norm = 1.0 / (d as f64).sqrt();
    CMat::from_fn(d, d, |k, j| {
        C64::from_polar(norm, std::f64::consts::TAU * (k * j) as f64 / d as f64)
    })
}

/// Memoized [`fourier_matrix`]; the simulator applies the same transform
/// sizes over and over in sweep loops.
pub fn fourier_matrix_cached(d: usize) -> CMat {
    static CACHE: OnceLock<Mutex<HashMap<usize, CMat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fourier cache poisoned");
    guard.entry(d).or_insert_with(|| fourier_matrix(d)).clone()
}

/// Largest entry magnitude of `m`.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Max-norm deviation of `m` from unitarity, `max |M†M - I|`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.ncols();
    max_abs(&(m.adjoint() * m - identity(n)))
}

/// Max-norm deviation of `m` from Hermiticity, `max |M - M†|`.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `m^k` by binary exponentiation.
pub fn mat_power(m: &CMat, k: u64) -> CMat {
    let mut result = identity(m.ncols());
    let mut base = m.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    result
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as the columns
/// of the returned matrix, in the same order as the eigenvalues.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let defect = hermiticity_defect(m);
    if defect > 1e-10 {
        return Err(Error::NonHermitianInput { deviation: defect });
    }
    let n = m.ncols();
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Fix the global phase of a vector so its largest-magnitude entry is
/// real and positive. Ties go to the first maximal entry.
pub fn fix_global_phase(v: &mut CVec) {
    let mut best = 0;
    let mut best_mag = 0.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best] / best_mag;
        let correction = phase.conj();
        for z in v.iter_mut() {
            *z *= correction;
        }
    }
}

/// Eigendecomposition of a unitary matrix into eigenphases and eigenvectors.
///
/// Phases follow the convention `M v = exp(i 2π φ) v` with `φ ∈ [0, 1)`,
/// sorted ascending. Works by simultaneous diagonalization of the commuting
/// Hermitian parts `(M + M†)/2` and `(M - M†)/2i`: the cosine part is
/// diagonalized first, then each near-degenerate cluster is split by the
/// sine part restricted to it.
pub fn unitary_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = m.ncols();
    let defect = unitarity_defect(m);
    if defect > 1e-8 {
        return Err(Error::NonUnitaryOperand { deviation: defect });
    }
    let half = C64::new(0.5, 0.0);
    let cos_part = (m + m.adjoint()) * half;
    let sin_part = (m - m.adjoint()) * C64::new(0.0, -0.5);

    let (cos_vals, mut vectors) = hermitian_eigen(&cos_part)?;

    // Split clusters of equal cosines (the ±φ pairs) with the sine part.
    let cluster_tol = 1e-9;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cos_vals[end] - cos_vals[end - 1] < cluster_tol {
            end += 1;
        }
        let width = end - start;
        if width > 1 {
            let block = vectors.columns(start, width).into_owned();
            let projected = block.adjoint() * &sin_part * &block;
            let (_, w) = hermitian_eigen(&projected)?;
            let rotated = block * w;
            for (offset, col) in rotated.column_iter().enumerate() {
                vectors.set_column(start + offset, &col);
            }
        }
        start = end;
    }

    let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        let col = vectors.column(i).into_owned();
        let lambda = col.dotc(&(m * &col));
        let mut phase = lambda.arg() / std::f64::consts::TAU;
        phase = phase.rem_euclid(1.0);
        if phase >= 1.0 {
            phase = 0.0;
        }
        let residual = max_abs_vec(&(m * &col - col * C64::from_polar(1.0, lambda.arg())));
        if residual > 1e-7 {
            return Err(Error::Eigen(format!(
                "unitary eigenpair residual {residual:.3e} at index {i}"
            )));
        }
        pairs.push((phase, i));
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let phases: Vec<f64> = pairs.iter().map(|&(phi, _)| phi).collect();
    let mut sorted = CMat::zeros(n, n);
    for (dst, &(_, src)) in pairs.iter().enumerate() {
        let mut col = vectors.column(src).into_owned();
        fix_global_phase(&mut col);
        sorted.set_column(dst, &col);
    }
    Ok((phases, sorted))
}

fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Circular distance between two phases in units of a full turn.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_eigen_sorts_ascending() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(1.0, 0.0),
            ],
        );
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
        for (i, &v) in vals.iter().enumerate() {
            let col = vecs.column(i).into_owned();
            let residual = max_abs_vec(&(&m * &col - &col * C64::new(v, 0.0)));
            assert!(residual < 1e-10);
        }
    }

    #[test]
    fn unitary_eigen_recovers_diagonal_phases() {
        let phases = [0.125, 0.125, 0.7, 0.95];
        let m = CMat::from_diagonal(&CVec::from_iterator(
            4,
            phases
                .iter()
                .map(|&p| C64::from_polar(1.0, std::f64::consts::TAU * p)),
        ));
        let (found, vecs) = unitary_eigen(&m).unwrap();
        let mut expected = phases.to_vec();
        expected.sort_by(f64::total_cmp);
        for (a, b) in found.iter().zip(expected.iter()) {
            assert!(phase_distance(*a, *b) < 1e-12);
        }
        assert!(unitarity_defect(&vecs) < 1e-10);
    }

    #[test]
    fn mat_power_matches_repeated_multiplication() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!(max_abs(&(mat_power(&m, 2) - identity(2))) < 1e-15);
        assert!(max_abs(&(mat_power(&m, 5) - &m)) < 1e-15);
    }
}
