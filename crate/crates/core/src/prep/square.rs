use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CVec;
use crate::phase_space::{HilbertDim, PureState};

/// Shape of the square state: a uniform superposition over a width-`w`
/// position interval centred at the origin.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SquareStateSpec {
    pub system_qubits: usize,
    /// Support width `w = 2^⌊n/2⌋`, a power of two so the state is exactly
    /// Hadamard-preparable.
    pub width: usize,
    /// Cyclic shift `s = 1 - w/2` centring the interval on the origin.
    pub shift: i64,
}

impl SquareStateSpec {
    /// The supported positions `{s, ..., s+w-1} mod N` in increasing
    /// unshifted order.
    pub fn support(&self, dim: HilbertDim) -> Vec<usize> {
        let n = dim.size() as i64;
        (0..self.width as i64)
            .map(|j| (self.shift + j).rem_euclid(n) as usize)
            .collect()
    }
}

/// The square state: `1/√w` on the interval `[1 - w/2, w/2]` of positions,
/// zero elsewhere. Circuit form: Hadamards on the `⌊n/2⌋` least
/// significant qubits of `|0…0⟩` followed by a cyclic shift by `s`.
/// Needs at least two system qubits.
pub fn square_state(dim: HilbertDim) -> Result<(PureState, SquareStateSpec)> {
    let n = dim.qubits();
    if n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "square state needs at least 2 system qubits, got {n}"
        )));
    }
    let width = 1usize << (n / 2);
    let spec = SquareStateSpec {
        system_qubits: n,
        width,
        shift: 1 - width as i64 / 2,
    };
    let amp = C64::new(1.0 / (width as f64).sqrt(), 0.0);
    let mut amps = CVec::zeros(dim.size());
    for position in spec.support(dim) {
        amps[position] = amp;
    }
    Ok((PureState::new(amps)?, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{harper_ground, translation};

    fn dim(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn smallest_case_is_plus_state() {
        let d = dim(2);
        let (state, spec) = square_state(d).unwrap();
        assert_eq!(spec.width, 2);
        assert_eq!(spec.shift, 0);
        assert!((state.amplitudes()[0].re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((state.amplitudes()[1].re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(state.amplitudes()[2].norm() < 1e-15);
    }

    #[test]
    fn n64_support_wraps_around_origin() {
        let d = dim(6);
        let (state, spec) = square_state(d).unwrap();
        assert_eq!(spec.width, 8);
        assert_eq!(spec.shift, -3);
        let support = spec.support(d);
        assert_eq!(support, vec![61, 62, 63, 0, 1, 2, 3, 4]);
        for k in &support {
            assert!((state.amplitudes()[*k].re - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        }
        let total: f64 = state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equals_hadamard_then_shift_construction() {
        let d = dim(5);
        let (state, spec) = square_state(d).unwrap();
        // Hadamards on the low ⌊n/2⌋ qubits of |0…0⟩: uniform over 0..w.
        let mut uniform = CVec::zeros(d.size());
        for k in 0..spec.width {
            uniform[k] = C64::new(1.0 / (spec.width as f64).sqrt(), 0.0);
        }
        let prepared = translation(d, spec.shift, 0)
            .apply(&PureState::new(uniform).unwrap())
            .unwrap();
        let overlap = prepared.overlap(&state).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_with_ground_state_is_094_in_amplitude() {
        // The 0.94 figure is the amplitude |⟨Φ0|Ψ0⟩|, not its square:
        // at N = 64 the amplitude is ≈ 0.935 and the probability ≈ 0.874.
        let d = dim(6);
        let (state, _) = square_state(d).unwrap();
        let ground = harper_ground(d).unwrap();
        let amplitude = ground.overlap(&state).norm();
        let probability = amplitude * amplitude;
        assert!(
            (amplitude - 0.94).abs() < 0.02,
            "amplitude overlap {amplitude}"
        );
        assert!(
            (probability - 0.94).abs() > 0.02,
            "probability {probability} should not be the 0.94 convention"
        );
    }
}
