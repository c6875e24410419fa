use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CVec;
use crate::phase_space::{HilbertDim, LineSpec, PureState};

/// What phase-space domain a product program selects.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ProgramKind {
    Point { q: usize, p: usize },
    Vertical { n3: usize },
    Horizontal { n3: usize },
    Rectangle { q1: usize, q2: usize, p1: usize, p2: usize },
}

/// Product-form program for the Wigner circuit: one state per program
/// register (each of dimension `2N`) and the support count `K²`.
#[derive(Clone, Debug)]
pub struct WignerProgram {
    pub q_state: PureState,
    pub p_state: PureState,
    pub kind: ProgramKind,
    /// Number of grid points the program addresses (the normalization `K²`).
    pub support: usize,
}

fn uniform(dim: usize) -> PureState {
    let amp = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
    PureState::new(CVec::from_element(dim, amp)).expect("uniform state is normalized")
}

fn interval(dim: usize, lo: usize, hi: usize) -> PureState {
    let count = hi - lo + 1;
    let amp = C64::new(1.0 / (count as f64).sqrt(), 0.0);
    let mut v = CVec::zeros(dim);
    for k in lo..=hi {
        v[k] = amp;
    }
    PureState::new(v).expect("interval state is normalized")
}

/// Program addressing the single point `(q, p)` of the `2N x 2N` grid.
pub fn point_program(dim: HilbertDim, q: usize, p: usize) -> Result<WignerProgram> {
    let m = dim.doubled();
    if q >= m || p >= m {
        return Err(Error::PointOutOfRange {
            q: q as i64,
            p: p as i64,
            modulus: m,
        });
    }
    Ok(WignerProgram {
        q_state: PureState::basis(m, q),
        p_state: PureState::basis(m, p),
        kind: ProgramKind::Point { q, p },
        support: 1,
    })
}

/// Program addressing an axis-aligned line: vertical `(n1,n2) = (1,0)`
/// gives `|n3⟩ ⊗ uniform`, horizontal `(0,1)` gives `uniform ⊗ |n3⟩`.
/// The probe then reads the sum of `W` along the line directly, since
/// `K² = 2N` cancels the scattering normalization.
pub fn line_program(dim: HilbertDim, spec: &LineSpec) -> Result<WignerProgram> {
    let m = dim.doubled();
    if spec.n3 >= m {
        return Err(Error::PointOutOfRange {
            q: spec.n3 as i64,
            p: 0,
            modulus: m,
        });
    }
    match (spec.n1, spec.n2) {
        (1, 0) => Ok(WignerProgram {
            q_state: PureState::basis(m, spec.n3),
            p_state: uniform(m),
            kind: ProgramKind::Vertical { n3: spec.n3 },
            support: m,
        }),
        (0, 1) => Ok(WignerProgram {
            q_state: uniform(m),
            p_state: PureState::basis(m, spec.n3),
            kind: ProgramKind::Horizontal { n3: spec.n3 },
            support: m,
        }),
        (n1, n2) => Err(Error::NotAxisAligned {
            n1,
            n2,
            n3: spec.n3,
        }),
    }
}

/// Program addressing the rectangle `q1 <= q <= q2`, `p1 <= p <= p2`.
pub fn rect_program(
    dim: HilbertDim,
    q1: usize,
    q2: usize,
    p1: usize,
    p2: usize,
) -> Result<WignerProgram> {
    let m = dim.doubled();
    if q1 > q2 || p1 > p2 {
        return Err(Error::EmptyRegion { q1, q2, p1, p2 });
    }
    if q2 >= m || p2 >= m {
        return Err(Error::PointOutOfRange {
            q: q2 as i64,
            p: p2 as i64,
            modulus: m,
        });
    }
    Ok(WignerProgram {
        q_state: interval(m, q1, q2),
        p_state: interval(m, p1, p2),
        kind: ProgramKind::Rectangle { q1, q2, p1, p2 },
        support: (q2 - q1 + 1) * (p2 - p1 + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertical_program_structure() {
        let dim = HilbertDim::new(2).unwrap();
        let spec = LineSpec::new(dim, 1, 0, 2).unwrap();
        let prog = line_program(dim, &spec).unwrap();
        assert_eq!(prog.support, 8);
        assert!((prog.q_state.amplitudes()[2].re - 1.0).abs() < 1e-15);
        for p in 0..8 {
            assert!((prog.p_state.amplitudes()[p].re - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn tilted_line_is_rejected_here() {
        let dim = HilbertDim::new(2).unwrap();
        let spec = LineSpec::new(dim, 1, 1, 0).unwrap();
        assert!(matches!(
            line_program(dim, &spec),
            Err(Error::NotAxisAligned { .. })
        ));
    }

    #[test]
    fn rectangle_support_counts_points() {
        let dim = HilbertDim::new(2).unwrap();
        let prog = rect_program(dim, 1, 3, 2, 2).unwrap();
        assert_eq!(prog.support, 3);
        assert!(matches!(rect_program(dim, 3, 1, 0, 0), Err(Error::EmptyRegion { .. })));
    }
}
