use crate::error::{Error, Result};
use crate::phase_space::{
    cat_classical_step, CatParams, Grid, HilbertDim, LineSpec, PhasePoint,
};

/// How a tilted line is reduced to the canonical line `q' + p' = n3`:
/// optionally exchange axes (conjugation by the Fourier transform), then
/// a cat map whose classical step carries the canonical line onto the
/// working line, point by point.
#[derive(Clone, Debug)]
pub struct LineMapping {
    /// The line as requested.
    pub original: LineSpec,
    /// The line after the optional axis exchange; this is what the cat
    /// parameters are solved for, and its `n2` is odd.
    pub working: LineSpec,
    /// Whether the system has to be rotated by `FT` before evaluation.
    pub exchanged: bool,
    pub params: CatParams,
    /// Canonical line `q' + p' = n3`.
    pub target: LineSpec,
}

fn mod_inverse_odd(x: usize, modulus: usize) -> usize {
    debug_assert!(x % 2 == 1);
    // Modulus is a power of two and x is odd, so the inverse exists;
    // the grid is small enough to find it by scanning.
    (1..modulus)
        .find(|&y| (x * y) % modulus == 1)
        .expect("odd residues are invertible mod a power of two")
}

/// Solve for the cat parameters `n2·a = 1 - n1`, `b = 1 + n2 (mod 2N)`
/// mapping the canonical line onto `spec`. When `n2` is even but `n1` is
/// odd the axes are exchanged first (`(n1, n2) -> (-n2, n1)`, with the
/// system rotated by `FT`); when both coefficients are even no such cat
/// map exists and `NoOddCoefficient` is returned.
///
/// The returned mapping is verified: every point of the canonical line
/// lands on the working line under the classical step, and since the step
/// is invertible and both lines carry exactly `2N` points, the
/// correspondence is a bijection.
pub fn solve_cat_params(dim: HilbertDim, spec: LineSpec) -> Result<LineMapping> {
    let m = dim.doubled();
    let (working, exchanged) = if spec.n2 % 2 == 1 {
        (spec, false)
    } else if spec.n1 % 2 == 1 {
        (
            LineSpec {
                n1: (m - spec.n2) % m,
                n2: spec.n1,
                n3: spec.n3,
            },
            true,
        )
    } else {
        return Err(Error::NoOddCoefficient {
            n1: spec.n1,
            n2: spec.n2,
        });
    };

    let inv = mod_inverse_odd(working.n2, m) as i64;
    let a = ((1 + m as i64 - working.n1 as i64) * inv).rem_euclid(m as i64);
    let b = ((1 + working.n2) % m) as i64;
    let params = CatParams::new(a, b);
    let target = LineSpec {
        n1: 1,
        n2: 1,
        n3: working.n3,
    };

    for q in 0..m {
        let p = (target.n3 + m - q % m) % m;
        let point = PhasePoint::reduced(dim, Grid::Wigner, q as i64, p as i64);
        let image = cat_classical_step(dim, params, point);
        let on_line = (working.n1 * image.q + working.n2 * image.p) % m == working.n3 % m;
        debug_assert!(on_line, "cat parameters failed to map the canonical line");
        if !on_line {
            return Err(Error::NoOddCoefficient {
                n1: spec.n1,
                n2: spec.n2,
            });
        }
    }

    Ok(LineMapping {
        original: spec,
        working,
        exchanged,
        params,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn canonical_line_solves_to_zero_two() {
        for n in [2usize, 3] {
            let d = dim(n);
            let spec = LineSpec::new(d, 1, 1, 3).unwrap();
            let mapping = solve_cat_params(d, spec).unwrap();
            assert_eq!(mapping.params, CatParams::new(0, 2));
            assert!(!mapping.exchanged);
        }
    }

    #[test]
    fn spec_example_three_one_at_n4() {
        let d = dim(2);
        let mapping = solve_cat_params(d, LineSpec::new(d, 3, 1, 5).unwrap()).unwrap();
        assert_eq!(mapping.params, CatParams::new(6, 2));
    }

    #[test]
    fn even_pair_is_rejected() {
        let d = dim(2);
        let spec = LineSpec::new(d, 2, 2, 1).unwrap();
        assert!(matches!(
            solve_cat_params(d, spec),
            Err(Error::NoOddCoefficient { n1: 2, n2: 2 })
        ));
    }

    #[test]
    fn axis_exchange_kicks_in_for_even_n2() {
        let d = dim(2);
        let mapping = solve_cat_params(d, LineSpec::new(d, 1, 2, 3).unwrap()).unwrap();
        assert!(mapping.exchanged);
        assert_eq!(mapping.working.n1, 6);
        assert_eq!(mapping.working.n2, 1);
        assert_eq!(mapping.working.n3, 3);
    }

    #[test]
    fn every_odd_coefficient_line_solves_at_n4() {
        let d = dim(2);
        let m = d.doubled();
        for n1 in 0..m {
            for n2 in 0..m {
                if (n1, n2) == (0, 0) {
                    continue;
                }
                for n3 in 0..m {
                    let spec = LineSpec::new(d, n1 as i64, n2 as i64, n3 as i64).unwrap();
                    let solved = solve_cat_params(d, spec);
                    if n1 % 2 == 0 && n2 % 2 == 0 {
                        assert!(solved.is_err());
                    } else {
                        assert!(solved.is_ok(), "({n1},{n2},{n3}) should solve");
                    }
                }
            }
        }
    }
}
