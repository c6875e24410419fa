//! Classical counterparts of the quantized maps: the integer cat-map step
//! on the Wigner grid and the continuous kicked-Harper step on the unit
//! torus.

use std::f64::consts::{PI, TAU};

use super::types::{CatParams, HilbertDim, PhasePoint};

/// One forward step of the classical cat map on the `2N x 2N` grid:
/// `(q', p') -> (b q' + p', (ab-1) q' + a p') mod 2N`.
pub fn cat_classical_step(dim: HilbertDim, params: CatParams, point: PhasePoint) -> PhasePoint {
    let (a, b) = (params.a, params.b);
    let q = point.q as i64;
    let p = point.p as i64;
    PhasePoint::reduced(
        dim,
        point.grid,
        b * q + p,
        (a * b - 1) * q + a * p,
    )
}

/// One step of the classical kicked Harper map on `[0,1)^2`:
/// `Q' = Q - γ sin(2πP)`, `P' = P + γ sin(2πQ')`, both mod 1.
pub fn harper_classical_step(gamma: f64, (q, p): (f64, f64)) -> (f64, f64) {
    let q_next = (q - gamma * (TAU * p).sin()).rem_euclid(1.0);
    let p_next = (p + gamma * (TAU * q_next).sin()).rem_euclid(1.0);
    (q_next, p_next)
}

/// Classical Harper energy `½(sin²(πQ) + sin²(πP))`, conserved by the map
/// in the small-step limit.
pub fn harper_classical_energy((q, p): (f64, f64)) -> f64 {
    0.5 * ((PI * q).sin().powi(2) + (PI * p).sin().powi(2))
}
