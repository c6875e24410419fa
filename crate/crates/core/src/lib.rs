//! Phase-space tomography on the discrete torus.
//!
//! This crate builds the N-dimensional torus operators (translations,
//! reflection, Fourier transform, Harper Hamiltonian, kicked map, cat maps),
//! evaluates the discrete Wigner, Kirkwood and Husimi distributions both by
//! direct traces and by scattering circuits run on an exact multi-register
//! qubit statevector simulator, and prepares discrete coherent states by
//! phase-estimation filtering of the kicked Harper map.

pub mod error;
pub mod linalg;
pub mod phase_space;
pub mod sim;
pub mod tomography;
pub mod prep;
pub mod io;
pub mod seed;
pub mod fixtures;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
