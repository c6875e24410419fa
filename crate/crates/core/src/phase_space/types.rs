use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_defect, hermitian_eigen, unitarity_defect, CMat, CVec};

/// Hilbert space of dimension `N = 2^n` for a register of `n` qubits.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HilbertDim {
    qubits: usize,
}

impl HilbertDim {
    /// `n` qubits, so dimension `N = 2^n`. Requires `1 <= n <= 24`.
    pub fn new(qubits: usize) -> Result<Self> {
        if qubits < 1 || qubits > 24 {
            return Err(Error::DimensionMismatch(format!(
                "qubit count {qubits} outside supported range 1..=24"
            )));
        }
        Ok(Self { qubits })
    }

    pub fn qubits(self) -> usize {
        self.qubits
    }

    /// Dimension `N`.
    pub fn size(self) -> usize {
        1 << self.qubits
    }

    /// `2N`, the side of the Wigner grid.
    pub fn doubled(self) -> usize {
        2 * self.size()
    }
}

/// Which lattice a phase point lives on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Grid {
    /// `2N x 2N` lattice of the Wigner function.
    Wigner,
    /// `N x N` lattice of the Kirkwood and Husimi functions.
    Torus,
}

impl Grid {
    pub fn modulus(self, dim: HilbertDim) -> usize {
        match self {
            Grid::Wigner => dim.doubled(),
            Grid::Torus => dim.size(),
        }
    }
}

/// An integer lattice point `(q, p)`, validated against its grid.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PhasePoint {
    pub q: usize,
    pub p: usize,
    pub grid: Grid,
}

impl PhasePoint {
    pub fn new(dim: HilbertDim, grid: Grid, q: i64, p: i64) -> Result<Self> {
        let modulus = grid.modulus(dim) as i64;
        if q < 0 || q >= modulus || p < 0 || p >= modulus {
            return Err(Error::PointOutOfRange {
                q,
                p,
                modulus: modulus as usize,
            });
        }
        Ok(Self {
            q: q as usize,
            p: p as usize,
            grid,
        })
    }

    pub fn wigner(dim: HilbertDim, q: i64, p: i64) -> Result<Self> {
        Self::new(dim, Grid::Wigner, q, p)
    }

    pub fn torus(dim: HilbertDim, q: i64, p: i64) -> Result<Self> {
        Self::new(dim, Grid::Torus, q, p)
    }

    /// Reduce arbitrary integer coordinates onto the grid.
    pub fn reduced(dim: HilbertDim, grid: Grid, q: i64, p: i64) -> Self {
        let modulus = grid.modulus(dim) as i64;
        Self {
            q: q.rem_euclid(modulus) as usize,
            p: p.rem_euclid(modulus) as usize,
            grid,
        }
    }
}

/// Unit-norm complex amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: CVec,
}

impl PureState {
    /// Validates `‖amps‖ = 1` within 1e-12.
    pub fn new(amps: CVec) -> Result<Self> {
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amps })
    }

    /// Normalize and wrap; rejects the zero vector.
    pub fn renormalized(amps: CVec) -> Result<Self> {
        let norm = amps.norm();
        if norm < 1e-300 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amps: amps / C64::new(norm, 0.0),
        })
    }

    /// Computational basis state `|k⟩` in dimension `size`.
    pub fn basis(size: usize, k: usize) -> Self {
        let mut amps = CVec::zeros(size);
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &PureState) -> C64 {
        self.amps.dotc(&other.amps)
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: CMat,
}

impl DensityOperator {
    /// Validates Hermiticity (1e-12), eigenvalues >= -1e-10 and unit trace (1e-12).
    pub fn new(matrix: CMat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > 1e-12 {
            return Err(Error::NonHermitianInput { deviation: defect });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let (values, _) = hermitian_eigen(&matrix)?;
        if let Some(&min) = values.first() {
            if min < -1e-10 {
                return Err(Error::NonPsdInput {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        let amps = state.amplitudes();
        Self {
            matrix: amps * amps.adjoint(),
        }
    }

    pub fn maximally_mixed(size: usize) -> Self {
        Self {
            matrix: CMat::identity(size, size) * C64::new(1.0 / size as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Spectral ensemble `ρ = Σ λ_i |v_i⟩⟨v_i|` with weights below 1e-14 dropped,
    /// heaviest first.
    pub fn eigen_ensemble(&self) -> Result<Vec<(f64, PureState)>> {
        let (values, vectors) = hermitian_eigen(&self.matrix)?;
        let mut ensemble = Vec::new();
        for (i, &lambda) in values.iter().enumerate() {
            if lambda < 1e-14 {
                continue;
            }
            let col = vectors.column(i).into_owned();
            ensemble.push((lambda, PureState::renormalized(col)?));
        }
        ensemble.reverse();
        Ok(ensemble)
    }
}

/// Matrix validated to be unitary within 1e-10 in the max norm.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    matrix: CMat,
}

impl UnitaryMatrix {
    pub fn new(matrix: CMat) -> Result<Self> {
        let deviation = unitarity_defect(&matrix);
        if deviation > 1e-10 {
            return Err(Error::NonUnitaryOperand { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if self.dim() != state.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary of dimension {} applied to state of dimension {}",
                self.dim(),
                state.dim()
            )));
        }
        PureState::renormalized(&self.matrix * state.amplitudes())
    }
}

/// Spectrum of a Hermitian system operator, eigenvalues ascending with the
/// matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HarperSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

impl HarperSpectrum {
    /// Gap between the two lowest levels.
    pub fn ground_gap(&self) -> f64 {
        self.eigenvalues[1] - self.eigenvalues[0]
    }

    pub fn ground_state(&self) -> Result<PureState> {
        PureState::renormalized(self.eigenvectors.column(0).into_owned())
    }
}

/// Cat map parameters `(a, b)`; the induced classical matrix
/// `[[b, 1], [ab-1, a]]` always has determinant 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CatParams {
    pub a: i64,
    pub b: i64,
}

impl CatParams {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Determinant of the classical matrix; identically 1.
    pub fn determinant(self) -> i64 {
        self.b * self.a - (self.a * self.b - 1)
    }
}

/// A line `n1 q + n2 p = n3 (mod 2N)` on the Wigner grid.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl LineSpec {
    /// Coefficients are reduced mod `2N`; `(n1, n2)` must not both vanish.
    pub fn new(dim: HilbertDim, n1: i64, n2: i64, n3: i64) -> Result<Self> {
        let m = dim.doubled() as i64;
        let n1 = n1.rem_euclid(m) as usize;
        let n2 = n2.rem_euclid(m) as usize;
        let n3 = n3.rem_euclid(m) as usize;
        if n1 == 0 && n2 == 0 {
            return Err(Error::DimensionMismatch(
                "line coefficients (n1, n2) must not both be zero".into(),
            ));
        }
        Ok(Self { n1, n2, n3 })
    }

    /// All grid points on the line, in lexicographic order.
    pub fn points(&self, dim: HilbertDim) -> Vec<PhasePoint> {
        let m = dim.doubled();
        let mut points = Vec::new();
        for q in 0..m {
            for p in 0..m {
                if (self.n1 * q + self.n2 * p) % m == self.n3 % m {
                    points.push(PhasePoint {
                        q,
                        p,
                        grid: Grid::Wigner,
                    });
                }
            }
        }
        points
    }
}
