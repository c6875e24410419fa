use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{fourier_matrix_cached, unitarity_defect, CMat};
use crate::phase_space::PureState;

use super::layout::{RegisterId, RegisterLayout};

/// Gate catalogue of the tomography circuits.
///
/// Controlled operations follow the convention
/// `(ctrl-O)|n⟩|Ψ⟩ = |n⟩ Oⁿ|Ψ⟩`: the control register's computational
/// value is the exponent applied to the target.
#[derive(Clone, Debug)]
pub enum Gate {
    Hadamard { qubit: usize },
    PhaseShift { qubit: usize, angle: f64 },
    RegisterUnitary { register: RegisterId, matrix: CMat },
    Qft { register: RegisterId },
    InverseQft { register: RegisterId },
    CtrlPower { control: RegisterId, target: RegisterId, base: CMat },
    ProbeCtrl { probe_qubit: usize, inner: Vec<Gate> },
    SwapRegisters { a: RegisterId, b: RegisterId },
    /// `|a⟩|b⟩ -> exp(i · angle_unit · a · b) |a⟩|b⟩`.
    CtrlPhaseBetween { a: RegisterId, b: RegisterId, angle_unit: f64 },
}

/// Probe polarizations after a circuit run. `shots_used == 0` marks exact
/// expectation values.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ProbeReadout {
    pub sz: f64,
    pub sy: f64,
    pub shots_used: u64,
    pub standard_error: f64,
}

impl ProbeReadout {
    pub fn exact(sz: f64, sy: f64) -> Self {
        Self {
            sz,
            sy,
            shots_used: 0,
            standard_error: 0.0,
        }
    }
}

/// Initial contents of one register.
#[derive(Clone, Debug)]
pub enum RegisterInit {
    Basis(usize),
    State(PureState),
}

/// Statevector over a register layout, unit norm.
#[derive(Clone, Debug)]
pub struct MachineState {
    layout: RegisterLayout,
    amps: Vec<C64>,
}

impl MachineState {
    /// Assemble the product state described by one `RegisterInit` per
    /// register, in layout order.
    pub fn init(layout: RegisterLayout, inits: &[RegisterInit]) -> Result<Self> {
        if inits.len() != layout.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} initializers for {} registers",
                inits.len(),
                layout.len()
            )));
        }
        let mut factors: Vec<Vec<C64>> = Vec::with_capacity(inits.len());
        for (id, init) in layout.ids().zip(inits.iter()) {
            let dim = layout.dim(id);
            match init {
                RegisterInit::Basis(k) => {
                    if *k >= dim {
                        return Err(Error::DimensionMismatch(format!(
                            "basis index {k} for register `{}` of dimension {dim}",
                            layout.name(id)
                        )));
                    }
                    let mut v = vec![C64::new(0.0, 0.0); dim];
                    v[*k] = C64::new(1.0, 0.0);
                    factors.push(v);
                }
                RegisterInit::State(state) => {
                    if state.dim() != dim {
                        return Err(Error::DimensionMismatch(format!(
                            "state of dimension {} for register `{}` of dimension {dim}",
                            state.dim(),
                            layout.name(id)
                        )));
                    }
                    factors.push(state.amplitudes().iter().copied().collect());
                }
            }
        }
        let total = layout.total_dim();
        let mut amps = vec![C64::new(1.0, 0.0); total];
        for (slot, id) in layout.ids().enumerate() {
            let stride = layout.stride(id);
            let dim = layout.dim(id);
            for (index, amp) in amps.iter_mut().enumerate() {
                let value = (index / stride) % dim;
                *amp *= factors[slot][value];
            }
        }
        Ok(Self { layout, amps })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Apply one gate. Norm is preserved within 1e-12 per application.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        self.apply_conditioned(gate, &[])
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<()> {
        for gate in gates {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Bit position (from the least significant end of a machine index)
    /// of a global qubit index.
    fn bit_of(&self, qubit: usize) -> Result<usize> {
        let total = self.layout.total_qubits();
        if qubit >= total {
            return Err(Error::DimensionMismatch(format!(
                "qubit {qubit} outside machine of {total} qubits"
            )));
        }
        Ok(total - 1 - qubit)
    }

    fn condition_mask(&self, conds: &[usize]) -> Result<usize> {
        let mut mask = 0usize;
        for &qubit in conds {
            mask |= 1 << self.bit_of(qubit)?;
        }
        Ok(mask)
    }

    fn check_conds_off_register(&self, conds: &[usize], reg: RegisterId) -> Result<()> {
        let offset = self.layout.qubit_offset(reg);
        let qubits = self.layout.qubits(reg);
        for &c in conds {
            if c >= offset && c < offset + qubits {
                return Err(Error::DimensionMismatch(format!(
                    "control qubit {c} lies inside operand register `{}`",
                    self.layout.name(reg)
                )));
            }
        }
        Ok(())
    }

    fn apply_conditioned(&mut self, gate: &Gate, conds: &[usize]) -> Result<()> {
        match gate {
            Gate::Hadamard { qubit } => self.apply_single_qubit(
                *qubit,
                conds,
                &[
                    [
                        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    ],
                    [
                        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                        C64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    ],
                ],
            ),
            Gate::PhaseShift { qubit, angle } => {
                let phase = C64::from_polar(1.0, *angle);
                self.apply_single_qubit(
                    *qubit,
                    conds,
                    &[
                        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                        [C64::new(0.0, 0.0), phase],
                    ],
                )
            }
            Gate::RegisterUnitary { register, matrix } => {
                self.apply_register_matrix(*register, matrix, conds, true)
            }
            Gate::Qft { register } => {
                let ft = fourier_matrix_cached(self.layout.dim(*register));
                self.apply_register_matrix(*register, &ft, conds, false)
            }
            Gate::InverseQft { register } => {
                let ft = fourier_matrix_cached(self.layout.dim(*register)).adjoint();
                self.apply_register_matrix(*register, &ft, conds, false)
            }
            Gate::CtrlPower {
                control,
                target,
                base,
            } => self.apply_ctrl_power(*control, *target, base, conds),
            Gate::ProbeCtrl { probe_qubit, inner } => {
                let mut extended = conds.to_vec();
                extended.push(*probe_qubit);
                for g in inner {
                    self.apply_conditioned(g, &extended)?;
                }
                Ok(())
            }
            Gate::SwapRegisters { a, b } => self.apply_swap(*a, *b, conds),
            Gate::CtrlPhaseBetween { a, b, angle_unit } => {
                self.apply_ctrl_phase(*a, *b, *angle_unit, conds)
            }
        }
    }

    fn apply_single_qubit(
        &mut self,
        qubit: usize,
        conds: &[usize],
        m: &[[C64; 2]; 2],
    ) -> Result<()> {
        if conds.contains(&qubit) {
            return Err(Error::DimensionMismatch(format!(
                "qubit {qubit} is both operand and control"
            )));
        }
        let bit = 1usize << self.bit_of(qubit)?;
        let mask = self.condition_mask(conds)?;
        for index in 0..self.amps.len() {
            if index & bit != 0 || index & mask != mask {
                continue;
            }
            let partner = index | bit;
            let a0 = self.amps[index];
            let a1 = self.amps[partner];
            self.amps[index] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[partner] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    fn apply_register_matrix(
        &mut self,
        reg: RegisterId,
        m: &CMat,
        conds: &[usize],
        validate: bool,
    ) -> Result<()> {
        let dim = self.layout.dim(reg);
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to register `{}` of dimension {dim}",
                m.nrows(),
                m.ncols(),
                self.layout.name(reg)
            )));
        }
        if validate {
            let deviation = unitarity_defect(m);
            if deviation > 1e-8 {
                return Err(Error::NonUnitaryOperand { deviation });
            }
        }
        self.check_conds_off_register(conds, reg)?;
        let mask = self.condition_mask(conds)?;
        let inner = self.layout.stride(reg);
        let outer = self.amps.len() / (dim * inner);
        let mut scratch = vec![C64::new(0.0, 0.0); dim];
        for o in 0..outer {
            for i in 0..inner {
                let base = o * dim * inner + i;
                if base & mask != mask {
                    continue;
                }
                for v in 0..dim {
                    scratch[v] = self.amps[base + v * inner];
                }
                for r in 0..dim {
                    let mut acc = C64::new(0.0, 0.0);
                    for c in 0..dim {
                        acc += m[(r, c)] * scratch[c];
                    }
                    self.amps[base + r * inner] = acc;
                }
            }
        }
        Ok(())
    }

    fn apply_ctrl_power(
        &mut self,
        control: RegisterId,
        target: RegisterId,
        base: &CMat,
        conds: &[usize],
    ) -> Result<()> {
        if control == target {
            return Err(Error::DimensionMismatch(
                "controlled power needs distinct control and target registers".into(),
            ));
        }
        let tdim = self.layout.dim(target);
        if base.nrows() != tdim || base.ncols() != tdim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} base matrix for target register `{}` of dimension {tdim}",
                base.nrows(),
                base.ncols(),
                self.layout.name(target)
            )));
        }
        let deviation = unitarity_defect(base);
        if deviation > 1e-8 {
            return Err(Error::NonUnitaryOperand { deviation });
        }
        self.check_conds_off_register(conds, target)?;
        let mask = self.condition_mask(conds)?;

        // Binary powers base^(2^j); each fiber applies the factors of its
        // control value's binary expansion.
        let bits = self.layout.qubits(control);
        let mut powers: Vec<CMat> = Vec::with_capacity(bits);
        powers.push(base.clone());
        for j in 1..bits {
            let sq = &powers[j - 1] * &powers[j - 1];
            powers.push(sq);
        }

        let inner = self.layout.stride(target);
        let outer = self.amps.len() / (tdim * inner);
        let mut scratch = vec![C64::new(0.0, 0.0); tdim];
        let mut next = vec![C64::new(0.0, 0.0); tdim];
        for o in 0..outer {
            for i in 0..inner {
                let base_index = o * tdim * inner + i;
                if base_index & mask != mask {
                    continue;
                }
                let exponent = self.layout.value_of(control, base_index);
                if exponent == 0 {
                    continue;
                }
                for v in 0..tdim {
                    scratch[v] = self.amps[base_index + v * inner];
                }
                for (j, power) in powers.iter().enumerate() {
                    if exponent & (1 << j) == 0 {
                        continue;
                    }
                    for r in 0..tdim {
                        let mut acc = C64::new(0.0, 0.0);
                        for c in 0..tdim {
                            acc += power[(r, c)] * scratch[c];
                        }
                        next[r] = acc;
                    }
                    std::mem::swap(&mut scratch, &mut next);
                }
                for v in 0..tdim {
                    self.amps[base_index + v * inner] = scratch[v];
                }
            }
        }
        Ok(())
    }

    fn apply_swap(&mut self, a: RegisterId, b: RegisterId, conds: &[usize]) -> Result<()> {
        if a == b {
            return Ok(());
        }
        let da = self.layout.dim(a);
        let db = self.layout.dim(b);
        if da != db {
            return Err(Error::DimensionMismatch(format!(
                "cannot swap registers `{}` ({da}) and `{}` ({db})",
                self.layout.name(a),
                self.layout.name(b)
            )));
        }
        self.check_conds_off_register(conds, a)?;
        self.check_conds_off_register(conds, b)?;
        let mask = self.condition_mask(conds)?;
        let sa = self.layout.stride(a);
        let sb = self.layout.stride(b);
        for index in 0..self.amps.len() {
            if index & mask != mask {
                continue;
            }
            let va = (index / sa) % da;
            let vb = (index / sb) % db;
            if va >= vb {
                continue;
            }
            let partner = index - va * sa - vb * sb + vb * sa + va * sb;
            self.amps.swap(index, partner);
        }
        Ok(())
    }

    fn apply_ctrl_phase(
        &mut self,
        a: RegisterId,
        b: RegisterId,
        angle_unit: f64,
        conds: &[usize],
    ) -> Result<()> {
        if a == b {
            return Err(Error::DimensionMismatch(
                "controlled phase needs distinct registers".into(),
            ));
        }
        let mask = self.condition_mask(conds)?;
        let sa = self.layout.stride(a);
        let da = self.layout.dim(a);
        let sb = self.layout.stride(b);
        let db = self.layout.dim(b);
        for (index, amp) in self.amps.iter_mut().enumerate() {
            if index & mask != mask {
                continue;
            }
            let va = (index / sa) % da;
            let vb = (index / sb) % db;
            *amp *= C64::from_polar(1.0, angle_unit * (va * vb) as f64);
        }
        Ok(())
    }

    /// Exact probe polarizations `⟨σz⟩` and `⟨σy⟩` by reduced-state
    /// contraction over the probe qubit. Conventions are fixed so a
    /// scattering circuit `(H, probe-ctrl-G, H)` reads
    /// `sz - i·sy = Tr[G ρ]`.
    pub fn probe_readout(&self, probe_qubit: usize) -> Result<ProbeReadout> {
        let (pz_plus, sy) = self.probe_contractions(probe_qubit)?;
        Ok(ProbeReadout::exact(2.0 * pz_plus - 1.0, sy))
    }

    /// `(P(σz = +1), ⟨σy⟩)` for the probe qubit.
    pub fn probe_contractions(&self, probe_qubit: usize) -> Result<(f64, f64)> {
        let bit = 1usize << self.bit_of(probe_qubit)?;
        let mut pz_plus = 0.0;
        let mut cross = C64::new(0.0, 0.0);
        for (index, amp) in self.amps.iter().enumerate() {
            if index & bit == 0 {
                pz_plus += amp.norm_sqr();
                cross += amp.conj() * self.amps[index | bit];
            }
        }
        Ok((pz_plus, 2.0 * cross.im))
    }

    /// Marginal outcome distribution of one register.
    pub fn register_distribution(&self, reg: RegisterId) -> Vec<f64> {
        let dim = self.layout.dim(reg);
        let stride = self.layout.stride(reg);
        let mut probs = vec![0.0; dim];
        for (index, amp) in self.amps.iter().enumerate() {
            probs[(index / stride) % dim] += amp.norm_sqr();
        }
        probs
    }

    /// Projective measurement of one register in the computational basis.
    /// Returns the sampled outcome, the collapsed renormalized state and
    /// the outcome's probability. Deterministic for a fixed seed.
    pub fn measure_register(
        &self,
        reg: RegisterId,
        seed: u64,
    ) -> (usize, MachineState, f64) {
        let probs = self.register_distribution(reg);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut outcome = probs.len() - 1;
        for (k, &p) in probs.iter().enumerate() {
            cumulative += p;
            if draw < cumulative {
                outcome = k;
                break;
            }
        }
        let probability = probs[outcome];
        let collapsed = self.collapse_register(reg, outcome, probability);
        (outcome, collapsed, probability)
    }

    fn collapse_register(&self, reg: RegisterId, outcome: usize, probability: f64) -> MachineState {
        let stride = self.layout.stride(reg);
        let dim = self.layout.dim(reg);
        let scale = C64::new(1.0 / probability.sqrt(), 0.0);
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (index, amp) in self.amps.iter().enumerate() {
            if (index / stride) % dim == outcome {
                amps[index] = amp * scale;
            }
        }
        MachineState {
            layout: self.layout.clone(),
            amps,
        }
    }

    /// Extract the pure state of register `reg`, with every other register
    /// pinned to the given basis value.
    pub fn extract_register(
        &self,
        reg: RegisterId,
        fixed: &[(RegisterId, usize)],
    ) -> Result<PureState> {
        for id in self.layout.ids() {
            if id != reg && !fixed.iter().any(|&(f, _)| f == id) {
                return Err(Error::DimensionMismatch(format!(
                    "register `{}` neither extracted nor pinned",
                    self.layout.name(id)
                )));
            }
        }
        let mut base = 0usize;
        for &(id, value) in fixed {
            base += value * self.layout.stride(id);
        }
        let stride = self.layout.stride(reg);
        let dim = self.layout.dim(reg);
        let amps = crate::linalg::CVec::from_iterator(
            dim,
            (0..dim).map(|v| self.amps[base + v * stride]),
        );
        PureState::renormalized(amps)
    }
}

/// Empirical mean and standard error of `shots` ±1 draws with
/// `P(+1) = p_plus`. Deterministic for a fixed RNG state.
pub fn sample_mean(p_plus: f64, shots: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
    assert!(shots >= 1, "need at least one shot");
    let mut plus = 0u64;
    for _ in 0..shots {
        if rng.random::<f64>() < p_plus {
            plus += 1;
        }
    }
    let mean = 2.0 * plus as f64 / shots as f64 - 1.0;
    let standard_error = if shots > 1 {
        ((1.0 - mean * mean).max(0.0) / (shots as f64 - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, standard_error)
}
