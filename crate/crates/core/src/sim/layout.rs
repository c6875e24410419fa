use crate::error::{Error, Result};

/// Handle to a register inside a [`RegisterLayout`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RegisterId(pub(crate) usize);

impl RegisterId {
    /// Position of the register in its layout.
    pub fn index(self) -> usize {
        self.0
    }
}

/// Ordered list of named qubit registers. The first register holds the
/// most significant bits of the machine index; within a register the first
/// qubit is its most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    regs: Vec<(String, usize)>,
}

impl RegisterLayout {
    /// Builds a layout; names must be unique, every register needs at
    /// least one qubit, and the machine is capped at 26 qubits.
    pub fn new<S: Into<String>>(regs: Vec<(S, usize)>) -> Result<Self> {
        let regs: Vec<(String, usize)> = regs.into_iter().map(|(s, n)| (s.into(), n)).collect();
        let mut total = 0usize;
        for (i, (name, qubits)) in regs.iter().enumerate() {
            if *qubits == 0 {
                return Err(Error::DimensionMismatch(format!(
                    "register `{name}` has zero qubits"
                )));
            }
            if regs[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DimensionMismatch(format!(
                    "duplicate register name `{name}`"
                )));
            }
            total += qubits;
        }
        if total == 0 || total > 26 {
            return Err(Error::DimensionMismatch(format!(
                "machine of {total} qubits outside supported range 1..=26"
            )));
        }
        Ok(Self { regs })
    }

    pub fn register(&self, name: &str) -> Option<RegisterId> {
        self.regs
            .iter()
            .position(|(other, _)| other == name)
            .map(RegisterId)
    }

    pub fn len(&self) -> usize {
        self.regs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regs.is_empty()
    }

    pub fn name(&self, id: RegisterId) -> &str {
        &self.regs[id.0].0
    }

    pub fn qubits(&self, id: RegisterId) -> usize {
        self.regs[id.0].1
    }

    /// Dimension `2^(qubits)` of one register.
    pub fn dim(&self, id: RegisterId) -> usize {
        1 << self.regs[id.0].1
    }

    pub fn total_qubits(&self) -> usize {
        self.regs.iter().map(|(_, n)| n).sum()
    }

    pub fn total_dim(&self) -> usize {
        1 << self.total_qubits()
    }

    /// Global index of the register's first (most significant) qubit.
    pub fn qubit_offset(&self, id: RegisterId) -> usize {
        self.regs[..id.0].iter().map(|(_, n)| n).sum()
    }

    /// Product of the dimensions of all registers after this one; the
    /// distance in machine indices between consecutive register values.
    pub fn stride(&self, id: RegisterId) -> usize {
        let after: usize = self.regs[id.0 + 1..].iter().map(|(_, n)| n).sum();
        1 << after
    }

    /// Value of register `id` inside a machine basis index.
    pub fn value_of(&self, id: RegisterId, index: usize) -> usize {
        (index / self.stride(id)) % self.dim(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = RegisterId> {
        (0..self.regs.len()).map(RegisterId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_arithmetic() {
        let layout =
            RegisterLayout::new(vec![("probe", 1usize), ("prog", 3), ("system", 2)]).unwrap();
        let probe = layout.register("probe").unwrap();
        let prog = layout.register("prog").unwrap();
        let system = layout.register("system").unwrap();
        assert_eq!(layout.total_qubits(), 6);
        assert_eq!(layout.total_dim(), 64);
        assert_eq!(layout.stride(probe), 32);
        assert_eq!(layout.stride(prog), 4);
        assert_eq!(layout.stride(system), 1);
        assert_eq!(layout.qubit_offset(system), 4);
        // index = probe:1, prog:5, system:2 -> 1*32 + 5*4 + 2 = 54.
        assert_eq!(layout.value_of(probe, 54), 1);
        assert_eq!(layout.value_of(prog, 54), 5);
        assert_eq!(layout.value_of(system, 54), 2);
    }

    #[test]
    fn layout_rejects_duplicates_and_oversize() {
        assert!(RegisterLayout::new(vec![("a", 1usize), ("a", 2)]).is_err());
        assert!(RegisterLayout::new(vec![("a", 27usize)]).is_err());
        assert!(RegisterLayout::new(vec![("a", 0usize)]).is_err());
    }
}
