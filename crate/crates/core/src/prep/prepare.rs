use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_space::{harper_ground, translation, HilbertDim, PureState};
use crate::seed::derive_seed;

use super::phase_estimation::{FilterCircuit, PeConfig};
use super::square::square_state;

const MAX_ATTEMPTS: usize = 1024;

/// Bookkeeping of one preparation: per-round post-selection probabilities
/// and the trajectory of the overlap `|⟨Φ0|state⟩|` (amplitude convention,
/// matching the square state's 0.94 figure).
#[derive(Clone, Debug, Serialize)]
pub struct PrepStats {
    pub rounds: usize,
    /// Total filter runs spent, including failed pipelines.
    pub attempts: usize,
    pub success_probabilities: Vec<f64>,
    pub overlaps: Vec<f64>,
    pub final_overlap: f64,
}

/// Prepare the coherent state at `(q, p)`: square state, `rounds`
/// successive filter rounds each post-selected on the target peak, then
/// the phase-space translation. A wrong peak discards the whole pipeline
/// and restarts from a fresh square state; attempts are capped, and the
/// cap surfaces as `FilterFailed`.
///
/// Deterministic for a fixed seed: attempt `i` uses `derive_seed(seed, i)`.
/// Because the translation is the last step, the `(q,p)` output equals
/// `T(q,p)` applied to the `(0,0)` output for the same seed.
pub fn prepare_coherent(
    dim: HilbertDim,
    q: i64,
    p: i64,
    config: &PeConfig,
    rounds: usize,
    seed: u64,
) -> Result<(PureState, PrepStats)> {
    if rounds == 0 {
        return Err(Error::DimensionMismatch(
            "preparation needs at least one filter round".into(),
        ));
    }
    let circuit = FilterCircuit::new(dim, config)?;
    let ground = harper_ground(dim)?;
    let (square, _) = square_state(dim)?;

    let mut attempt = 0usize;
    'pipeline: loop {
        let mut state = square.clone();
        let mut success_probabilities = Vec::with_capacity(rounds);
        let mut overlaps = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            if attempt >= MAX_ATTEMPTS {
                return Err(Error::FilterFailed { attempts: attempt });
            }
            let outcome = circuit.run(&state, derive_seed(seed, attempt as u64))?;
            attempt += 1;
            if !outcome.success {
                continue 'pipeline;
            }
            state = outcome.output_state;
            success_probabilities.push(outcome.outcome_probability);
            overlaps.push(ground.overlap(&state).norm());
        }
        let final_overlap = *overlaps.last().expect("at least one round");
        let prepared = translation(dim, q, p).apply(&state)?;
        return Ok((
            prepared,
            PrepStats {
                rounds,
                attempts: attempt,
                success_probabilities,
                overlaps,
                final_overlap,
            },
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prep::{pe_config, PowerPolicy};

    fn dim(n: usize) -> HilbertDim {
        HilbertDim::new(n).unwrap()
    }

    #[test]
    fn single_round_beats_the_square_state_overlap() {
        let d = dim(4);
        let gamma = 0.5 / d.size() as f64;
        let config = pe_config(d, 0.25, gamma, PowerPolicy::Exact).unwrap();
        let (state, stats) = prepare_coherent(d, 0, 0, &config, 1, 11).unwrap();
        let ground = harper_ground(d).unwrap();
        let (square, _) = square_state(d).unwrap();
        let baseline = ground.overlap(&square).norm();
        assert!(stats.final_overlap > baseline);
        assert!((ground.overlap(&state).norm() - stats.final_overlap).abs() < 1e-12);
    }

    #[test]
    fn overlaps_are_monotone_across_rounds() {
        let d = dim(4);
        let gamma = 0.5 / d.size() as f64;
        let config = pe_config(d, 0.25, gamma, PowerPolicy::Exact).unwrap();
        for seed in [3u64, 17, 123] {
            let (_, stats) = prepare_coherent(d, 0, 0, &config, 3, seed).unwrap();
            for pair in stats.overlaps.windows(2) {
                assert!(pair[1] >= pair[0] - 1e-12, "seed {seed}: {:?}", stats.overlaps);
            }
        }
    }

    #[test]
    fn translation_covariance_holds_bitwise() {
        let d = dim(4);
        let gamma = 0.5 / d.size() as f64;
        let config = pe_config(d, 0.25, gamma, PowerPolicy::Exact).unwrap();
        let seed = 5;
        let (origin, _) = prepare_coherent(d, 0, 0, &config, 2, seed).unwrap();
        let (moved, _) = prepare_coherent(d, 5, 9, &config, 2, seed).unwrap();
        let translated = translation(d, 5, 9).apply(&origin).unwrap();
        let distance = (moved.amplitudes() - translated.amplitudes()).norm();
        assert!(distance < 1e-12);
    }
}
