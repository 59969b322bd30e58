use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream, PolymerRng};

/// Trials per seeded stream. Results depend on the seed and this constant
/// only, never on the thread count.
pub const CHUNK: u64 = 1 << 14;

/// A Monte Carlo proportion with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub label: String,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub target: Option<f64>,
    pub z_score: Option<f64>,
}

impl TrialReport {
    pub fn new(label: impl Into<String>, trials: u64, successes: u64, target: Option<f64>) -> Self {
        let p = if trials == 0 {
            0.0
        } else {
            successes as f64 / trials as f64
        };
        let stderr = if trials == 0 {
            0.0
        } else {
            (p * (1.0 - p) / trials as f64).sqrt()
        };
        let z_score = target.map(|t| {
            // At p = 0 or 1 the empirical error vanishes; fall back to the
            // spread implied by the target.
            let sigma = if stderr > 0.0 {
                stderr
            } else {
                (t * (1.0 - t) / trials.max(1) as f64).sqrt()
            };
            if sigma > 0.0 {
                (p - t) / sigma
            } else if p == t {
                0.0
            } else {
                f64::INFINITY
            }
        });
        Self {
            label: label.into(),
            trials,
            successes,
            estimate: p,
            stderr,
            target,
            z_score,
        }
    }

    /// Pool two reports of the same quantity.
    pub fn merge(&self, other: &TrialReport) -> Result<TrialReport> {
        if self.target != other.target {
            return Err(Error::InvalidInput(
                "cannot merge reports with different targets".into(),
            ));
        }
        Ok(TrialReport::new(
            self.label.clone(),
            self.trials + other.trials,
            self.successes + other.successes,
            self.target,
        ))
    }

    /// Within `sigmas` standard errors of the target (true when untargeted).
    pub fn passes(&self, sigmas: f64) -> bool {
        self.z_score.is_none_or(|z| z.abs() <= sigmas)
    }
}

/// Number of `trials` for which `f` returns true, run in parallel over
/// seeded streams.
pub fn count_parallel<F>(trials: u64, seed: u64, f: F) -> Result<u64>
where
    F: Fn(&mut PolymerRng) -> Result<bool> + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c);
            let len = CHUNK.min(trials - c * CHUNK);
            let mut hits = 0;
            for _ in 0..len {
                hits += u64::from(f(&mut rng)?);
            }
            Ok(hits)
        })
        .sum()
}

/// Collect `count` accepted draws of `f` (`None` means rejected), in
/// parallel over seeded streams. Also returns the number of attempts.
pub fn collect_parallel<T, F>(count: usize, seed: u64, f: F) -> Result<(Vec<T>, u64)>
where
    T: Send,
    F: Fn(&mut PolymerRng) -> Result<Option<T>> + Sync,
{
    let chunk = CHUNK as usize;
    let chunks = count.div_ceil(chunk);
    let parts: Vec<(Vec<T>, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64);
            let quota = chunk.min(count - c * chunk);
            let mut out = Vec::with_capacity(quota);
            let mut attempts = 0u64;
            while out.len() < quota {
                attempts += 1;
                if let Some(v) = f(&mut rng)? {
                    out.push(v);
                }
            }
            Ok((out, attempts))
        })
        .collect::<Result<_>>()?;
    let attempts = parts.iter().map(|p| p.1).sum();
    Ok((parts.into_iter().flat_map(|p| p.0).collect(), attempts))
}
