//! Empirical bits per symbol from sampled and actually encoded symbols.

use rand::Rng;

use crate::bitio::BitString;
use crate::codes::{CodeError, CodeId};
use crate::distributions::{Distribution, Sampler};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub samples: u64,
    pub mean: f64,
    pub std_error: f64,
}

impl MonteCarlo {
    /// `[mean − z·se, mean + z·se]`.
    pub fn window(&self, z: f64) -> (f64, f64) {
        (
            self.mean - z * self.std_error,
            self.mean + z * self.std_error,
        )
    }
}

/// Draws `n` symbols from `dist`, encodes each with `code`, and reports the
/// mean codeword length with its standard error.
pub fn monte_carlo_check<R: Rng + ?Sized>(
    code: CodeId,
    dist: &dyn Distribution,
    n: u64,
    rng: &mut R,
) -> Result<MonteCarlo, CodeError> {
    assert!(n >= 2, "need at least two samples");
    let sampler = Sampler::new(dist);
    let mut buf = BitString::new();
    // Welford's running mean and sum of squared deviations
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 1..=n {
        buf.clear();
        code.encode_into(&mut buf, sampler.sample(rng))?;
        let len = buf.len() as f64;
        let delta = len - mean;
        mean += delta / k as f64;
        m2 += delta * (len - mean);
    }
    let var = m2 / (n - 1) as f64;
    Ok(MonteCarlo {
        samples: n,
        mean,
        std_error: (var / n as f64).sqrt(),
    })
}
