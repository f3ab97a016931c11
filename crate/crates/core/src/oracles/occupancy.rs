// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo check of the block gate populations under random placement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OccupancyEstimate {
    pub mean_n_b: f64,
    pub mean_n_c: f64,
    /// Sockets sampled in block B, `ceil(l^2 - 1)`.
    pub sockets_b: u64,
    /// Sockets sampled in block C, `ceil(2 l)`.
    pub sockets_c: u64,
    pub trials: u64,
}

impl OccupancyEstimate {
    /// Standard error of `mean_n_b` for occupancy `p_gates`.
    pub fn stderr_b(&self, p_gates: f64) -> f64 {
        (self.sockets_b as f64 * p_gates * (1.0 - p_gates) / self.trials as f64).sqrt()
    }

    pub fn stderr_c(&self, p_gates: f64) -> f64 {
        (self.sockets_c as f64 * p_gates * (1.0 - p_gates) / self.trials as f64).sqrt()
    }
}

/// Fills the block-B and block-C sockets independently with probability
/// `p_gates` and averages the gate counts over `trials` draws.
///
/// The generator is ChaCha8 seeded from `seed`, so results are reproducible.
/// `p_gates = 0` is accepted here for testing.
pub fn occupancy_monte_carlo(
    p_gates: f64,
    l: f64,
    trials: u64,
    seed: u64,
) -> Result<OccupancyEstimate> {
    if !(0.0..=1.0).contains(&p_gates) {
        return Err(Error::domain(
            "p_gates",
            p_gates,
            "occupancy must lie in [0, 1]",
        ));
    }
    if !(l >= 1.0 && l.is_finite()) {
        return Err(Error::domain(
            "l",
            l,
            "separation must be at least one socket length",
        ));
    }
    if trials == 0 {
        return Err(Error::domain("trials", 0.0, "need at least one trial"));
    }
    let sockets_b = (l * l - 1.0).ceil() as u64;
    let sockets_c = (2.0 * l).ceil() as u64;
    let block_b = Binomial::new(sockets_b, p_gates).expect("validated probability");
    let block_c = Binomial::new(sockets_c, p_gates).expect("validated probability");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum_b, mut sum_c) = (0u64, 0u64);
    for _ in 0..trials {
        sum_b += block_b.sample(&mut rng);
        sum_c += block_c.sample(&mut rng);
    }
    Ok(OccupancyEstimate {
        mean_n_b: sum_b as f64 / trials as f64,
        mean_n_c: sum_c as f64 / trials as f64,
        sockets_b,
        sockets_c,
        trials,
    })
}
