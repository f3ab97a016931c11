// SPDX-License-Identifier: Apache-2.0

//! Gate-socket wiring distribution.
//!
//! Lengths are measured in gate-socket lengths on a `sqrt(N_soc)` by
//! `sqrt(N_soc)` array. A wire of length `l` joins a gate in block A to a gate
//! in block C; block B holds the sockets strictly closer to A than C does.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_poles, ChipConfiguration, LengthUnit, RentParameters};

/// Gate populations of the three blocks around a socket pair at separation `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockPopulation {
    pub n_a: f64,
    pub n_b: f64,
    pub n_c: f64,
    pub separation: f64,
}

fn check_span(l: f64, n_sockets: f64) -> Result<()> {
    if !(l >= 1.0) {
        return Err(Error::domain(
            "l",
            l,
            "separation must be at least one socket length",
        ));
    }
    if l > 2.0 * n_sockets.sqrt() {
        return Err(Error::domain(
            "l",
            l,
            "separation exceeds the array diameter 2*sqrt(N_soc)",
        ));
    }
    Ok(())
}

/// Number of socket pairs separated by Manhattan distance `l`, `M(l)`.
///
/// This is the continuous form; on small arrays it differs slightly from the
/// exact discrete count (see [`crate::oracles::grid_pair_count`]).
pub fn socket_pair_count(l: f64, n_sockets: f64) -> Result<f64> {
    if !(n_sockets > 0.0) {
        return Err(Error::domain(
            "n_sockets",
            n_sockets,
            "socket count must be positive",
        ));
    }
    check_span(l, n_sockets)?;
    let side = n_sockets.sqrt();
    let count = if l <= side {
        l.powi(3) / 3.0 - 2.0 * l * l * side + 2.0 * l * n_sockets
    } else {
        (2.0 * side - l).powi(3) / 3.0
    };
    Ok(count.max(0.0))
}

pub fn block_population(l: f64, chip: &ChipConfiguration) -> Result<BlockPopulation> {
    if !(l >= 1.0) {
        return Err(Error::domain(
            "l",
            l,
            "separation must be at least one socket length",
        ));
    }
    let p_gates = chip.p_gates();
    Ok(BlockPopulation {
        n_a: 1.0,
        n_b: p_gates * (l * l - 1.0),
        n_c: 2.0 * l * p_gates,
        separation: l,
    })
}

/// Average number of interconnects between a socket pair at separation `l`,
/// `I_exp(l) = P_gates * I_(A->C) / N_C`, with `I_(A->C)` from Rent's rule.
pub fn interconnect_expectation(
    l: f64,
    chip: &ChipConfiguration,
    rent: &RentParameters,
) -> Result<f64> {
    let BlockPopulation { n_a, n_b, n_c, .. } = block_population(l, chip)?;
    if n_c == 0.0 {
        return Err(Error::domain("n_c", n_c, "block C holds no gates"));
    }
    let p = rent.p();
    let bracket =
        (n_a + n_b).powf(p) - n_b.powf(p) + (n_b + n_c).powf(p) - (n_a + n_b + n_c).powf(p);
    let a_to_c = rent.alpha() * rent.k() * bracket;
    Ok(chip.p_gates() * a_to_c / n_c)
}

/// Closed-form total of `M(l) * l^(2p-4)` over the array, up to a factor of 3.
///
/// Shared between the normalization constant and the exact average-length
/// formula, where it appears as the denominator.
pub(crate) fn density_bracket(n_sockets: f64, p: f64) -> f64 {
    let side = n_sockets.sqrt();
    let poly = 1.0 + 2.0 * p - 2f64.powf(2.0 * p - 1.0);
    let poles = p * (p - 1.0) * (2.0 * p - 1.0) * (2.0 * p - 3.0);
    -n_sockets.powf(p) * poly / poles - 1.0 / (6.0 * p) + 2.0 * side / (2.0 * p - 1.0)
        - n_sockets / (p - 1.0)
}

/// Normalization constant `Γ`, chosen so that the total number of wires
/// equals `α k N_gates (1 - N_gates^(p-1))`.
pub fn normalization_gamma(chip: &ChipConfiguration, rent: &RentParameters) -> Result<f64> {
    let p = rent.p();
    check_poles(p, &[0.5, 1.0, 1.5])?;
    let n = chip.n_gates();
    let numerator = 2.0 * n * (1.0 - n.powf(p - 1.0));
    Ok(numerator / density_bracket(chip.n_sockets(), p))
}

/// Expected number of interconnects of length `l`, `i(l)`.
pub fn wire_density(l: f64, chip: &ChipConfiguration, rent: &RentParameters) -> Result<f64> {
    let gamma = normalization_gamma(chip, rent)?;
    check_span(l, chip.n_sockets())?;
    Ok(density_with_gamma(l, chip, rent, gamma))
}

/// `i(l)` with a precomputed `Γ`; `l` must already be in range.
pub(crate) fn density_with_gamma(
    l: f64,
    chip: &ChipConfiguration,
    rent: &RentParameters,
    gamma: f64,
) -> f64 {
    let n_sockets = chip.n_sockets();
    let side = n_sockets.sqrt();
    let scale = rent.alpha() * rent.k() * gamma;
    let decay = l.powf(2.0 * rent.p() - 4.0);
    if l < side {
        scale / 2.0 * (l.powi(3) / 3.0 - 2.0 * l * l * side + 2.0 * l * n_sockets) * decay
    } else {
        scale / 6.0 * (2.0 * side - l).powi(3) * decay
    }
}

pub fn convert_length(value: f64, from: LengthUnit, to: LengthUnit, p_gates: f64) -> Result<f64> {
    if !(p_gates > 0.0 && p_gates <= 1.0) {
        return Err(Error::domain(
            "p_gates",
            p_gates,
            "gate occupancy must lie in (0, 1]",
        ));
    }
    Ok(match (from, to) {
        (LengthUnit::SocketLengths, LengthUnit::GatePitches) => value * p_gates.sqrt(),
        (LengthUnit::GatePitches, LengthUnit::SocketLengths) => value / p_gates.sqrt(),
        _ => value,
    })
}
