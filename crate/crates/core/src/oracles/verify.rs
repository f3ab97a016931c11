// SPDX-License-Identifier: Apache-2.0

//! Oracle suite binding the closed forms to their independent checks.

use serde::{Deserialize, Serialize};

use super::grid::grid_pair_count;
use super::occupancy::occupancy_monte_carlo;
use super::quadrature::{density_moments, QuadratureSettings};
use crate::distribution::{socket_pair_count, wire_density};
use crate::error::Result;
use crate::estimators::exact_lavg;
use crate::params::{ChipConfiguration, LengthUnit, RentParameters};

pub const GATE_GRID: [f64; 5] = [55.0, 252.0, 576.0, 2146.0, 1e5];
pub const EXPONENT_GRID: [f64; 4] = [0.47, 0.57, 0.667, 0.75];
pub const OCCUPANCY_GRID: [f64; 3] = [0.5, 0.75, 1.0];
pub const CONVERGENCE_SIDES: [u64; 4] = [4, 10, 50, 100];

/// Rent constant and fan-out used by the density checks; both cancel or scale out.
const CHECK_K: f64 = 4.0;
const CHECK_FANOUT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn grid_points() -> impl Iterator<Item = (f64, f64, f64)> {
    GATE_GRID.into_iter().flat_map(|n| {
        EXPONENT_GRID
            .into_iter()
            .flat_map(move |p| OCCUPANCY_GRID.into_iter().map(move |pg| (n, p, pg)))
    })
}

fn bounded(name: &str, max_deviation: f64, tolerance: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        max_deviation,
        tolerance,
        passed: max_deviation < tolerance,
        detail,
    }
}

/// Largest relative gap between the exact closed form and the quadrature of
/// the density moments over the reference grid.
pub fn closed_form_vs_quadrature(settings: &QuadratureSettings) -> Result<CheckResult> {
    let mut worst = (0.0, (0.0, 0.0, 0.0));
    for (n, p, pg) in grid_points() {
        let chip = ChipConfiguration::new(n, pg)?;
        let rent = RentParameters::new(CHECK_K, p, CHECK_FANOUT)?;
        let m = density_moments(&chip, &rent, settings)?;
        let closed = exact_lavg(&chip, p, LengthUnit::SocketLengths)?.value;
        let dev = rel(m.first / m.zeroth, closed);
        if dev >= worst.0 {
            worst = (dev, (n, p, pg));
        }
    }
    let (n, p, pg) = worst.1;
    Ok(bounded(
        "closed-form vs quadrature",
        worst.0,
        1e-6,
        format!("worst at n_gates={n} p={p} p_gates={pg}"),
    ))
}

/// Total interconnect count from quadrature against `α k N (1 - N^(p-1))`.
pub fn normalization(settings: &QuadratureSettings) -> Result<CheckResult> {
    let mut worst = (0.0, (0.0, 0.0, 0.0));
    for (n, p, pg) in grid_points() {
        let chip = ChipConfiguration::new(n, pg)?;
        let rent = RentParameters::new(CHECK_K, p, CHECK_FANOUT)?;
        let total = density_moments(&chip, &rent, settings)?.zeroth;
        let expected = rent.alpha() * rent.k() * n * (1.0 - n.powf(p - 1.0));
        let dev = rel(total, expected);
        if dev >= worst.0 {
            worst = (dev, (n, p, pg));
        }
    }
    let (n, p, pg) = worst.1;
    Ok(bounded(
        "normalization identity",
        worst.0,
        1e-6,
        format!("worst at n_gates={n} p={p} p_gates={pg}"),
    ))
}

/// Every unordered pair of an `s` x `s` grid appears at exactly one distance.
pub fn pair_total() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for s in [2u64, 4, 10, 50] {
        let mut total = 0u64;
        for l in 1..=2 * (s - 1) {
            total += grid_pair_count(l, s)?;
        }
        let expected = s * s * (s * s - 1) / 2;
        worst = worst.max(total.abs_diff(expected) as f64);
    }
    Ok(CheckResult {
        name: "grid pair total".into(),
        max_deviation: worst,
        tolerance: 0.0,
        passed: worst == 0.0,
        detail: "sides 2, 4, 10, 50".into(),
    })
}

/// Largest relative gap between `M(l)` and the exact grid count over integer
/// `l` in `[1, side]`.
pub fn pair_count_deviation(side: u64) -> Result<f64> {
    let n_sockets = (side * side) as f64;
    let mut worst = 0.0f64;
    for l in 1..=side {
        let exact = grid_pair_count(l, side)? as f64;
        let formula = socket_pair_count(l as f64, n_sockets)?;
        worst = worst.max(rel(formula, exact));
    }
    Ok(worst)
}

/// The continuous pair count approaches the grid count as the grid grows.
pub fn pair_convergence() -> Result<CheckResult> {
    let devs = CONVERGENCE_SIDES
        .iter()
        .map(|&s| pair_count_deviation(s))
        .collect::<Result<Vec<_>>>()?;
    let monotone = devs.windows(2).all(|w| w[1] <= w[0]);
    Ok(CheckResult {
        name: "grid pair convergence".into(),
        max_deviation: *devs.last().unwrap(),
        tolerance: devs[0],
        passed: monotone,
        detail: format!("deviation by side {CONVERGENCE_SIDES:?}: {devs:?}"),
    })
}

/// Relative jump of `M(l)` and `i(l)` across `l = sqrt(N_soc)`.
pub fn knee_continuity() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for n in [16.0f64, 1e2, 1e4, 1e6] {
        let side = n.sqrt();
        let knee = n.powf(1.5) / 3.0;
        let lower = side.powi(3) / 3.0 - 2.0 * side * side * side + 2.0 * side * n;
        let upper = (2.0 * side - side).powi(3) / 3.0;
        worst = worst.max(rel(lower, knee)).max(rel(upper, knee));
    }
    for (n, p, pg) in grid_points() {
        let chip = ChipConfiguration::new(n, pg)?;
        let rent = RentParameters::new(CHECK_K, p, CHECK_FANOUT)?;
        let side = chip.side();
        let eps = 1e-12 * side;
        let below = wire_density(side - eps, &chip, &rent)?;
        let above = wire_density(side + eps, &chip, &rent)?;
        worst = worst.max(rel(below, above));
    }
    Ok(bounded(
        "knee continuity",
        worst,
        1e-9,
        "M(l) and i(l) across sqrt(N_soc)".into(),
    ))
}

/// Occupancy sample means against the block populations, in standard errors.
pub fn occupancy(seed: u64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for (p_gates, l) in [(0.75, 10.0), (0.5, 4.0), (0.3, 17.0)] {
        let est = occupancy_monte_carlo(p_gates, l, 200_000, seed)?;
        let z_b = (est.mean_n_b - p_gates * (l * l - 1.0)).abs() / est.stderr_b(p_gates);
        let z_c = (est.mean_n_c - 2.0 * l * p_gates).abs() / est.stderr_c(p_gates);
        worst = worst.max(z_b).max(z_c);
    }
    Ok(bounded(
        "occupancy monte carlo",
        worst,
        5.0,
        format!("max z-score, seed {seed}"),
    ))
}

pub fn run_all(seed: u64, settings: &QuadratureSettings) -> Result<VerificationReport> {
    Ok(VerificationReport {
        checks: vec![
            closed_form_vs_quadrature(settings)?,
            normalization(settings)?,
            pair_total()?,
            pair_convergence()?,
            knee_continuity()?,
            occupancy(seed)?,
        ],
    })
}
