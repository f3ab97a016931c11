// SPDX-License-Identifier: Apache-2.0

//! Adaptive Simpson quadrature of the wiring density moments.

use serde::{Deserialize, Serialize};

use crate::distribution::{density_with_gamma, normalization_gamma};
use crate::error::{Error, Result};
use crate::params::{ChipConfiguration, RentParameters};

/// Levels that are always subdivided before the error estimate is trusted.
const MIN_DEPTH: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub relative_tolerance: f64,
    /// Maximum bisection depth below each integration panel.
    pub max_subdivisions: u32,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-9,
            max_subdivisions: 60,
        }
    }
}

impl QuadratureSettings {
    pub fn new(relative_tolerance: f64, max_subdivisions: u32) -> Result<Self> {
        if !(relative_tolerance > 0.0 && relative_tolerance <= 1e-3) {
            return Err(Error::domain(
                "relative_tolerance",
                relative_tolerance,
                "must lie in (0, 1e-3]",
            ));
        }
        if max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions", 0.0, "must be positive"));
        }
        Ok(Self {
            relative_tolerance,
            max_subdivisions,
        })
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    panel: Panel,
    eps: f64,
    depth: u32,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    } = panel;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth >= MIN_DEPTH && delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= settings.max_subdivisions {
        return Err(Error::NonConvergence {
            lower: a,
            upper: b,
            tolerance: settings.relative_tolerance,
            max_depth: settings.max_subdivisions,
        });
    }
    let l = refine(
        f,
        Panel {
            a,
            b: m,
            fa,
            fm: flm,
            fb: fm,
            whole: left,
        },
        eps / 2.0,
        depth + 1,
        settings,
    )?;
    let r = refine(
        f,
        Panel {
            a: m,
            b,
            fa: fm,
            fm: frm,
            fb,
            whole: right,
        },
        eps / 2.0,
        depth + 1,
        settings,
    )?;
    Ok(l + r)
}

/// Integrates `f` over `[a, b]` to the relative tolerance in `settings`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    let scale = if whole.abs() > 0.0 { whole.abs() } else { 1.0 };
    let eps = settings.relative_tolerance * scale;
    refine(
        &f,
        Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
        },
        eps,
        0,
        settings,
    )
}

/// Zeroth and first moments of the wiring density over `[1, 2 sqrt(N_soc)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMoments {
    /// Total expected interconnect count.
    pub zeroth: f64,
    /// Total expected wire length, in socket lengths.
    pub first: f64,
}

/// Each integral is split at `sqrt(N_soc)`, where the density changes branch.
pub fn density_moments(
    chip: &ChipConfiguration,
    rent: &RentParameters,
    settings: &QuadratureSettings,
) -> Result<DensityMoments> {
    let gamma = normalization_gamma(chip, rent)?;
    let density = |l: f64| density_with_gamma(l, chip, rent, gamma);
    let knee = chip.side();
    let end = 2.0 * knee;

    let mut zeroth = 0.0;
    let mut first = 0.0;
    for (a, b) in [(1.0, knee), (knee, end)] {
        zeroth += adaptive_simpson(density, a, b, settings)?;
        first += adaptive_simpson(|l| l * density(l), a, b, settings)?;
    }
    Ok(DensityMoments { zeroth, first })
}

/// Average wire length in socket lengths, as the ratio of the density moments.
pub fn lavg_by_quadrature(
    chip: &ChipConfiguration,
    rent: &RentParameters,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let m = density_moments(chip, rent, settings)?;
    Ok(m.first / m.zeroth)
}
