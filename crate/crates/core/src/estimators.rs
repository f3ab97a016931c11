// SPDX-License-Identifier: Apache-2.0

//! Closed-form average wire-length estimators.
//!
//! The exact family evaluates the first-moment/zeroth-moment ratio of the
//! socket wiring density in closed form. The approximate family keeps only the
//! leading `N^(p-0.5)` term, which is why it requires `p > 0.5`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{convert_length, density_bracket};
use crate::error::{Error, Result};
use crate::params::{check_poles, ChipConfiguration, LengthUnit, RentParameters};

/// Rent exponent below which the approximate models are flagged as unreliable.
pub const RENT_THRESHOLD: f64 = 0.65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    DavisExact,
    SekarExact,
    ModifiedDavisExact,
    ModifiedSekarExact,
    DavisApprox,
    SekarApprox,
    ModifiedDavisApprox,
    ModifiedSekarApprox,
}

impl ModelId {
    pub const ALL: [ModelId; 8] = [
        ModelId::DavisExact,
        ModelId::SekarExact,
        ModelId::ModifiedDavisExact,
        ModelId::ModifiedSekarExact,
        ModelId::DavisApprox,
        ModelId::SekarApprox,
        ModelId::ModifiedDavisApprox,
        ModelId::ModifiedSekarApprox,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            ModelId::DavisExact => "davis-exact",
            ModelId::SekarExact => "sekar-exact",
            ModelId::ModifiedDavisExact => "modified-davis-exact",
            ModelId::ModifiedSekarExact => "modified-sekar-exact",
            ModelId::DavisApprox => "davis-approx",
            ModelId::SekarApprox => "sekar-approx",
            ModelId::ModifiedDavisApprox => "modified-davis-approx",
            ModelId::ModifiedSekarApprox => "modified-sekar-approx",
        }
    }

    pub fn is_approximate(self) -> bool {
        matches!(
            self,
            ModelId::DavisApprox
                | ModelId::SekarApprox
                | ModelId::ModifiedDavisApprox
                | ModelId::ModifiedSekarApprox
        )
    }

    /// Whether the estimate depends on the gate occupancy `P_gates`.
    pub fn uses_p_gates(self) -> bool {
        !matches!(self, ModelId::DavisExact | ModelId::DavisApprox)
    }

    /// Evaluates this model. Only `rent.p()` enters any of the closed forms.
    pub fn evaluate(
        self,
        chip: &ChipConfiguration,
        rent: &RentParameters,
        unit: LengthUnit,
    ) -> Result<EstimateResult> {
        estimate(self, chip, rent.p(), unit)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.slug() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ModelId::ALL.iter().map(|m| m.slug()).collect();
                format!("unknown model `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// An approximate model was evaluated below [`RENT_THRESHOLD`].
    BelowRentThreshold { p: f64, threshold: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::BelowRentThreshold { p, threshold } => write!(
                f,
                "rent exponent {p} is below the {threshold} threshold for approximate models"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub value: f64,
    pub unit: LengthUnit,
    pub model: ModelId,
    pub warnings: Vec<Warning>,
}

/// Exact average length on a square array of `n` sites, in site spacings.
fn exact_ratio(n: f64, p: f64) -> f64 {
    let side = n.sqrt();
    let h = p - 0.5;
    let first_moment = h / p - side - h / (6.0 * (p + 0.5) * side)
        + n.powf(p) * (-p - 1.0 + 4f64.powf(h)) / (2.0 * p * (p + 0.5) * (p - 1.0));
    side / h * first_moment / density_bracket(n, p)
}

fn check_exact_exponent(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", p, "Rent exponent must lie in (0, 1)"));
    }
    check_poles(p, &[0.5, 1.0, 1.5])
}

fn check_approx_exponent(p: f64) -> Result<()> {
    if !(p > 0.5 && p < 1.0) {
        return Err(Error::InvalidExponent { p });
    }
    check_poles(p, &[0.5])
}

/// Divisor applied by the modified exact models.
fn occupancy_divisor(p_gates: f64) -> f64 {
    (2.0 * p_gates).powf(0.25)
}

fn in_unit(pitches: f64, unit: LengthUnit, p_gates: f64) -> Result<f64> {
    convert_length(pitches, LengthUnit::GatePitches, unit, p_gates)
}

/// Exact average wire length with the socket array sized by `N_gates / P_gates`.
///
/// At `P_gates = 1` this is the Davis distribution result.
pub fn exact_lavg(chip: &ChipConfiguration, p: f64, unit: LengthUnit) -> Result<EstimateResult> {
    check_exact_exponent(p)?;
    let sockets = exact_ratio(chip.n_sockets(), p);
    Ok(EstimateResult {
        value: convert_length(sockets, LengthUnit::SocketLengths, unit, chip.p_gates())?,
        unit,
        model: ModelId::SekarExact,
        warnings: Vec::new(),
    })
}

pub fn modified_exact_lavg(
    chip: &ChipConfiguration,
    p: f64,
    model: ModelId,
    unit: LengthUnit,
) -> Result<EstimateResult> {
    check_exact_exponent(p)?;
    let p_gates = chip.p_gates();
    let value = match model {
        ModelId::ModifiedSekarExact => {
            let sockets = exact_ratio(chip.n_sockets(), p) / occupancy_divisor(p_gates);
            convert_length(sockets, LengthUnit::SocketLengths, unit, p_gates)?
        }
        ModelId::ModifiedDavisExact => {
            let pitches = exact_ratio(chip.n_gates(), p) / occupancy_divisor(p_gates);
            in_unit(pitches, unit, p_gates)?
        }
        other => {
            return Err(Error::WrongModel {
                model: other.slug(),
                expected: "a modified exact model",
            })
        }
    };
    Ok(EstimateResult {
        value,
        unit,
        model,
        warnings: Vec::new(),
    })
}

pub fn approx_lavg(
    chip: &ChipConfiguration,
    p: f64,
    model: ModelId,
    unit: LengthUnit,
) -> Result<EstimateResult> {
    check_approx_exponent(p)?;
    let p_gates = chip.p_gates();
    let h = p - 0.5;
    let leading = chip.n_gates().powf(h) * (p + 1.0 - 4f64.powf(h)) / (2.0 * p * h * (p + 0.5));
    let pitches = match model {
        ModelId::DavisApprox => leading,
        ModelId::SekarApprox => p_gates.powf(1.0 - p) * leading,
        ModelId::ModifiedDavisApprox => leading / (2.0 * p_gates).sqrt(),
        ModelId::ModifiedSekarApprox => p_gates.powf(0.5 - p) * leading / std::f64::consts::SQRT_2,
        other => {
            return Err(Error::WrongModel {
                model: other.slug(),
                expected: "an approximate model",
            })
        }
    };
    let mut warnings = Vec::new();
    if p < RENT_THRESHOLD {
        warnings.push(Warning::BelowRentThreshold {
            p,
            threshold: RENT_THRESHOLD,
        });
    }
    Ok(EstimateResult {
        value: in_unit(pitches, unit, p_gates)?,
        unit,
        model,
        warnings,
    })
}

/// Evaluates any of the eight models.
pub fn estimate(
    model: ModelId,
    chip: &ChipConfiguration,
    p: f64,
    unit: LengthUnit,
) -> Result<EstimateResult> {
    match model {
        ModelId::DavisExact => {
            let full = ChipConfiguration::fully_occupied(chip.n_gates())?;
            let mut result = exact_lavg(&full, p, LengthUnit::GatePitches)?;
            result.value = in_unit(result.value, unit, chip.p_gates())?;
            result.unit = unit;
            result.model = model;
            Ok(result)
        }
        ModelId::SekarExact => exact_lavg(chip, p, unit),
        ModelId::ModifiedDavisExact | ModelId::ModifiedSekarExact => {
            modified_exact_lavg(chip, p, model, unit)
        }
        _ => approx_lavg(chip, p, model, unit),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub end: f64,
}

impl SweepRange {
    pub fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn fixed(value: f64) -> Self {
        Self::new(value, value)
    }

    fn at(&self, t: f64) -> f64 {
        if t >= 1.0 {
            self.end
        } else {
            self.start + t * (self.end - self.start)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n_gates: f64,
    pub p: f64,
    /// `None` marks a gap where the model is undefined.
    pub lavg: Option<f64>,
    pub error: Option<String>,
}

/// Samples `steps` evenly spaced points along the segment from
/// `(gates.start, rent_p.start)` to `(gates.end, rent_p.end)`.
///
/// Hold one range fixed to trace `L_avg` against the other. Points where the
/// model is undefined are kept as gaps.
pub fn sweep(
    gates: SweepRange,
    rent_p: SweepRange,
    model: ModelId,
    p_gates: f64,
    unit: LengthUnit,
    steps: usize,
) -> Result<Vec<SweepPoint>> {
    if steps < 2 {
        return Err(Error::domain(
            "steps",
            steps as f64,
            "a sweep needs at least two steps",
        ));
    }
    if !(p_gates > 0.0 && p_gates <= 1.0) {
        return Err(Error::domain(
            "p_gates",
            p_gates,
            "gate occupancy must lie in (0, 1]",
        ));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / last;
            let n_gates = gates.at(t);
            let p = rent_p.at(t);
            let outcome = ChipConfiguration::new(n_gates, p_gates)
                .and_then(|chip| estimate(model, &chip, p, unit));
            match outcome {
                Ok(est) => SweepPoint {
                    n_gates,
                    p,
                    lavg: Some(est.value),
                    error: None,
                },
                Err(err) => SweepPoint {
                    n_gates,
                    p,
                    lavg: None,
                    error: Some(err.to_string()),
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PITCHES: LengthUnit = LengthUnit::GatePitches;

    fn chip(n: f64, pg: f64) -> ChipConfiguration {
        ChipConfiguration::new(n, pg).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn exact_matches_printed_values() {
        let v = exact_lavg(&chip(2146.0, 1.0), 0.75, PITCHES).unwrap().value;
        assert!(rel(v, 5.26) < 1e-3, "{v}");
        let v = exact_lavg(&chip(2146.0, 0.75), 0.75, PITCHES)
            .unwrap()
            .value;
        assert!(rel(v, 4.8713) < 1e-4, "{v}");
        let v = exact_lavg(&chip(55.0, 1.0), 0.583, PITCHES).unwrap().value;
        assert!(rel(v, 2.119) < 1e-4, "{v}");
    }

    #[test]
    fn exact_in_sockets() {
        let v = exact_lavg(&chip(2146.0, 0.75), 0.75, LengthUnit::SocketLengths)
            .unwrap()
            .value;
        // 40-digit evaluation at N_soc = 2861.33...
        assert!(rel(v, 5.624_914_692_430_647) < 1e-12, "{v}");
    }

    #[test]
    fn exact_accepts_low_exponent_but_not_the_pole() {
        assert!(exact_lavg(&chip(1239.0, 1.0), 0.47, PITCHES).is_ok());
        assert!(matches!(
            exact_lavg(&chip(1239.0, 1.0), 0.5, PITCHES),
            Err(Error::Singularity { .. })
        ));
        assert!(exact_lavg(&chip(1239.0, 1.0), 1.2, PITCHES).is_err());
    }

    #[test]
    fn modified_exact_values() {
        let v = modified_exact_lavg(
            &chip(2146.0, 0.75),
            0.75,
            ModelId::ModifiedSekarExact,
            PITCHES,
        )
        .unwrap()
        .value;
        assert!(rel(v, 4.4017) < 1e-4, "{v}");
        let v = modified_exact_lavg(
            &chip(2146.0, 1.0),
            0.75,
            ModelId::ModifiedDavisExact,
            PITCHES,
        )
        .unwrap()
        .value;
        assert!(rel(v, 4.423142) < 1e-3, "{v}");
        assert!(
            modified_exact_lavg(&chip(2146.0, 1.0), 0.75, ModelId::DavisExact, PITCHES).is_err()
        );
    }

    #[test]
    fn modified_sekar_exact_coincides_at_half_occupancy() {
        let c = chip(576.0, 0.5);
        let a = exact_lavg(&c, 0.667, PITCHES).unwrap().value;
        let b = modified_exact_lavg(&c, 0.667, ModelId::ModifiedSekarExact, PITCHES)
            .unwrap()
            .value;
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn approx_values() {
        let at = |n: f64, pg: f64, m: ModelId| {
            approx_lavg(&chip(n, pg), 0.75, m, PITCHES).unwrap().value
        };
        assert!(rel(at(2146.0, 1.0, ModelId::DavisApprox), 4.8756) < 1e-4);
        assert!(rel(at(2146.0, 0.5, ModelId::SekarApprox), 4.0999) < 1e-4);
        assert!(rel(at(2146.0, 0.75, ModelId::SekarApprox), 4.5373) < 1e-4);
        assert!(rel(at(2146.0, 1.0, ModelId::ModifiedDavisApprox), 3.447603) < 1e-4);
        assert!(rel(at(2146.0, 0.75, ModelId::ModifiedSekarApprox), 3.70221) < 1e-3);
    }

    #[test]
    fn approx_rejects_low_exponent() {
        for m in ModelId::ALL.into_iter().filter(|m| m.is_approximate()) {
            assert_eq!(
                approx_lavg(&chip(1239.0, 1.0), 0.47, m, PITCHES),
                Err(Error::InvalidExponent { p: 0.47 })
            );
            assert!(approx_lavg(&chip(1239.0, 1.0), 0.5, m, PITCHES).is_err());
        }
    }

    #[test]
    fn threshold_warning_only_for_approx_below_threshold() {
        let c = chip(671.0, 1.0);
        let low = approx_lavg(&c, 0.57, ModelId::DavisApprox, PITCHES).unwrap();
        assert_eq!(
            low.warnings,
            vec![Warning::BelowRentThreshold {
                p: 0.57,
                threshold: RENT_THRESHOLD
            }]
        );
        let high = approx_lavg(&c, 0.667, ModelId::DavisApprox, PITCHES).unwrap();
        assert!(high.warnings.is_empty());
        let exact = estimate(ModelId::DavisExact, &c, 0.57, PITCHES).unwrap();
        assert!(exact.warnings.is_empty());
    }

    #[test]
    fn davis_models_ignore_occupancy() {
        let a = estimate(ModelId::DavisExact, &chip(576.0, 0.6), 0.75, PITCHES).unwrap();
        let b = estimate(ModelId::SekarExact, &chip(576.0, 1.0), 0.75, PITCHES).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.model, ModelId::DavisExact);
        let a = estimate(
            ModelId::ModifiedDavisApprox,
            &chip(576.0, 1.0),
            0.7,
            PITCHES,
        )
        .unwrap();
        let b = estimate(
            ModelId::ModifiedSekarApprox,
            &chip(576.0, 1.0),
            0.7,
            PITCHES,
        )
        .unwrap();
        assert!(rel(a.value, b.value) < 1e-14);
    }

    #[test]
    fn unit_request_is_honoured() {
        let c = chip(2146.0, 0.75);
        for m in ModelId::ALL {
            let pitches = estimate(m, &c, 0.75, PITCHES).unwrap();
            let sockets = estimate(m, &c, 0.75, LengthUnit::SocketLengths).unwrap();
            assert_eq!(sockets.unit, LengthUnit::SocketLengths);
            assert!(
                rel(sockets.value * 0.75f64.sqrt(), pitches.value) < 1e-14,
                "{m}"
            );
        }
    }

    #[test]
    fn model_names_round_trip() {
        for m in ModelId::ALL {
            assert_eq!(m.slug().parse::<ModelId>(), Ok(m));
        }
        assert!("davis".parse::<ModelId>().is_err());
    }

    #[test]
    fn sweep_degenerate_range_repeats() {
        let rows = sweep(
            SweepRange::fixed(671.0),
            SweepRange::fixed(0.7),
            ModelId::DavisApprox,
            1.0,
            PITCHES,
            2,
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], rows[1]);
        assert!(sweep(
            SweepRange::fixed(671.0),
            SweepRange::fixed(0.7),
            ModelId::DavisApprox,
            1.0,
            PITCHES,
            1
        )
        .is_err());
    }

    #[test]
    fn sweep_over_exponent_is_monotone() {
        // dense evaluation of the leading-order form: the (p - 0.5) pole makes
        // L_avg fall steeply just above p = 0.5 and keep falling to 0.95
        let rows = sweep(
            SweepRange::fixed(671.0),
            SweepRange::new(0.51, 0.95),
            ModelId::DavisApprox,
            1.0,
            PITCHES,
            441,
        )
        .unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.lavg.unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
        assert!((values[0] - 51.3881).abs() < 1e-3, "{}", values[0]);
    }

    #[test]
    fn quadrupling_gates_scales_approx_by_power() {
        let p = 0.667;
        let rows = sweep(
            SweepRange::new(671.0, 4.0 * 671.0),
            SweepRange::fixed(p),
            ModelId::DavisApprox,
            1.0,
            PITCHES,
            2,
        )
        .unwrap();
        let ratio = rows[1].lavg.unwrap() / rows[0].lavg.unwrap();
        assert!(rel(ratio, 4f64.powf(p - 0.5)) < 1e-12);
        assert!(ratio < 1.414);
    }

    #[test]
    fn sweep_records_gaps() {
        let rows = sweep(
            SweepRange::fixed(1239.0),
            SweepRange::new(0.4, 0.8),
            ModelId::DavisApprox,
            1.0,
            PITCHES,
            5,
        )
        .unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows[0].lavg.is_none() && rows[0].error.is_some());
        assert!(rows[4].lavg.is_some());
        assert_eq!(rows[4].p, 0.8);
        assert!(rows.windows(2).all(|w| w[0].p < w[1].p));
    }
}
