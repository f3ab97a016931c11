// SPDX-License-Identifier: Apache-2.0

//! Input parameter types shared by every model.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width of the exclusion band around each pole of the closed forms.
pub const SINGULAR_BAND: f64 = 1e-9;

/// Rent's rule parameters together with the average fan-out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RentParameters {
    k: f64,
    p: f64,
    fanout: f64,
    alpha: f64,
}

impl RentParameters {
    pub fn new(k: f64, p: f64, fanout: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::domain("k", k, "Rent constant must be positive"));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("p", p, "Rent exponent must lie in (0, 1)"));
        }
        if !(fanout.is_finite() && fanout > 0.0) {
            return Err(Error::domain(
                "fanout",
                fanout,
                "average fan-out must be positive",
            ));
        }
        Ok(Self {
            k,
            p,
            fanout,
            alpha: fanout / (fanout + 1.0),
        })
    }

    /// Rent's constant, terminals per gate.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Rent's exponent.
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn fanout(&self) -> f64 {
        self.fanout
    }

    /// Fraction of net terminals that are point-to-point sinks, `f.o. / (f.o. + 1)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Rejects `p` when it lies within [`SINGULAR_BAND`] of any of `poles`.
pub(crate) fn check_poles(p: f64, poles: &[f64]) -> Result<()> {
    for &pole in poles {
        if (p - pole).abs() <= SINGULAR_BAND {
            return Err(Error::Singularity {
                p,
                pole,
                band: SINGULAR_BAND,
            });
        }
    }
    Ok(())
}

/// A die modelled as a square array of gate sockets, a fraction of which hold gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChipConfiguration {
    n_gates: f64,
    p_gates: f64,
    n_sockets: f64,
}

impl ChipConfiguration {
    /// `n_gates` is real-valued so gate counts can be swept smoothly.
    pub fn new(n_gates: f64, p_gates: f64) -> Result<Self> {
        if !(n_gates.is_finite() && n_gates > 1.0) {
            return Err(Error::domain(
                "n_gates",
                n_gates,
                "gate count must exceed 1",
            ));
        }
        if !(p_gates > 0.0 && p_gates <= 1.0) {
            return Err(Error::domain(
                "p_gates",
                p_gates,
                "gate occupancy must lie in (0, 1]",
            ));
        }
        Ok(Self {
            n_gates,
            p_gates,
            n_sockets: n_gates / p_gates,
        })
    }

    /// Chip whose every socket is occupied (`N_soc = N_gates`).
    pub fn fully_occupied(n_gates: f64) -> Result<Self> {
        Self::new(n_gates, 1.0)
    }

    pub fn n_gates(&self) -> f64 {
        self.n_gates
    }

    pub fn p_gates(&self) -> f64 {
        self.p_gates
    }

    pub fn n_sockets(&self) -> f64 {
        self.n_sockets
    }

    /// Side of the socket array, `sqrt(N_soc)`, in socket lengths.
    pub fn side(&self) -> f64 {
        self.n_sockets.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthUnit {
    /// Distance between adjacent gate sockets.
    SocketLengths,
    /// Distance between adjacent placed gates; one socket length is `sqrt(P_gates)` pitches.
    GatePitches,
}

impl fmt::Display for LengthUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthUnit::SocketLengths => "sockets",
            LengthUnit::GatePitches => "pitches",
        })
    }
}

impl FromStr for LengthUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sockets" | "socket-lengths" => Ok(LengthUnit::SocketLengths),
            "pitches" | "gate-pitches" => Ok(LengthUnit::GatePitches),
            other => Err(format!(
                "unknown length unit `{other}` (expected pitches or sockets)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_from_fanout() {
        let rent = RentParameters::new(4.0, 0.75, 3.0).unwrap();
        assert_eq!(rent.alpha(), 0.75);
        assert!(RentParameters::new(0.0, 0.75, 3.0).is_err());
        assert!(RentParameters::new(4.0, 1.0, 3.0).is_err());
        assert!(RentParameters::new(4.0, 0.0, 3.0).is_err());
        assert!(RentParameters::new(4.0, 0.6, -1.0).is_err());
    }

    #[test]
    fn socket_count_follows_occupancy() {
        let chip = ChipConfiguration::new(2146.0, 0.75).unwrap();
        assert!((chip.n_sockets() * chip.p_gates() - chip.n_gates()).abs() < 1e-9);
        assert!(chip.n_sockets() > chip.n_gates());

        let full = ChipConfiguration::fully_occupied(2146.0).unwrap();
        assert_eq!(full.n_sockets(), full.n_gates());
    }

    #[test]
    fn chip_rejects_bad_inputs() {
        assert!(ChipConfiguration::new(1.0, 0.5).is_err());
        assert!(ChipConfiguration::new(100.0, 0.0).is_err());
        assert!(ChipConfiguration::new(100.0, 1.01).is_err());
        assert!(ChipConfiguration::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn poles_are_rejected_inside_band_only() {
        assert!(check_poles(0.5, &[0.5]).is_err());
        assert!(check_poles(0.5 + 5e-10, &[0.5]).is_err());
        assert!(check_poles(0.5 + 1e-8, &[0.5]).is_ok());
        assert!(check_poles(0.75, &[0.5, 1.0, 1.5]).is_ok());
    }

    #[test]
    fn unit_parsing() {
        assert_eq!("pitches".parse::<LengthUnit>(), Ok(LengthUnit::GatePitches));
        assert_eq!(
            "sockets".parse::<LengthUnit>(),
            Ok(LengthUnit::SocketLengths)
        );
        assert!("meters".parse::<LengthUnit>().is_err());
    }
}
