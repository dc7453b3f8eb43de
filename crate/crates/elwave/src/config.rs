//! Unit system and physical constants shared by all modules.
//!
//! Every downstream computation is parameterized by a [`PhysicalConfig`].
//! The default is the natural unit system m = c = ħ = e = σ̄ = ρ̄ = 1, in
//! which the model formulas take their simplest form; an SI-flavoured preset
//! and fully explicit construction are available for dimensional runs.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constants defining the unit system: particle mass, light speed, quanta of
/// action, elementary charge, the dimensional constant `sigma_bar` coupling
/// mechanical to electromagnetic units, and the reference mean density
/// `rho_bar` entering the interferometric phase formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    /// Mass of the particle species (for photons: the mass equivalent of ħω/c²).
    pub mass: f64,
    /// Vacuum light speed.
    pub c: f64,
    /// Reduced quantum of action.
    pub hbar: f64,
    /// Quantum of action, h = 2πħ.
    pub h: f64,
    /// Elementary charge magnitude.
    pub charge: f64,
    /// Dimensional constant making mechanical units compatible with
    /// electromagnetic variables.
    pub sigma_bar: f64,
    /// Reference mean density.
    pub rho_bar: f64,
}

impl PhysicalConfig {
    /// Natural units: m = c = ħ = e = σ̄ = ρ̄ = 1 and h = 2π.
    pub fn natural_units() -> Self {
        Self {
            mass: 1.0,
            c: 1.0,
            hbar: 1.0,
            h: TAU,
            charge: 1.0,
            sigma_bar: 1.0,
            rho_bar: 1.0,
        }
    }

    /// Explicit construction; h is derived as 2πħ. All constants must be
    /// strictly positive.
    pub fn new(
        mass: f64,
        c: f64,
        hbar: f64,
        charge: f64,
        sigma_bar: f64,
        rho_bar: f64,
    ) -> Result<Self> {
        let config = Self {
            mass,
            c,
            hbar,
            h: TAU * hbar,
            charge,
            sigma_bar,
            rho_bar,
        };
        config.validate()?;
        Ok(config)
    }

    /// SI preset for the electron (CODATA 2018 values for m, c, ħ, e).
    /// `sigma_bar` and `rho_bar` stay at 1: the model leaves them as free
    /// scale parameters.
    pub fn si_electron() -> Self {
        Self {
            mass: 9.109_383_701_5e-31,
            c: 299_792_458.0,
            hbar: 1.054_571_817e-34,
            h: TAU * 1.054_571_817e-34,
            charge: 1.602_176_634e-19,
            sigma_bar: 1.0,
            rho_bar: 1.0,
        }
    }

    /// Checks positivity of every constant and the identity h = 2πħ.
    pub fn validate(&self) -> Result<()> {
        let entries = [
            ("m", self.mass),
            ("c", self.c),
            ("hbar", self.hbar),
            ("h", self.h),
            ("e", self.charge),
            ("sigma_bar", self.sigma_bar),
            ("rho_bar", self.rho_bar),
        ];
        for (name, value) in entries {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "constant {name} must be strictly positive and finite, got {value}"
                )));
            }
        }
        // h = 2πħ to machine precision (a few ulps of slack for parsed input).
        let expected = TAU * self.hbar;
        if (self.h - expected).abs() > 4.0 * f64::EPSILON * expected {
            return Err(Error::Domain(format!(
                "h = {} violates h = 2*pi*hbar = {expected}",
                self.h
            )));
        }
        Ok(())
    }

    /// Rest energy m·c² of the species.
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// Parses a `key = value` config file body. Keys are `m`, `c`, `hbar`,
    /// `e`, `sigma_bar`, `rho_bar` and optionally `h` (checked against 2πħ);
    /// unspecified keys keep their natural-unit defaults. Unknown keys are an
    /// error. Blank lines and lines starting with `#` are ignored.
    pub fn from_key_values(body: &str) -> Result<Self> {
        let mut config = Self::natural_units();
        let mut h_given: Option<f64> = None;
        for (lineno, raw) in body.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "line {}: `{}` is not a number",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            match key {
                "m" => config.mass = value,
                "c" => config.c = value,
                "hbar" => config.hbar = value,
                "e" => config.charge = value,
                "sigma_bar" => config.sigma_bar = value,
                "rho_bar" => config.rho_bar = value,
                "h" => h_given = Some(value),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        config.h = match h_given {
            Some(h) => h,
            None => TAU * config.hbar,
        };
        config.validate()?;
        Ok(config)
    }

    /// Serializes the constants in the same `key = value` format accepted by
    /// [`PhysicalConfig::from_key_values`]. Values use shortest round-trip
    /// formatting, so reparsing reproduces the constants bit for bit.
    pub fn to_key_values(&self) -> String {
        format!(
            "m = {}\nc = {}\nhbar = {}\nh = {}\ne = {}\nsigma_bar = {}\nrho_bar = {}\n",
            self.mass, self.c, self.hbar, self.h, self.charge, self.sigma_bar, self.rho_bar
        )
    }
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self::natural_units()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn natural_units_are_unity() {
        let cfg = PhysicalConfig::natural_units();
        assert_eq!(cfg.c, 1.0);
        assert_eq!(cfg.hbar, 1.0);
        assert_eq!(cfg.mass, 1.0);
        assert_eq!(cfg.h, TAU);
        assert!((cfg.h - 6.2832).abs() < 1e-4);
    }

    #[test]
    fn h_is_two_pi_hbar() {
        let cfg = PhysicalConfig::new(2.0, 3.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(cfg.h, TAU * 0.5);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_non_positive_constants() {
        assert!(PhysicalConfig::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, -1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, 1.0, f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn key_value_round_trip_is_bit_exact() {
        let cfg = PhysicalConfig::new(
            9.1093837015e-31,
            2.99792458e8,
            1.054571817e-34,
            1.602176634e-19,
            0.37,
            2.5,
        )
        .unwrap();
        let text = cfg.to_key_values();
        let parsed = PhysicalConfig::from_key_values(&text).unwrap();
        assert_eq!(cfg.mass.to_bits(), parsed.mass.to_bits());
        assert_eq!(cfg.c.to_bits(), parsed.c.to_bits());
        assert_eq!(cfg.hbar.to_bits(), parsed.hbar.to_bits());
        assert_eq!(cfg.h.to_bits(), parsed.h.to_bits());
        assert_eq!(cfg.charge.to_bits(), parsed.charge.to_bits());
        assert_eq!(cfg.sigma_bar.to_bits(), parsed.sigma_bar.to_bits());
        assert_eq!(cfg.rho_bar.to_bits(), parsed.rho_bar.to_bits());
    }

    #[test]
    fn unknown_key_is_an_error() {
        let err = PhysicalConfig::from_key_values("m = 1\nplanck = 6.6\n").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("planck"));
    }

    #[test]
    fn inconsistent_h_is_rejected() {
        let err = PhysicalConfig::from_key_values("hbar = 1\nh = 6.0\n").unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn partial_file_keeps_natural_defaults() {
        let cfg = PhysicalConfig::from_key_values("rho_bar = 4.0").unwrap();
        assert_eq!(cfg.rho_bar, 4.0);
        assert_eq!(cfg.mass, 1.0);
        assert_eq!(cfg.h, TAU);
    }

    #[test]
    fn si_preset_is_valid() {
        let cfg = PhysicalConfig::si_electron();
        cfg.validate().unwrap();
        assert_eq!(cfg.h, TAU * cfg.hbar);
        assert!((cfg.rest_energy() - 8.187_105_776_8e-14).abs() < 1e-17);
    }
}
