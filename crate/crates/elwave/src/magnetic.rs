//! Interaction of the intrinsic fields with an external magnetic field:
//! the angle-independent energy shift, the failure of the classical
//! scalar-product form, and the interferometric phase difference.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::config::PhysicalConfig;
use crate::error::{Error, Result};
use crate::wave::ParticleState;

/// A particle traversing a region of uniform external field magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticScenario {
    pub state: ParticleState,
    /// External field magnitude.
    pub b_ext: f64,
    /// Angle between the intrinsic B and the external field, radians.
    pub theta: f64,
    /// Path length inside the field region.
    pub path_length: f64,
    /// Switch-on interval of the dynamic model. Metadata only: the final
    /// energy expression does not depend on it.
    pub switch_on_interval: f64,
}

impl MagneticScenario {
    pub fn new(
        state: ParticleState,
        b_ext: f64,
        theta: f64,
        path_length: f64,
        switch_on_interval: f64,
    ) -> Result<Self> {
        if b_ext < 0.0 {
            return Err(Error::Domain(format!(
                "external field magnitude must be non-negative, got {b_ext}"
            )));
        }
        if path_length < 0.0 {
            return Err(Error::Domain(format!(
                "path length must be non-negative, got {path_length}"
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "angle must lie in [0, pi], got {theta}"
            )));
        }
        Ok(Self {
            state,
            b_ext,
            theta,
            path_length,
            switch_on_interval,
        })
    }

    /// Intrinsic field-energy density of the state (peak value φ₀ = ½ρ₀u²).
    pub fn intrinsic_field_energy(&self) -> f64 {
        self.state.phi_amplitude()
    }

    /// Energy density after switching on the external field:
    /// φ(B_ext) = φ_em + |B_ext|². A function of the magnitude only; the
    /// angle θ does not appear.
    pub fn apply_external_field(&self) -> f64 {
        shifted_field_energy(self.intrinsic_field_energy(), self.b_ext)
    }

    /// Δ(θ) = φ(B_ext) − (−μ·B_ext·cosθ) sampled over a θ grid on [0, π].
    ///
    /// The curve is non-constant whenever μ·B_ext ≠ 0: no choice of a fixed
    /// moment vector reproduces the angle-independent energy shift.
    pub fn scalar_product_discrepancy(&self, moment: f64, samples: usize) -> Vec<(f64, f64)> {
        let n = samples.max(2);
        let shifted = self.apply_external_field();
        (0..n)
            .map(|i| {
                let theta = std::f64::consts::PI * (i as f64 / (n - 1) as f64);
                let classical = -moment * self.b_ext * theta.cos();
                (theta, shifted - classical)
            })
            .collect()
    }

    /// Interferometric phase difference for this scenario.
    pub fn phase_difference(&self, config: &PhysicalConfig) -> Result<PhaseResult> {
        let raw = raw_phase(
            self.path_length,
            self.state.wavelength,
            self.state.u,
            self.b_ext,
            config.rho_bar,
        )?;
        Ok(reduce_phase(raw))
    }
}

/// φ_em = ½((1/u²)E² + B²).
pub fn field_energy_density(e_field: f64, b_field: f64, u: f64) -> Result<f64> {
    if u == 0.0 || !u.is_finite() {
        return Err(Error::Domain(format!(
            "propagation speed must be nonzero and finite, got {u}"
        )));
    }
    Ok(0.5 * (e_field * e_field / (u * u) + b_field * b_field))
}

/// φ(B_ext) = φ_em + B_ext², independent of the field direction.
pub fn shifted_field_energy(phi_em: f64, b_ext: f64) -> f64 {
    phi_em + b_ext * b_ext
}

/// Phase difference reduced to [0, 2π) with the removed winding count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseResult {
    /// Unreduced phase 2π·(l/λ)·B_ext/√(ρ̄u²).
    pub raw: f64,
    /// raw − 2πn, in [0, 2π).
    pub alpha: f64,
    /// Integer winding number removed, n = ⌊raw/2π⌋.
    pub winding: i64,
}

/// Unreduced interferometric phase 2π·(l/λ)·B_ext/√(ρ̄·u²).
pub fn raw_phase(
    path_length: f64,
    wavelength: f64,
    u: f64,
    b_ext: f64,
    rho_bar: f64,
) -> Result<f64> {
    if !(wavelength > 0.0) {
        return Err(Error::Domain(format!(
            "wavelength must be positive, got {wavelength}"
        )));
    }
    if !(rho_bar > 0.0) || !(u != 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!(
            "rho_bar and u must be positive, got rho_bar = {rho_bar}, u = {u}"
        )));
    }
    Ok(TAU * (path_length / wavelength) * b_ext / (rho_bar * u * u).sqrt())
}

/// Splits a raw phase into (alpha, winding) with alpha ∈ [0, 2π).
pub fn reduce_phase(raw: f64) -> PhaseResult {
    let mut winding = (raw / TAU).floor() as i64;
    let mut alpha = raw - TAU * winding as f64;
    if alpha >= TAU {
        alpha -= TAU;
        winding += 1;
    }
    if alpha < 0.0 {
        alpha += TAU;
        winding -= 1;
    }
    PhaseResult {
        raw,
        alpha,
        winding,
    }
}

/// Slope of the raw phase in B_ext: 2π·l/(λ·√(ρ̄u²)).
pub fn phase_slope(path_length: f64, wavelength: f64, u: f64, rho_bar: f64) -> Result<f64> {
    raw_phase(path_length, wavelength, u, 1.0, rho_bar)
}

/// Raw phase tabulated over field magnitudes; exactly linear in B_ext.
pub fn phase_sweep(
    path_length: f64,
    wavelength: f64,
    u: f64,
    rho_bar: f64,
    b_values: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut distinct = b_values.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Domain(
            "phase sweep requires at least two distinct field values".into(),
        ));
    }
    b_values
        .iter()
        .map(|&b| Ok((b, raw_phase(path_length, wavelength, u, b, rho_bar)?)))
        .collect()
}
