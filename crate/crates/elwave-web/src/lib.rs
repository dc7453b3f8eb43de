//! Browser demo bindings: three interactive views onto the model, each
//! returning a JSON payload ready for canvas plotting.
//!
//! The crate compiles natively as well, so the payloads are testable with
//! `cargo test` without a wasm toolchain; `www/index.html` is the single
//! static page consuming the wasm build.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use elwave::ensemble::{Dimension, Profile, QuantumEnsemble};
use elwave::{alpha_gamma_table, energy_comparison_curves, ParticleState, PhysicalConfig};

#[derive(Serialize)]
struct FieldsPayload {
    u: f64,
    wavelength: f64,
    omega: f64,
    x: Vec<f64>,
    rho: Vec<f64>,
    e_field: Vec<f64>,
    b_field: Vec<f64>,
    phi: Vec<f64>,
    spin: Vec<f64>,
    spin_magnitude: f64,
}

/// Intrinsic plane-wave fields and the spin oscillation over a number of
/// wavelengths, sampled for plotting.
#[wasm_bindgen]
pub fn intrinsic_fields_json(u: f64, wavelengths: f64, samples: u32) -> Result<String, String> {
    let config = PhysicalConfig::natural_units();
    let state = ParticleState::electron(u, config).map_err(|e| e.to_string())?;
    let spin = elwave::spin_parameters(state.kind, &config);
    let n = samples.clamp(16, 8192) as usize;
    let span = wavelengths.clamp(0.25, 16.0) * state.wavelength;
    let mut payload = FieldsPayload {
        u: state.u,
        wavelength: state.wavelength,
        omega: state.omega,
        x: Vec::with_capacity(n),
        rho: Vec::with_capacity(n),
        e_field: Vec::with_capacity(n),
        b_field: Vec::with_capacity(n),
        phi: Vec::with_capacity(n),
        spin: Vec::with_capacity(n),
        spin_magnitude: spin.s,
    };
    for i in 0..n {
        let x = span * i as f64 / (n - 1) as f64;
        let sample = state.sample_intrinsic_fields(x, 0.0);
        payload.x.push(x);
        payload.rho.push(sample.rho);
        payload.e_field.push(sample.e_field);
        payload.b_field.push(sample.b_field);
        payload.phi.push(sample.phi);
        payload.spin.push(state.spin_orientation(x));
    }
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct EnsemblePayload {
    cutoff: f64,
    shifted_cutoff: f64,
    threshold: f64,
    transmission: f64,
    energy_before: f64,
    energy_after: Option<f64>,
    k: Vec<f64>,
    density_before: Vec<f64>,
    k_after: Vec<f64>,
    density_after: Vec<f64>,
    r: Vec<f64>,
    psi_sq: Vec<f64>,
}

/// Quantum ensemble pipeline: build at `e_total`, shift the cutoff by a
/// potential, collapse with a retarding field, and sample |ψ(r)|².
#[wasm_bindgen]
pub fn ensemble_json(
    e_total: f64,
    potential: f64,
    v_rfa: f64,
    gaussian: bool,
) -> Result<String, String> {
    let config = PhysicalConfig::natural_units();
    let profile = if gaussian {
        Profile::Gaussian {
            center_frac: 0.5,
            width_frac: 1.0 / 6.0,
        }
    } else {
        Profile::Uniform
    };
    let built = QuantumEnsemble::build_free(e_total, profile, 257, Dimension::One, config)
        .map_err(|e| e.to_string())?;
    let energy_before = built.energy_expectation().map_err(|e| e.to_string())?;
    let shifted = if potential != 0.0 {
        built
            .apply_potential(potential)
            .map_err(|e| e.to_string())?
    } else {
        built.clone()
    };
    let (collapsed, transmission) = shifted
        .retarding_field_collapse(v_rfa.max(0.0))
        .map_err(|e| e.to_string())?;
    let energy_after = collapsed.energy_expectation().ok();

    let (k, density_before): (Vec<f64>, Vec<f64>) = built.k_density().into_iter().unzip();
    let (k_after, density_after): (Vec<f64>, Vec<f64>) = collapsed.k_density().into_iter().unzip();

    let n_r = 257;
    let r_max = 25.0;
    let mut r = Vec::with_capacity(n_r);
    let mut psi_sq = Vec::with_capacity(n_r);
    for i in 0..n_r {
        let pos = -r_max + 2.0 * r_max * i as f64 / (n_r - 1) as f64;
        r.push(pos);
        psi_sq.push(collapsed.evaluate_at(pos).norm_sqr());
    }

    let payload = EnsemblePayload {
        cutoff: built.cutoff(),
        shifted_cutoff: shifted.cutoff(),
        threshold: elwave::cutoff_wavenumber(v_rfa.max(0.0), &config),
        transmission,
        energy_before,
        energy_after,
        k,
        density_before,
        k_after,
        density_after,
        r,
        psi_sq,
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AlphaGammaPayload {
    hw0: f64,
    u_over_c: Vec<f64>,
    alpha: Vec<f64>,
    gamma: Vec<f64>,
    rel_deviation: Vec<f64>,
    e_interaction: Vec<f64>,
    e_sr: Vec<f64>,
}

/// Virtual-mass factor α against the Lorentz γ, plus the bounded-vs-divergent
/// energy curves, on the fixed u/c grid.
#[wasm_bindgen]
pub fn alpha_gamma_json(hw0: f64) -> Result<String, String> {
    let config = PhysicalConfig::natural_units();
    let table = alpha_gamma_table(hw0, &config).map_err(|e| e.to_string())?;
    let energies = energy_comparison_curves(hw0, &config).map_err(|e| e.to_string())?;
    let payload = AlphaGammaPayload {
        hw0,
        u_over_c: table.iter().map(|row| row.u_over_c).collect(),
        alpha: table.iter().map(|row| row.alpha).collect(),
        gamma: table.iter().map(|row| row.gamma).collect(),
        rel_deviation: table.iter().map(|row| row.rel_deviation).collect(),
        e_interaction: energies.iter().map(|row| row.e_interaction).collect(),
        e_sr: energies.iter().map(|row| row.e_sr).collect(),
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}
