//! Electron acceleration by discrete photon absorption in the electron's
//! proper time.
//!
//! Each absorbed quantum contributes ħω₀·√(1 − (u/c)²): time dilation
//! shrinks the increments as the electron speeds up, so the energy sequence
//! is strictly increasing yet bounded, with m·c² as its unique fixed point.
//! The apparent inertial-mass growth α(u) extracted from the slowed
//! acceleration tracks the Lorentz factor γ(u) over the whole velocity
//! range while the model energy stays finite where the Special Relativity
//! curve diverges. The module also tabulates the Weisskopf self-energy
//! divergences and Bethe's cutoff formula for the Lamb shift.

use serde::Serialize;

use crate::config::PhysicalConfig;
use crate::error::{Error, Result};

/// One absorption step. Row n holds the state after n+1 absorbed quanta
/// (the recursion starts at E₀ = ħω₀: the first quantum is absorbed from
/// rest, before any dilation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub n: usize,
    /// Eₙ = ħω₀·[1 + Σᵢ₌₀ⁿ⁻¹ √(1 − (uᵢ/c)²)], clamped at m·c².
    pub energy: f64,
    /// uₙ = √(Eₙ/m), from the total-energy relation E = m·u².
    pub velocity: f64,
    /// Classical comparison velocity √(n·ħω₀/m): the same count of quanta
    /// absorbed without time dilation.
    pub classical_velocity: f64,
    /// Virtual mass factor at this step; None when the velocity increment
    /// underflowed.
    pub alpha: Option<f64>,
}

/// The absorption sequence together with its convergence status.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorptionTrace {
    /// Photon quantum of energy ħω₀.
    pub quantum: f64,
    pub rows: Vec<TraceRow>,
    /// True when the increment fell below the tolerance before `n_max`.
    pub converged: bool,
    /// Final energy of the sequence.
    pub e_limit: f64,
    /// Steps whose α was skipped because the velocity increment vanished.
    pub skipped_alpha_steps: usize,
}

/// Iterates Eₙ₊₁ = Eₙ + ħω₀·√(max(0, 1 − (uₙ/c)²)) from E₀ = ħω₀ until the
/// increment drops below `tolerance` or `n_max` rows exist.
///
/// The square-root argument is clamped at 0 and the energy at m·c²: the
/// update can overshoot the fixed point by up to ħω₀²/(4mc²) in exact
/// arithmetic, and the limit statement presumes Eₙ ≤ m·c².
pub fn absorption_sequence(
    quantum: f64,
    n_max: usize,
    tolerance: f64,
    config: &PhysicalConfig,
) -> Result<AbsorptionTrace> {
    let rest_energy = config.rest_energy();
    if !(quantum > 0.0) || quantum >= rest_energy {
        return Err(Error::Domain(format!(
            "photon quantum hw0 must satisfy 0 < hw0 < m*c^2 = {rest_energy}, got {quantum}"
        )));
    }
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let mass = config.mass;
    let c = config.c;
    let mut rows = Vec::new();
    let mut energy = quantum;
    let mut converged = false;
    for n in 0..n_max {
        let velocity = (energy / mass).sqrt();
        rows.push(TraceRow {
            n,
            energy,
            velocity,
            classical_velocity: (n as f64 * quantum / mass).sqrt(),
            alpha: None,
        });
        let ratio = velocity / c;
        let increment = quantum * (1.0 - ratio * ratio).max(0.0).sqrt();
        if increment < tolerance {
            converged = true;
            break;
        }
        energy = (energy + increment).min(rest_energy);
    }
    let mut trace = AbsorptionTrace {
        quantum,
        rows,
        converged,
        e_limit: energy,
        skipped_alpha_steps: 0,
    };
    trace.skipped_alpha_steps = fill_alpha(&mut trace.rows, quantum, config);
    Ok(trace)
}

/// Evaluates the virtual-mass factor for every row.
///
/// α compares the classical and the interaction-model electron at equal
/// quanta counts: row n holds n+1 quanta, so its classical comparator is
/// √((n+1)·ħω₀/m) and the velocity increments span the same absorption,
/// with velocity 0 before the first quantum. Steps with a vanishing
/// increment are skipped; the return value counts them.
fn fill_alpha(rows: &mut [TraceRow], quantum: f64, config: &PhysicalConfig) -> usize {
    let mass = config.mass;
    let classical_step = (quantum / mass).sqrt();
    let mut skipped = 0;
    for i in 0..rows.len() {
        let quanta = (i + 1) as f64;
        let classical_here = (quanta * quantum / mass).sqrt();
        let previous_velocity = if i == 0 { 0.0 } else { rows[i - 1].velocity };
        let dv = rows[i].velocity - previous_velocity;
        if dv <= 0.0 {
            skipped += 1;
            rows[i].alpha = None;
            continue;
        }
        let classical_increment = classical_step * (quanta.sqrt() - (quanta - 1.0).sqrt());
        rows[i].alpha = Some(classical_increment / dv * (classical_here / rows[i].velocity));
    }
    skipped
}

/// Per-step α values (n, uₙ, αₙ) of a trace; needs at least 2 rows.
pub fn alpha_factor(trace: &AbsorptionTrace) -> Result<Vec<(usize, f64, f64)>> {
    if trace.rows.len() < 2 {
        return Err(Error::Domain(
            "alpha evaluation requires a trace with at least 2 rows".into(),
        ));
    }
    Ok(trace
        .rows
        .iter()
        .filter_map(|row| row.alpha.map(|a| (row.n, row.velocity, a)))
        .collect())
}

/// Lorentz factor γ = 1/√(1 − u²/c²) for 0 ≤ u < c.
pub fn gamma(u: f64, config: &PhysicalConfig) -> Result<f64> {
    if !(0.0..config.c).contains(&u) {
        return Err(Error::Domain(format!(
            "speed must satisfy 0 <= u < c = {}, got {u}",
            config.c
        )));
    }
    let ratio = u / config.c;
    Ok(1.0 / (1.0 - ratio * ratio).sqrt())
}

/// The velocity grid of the α/γ comparison: u/c ∈ {0.05, 0.10, …, 0.95, 0.99}.
pub fn velocity_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=19).map(|i| (5 * i) as f64 / 100.0).collect();
    grid.push(0.99);
    grid
}

/// Largest quantum that still resolves the first grid point u/c = 0.05:
/// the trace starts at u₀/c = √(ħω₀/mc²), which must not exceed 0.05.
pub fn max_quantum_for_grid(config: &PhysicalConfig) -> f64 {
    0.0025 * config.rest_energy()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaGammaRow {
    pub u_over_c: f64,
    pub alpha: f64,
    pub gamma: f64,
    /// |α/γ − 1|.
    pub rel_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyComparisonRow {
    pub u_over_c: f64,
    /// Interaction-model energy m·uₙ² interpolated from the trace; bounded
    /// by m·c².
    pub e_interaction: f64,
    /// Special Relativity energy γ·m·c² (kinetic plus rest energy); diverges
    /// as u → c.
    pub e_sr: f64,
}

fn trace_for_grid(quantum: f64, config: &PhysicalConfig) -> Result<AbsorptionTrace> {
    let bound = max_quantum_for_grid(config);
    if quantum > bound {
        return Err(Error::Domain(format!(
            "photon quantum hw0 = {quantum} too coarse to resolve u/c = 0.05; required hw0 <= 0.0025*m*c^2 = {bound}"
        )));
    }
    absorption_sequence(quantum, 50_000_000, 1e-10 * config.rest_energy(), config)
}

fn interpolate_at_velocity(
    rows: &[TraceRow],
    target: f64,
    value: impl Fn(&TraceRow) -> Option<f64>,
) -> Option<f64> {
    let idx = rows.partition_point(|row| row.velocity < target);
    if idx == 0 {
        return value(&rows[0]);
    }
    if idx >= rows.len() {
        return value(rows.last()?);
    }
    let (lo, hi) = (&rows[idx - 1], &rows[idx]);
    let (a, b) = (value(lo)?, value(hi)?);
    if hi.velocity == lo.velocity {
        return Some(b);
    }
    let t = (target - lo.velocity) / (hi.velocity - lo.velocity);
    Some(a + t * (b - a))
}

/// Tabulates α against γ on the fixed velocity grid, interpolating α
/// linearly between adjacent trace steps.
pub fn alpha_gamma_table(quantum: f64, config: &PhysicalConfig) -> Result<Vec<AlphaGammaRow>> {
    let trace = trace_for_grid(quantum, config)?;
    velocity_grid()
        .into_iter()
        .map(|fraction| {
            let u = fraction * config.c;
            let g = gamma(u, config)?;
            let a = interpolate_at_velocity(&trace.rows, u, |row| row.alpha)
                .ok_or_else(|| Error::Domain(format!("trace does not resolve u/c = {fraction}")))?;
            Ok(AlphaGammaRow {
                u_over_c: fraction,
                alpha: a,
                gamma: g,
                rel_deviation: (a / g - 1.0).abs(),
            })
        })
        .collect()
}

/// Bounded interaction-model energy against the divergent γ·m·c² curve on
/// the same velocity grid.
pub fn energy_comparison_curves(
    quantum: f64,
    config: &PhysicalConfig,
) -> Result<Vec<EnergyComparisonRow>> {
    let trace = trace_for_grid(quantum, config)?;
    velocity_grid()
        .into_iter()
        .map(|fraction| {
            let u = fraction * config.c;
            let e_interaction = interpolate_at_velocity(&trace.rows, u, |row| Some(row.energy))
                .ok_or_else(|| Error::Domain(format!("trace does not resolve u/c = {fraction}")))?;
            Ok(EnergyComparisonRow {
                u_over_c: fraction,
                e_interaction,
                e_sr: gamma(u, config)? * config.rest_energy(),
            })
        })
        .collect()
}

/// Electrostatic and vacuum-fluctuation self-energies over electron radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfEnergyCurve {
    pub radii: Vec<f64>,
    /// W_st(a) = e²/a.
    pub electrostatic: Vec<f64>,
    /// W_fluct(a) = e²h/(π·m·c·a²).
    pub fluctuation: Vec<f64>,
}

/// Both Weisskopf self-energy contributions; they diverge as a → 0 with
/// power laws a⁻¹ and a⁻².
pub fn weisskopf_self_energy(radii: &[f64], config: &PhysicalConfig) -> Result<SelfEnergyCurve> {
    let e_sq = config.charge * config.charge;
    let fluct_scale = e_sq * config.h / (std::f64::consts::PI * config.mass * config.c);
    let mut electrostatic = Vec::with_capacity(radii.len());
    let mut fluctuation = Vec::with_capacity(radii.len());
    for &a in radii {
        if !(a > 0.0) {
            return Err(Error::Domain(format!(
                "electron radius must be positive, got {a}"
            )));
        }
        electrostatic.push(e_sq / a);
        fluctuation.push(fluct_scale / (a * a));
    }
    Ok(SelfEnergyCurve {
        radii: radii.to_vec(),
        electrostatic,
        fluctuation,
    })
}

/// Bethe's cutoff expression for the Lamb shift: W′ = C·ln(K/ΔE_avg).
pub fn bethe_lamb_shift(constant: f64, cutoff: f64, average_gap: f64) -> Result<f64> {
    if !(cutoff > 0.0) || !(average_gap > 0.0) {
        return Err(Error::Domain(format!(
            "logarithm argument must be positive: K = {cutoff}, <E> = {average_gap}"
        )));
    }
    Ok(constant * (cutoff / average_gap).ln())
}

/// Lamb shift with the cutoff fixed at m·c².
pub fn bethe_lamb_shift_rest_cutoff(
    constant: f64,
    average_gap: f64,
    config: &PhysicalConfig,
) -> Result<f64> {
    bethe_lamb_shift(constant, config.rest_energy(), average_gap)
}
