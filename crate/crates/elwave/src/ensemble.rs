//! The quantum ensemble of free electrons: a k-space amplitude with energy
//! cutoff, evaluated in position space by quadrature.
//!
//! The ensemble is the statistical object underneath ψ(r): at every point it
//! describes the range of kinetic energies left open once the intrinsic
//! energy components are omitted. A potential shifts the cutoff, a retarding
//! field truncates the support from below (collapse in k-space), and
//! normalization couples the amplitude at one point to the potentials and
//! amplitudes everywhere else in the domain.
//!
//! Ensembles are immutable values: every operation returns a new ensemble.
//! Quadrature over k is composite trapezoid on the stored grid (with a
//! Richardson check available); position-space norms use composite Simpson.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::PhysicalConfig;
use crate::error::{Error, Result};
use crate::wave::simpson;

/// Number of position-space quadrature points used for norms and
/// conditioning transforms.
const POSITION_QUADRATURE_POINTS: usize = 4097;

/// Minimum number of k-grid points per support interval.
const MIN_SEGMENT_POINTS: usize = 65;

/// Spatial dimensionality of the Fourier integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dimension {
    /// One-dimensional line; exact closed-form oracles exist.
    One,
    /// Three-dimensional integral in radial-symmetric reduction.
    RadialThree,
}

/// Amplitude profile ψ₀(k) on the support.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// ψ₀ ≡ 1 on the support.
    Uniform,
    /// Gaussian bump; center and width are fractions of the cutoff.
    Gaussian { center_frac: f64, width_frac: f64 },
    /// Amplitudes carried explicitly (produced by conditioning).
    Sampled,
}

impl Profile {
    fn eval(&self, k: f64, cutoff: f64) -> Complex64 {
        match self {
            Profile::Uniform => Complex64::new(1.0, 0.0),
            Profile::Gaussian {
                center_frac,
                width_frac,
            } => {
                let center = center_frac * cutoff;
                let width = width_frac * cutoff;
                let z = (k - center) / width;
                Complex64::new((-0.5 * z * z).exp(), 0.0)
            }
            Profile::Sampled => Complex64::new(0.0, 0.0),
        }
    }
}

/// Closed interval of wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KInterval {
    pub lo: f64,
    pub hi: f64,
}

impl KInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Segment {
    interval: KInterval,
    k: Vec<f64>,
    amplitude: Vec<Complex64>,
}

impl Segment {
    /// Trapezoid quadrature of f(k, ψ₀(k)) over the segment grid.
    fn trapezoid<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        trapezoid_on(&self.k, &self.amplitude, f)
    }
}

fn trapezoid_on<F: Fn(f64, Complex64) -> Complex64>(
    k: &[f64],
    amplitude: &[Complex64],
    f: F,
) -> Complex64 {
    if k.len() < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..k.len() - 1 {
        let h = k[i + 1] - k[i];
        sum += 0.5 * h * (f(k[i], amplitude[i]) + f(k[i + 1], amplitude[i + 1]));
    }
    sum
}

/// Energy bookkeeping of an interaction-free conditioning step.
///
/// The change is statistical, not physical: knowledge about the ensemble is
/// updated, no interaction takes place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyShiftReport {
    pub energy_before: f64,
    pub energy_after: f64,
    pub delta: f64,
    /// Probability weight the excluded region carried before conditioning.
    pub excluded_probability: f64,
}

/// k-space amplitude on a cutoff support, with the unit system it was built
/// in.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumEnsemble {
    config: PhysicalConfig,
    dim: Dimension,
    total_energy: f64,
    cutoff: f64,
    segments: Vec<Segment>,
    resolution: usize,
    profile: Profile,
    norm_constant: f64,
}

/// Cutoff wavenumber permitted by a total energy: k₀ = √(m·E_T)/ħ.
pub fn cutoff_wavenumber(total_energy: f64, config: &PhysicalConfig) -> f64 {
    (config.mass * total_energy).sqrt() / config.hbar
}

impl QuantumEnsemble {
    /// Builds the free ensemble: support [0, k₀] with k₀ = √(m·E_T)/ħ and the
    /// chosen amplitude profile on a grid of at least 64 points.
    pub fn build_free(
        total_energy: f64,
        profile: Profile,
        resolution: usize,
        dim: Dimension,
        config: PhysicalConfig,
    ) -> Result<Self> {
        if !(total_energy > 0.0) || !total_energy.is_finite() {
            return Err(Error::Domain(format!(
                "total energy must be positive, got {total_energy}"
            )));
        }
        if resolution < 64 {
            return Err(Error::Domain(format!(
                "grid resolution must be at least 64 points, got {resolution}"
            )));
        }
        let cutoff = cutoff_wavenumber(total_energy, &config);
        let support = vec![KInterval {
            lo: 0.0,
            hi: cutoff,
        }];
        Self::from_support(total_energy, &support, profile, resolution, dim, config)
    }

    /// Builds an ensemble on explicit support intervals (ascending, disjoint,
    /// within [0, k₀]). Zero-width intervals represent exactly determined
    /// wavenumbers: the vanishing-energy-range limit where the ensemble
    /// degenerates to classical electrodynamics.
    pub fn from_support(
        total_energy: f64,
        support: &[KInterval],
        profile: Profile,
        resolution: usize,
        dim: Dimension,
        config: PhysicalConfig,
    ) -> Result<Self> {
        if !(total_energy > 0.0) || !total_energy.is_finite() {
            return Err(Error::Domain(format!(
                "total energy must be positive, got {total_energy}"
            )));
        }
        let cutoff = cutoff_wavenumber(total_energy, &config);
        let mut previous_hi = f64::NEG_INFINITY;
        for interval in support {
            if interval.lo < 0.0
                || interval.hi > cutoff * (1.0 + 1e-12)
                || interval.lo > interval.hi
            {
                return Err(Error::Domain(format!(
                    "support interval [{}, {}] must lie within [0, {cutoff}]",
                    interval.lo, interval.hi
                )));
            }
            if interval.lo < previous_hi {
                return Err(Error::Domain(
                    "support intervals must be ascending and disjoint".into(),
                ));
            }
            previous_hi = interval.hi;
        }
        let mut ensemble = Self {
            config,
            dim,
            total_energy,
            cutoff,
            segments: Vec::new(),
            resolution: resolution.max(2),
            profile,
            norm_constant: 1.0,
        };
        ensemble.segments = support
            .iter()
            .map(|&interval| ensemble.make_segment(interval, None))
            .collect();
        Ok(ensemble)
    }

    fn points_for(&self, width: f64) -> usize {
        if width <= 0.0 {
            return 1;
        }
        let scale = if self.cutoff > 0.0 {
            width / self.cutoff
        } else {
            1.0
        };
        let target = ((self.resolution as f64) * scale).round() as usize;
        let n = target.max(MIN_SEGMENT_POINTS);
        if n.is_multiple_of(2) {
            n + 1
        } else {
            n
        }
    }

    /// Builds a segment grid; amplitudes come from the profile or, for
    /// sampled profiles, linear interpolation of `carry_over`.
    fn make_segment(
        &self,
        interval: KInterval,
        carry_over: Option<(&[f64], &[Complex64])>,
    ) -> Segment {
        let n = self.points_for(interval.width());
        let k: Vec<f64> = if n == 1 {
            vec![interval.lo]
        } else {
            (0..n)
                .map(|i| interval.lo + interval.width() * i as f64 / (n - 1) as f64)
                .collect()
        };
        let amplitude = k
            .iter()
            .map(|&kk| match (&self.profile, carry_over) {
                (Profile::Sampled, Some((grid, values))) => linear_interp(grid, values, kk),
                _ => self.profile.eval(kk, self.cutoff),
            })
            .collect();
        Segment {
            interval,
            k,
            amplitude,
        }
    }

    pub fn config(&self) -> &PhysicalConfig {
        &self.config
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn total_energy(&self) -> f64 {
        self.total_energy
    }

    /// Cutoff wavenumber k₀ of the ensemble.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn support(&self) -> Vec<KInterval> {
        self.segments.iter().map(|s| s.interval).collect()
    }

    /// Normalization factor applied by the last [`Self::normalize`] call.
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    /// True when no support remains (every member blocked).
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// k-space measure weight: 1 on the line, k² in the radial reduction.
    fn measure(&self, k: f64) -> f64 {
        match self.dim {
            Dimension::One => 1.0,
            Dimension::RadialThree => k * k,
        }
    }

    /// Probability weight ∫|ψ₀|²·w(k) dk over the support; zero-width
    /// intervals contribute their discrete weights.
    fn k_weight(&self) -> f64 {
        let continuous: f64 = self
            .segments
            .iter()
            .map(|s| {
                s.trapezoid(|k, a| Complex64::new(a.norm_sqr() * self.measure(k), 0.0))
                    .re
            })
            .sum();
        if continuous > 0.0 {
            return continuous;
        }
        self.segments
            .iter()
            .flat_map(|s| s.k.iter().zip(&s.amplitude))
            .map(|(&k, a)| a.norm_sqr() * self.measure(k).max(1.0))
            .sum()
    }

    /// ψ(r) by trapezoid quadrature of the Fourier integral over the support.
    /// An empty support yields the zero function.
    pub fn evaluate_wavefunction(&self, r_points: &[f64]) -> Vec<Complex64> {
        r_points.iter().map(|&r| self.evaluate_at(r)).collect()
    }

    /// Single-point quadrature of the Fourier integral.
    pub fn evaluate_at(&self, r: f64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for segment in &self.segments {
            total += self.fourier_segment(&segment.k, &segment.amplitude, r);
        }
        total
    }

    /// Trapezoid value together with a Richardson error estimate from the
    /// half-resolution grid.
    pub fn evaluate_with_richardson(&self, r: f64) -> (Complex64, f64) {
        let fine = self.evaluate_at(r);
        let mut coarse = Complex64::new(0.0, 0.0);
        for segment in &self.segments {
            let k: Vec<f64> = segment.k.iter().copied().step_by(2).collect();
            let amplitude: Vec<Complex64> = segment.amplitude.iter().copied().step_by(2).collect();
            coarse += self.fourier_segment(&k, &amplitude, r);
        }
        (fine, (fine - coarse).norm() / 3.0)
    }

    fn fourier_segment(&self, k: &[f64], amplitude: &[Complex64], r: f64) -> Complex64 {
        match self.dim {
            Dimension::One => {
                let scale = 1.0 / (std::f64::consts::TAU).sqrt();
                scale * trapezoid_on(k, amplitude, |kk, a| a * Complex64::new(0.0, kk * r).exp())
            }
            Dimension::RadialThree => {
                let scale = 4.0 * std::f64::consts::PI / (std::f64::consts::TAU).powf(1.5);
                scale
                    * trapezoid_on(k, amplitude, |kk, a| {
                        a * Complex64::new(kk * kk * sinc(kk * r), 0.0)
                    })
            }
        }
    }

    /// Applies a constant potential: the cutoff moves to √(m(E_T − V))/ħ.
    /// Negative potentials enlarge the support, positive ones shrink it; the
    /// amplitude profile is re-sampled onto the new support. V ≥ E_T reflects
    /// every member.
    pub fn apply_potential(&self, potential: f64) -> Result<Self> {
        if potential >= self.total_energy {
            return Err(Error::TotalReflection {
                potential,
                total_energy: self.total_energy,
            });
        }
        let new_total = self.total_energy - potential;
        let new_cutoff = cutoff_wavenumber(new_total, &self.config);
        let ratio = new_cutoff / self.cutoff;
        let (old_grid, old_amplitude) = self.concatenated();
        let mut next = Self {
            config: self.config,
            dim: self.dim,
            total_energy: new_total,
            cutoff: new_cutoff,
            segments: Vec::new(),
            resolution: self.resolution,
            profile: self.profile.clone(),
            norm_constant: self.norm_constant,
        };
        let scaled_grid: Vec<f64> = old_grid.iter().map(|k| k * ratio).collect();
        next.segments = self
            .segments
            .iter()
            .map(|s| {
                let interval = KInterval {
                    lo: s.interval.lo * ratio,
                    hi: s.interval.hi * ratio,
                };
                next.make_segment(interval, Some((&scaled_grid, &old_amplitude)))
            })
            .collect();
        Ok(next)
    }

    /// Energy measurement by a retarding field analyzer: only members with
    /// ħ²k²/m ≥ V_rfa pass, so the support is truncated to k ≥ √(m·V_rfa)/ħ.
    ///
    /// Returns the diminished ensemble (not renormalized) and the
    /// transmitted probability fraction. Blocking everything yields an empty
    /// ensemble with transmission 0, flagged rather than an error.
    pub fn retarding_field_collapse(&self, retarding_potential: f64) -> Result<(Self, f64)> {
        if retarding_potential < 0.0 {
            return Err(Error::Domain(format!(
                "retarding potential must be non-negative, got {retarding_potential}"
            )));
        }
        let threshold = cutoff_wavenumber(retarding_potential, &self.config);
        let before = self.k_weight();
        let (old_grid, old_amplitude) = self.concatenated();
        let mut next = Self {
            config: self.config,
            dim: self.dim,
            total_energy: self.total_energy,
            cutoff: self.cutoff,
            segments: Vec::new(),
            resolution: self.resolution,
            profile: self.profile.clone(),
            norm_constant: self.norm_constant,
        };
        next.segments = self
            .segments
            .iter()
            .filter_map(|s| {
                if s.interval.hi <= threshold {
                    return None;
                }
                let interval = KInterval {
                    lo: s.interval.lo.max(threshold),
                    hi: s.interval.hi,
                };
                Some(next.make_segment(interval, Some((&old_grid, &old_amplitude))))
            })
            .collect();
        let transmission = if before > 0.0 {
            next.k_weight() / before
        } else {
            0.0
        };
        Ok((next, transmission))
    }

    /// ∫|ψ(r)|² over the domain with the position measure of the dimension.
    pub fn position_norm(&self, domain: (f64, f64)) -> f64 {
        let (a, b) = domain;
        simpson(
            |r| self.evaluate_at(r).norm_sqr() * self.position_measure(r),
            a,
            b,
            POSITION_QUADRATURE_POINTS - 1,
        )
    }

    fn position_measure(&self, r: f64) -> f64 {
        match self.dim {
            Dimension::One => 1.0,
            Dimension::RadialThree => 4.0 * std::f64::consts::PI * r * r,
        }
    }

    /// Rescales the amplitude so that ∫|ψ|²dr = 1 over the domain and records
    /// the applied norm constant. The constant depends on the whole domain:
    /// changing the amplitude or potential anywhere changes ψ everywhere.
    pub fn normalize(&self, domain: (f64, f64)) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptySupport);
        }
        if !(domain.1 > domain.0) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(Error::Domain(format!(
                "normalization domain [{}, {}] must be finite and non-empty",
                domain.0, domain.1
            )));
        }
        let norm = self.position_norm(domain);
        if !(norm > f64::MIN_POSITIVE) {
            return Err(Error::ZeroNorm);
        }
        let scale = 1.0 / norm.sqrt();
        let mut next = self.clone();
        for segment in &mut next.segments {
            for amplitude in &mut segment.amplitude {
                *amplitude *= scale;
            }
        }
        next.norm_constant = scale;
        Ok(next)
    }

    /// Ensemble energy expectation ⟨ħ²k²/m⟩ over the support.
    pub fn energy_expectation(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptySupport);
        }
        let factor = self.config.hbar * self.config.hbar / self.config.mass;
        let numerator: f64 = self
            .segments
            .iter()
            .map(|s| {
                s.trapezoid(|k, a| {
                    Complex64::new(a.norm_sqr() * self.measure(k) * factor * k * k, 0.0)
                })
                .re
            })
            .sum();
        let denominator: f64 = self
            .segments
            .iter()
            .map(|s| {
                s.trapezoid(|k, a| Complex64::new(a.norm_sqr() * self.measure(k), 0.0))
                    .re
            })
            .sum();
        if denominator > 0.0 {
            return Ok(numerator / denominator);
        }
        // Degenerate (zero-width) support: discrete average over the points.
        let mut num = 0.0;
        let mut den = 0.0;
        for segment in &self.segments {
            for (&k, amplitude) in segment.k.iter().zip(&segment.amplitude) {
                let w = amplitude.norm_sqr() * self.measure(k).max(1.0);
                num += w * factor * k * k;
                den += w;
            }
        }
        if den > 0.0 {
            Ok(num / den)
        } else {
            Err(Error::ZeroNorm)
        }
    }

    /// Conditions the ensemble on the absence of any interaction in
    /// `excluded`: ψ is set to zero there (projection in position space),
    /// re-projected onto the allowed k-band, renormalized over the domain,
    /// and the energy expectation compared before/after.
    ///
    /// The "before" energy goes through the same domain-restricted band
    /// projection without the exclusion, so the reported ΔE isolates the
    /// statistical update and not the spectral leakage of restricting the
    /// inverse transform to a finite domain.
    pub fn interaction_free_condition(
        &self,
        excluded: (f64, f64),
        domain: (f64, f64),
    ) -> Result<(Self, EnergyShiftReport)> {
        if self.is_empty() {
            return Err(Error::EmptySupport);
        }
        if !(domain.1 > domain.0) {
            return Err(Error::Domain("domain must be non-empty".into()));
        }
        if excluded.0 > excluded.1 {
            return Err(Error::Domain(format!(
                "excluded region [{}, {}] is inverted",
                excluded.0, excluded.1
            )));
        }
        if excluded.0 < domain.0 || excluded.1 > domain.1 {
            return Err(Error::Domain(
                "excluded region must lie inside the domain".into(),
            ));
        }
        if excluded.1 == excluded.0 {
            let energy = self.energy_expectation()?;
            let report = EnergyShiftReport {
                energy_before: energy,
                energy_after: energy,
                delta: 0.0,
                excluded_probability: 0.0,
            };
            return Ok((self.clone(), report));
        }
        if excluded.0 <= domain.0 && excluded.1 >= domain.1 {
            return Err(Error::Domain(
                "excluding the whole domain leaves no ensemble".into(),
            ));
        }
        let total_norm = self.position_norm(domain);
        if !(total_norm > f64::MIN_POSITIVE) {
            return Err(Error::ZeroNorm);
        }
        let excluded_norm = simpson(
            |r| self.evaluate_at(r).norm_sqr() * self.position_measure(r),
            excluded.0,
            excluded.1,
            1024,
        );

        let baseline = self.band_project(&[domain])?.normalize(domain)?;
        let energy_before = baseline.energy_expectation()?;
        let conditioned = self
            .band_project(&[(domain.0, excluded.0), (excluded.1, domain.1)])?
            .normalize(domain)?;
        let energy_after = conditioned.energy_expectation()?;
        let report = EnergyShiftReport {
            energy_before,
            energy_after,
            delta: energy_after - energy_before,
            excluded_probability: (excluded_norm / total_norm).clamp(0.0, 1.0),
        };
        Ok((conditioned, report))
    }

    /// Re-projects the wavefunction onto the allowed k-band, integrating the
    /// inverse transform over the given position-space pieces (ψ is taken as
    /// zero everywhere else). Integrating piecewise keeps the quadrature away
    /// from mask discontinuities.
    fn band_project(&self, pieces: &[(f64, f64)]) -> Result<Self> {
        let span: f64 = pieces.iter().map(|&(a, b)| (b - a).max(0.0)).sum();
        if !(span > 0.0) {
            return Err(Error::Domain(
                "band projection requires a region of positive length".into(),
            ));
        }
        let mut piece_grids: Vec<(Vec<f64>, Vec<Complex64>)> = Vec::new();
        for &(a, b) in pieces {
            if b - a <= 0.0 {
                continue;
            }
            let n_target = ((POSITION_QUADRATURE_POINTS as f64) * (b - a) / span).round() as usize;
            let n = n_target.max(129) | 1;
            let r: Vec<f64> = (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect();
            let psi = self.evaluate_wavefunction(&r);
            piece_grids.push((r, psi));
        }
        let mut next = self.clone();
        next.profile = Profile::Sampled;
        for segment in &mut next.segments {
            for (idx, &k) in segment.k.iter().enumerate() {
                let mut projected = Complex64::new(0.0, 0.0);
                for (r, psi) in &piece_grids {
                    projected += self.inverse_kernel_integral(r, psi, k);
                }
                segment.amplitude[idx] = projected;
            }
        }
        Ok(next)
    }

    /// Inverse transform of a sampled ψ(r) at one wavenumber, composite
    /// Simpson over the r grid.
    fn inverse_kernel_integral(&self, r: &[f64], psi: &[Complex64], k: f64) -> Complex64 {
        let n = r.len();
        if n < 3 {
            return Complex64::new(0.0, 0.0);
        }
        let h = (r[n - 1] - r[0]) / (n - 1) as f64;
        let kernel = |i: usize| -> Complex64 {
            match self.dim {
                Dimension::One => {
                    psi[i] * Complex64::new(0.0, -k * r[i]).exp() / (std::f64::consts::TAU).sqrt()
                }
                Dimension::RadialThree => {
                    psi[i]
                        * Complex64::new(
                            4.0 * std::f64::consts::PI * r[i] * r[i] * sinc(k * r[i])
                                / (std::f64::consts::TAU).powf(1.5),
                            0.0,
                        )
                }
            }
        };
        let mut sum = kernel(0) + kernel(n - 1);
        for i in 1..n - 1 {
            let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += weight * kernel(i);
        }
        sum * h / 3.0
    }

    /// (k, |ψ₀(k)|²) rows across the support grid.
    pub fn k_density(&self) -> Vec<(f64, f64)> {
        self.segments
            .iter()
            .flat_map(|s| {
                s.k.iter()
                    .zip(&s.amplitude)
                    .map(|(&k, a)| (k, a.norm_sqr()))
            })
            .collect()
    }

    fn concatenated(&self) -> (Vec<f64>, Vec<Complex64>) {
        let mut k = Vec::new();
        let mut amplitude = Vec::new();
        for segment in &self.segments {
            k.extend_from_slice(&segment.k);
            amplitude.extend_from_slice(&segment.amplitude);
        }
        (k, amplitude)
    }
}

fn linear_interp(grid: &[f64], values: &[Complex64], k: f64) -> Complex64 {
    if grid.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if k <= grid[0] {
        return values[0];
    }
    if k >= grid[grid.len() - 1] {
        return values[values.len() - 1];
    }
    let idx = grid.partition_point(|&g| g < k);
    let (k0, k1) = (grid[idx - 1], grid[idx]);
    if k1 == k0 {
        return values[idx];
    }
    let t = (k - k0) / (k1 - k0);
    values[idx - 1] * (1.0 - t) + values[idx] * t
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}
