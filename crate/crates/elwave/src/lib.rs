//! Numerical laboratory for an extended-electron wave model.
//!
//! The model describes electrons and photons as monochromatic plane waves
//! with intrinsic mass density and transversal E/B fields. This crate
//! implements its quantitative content as machine-checkable operations:
//!
//! - [`wave`]: dispersion, energy partition, intrinsic field sampling, spin
//!   parameters and the λ/2 spin-oscillation precision argument, plus a
//!   finite-difference residual check of the intrinsic field equations;
//! - [`electrostatic`]: Lagrangian/Hamiltonian bookkeeping of
//!   electron–photon–field interaction and the photon-emission energy
//!   balance;
//! - [`magnetic`]: the angle-independent energy shift in an external
//!   magnetic field and the interferometric phase difference it produces;
//! - [`ensemble`]: the quantum ensemble as a k-space amplitude with cutoff,
//!   potentials, retarding-field collapse, normalization and
//!   interaction-free conditioning;
//! - [`absorption`]: the relativistic photon-absorption recursion, the
//!   virtual-mass factor α against the Lorentz γ, Weisskopf self-energies
//!   and Bethe's Lamb-shift cutoff formula.
//!
//! All operations are pure functions of their inputs, parameterized by a
//! [`PhysicalConfig`] (natural units by default).

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod absorption;
pub mod config;
pub mod electrostatic;
pub mod ensemble;
pub mod error;
pub mod magnetic;
pub mod wave;

pub use config::PhysicalConfig;
pub use error::{Error, Result};

pub use absorption::{
    absorption_sequence, alpha_factor, alpha_gamma_table, bethe_lamb_shift,
    bethe_lamb_shift_rest_cutoff, energy_comparison_curves, gamma, velocity_grid,
    weisskopf_self_energy, AbsorptionTrace, AlphaGammaRow, EnergyComparisonRow, SelfEnergyCurve,
    TraceRow,
};
pub use electrostatic::{
    energy_balance_audit, hamiltonian_first_order, interaction_hamiltonian, lagrange_density,
    AccelerationStep, BalanceReport, FirstOrderHamiltonian, InteractionSystem,
};
pub use ensemble::{
    cutoff_wavenumber, Dimension, EnergyShiftReport, KInterval, Profile, QuantumEnsemble,
};
pub use magnetic::{
    field_energy_density, phase_slope, phase_sweep, raw_phase, reduce_phase, shifted_field_energy,
    MagneticScenario, PhaseResult,
};
pub use wave::{
    spin_parameters, EnergyPartition, EprReport, FieldResiduals, FieldSample, ParticleKind,
    ParticleState, SpinParameters,
};
