//! `elwave`: command-line interface to the extended-electron numerical
//! laboratory.
//!
//! Every subcommand runs one model operation, writes plot-ready CSV (or
//! JSON) tables plus a run manifest, and exits with 0 on success, 2 on usage
//! errors, 3 on domain errors, and 4 on I/O errors. Failures print a single
//! machine-parseable line to stderr.

mod emit;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use elwave::ensemble::{Dimension, Profile, QuantumEnsemble};
use elwave::{
    absorption_sequence, alpha_gamma_table, bethe_lamb_shift, energy_balance_audit,
    energy_comparison_curves, raw_phase, reduce_phase, weisskopf_self_energy, AccelerationStep,
    ParticleState, PhysicalConfig,
};

use emit::{Emitter, Format, Table, Value};

#[derive(Debug, Parser)]
#[command(
    name = "elwave",
    version,
    about = "Extended-electron wave model laboratory"
)]
struct Cli {
    /// Config file (`key = value`, one constant per line); natural units
    /// when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (default: $ELWAVE_OUT or ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Table output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DimArg {
    One,
    Radial3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Uniform,
    Gaussian,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the intrinsic plane-wave fields: columns (x, rho, E, B, phi).
    Fields(FieldsArgs),
    /// Sample the spin oscillation: columns (x, spin).
    Spin(SpinArgs),
    /// Audit an acceleration history against the photon-emission balance.
    Electrostatic(ElectrostaticArgs),
    /// Interferometric phase over a field sweep: columns (B, raw, alpha, n).
    Phase(PhaseArgs),
    /// Build, modify and collapse a quantum ensemble.
    Ensemble(EnsembleArgs),
    /// Photon-absorption trace: columns (n, E_n, u_n, alpha_n).
    Absorb(AbsorbArgs),
    /// Virtual-mass factor against the Lorentz factor on the fixed grid.
    AlphaGamma(AlphaGammaArgs),
    /// Weisskopf self-energies over electron radii: columns (a, W_st, W_fluct).
    Selfenergy(SelfEnergyArgs),
    /// Bethe Lamb-shift value for a cutoff and average gap.
    Lambshift(LambShiftArgs),
}

#[derive(Debug, Args)]
struct FieldsArgs {
    /// Propagation speed.
    #[arg(long, default_value_t = 0.5)]
    u: f64,
    /// Sample time.
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long, default_value_t = 0.0)]
    x_min: f64,
    /// Defaults to two wavelengths.
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long, default_value_t = 257)]
    samples: usize,
}

#[derive(Debug, Args)]
struct SpinArgs {
    #[arg(long, default_value_t = 0.5)]
    u: f64,
    #[arg(long, default_value_t = 0.0)]
    x_min: f64,
    /// Defaults to one wavelength (two spin periods).
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long, default_value_t = 257)]
    samples: usize,
}

#[derive(Debug, Args)]
struct ElectrostaticArgs {
    /// JSON file: array of {"potential_step": .., "delta_kinetic": ..}.
    #[arg(long)]
    history: PathBuf,
    /// Charge density amplitude of the accelerated electron.
    #[arg(long, default_value_t = 1.0)]
    sigma0: f64,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    /// Path length inside the field region.
    #[arg(long, default_value_t = 1.0)]
    l: f64,
    /// Beam wavelength.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    u: f64,
    /// Single field value (overrides the sweep flags).
    #[arg(long, short = 'b', alias = "B")]
    b: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    b_min: f64,
    #[arg(long, default_value_t = 1.0)]
    b_max: f64,
    #[arg(long, default_value_t = 11)]
    b_steps: usize,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    /// Total energy defining the cutoff.
    #[arg(long, default_value_t = 1.0)]
    e_total: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Uniform)]
    profile: ProfileArg,
    /// Gaussian center as a fraction of the cutoff.
    #[arg(long, default_value_t = 0.5)]
    gaussian_center: f64,
    /// Gaussian width as a fraction of the cutoff.
    #[arg(long, default_value_t = 1.0 / 6.0)]
    gaussian_width: f64,
    /// k-grid resolution (>= 64).
    #[arg(long, default_value_t = 513)]
    resolution: usize,
    #[arg(long, value_enum, default_value_t = DimArg::One)]
    dim: DimArg,
    /// Constant potential step applied before any measurement; repeat the
    /// flag for a sequence of steps.
    #[arg(long = "potential", allow_hyphen_values = true)]
    potential: Vec<f64>,
    /// Retarding-field analyzer threshold.
    #[arg(long)]
    v_rfa: Option<f64>,
    #[arg(long, default_value_t = -15.0)]
    domain_min: f64,
    #[arg(long, default_value_t = 15.0)]
    domain_max: f64,
    /// Normalize over the domain before emitting position-space data.
    #[arg(long, default_value_t = false)]
    normalize: bool,
    /// Interaction-free exclusion region (both bounds required).
    #[arg(long, requires = "exclude_max")]
    exclude_min: Option<f64>,
    #[arg(long, requires = "exclude_min")]
    exclude_max: Option<f64>,
    /// Position-space sample count.
    #[arg(long, default_value_t = 257)]
    r_samples: usize,
}

#[derive(Debug, Args)]
struct AbsorbArgs {
    /// Photon quantum of energy (must satisfy 0 < hw0 < m*c^2).
    #[arg(long)]
    hw0: f64,
    #[arg(long, default_value_t = 10_000_000)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Debug, Args)]
struct AlphaGammaArgs {
    /// Photon quantum; must resolve u/c = 0.05 (hw0 <= 0.0025*m*c^2).
    #[arg(long, default_value_t = 1e-4)]
    hw0: f64,
}

#[derive(Debug, Args)]
struct SelfEnergyArgs {
    #[arg(long, default_value_t = 1e-3)]
    a_min: f64,
    #[arg(long, default_value_t = 1.0)]
    a_max: f64,
    /// Number of log-spaced radii.
    #[arg(long, default_value_t = 30)]
    points: usize,
}

#[derive(Debug, Args)]
struct LambShiftArgs {
    /// The multiplicative constant C.
    #[arg(long, default_value_t = 1.0)]
    c_const: f64,
    /// Average energy difference between states.
    #[arg(long)]
    delta_e: f64,
    /// Field-energy cutoff; defaults to m*c^2.
    #[arg(long)]
    k: Option<f64>,
}

/// CLI failure with its exit code.
enum Failure {
    Usage(String),
    Domain(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn line(&self) -> String {
        match self {
            Failure::Usage(message) => format!("error: usage: {message}"),
            Failure::Domain(message) => format!("error: domain: {message}"),
            Failure::Io(message) => format!("error: io: {message}"),
        }
    }
}

impl From<elwave::Error> for Failure {
    fn from(err: elwave::Error) -> Self {
        match err {
            elwave::Error::Config(message) => Failure::Usage(format!("config: {message}")),
            elwave::Error::Domain(message) => Failure::Domain(message),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.line());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (config, config_source) = match &cli.config {
        Some(path) => {
            let body = std::fs::read_to_string(path)?;
            (
                PhysicalConfig::from_key_values(&body)?,
                Some(path.display().to_string()),
            )
        }
        None => (PhysicalConfig::natural_units(), None),
    };
    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os("ELWAVE_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let emitter = |name: &str, parameters: BTreeMap<String, String>| {
        Emitter::new(&out_dir, format, name, parameters, config_source.clone())
    };

    match cli.command {
        Command::Fields(args) => {
            let state = ParticleState::electron(args.u, config)?;
            let x_max = args.x_max.unwrap_or(2.0 * state.wavelength);
            let mut parameters = BTreeMap::new();
            parameters.insert("u".into(), args.u.to_string());
            parameters.insert("t".into(), args.t.to_string());
            parameters.insert("x_min".into(), args.x_min.to_string());
            parameters.insert("x_max".into(), x_max.to_string());
            parameters.insert("samples".into(), args.samples.to_string());
            let mut emitter = emitter("fields", parameters)?;
            let mut table = Table::new(vec!["x", "rho", "E", "B", "phi"]);
            for i in 0..args.samples {
                let x = grid_point(args.x_min, x_max, i, args.samples);
                let sample = state.sample_intrinsic_fields(x, args.t);
                table.push(vec![
                    Value::Float(x),
                    Value::Float(sample.rho),
                    Value::Float(sample.e_field),
                    Value::Float(sample.b_field),
                    Value::Float(sample.phi),
                ]);
            }
            emitter.write_table("fields", &table)?;
            emitter.finish()?;
        }
        Command::Spin(args) => {
            let state = ParticleState::electron(args.u, config)?;
            let x_max = args.x_max.unwrap_or(state.wavelength);
            let mut parameters = BTreeMap::new();
            parameters.insert("u".into(), args.u.to_string());
            parameters.insert("x_min".into(), args.x_min.to_string());
            parameters.insert("x_max".into(), x_max.to_string());
            parameters.insert("samples".into(), args.samples.to_string());
            let mut emitter = emitter("spin", parameters)?;
            let mut table = Table::new(vec!["x", "spin"]);
            for i in 0..args.samples {
                let x = grid_point(args.x_min, x_max, i, args.samples);
                table.push(vec![
                    Value::Float(x),
                    Value::Float(state.spin_orientation(x)),
                ]);
            }
            emitter.write_table("spin", &table)?;
            emitter.finish()?;
        }
        Command::Electrostatic(args) => {
            let body = std::fs::read_to_string(&args.history)?;
            let steps: Vec<AccelerationStep> = serde_json::from_str(&body)
                .map_err(|e| Failure::Usage(format!("history file: {e}")))?;
            let report = energy_balance_audit(&steps, args.sigma0)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("history".into(), args.history.display().to_string());
            parameters.insert("sigma0".into(), args.sigma0.to_string());
            let mut emitter = emitter("electrostatic", parameters)?;
            emitter.write_json("electrostatic", &report)?;
            emitter.finish()?;
            if !report.balanced {
                eprintln!("warning: history violates the photon-emission energy balance");
            }
        }
        Command::Phase(args) => {
            let (b_min, b_max, b_steps) = match args.b {
                Some(b) => (b, b, 1),
                None => (args.b_min, args.b_max, args.b_steps.max(1)),
            };
            let mut parameters = BTreeMap::new();
            parameters.insert("l".into(), args.l.to_string());
            parameters.insert("lambda".into(), args.lambda.to_string());
            parameters.insert("u".into(), args.u.to_string());
            parameters.insert("b_min".into(), b_min.to_string());
            parameters.insert("b_max".into(), b_max.to_string());
            parameters.insert("b_steps".into(), b_steps.to_string());
            let mut emitter = emitter("phase", parameters)?;
            let mut table = Table::new(vec!["B", "raw", "alpha", "n"]);
            for i in 0..b_steps {
                let b = grid_point(b_min, b_max, i, b_steps);
                let raw = raw_phase(args.l, args.lambda, args.u, b, config.rho_bar)?;
                let result = reduce_phase(raw);
                table.push(vec![
                    Value::Float(b),
                    Value::Float(result.raw),
                    Value::Float(result.alpha),
                    Value::Int(result.winding),
                ]);
            }
            emitter.write_table("phase", &table)?;
            emitter.finish()?;
        }
        Command::Ensemble(args) => run_ensemble(args, config, emitter)?,
        Command::Absorb(args) => {
            let trace = absorption_sequence(args.hw0, args.n_max, args.tol, &config)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("hw0".into(), args.hw0.to_string());
            parameters.insert("n_max".into(), args.n_max.to_string());
            parameters.insert("tol".into(), args.tol.to_string());
            let mut emitter = emitter("absorb", parameters)?;
            let mut table = Table::new(vec!["n", "E_n", "u_n", "alpha_n"]);
            for row in &trace.rows {
                table.push(vec![
                    Value::Int(row.n as i64),
                    Value::Float(row.energy),
                    Value::Float(row.velocity),
                    Value::OptFloat(row.alpha),
                ]);
            }
            emitter.write_table("absorb", &table)?;
            emitter.finish()?;
            if !trace.converged {
                eprintln!("warning: trace reached n_max before the increment fell below tol");
            }
        }
        Command::AlphaGamma(args) => {
            let table_rows = alpha_gamma_table(args.hw0, &config)?;
            let energy_rows = energy_comparison_curves(args.hw0, &config)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("hw0".into(), args.hw0.to_string());
            let mut emitter = emitter("alpha-gamma", parameters)?;
            let mut table = Table::new(vec!["u_over_c", "alpha", "gamma", "rel_deviation"]);
            for row in &table_rows {
                table.push(vec![
                    Value::Float(row.u_over_c),
                    Value::Float(row.alpha),
                    Value::Float(row.gamma),
                    Value::Float(row.rel_deviation),
                ]);
            }
            emitter.write_table("alpha_gamma", &table)?;
            let mut energy = Table::new(vec!["u_over_c", "E_interaction", "E_SR"]);
            for row in &energy_rows {
                energy.push(vec![
                    Value::Float(row.u_over_c),
                    Value::Float(row.e_interaction),
                    Value::Float(row.e_sr),
                ]);
            }
            emitter.write_table("energy_comparison", &energy)?;
            emitter.finish()?;
        }
        Command::Selfenergy(args) => {
            let range_valid = args.a_min > 0.0 && args.a_max >= args.a_min && args.points >= 1;
            if !range_valid {
                return Err(Failure::Domain(format!(
                    "radius range must satisfy 0 < a_min <= a_max with at least one point, got [{}, {}] x {}",
                    args.a_min, args.a_max, args.points
                )));
            }
            let radii: Vec<f64> = if args.points == 1 {
                vec![args.a_min]
            } else {
                let log_min = args.a_min.ln();
                let log_max = args.a_max.ln();
                (0..args.points)
                    .map(|i| {
                        (log_min + (log_max - log_min) * i as f64 / (args.points - 1) as f64).exp()
                    })
                    .collect()
            };
            let curve = weisskopf_self_energy(&radii, &config)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("a_min".into(), args.a_min.to_string());
            parameters.insert("a_max".into(), args.a_max.to_string());
            parameters.insert("points".into(), args.points.to_string());
            let mut emitter = emitter("selfenergy", parameters)?;
            let mut table = Table::new(vec!["a", "W_st", "W_fluct"]);
            for i in 0..curve.radii.len() {
                table.push(vec![
                    Value::Float(curve.radii[i]),
                    Value::Float(curve.electrostatic[i]),
                    Value::Float(curve.fluctuation[i]),
                ]);
            }
            emitter.write_table("selfenergy", &table)?;
            emitter.finish()?;
        }
        Command::Lambshift(args) => {
            let cutoff = args.k.unwrap_or_else(|| config.rest_energy());
            let shift = bethe_lamb_shift(args.c_const, cutoff, args.delta_e)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("c_const".into(), args.c_const.to_string());
            parameters.insert("delta_e".into(), args.delta_e.to_string());
            parameters.insert("k".into(), cutoff.to_string());
            let mut emitter = emitter("lambshift", parameters)?;
            emitter.write_json(
                "lambshift",
                &serde_json::json!({
                    "c_const": args.c_const,
                    "cutoff": cutoff,
                    "delta_e_avg": args.delta_e,
                    "shift": shift,
                }),
            )?;
            emitter.finish()?;
        }
    }
    Ok(())
}

fn run_ensemble<F>(args: EnsembleArgs, config: PhysicalConfig, emitter: F) -> Result<(), Failure>
where
    F: FnOnce(&str, BTreeMap<String, String>) -> std::io::Result<Emitter>,
{
    let profile = match args.profile {
        ProfileArg::Uniform => Profile::Uniform,
        ProfileArg::Gaussian => Profile::Gaussian {
            center_frac: args.gaussian_center,
            width_frac: args.gaussian_width,
        },
    };
    let dim = match args.dim {
        DimArg::One => Dimension::One,
        DimArg::Radial3 => Dimension::RadialThree,
    };
    // Radial domains live on r >= 0.
    let domain_min = match dim {
        Dimension::RadialThree => args.domain_min.max(0.0),
        Dimension::One => args.domain_min,
    };
    let domain = (domain_min, args.domain_max);

    let mut parameters = BTreeMap::new();
    parameters.insert("e_total".into(), args.e_total.to_string());
    parameters.insert("profile".into(), format!("{:?}", args.profile));
    parameters.insert("resolution".into(), args.resolution.to_string());
    parameters.insert("dim".into(), format!("{:?}", args.dim));
    parameters.insert("domain_min".into(), domain.0.to_string());
    parameters.insert("domain_max".into(), domain.1.to_string());
    parameters.insert("normalize".into(), args.normalize.to_string());
    if !args.potential.is_empty() {
        let steps: Vec<String> = args.potential.iter().map(f64::to_string).collect();
        parameters.insert("potential".into(), steps.join(","));
    }
    if let Some(v) = args.v_rfa {
        parameters.insert("v_rfa".into(), v.to_string());
    }
    if let (Some(lo), Some(hi)) = (args.exclude_min, args.exclude_max) {
        parameters.insert("exclude_min".into(), lo.to_string());
        parameters.insert("exclude_max".into(), hi.to_string());
    }
    let mut emitter = emitter("ensemble", parameters)?;

    let built = QuantumEnsemble::build_free(args.e_total, profile, args.resolution, dim, config)?;
    emitter.write_table("ensemble_k_before", &k_table(&built))?;

    let mut current = built;
    for &potential in &args.potential {
        current = current.apply_potential(potential)?;
    }
    if let Some(v_rfa) = args.v_rfa {
        let (collapsed, transmission) = current.retarding_field_collapse(v_rfa)?;
        current = collapsed;
        if current.is_empty() {
            eprintln!("warning: retarding field blocked every ensemble member (transmission 0)");
        } else {
            eprintln!("transmission fraction {transmission}");
        }
    }
    emitter.write_table("ensemble_k_after", &k_table(&current))?;

    if args.normalize && !current.is_empty() {
        current = current.normalize(domain)?;
    }
    if let (Some(lo), Some(hi)) = (args.exclude_min, args.exclude_max) {
        let (conditioned, report) = current.interaction_free_condition((lo, hi), domain)?;
        emitter.write_json("ensemble_interaction_free", &report)?;
        current = conditioned;
    }

    let mut position = Table::new(vec!["r", "re_psi", "im_psi", "psi_sq"]);
    for i in 0..args.r_samples {
        let r = grid_point(domain.0, domain.1, i, args.r_samples);
        let psi = current.evaluate_at(r);
        position.push(vec![
            Value::Float(r),
            Value::Float(psi.re),
            Value::Float(psi.im),
            Value::Float(psi.norm_sqr()),
        ]);
    }
    emitter.write_table("ensemble_position", &position)?;
    emitter.finish()?;
    Ok(())
}

fn k_table(ensemble: &QuantumEnsemble) -> Table {
    let mut table = Table::new(vec!["k", "psi0_sq"]);
    for (k, density) in ensemble.k_density() {
        table.push(vec![Value::Float(k), Value::Float(density)]);
    }
    table
}

fn grid_point(min: f64, max: f64, index: usize, count: usize) -> f64 {
    if count <= 1 {
        min
    } else {
        min + (max - min) * (index as f64 / (count - 1) as f64)
    }
}
