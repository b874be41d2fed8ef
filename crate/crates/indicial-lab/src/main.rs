//! Command-line surface: sector sweeps, reports, figures.
//!
//! Exit codes: 0 all claims verified, 2 usage, 3 claim violation,
//! 4 numeric non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use indicial_lab::config::{Config, Overrides};
use indicial_lab::expansion::{self, BoundaryData, BoundaryEntry, RenderFormat};
use indicial_lab::polynomials::SolveError;
use indicial_lab::report;
use indicial_lab::roots::{self, RootsError, SpecialRoots};
use indicial_lab::scattering;
use indicial_lab::sectors::{SectorId, Star6Sign};
use indicial_lab::spectrum::FormKind;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_CLAIM_VIOLATION: u8 = 3;
const EXIT_NON_CONVERGENCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "indicial-lab",
    about = "Indicial roots of the linearized supergravity operator on H7 x S4: \
             sector sweeps, scattering phases, boundary expansions",
    version
)]
struct Cli {
    #[command(flatten)]
    config_flags: ConfigFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigFlags {
    /// Flat key=value config file; flags given here override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Sweep bound on the sphere eigenvalues
    #[arg(long, global = true)]
    lambda_max: Option<u64>,
    /// Distance to Re s = 3 below which a root is special
    #[arg(long, global = true)]
    line_tol: Option<f64>,
    /// Scaled residual target for root polishing
    #[arg(long, global = true)]
    root_residual_tol: Option<f64>,
    /// Root pairing/dedup tolerance
    #[arg(long, global = true)]
    pairing_tol: Option<f64>,
    /// Remainder order parameter in (0, 1)
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Directory for generated report bundles
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Function4,
    Closed1,
    Coclosed1,
    Function6,
}

impl From<KindArg> for FormKind {
    fn from(k: KindArg) -> FormKind {
        match k {
            KindArg::Function4 => FormKind::Function4,
            KindArg::Closed1 => FormKind::Closed1Form4,
            KindArg::Coclosed1 => FormKind::Coclosed1Form4,
            KindArg::Function6 => FormKind::Function6,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue/multiplicity table as CSV
    Spectrum {
        /// Eigenform family
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Largest eigenvalue to list
        #[arg(long)]
        max: u64,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the root table, verify the structural claims, write reports
    Roots,
    /// Render the root scatter figure as SVG
    Figure {
        /// Keep only these sectors (comma-separated names)
        #[arg(long, value_delimiter = ',')]
        sectors: Option<Vec<SectorId>>,
        /// Write to a file instead of the bundle location
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scattering phase table as CSV
    Scattering {
        /// Use the three special α values from the computed roots
        #[arg(long, conflicts_with = "alphas")]
        auto: bool,
        /// Explicit α values
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Largest sphere mode index
        #[arg(long, default_value_t = 50)]
        kmax: u32,
        /// Also run the leading-profile realness check per α at this mode
        #[arg(long)]
        profile_mode: Option<u32>,
        /// Override phase for the realness check (re,im), e.g. for the
        /// harmonic-sector α where no scalar formula applies
        #[arg(long, number_of_values = 2, value_delimiter = ',')]
        profile_phase: Option<Vec<f64>>,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render the leading-order boundary expansion
    Expansion {
        /// Amplitude of the harmonic 3-form datum, as re or re,im
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        v1: Option<Vec<f64>>,
        /// Amplitude of the λ=16 scalar datum
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        v2: Option<Vec<f64>>,
        /// Amplitude of the λ=40 scalar datum
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        v3: Option<Vec<f64>>,
        /// ∗₆ branch of v1
        #[arg(long, value_enum, default_value = "plus-i")]
        v1_star6: Star6Arg,
        /// Flat key=value data file (v1_re, v1_im, v2_re, ..., v1_star6)
        #[arg(long)]
        data: Option<PathBuf>,
        /// 𝕊⁶ mode index for the scattering values
        #[arg(long, default_value_t = 0)]
        mode: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Full deterministic bundle: roots, gap, symmetry, scattering,
    /// expansion, figure
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Star6Arg {
    PlusI,
    MinusI,
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let config = match load_config(&cli.config_flags) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command, config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("INDICIAL_LAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn load_config(flags: &ConfigFlags) -> Result<Config, String> {
    let base = match &flags.config {
        Some(path) => Config::from_file(path).map_err(|e| e.to_string())?,
        None => Config::default(),
    };
    let config = base.apply(&Overrides {
        lambda_max: flags.lambda_max,
        line_tol: flags.line_tol,
        root_residual_tol: flags.root_residual_tol,
        pairing_tol: flags.pairing_tol,
        delta: flags.delta,
        output_dir: flags.output_dir.clone(),
    });
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

#[derive(Debug, thiserror::Error)]
enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Run(#[from] report::RunError),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Scattering(#[from] scattering::ScatteringError),
    #[error(transparent)]
    Expansion(#[from] expansion::ExpansionError),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

fn classify(e: &CmdError) -> u8 {
    match e {
        CmdError::Usage(_) => EXIT_USAGE,
        CmdError::Roots(RootsError::LambdaMaxTooSmall(_)) => EXIT_USAGE,
        CmdError::Roots(RootsError::Solve { source, .. }) => classify_solve(source),
        CmdError::Run(report::RunError::Roots(RootsError::LambdaMaxTooSmall(_))) => EXIT_USAGE,
        CmdError::Run(report::RunError::Roots(RootsError::Solve { source, .. })) => {
            classify_solve(source)
        }
        CmdError::Expansion(_) | CmdError::Scattering(_) => EXIT_USAGE,
        _ => 1,
    }
}

fn classify_solve(e: &SolveError) -> u8 {
    match e {
        SolveError::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CmdError> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content).map_err(|e| CmdError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
    }
}

fn run(command: Command, config: Config) -> Result<u8, CmdError> {
    match command {
        Command::Spectrum { kind, max, output } => {
            let csv = report::spectrum_csv(kind.into(), max);
            emit(output.as_ref(), &csv)?;
            Ok(EXIT_OK)
        }
        Command::Roots => {
            let outcome = report::run_all(&config)?;
            let summary_json =
                std::fs::read_to_string(&outcome.bundle.roots_summary).unwrap_or_default();
            print!("{summary_json}");
            if outcome.claims.verified {
                Ok(EXIT_OK)
            } else {
                eprintln!("claim violation: see the claims block above");
                Ok(EXIT_CLAIM_VIOLATION)
            }
        }
        Command::Figure { sectors, output } => {
            let table = roots::build_table(config.lambda_max, config.tolerances())?;
            let table = match &sectors {
                Some(keep) => table.filtered(|r| keep.contains(&r.sector)),
                None => table,
            };
            let svg = report::figure_svg(&table);
            match output {
                Some(path) => emit(Some(&path), &svg)?,
                None => {
                    std::fs::create_dir_all(&config.output_dir).map_err(|e| CmdError::Io {
                        path: config.output_dir.display().to_string(),
                        message: e.to_string(),
                    })?;
                    let path = config.output_dir.join("figure.svg");
                    emit(Some(&path), &svg)?;
                    println!("wrote {}", path.display());
                }
            }
            Ok(EXIT_OK)
        }
        Command::Scattering {
            auto,
            alphas,
            kmax,
            profile_mode,
            profile_phase,
            output,
        } => {
            let alphas = match (auto, alphas) {
                (true, _) | (false, None) => SpecialRoots::compute().alphas().to_vec(),
                (false, Some(list)) => {
                    if list.is_empty() {
                        return Err(CmdError::Usage("no alpha values given".into()));
                    }
                    list
                }
            };
            let csv = report::scattering_csv(&alphas, kmax)?;
            emit(output.as_ref(), &csv)?;
            if let Some(mode) = profile_mode {
                let xs = scattering::log_spaced(50, 1e-4, 1.0);
                for &alpha in &alphas {
                    let phase2 = match &profile_phase {
                        Some(p) => Complex64::new(p[0], p[1]),
                        None => scattering::phase(mode, alpha)?.phase2(),
                    };
                    let dev = scattering::real_profile_check(alpha, phase2, &xs)?;
                    eprintln!("profile alpha={alpha:.12}: max imaginary deviation {dev:.3e}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Expansion {
            v1,
            v2,
            v3,
            v1_star6,
            data,
            mode,
            format,
            output,
        } => {
            let mut boundary = match &data {
                Some(path) => parse_boundary_file(path)?,
                None => BoundaryData::zero(),
            };
            if let Some(v) = v1 {
                boundary.v1 = BoundaryEntry::new("v1", parse_amplitude(&v));
            }
            if let Some(v) = v2 {
                boundary.v2 = BoundaryEntry::new("v2", parse_amplitude(&v));
            }
            if let Some(v) = v3 {
                boundary.v3 = BoundaryEntry::new("v3", parse_amplitude(&v));
            }
            boundary.v1_star6 = match v1_star6 {
                Star6Arg::PlusI => Star6Sign::PlusI,
                Star6Arg::MinusI => Star6Sign::MinusI,
            };
            let special = SpecialRoots::compute();
            let [a1, a2, a3] = special.alphas();
            let s1 = scattering::phase(mode, a1)?.s_value();
            let s2 = scattering::phase(mode, a2)?.s_value();
            let s3 = scattering::phase(mode, a3)?.s_value();
            let spec = expansion::build_expansion(&boundary, s1, s2, s3, config.delta)?;
            let rendered = match format {
                FormatArg::Text => expansion::render(&spec, RenderFormat::Text),
                FormatArg::Json => expansion::render(&spec, RenderFormat::Json),
            };
            emit(output.as_ref(), &rendered)?;
            Ok(EXIT_OK)
        }
        Command::All => {
            let outcome = report::run_all(&config)?;
            for path in outcome.bundle.paths() {
                println!("wrote {}", path.display());
            }
            if outcome.claims.verified {
                Ok(EXIT_OK)
            } else {
                eprintln!(
                    "claim violation: see {}",
                    outcome.bundle.roots_summary.display()
                );
                Ok(EXIT_CLAIM_VIOLATION)
            }
        }
    }
}

fn parse_amplitude(parts: &[f64]) -> Complex64 {
    match parts {
        [re] => Complex64::new(*re, 0.0),
        [re, im] => Complex64::new(*re, *im),
        _ => Complex64::ZERO,
    }
}

/// Boundary data file: flat key=value with keys v1_re, v1_im, v2_re, v2_im,
/// v3_re, v3_im, v1_star6 (plus_i|minus_i). Empty file means zero data.
fn parse_boundary_file(path: &PathBuf) -> Result<BoundaryData, CmdError> {
    let text = std::fs::read_to_string(path).map_err(|e| CmdError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut data = BoundaryData::zero();
    let mut amplitudes = [[0.0f64; 2]; 3];
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(CmdError::Usage(format!(
                "data file line {}: expected key=value, got '{trimmed}'",
                idx + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        let parse_f = |v: &str| {
            v.parse::<f64>().map_err(|_| {
                CmdError::Usage(format!("data file line {}: bad number '{v}'", idx + 1))
            })
        };
        match key {
            "v1_re" => amplitudes[0][0] = parse_f(value)?,
            "v1_im" => amplitudes[0][1] = parse_f(value)?,
            "v2_re" => amplitudes[1][0] = parse_f(value)?,
            "v2_im" => amplitudes[1][1] = parse_f(value)?,
            "v3_re" => amplitudes[2][0] = parse_f(value)?,
            "v3_im" => amplitudes[2][1] = parse_f(value)?,
            "v1_star6" => {
                data.v1_star6 = match value {
                    "plus_i" | "+i" => Star6Sign::PlusI,
                    "minus_i" | "-i" => Star6Sign::MinusI,
                    other => {
                        return Err(CmdError::Usage(format!(
                            "data file line {}: unknown star6 branch '{other}'",
                            idx + 1
                        )))
                    }
                }
            }
            other => {
                return Err(CmdError::Usage(format!(
                    "data file line {}: unknown key '{other}'",
                    idx + 1
                )))
            }
        }
    }
    data.v1 = BoundaryEntry::new("v1", Complex64::new(amplitudes[0][0], amplitudes[0][1]));
    data.v2 = BoundaryEntry::new("v2", Complex64::new(amplitudes[1][0], amplitudes[1][1]));
    data.v3 = BoundaryEntry::new("v3", Complex64::new(amplitudes[2][0], amplitudes[2][1]));
    Ok(data)
}
