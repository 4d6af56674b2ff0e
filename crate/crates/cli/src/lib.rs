//! `catext` command line: parses JSON inputs, dispatches to the core
//! library and emits a verification report.
//!
//! Exit status is 0 on pass, 1 on fail and 2 on refused or invalid input.

mod exact;
pub mod input;
mod numeric;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use input::Refusal;
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "catext", version, about = "Generalized group cohomology, finite 2-groups and Lie cocycle integration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Gauss–Legendre points per axis.
    #[arg(long, global = true, default_value_t = 10)]
    pub quad_order: usize,
    /// Step of finite-difference derivatives.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Acceptance tolerance of numerical checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartKind {
    Linear,
    Cubic,
}

/// JSON arguments accept inline JSON or a file path.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// H^n(G, A) in invariant-factor form with representative cocycles.
    Cohomology {
        /// `{"group":…, "coeff":…, "action":[…], "degree":n}`; flags override fields.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        coeff: Option<String>,
        /// One integer matrix per group element.
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Classes of H²(G, cone τ) and exactness of the long exact sequence.
    #[command(name = "cone-h2")]
    ConeH2 {
        /// `{"group":…, "tau":{"source":…, "target":…, "matrix":…}}`.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Verifies a 2-group given by its tables or by a crossed module.
    #[command(name = "check-2group")]
    Check2Group {
        #[arg(long)]
        input: String,
    },
    /// Builds the extension of a generalized cocycle and checks it.
    #[command(name = "build-extension")]
    BuildExtension {
        #[arg(long, alias = "input")]
        cocycle: String,
        /// Write the total 2-group tables here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Skeleton and band of the extension of a generalized cocycle.
    Band {
        #[arg(long, alias = "input")]
        extension: String,
    },
    /// Checks the identities of a generalized cocycle (F, Θ).
    #[command(name = "verify-cocycle")]
    VerifyCocycle {
        #[arg(long)]
        input: String,
    },
    /// F_{ω,β}(g, h) for chart coordinates `{"g":[…], "h":[…]}`.
    Integrate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        omega: String,
        #[arg(long, alias = "input")]
        pair: String,
    },
    /// d_gp F_{ω,β}(g, h, k) for chart coordinates `{"g":…, "h":…, "k":…}`.
    Defect {
        #[arg(long)]
        group: String,
        #[arg(long)]
        omega: String,
        #[arg(long, alias = "input")]
        triple: String,
    },
    /// L(F_{ω,β})(x, y) for algebra vectors `{"x":[…], "y":[…]}`, compared with ω.
    #[command(name = "derive-lf")]
    DeriveLf {
        #[arg(long)]
        group: String,
        #[arg(long)]
        omega: String,
        #[arg(long, alias = "input")]
        pair: String,
    },
    /// Bracket of a builtin group's chart product, compared with its algebra.
    #[command(name = "derive-bracket")]
    DeriveBracket {
        #[arg(long)]
        group: String,
    },
    /// Winding cocycle of the circle and the covering group it defines.
    Covering {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Angles per axis of the exhaustive cocycle check.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integrates a Lie algebra with abelian 𝔤/𝔷(𝔤) to a 2-group and
    /// derives its bracket back.
    Pipeline {
        /// `heisenberg`, or structure constants as an n×n×n array.
        algebra: String,
        #[arg(long, value_enum, default_value_t = ChartKind::Linear)]
        chart: ChartKind,
    },
    /// Naturality of the exponential along a matrix homomorphism.
    #[command(name = "exp-check")]
    ExpCheck {
        /// su2-identity | u2-identity | su2-into-u2 | det-u2
        #[arg(long)]
        hom: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    pub fn is_numeric(&self) -> bool {
        !matches!(
            self,
            Command::Cohomology { .. } | Command::ConeH2 { .. } | Command::Check2Group { .. } | Command::BuildExtension { .. } | Command::Band { .. } | Command::VerifyCocycle { .. }
        )
    }

    pub fn verb(&self) -> &'static str {
        match self {
            Command::Cohomology { .. } => "cohomology",
            Command::ConeH2 { .. } => "cone-h2",
            Command::Check2Group { .. } => "check-2group",
            Command::BuildExtension { .. } => "build-extension",
            Command::Band { .. } => "band",
            Command::VerifyCocycle { .. } => "verify-cocycle",
            Command::Integrate { .. } => "integrate",
            Command::Defect { .. } => "defect",
            Command::DeriveLf { .. } => "derive-lf",
            Command::DeriveBracket { .. } => "derive-bracket",
            Command::Covering { .. } => "covering",
            Command::Pipeline { .. } => "pipeline",
            Command::ExpCheck { .. } => "exp-check",
        }
    }
}

pub(crate) type Provenance = BTreeMap<String, Value>;

impl Cli {
    fn provenance(&self) -> Provenance {
        let mut p = Provenance::new();
        p.insert("verb".into(), Value::from(self.command.verb()));
        if self.command.is_numeric() {
            p.insert("quad_order".into(), Value::from(self.quad_order));
            p.insert("fd_step".into(), Value::from(self.fd_step));
            p.insert("tolerance".into(), Value::from(self.tolerance));
        }
        p
    }
}

/// Runs one command; the report is returned, not printed.
pub fn execute(cli: &Cli) -> Report {
    let provenance = cli.provenance();
    let result = if cli.command.is_numeric() { numeric::run(cli, provenance.clone()) } else { exact::run(cli, provenance.clone()) };
    match result {
        Ok(r) => r.finish(),
        Err(Refusal(reason)) => Report::refused(reason, provenance).finish(),
    }
}

/// Parses `argv`, runs the command, writes the report and returns the exit status.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = execute(&cli);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    report.status.exit_code()
}
