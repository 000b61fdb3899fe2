use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "paraprod", version, about = "Analytic paraproducts on weighted Bergman spaces")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Write the output here instead of stdout; the run manifest goes to
    /// `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Explicit manifest path (also when writing to stdout).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Exit with status 3 when any result is inconclusive or truncation-limited.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Quadrature settings as JSON, e.g. '{"radial_panels": 48}'.
    #[arg(long, global = true)]
    pub quad: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeminormKind {
    Bloch,
    Garsia,
    Lip,
    C1star,
    Bphi,
}

#[derive(Debug, Args, Serialize)]
pub struct Experiment {
    /// Symbol g as a series literal.
    #[arg(long)]
    pub symbol: String,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long)]
    pub weight: String,
    /// Test family JSON, e.g. '{"kind":"random_polys","count":40,"max_degree":8,"seed":1}'.
    #[arg(long)]
    pub family: String,
    /// Perturbation-ascent iterations per estimate.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// A^p_ω norm of a series.
    Norm {
        #[arg(long)]
        series: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        weight: String,
        /// Use polar quadrature even for p = 2.
        #[arg(long)]
        quadrature: bool,
    },
    /// Tent-space AT^p_2(ω) norm, optionally with a Monte-Carlo cross-check (p = 2).
    TentNorm {
        #[arg(long)]
        series: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        weight: String,
        #[arg(long, requires = "seed")]
        mc_samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Grid seminorms of a symbol (certified lower bounds).
    Seminorm {
        #[arg(long, value_enum)]
        kind: SeminormKind,
        #[arg(long)]
        series: String,
        /// Lipschitz order for --kind lip.
        #[arg(long)]
        s: Option<f64>,
        /// Weight for --kind c1star and --kind bphi.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Both sides of the Calderón-type formula.
    Calderon {
        #[arg(long)]
        series: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        weight: String,
    },
    /// Kernel integral against its model ω̂(|ξ|)/(1−|ξ|)^η.
    KernelCheck {
        /// ξ as [re, im].
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        weight: String,
    },
    /// Upper/lower doubling classification and the β exponent.
    WeightClass {
        #[arg(long)]
        weight: String,
        /// Radii as a JSON array (default: the built-in tail grid).
        #[arg(long)]
        grid: Option<String>,
    },
    /// ST-canonical form of an operator.
    Canonicalize {
        #[arg(long)]
        expr: String,
    },
    /// k-fold commutator with T, canonicalized.
    Commutator {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        k: usize,
    },
    /// Graded basis word for (m, n, j).
    Decompose {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
    /// Randomized exact identity suite.
    Identities {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Operator-norm lower bound.
    Opnorm {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        exp: Experiment,
    },
    /// Table of L_m = ‖(1/m)T_{g^m}‖ lower bounds (CSV).
    Radicality {
        #[command(flatten)]
        exp: Experiment,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Empirical constants of the power lemma (CSV).
    PowerLemma {
        #[command(flatten)]
        exp: Experiment,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Lower bounds for all two-letter words and the exact identities (CSV).
    TwoLetter {
        #[command(flatten)]
        exp: Experiment,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm { .. } => "norm",
            Command::TentNorm { .. } => "tent-norm",
            Command::Seminorm { .. } => "seminorm",
            Command::Calderon { .. } => "calderon",
            Command::KernelCheck { .. } => "kernel-check",
            Command::WeightClass { .. } => "weight-class",
            Command::Canonicalize { .. } => "canonicalize",
            Command::Commutator { .. } => "commutator",
            Command::Decompose { .. } => "decompose",
            Command::Identities { .. } => "identities",
            Command::Opnorm { .. } => "opnorm",
            Command::Radicality { .. } => "radicality",
            Command::PowerLemma { .. } => "power-lemma",
            Command::TwoLetter { .. } => "two-letter",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::TentNorm { seed, .. } => *seed,
            Command::Identities { seed, .. } => Some(*seed),
            Command::Opnorm { exp, .. }
            | Command::Radicality { exp, .. }
            | Command::PowerLemma { exp, .. }
            | Command::TwoLetter { exp } => Some(exp.seed),
            _ => None,
        }
    }
}
