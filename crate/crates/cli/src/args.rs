use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "flatcert",
    version,
    about = "Certify independent compact flat cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Splitting type, number of split real places and normalization.
    AlgebraInspect(AlgebraArgs),
    /// Norm-one units of the standard order in a coordinate window.
    Units(UnitsArgs),
    /// The canonical staircase configuration as JSON, optionally as SVG.
    Config(ConfigArgs),
    /// Anchor a configuration in the unit group and certify its rank.
    Certify(CertifyArgs),
}

/// The algebra `(a, b)_F` with `F = Q(√d)`; `d = 1` means `F = Q`.
#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 1)]
    pub d: i64,
    /// Field element, e.g. "3", "-1/2", "0+1√d", "1+sqrt(d)".
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

impl AlgebraArgs {
    pub fn new(d: i64, a: &str, b: &str) -> Self {
        AlgebraArgs {
            d,
            a: a.into(),
            b: b.into(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct UnitsArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, default_value_t = 3)]
    pub height: u32,
    #[arg(long, default_value_t = 1)]
    pub level: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub height: u32,
    #[arg(long, default_value_t = 2)]
    pub level: u32,
    /// Bound for the normalization search when `a` is not positive.
    #[arg(long, default_value_t = 3)]
    pub normalize_bound: u32,
    /// Also write the certificate JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the intersection matrix as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Render the anchored configuration.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}
