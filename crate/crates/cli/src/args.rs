use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gmconn",
    version,
    about = "Exact monodromy and Gauss–Manin connections of arrangement complements"
)]
pub struct Cli {
    /// Arrangement file (defaults to the shipped four-line example).
    #[arg(long, global = true)]
    pub arrangement: Option<PathBuf>,
    /// Group presentation file.
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    /// Endomorphism file: one image word per generator.
    #[arg(long, global = true)]
    pub endomorphism: Option<PathBuf>,
    /// Relator certificate for the endomorphism.
    #[arg(long, global = true)]
    pub certificate: Option<PathBuf>,
    /// Seed for generic probe points.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON object per line.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingChoice {
    /// Laurent polynomials in x; points are torus points t.
    X,
    /// Polynomials in y; points are weights λ.
    Y,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Circuits, broken circuits, nbc basis and Betti numbers.
    Info,
    /// Aomoto complex boundaries μ^q.
    Aomoto,
    /// Fox-calculus universal complex Δ^q.
    Fox,
    /// Monodromy matrices Φ^q of the endomorphism.
    Monodromy,
    /// Formal connection Ω^q with certified spectra.
    Connection {
        /// Weights λ at which to evaluate Ω (Gauss–Manin matrices).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<String>>,
    },
    /// Cohomology of a specialization and the resonance verdict.
    Specialize {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        at: Vec<String>,
        #[arg(long, value_enum, default_value_t = RingChoice::X)]
        ring: RingChoice,
    },
    /// Maps induced on top cohomology through a projection Ξ.
    Induced {
        #[arg(long)]
        xi: PathBuf,
        /// Subtorus on which Ξ is a cocycle (`x<j> = <monomial>` lines).
        #[arg(long)]
        locus: Option<PathBuf>,
        /// Torus point at which to evaluate Φ̄.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<String>>,
    },
    /// Runs every identity check on the inputs.
    Verify,
}
