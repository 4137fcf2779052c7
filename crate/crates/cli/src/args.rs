use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "spinoptics",
    version,
    about = "Two-by-two matrix optics as Lorentz transformations",
    after_help = "Chain syntax: elements separated by whitespace, e.g. \
                  \"dist(1) lens(2) dist(1)\". Elements: phase(φ) rot(θ) atten(η) \
                  xboost(χ) lens(f) dist(z) mat(αre, αim, βre, βim, γre, γim, δre, δim). \
                  Pass \"-\" to read the chain from stdin."
)]
pub struct Cli {
    /// Output format; CSV is available for the table commands (stokes, contract).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Read phase() and rot() angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Relative determinant tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_det: f64,

    /// Width of the parabolic band around |trace| = 2.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_cls: f64,

    /// Absolute tolerance on the focusing entry of a lens chain.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_focus: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Below,
    Above,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Product of the chain in beam order, its determinant and trace class.
    Compose {
        /// Chain text, or "-" for stdin.
        chain: String,
    },
    /// The 4×4 Lorentz matrix of the composed chain.
    Lift {
        /// Chain text, or "-" for stdin.
        chain: String,
    },
    /// Propagate a Stokes vector through the chain, element by element.
    Stokes {
        /// Chain text, or "-" for stdin.
        chain: String,
        /// Input Stokes vector S0,S1,S2,S3.
        #[arg(
            long = "in",
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        input: Vec<f64>,
        /// Scale the input coherence between the beams by r in [0, 1].
        #[arg(long)]
        decohere: Option<f64>,
    },
    /// One-lens system: chain matrix, focus verdict and, for equal arms, the core decomposition.
    Lens {
        #[arg(long, allow_negative_numbers = true)]
        z1: f64,
        #[arg(long, allow_negative_numbers = true)]
        z2: f64,
        #[arg(long, allow_negative_numbers = true)]
        f: f64,
        /// Require the core decomposition (needs z1 = z2 and z/f > 0).
        #[arg(long)]
        decompose: bool,
    },
    /// Group-contraction table approaching x = 2.
    Contract {
        #[arg(long, value_enum)]
        side: SideArg,
        /// Comma-separated distances from x = 2, each in (0, 1).
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
    },
}
