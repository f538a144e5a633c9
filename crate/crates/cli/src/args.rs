use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "polyinv",
    version,
    about = "Exact invariants of substitution maps z -> q*z + r(x) and power-gap identities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Comma-separated variable names; the last one is the substituted variable
    #[arg(long, global = true, default_value = "x,y,z", value_delimiter = ',')]
    pub vars: Vec<String>,

    /// Cyclotomic field index M (coefficients in Q(zeta_M), written with `w`)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub field: u32,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the map z -> MAP and list its orbit and invariant generator
    Classify {
        /// Image of z
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Write an invariant polynomial as a polynomial in the generator b
    Decompose {
        /// Image of z
        #[arg(allow_hyphen_values = true)]
        map: String,
        /// Polynomial to decompose
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Generator to use instead of the orbit product (a nonzero multiple of it)
        #[arg(long, allow_hyphen_values = true)]
        generator: Option<String>,
    },
    /// Cauchy factorization, E2, E3 and the expansion of E3 in b = z(x+y+z) for a prime p
    Fermat {
        p: u64,
        /// Include E3 itself in the output
        #[arg(long)]
        with_e3: bool,
    },
    /// Check Catalan's identity for an odd exponent n > 3
    Catalan { n: u64 },
    /// Run verification suites
    Suite {
        #[arg(value_enum)]
        selection: Selection,
        /// Largest prime for the prime-indexed suites (defaults: 31 cauchy, 19 granville)
        #[arg(long)]
        max_p: Option<u64>,
        /// Number of random round-trip cases
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Seed for the random suites
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Selection {
    Granville,
    Cauchy,
    Catalan,
    Roundtrip,
    Lemmas,
    All,
}
