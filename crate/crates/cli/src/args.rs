use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "walgebra", version, about = "Classical affine W-algebras: screening kernels, loop-group identities, hierarchies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub job: Job,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions, grading, indecomposable roots and condition (F).
    Algebra,
    /// Joint kernel of the screening operators up to --weight-max.
    Wgen,
    /// λ-bracket of two differential polynomials in V^k(g).
    Bracket {
        left: String,
        right: String,
    },
    /// Run a verification suite; exit code 1 on failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Local functionals of the W-algebra and their pairwise brackets.
    Hier,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Geometry,
    Hierarchy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// Algebra: A<n>, C<n>, sl<n>, sp<2n>; `bracket` and `verify axioms` also take gl<n>.
    #[arg(long = "type", global = true, default_value = "A1")]
    pub type_label: String,
    /// `principal` or a partition such as `2,2`.
    #[arg(long, global = true, default_value = "principal")]
    pub nilpotent: String,
    /// `default`, `0`, or `label=coef,...` in the top graded piece.
    #[arg(long, global = true, default_value = "default", allow_hyphen_values = true)]
    pub y: String,
    /// `k` for a symbolic level, or a nonzero rational.
    #[arg(long, global = true, default_value = "k", allow_hyphen_values = true)]
    pub level: String,
    #[arg(long, global = true, default_value = "3")]
    pub weight_max: String,
    /// Truncation order of the loop-group computations.
    #[arg(long = "N", short = 'N', global = true, default_value_t = 4)]
    pub truncation: usize,
    /// Comma-separated weights for `hier` and `verify hierarchy`.
    #[arg(long, global = true, default_value = "2,4", value_delimiter = ',')]
    pub weights: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Random samples for `verify axioms`.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    /// Largest monomial basis allowed in one weight of the kernel solve.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_monomials: usize,
}
