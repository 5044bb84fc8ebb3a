use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bsymbol::bmetric::{Strategy, DEFAULT_WORD_BUDGET, DEFAULT_W_CAP};
use bsymbol::geometry::{Mode, DEFAULT_NODE_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "bsymbol", version, about = "Construct and certify MDS b-symbol codes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and write its matrix, ordering and report to --out.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Validate a matrix or ordering file and certify its code.
    Verify {
        file: PathBuf,
        #[arg(long)]
        b: Option<usize>,
        /// How matrix columns are read (matrix files only).
        #[arg(long)]
        mode: Option<Mode>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Minimum b-distance of the code of a matrix or ordering file.
    Mindist {
        file: PathBuf,
        #[arg(long)]
        b: usize,
        /// Treat the matrix as a generator matrix instead of a parity check.
        #[arg(long)]
        generator: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build a point ordering; print it or write it to --out.
    Order {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every embedded reference table.
    Tables,
    /// Whether an MDS (n, 2b+1)_q b-symbol code can exist.
    Feasible {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Ordering of PG(2,q), b = 2.
    Pg2,
    /// Seeded search in PG(b,q).
    Greedy,
    /// Seeded search over vectors of V(b,q).
    Vectors,
    /// Repeated standard basis of V(b,q).
    Tiling,
    /// Bases of V(b,q) sharing b - 1 vectors, concatenated.
    Concat,
    /// Constacyclic code of length (q^{b+1}-1)/(q-1), b >= 4.
    Constacyclic,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Pg2 => "pg2",
            Family::Greedy => "greedy",
            Family::Vectors => "vectors",
            Family::Tiling => "tiling",
            Family::Concat => "concat",
            Family::Constacyclic => "constacyclic",
        }
    }
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Field order or literal, e.g. `4`, `2^2` or `2^2/1,1,1`.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    /// Projective dimension (greedy; defaults to b).
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Exhaustive,
    Certified,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Distance computation.
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Maximum codewords enumerated exhaustively.
    #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
    pub budget_words: u64,
    /// Maximum node expansions in ordering searches.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget_nodes: u64,
    /// Largest Hamming weight enumerated by the certified method.
    #[arg(long, default_value_t = DEFAULT_W_CAP)]
    pub w_cap: usize,
}

impl SearchArgs {
    pub fn strategy(&self) -> Strategy {
        match self.method {
            Method::Auto => Strategy::Auto { budget: self.budget_words, w_cap: self.w_cap },
            Method::Exhaustive => Strategy::Exhaustive { budget: self.budget_words },
            Method::Certified => Strategy::Certified { w_cap: self.w_cap },
        }
    }
}
