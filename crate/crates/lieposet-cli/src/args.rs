use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "lieposet", version, about = "Index, Frobenius and topology computations for Lie poset algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    /// Poset JSON file, or the JSON itself when it starts with `{`.
    #[arg(long)]
    pub poset: String,
    /// Algebra type; defaults to the file's `variant` field, else A.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Use gl instead of sl in type A.
    #[arg(long)]
    pub gl: bool,
}

#[derive(Args, Debug)]
pub struct SamplingArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    #[arg(long = "coeff-bound", default_value_t = 65536)]
    pub coeff_bound: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified index.
    Index {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Certified Frobenius verdict (exit 3 when undetermined).
    Frobenius {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Combinatorial Frobenius test for heights up to two.
    Classify {
        #[arg(long)]
        poset: String,
    },
    /// Betti numbers of the order complex.
    Homology {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long = "max-degree", default_value_t = 2)]
        max_degree: usize,
    },
    /// Discrete Morse functions: build from a gluing trace, or check values.
    Morse {
        /// Gluing trace JSON (from `generate`).
        #[arg(long, conflicts_with_all = ["poset", "values", "example"])]
        trace: Option<String>,
        #[arg(long, requires = "values")]
        poset: Option<String>,
        /// `[[face, value], …]` with 1-based faces and rational values.
        #[arg(long, requires = "poset")]
        values: Option<String>,
        /// The single-block example.
        #[arg(long)]
        example: bool,
    },
    /// Frobenius functional, principal element and its spectrum.
    Spectrum {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Pure height-two posets glued from P(1,1,2) and P(2,1,1) blocks.
    Generate {
        #[arg(long)]
        blocks: usize,
        /// Comma-separated rule tags; defaults to the index-preserving rules.
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<String>>,
        /// Allow index-raising rules.
        #[arg(long)]
        exploratory: bool,
    },
    /// Check the index, Frobenius, homology and spectrum laws over all small posets; records go to --out as JSONL.
    Sweep {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Comma-separated subset of formulas,frobenius,homology,spectrum.
        #[arg(long, value_delimiter = ',', default_value = "formulas,frobenius,homology,spectrum")]
        checks: Vec<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long = "connected-only")]
        connected_only: bool,
        #[arg(long = "max-height")]
        max_height: Option<usize>,
        /// Allow more than 7 elements.
        #[arg(long = "allow-large")]
        allow_large: bool,
        /// Record per-poset timing.
        #[arg(long)]
        timing: bool,
    },
}
