use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "k3cert", version, about = "Exact checks for twelve-node quartics in characteristic 2")]
pub struct Cli {
    /// Seed for every randomised step; echoed into the output.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kodaira fibre data with the computed N_v.
    FiberTable {
        /// List the types with e_v up to this value.
        #[arg(long, default_value_t = 24)]
        max_euler: u32,
    },
    /// Maximal number of disjoint components of one fibre type.
    Nv {
        /// Kodaira type, e.g. `I*_1`, `IV*`, `I_6`.
        #[arg(long = "type")]
        fiber: String,
        /// Number of A2 configurations to place first.
        #[arg(long)]
        a2: Option<usize>,
        /// Component to leave out.
        #[arg(long)]
        omit: Option<usize>,
    },
    /// Configurations of singular fibres with Σ(e_v + δ_v) = budget.
    Enumerate {
        #[arg(long, default_value_t = 24)]
        budget: u32,
        #[arg(long = "require-a2", default_value_t = 0)]
        require_a2: u32,
        /// Omit the list of optimal configurations.
        #[arg(long)]
        summary: bool,
    },
    /// Root lattices, sublattices and extended fibre lattices.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Weierstrass models over GF(2^k)[t].
    Wmodel {
        #[command(subcommand)]
        op: WmodelOp,
    },
    /// The quartic family l1·l2·l3·l4 + q².
    Quartic {
        #[command(subcommand)]
        op: QuarticOp,
    },
    /// Every end-to-end check, with its time limit.
    VerifyAll {
        /// Run only these checks (1..=16).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// Where the ambient lattice comes from.
#[derive(Args, Debug, Clone)]
pub struct LatticeSource {
    /// ADE label such as `D6` or `E7`.
    #[arg(long)]
    pub lattice: Option<String>,
    /// JSON file: `{"rank", "gram"}`, optionally with `"images"`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// Sublattice generators, as `1,0,0;0,1,0`.
#[derive(Args, Debug, Clone)]
pub struct Vectors {
    #[arg(long, allow_hyphen_values = true)]
    pub vectors: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeOp {
    Gram {
        #[command(flatten)]
        src: LatticeSource,
    },
    Roots {
        #[command(flatten)]
        src: LatticeSource,
    },
    Disc {
        #[command(flatten)]
        src: LatticeSource,
    },
    TwoLength {
        #[command(flatten)]
        src: LatticeSource,
    },
    Complement {
        #[command(flatten)]
        src: LatticeSource,
        #[command(flatten)]
        vectors: Vectors,
    },
    Closure {
        #[command(flatten)]
        src: LatticeSource,
        #[command(flatten)]
        vectors: Vectors,
    },
    /// Orthogonal roots A1^r and the index of their primitive closure.
    EmbedA1 {
        r: usize,
        #[arg(long)]
        lattice: String,
    },
    /// Sets of orthogonal roots in D_{2m+1} lie in some D_{2m}.
    FactorThrough {
        m: usize,
        /// Size of the sets; all sizes when left out.
        r: Option<usize>,
        #[arg(long, default_value_t = 13)]
        max_rank: usize,
    },
    RootsInQuotient {
        #[command(flatten)]
        src: LatticeSource,
        #[command(flatten)]
        vectors: Vectors,
    },
    /// Parity argument for orthogonal roots lifted to the extended lattice.
    Parity {
        #[arg(long)]
        lattice: String,
        #[command(flatten)]
        vectors: Vectors,
        /// Fibre multiples k_i of the lift, comma separated (default all 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Vec<i64>,
    },
}

/// A model from a JSON file, or a seeded random one.
#[derive(Args, Debug, Clone)]
pub struct ModelSource {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Draw a random model over GF(2^k) with `--seed`.
    #[arg(long, conflicts_with = "input")]
    pub random: bool,
    #[arg(long, default_value_t = 8)]
    pub k: u32,
}

#[derive(Subcommand, Debug)]
pub enum WmodelOp {
    Disc {
        #[command(flatten)]
        src: ModelSource,
    },
    IsSquare {
        #[command(flatten)]
        src: ModelSource,
    },
    Classify {
        #[command(flatten)]
        src: ModelSource,
    },
    /// δ = v(Δ) − e for an asserted fibre type.
    Delta {
        #[command(flatten)]
        src: ModelSource,
        /// `inf` or a field element in hex.
        #[arg(long, default_value = "0x0")]
        place: String,
        #[arg(long = "type")]
        fiber: String,
    },
}

/// The member: seeded over GF(2^k), or from a parameter file.
#[derive(Args, Debug, Clone)]
pub struct FamilySource {
    #[arg(long, default_value_t = 4)]
    pub k: u32,
    /// Use GF(p), p ∈ {3, 5, 7}, instead (needs `--params`).
    #[arg(long)]
    pub p: Option<u32>,
    /// JSON `{"l": [[..4]; 4], "q": [..10]}`.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum QuarticOp {
    Build {
        #[command(flatten)]
        src: FamilySource,
    },
    Scan {
        #[command(flatten)]
        src: FamilySource,
    },
    Expected {
        #[command(flatten)]
        src: FamilySource,
    },
    /// Sections by the planes l_i = 0 and any `--plane a,b,c,d`.
    Planes {
        #[command(flatten)]
        src: FamilySource,
        #[arg(long)]
        plane: Vec<String>,
    },
    Census {
        #[command(flatten)]
        src: FamilySource,
    },
    DworkCheck,
}
