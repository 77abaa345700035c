use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qf", version, about = "Finite quandles, (G,A)-quandles, enveloping groups and free constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quandle or a group.
    Make {
        #[command(subcommand)]
        what: Make,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate a quandle file or report its properties.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Orbits of the inner automorphism group.
    Orbits { file: PathBuf },
    /// The inner automorphism group `Inn(Q)`.
    Inn { file: PathBuf },
    /// Isomorphism test with an explicit witness.
    Iso { first: PathBuf, second: PathBuf },
    /// All homomorphisms from the first quandle to the second.
    Homs { first: PathBuf, second: PathBuf },
    /// The (G,A)-quandle of a group and a list of elements.
    Ga {
        /// Group spec such as `symmetric:3`, or a group file.
        #[arg(long)]
        group: String,
        /// Elements of `A`, by index or label, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        elems: Vec<String>,
        /// Compare with the union of the conjugacy classes of `A` in Conj(G).
        #[arg(long)]
        compare_conj: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enveloping group presentations, abelianizations and certificates.
    Envelope {
        #[command(subcommand)]
        what: Envelope,
    },
    /// Free quandles, free products and bounded rewriting.
    Free {
        #[command(subcommand)]
        what: Free,
    },
    /// Quandles of a given order up to isomorphism.
    Classify {
        #[arg(long)]
        order: usize,
        /// Keep only quandles with this many orbits.
        #[arg(long)]
        orbits: Option<usize>,
        /// Keep only connected (`true`) or disconnected (`false`) quandles.
        #[arg(long)]
        connected: Option<bool>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check every two-orbit quandle against the U(n,m) characterization.
    AbenvelScan {
        #[arg(long)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum Make {
    Trivial { n: usize },
    Dihedral { n: usize },
    /// `T(H)` for an abelian group spec or file.
    Takasaki { group: String },
    Conj { group: String },
    ConjInv { group: String },
    Core { group: String },
    /// `U(n, m)`.
    U { n: usize, m: usize },
    /// Union of two quandle files with actions from an actions file.
    Union { first: PathBuf, second: PathBuf, actions: PathBuf },
    /// Direct product of two quandle files.
    Product { first: PathBuf, second: PathBuf },
    /// A group file from a spec.
    Group { spec: String },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Exits 1 with the violated axiom and a witness if the table is not a quandle.
    Axioms { file: PathBuf },
    Predicates { file: PathBuf },
    /// Exits 1 unless the subset is a normal subquandle.
    Normal {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Envelope {
    /// The presentation of `G_Q`, one relator per pair.
    Present {
        file: PathBuf,
        /// Keep relators that reduce to the empty word.
        #[arg(long)]
        keep_empty: bool,
    },
    Abelianize { file: PathBuf },
    /// Search a catalog for a certificate that `Q -> G_Q` is injective.
    Certify {
        file: PathBuf,
        /// `default`, or group specs separated by `;`.
        #[arg(long, default_value = "default")]
        catalog: String,
    },
    /// Rebuild `Q` as a (G,A)-quandle from a certificate.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Check the nilpotent model for `U(n, m)`.
    VerifyU { n: usize, m: usize },
    /// Check the dihedral model for `R_2n`.
    VerifyR2n { n: usize },
}

#[derive(Debug, Subcommand)]
pub enum Free {
    /// Canonical elements of the free quandle on `n` generators.
    Fq {
        n: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Free product of two quandle presentations.
    Product {
        first: PathBuf,
        second: PathBuf,
        /// Print the enveloping group presentation instead.
        #[arg(long)]
        envelope: bool,
    },
    /// Bounds on the number of elements named by short words.
    Closure {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
    },
}
