//! `coverlab`: verify covering systems of ℤ and coset covers of finite groups.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::EXIT_ERROR;

#[derive(Debug, Parser)]
#[command(name = "coverlab", version, about = "Verify covering systems of the integers and coset covers of finite groups")]
pub struct Cli {
    /// Seed for commands that draw random instances.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Period budget (ℤ commands) or node budget (searches); may only lower the built-in caps.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Args)]
pub struct CoverFile {
    /// Cover file: one `a/n` class per line.
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct CoverOrRandom {
    /// Cover file: one `a/n` class per line.
    #[arg(required_unless_present = "random")]
    pub file: Option<PathBuf>,
    /// Check this many seeded random systems instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GroupSelect {
    /// Catalog group name.
    #[arg(long, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Group record file (TOML).
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Without a group, run on every catalog group up to this order.
    #[arg(long)]
    pub max_order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SubgroupArgs {
    /// Coset file.
    pub file: PathBuf,
    /// Element ids generating `H`; the trivial subgroup when omitted.
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a residue system: cover, exact cover, uniform multiplicity.
    VerifyCover(CoverFile),
    /// Density of the union of the classes.
    Density(CoverFile),
    /// Size of the divisor closure weighted by totients, with an optional scaling check.
    Mu {
        #[arg(required = true, value_delimiter = ',')]
        set: Vec<u64>,
        #[arg(long)]
        scale: Option<u64>,
    },
    /// Density of a union of subgroups two ways.
    Lemma34(CoverOrRandom),
    /// Shifted classes cover at least as much as the classes through 0.
    Rogers(CoverOrRandom),
    /// Index bound for a nontrivial uniform cover of ℤ.
    Thm42 {
        file: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        alpha: Option<u32>,
    },
    /// Largest-prime bound for exact covers, plus the largest-modulus facts.
    Simpson(CoverFile),
    /// The c(M) pipeline.
    Bounds {
        #[arg(long = "M", id = "multiplicity")]
        m: u64,
    },
    /// The implication q < M·∏ p/(p−1) ⇒ q < c(M).
    Qbound {
        #[arg(long)]
        q: u64,
        #[arg(long = "M", id = "multiplicity")]
        m: u64,
    },
    /// Order, structure and element labels of a group.
    GroupInfo {
        #[command(flatten)]
        select: GroupSelect,
        /// List every subgroup.
        #[arg(long)]
        subgroups: bool,
    },
    /// Subgroup lemmas on one group or the catalog.
    LemmaSuite(GroupSelect),
    /// Coset-count lower bound for a union of cosets of overgroups of `H`.
    Thm31 {
        #[arg(required_unless_present = "sweep")]
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        h: Vec<u32>,
        /// Exhaustive sweep over ℤ/N (N ≤ 36) and every catalog instance.
        #[arg(long, conflicts_with = "file")]
        sweep: bool,
        /// Largest number of cosets in the sweep.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// gcd/divisor-sum bound for aligned unions.
    Thm32(SubgroupArgs),
    /// Index inequalities for a nontrivial uniform coset cover.
    Thm41 { file: PathBuf },
    /// Search for partitions into cosets with pairwise distinct indices.
    HsSearch(GroupSelect),
    /// Every nontrivial uniform m-cover with at most k cosets.
    EnumerateCovers {
        #[command(flatten)]
        select: GroupSelect,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Print every cover.
        #[arg(long)]
        list: bool,
    },
    /// Largest-index multiplicity versus its least prime divisor.
    Conjecture41 {
        /// Coset file; without it every enumerated cover is probed.
        file: Option<PathBuf>,
        #[command(flatten)]
        select: GroupSelect,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_json() + "\n",
            };
            print!("{out}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
