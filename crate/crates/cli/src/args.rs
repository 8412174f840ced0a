use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "deltabench", version, about = "Program-size complexity experiments at desk scale")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Threads for halting-program enumeration. Output does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub workers: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// JSON lines: provenance, one line per record, summary.
    Json,
    /// CSV table with `#` comment lines for provenance and summary.
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kraft-Chaitin allocation.
    #[command(subcommand)]
    Kc(KcCmd),
    /// The self-delimiting machine.
    #[command(subcommand)]
    Vm(VmCmd),
    /// Complexity upper bounds.
    #[command(subcommand)]
    Cx(CxCmd),
    /// Formulas, proofs and theorems of Robinson's Q.
    #[command(subcommand)]
    Thy(ThyCmd),
    /// Halting probability lower bounds.
    #[command(subcommand)]
    Omega(OmegaCmd),
    /// Scattered-digit codec.
    #[command(subcommand)]
    Scatter(ScatterCmd),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kc(KcCmd::Allocate(_)) => "kc allocate",
            Command::Vm(VmCmd::Run(_)) => "vm run",
            Command::Vm(VmCmd::Enumerate(_)) => "vm enumerate",
            Command::Vm(VmCmd::Compile(_)) => "vm compile",
            Command::Cx(CxCmd::H(_)) => "cx h",
            Command::Cx(CxCmd::Delta(_)) => "cx delta",
            Command::Cx(CxCmd::DeltaG(_)) => "cx delta-g",
            Command::Cx(CxCmd::Density(_)) => "cx density",
            Command::Thy(ThyCmd::Parse(_)) => "thy parse",
            Command::Thy(ThyCmd::Check(_)) => "thy check",
            Command::Thy(ThyCmd::Enumerate(_)) => "thy enumerate",
            Command::Thy(ThyCmd::ProveGround(_)) => "thy prove-ground",
            Command::Thy(ThyCmd::Density(_)) => "thy density",
            Command::Thy(ThyCmd::Hgt(_)) => "thy hgt",
            Command::Omega(OmegaCmd::Approx(_)) => "omega approx",
            Command::Scatter(ScatterCmd::Encode(_)) => "scatter encode",
            Command::Scatter(ScatterCmd::Decode(_)) => "scatter decode",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum KcCmd {
    /// Grant one codeword per requested length, leftmost first.
    Allocate(KcAllocate),
}

#[derive(Args, Debug, Serialize)]
pub struct KcAllocate {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Comma-separated codeword lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lengths: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum VmCmd {
    /// Run a machine on an input, or the universal machine on a program.
    Run(VmRun),
    /// List every program on which the universal machine halts exactly.
    Enumerate(VmEnumerate),
    /// Print the self-delimiting header of a machine.
    Compile(VmCompile),
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    EchoOne,
    HaltOnly,
    CopyUntilOne,
    UnaryDoubler,
    SwapPair,
    PairCopier,
    WffEcho,
    Fixed4Echo,
}

#[derive(Args, Debug, Serialize)]
pub struct MachineSource {
    /// Assembly source file.
    #[arg(long, conflicts_with = "fixture")]
    pub machine: Option<PathBuf>,
    /// A built-in machine.
    #[arg(long, value_enum)]
    pub fixture: Option<Fixture>,
}

#[derive(Args, Debug, Serialize)]
pub struct VmRun {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[command(flatten)]
    pub source: MachineSource,
    /// Run the universal machine; `--input` is then the whole program.
    #[arg(long, conflicts_with_all = ["machine", "fixture"])]
    pub universal: bool,
    /// Input string over the alphabet (empty for λ).
    #[arg(long, default_value = "")]
    pub input: String,
    /// Step budget.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct VmEnumerate {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct VmCompile {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[command(flatten)]
    pub source: MachineSource,
}

#[derive(Subcommand, Debug)]
pub enum CxCmd {
    /// Upper bound on H(x) with its witness.
    H(CxStrings),
    /// Upper bound on H(x) − |x|.
    Delta(CxStrings),
    /// Upper bound on H₂(g(u)) − 4|u| for a formula u.
    DeltaG(CxDeltaG),
    /// Fraction of length-n strings with delta at most the threshold.
    Density(CxDensity),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Search {
    /// Longest program in the search snapshot.
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,
    /// Step budget per program.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CxStrings {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[command(flatten)]
    pub search: Search,
    /// Strings to bound (empty string for λ).
    #[arg(required = true)]
    pub x: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Numbering {
    Fixed4,
    Index,
}

#[derive(Args, Debug, Serialize)]
pub struct CxDeltaG {
    #[command(flatten)]
    pub search: Search,
    #[arg(long, value_enum, default_value_t = Numbering::Fixed4)]
    pub numbering: Numbering,
    /// Formulas, in glyphs or ASCII aliases.
    #[arg(required = true)]
    pub formula: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct CxDensity {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Lengths n, as a comma list or a range `a..b`.
    #[arg(long, default_value = "1..12")]
    pub ns: String,
    /// Threshold N on delta.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub threshold: i64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Snapshot length; defaults to max n + threshold.
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ThyCmd {
    /// Parse a formula and print its renderings and numberings.
    Parse(ThyParse),
    /// Check a proof given as a JSON array of steps.
    Check(ThyCheck),
    /// Enumerate theorems breadth first.
    Enumerate(ThyEnumerate),
    /// Prove numeral(a) op numeral(b) = numeral(result).
    ProveGround(ThyProveGround),
    /// Fraction of length-n formulas among enumerated theorems.
    Density(ThyDensity),
    /// Statistics of the family "H(x) > m".
    Hgt(ThyHgt),
}

#[derive(Args, Debug, Serialize)]
pub struct ThyParse {
    #[arg(required = true)]
    pub formula: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ThyCheck {
    /// Proof file (JSON array of steps); `-` reads stdin.
    pub proof: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Corpus {
    /// Longest theorem kept.
    #[arg(long, default_value_t = 24)]
    pub max_len: usize,
    /// Candidate derivations allowed per level.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ThyEnumerate {
    #[command(flatten)]
    pub corpus: Corpus,
    /// Attach each theorem's proof.
    #[arg(long)]
    pub proofs: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Plus,
    Times,
}

#[derive(Args, Debug, Serialize)]
pub struct ThyProveGround {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
    #[arg(long, value_enum, default_value_t = Op::Plus)]
    pub op: Op,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PopulationArg {
    Wffs,
    Sentences,
}

#[derive(Args, Debug, Serialize)]
pub struct ThyDensity {
    #[command(flatten)]
    pub corpus: Corpus,
    /// Lengths n, as a comma list or a range `a..b`.
    #[arg(long, default_value = "7,15")]
    pub ns: String,
    #[arg(long, value_enum, default_value_t = PopulationArg::Wffs)]
    pub population: PopulationArg,
}

#[derive(Args, Debug, Serialize)]
pub struct ThyHgt {
    /// Sentence length.
    #[arg(long)]
    pub n: usize,
    /// Complexity bound m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum OmegaCmd {
    /// Σ q^(−|p|) over programs found halting, for each step budget.
    Approx(OmegaApproxArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct OmegaApproxArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 14)]
    pub max_len: usize,
    /// Step budgets, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub budgets: Vec<u64>,
    /// List the halting programs of the last budget.
    #[arg(long)]
    pub programs: bool,
}

#[derive(Subcommand, Debug)]
pub enum ScatterCmd {
    /// Codeword of a level-k string.
    Encode(ScatterEncode),
    /// Level-k string of a codeword.
    Decode(ScatterDecode),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScatterLevel {
    /// F as `ai+b` (e.g. `2i`) or a comma list of values.
    #[arg(long = "F", default_value = "2i")]
    pub f: String,
    #[arg(long)]
    pub k: u64,
    /// Marked bits x_F(1) … x_F(k) as a binary string.
    #[arg(long)]
    pub marked: String,
    /// Also emit the level-k decoder in assembly.
    #[arg(long)]
    pub emit_decoder: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ScatterEncode {
    #[command(flatten)]
    pub level: ScatterLevel,
    /// Binary string of length F(k).
    #[arg(long)]
    pub x: String,
}

#[derive(Args, Debug, Serialize)]
pub struct ScatterDecode {
    #[command(flatten)]
    pub level: ScatterLevel,
    /// Binary codeword of length F(k) − k.
    #[arg(long)]
    pub z: String,
}
