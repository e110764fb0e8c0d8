use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "loopmod", version, about = "Modular cocycles and identity checks on finite loops")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a loop table and report its identity and associativity.
    Validate(LoopArg),
    /// Enumerate normalized loops of one order.
    Enumerate(EnumerateArgs),
    /// Check an identity on a loop by exhaustive evaluation.
    Check(CheckArgs),
    /// Compile both sides of an identity into translation words.
    CompileIdentity(CompileArgs),
    /// Left/right cocycle tables, modular function and unimodularity.
    Cocycle(CocycleArgs),
    /// Deviation maps and the set of pairs where they are trivial.
    Deviation(LoopArg),
    /// Run the measure verifiers.
    Verify(VerifyArgs),
    /// Orbits of a set of translations, one basis measure per orbit.
    InvariantMeasures(InvariantArgs),
    /// Everything above for one loop and measure.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct LoopArg {
    /// Loop file, `-` for standard input, or `builtin:NAME`.
    pub loop_file: String,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub order: usize,
    /// One representative per isomorphism class.
    #[arg(long)]
    pub iso: bool,
    /// Print only the number of loops.
    #[arg(long)]
    pub count_only: bool,
    #[arg(long)]
    pub limit: Option<usize>,
    /// Values of the leading free cells, row-major from (1,1), e.g. `2,0`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub prefix: Vec<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct IdentitySource {
    /// Identity in the term language, e.g. `((x*y)*z)*y = x*(y*(z*y))`.
    #[arg(long)]
    pub identity: Option<String>,
    /// Name of a built-in identity.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalIdentitySource {
    #[arg(long)]
    pub identity: Option<String>,
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: IdentitySource,
    pub loop_file: String,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[command(flatten)]
    pub source: IdentitySource,
    /// Point variable; defaults to the last variable occurring once on each side.
    #[arg(long)]
    pub point: Option<char>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideChoice {
    Left,
    Right,
    Both,
}

#[derive(Debug, Args)]
pub struct MeasureArg {
    /// Measure file, `-` for standard input, or `uniform`.
    #[arg(long)]
    pub measure: String,
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    pub loop_file: String,
    #[command(flatten)]
    pub measure: MeasureArg,
    #[arg(long, value_enum, default_value_t = SideChoice::Both)]
    pub side: SideChoice,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub loop_file: String,
    #[command(flatten)]
    pub measure: MeasureArg,
    /// Chain rule, cocycle relation, rigidity, and compatibility if an identity is given.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub chain_rule: bool,
    #[arg(long)]
    pub cocycle_relation: bool,
    #[arg(long)]
    pub rigidity: bool,
    /// Cocycle compatibility forced by an identity.
    #[arg(long, requires = "OptionalIdentitySource")]
    pub compat: bool,
    #[command(flatten)]
    pub identity: OptionalIdentitySource,
    #[arg(long)]
    pub point: Option<char>,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    pub loop_file: String,
    /// `left`, `right`, `both`, or a list such as `L1,R2`.
    #[arg(long, default_value = "left")]
    pub generators: String,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub loop_file: String,
    #[command(flatten)]
    pub measure: MeasureArg,
}
