mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use desirable::document::ModelDocument;
use desirable::extension::Mode;
use desirable::verdict::Strength;
use desirable::Error;

use commands::{Target, VerifyArgs};
use report::{Format, Report, EXIT_BAD_DOCUMENT, EXIT_OK, EXIT_USAGE, EXIT_VIOLATED};

#[derive(Parser)]
#[command(name = "desirable", version, about = "Coherence checks, natural extension and representation for sets of desirable things")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Work limit for checks that may not finish exhaustively.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Finite,
    Two,
    One,
}

#[derive(Clone, Copy, ValueEnum)]
enum RulesArg {
    Full,
    Binary,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetArg {
    /// Work on the set of desirable things (`sdt`).
    #[arg(long)]
    sdt: bool,
    /// Work on the set of desirable sets (`sds`, or `base` for `extend`).
    #[arg(long)]
    sds: bool,
}

impl TargetArg {
    fn target(&self) -> Target {
        if self.sdt {
            Target::Sdt
        } else {
            Target::Sds
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the closure laws and probe unitary, finitary and incremental.
    Laws { document: PathBuf },
    /// Check coherence of the document's `sdt` or `sds`.
    Check {
        document: PathBuf,
        #[command(flatten)]
        target: TargetArg,
        /// Override the document's coherence variant.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Natural extension of the document's `sdt` or `base`.
    Extend {
        document: PathBuf,
        #[command(flatten)]
        target: TargetArg,
        /// Production rules used when extending sets of desirable sets.
        #[arg(long, value_enum, default_value_t = RulesArg::Full)]
        rules: RulesArg,
    },
    /// List every coherent model over the document's universe.
    Enumerate {
        document: PathBuf,
        #[command(flatten)]
        target: TargetArg,
    },
    /// Representers of the document's `sds`.
    Represent {
        document: PathBuf,
        /// Represent by strict total orders (universe of all ordered pairs).
        #[arg(long)]
        orders: bool,
    },
    /// Exhaustively check catalog claims on small universes.
    Verify {
        /// Claim ids, or `all`.
        #[arg(required_unless_present = "list")]
        claims: Vec<String>,
        /// Number of things.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Restrict to these operator seeds (comma separated).
        #[arg(long, value_delimiter = ',')]
        operators: Option<Vec<String>>,
        /// Random assessments per seed beyond the empty one (all of them up to two things).
        #[arg(long, default_value_t = 20)]
        assessments: usize,
        /// Check seeds that lack a claim's hypotheses too.
        #[arg(long)]
        ignore_hypotheses: bool,
        /// List the catalog instead.
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Laws { .. } => "laws",
            Command::Check { .. } => "check",
            Command::Extend { .. } => "extend",
            Command::Enumerate { .. } => "enumerate",
            Command::Represent { .. } => "represent",
            Command::Verify { .. } => "verify",
        }
    }

    fn document(&self) -> Option<&PathBuf> {
        match self {
            Command::Laws { document }
            | Command::Check { document, .. }
            | Command::Extend { document, .. }
            | Command::Enumerate { document, .. }
            | Command::Represent { document, .. } => Some(document),
            Command::Verify { .. } => None,
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::UnknownClaim(_) | Error::UnknownSeed(_) => EXIT_USAGE,
        Error::NotCoherent(_) | Error::LawsUnverified => EXIT_VIOLATED,
        _ => EXIT_BAD_DOCUMENT,
    }
}

fn run(cli: &Cli) -> Report {
    let name = cli.command.name();
    let doc = match cli.command.document() {
        None => None,
        Some(path) => {
            let parsed = std::fs::read_to_string(path)
                .map_err(|e| Error::MalformedDocument(format!("cannot read {}: {e}", path.display())))
                .and_then(|text| ModelDocument::parse(&text));
            match parsed {
                Ok(doc) => Some(doc),
                Err(e) => return Report::error(name, &e.to_string(), EXIT_BAD_DOCUMENT),
            }
        }
    };
    let budget = doc.as_ref().map(|d| d.budget(cli.budget, cli.seed));
    let result = match &cli.command {
        Command::Laws { .. } => commands::laws(doc.as_ref().unwrap(), budget.unwrap()),
        Command::Check { target, variant, .. } => {
            let strength = variant.map(|v| match v {
                VariantArg::Full => Strength::Full,
                VariantArg::Finite => Strength::Finite,
                VariantArg::Two => Strength::Two,
                VariantArg::One => Strength::One,
            });
            commands::check(doc.as_ref().unwrap(), target.target(), strength, budget.unwrap())
        }
        Command::Extend { target, rules, .. } => {
            let mode = match rules {
                RulesArg::Full => Mode::FullRules,
                RulesArg::Binary => Mode::BinaryRules,
            };
            commands::extend(doc.as_ref().unwrap(), target.target(), mode, budget.unwrap())
        }
        Command::Enumerate { target, .. } => commands::enumerate(doc.as_ref().unwrap(), target.target()),
        Command::Represent { orders, .. } => commands::represent(doc.as_ref().unwrap(), *orders, budget.unwrap()),
        Command::Verify {
            list: true, ..
        } => Ok(commands::list_claims()),
        Command::Verify {
            claims,
            size,
            operators,
            assessments,
            ignore_hypotheses,
            ..
        } => commands::verify(&VerifyArgs {
            claims: claims.clone(),
            size: *size,
            operators: operators.clone(),
            assessments: *assessments,
            ignore_hypotheses: *ignore_hypotheses,
            limit: cli.budget,
            seed: cli.seed,
        }),
    };
    result.unwrap_or_else(|e| Report::error(name, &e.to_string(), exit_for(&e)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    let report = run(&cli);
    let out = report.render(format);
    if report.exit >= EXIT_USAGE && format == Format::Text {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    ExitCode::from(report.exit)
}
