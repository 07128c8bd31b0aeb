use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ikalg::export::{classes_table, p_table, s_table, xi_table};
use ikalg::{
    load_group_with_cap, run_verify, Context, Error, Family, GroupSpec, OutputFormat, Suite, VerifyConfig, DEFAULT_BUDGET,
    DEFAULT_ORDER_CAP,
};

const EXIT_IDENTITY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "ikalg", version, about = "Exact structure constants of algebras of partial elements")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// sym, wreath:<group> (trivial, cyclic(m), sym3), bn, or dtype
    #[arg(long, global = true)]
    family: Option<String>,
    /// JSON Cayley table {"order", "mult", "names"?}; gives the wreath family over it
    #[arg(long, global = true, value_name = "PATH")]
    group_file: Option<PathBuf>,
    /// Truncation level N
    #[arg(long, global = true, default_value_t = 3)]
    level: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest number of group elements any single enumeration may touch
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget_elements: u64,
    /// Largest accepted order of a group read with --group-file
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_group_order: usize,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the classes of A_{<=N} and of each G_l, l <= N, with their sizes
    Classes,
    /// Structure constants P of A_{<=N}
    Pconst {
        #[arg(long)]
        omega1: Option<String>,
        #[arg(long)]
        omega2: Option<String>,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Structure constants S of the center of G_l
    Sconst {
        /// Level of the center; defaults to --level
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Number of l'-subsets of an l-set containing the support of a class
    Xi {
        #[arg(long)]
        lprime: usize,
        #[arg(long)]
        class: String,
        #[arg(long)]
        l: usize,
        /// Also count subsets directly
        #[arg(long)]
        oracle: bool,
    },
    /// Run an identity sweep at level N
    Verify {
        /// main-lemma, invert, phi, tower, audit, xi, diagonal, elements or all
        suite: String,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn family(g: &Global) -> Result<Family, Failure> {
    match (&g.group_file, &g.family) {
        (Some(path), fam) => {
            if let Some(name) = fam {
                if name.trim() != "wreath" {
                    return Err(Failure::Usage(format!("--group-file conflicts with --family {name}")));
                }
            }
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let group = load_group_with_cap(&GroupSpec::from_json(&text)?, g.max_group_order)?;
            Ok(Family::wreath(group, path.display().to_string()))
        }
        (None, Some(name)) => Ok(name.parse()?),
        (None, None) => Ok(Family::symmetric()),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let fam = family(g)?;
    let format = OutputFormat::from(g.format);
    let context = || Context::new(fam.clone(), g.budget_elements);
    let text = match &cli.command {
        Command::Classes => classes_table(&context()?, g.level)?.render(format),
        Command::Pconst { omega1, omega2, omega } => {
            let parse = |s: &Option<String>| s.as_deref().map(|t| fam.parse_omega(t)).transpose();
            let (w1, w2, w) = (parse(omega1)?, parse(omega2)?, parse(omega)?);
            p_table(&context()?, g.level, w1.as_ref(), w2.as_ref(), w.as_ref())?.render(format)
        }
        Command::Sconst { l, c1, c2, c } => {
            let parse = |s: &Option<String>| s.as_deref().map(|t| fam.parse_class(t)).transpose();
            let (a, b, x) = (parse(c1)?, parse(c2)?, parse(c)?);
            s_table(&context()?, l.unwrap_or(g.level), a.as_ref(), b.as_ref(), x.as_ref())?.render(format)
        }
        Command::Xi { lprime, class, l, oracle } => {
            let c = fam.parse_class(class)?;
            xi_table(&context()?, *lprime, &c, *l, *oracle)?.render(format)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig { budget: g.budget_elements, jobs: g.jobs.max(1), seed: g.seed, ..VerifyConfig::new(g.level) };
            let report = run_verify(&fam, suite, &cfg)?;
            let text = report.render(format);
            if !report.passed {
                emit(g, &text)?;
                return Err(Failure::Identity(format!("verify {suite}: identity check failed")));
            }
            text
        }
    };
    Ok(text)
}

fn emit(g: &Global, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    let result = run(cli).and_then(|text| {
        match &out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IDENTITY)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
