//! Command-line front end. Exit codes: 0 success, 1 negative verdict,
//! 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cnf::{Cnf, Var};
use crate::constructions::{
    catalog_example, gen_horn_chain, gen_parity_contradiction, gen_parity_n, Parity, VarAllocator,
    EXAMPLES,
};
use crate::dimacs::{parse_dimacs, write_dimacs};
use crate::error::{Error, Result};
use crate::experiment::{
    emit_report, run_growth_experiment, ExperimentConfig, Family, ReportFormat,
};
use crate::geometry::{clause_cycle, inner_harmony, inner_product, phase_difference};
use crate::orthogonalize::{
    orthogonalize_cnf, orthogonalize_horn_muc, verify_orthogonal_muc, DEFAULT_CLAUSE_CAP,
};
use crate::sat::{is_muc_classification, is_muc_deletion, SolverChoice};
use crate::semantics::{classify, Budget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "muclab",
    version,
    about = "CNF structure lab: MUC checks, clause geometry, orthogonalization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a DIMACS file and print a summary.
    Parse { file: PathBuf },
    /// Classify all assignments by their logical value vector.
    Classify {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide whether the formula is a minimal unsatisfiable core.
    MucCheck {
        #[arg(long, value_enum, default_value_t = MucMethod::Deletion)]
        method: MucMethod,
        #[arg(long)]
        budget: Option<u64>,
        file: PathBuf,
    },
    /// Phase difference and cycles of clauses `i` and `j` (0-based).
    Phase { file: PathBuf, i: usize, j: usize },
    /// Inner product or inner harmony of clauses `i` and `j` (0-based).
    Inner {
        #[command(flatten)]
        which: InnerWhich,
        file: PathBuf,
        i: usize,
        j: usize,
    },
    /// Orthogonalize a MUC.
    Orthogonalize {
        #[command(flatten)]
        mode: OrthoMode,
        file: PathBuf,
        /// Write the step trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the output CNF here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CLAUSE_CAP)]
        cap: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate an example formula as DIMACS.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the growth experiment.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MucMethod {
    Deletion,
    Classification,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InnerWhich {
    #[arg(long)]
    product: bool,
    #[arg(long)]
    harmony: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct OrthoMode {
    #[arg(long)]
    horn: bool,
    #[arg(long)]
    generic: bool,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    Chain {
        #[arg(long)]
        k: u32,
    },
    Parity {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        parity: ParityArg,
    },
    ParityContradiction {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        disjoint: bool,
    },
    Example {
        #[arg(long)]
        name: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    from: Option<u32>,
    #[arg(long)]
    to: Option<u32>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn budget_or_env(b: Option<u64>) -> Budget {
    b.map(Budget).unwrap_or_else(Budget::from_env)
}

fn read_cnf(path: &Path) -> Result<Cnf> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        fs::read(path)?
    };
    parse_dimacs(&bytes)
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Parse { file } => {
            let f = read_cnf(&file)?;
            print_json(
                out,
                &json!({
                    "num_vars": f.num_vars(),
                    "num_clauses": f.len(),
                    "main_vars": f.main_vars(),
                    "is_horn": f.is_horn(),
                    "literals": f.literal_count(),
                    "clauses": f.clauses(),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, budget } => {
            let f = read_cnf(&file)?;
            let report = classify(&f, budget_or_env(budget))?;
            print_json(out, &report.to_json())?;
            Ok(EXIT_OK)
        }
        Command::MucCheck {
            method,
            budget,
            file,
        } => {
            let f = read_cnf(&file)?;
            let verdict = match method {
                MucMethod::Deletion => is_muc_deletion(&f, SolverChoice::Dpll)?,
                MucMethod::Classification => is_muc_classification(&f, budget_or_env(budget))?,
            };
            writeln!(out, "{}", serde_json::to_string(&verdict)?)?;
            Ok(if verdict.is_muc {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Phase { file, i, j } => {
            let f = read_cnf(&file)?;
            let (a, b) = (f.clause(i)?, f.clause(j)?);
            print_json(
                out,
                &json!({
                    "i": i,
                    "j": j,
                    "phase_difference": phase_difference(a, b),
                    "cycle_i": clause_cycle(a),
                    "cycle_j": clause_cycle(b),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Inner { which, file, i, j } => {
            let f = read_cnf(&file)?;
            let (a, b) = (f.clause(i)?, f.clause(j)?);
            let budget = Budget::from_env();
            let value = if which.product {
                json!({"i": i, "j": j, "inner_product": inner_product(a, b, budget)?})
            } else {
                json!({"i": i, "j": j, "inner_harmony": inner_harmony(a, b, budget)?})
            };
            print_json(out, &value)?;
            Ok(EXIT_OK)
        }
        Command::Orthogonalize {
            mode,
            file,
            trace,
            emit,
            cap,
            budget,
        } => {
            let f = read_cnf(&file)?;
            let (output, steps) = if mode.horn {
                orthogonalize_horn_muc(&f)?
            } else {
                orthogonalize_cnf(&f, cap)?
            };
            if let Some(path) = trace {
                fs::write(path, steps.to_jsonl())?;
            }
            let verified = match verify_orthogonal_muc(&output, budget_or_env(budget)) {
                Ok(v) => Some(v),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            match emit {
                Some(path) => {
                    fs::write(path, write_dimacs(&output))?;
                    print_json(
                        out,
                        &json!({
                            "input_clauses": f.len(),
                            "output_clauses": output.len(),
                            "steps": steps.steps.len(),
                            "cuts": steps.cuts(),
                            "verified": verified,
                        }),
                    )?;
                }
                None => write!(out, "{}", write_dimacs(&output))?,
            }
            Ok(if verified == Some(false) {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            })
        }
        Command::Gen { what, output } => {
            let cnf = generate(what)?;
            let text = write_dimacs(&cnf);
            match output {
                Some(path) => fs::write(path, text)?,
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Experiment(args) => experiment(args, out),
    }
}

fn generate(what: GenCommand) -> Result<Cnf> {
    match what {
        GenCommand::Chain { k } => {
            let f = gen_horn_chain(k);
            let n = f.num_vars();
            f.with_main_vars(n)
        }
        GenCommand::Parity { n, parity } => {
            let parity = match parity {
                ParityArg::Odd => Parity::Odd,
                ParityArg::Even => Parity::Even,
            };
            let main: Vec<Var> = (1..=n).collect();
            let block = gen_parity_n(parity, &main, &mut VarAllocator::above(n))?;
            let total = block.cnf.num_vars().max(n);
            Cnf::new(total, block.cnf.into_clauses())?.with_main_vars(n)
        }
        GenCommand::ParityContradiction { n, disjoint } => gen_parity_contradiction(n, disjoint),
        GenCommand::Example { name } => {
            let f = catalog_example(&name).map_err(|e| match e {
                Error::UnknownExample(n) => {
                    Error::UnknownExample(format!("{n} (known: {})", EXAMPLES.join(", ")))
                }
                other => other,
            })?;
            match f.main_vars() {
                Some(_) => Ok(f),
                None => {
                    let n = f.num_vars();
                    f.with_main_vars(n)
                }
            }
        }
    }
}

fn experiment(args: ExperimentArgs, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_json(&fs::read_to_string(path)?)?,
        None => {
            let family = args
                .family
                .ok_or_else(|| Error::Config("--family or --config is required".into()))?;
            let (from, to) = match (args.from, args.to) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Config("--from and --to are required".into())),
            };
            ExperimentConfig::new(family, from, to)
        }
    };
    if let Some(f) = args.family {
        cfg.family = f;
    }
    if let Some(a) = args.from {
        cfg.n_range[0] = a;
    }
    if let Some(b) = args.to {
        cfg.n_range[1] = b;
    }
    if let Some(c) = args.cap {
        cfg.clause_cap = c;
    }
    if let Some(b) = args.budget {
        cfg.budget = Budget(b);
    }
    if args.csv.is_some() {
        cfg.csv_out = args.csv;
    }
    if args.json.is_some() {
        cfg.json_out = args.json;
    }

    let report = run_growth_experiment(&cfg)?;
    let csv = emit_report(&report, ReportFormat::Csv)?;
    if let Some(path) = &cfg.csv_out {
        fs::write(path, &csv)?;
    }
    if let Some(path) = &cfg.json_out {
        fs::write(path, emit_report(&report, ReportFormat::Json)?)?;
    }
    if cfg.csv_out.is_none() && cfg.json_out.is_none() {
        write!(out, "{csv}")?;
    }
    writeln!(out, "{}", report.summary_line())?;
    Ok(EXIT_OK)
}
