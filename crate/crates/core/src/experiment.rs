//! Growth experiment: orthogonalize one family of MUCs over a range of sizes
//! and record how large the orthogonal output gets.
//!
//! Horn chains go through the Horn procedure, parity contradictions through
//! the generic one. Every output is checked exhaustively before it counts
//! towards the summary; runs that hit the clause cap or the enumeration
//! budget stay in the report, flagged.

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cnf::Cnf;
use crate::constructions::{gen_horn_chain, gen_parity_contradiction};
use crate::error::{Error, Result};
use crate::orthogonalize::{
    orthogonalize_cnf, orthogonalize_horn_muc, total_order_check, verify_orthogonal_muc,
    GrowthRecord, OrthogonalizationTrace, DEFAULT_CLAUSE_CAP,
};
use crate::sat::{is_muc_deletion, shrink_to_muc, SolverChoice};
use crate::semantics::{equivalent, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Chain,
    ParityContradiction,
}

impl Family {
    fn min_n(self) -> u32 {
        match self {
            Family::Chain => 0,
            Family::ParityContradiction => 3,
        }
    }

    /// Whether an output size matches the expected shape for this family.
    pub fn shape_holds(self, n: u32, output_clauses: usize) -> bool {
        match self {
            Family::Chain => output_clauses == n as usize + 2,
            Family::ParityContradiction => n >= 1 && (output_clauses as u128) >= 1u128 << (n - 1),
        }
    }

    pub fn shape_label(self) -> &'static str {
        match self {
            Family::Chain => "output = n+2",
            Family::ParityContradiction => "output >= 2^(n-1)",
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_CLAUSE_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    /// Inclusive `[first, last]`.
    pub n_range: [u32; 2],
    #[serde(default = "Budget::from_env")]
    pub budget: Budget,
    #[serde(default = "default_cap")]
    pub clause_cap: usize,
    #[serde(default)]
    pub csv_out: Option<PathBuf>,
    #[serde(default)]
    pub json_out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(family: Family, first: u32, last: u32) -> Self {
        ExperimentConfig {
            family,
            n_range: [first, last],
            budget: Budget::from_env(),
            clause_cap: DEFAULT_CLAUSE_CAP,
            csv_out: None,
            json_out: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let [first, last] = self.n_range;
        if first > last {
            return Err(Error::Config(format!("empty n range {first}..={last}")));
        }
        if first < self.family.min_n() {
            return Err(Error::Config(format!(
                "n must be at least {} for this family",
                self.family.min_n()
            )));
        }
        if self.clause_cap == 0 {
            return Err(Error::Config("clause_cap must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordVerdict {
    /// Exactly one clause false under every assignment.
    pub verified: bool,
    /// Output agrees with the input under every assignment; `None` if not
    /// checked within budget.
    pub equivalent: Option<bool>,
    /// Horn runs only: the output clauses form a chain by negative literals.
    pub total_order: Option<bool>,
    pub cap_hit: bool,
    /// The generated instance was not minimal and was shrunk first.
    pub shrunk: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub family: Family,
    pub records: Vec<GrowthRecord>,
    pub verdicts: Vec<RecordVerdict>,
}

impl GrowthReport {
    /// Records that were verified and did not hit the cap.
    pub fn confirmed(&self) -> impl Iterator<Item = &GrowthRecord> {
        self.records
            .iter()
            .zip(&self.verdicts)
            .filter(|(_, v)| v.verified && !v.cap_hit && v.equivalent != Some(false))
            .map(|(r, _)| r)
    }

    pub fn summary_line(&self) -> String {
        let confirmed: Vec<&GrowthRecord> = self.confirmed().collect();
        let holds = confirmed
            .iter()
            .filter(|r| self.family.shape_holds(r.n, r.output_clauses))
            .count();
        let range = match (confirmed.first(), confirmed.last()) {
            (Some(a), Some(b)) => format!("n={}..{}", a.n, b.n),
            _ => "none".to_string(),
        };
        format!(
            "confirmed growth: family={} points={}/{} {} shape[{}] holds on {}/{}",
            serde_json::to_value(self.family)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            confirmed.len(),
            self.records.len(),
            range,
            self.family.shape_label(),
            holds,
            confirmed.len()
        )
    }
}

fn instance(family: Family, n: u32) -> Result<Cnf> {
    match family {
        Family::Chain => Ok(gen_horn_chain(n)),
        Family::ParityContradiction => gen_parity_contradiction(n, false),
    }
}

fn run_one(cfg: &ExperimentConfig, n: u32) -> Result<(GrowthRecord, RecordVerdict)> {
    let generated = instance(cfg.family, n)?;
    let solver = match cfg.family {
        Family::Chain => SolverChoice::Horn,
        Family::ParityContradiction => SolverChoice::Dpll,
    };
    let shrunk = !is_muc_deletion(&generated, solver)?.is_muc;
    let input = if shrunk {
        shrink_to_muc(&generated, solver)?
    } else {
        generated
    };

    let started = Instant::now();
    let result: Result<(Cnf, OrthogonalizationTrace)> = match cfg.family {
        Family::Chain => orthogonalize_horn_muc(&input),
        Family::ParityContradiction => orthogonalize_cnf(&input, cfg.clause_cap),
    };
    let wall_time = started.elapsed();

    let mut record = GrowthRecord {
        n,
        input_clauses: input.len(),
        input_vars: input.num_vars(),
        output_clauses: 0,
        steps: 0,
        wall_time,
    };
    let mut verdict = RecordVerdict {
        verified: false,
        equivalent: None,
        total_order: None,
        cap_hit: false,
        shrunk,
        note: None,
    };

    let (output, trace) = match result {
        Ok(done) => done,
        Err(Error::ClauseCapExceeded { cap }) => {
            record.output_clauses = cap + 1;
            verdict.cap_hit = true;
            verdict.note = Some(format!(
                "clause cap {cap} reached; output size is a lower bound"
            ));
            return Ok((record, verdict));
        }
        Err(e) => return Err(e),
    };
    record.output_clauses = output.len();
    record.steps = trace.steps.len();
    if cfg.family == Family::Chain {
        verdict.total_order = Some(total_order_check(&output));
    }

    match verify_orthogonal_muc(&output, cfg.budget) {
        Ok(ok) => verdict.verified = ok,
        Err(Error::BudgetExceeded { .. }) => {
            verdict.note = Some("verification exceeded the enumeration budget".into());
        }
        Err(e) => return Err(e),
    }
    match equivalent(&input, &output, cfg.budget) {
        Ok(eq) => verdict.equivalent = Some(eq),
        Err(Error::BudgetExceeded { .. }) => {
            verdict
                .note
                .get_or_insert_with(|| "equivalence check exceeded the enumeration budget".into());
        }
        Err(e) => return Err(e),
    }
    if verdict.total_order == Some(false) {
        verdict.verified = false;
    }
    Ok((record, verdict))
}

/// Runs every `n` in the configured range, in order. Budget and cap
/// overruns are recorded as flagged records rather than aborting the sweep.
pub fn run_growth_experiment(cfg: &ExperimentConfig) -> Result<GrowthReport> {
    cfg.validate()?;
    let [first, last] = cfg.n_range;
    let mut report = GrowthReport {
        family: cfg.family,
        records: Vec::new(),
        verdicts: Vec::new(),
    };
    for n in first..=last {
        let (record, verdict) = match run_one(cfg, n) {
            Ok(pair) => pair,
            Err(e @ Error::BudgetExceeded { .. }) => (
                GrowthRecord {
                    n,
                    input_clauses: 0,
                    input_vars: 0,
                    output_clauses: 0,
                    steps: 0,
                    wall_time: Default::default(),
                },
                RecordVerdict {
                    verified: false,
                    equivalent: None,
                    total_order: None,
                    cap_hit: false,
                    shrunk: false,
                    note: Some(e.to_string()),
                },
            ),
            Err(e) => return Err(e),
        };
        report.records.push(record);
        report.verdicts.push(verdict);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// One CSV row of a growth report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n: u32,
    pub input_clauses: usize,
    pub input_vars: u32,
    pub output_clauses: usize,
    pub steps: usize,
    pub wall_time_ms: f64,
    pub verified: bool,
    pub cap_hit: bool,
}

impl CsvRow {
    fn of(r: &GrowthRecord, v: &RecordVerdict) -> Self {
        CsvRow {
            n: r.n,
            input_clauses: r.input_clauses,
            input_vars: r.input_vars,
            output_clauses: r.output_clauses,
            steps: r.steps,
            wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
            verified: v.verified,
            cap_hit: v.cap_hit,
        }
    }
}

pub fn emit_report(report: &GrowthReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for (r, v) in report.records.iter().zip(&report.verdicts) {
                w.serialize(CsvRow::of(r, v))?;
            }
            if report.records.is_empty() {
                w.write_record([
                    "n",
                    "input_clauses",
                    "input_vars",
                    "output_clauses",
                    "steps",
                    "wall_time_ms",
                    "verified",
                    "cap_hit",
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn parse_csv_report(text: &str) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}
