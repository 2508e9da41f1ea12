//! Experiment sweeps over blocklengths and code sizes, and report emission.

use std::ops::RangeInclusive;

use serde_json::{Map, Value};

use crate::birthday::messages_at_rate;
use crate::budget::Budget;
use crate::codes::{exact_zero_error_probability, mc_zero_error_probability, z_moments, Ensemble};
use crate::dist::Dist;
use crate::hypergraph::Hypergraph;
use crate::measures::{moment_terms, Strategy};
use crate::{Error, Result};

/// How code sizes are chosen at each blocklength.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeSizes {
    /// `M = ⌊2^{nR}⌋` for each rate `R` in bits.
    Rates(Vec<f64>),
    /// Fixed message counts.
    Messages(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub graph: Hypergraph,
    pub dist: Dist,
    pub list_size: usize,
    pub sizes: CodeSizes,
    pub blocklengths: RangeInclusive<u32>,
    /// Monte Carlo trials per row; 0 skips simulation.
    pub trials: u64,
    pub seed: Option<u64>,
    pub strategy: Strategy,
    /// Attempt the exact probability, leaving it blank when over budget.
    pub exact: bool,
}

/// One `(n, M)` row.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: u32,
    pub messages: u64,
    pub list_size: usize,
    pub rate_bits: f64,
    pub i_bits: f64,
    pub theta_bits: Vec<f64>,
    pub ez: f64,
    pub ez2: f64,
    pub lower: f64,
    pub upper: f64,
    pub mc_estimate: Option<f64>,
    pub mc_ci_lo: Option<f64>,
    pub mc_ci_hi: Option<f64>,
    pub exact: Option<f64>,
    pub trials: u64,
    pub seed: Option<u64>,
}

pub fn run_experiment(spec: &ExperimentSpec, budget: &Budget) -> Result<Vec<ExperimentRow>> {
    if spec.blocklengths.is_empty() || *spec.blocklengths.start() == 0 {
        return Err(Error::InvalidArgument(
            "blocklength range must be nonempty and start at 1 or more".into(),
        ));
    }
    if spec.trials > 0 && spec.seed.is_none() {
        return Err(Error::InvalidArgument(
            "a seed is required when trials > 0".into(),
        ));
    }
    let terms = moment_terms(
        &spec.graph,
        &spec.dist,
        spec.list_size,
        spec.strategy,
        budget,
    )?;
    let mut rows = Vec::new();
    for n in spec.blocklengths.clone() {
        let messages: Vec<u64> = match &spec.sizes {
            CodeSizes::Rates(rates) => rates
                .iter()
                .map(|&r| {
                    messages_at_rate(n, r)
                        .ok_or_else(|| Error::Overflow(format!("2^({n}·{r}) messages")))
                })
                .collect::<Result<_>>()?,
            CodeSizes::Messages(ms) => ms.clone(),
        };
        let ens = Ensemble::new(spec.graph.clone(), spec.dist.clone(), n, budget)?;
        for m in messages {
            let report = z_moments(&terms, m, n)?;
            let mc = match spec.seed {
                Some(seed) if spec.trials > 0 => Some(mc_zero_error_probability(
                    &ens,
                    m,
                    spec.list_size,
                    spec.trials,
                    seed,
                    budget,
                )?),
                _ => None,
            };
            let exact = if spec.exact {
                match exact_zero_error_probability(&ens, m, spec.list_size, budget) {
                    Ok(p) => Some(p),
                    Err(Error::GuardExceeded { .. }) => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            rows.push(ExperimentRow {
                n,
                messages: m,
                list_size: spec.list_size,
                rate_bits: (m as f64).log2() / n as f64,
                i_bits: report.i_bits,
                theta_bits: report.theta_bits.clone(),
                ez: report.ez,
                ez2: report.ez2,
                lower: report.lower_bound,
                upper: report.upper_bound,
                mc_estimate: mc.map(|e| e.estimate),
                mc_ci_lo: mc.map(|e| e.ci_low),
                mc_ci_hi: mc.map(|e| e.ci_high),
                exact,
                trials: if mc.is_some() { spec.trials } else { 0 },
                seed: spec.seed.filter(|_| mc.is_some()),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// Column names for list size `L`.
pub fn report_columns(list_size: usize) -> Vec<String> {
    let mut cols: Vec<String> = ["n", "M", "L", "R_bits", "I_bits"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend((1..=list_size).map(|l| format!("theta_{l}_bits")));
    cols.extend(
        [
            "EZ",
            "EZ2",
            "lower",
            "upper",
            "mc_estimate",
            "mc_ci_lo",
            "mc_ci_hi",
            "exact",
            "trials",
            "seed",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    cols
}

enum Cell {
    Int(u64),
    Real(f64),
    Blank,
}

fn cells(row: &ExperimentRow) -> Vec<Cell> {
    let opt = |v: Option<f64>| v.map_or(Cell::Blank, Cell::Real);
    let mut out = vec![
        Cell::Int(row.n as u64),
        Cell::Int(row.messages),
        Cell::Int(row.list_size as u64),
        Cell::Real(row.rate_bits),
        Cell::Real(row.i_bits),
    ];
    out.extend(row.theta_bits.iter().map(|&t| Cell::Real(t)));
    out.extend([
        Cell::Real(row.ez),
        Cell::Real(row.ez2),
        Cell::Real(row.lower),
        Cell::Real(row.upper),
        opt(row.mc_estimate),
        opt(row.mc_ci_lo),
        opt(row.mc_ci_hi),
        opt(row.exact),
        Cell::Int(row.trials),
        row.seed.map_or(Cell::Blank, Cell::Int),
    ]);
    out
}

/// Renders rows as CSV (header plus one line per row) or as a JSON array of
/// objects with the same keys in the same order.
pub fn emit_report(rows: &[ExperimentRow], format: ReportFormat) -> Result<String> {
    let first = rows
        .first()
        .ok_or_else(|| Error::InvalidArgument("no rows to emit".into()))?;
    let columns = report_columns(first.list_size);
    if rows
        .iter()
        .any(|r| r.theta_bits.len() != first.theta_bits.len())
    {
        return Err(Error::InvalidArgument("rows mix list sizes".into()));
    }
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&columns)?;
            for row in rows {
                w.write_record(cells(row).iter().map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Real(v) => (v + 0.0).to_string(), // + 0.0 folds -0 into 0
                    Cell::Blank => String::new(),
                }))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Json => {
            let array: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = columns
                        .iter()
                        .cloned()
                        .zip(cells(row).into_iter().map(|c| {
                            match c {
                                Cell::Int(v) => Value::from(v),
                                Cell::Real(v) => serde_json::Number::from_f64(v + 0.0)
                                    .map_or(Value::Null, Value::Number),
                                Cell::Blank => Value::Null,
                            }
                        }))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&array)?;
            text.push('\n');
            Ok(text)
        }
    }
}
