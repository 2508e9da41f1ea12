use std::io::Write;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use zelist::birthday::{n_star, product_no_multicollision_prob, renyi_ratio_curve};
use zelist::channel::{channel_from_hypergraph, extension_channel};
use zelist::codes::{achievable_rate_threshold, build_list_decoder, verify_zero_error_code};
use zelist::experiment::{emit_report, run_experiment, CodeSizes, ExperimentSpec, ReportFormat};
use zelist::graph::SimpleGraph;
use zelist::graph_entropy::{entropy_chain_check, motzkin_straus_value, turan_bound};
use zelist::measures::measure_records;
use zelist::{Budget, Error, Strategy};

use crate::args::*;
use crate::input;

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::Ix => Strategy::InclusionExclusion,
        }
    }
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let budget = Budget::from_env()?;
    let text = match cli.command {
        Command::Channel(cmd) => channel(cmd, &budget)?,
        Command::Measures(a) => measures(a, &budget)?,
        Command::Codes(cmd) => codes(cmd, &budget)?,
        Command::Birthday(cmd) => birthday(cmd, &budget)?,
        Command::Entropy(cmd) => entropy(cmd, &budget)?,
        Command::Run(a) => sweep(&a.sweep, a.trials, a.seed, !a.no_exact, &budget)?,
    };
    match cli.out {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(value: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn channel(cmd: ChannelCmd, budget: &Budget) -> Result<String> {
    match cmd {
        ChannelCmd::Graph { channel } => {
            let ch = input::channel(&channel)?;
            pretty(&zelist::channel::distinguishability_hypergraph(&ch).to_json_value()?)
        }
        ChannelCmd::FromGraph { graph } => {
            let g = input::graph(&graph)?;
            pretty(&channel_from_hypergraph(&g, budget)?.to_json_value())
        }
    }
}

fn measures(a: MeasuresArgs, budget: &Budget) -> Result<String> {
    let (g, p) = input::source(&a.source)?;
    let records = measure_records(&g, &p, a.list_size, a.strategy.into(), budget)?;
    match a.format {
        FormatArg::Json => pretty(&serde_json::to_value(&records)?),
        FormatArg::Csv => {
            let mut out = String::from("measure,L,ell,value_bits,strategy,budget_used\n");
            for r in &records {
                let opt = |v: Option<String>| v.unwrap_or_default();
                out += &format!(
                    "{},{},{},{},{},{}\n",
                    r.measure,
                    r.list_size,
                    opt(r.ell.map(|e| e.to_string())),
                    opt(r.value_bits.map(|v| v.to_string())),
                    r.strategy,
                    r.budget_used
                );
            }
            Ok(out)
        }
    }
}

fn sweep(
    a: &SweepArgs,
    trials: u64,
    seed: Option<u64>,
    exact: bool,
    budget: &Budget,
) -> Result<String> {
    let (graph, dist) = input::source(&a.source)?;
    let sizes = if a.messages.is_empty() {
        CodeSizes::Rates(a.rate.clone())
    } else {
        CodeSizes::Messages(a.messages.clone())
    };
    let spec = ExperimentSpec {
        graph,
        dist,
        list_size: a.list_size,
        sizes,
        blocklengths: input::n_range(&a.n_range)?,
        trials,
        seed,
        strategy: a.strategy.into(),
        exact,
    };
    let rows = run_experiment(&spec, budget)?;
    Ok(emit_report(&rows, a.format.into())?)
}

fn codes(cmd: CodesCmd, budget: &Budget) -> Result<String> {
    match cmd {
        CodesCmd::Bounds(a) => sweep(&a, 0, None, false, budget),
        CodesCmd::Mc {
            sweep: a,
            trials,
            seed,
        } => sweep(&a, trials, Some(seed), false, budget),
        CodesCmd::Exact(a) => sweep(&a, 0, None, true, budget),
        CodesCmd::Verify {
            channel,
            graph,
            code,
            list_size,
        } => {
            let code = input::codebook(&code)?;
            let (g, ch) = input::hypergraph_of(channel.as_deref(), graph.as_deref())?;
            let n = u32::try_from(code.n)
                .map_err(|_| Error::InvalidCodebook("blocklength too large".into()))?;
            let mut out = json!({ "n": code.n, "M": code.messages(), "L": list_size });
            match ch {
                Some(ch) => {
                    let ext = extension_channel(&ch, n)?;
                    let ok = verify_zero_error_code(&code, &ext.hypergraph(), list_size)?;
                    out["zero_error"] = json!(ok);
                    if ok {
                        let dec = build_list_decoder(&code, &ext, list_size, budget)?;
                        let table: Vec<Value> = dec
                            .table
                            .iter()
                            .map(|(y, ms)| json!({ "output": y, "messages": ms }))
                            .collect();
                        out["decoder"] = Value::Array(table);
                    }
                }
                None => {
                    let power = if n == 1 { g } else { g.conormal_power(n)? };
                    out["zero_error"] = json!(verify_zero_error_code(&code, &power, list_size)?);
                }
            }
            pretty(&out)
        }
        CodesCmd::Rates { source, list_size } => {
            let (g, p) = input::source(&source)?;
            pretty(&serde_json::to_value(achievable_rate_threshold(
                &g, &p, list_size, budget,
            )?)?)
        }
    }
}

fn birthday(cmd: BirthdayCmd, budget: &Budget) -> Result<String> {
    match cmd {
        BirthdayCmd::Exact { occ, draws, n } => {
            let p = input::dist(&occ.probs)?;
            let prob = product_no_multicollision_prob(&p, n, draws, occ.max_mult, budget)?;
            pretty(&json!({ "n": n, "M": draws, "L": occ.max_mult, "probability": prob }))
        }
        BirthdayCmd::Nstar { occ, draws, eps } => {
            let p = input::dist(&occ.probs)?;
            let ns = n_star(draws, eps, &p, occ.max_mult, budget)?;
            pretty(
                &json!({ "M": draws, "L": occ.max_mult, "eps": eps, "n_star": ns.n,
                "probability": ns.probability, "monotone": ns.monotone }),
            )
        }
        BirthdayCmd::Curve { occ, draws, eps } => {
            let p = input::dist(&occ.probs)?;
            pretty(&serde_json::to_value(renyi_ratio_curve(
                &p,
                occ.max_mult,
                eps,
                &draws,
                budget,
            )?)?)
        }
    }
}

fn entropy(cmd: EntropyCmd, budget: &Budget) -> Result<String> {
    match cmd {
        EntropyCmd::Chain { graph, probs } => {
            let g = SimpleGraph::from_hypergraph(&input::graph(&graph)?, budget.mis_vertices)?;
            let report = entropy_chain_check(&g, &input::dist(&probs)?, budget)?;
            if !report.chain_holds {
                return Err(Error::Numeric(format!(
                    "chain I2 <= H2 <= H1 violated: {} / {} / {}",
                    report.i2_bits, report.h2_bits, report.h1_bits
                ))
                .into());
            }
            pretty(&serde_json::to_value(report)?)
        }
        EntropyCmd::Clique { graph } => {
            let g = SimpleGraph::from_hypergraph(&input::graph(&graph)?, budget.clique_vertices)?;
            let ms = motzkin_straus_value(&g, budget)?;
            let mut v = serde_json::to_value(ms)?;
            v["turan_bound"] = json!(turan_bound(&g)?);
            pretty(&v)
        }
    }
}
