//! Front end for the `mzv` binary: argument definitions, the expression
//! language and command dispatch.

pub mod expr;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mzv_core::eval::Method;
use mzv_core::forms::expand_with_limit;
use mzv_core::relations::Params;
use mzv_core::suite::{self, Format, Report, Status, SuiteConfig, Verdict};
use mzv_core::{EvalConfig, Evaluator, FormKind, GeneralForm};

pub const CUTOFF_ENV: &str = "MZV_MAX_CUTOFF";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("bad argument: {0}")]
    Arg(String),

    #[error(transparent)]
    Core(#[from] mzv_core::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values: evaluation, expansion and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Auto,
    Direct,
    Convolution,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Direct => Method::Direct,
            MethodArg::Convolution => Method::Convolution,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Zb,
    Zl,
    Zu,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Md => Format::Md,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Precision {
    /// Target absolute error per value.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest truncation point for direct summation.
    #[arg(long)]
    pub max_cutoff: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression with a certified error bound.
    Eval {
        expr: String,
        #[command(flatten)]
        precision: Precision,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the dual of an admissible index.
    Dual { index: String },
    /// Expand a two-chain sum into multiple zeta values.
    Expand {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        upper: String,
        #[arg(long, default_value = "")]
        lower: String,
        #[arg(long)]
        json: bool,
    },
    /// Check one identity on given parameters or a grid.
    Verify {
        id: String,
        /// `name=value`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        /// `default`, `full`, or `name=lo..hi,name=v,...`.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// List registered identities.
    List,
    /// Run every identity over its default grid.
    Suite {
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

/// Evaluation settings after flags and the environment are applied.
pub fn eval_config(p: &Precision) -> Result<EvalConfig, CliError> {
    let mut cfg = EvalConfig::default();
    if let Ok(v) = std::env::var(CUTOFF_ENV) {
        cfg.max_cutoff =
            v.trim().parse().map_err(|_| CliError::Arg(format!("{CUTOFF_ENV}={v} is not a positive integer")))?;
    }
    if let Some(n) = p.max_cutoff {
        cfg.max_cutoff = n;
    }
    if let Some(e) = p.eps {
        cfg.target_eps = e;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_param(s: &str) -> Result<(String, i64), CliError> {
    let (k, v) = s.split_once('=').ok_or_else(|| CliError::Arg(format!("`{s}`: expected name=value")))?;
    let v = v.trim().parse().map_err(|_| CliError::Arg(format!("`{s}`: value must be an integer")))?;
    Ok((k.trim().to_string(), v))
}

/// `name=lo..hi` or `name=v` items separated by commas; the grid is their
/// cartesian product.
pub fn parse_grid(spec: &str) -> Result<Vec<Params>, CliError> {
    let mut axes: Vec<(String, Vec<i64>)> = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) =
            item.split_once('=').ok_or_else(|| CliError::Arg(format!("grid item `{item}`: expected name=range")))?;
        let bad = || CliError::Arg(format!("grid item `{item}`: expected an integer or lo..hi"));
        let values: Vec<i64> = match v.split_once("..") {
            Some((lo, hi)) => {
                let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
                (lo..=hi).collect()
            }
            None => vec![v.trim().parse().map_err(|_| bad())?],
        };
        axes.push((k.trim().to_string(), values));
    }
    let mut grid = vec![Params::new()];
    for (name, values) in axes {
        grid = grid
            .iter()
            .flat_map(|p| {
                values.iter().map(|&v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), v);
                    q
                })
            })
            .collect();
    }
    Ok(grid)
}

fn fmt_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn opt(x: Option<f64>) -> String {
    x.map_or("-".into(), |x| format!("{x:.3e}"))
}

fn write_report(path: &PathBuf, report: &Report, format: Format) -> Result<(), CliError> {
    std::fs::write(path, report.render(format)?)?;
    Ok(())
}

fn verdict_line(v: &Verdict) -> String {
    let mut s = format!(
        "{:<14} {} {}  |diff| {}  budget {}",
        v.status.as_str(),
        v.id,
        fmt_params(&v.params),
        opt(v.abs_diff),
        opt(v.budget)
    );
    if let Some(n) = &v.note {
        s.push_str(&format!("  ({n})"));
    }
    s
}

/// Runs a command and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval { expr, precision, method, json } => {
            let mut cfg = eval_config(&precision)?;
            cfg.method = method.into();
            let parsed = expr::parse(&expr)?;
            let combo = parsed.to_combo();
            let r = Evaluator::new(cfg)?.eval_combo(&combo)?;
            if json {
                let doc = json!({
                    "expr": parsed.to_string(),
                    "value": r.value,
                    "error_bound": r.error_bound,
                    "cutoff": r.cutoff,
                    "converged": r.converged,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
            } else {
                writeln!(out, "{}", parsed)?;
                writeln!(out, "value    {:.17e}", r.value)?;
                writeln!(out, "bound    {:.3e}", r.error_bound)?;
                writeln!(out, "cutoff   {}", r.cutoff)?;
                if !r.converged {
                    writeln!(out, "note     target eps not reached at the cutoff cap")?;
                }
            }
            Ok(0)
        }
        Command::Dual { index } => {
            let idx = expr::parse_index(&index)?;
            writeln!(out, "{}", idx.dual()?)?;
            Ok(0)
        }
        Command::Expand { kind, upper, lower, json } => {
            let kind = match kind {
                KindArg::Zb => FormKind::B,
                KindArg::Zl => FormKind::L,
                KindArg::Zu => FormKind::U,
            };
            let form = GeneralForm::new(kind, expr::parse_index(&upper)?, expr::parse_index(&lower)?);
            let combo = expand_with_limit(&form, EvalConfig::default().max_expansion_depth)?;
            if json {
                let doc = json!({ "form": form.to_string(), "expansion": combo.to_json() });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
            } else {
                writeln!(out, "{form} = {combo}")?;
            }
            Ok(0)
        }
        Command::Verify { id, params, grid, precision, report, format } => {
            let identity = suite::find(&id)?;
            let fixed: Params = params.iter().map(|s| parse_param(s)).collect::<Result<_, _>>()?;
            let points = match grid.as_deref() {
                Some("default") => identity.grid(false),
                Some("full") => identity.grid(true),
                Some(spec) => parse_grid(spec)?,
                None if fixed.is_empty() => identity.grid(false),
                None => vec![Params::new()],
            };
            let points: Vec<Params> = points
                .into_iter()
                .map(|mut p| {
                    p.extend(fixed.clone());
                    p
                })
                .collect();
            let cfg = SuiteConfig { eval: eval_config(&precision)?, ..SuiteConfig::default() };
            let verdicts = suite::sweep(&id, &points, &cfg)?;
            for v in &verdicts {
                writeln!(out, "{}", verdict_line(v))?;
                if points.len() == 1 {
                    writeln!(out, "  {}", v.instance)?;
                    writeln!(out, "  lhs {}  rhs {}", opt(v.lhs), opt(v.rhs))?;
                }
            }
            let rep = Report::new(cfg, verdicts);
            if let Some(path) = report {
                write_report(&path, &rep, format.into())?;
            }
            Ok(if suite::all_clear(&rep.results) { 0 } else { 1 })
        }
        Command::List => {
            for i in suite::registry() {
                writeln!(out, "{:<18} [{}]  {}", i.id, i.params.join(", "), i.description)?;
                writeln!(out, "{:<18} {}", "", i.anchor)?;
            }
            Ok(0)
        }
        Command::Suite { full, precision, report, format } => {
            let cfg = SuiteConfig { eval: eval_config(&precision)?, ..SuiteConfig::default() };
            let verdicts = suite::run_suite(full, &cfg)?;
            let mut tally: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
            let order: Vec<&str> = suite::registry().iter().map(|i| i.id).collect();
            for v in &verdicts {
                let slot = match v.status {
                    Status::Pass => 0,
                    Status::Fail => 1,
                    Status::OutOfDomain => 2,
                    Status::BudgetNotMet => 3,
                };
                tally.entry(order.iter().find(|&&id| id == v.id).copied().unwrap_or("?")).or_default()[slot] += 1;
                if v.status == Status::Fail {
                    writeln!(out, "{}", verdict_line(v))?;
                }
            }
            writeln!(out, "{:<18} {:>5} {:>5} {:>7} {:>7}", "identity", "pass", "fail", "domain", "budget")?;
            for id in &order {
                if let Some(t) = tally.get(id) {
                    writeln!(out, "{:<18} {:>5} {:>5} {:>7} {:>7}", id, t[0], t[1], t[2], t[3])?;
                }
            }
            let rep = Report::new(cfg, verdicts);
            writeln!(
                out,
                "run {}: {} instances, {} pass, {} fail, {} out of domain, {} budget not met",
                rep.run_id,
                rep.results.len(),
                rep.count(Status::Pass),
                rep.count(Status::Fail),
                rep.count(Status::OutOfDomain),
                rep.count(Status::BudgetNotMet)
            )?;
            if let Some(path) = report {
                write_report(&path, &rep, format.into())?;
            }
            Ok(if suite::all_clear(&rep.results) { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_specs() {
        let g = parse_grid("k=2..4, r=1").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[2], Params::from([("k".into(), 4), ("r".into(), 1)]));
        assert!(parse_grid("k=a..3").is_err());
        assert!(parse_grid("k").is_err());
        assert_eq!(parse_grid("").unwrap(), vec![Params::new()]);
    }

    #[test]
    fn params() {
        assert_eq!(parse_param("m=3").unwrap(), ("m".into(), 3));
        assert!(parse_param("m3").is_err());
        assert!(parse_param("m=x").is_err());
    }
}
