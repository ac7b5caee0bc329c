//! Identity registry, verdicts and parameter sweeps.

mod registry;
pub mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{EvalConfig, Evaluator};
use crate::relations::{IdentityInstance, Params};

pub use registry::registry;
pub use report::{Format, Report};

pub const DEFAULT_SLACK: f64 = 1e-9;

/// A registered identity with its parameter grids.
pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// The displayed formula this entry transcribes.
    pub anchor: &'static str,
    pub params: &'static [&'static str],
    build: fn(&registry::Args) -> Result<IdentityInstance>,
    default_grid: fn() -> Vec<Params>,
    full_grid: fn() -> Vec<Params>,
}

impl Identity {
    pub fn build(&self, params: &Params) -> Result<IdentityInstance> {
        for name in params.keys() {
            if !self.params.contains(&name.as_str()) {
                return Err(Error::BadParams { id: self.id.into(), message: format!("unknown parameter `{name}`") });
            }
        }
        for name in self.params {
            if !params.contains_key(*name) {
                return Err(Error::BadParams { id: self.id.into(), message: format!("missing parameter `{name}`") });
            }
        }
        Ok((self.build)(&registry::Args { id: self.id, params })?.with_params(params.clone()))
    }

    pub fn grid(&self, full: bool) -> Vec<Params> {
        if full {
            (self.full_grid)()
        } else {
            (self.default_grid)()
        }
    }
}

pub fn find(id: &str) -> Result<&'static Identity> {
    registry().iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    OutOfDomain,
    BudgetNotMet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::OutOfDomain => "OUT_OF_DOMAIN",
            Status::BudgetNotMet => "BUDGET_NOT_MET",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub params: Params,
    /// Both sides as combinations, `lhs = rhs`.
    pub instance: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub abs_diff: Option<f64>,
    pub budget: Option<f64>,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub eval: EvalConfig,
    pub slack: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { eval: EvalConfig::default(), slack: DEFAULT_SLACK }
    }
}

/// Evaluates a built instance.
pub fn judge(inst: &IdentityInstance, ev: &Evaluator, slack: f64) -> Result<Verdict> {
    let mut v = Verdict {
        id: inst.id.clone(),
        params: inst.params.clone(),
        instance: format!("{} = {}", inst.lhs, inst.rhs),
        lhs: None,
        rhs: None,
        abs_diff: None,
        budget: None,
        status: Status::OutOfDomain,
        note: inst.note.clone(),
    };
    let sides = match (ev.eval_combo(&inst.lhs), ev.eval_combo(&inst.rhs)) {
        (Ok(l), Ok(r)) => Some((l, r)),
        (Err(Error::DivergentAtom(a)), _) | (_, Err(Error::DivergentAtom(a))) => {
            v.note = Some(format!("divergent atom {a}"));
            None
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if let Some((l, r)) = sides {
        let diff = (l.value - r.value).abs();
        let budget = l.error_bound + r.error_bound + slack;
        v.lhs = Some(l.value);
        v.rhs = Some(r.value);
        v.abs_diff = Some(diff);
        v.budget = Some(budget);
        if inst.domain_ok {
            v.status = if diff > budget {
                Status::Fail
            } else if !(l.converged && r.converged) {
                Status::BudgetNotMet
            } else {
                Status::Pass
            };
        }
    }
    if !inst.domain_ok {
        let reason = inst.reason.clone().unwrap_or_default();
        v.note = Some(match v.note {
            Some(n) if !reason.contains(&n) => format!("{reason}; {n}"),
            _ => reason,
        });
    }
    Ok(v)
}

/// Builds and judges one instance.
pub fn run(id: &str, params: &Params, cfg: &SuiteConfig) -> Result<Verdict> {
    let ev = Evaluator::new(cfg.eval.clone())?;
    judge(&find(id)?.build(params)?, &ev, cfg.slack)
}

/// Judges every grid point, in grid order, sharing one atom memo.
pub fn sweep(id: &str, grid: &[Params], cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    let identity = find(id)?;
    let ev = Evaluator::new(cfg.eval.clone())?;
    grid.par_iter().map(|p| judge(&identity.build(p)?, &ev, cfg.slack)).collect()
}

/// Every registered identity over its default (or full) grid.
pub fn run_suite(full: bool, cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    let ev = Evaluator::new(cfg.eval.clone())?;
    let jobs: Vec<(&Identity, Params)> =
        registry().iter().flat_map(|i| i.grid(full).into_iter().map(move |p| (i, p))).collect();
    jobs.par_iter().map(|(i, p)| judge(&i.build(p)?, &ev, cfg.slack)).collect()
}

/// True when no verdict is a FAIL.
pub fn all_clear(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.status != Status::Fail)
}
