//! Certified numerical evaluation.
//!
//! Every value comes with `error_bound`, a proven bound on the distance to
//! the true value covering both truncation and floating point rounding.
//! Unsigned indices default to the half-argument convolution
//! ([`Method::Convolution`]), which converges geometrically; alternating
//! indices use the truncated nested sum ([`Method::Direct`]).

pub(crate) mod convolution;
pub(crate) mod direct;
pub mod exact;
pub(crate) mod riemann;

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combo::{Atom, LinearCombo};
use crate::error::{Error, Result};
use crate::forms;
use crate::index::MultiIndex;

pub use direct::tail_bound;
pub use riemann::{bernoulli, eval_riemann};

/// Strict (`<`) or weak (`≤`) chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Summation {
    Plain,
    Compensated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Direct,
    Convolution,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub target_eps: f64,
    pub max_cutoff: u64,
    pub summation: Summation,
    pub method: Method,
    pub max_expansion_depth: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_eps: 1e-7,
            max_cutoff: 100_000_000,
            summation: Summation::Compensated,
            method: Method::Auto,
            max_expansion_depth: forms::DEFAULT_DEPTH_LIMIT,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_eps > 0.0 && self.target_eps.is_finite()) {
            return Err(Error::Config(format!("target_eps must be positive, got {}", self.target_eps)));
        }
        if self.max_cutoff < 10 {
            return Err(Error::Config(format!("max_cutoff must be at least 10, got {}", self.max_cutoff)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_bound: f64,
    pub cutoff: u64,
    pub terms: u64,
    /// False when the truncation bound could not reach `target_eps`
    /// within `max_cutoff`.
    pub converged: bool,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        EvalResult { value, error_bound: 0.0, cutoff: 0, terms: 0, converged: true }
    }
}

/// Rounding allowance for `levels` nested running sums of `adds` terms,
/// each term formed with about `per_term` roundings, where `magnitude`
/// bounds the sum of absolute values at the outer level. Errors of an
/// inner level reach the next one scaled by the same weights, so the
/// relative allowances add up across levels.
pub(crate) fn rounding(summation: Summation, levels: usize, adds: u64, per_term: u64, magnitude: f64) -> f64 {
    let eps = f64::EPSILON;
    let add = match summation {
        Summation::Plain => adds as f64,
        Summation::Compensated => 2.0 + (adds as f64).powi(2) * eps,
    };
    levels as f64 * (add + per_term as f64) * eps * magnitude
}

/// Compensated accumulator; `get` honours the plain mode by dropping the
/// correction.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub(crate) fn get(&self, mode: Summation) -> f64 {
        match mode {
            Summation::Plain => self.sum,
            Summation::Compensated => self.value(),
        }
    }
}

fn check_index(idx: &MultiIndex) -> Result<()> {
    if idx.is_empty() || idx.is_admissible() {
        Ok(())
    } else {
        Err(Error::Divergent(format!("({idx}) needs a last exponent of at least 2")))
    }
}

/// `ζ(idx)` or `ζ⋆(idx)` with a certified bound.
pub fn eval_mzv(idx: &MultiIndex, mode: Mode, cfg: &EvalConfig) -> Result<EvalResult> {
    cfg.validate()?;
    check_index(idx)?;
    if idx.is_empty() {
        return Ok(EvalResult::exact(1.0));
    }
    let method = match cfg.method {
        Method::Auto if idx.is_signed() => Method::Direct,
        Method::Auto => Method::Convolution,
        Method::Convolution if idx.is_signed() => {
            return Err(Error::Config("the convolution method needs an unsigned index".into()))
        }
        m => m,
    };
    match method {
        Method::Direct => {
            let (n, converged) = direct::choose_cutoff(idx, mode, cfg.target_eps, cfg.max_cutoff);
            let mut res = direct::eval_at_cutoff(idx, mode, n, cfg.summation);
            res.converged = converged;
            Ok(res)
        }
        _ => match mode {
            Mode::Strict if idx.depth() == 1 => eval_riemann(idx.exps()[0]),
            Mode::Strict => Ok(convolution::zeta(idx, cfg.summation)),
            Mode::Star => {
                let strict_cfg = EvalConfig { method: Method::Convolution, ..cfg.clone() };
                let ev = Evaluator::new(strict_cfg)?;
                ev.eval_combo(&forms::expand_star(idx)?)
            }
        },
    }
}

/// Truncated sum at a caller-chosen cutoff, bounded like [`eval_mzv`].
pub fn eval_at_cutoff(idx: &MultiIndex, mode: Mode, n: u64, cfg: &EvalConfig) -> Result<EvalResult> {
    cfg.validate()?;
    check_index(idx)?;
    if idx.is_empty() {
        return Ok(EvalResult::exact(1.0));
    }
    Ok(direct::eval_at_cutoff(idx, mode, n, cfg.summation))
}

/// Evaluates atoms once per configuration; safe to share across threads.
pub struct Evaluator {
    cfg: EvalConfig,
    memo: Mutex<HashMap<Atom, Result<EvalResult>>>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Evaluator { cfg, memo: Mutex::new(HashMap::new()) })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn eval_atom(&self, atom: &Atom) -> Result<EvalResult> {
        if let Some(hit) = self.memo.lock().unwrap().get(atom) {
            return hit.clone();
        }
        // computed outside the lock; concurrent duplicates write equal values
        let res = self.compute(atom);
        self.memo.lock().unwrap().insert(atom.clone(), res.clone());
        res
    }

    fn compute(&self, atom: &Atom) -> Result<EvalResult> {
        atom.check_convergent()?;
        match atom {
            Atom::Riemann(k) => eval_riemann(*k),
            Atom::Zeta(idx) => eval_mzv(idx, Mode::Strict, &self.cfg),
            Atom::ZetaStar(idx) => eval_mzv(idx, Mode::Star, &self.cfg),
            Atom::Form(form) => {
                let expanded = forms::expand_with_limit(form, self.cfg.max_expansion_depth)?;
                self.eval_combo(&expanded)
            }
        }
    }

    /// Value of a combination with first-order worst-case bound
    /// propagation through products and sums.
    pub fn eval_combo(&self, combo: &LinearCombo) -> Result<EvalResult> {
        if let Some(bad) = combo.divergent_atom() {
            return Err(Error::DivergentAtom(bad.to_string()));
        }
        let mut total = Neumaier::default();
        let mut bound = 0.0;
        let mut magnitude = 0.0;
        let mut count = 0u64;
        let mut longest = 0u64;
        let mut cutoff = 0;
        let mut terms = 0;
        let mut converged = true;
        for (mono, q) in combo.terms() {
            let qf = q.to_f64().ok_or_else(|| Error::Invalid(format!("coefficient {q} out of range")))?;
            let mut vals = Vec::with_capacity(mono.atoms().len());
            for atom in mono.atoms() {
                let r = self.eval_atom(atom)?;
                cutoff = cutoff.max(r.cutoff);
                terms += r.terms;
                converged &= r.converged;
                vals.push(r);
            }
            let product: f64 = vals.iter().map(|r| r.value).product();
            let mut prod_bound = 0.0;
            for f in 0..vals.len() {
                let others: f64 = vals
                    .iter()
                    .enumerate()
                    .filter(|(g, _)| *g != f)
                    .map(|(_, r)| r.value.abs() + r.error_bound)
                    .product();
                prod_bound += vals[f].error_bound * others;
            }
            let term = qf * product;
            total.add(term);
            bound += q.abs().to_f64().unwrap_or(f64::INFINITY) * prod_bound;
            magnitude += term.abs();
            count += 1;
            longest = longest.max(vals.len() as u64);
        }
        let value = total.get(self.cfg.summation);
        Ok(EvalResult {
            value,
            // coefficient conversion and the product itself
            error_bound: bound + rounding(self.cfg.summation, 1, count, longest + 2, magnitude),
            cutoff,
            terms,
            converged,
        })
    }
}

/// One-shot combination evaluation.
pub fn eval_combo(combo: &LinearCombo, cfg: &EvalConfig) -> Result<EvalResult> {
    Evaluator::new(cfg.clone())?.eval_combo(combo)
}
