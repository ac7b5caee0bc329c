//! Builders for structural identities. Each returns both sides as
//! combinations; nothing here evaluates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::combo::{int, LinearCombo};
use crate::forms::GeneralForm;
use crate::index::{weak_compositions, MultiIndex};

pub type Params = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityInstance {
    pub id: String,
    pub params: Params,
    pub lhs: LinearCombo,
    pub rhs: LinearCombo,
    pub domain_ok: bool,
    pub reason: Option<String>,
    /// Remark carried into the report without affecting the verdict.
    pub note: Option<String>,
}

impl IdentityInstance {
    pub fn new(id: &str, lhs: LinearCombo, rhs: LinearCombo) -> Self {
        let mut inst = IdentityInstance {
            id: id.to_string(),
            params: Params::new(),
            lhs,
            rhs,
            domain_ok: true,
            reason: None,
            note: None,
        };
        if let Some(bad) = inst.lhs.divergent_atom().or_else(|| inst.rhs.divergent_atom()) {
            inst.domain_ok = false;
            inst.reason = Some(format!("divergent atom {bad}"));
        }
        inst
    }

    /// An instance outside the statement's hypotheses.
    pub fn out_of_domain(id: &str, reason: impl Into<String>) -> Self {
        IdentityInstance {
            id: id.to_string(),
            params: Params::new(),
            lhs: LinearCombo::zero(),
            rhs: LinearCombo::zero(),
            domain_ok: false,
            reason: Some(reason.into()),
            note: None,
        }
    }

    /// Keeps both sides but marks the instance as outside the statement.
    pub fn outside(mut self, reason: impl Into<String>) -> Self {
        self.domain_ok = false;
        self.reason = Some(reason.into());
        self
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// `lhs − rhs`.
    pub fn difference(&self) -> LinearCombo {
        &self.lhs - &self.rhs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "domain_ok": self.domain_ok,
            "reason": self.reason,
        })
    }
}

/// Concatenation of index pieces.
pub fn cat(parts: &[&MultiIndex]) -> MultiIndex {
    parts.iter().fold(MultiIndex::empty(), |acc, p| acc.concat(p))
}

pub fn ones(m: u32) -> MultiIndex {
    MultiIndex::ones(m as usize)
}

pub fn reps(e: u32, m: u32) -> MultiIndex {
    MultiIndex::repeat(e, m as usize)
}

pub fn single(e: u32) -> MultiIndex {
    MultiIndex::new([e])
}

fn z(idx: MultiIndex) -> LinearCombo {
    LinearCombo::zeta(idx)
}

fn zs(idx: MultiIndex) -> LinearCombo {
    LinearCombo::zeta_star(idx)
}

fn form(f: GeneralForm) -> LinearCombo {
    LinearCombo::form(f)
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `α_a, …, α_b` (1-based, inclusive); empty when `a > b`.
fn seg(alpha: &MultiIndex, a: usize, b: usize) -> MultiIndex {
    if a > b {
        MultiIndex::empty()
    } else {
        alpha.slice(a - 1..b)
    }
}

/// `α_b, …, α_a`, descending.
fn rseg(alpha: &MultiIndex, a: usize, b: usize) -> MultiIndex {
    seg(alpha, a, b).reversed()
}

fn tail_at_least_two(idx: &MultiIndex) -> bool {
    idx.last().is_some_and(|e| e >= 2)
}

/// `ζ(α) ζ⋆(β) = Z_L(α; β) + Z_L(β₁, α; β₂, …, β_m)`.
pub fn product_split_l(alpha: &MultiIndex, beta: &MultiIndex) -> IdentityInstance {
    const ID: &str = "split_L";
    if !tail_at_least_two(alpha) || !tail_at_least_two(beta) {
        return IdentityInstance::out_of_domain(ID, "needs last(α) ≥ 2 and last(β) ≥ 2");
    }
    let lhs = &z(alpha.clone()) * &zs(beta.clone());
    let moved = alpha.prepend(beta.exps()[0]);
    let rhs = &form(GeneralForm::zl(alpha.clone(), beta.clone()))
        + &form(GeneralForm::zl(moved, beta.slice(1..beta.depth())));
    IdentityInstance::new(ID, lhs, rhs)
}

/// `ζ(α) ζ⋆(β) = Z_U(α; β) + Z_U(α, β_m; β₁, …, β_{m−1})`.
pub fn product_split_u(alpha: &MultiIndex, beta: &MultiIndex) -> IdentityInstance {
    const ID: &str = "split_U";
    if !tail_at_least_two(alpha) || !tail_at_least_two(beta) {
        return IdentityInstance::out_of_domain(ID, "needs last(α) ≥ 2 and last(β) ≥ 2");
    }
    let m = beta.depth();
    let lhs = &z(alpha.clone()) * &zs(beta.clone());
    let rhs = &form(GeneralForm::zu(alpha.clone(), beta.clone()))
        + &form(GeneralForm::zu(alpha.append(beta.exps()[m - 1]), beta.slice(0..m - 1)));
    IdentityInstance::new(ID, lhs, rhs)
}

/// `ζ(α) + (−1)^r ζ⋆(α_r,…,α₁) = Σ_{k<r} (−1)^{k+1} ζ⋆(α_k,…,α₁) ζ(α_{k+1},…,α_r)`.
pub fn parity_l(alpha: &MultiIndex) -> IdentityInstance {
    const ID: &str = "parity_L";
    if alpha.is_empty() || alpha.is_signed() || alpha.exps()[0] < 2 || !tail_at_least_two(alpha) {
        return IdentityInstance::out_of_domain(ID, "needs α₁ ≥ 2 and α_r ≥ 2");
    }
    let r = alpha.depth();
    let lhs = &z(alpha.clone()) + &zs(alpha.reversed()).scale(&sign(r));
    let mut rhs = LinearCombo::zero();
    for k in 1..r {
        let t = &zs(rseg(alpha, 1, k)) * &z(seg(alpha, k + 1, r));
        rhs = &rhs + &t.scale(&sign(k + 1));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

/// `ζ⋆(α_r,…,α₁) + (−1)^r ζ(α) = Σ_{k<r} (−1)^{k+1} ζ(α₁,…,α_k) ζ⋆(α_r,…,α_{k+1})`.
pub fn parity_u(alpha: &MultiIndex) -> IdentityInstance {
    const ID: &str = "parity_U";
    if alpha.is_empty() || alpha.is_signed() || alpha.exps().iter().any(|&e| e < 2) {
        return IdentityInstance::out_of_domain(ID, "needs every α_i ≥ 2");
    }
    let r = alpha.depth();
    let lhs = &zs(alpha.reversed()) + &z(alpha.clone()).scale(&sign(r));
    let mut rhs = LinearCombo::zero();
    for k in 1..r {
        let t = &z(seg(alpha, 1, k)) * &zs(rseg(alpha, k + 1, r));
        rhs = &rhs + &t.scale(&sign(k + 1));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Z_U(α; β) = Z_B(α; β) + Z_B(β₁, α; β₂, …, β_m)`.
pub fn zu_to_zb(alpha: &MultiIndex, beta: &MultiIndex) -> IdentityInstance {
    const ID: &str = "zu_zb_rel";
    if !tail_at_least_two(alpha) || beta.is_empty() {
        return IdentityInstance::out_of_domain(ID, "needs last(α) ≥ 2 and a nonempty β");
    }
    let lhs = form(GeneralForm::zu(alpha.clone(), beta.clone()));
    let rhs = &form(GeneralForm::zb(alpha.clone(), beta.clone()))
        + &form(GeneralForm::zb(alpha.prepend(beta.exps()[0]), beta.slice(1..beta.depth())));
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Z_L(α; β) = Z_B(α; β) + Z_B(α, β_m; β₁, …, β_{m−1})`.
pub fn zl_to_zb(alpha: &MultiIndex, beta: &MultiIndex) -> IdentityInstance {
    const ID: &str = "zl_zb_rel";
    if !tail_at_least_two(alpha) || !tail_at_least_two(beta) {
        return IdentityInstance::out_of_domain(ID, "needs last(α) ≥ 2 and last(β) ≥ 2");
    }
    let m = beta.depth();
    let lhs = form(GeneralForm::zl(alpha.clone(), beta.clone()));
    let rhs = &form(GeneralForm::zb(alpha.clone(), beta.clone()))
        + &form(GeneralForm::zb(alpha.append(beta.exps()[m - 1]), beta.slice(0..m - 1)));
    IdentityInstance::new(ID, lhs, rhs)
}

fn recursion_domain(alpha: &MultiIndex, m: usize, p: usize) -> Option<String> {
    let r = alpha.depth();
    if !tail_at_least_two(alpha) {
        return Some("needs α_r ≥ 2".into());
    }
    if m < 1 || m >= r {
        return Some(format!("needs 1 ≤ m ≤ r − 1 (m = {m}, r = {r}); m = r leaves no strict chain"));
    }
    if p < 1 || p > m {
        return Some(format!("needs 1 ≤ p ≤ m (p = {p}, m = {m})"));
    }
    None
}

/// `Z_B(α_{m+1},…,α_r; α_m,…,α₁) = (−1)^p Z_B(α_{m+1−p},…,α_r; α_{m−p},…,α₁)
///  + Σ_{k=1}^p (−1)^{k−1} Z_U(α_{m+2−k},…,α_r; α_{m+1−k},…,α₁)`.
pub fn zb_recursion(alpha: &MultiIndex, m: usize, p: usize) -> IdentityInstance {
    const ID: &str = "zb_rec";
    if let Some(why) = recursion_domain(alpha, m, p) {
        return IdentityInstance::out_of_domain(ID, why);
    }
    let r = alpha.depth();
    let lhs = form(GeneralForm::zb(seg(alpha, m + 1, r), rseg(alpha, 1, m)));
    let mut rhs = form(GeneralForm::zb(seg(alpha, m + 1 - p, r), rseg(alpha, 1, m - p))).scale(&sign(p));
    for k in 1..=p {
        let t = form(GeneralForm::zu(seg(alpha, m + 2 - k, r), rseg(alpha, 1, m + 1 - k)));
        rhs = &rhs + &t.scale(&sign(k - 1));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Z_B(α_{m+1},…,α_r; α_m,…,α₁) = (−1)^m ζ(α) + Σ_{k=1}^m (−1)^{m−k} Z_U(α_{k+1},…,α_r; α_k,…,α₁)`.
pub fn zuzb_zeta(alpha: &MultiIndex, m: usize) -> IdentityInstance {
    const ID: &str = "prop71";
    if let Some(why) = recursion_domain(alpha, m, m.max(1)) {
        return IdentityInstance::out_of_domain(ID, why);
    }
    let r = alpha.depth();
    let lhs = form(GeneralForm::zb(seg(alpha, m + 1, r), rseg(alpha, 1, m)));
    let mut rhs = z(alpha.clone()).scale(&sign(m));
    for k in 1..=m {
        let t = form(GeneralForm::zu(seg(alpha, k + 1, r), rseg(alpha, 1, k)));
        rhs = &rhs + &t.scale(&sign(m - k));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

fn l_recursion_domain(alpha: &MultiIndex, m: usize, p: usize) -> Option<String> {
    let r = alpha.depth();
    if m < 1 || m >= r {
        return Some(format!("needs 1 ≤ m ≤ r − 1 (m = {m}, r = {r})"));
    }
    if p < 1 || p > m {
        return Some(format!("needs 1 ≤ p ≤ m (p = {p}, m = {m})"));
    }
    // every Z_L in the chain needs both last exponents ≥ 2
    if alpha.exps()[m - p..=m].iter().any(|&e| e < 2) {
        return Some(format!("needs α_i ≥ 2 for {} ≤ i ≤ {}", m + 1 - p, m + 1));
    }
    None
}

/// `Z_B(α_r,…,α_{m+1}; α₁,…,α_m) = (−1)^p Z_B(α_r,…,α_{m+1−p}; α₁,…,α_{m−p})
///  + Σ_{k=1}^p (−1)^{k−1} Z_L(α_r,…,α_{m+2−k}; α₁,…,α_{m+1−k})`.
pub fn zl_recursion(alpha: &MultiIndex, m: usize, p: usize) -> IdentityInstance {
    const ID: &str = "zl_rec";
    if let Some(why) = l_recursion_domain(alpha, m, p) {
        return IdentityInstance::out_of_domain(ID, why);
    }
    let r = alpha.depth();
    let lhs = form(GeneralForm::zb(rseg(alpha, m + 1, r), seg(alpha, 1, m)));
    let mut rhs = form(GeneralForm::zb(rseg(alpha, m + 1 - p, r), seg(alpha, 1, m - p))).scale(&sign(p));
    for k in 1..=p {
        let t = form(GeneralForm::zl(rseg(alpha, m + 2 - k, r), seg(alpha, 1, m + 1 - k)));
        rhs = &rhs + &t.scale(&sign(k - 1));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Z_B(α_r,…,α_{m+1}; α₁,…,α_m) = (−1)^m ζ(α_r,…,α₁) + Σ_{k=1}^m (−1)^{m−k} Z_L(α_r,…,α_{k+1}; α₁,…,α_k)`.
pub fn zlzb_zeta(alpha: &MultiIndex, m: usize) -> IdentityInstance {
    const ID: &str = "zl_prop71";
    if let Some(why) = l_recursion_domain(alpha, m, m.max(1)) {
        return IdentityInstance::out_of_domain(ID, why);
    }
    let r = alpha.depth();
    let lhs = form(GeneralForm::zb(rseg(alpha, m + 1, r), seg(alpha, 1, m)));
    let mut rhs = z(alpha.reversed()).scale(&sign(m));
    for k in 1..=m {
        let t = form(GeneralForm::zl(rseg(alpha, k + 1, r), seg(alpha, 1, k)));
        rhs = &rhs + &t.scale(&sign(m - k));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

fn height_one(n: u32, star: bool, alternating: bool) -> LinearCombo {
    let mut out = LinearCombo::zero();
    for a in 0..=n {
        let b = n - a;
        let idx = ones(a).append(b + 2);
        let atom = if star { zs(idx) } else { z(idx) };
        let s = if alternating { sign(b as usize) } else { int(1) };
        out = &out + &atom.scale(&s);
    }
    out
}

/// `Z₋(n) = Σ_{a+b=n} (−1)^b ζ({1}^a, b+2)`.
pub fn z_minus(n: u32) -> LinearCombo {
    height_one(n, false, true)
}

/// `Z₊(n) = Σ_{a+b=n} ζ({1}^a, b+2)`.
pub fn z_plus(n: u32) -> LinearCombo {
    height_one(n, false, false)
}

/// `Z⋆₋(n) = Σ_{a+b=n} (−1)^b ζ⋆({1}^a, b+2)`.
pub fn z_star_minus(n: u32) -> LinearCombo {
    height_one(n, true, true)
}

/// `Z⋆₊(n) = Σ_{a+b=n} ζ⋆({1}^a, b+2)`.
pub fn z_star_plus(n: u32) -> LinearCombo {
    height_one(n, true, false)
}

/// `Σ_{a+b=n} (−1)^a ζ({s}^a) ζ⋆({s}^b) = [n = 0]`.
pub fn orthogonality(s: u32, n: u32) -> IdentityInstance {
    const ID: &str = "orthogonality";
    if s < 2 {
        return IdentityInstance::out_of_domain(ID, "needs s ≥ 2");
    }
    let mut lhs = LinearCombo::zero();
    for a in 0..=n {
        let t = &z(reps(s, a)) * &zs(reps(s, n - a));
        lhs = &lhs + &t.scale(&sign(a as usize));
    }
    let rhs = if n == 0 { LinearCombo::one() } else { LinearCombo::zero() };
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Σ_{|a|=m} ζ({s}^{a₀}, r₁, {s}^{a₁}, …, r_n, {s}^{a_n})
///  = Σ_{|a|=m} (−1)^{m−a₀} ζ({s}^{a₀}) ζ(s a₁ + r₁, …, s a_n + r_n)`.
pub fn rs_transform(s: u32, m: u32, r: &MultiIndex) -> IdentityInstance {
    const ID: &str = "rs_id";
    if s < 2 || r.is_empty() || r.is_signed() || !tail_at_least_two(r) {
        return IdentityInstance::out_of_domain(ID, "needs s ≥ 2 and a nonempty r list ending in r_n ≥ 2");
    }
    let n = r.depth();
    let mut lhs = LinearCombo::zero();
    let mut rhs = LinearCombo::zero();
    for a in weak_compositions(m, n + 1) {
        let mut idx = reps(s, a[0]);
        let mut merged = Vec::with_capacity(n);
        for (j, &rj) in r.exps().iter().enumerate() {
            idx = cat(&[&idx, &single(rj), &reps(s, a[j + 1])]);
            merged.push(s * a[j + 1] + rj);
        }
        lhs = &lhs + &z(idx);
        let t = &z(reps(s, a[0])) * &z(MultiIndex::new(merged));
        rhs = &rhs + &t.scale(&sign((m - a[0]) as usize));
    }
    IdentityInstance::new(ID, lhs, rhs)
}

/// `Σ_{|d|=m, r+1 parts} ζ(d₁+2, …, d_{r+1}+2) ∏ (d_j+1)`.
pub fn twos_weighted(m: u32, r: u32) -> LinearCombo {
    let mut out = LinearCombo::zero();
    for d in weak_compositions(m, r as usize + 1) {
        let coeff: i64 = d.iter().map(|&x| x as i64 + 1).product();
        let idx = MultiIndex::new(d.iter().map(|&x| x + 2).collect::<Vec<_>>());
        out = &out + &z(idx).scale(&int(coeff));
    }
    out
}
