//! The registered identities. Each entry pairs a builder with its grids.
//!
//! Index-valued parameters `x` are passed as `x_w` (weight) and `x_i`
//! (position in `indices_of_weight(x_w)`).

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Identity;
use crate::combo::{int, rat, LinearCombo};
use crate::error::{Error, Result};
use crate::forms::{zb_ones_expansion, zu_ones_expansion, GeneralForm};
use crate::index::{admissible_by_weight_depth, admissible_by_weight_height, indices_of_weight, MultiIndex};
use crate::relations::{self as rel, cat, ones, reps, single, twos_weighted, IdentityInstance, Params};

/// Parameter access for one builder call.
pub(super) struct Args<'a> {
    pub id: &'static str,
    pub params: &'a Params,
}

impl Args<'_> {
    fn bad(&self, message: String) -> Error {
        Error::BadParams { id: self.id.into(), message }
    }

    fn nat(&self, name: &str) -> Result<u32> {
        let v = *self.params.get(name).ok_or_else(|| self.bad(format!("missing parameter `{name}`")))?;
        u32::try_from(v).map_err(|_| self.bad(format!("`{name}` must be a nonnegative integer, got {v}")))
    }

    fn usize(&self, name: &str) -> Result<usize> {
        self.nat(name).map(|v| v as usize)
    }

    fn index(&self, name: &str) -> Result<MultiIndex> {
        let w = self.nat(&format!("{name}_w"))?;
        let i = self.usize(&format!("{name}_i"))?;
        indices_of_weight(w).nth(i).ok_or_else(|| self.bad(format!("no index number {i} of weight {w} for `{name}`")))
    }

    fn instance(&self, lhs: LinearCombo, rhs: LinearCombo) -> IdentityInstance {
        IdentityInstance::new(self.id, lhs, rhs)
    }

    fn outside(&self, reason: impl Into<String>) -> IdentityInstance {
        IdentityInstance::out_of_domain(self.id, reason)
    }
}

type Build = fn(&Args) -> Result<IdentityInstance>;

// ---- combination helpers ----

fn z(idx: MultiIndex) -> LinearCombo {
    LinearCombo::zeta(idx)
}

fn zs(idx: MultiIndex) -> LinearCombo {
    LinearCombo::zeta_star(idx)
}

fn zeta(k: u32) -> LinearCombo {
    LinearCombo::riemann(k)
}

fn idx<const N: usize>(e: [u32; N]) -> MultiIndex {
    MultiIndex::new(e)
}

fn q(n: i64) -> BigRational {
    int(n)
}

fn sign(k: u32) -> BigRational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `2^{−e}`.
fn half_pow(e: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1) << e)
}

fn binom(n: u32, k: u32) -> BigRational {
    BigRational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// Pairs `(a, b)` with `a + b = n`; empty when `n < 0`.
fn pairs(n: i64) -> impl Iterator<Item = (u32, u32)> {
    let n = n.max(-1);
    (0..=n).map(move |a| (a as u32, (n - a) as u32))
}

fn triples(n: i64) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=n.max(-1)).flat_map(move |a| pairs(n - a).map(move |(b, c)| (a as u32, b, c)))
}

fn sum(terms: impl Iterator<Item = LinearCombo>) -> LinearCombo {
    terms.sum()
}

// ---- grid helpers ----

fn axis(name: &str, range: RangeInclusive<i64>) -> Vec<Params> {
    range.map(|v| Params::from([(name.to_string(), v)])).collect()
}

fn index_axis(name: &str, weights: RangeInclusive<u32>) -> Vec<Params> {
    let mut out = Vec::new();
    for w in weights {
        for i in 0..indices_of_weight(w).count() {
            out.push(Params::from([(format!("{name}_w"), w as i64), (format!("{name}_i"), i as i64)]));
        }
    }
    out
}

fn product(a: Vec<Params>, b: Vec<Params>) -> Vec<Params> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            let mut p = x.clone();
            p.extend(y.clone());
            out.push(p);
        }
    }
    out
}

/// Drops grid points outside the identity's hypotheses.
fn keep(id: &str, grid: Vec<Params>) -> Vec<Params> {
    let identity = super::find(id).expect("registered");
    grid.into_iter().filter(|p| identity.build(p).map(|inst| inst.domain_ok).unwrap_or(false)).collect()
}

/// `(α, m, p)` grids for the recursions, `1 ≤ p ≤ m < depth(α)`.
fn chain_grid(id: &str, weights: RangeInclusive<u32>, with_p: bool) -> Vec<Params> {
    let mut out = Vec::new();
    for base in index_axis("alpha", weights) {
        let w = base["alpha_w"] as u32;
        let alpha = indices_of_weight(w).nth(base["alpha_i"] as usize).unwrap();
        for m in 1..alpha.depth() as i64 {
            let ps: Vec<i64> = if with_p { (1..=m).collect() } else { vec![-1] };
            for p in ps {
                let mut params = base.clone();
                params.insert("m".into(), m);
                if p > 0 {
                    params.insert("p".into(), p);
                }
                out.push(params);
            }
        }
    }
    keep(id, out)
}

// ---- builders ----

fn sum_formula(a: &Args) -> Result<IdentityInstance> {
    let (k, r) = (a.nat("k")?, a.usize("r")?);
    if r < 1 || k as usize <= r {
        return Ok(a.outside("needs 1 ≤ r < k"));
    }
    Ok(a.instance(sum(admissible_by_weight_depth(k, r).map(z)), zeta(k)))
}

fn sum_formula_star(a: &Args) -> Result<IdentityInstance> {
    let (k, r) = (a.nat("k")?, a.nat("r")?);
    if r < 1 || k <= r {
        return Ok(a.outside("needs 1 ≤ r < k"));
    }
    let lhs = sum(admissible_by_weight_depth(k, r as usize).map(zs));
    Ok(a.instance(lhs, zeta(k).scale(&binom(k - 1, r - 1))))
}

fn aoki_ohno(a: &Args) -> Result<IdentityInstance> {
    let (k, s) = (a.nat("k")?, a.nat("s")?);
    if s < 1 || 2 * s > k {
        return Ok(a.outside("needs 1 ≤ s ≤ k/2"));
    }
    let lhs = sum(admissible_by_weight_height(k, s as usize).map(zs));
    let coeff = binom(k - 1, 2 * s - 1) * q(2) * (q(1) - half_pow(k - 1));
    Ok(a.instance(lhs, zeta(k).scale(&coeff)))
}

fn thm1(a: &Args) -> Result<IdentityInstance> {
    let (m, n) = (a.nat("m")?, a.nat("n")?);
    let lhs = sum((1..n).map(|a1| zs(cat(&[&single(a1), &ones(m), &single(n - a1 + 1)]))));
    let inst = a.instance(lhs, zeta(m + n + 1).scale(&q((m + n) as i64)));
    Ok(if n < 2 { inst.outside("stated for n ≥ 2; recorded for information only") } else { inst })
}

fn thm2(a: &Args) -> Result<IdentityInstance> {
    let p = a.nat("p")?;
    let lhs = sum(triples(p as i64).map(|(x, y, m)| zs(cat(&[&single(x + 2), &ones(m), &single(y + 2)]))));
    let p_ = p as i64;
    let coeff = q(p_ * p_ + 3 * p_ + 1) + q(p_ + 3) * half_pow(p + 2);
    Ok(a.instance(lhs, zeta(p + 4).scale(&coeff)))
}

fn thm3_lhs(p: u32) -> LinearCombo {
    sum(triples(p as i64).map(|(x, y, m)| z(cat(&[&single(x + 2), &ones(m), &single(y + 2)])).scale(&sign(m))))
}

fn thm3(a: &Args) -> Result<IdentityInstance> {
    let p = a.nat("p")?;
    let alt = z(MultiIndex::signed([p + 2, 2], [false, true])).scale(&(q(2) * (sign(p) - q(1))));
    let rhs = &alt + &zeta(p + 4).scale(&(q(1) - half_pow(p + 2)));
    Ok(a.instance(thm3_lhs(p), rhs))
}

fn thm3_even(a: &Args) -> Result<IdentityInstance> {
    let qq = a.nat("q")?;
    Ok(a.instance(thm3_lhs(2 * qq), zeta(2 * qq + 4).scale(&(q(1) - half_pow(2 * qq + 2)))))
}

fn thm4(a: &Args) -> Result<IdentityInstance> {
    let (m, n) = (a.nat("m")?, a.nat("n")?);
    let lhs = zs(cat(&[&ones(m), &reps(2, n + 1)]));
    let rhs = sum(pairs(n as i64).map(|(p, r)| (&zs(reps(2, p)) * &twos_weighted(m, r)).scale(&sign(r))));
    Ok(a.instance(lhs, rhs))
}

fn prop_zb_dual(a: &Args) -> Result<IdentityInstance> {
    let (beta, m) = (a.index("beta")?, a.nat("m")?);
    if !beta.is_admissible() {
        return Ok(a.outside("needs an admissible β"));
    }
    let lhs = LinearCombo::form(GeneralForm::zb(beta.clone(), ones(m)));
    Ok(a.instance(lhs, zb_ones_expansion(&beta, m)?))
}

fn prop_zu_dual(a: &Args) -> Result<IdentityInstance> {
    let (beta, m) = (a.index("beta")?, a.nat("m")?);
    if !beta.is_admissible() {
        return Ok(a.outside("needs an admissible β"));
    }
    let lhs = LinearCombo::form(GeneralForm::zu(beta.clone(), ones(m)));
    Ok(a.instance(lhs, zu_ones_expansion(&beta, m)?))
}

fn zminus_closed(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let rhs = if n % 2 == 0 { zeta(n + 2).scale(&(q(2) * (q(1) - half_pow(n + 1)))) } else { LinearCombo::zero() };
    Ok(a.instance(rel::z_minus(n), rhs))
}

fn zstarplus_closed(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let coeff = q(2 * (n as i64 + 1)) * (q(1) - half_pow(n + 1));
    Ok(a.instance(rel::z_star_plus(n), zeta(n + 2).scale(&coeff)))
}

fn conv_p(a: &Args) -> Result<IdentityInstance> {
    let p = a.nat("p")?;
    let lhs = sum(pairs(p as i64).map(|(m, n)| &rel::z_minus(m) * &rel::z_star_plus(n)));
    let alt = z(MultiIndex::signed([p + 2, 2], [false, true])).scale(&(q(2) * (sign(p) - q(1))));
    let coeff = q(p as i64 + 2) * (q(p as i64 + 1) + half_pow(p + 2));
    Ok(a.instance(lhs, &alt + &zeta(p + 4).scale(&coeff)))
}

fn split_l(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::product_split_l(&a.index("alpha")?, &a.index("beta")?))
}

fn split_u(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::product_split_u(&a.index("alpha")?, &a.index("beta")?))
}

fn parity_l(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::parity_l(&a.index("alpha")?))
}

fn parity_u(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::parity_u(&a.index("alpha")?))
}

fn eq519(a: &Args) -> Result<IdentityInstance> {
    let (m, r) = (a.nat("m")?, a.nat("r")?);
    let lhs =
        sum(pairs(r as i64).map(|(qq, k)| (&z(reps(2, k)) * &zs(cat(&[&ones(m), &reps(2, qq + 1)]))).scale(&sign(k))));
    Ok(a.instance(lhs, twos_weighted(m, r).scale(&sign(r))))
}

fn orthogonality(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::orthogonality(a.nat("s")?, a.nat("n")?))
}

fn mixed_parity_sum(a: &Args) -> Result<IdentityInstance> {
    let p = a.nat("p")?;
    let lhs = sum(triples(p as i64).map(|(c, d, m)| {
        let plain = z(cat(&[&single(c + 2), &ones(m), &single(d + 2)]));
        let star = zs(cat(&[&single(d + 2), &ones(m), &single(c + 2)])).scale(&sign(m));
        &plain + &star
    }));
    Ok(a.instance(lhs, mixed_parity_rhs(p, true)))
}

/// `Σ_{m+n=p} (−1)^{m or n} Z₊(m) Z⋆₋(n)`; the sign follows the star factor.
fn mixed_parity_rhs(p: u32, sign_on_star: bool) -> LinearCombo {
    sum(pairs(p as i64).map(|(m, n)| {
        let s = if sign_on_star { sign(n) } else { sign(m) };
        (&rel::z_plus(m) * &rel::z_star_minus(n)).scale(&s)
    }))
}

fn s6_1m2(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    Ok(a.instance(zs(ones(m).append(2)), zeta(m + 2).scale(&q(m as i64 + 1))))
}

fn weighted_pairs(m: u32) -> LinearCombo {
    sum(pairs(m as i64).map(|(x, y)| z(idx([x + 2, y + 2])).scale(&q((x as i64 + 1) * (y as i64 + 1)))))
}

fn one_m_22_a(m: u32) -> LinearCombo {
    &(&zeta(2) * &zeta(m + 2)).scale(&q(m as i64 + 1)) - &weighted_pairs(m)
}

fn one_m_22_b(m: u32) -> LinearCombo {
    let head = &zeta(m + 4).scale(&q(2)) + &z(idx([m + 1, 3])).scale(&q(2));
    &head - &z(idx([2, m + 2])).scale(&q(m as i64 + 1))
}

fn s6_1m22_a(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    Ok(a.instance(zs(ones(m).append(2).append(2)), one_m_22_a(m)))
}

fn s6_1m22_b(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    Ok(a.instance(zs(ones(m).append(2).append(2)), one_m_22_b(m)))
}

fn s6_1m22_cross(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    Ok(a.instance(one_m_22_a(m), one_m_22_b(m)))
}

fn prop61_weighted(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    let mm = q(m as i64 + 1);
    let rhs = (&zeta(2) * &zeta(m + 2)).scale(&mm) + z(idx([2, m + 2])).scale(&mm)
        - zeta(m + 4).scale(&q(2))
        - z(idx([m + 1, 3])).scale(&q(2));
    Ok(a.instance(weighted_pairs(m), rhs))
}

fn s6_euler_weighted(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    let lhs =
        sum(pairs(m as i64).map(|(x, y)| (&zeta(x + 2) * &zeta(y + 2)).scale(&q((x as i64 + 1) * (y as i64 + 1)))));
    let m_ = m as i64;
    let rhs = zeta(m + 4).scale(&rat((m_ + 1) * (m_ + 2) * (m_ + 3), 6))
        + (&zeta(2) * &zeta(m + 2)).scale(&q(2 * (m_ + 1)))
        + z(idx([2, m + 2])).scale(&q(2 * (m_ + 1)))
        - (&zeta(3) * &zeta(m + 1)).scale(&q(4))
        + z(idx([3, m + 1])).scale(&q(4));
    Ok(a.instance(lhs, rhs))
}

fn eie_yang_2pow(a: &Args) -> Result<IdentityInstance> {
    let m = a.nat("m")?;
    let lhs = sum(
        pairs(m as i64).map(|(x, y)| (&zeta(x + 2) * &zeta(y + 2)).scale(&rat((x as i64 + 1) * (y as i64 + 1), 2)))
    );
    let rhs = sum(pairs(m as i64).map(|(al, be)| {
        let p2 = 1i64 << be;
        let (al_, be_) = (al as i64, be as i64);
        z(idx([al + 2, be + 2])).scale(&q(p2 * (al_ + 1) * (be_ + 1)))
            + z(idx([al + 1, be + 3])).scale(&q(p2 * (be_ + 1) * (be_ + 2)))
    }));
    Ok(a.instance(lhs, rhs))
}

fn s6_1_2n(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    Ok(a.instance(zs(reps(2, n + 1).prepend(1)), zeta(2 * n + 3).scale(&q(2))))
}

fn zagier_aggregate(a: &Args) -> Result<IdentityInstance> {
    let r = a.nat("r")?;
    let lhs = sum(pairs(r as i64).map(|(x, y)| z(cat(&[&reps(2, x), &single(3), &reps(2, y)]))));
    let rhs = sum(pairs(r as i64).map(|(x, y)| (&z(reps(2, y)) * &zeta(2 * x + 3)).scale(&sign(x))));
    Ok(a.instance(lhs, rhs))
}

fn rs_id(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::rs_transform(a.nat("s")?, a.nat("m")?, &a.index("r")?))
}

fn odd_pairs(n: u32) -> LinearCombo {
    sum(pairs(n as i64 - 1).map(|(x, y)| &zeta(2 * x + 3) * &zeta(2 * y + 3)))
}

fn one_one_twos(n: u32) -> LinearCombo {
    zs(reps(2, n + 1).prepend(1).prepend(1))
}

fn eq_112n(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let rhs = &zeta(2 * n + 4).scale(&q(2 * n as i64 + 3)) - &odd_pairs(n).scale(&q(2));
    let inst = a.instance(one_one_twos(n), rhs);
    Ok(if n == 0 { inst.with_note("empty convolution sum") } else { inst })
}

fn ohno_zudilin(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let rhs = &zs(idx([1, 2 * n + 3])).scale(&q(4)) - &zeta(2 * n + 4).scale(&q(2));
    Ok(a.instance(one_one_twos(n), rhs))
}

fn prop62(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let rhs = &zeta(2 * n + 4).scale(&rat(2 * n as i64 + 1, 2)) - &z(idx([1, 2 * n + 3])).scale(&q(2));
    let inst = a.instance(odd_pairs(n), rhs);
    Ok(if n == 0 { inst.with_note("empty left-hand side") } else { inst })
}

fn eie_yang_remark(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let lhs = sum(pairs(n as i64).map(|(x, y)| &zeta(x + 2) * &zeta(y + 2)));
    let rhs = &zeta(n + 4).scale(&q(n as i64 + 3)) - &z(idx([1, n + 3])).scale(&q(2));
    Ok(a.instance(lhs, rhs))
}

fn s6_m3(a: &Args) -> Result<IdentityInstance> {
    let n = a.nat("n")?;
    let n_ = n as i64;
    let lhs = zs(cat(&[&ones(3), &reps(2, n + 1)]));
    let lead = zeta(2 * n + 5).scale(&rat(2 * (2 * n_ + 3) * (n_ + 2), 3));
    let two = sum(pairs(n_ - 1).map(|(x, y)| &zeta(2 * x + 4) * &zeta(2 * y + 3))).scale(&q(-6));
    let three =
        sum(pairs(n_ - 2).map(|(x, y)| (&zeta(2 * x + 6) * &zeta(2 * y + 3)).scale(&q(x as i64 + 1)))).scale(&q(-4));
    let cubes = sum(triples(n_ - 2).map(|(x, y, w)| &(&zeta(2 * x + 3) * &zeta(2 * y + 3)) * &zeta(2 * w + 3)))
        .scale(&rat(4, 3));
    Ok(a.instance(lhs, lead + two + three + cubes))
}

fn zu_zb_rel(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zu_to_zb(&a.index("alpha")?, &a.index("beta")?))
}

fn zl_zb_rel(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zl_to_zb(&a.index("alpha")?, &a.index("beta")?))
}

fn zb_rec(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zb_recursion(&a.index("alpha")?, a.usize("m")?, a.usize("p")?))
}

fn prop71(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zuzb_zeta(&a.index("alpha")?, a.usize("m")?))
}

fn zl_rec(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zl_recursion(&a.index("alpha")?, a.usize("m")?, a.usize("p")?))
}

fn zl_prop71(a: &Args) -> Result<IdentityInstance> {
    Ok(rel::zlzb_zeta(&a.index("alpha")?, a.usize("m")?))
}

fn sum_formula_chain(a: &Args) -> Result<IdentityInstance> {
    let (m, n) = (a.nat("m")?, a.nat("n")?);
    let rhs = sum((0..=m).map(|k| {
        let f = GeneralForm::zu(ones(k).append(n + 2), ones(m - k));
        LinearCombo::form(f).scale(&sign(k))
    }));
    Ok(a.instance(zeta(m + n + 2), rhs))
}

fn stuffle(a: &Args) -> Result<IdentityInstance> {
    let (x, y) = (a.nat("a")?, a.nat("b")?);
    if x < 2 || y < 2 {
        return Ok(a.outside("needs a, b ≥ 2"));
    }
    let rhs = z(idx([x, y])) + z(idx([y, x])) + zeta(x + y);
    Ok(a.instance(&zeta(x) * &zeta(y), rhs))
}

// ---- grids ----

fn kr_grid(kmax: i64) -> Vec<Params> {
    let mut out = Vec::new();
    for k in 2..=kmax {
        for r in 1..k {
            out.push(Params::from([("k".into(), k), ("r".into(), r)]));
        }
    }
    out
}

fn ks_grid(kmax: i64) -> Vec<Params> {
    let mut out = Vec::new();
    for k in 2..=kmax {
        for s in 1..=k / 2 {
            out.push(Params::from([("k".into(), k), ("s".into(), s)]));
        }
    }
    out
}

fn thm1_grid(mmax: i64, nmax: i64) -> Vec<Params> {
    // the n = 1 rows are informational
    product(axis("m", 0..=mmax), axis("n", 1..=nmax))
}

fn dual_grid(id: &str, wmax: u32) -> Vec<Params> {
    keep(id, product(index_axis("beta", 2..=wmax), axis("m", 0..=3)))
}

fn pair_grid(id: &str, wmax: u32) -> Vec<Params> {
    keep(id, product(index_axis("alpha", 1..=wmax), index_axis("beta", 1..=wmax)))
}

fn rs_grid(wmax: u32) -> Vec<Params> {
    keep("rs_id", product(product(axis("s", 2..=3), axis("m", 0..=3)), index_axis("r", 1..=wmax)))
}

fn entry(
    id: &'static str,
    description: &'static str,
    anchor: &'static str,
    params: &'static [&'static str],
    build: Build,
    default_grid: fn() -> Vec<Params>,
    full_grid: fn() -> Vec<Params>,
) -> Identity {
    Identity { id, description, anchor, params, build, default_grid, full_grid }
}

const AB: &[&str] = &["alpha_w", "alpha_i", "beta_w", "beta_i"];
const A: &[&str] = &["alpha_w", "alpha_i"];
const BM: &[&str] = &["beta_w", "beta_i", "m"];

pub fn registry() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

fn build_registry() -> Vec<Identity> {
    vec![
        entry(
            "sum_formula",
            "MZVs of fixed weight and depth sum to ζ(k)",
            "Σ_{|α|=k, dep α=r, α_r≥2} ζ(α) = ζ(k)",
            &["k", "r"],
            sum_formula,
            || kr_grid(8),
            || kr_grid(10),
        ),
        entry(
            "sum_formula_star",
            "star sum formula at fixed weight and depth",
            "Σ_{|α|=k, dep α=r, α_r≥2} ζ⋆(α) = C(k−1, r−1) ζ(k)",
            &["k", "r"],
            sum_formula_star,
            || kr_grid(8),
            || kr_grid(10),
        ),
        entry(
            "aoki_ohno",
            "star values of fixed weight and height",
            "Σ_{|α|=k, ht α=s} ζ⋆(α) = 2 C(k−1, 2s−1) (1 − 2^{1−k}) ζ(k)",
            &["k", "s"],
            aoki_ohno,
            || ks_grid(8),
            || ks_grid(10),
        ),
        entry(
            "thm1",
            "star values with a block of ones between two free slots",
            "Σ_{α₁+α₂=n, α_i≥1} ζ⋆(α₁, {1}^m, α₂+1) = (m+n) ζ(m+n+1),  m ≥ 0, n ≥ 2",
            &["m", "n"],
            thm1,
            || thm1_grid(4, 5),
            || thm1_grid(6, 6),
        ),
        entry(
            "thm2",
            "weighted star sum with outer slots at least two",
            "Σ_{a+b+m=p} ζ⋆(a+2, {1}^m, b+2) = (p² + 3p + 1 + (p+3)/2^{p+2}) ζ(p+4)",
            &["p"],
            thm2,
            || axis("p", 0..=5),
            || axis("p", 0..=7),
        ),
        entry(
            "thm3",
            "alternating-sign sum of MZVs with outer slots at least two",
            "Σ_{a+b+m=p} (−1)^m ζ(a+2, {1}^m, b+2) = 2((−1)^p − 1) ζ(p+2, 2̄) + (1 − 2^{−p−2}) ζ(p+4)",
            &["p"],
            thm3,
            || axis("p", 0..=5),
            || axis("p", 0..=7),
        ),
        entry(
            "thm3_even",
            "the even case of thm3, where the alternating term drops out",
            "Σ_{a+b+m=2q} (−1)^m ζ(a+2, {1}^m, b+2) = (1 − 2^{−2q−2}) ζ(2q+4)",
            &["q"],
            thm3_even,
            || axis("q", 0..=2),
            || axis("q", 0..=3),
        ),
        entry(
            "thm4",
            "ζ⋆({1}^m, {2}^{n+1}) through weighted sums of ζ(d+2)",
            "ζ⋆({1}^m, {2}^{n+1}) = Σ_{p+r=n} (−1)^r ζ⋆({2}^p) Σ_{|d|=m} ∏(d_j+1) ζ(d₁+2, …, d_{r+1}+2)",
            &["m", "n"],
            thm4,
            || product(axis("m", 0..=3), axis("n", 0..=3)),
            || product(axis("m", 0..=4), axis("n", 0..=4)),
        ),
        entry(
            "prop_zb_dual",
            "Z_B with a lower block of ones through the dual of the upper index",
            "Z_B(β; {1}^m) = Σ_{|d|=m} ∏ C(α_j+d_j−1, d_j) ζ(α₁+d₁, …, α_q+d_q+1),  dual(β) = (α₁, …, α_q+1)",
            BM,
            prop_zb_dual,
            || dual_grid("prop_zb_dual", 6),
            || dual_grid("prop_zb_dual", 7),
        ),
        entry(
            "prop_zu_dual",
            "Z_U with a lower block of ones through the dual of the upper index",
            "Z_U(β; {1}^m) = Σ_{|d|=m} ∏ C(α_j+d_j−1, d_j) ζ(α₁+d₁, …, α_q+d_q),  dual(β) = α",
            BM,
            prop_zu_dual,
            || dual_grid("prop_zu_dual", 6),
            || dual_grid("prop_zu_dual", 7),
        ),
        entry(
            "zminus_closed",
            "closed form of the signed height-one sum Z₋",
            "Z₋(n) = Σ_{a+b=n} (−1)^b ζ({1}^a, b+2) = 2(1 − 2^{−n−1}) ζ(n+2) for even n, 0 for odd n",
            &["n"],
            zminus_closed,
            || axis("n", 0..=9),
            || axis("n", 0..=11),
        ),
        entry(
            "zstarplus_closed",
            "closed form of the unsigned height-one star sum Z⋆₊",
            "Z⋆₊(n) = Σ_{a+b=n} ζ⋆({1}^a, b+2) = 2(n+1)(1 − 2^{−n−1}) ζ(n+2)",
            &["n"],
            zstarplus_closed,
            || axis("n", 0..=10),
            || axis("n", 0..=12),
        ),
        entry(
            "conv_p",
            "convolution of Z₋ and Z⋆₊",
            "Σ_{m+n=p} Z₋(m) Z⋆₊(n) = 2((−1)^p − 1) ζ(p+2, 2̄) + (p+2)(p+1+2^{−p−2}) ζ(p+4)",
            &["p"],
            conv_p,
            || axis("p", 0..=8),
            || axis("p", 0..=10),
        ),
        entry(
            "split_L",
            "product ζ·ζ⋆ as two Z_L terms",
            "ζ(α) ζ⋆(β) = Z_L(α; β) + Z_L(β₁, α; β₂, …, β_m)",
            AB,
            split_l,
            || pair_grid("split_L", 4),
            || pair_grid("split_L", 5),
        ),
        entry(
            "parity_L",
            "ζ(α) against the reversed star value",
            "ζ(α) + (−1)^r ζ⋆(α_r, …, α₁) = Σ_{k=1}^{r−1} (−1)^{k+1} ζ⋆(α_k, …, α₁) ζ(α_{k+1}, …, α_r)",
            A,
            parity_l,
            || keep("parity_L", index_axis("alpha", 2..=7)),
            || keep("parity_L", index_axis("alpha", 2..=9)),
        ),
        entry(
            "split_U",
            "product ζ·ζ⋆ as two Z_U terms",
            "ζ(α) ζ⋆(β) = Z_U(α; β) + Z_U(α, β_m; β₁, …, β_{m−1})",
            AB,
            split_u,
            || pair_grid("split_U", 4),
            || pair_grid("split_U", 5),
        ),
        entry(
            "parity_U",
            "reversed star value against ζ(α), all exponents at least two",
            "ζ⋆(α_r, …, α₁) + (−1)^r ζ(α) = Σ_{k=1}^{r−1} (−1)^{k+1} ζ(α₁, …, α_k) ζ⋆(α_r, …, α_{k+1})",
            A,
            parity_u,
            || keep("parity_U", index_axis("alpha", 2..=8)),
            || keep("parity_U", index_axis("alpha", 2..=10)),
        ),
        entry(
            "eq519",
            "alternating convolution with ζ({2}^k)",
            "Σ_{q+k=r} (−1)^k ζ({2}^k) ζ⋆({1}^m, {2}^{q+1}) = (−1)^r Σ_{|d|=m} ∏(d_j+1) ζ(d₁+2, …, d_{r+1}+2)",
            &["m", "r"],
            eq519,
            || product(axis("m", 0..=3), axis("r", 0..=3)),
            || product(axis("m", 0..=4), axis("r", 0..=4)),
        ),
        entry(
            "orthogonality",
            "ζ({s}^a) and ζ⋆({s}^b) are inverse generating series",
            "Σ_{a+b=n} (−1)^a ζ({s}^a) ζ⋆({s}^b) = δ_{n,0}",
            &["s", "n"],
            orthogonality,
            || product(axis("s", 2..=3), axis("n", 0..=4)),
            || product(axis("s", 2..=4), axis("n", 0..=5)),
        ),
        entry(
            "mixed_parity_sum",
            "ζ and reversed ζ⋆ with outer slots at least two against Z₊·Z⋆₋",
            "Σ_{c+d+m=p} [ζ(c+2, {1}^m, d+2) + (−1)^m ζ⋆(d+2, {1}^m, c+2)] = Σ_{m+n=p} (−1)^n Z₊(m) Z⋆₋(n)",
            &["p"],
            mixed_parity_sum,
            || axis("p", 0..=5),
            || axis("p", 0..=7),
        ),
        entry(
            "s6_1m2",
            "ζ⋆ of ones followed by a two",
            "ζ⋆({1}^m, 2) = (m+1) ζ(m+2)",
            &["m"],
            s6_1m2,
            || axis("m", 0..=8),
            || axis("m", 0..=10),
        ),
        entry(
            "s6_1m22_a",
            "ζ⋆({1}^m, 2, 2) through a weighted depth-two sum",
            "ζ⋆({1}^m, 2, 2) = (m+1) ζ(2) ζ(m+2) − Σ_{a+b=m} (a+1)(b+1) ζ(a+2, b+2)",
            &["m"],
            s6_1m22_a,
            || axis("m", 0..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "s6_1m22_b",
            "ζ⋆({1}^m, 2, 2) through three depth-two terms",
            "ζ⋆({1}^m, 2, 2) = 2ζ(m+4) + 2ζ(m+1, 3) − (m+1) ζ(2, m+2)",
            &["m"],
            s6_1m22_b,
            || axis("m", 0..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "s6_1m22_cross",
            "the two ζ⋆({1}^m, 2, 2) expressions against each other",
            "(m+1) ζ(2) ζ(m+2) − Σ_{a+b=m} (a+1)(b+1) ζ(a+2, b+2) = 2ζ(m+4) + 2ζ(m+1, 3) − (m+1) ζ(2, m+2)",
            &["m"],
            s6_1m22_cross,
            || axis("m", 0..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "prop61_weighted",
            "weighted depth-two sum formula",
            "Σ_{a+b=m} (a+1)(b+1) ζ(a+2, b+2) = (m+1) ζ(2) ζ(m+2) + (m+1) ζ(2, m+2) − 2ζ(m+4) − 2ζ(m+1, 3)",
            &["m"],
            prop61_weighted,
            || axis("m", 0..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "s6_euler_weighted",
            "weighted sum of products of two Riemann values",
            "Σ_{a+b=m} (a+1)(b+1) ζ(a+2) ζ(b+2) = (m+1)(m+2)(m+3)/6 ζ(m+4) + 2(m+1) ζ(2) ζ(m+2) + 2(m+1) ζ(2, m+2) − 4 ζ(3) ζ(m+1) + 4 ζ(3, m+1)",
            &["m"],
            s6_euler_weighted,
            || axis("m", 1..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "eie_yang_2pow",
            "products of two Riemann values through 2^β-weighted depth-two sums",
            "½ Σ_{a+b=m} (a+1)(b+1) ζ(a+2) ζ(b+2) = Σ_{α+β=m} 2^β (α+1)(β+1) ζ(α+2, β+2) + Σ_{α+β=m} 2^β (β+1)(β+2) ζ(α+1, β+3)",
            &["m"],
            eie_yang_2pow,
            || axis("m", 0..=5),
            || axis("m", 0..=7),
        ),
        entry(
            "s6_1_2n",
            "ζ⋆ of a one followed by twos",
            "ζ⋆(1, {2}^{n+1}) = 2 ζ(2n+3)",
            &["n"],
            s6_1_2n,
            || axis("n", 0..=4),
            || axis("n", 0..=5),
        ),
        entry(
            "zagier_aggregate",
            "sum over positions of a single three among twos",
            "Σ_{a+b=r} ζ({2}^a, 3, {2}^b) = Σ_{a+b=r} (−1)^a ζ({2}^b) ζ(2a+3)",
            &["r"],
            zagier_aggregate,
            || axis("r", 0..=3),
            || axis("r", 0..=4),
        ),
        entry(
            "rs_id",
            "inserting blocks of s between the entries of r",
            "Σ_{|a|=m} ζ({s}^{a₀}, r₁, {s}^{a₁}, …, r_n, {s}^{a_n}) = Σ_{|a|=m} (−1)^{m−a₀} ζ({s}^{a₀}) ζ(s a₁ + r₁, …, s a_n + r_n)",
            &["s", "m", "r_w", "r_i"],
            rs_id,
            || rs_grid(3),
            || rs_grid(4),
        ),
        entry(
            "eq_112n",
            "ζ⋆(1, 1, {2}^{n+1}) through products of odd Riemann values",
            "ζ⋆(1, 1, {2}^{n+1}) = (2n+3) ζ(2n+4) − 2 Σ_{a+b=n−1} ζ(2a+3) ζ(2b+3)",
            &["n"],
            eq_112n,
            || axis("n", 0..=4),
            || axis("n", 0..=5),
        ),
        entry(
            "ohno_zudilin",
            "ζ⋆(1, 1, {2}^{n+1}) through a depth-two star value",
            "ζ⋆(1, 1, {2}^{n+1}) = 4 ζ⋆(1, 2n+3) − 2 ζ(2n+4)",
            &["n"],
            ohno_zudilin,
            || axis("n", 0..=4),
            || axis("n", 0..=5),
        ),
        entry(
            "prop62",
            "products of odd Riemann values through ζ(1, 2n+3)",
            "Σ_{a+b=n−1} ζ(2a+3) ζ(2b+3) = (2n+1)/2 ζ(2n+4) − 2 ζ(1, 2n+3)",
            &["n"],
            prop62,
            || axis("n", 0..=3),
            || axis("n", 0..=5),
        ),
        entry(
            "eie_yang_remark",
            "unweighted sum of products of two Riemann values",
            "Σ_{a+b=n} ζ(a+2) ζ(b+2) = (n+3) ζ(n+4) − 2 ζ(1, n+3)",
            &["n"],
            eie_yang_remark,
            || axis("n", 0..=5),
            || axis("n", 0..=7),
        ),
        entry(
            "s6_m3",
            "ζ⋆({1}^3, {2}^{n+1}) through Riemann values",
            "ζ⋆({1}^3, {2}^{n+1}) = (2/3)(2n+3)(n+2) ζ(2n+5) − 6 Σ_{a+b=n−1} ζ(2a+4) ζ(2b+3) − 4 Σ_{a+b=n−2} (a+1) ζ(2a+6) ζ(2b+3) + (4/3) Σ_{a+b+c=n−2} ζ(2a+3) ζ(2b+3) ζ(2c+3)",
            &["n"],
            s6_m3,
            || axis("n", 0..=2),
            || axis("n", 0..=3),
        ),
        entry(
            "zu_zb_rel",
            "Z_U as two Z_B terms",
            "Z_U(α; β) = Z_B(α; β) + Z_B(β₁, α; β₂, …, β_m)",
            AB,
            zu_zb_rel,
            || pair_grid("zu_zb_rel", 4),
            || pair_grid("zu_zb_rel", 5),
        ),
        entry(
            "zb_rec",
            "moving p lower entries of Z_B to the upper chain",
            "Z_B(α_{m+1}, …, α_r; α_m, …, α₁) = (−1)^p Z_B(α_{m+1−p}, …, α_r; α_{m−p}, …, α₁) + Σ_{k=1}^{p} (−1)^{k−1} Z_U(α_{m+2−k}, …, α_r; α_{m+1−k}, …, α₁)",
            &["alpha_w", "alpha_i", "m", "p"],
            zb_rec,
            || chain_grid("zb_rec", 2..=6, true),
            || chain_grid("zb_rec", 2..=8, true),
        ),
        entry(
            "prop71",
            "Z_B as ζ(α) plus alternating Z_U terms",
            "Z_B(α_{m+1}, …, α_r; α_m, …, α₁) = (−1)^m ζ(α) + Σ_{k=1}^{m} (−1)^{m−k} Z_U(α_{k+1}, …, α_r; α_k, …, α₁)",
            &["alpha_w", "alpha_i", "m"],
            prop71,
            || chain_grid("prop71", 2..=8, false),
            || chain_grid("prop71", 2..=9, false),
        ),
        entry(
            "zl_zb_rel",
            "Z_L as two Z_B terms",
            "Z_L(α; β) = Z_B(α; β) + Z_B(α, β_m; β₁, …, β_{m−1})",
            AB,
            zl_zb_rel,
            || pair_grid("zl_zb_rel", 4),
            || pair_grid("zl_zb_rel", 5),
        ),
        entry(
            "zl_rec",
            "moving p lower entries of Z_B to the upper chain through Z_L",
            "Z_B(α_r, …, α_{m+1}; α₁, …, α_m) = (−1)^p Z_B(α_r, …, α_{m+1−p}; α₁, …, α_{m−p}) + Σ_{k=1}^{p} (−1)^{k−1} Z_L(α_r, …, α_{m+2−k}; α₁, …, α_{m+1−k})",
            &["alpha_w", "alpha_i", "m", "p"],
            zl_rec,
            || chain_grid("zl_rec", 2..=6, true),
            || chain_grid("zl_rec", 2..=8, true),
        ),
        entry(
            "zl_prop71",
            "Z_B as a reversed ζ plus alternating Z_L terms",
            "Z_B(α_r, …, α_{m+1}; α₁, …, α_m) = (−1)^m ζ(α_r, …, α₁) + Σ_{k=1}^{m} (−1)^{m−k} Z_L(α_r, …, α_{k+1}; α₁, …, α_k)",
            &["alpha_w", "alpha_i", "m"],
            zl_prop71,
            || chain_grid("zl_prop71", 2..=7, false),
            || chain_grid("zl_prop71", 2..=9, false),
        ),
        entry(
            "sum_formula_chain",
            "ζ(m+n+2) as alternating Z_U terms",
            "ζ(m+n+2) = Z_B(n+2; {1}^m) = Σ_{k=0}^{m} (−1)^k Z_U({1}^k, n+2; {1}^{m−k})",
            &["m", "n"],
            sum_formula_chain,
            || product(axis("m", 0..=3), axis("n", 0..=3)),
            || product(axis("m", 0..=5), axis("n", 0..=5)),
        ),
        entry(
            "stuffle",
            "product of two Riemann values",
            "ζ(a) ζ(b) = ζ(a, b) + ζ(b, a) + ζ(a+b)",
            &["a", "b"],
            stuffle,
            || product(axis("a", 2..=5), axis("b", 2..=5)),
            || product(axis("a", 2..=8), axis("b", 2..=8)),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sums() {
        assert_eq!(pairs(-1).count(), 0);
        assert_eq!(pairs(2).collect::<Vec<_>>(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(triples(2).count(), 6);
        assert_eq!(triples(-1).count(), 0);
        assert_eq!(half_pow(3), rat(1, 8));
    }

    #[test]
    fn mixed_parity_sign_placement() {
        let ev = crate::Evaluator::new(crate::EvalConfig::default()).unwrap();
        for p in 0..=4 {
            let ours = mixed_parity_rhs(p, true);
            let printed = mixed_parity_rhs(p, false);
            if p % 2 == 0 {
                assert_eq!(ours, printed);
            } else {
                let d = ev.eval_combo(&(&ours - &printed)).unwrap();
                assert!(d.value.abs() > 1.0, "p = {p}: {}", d.value);
            }
        }
    }

    #[test]
    fn index_params_decode() {
        let p = Params::from([("r_w".into(), 3), ("r_i".into(), 1)]);
        let a = Args { id: "rs_id", params: &p };
        // weight 3 in depth-then-lex order: (3), (1,2), (2,1), (1,1,1)
        assert_eq!(a.index("r").unwrap(), idx([1, 2]));
        let p = Params::from([("r_w".into(), 3), ("r_i".into(), 4)]);
        assert!(Args { id: "rs_id", params: &p }.index("r").is_err());
    }
}
