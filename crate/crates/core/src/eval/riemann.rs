//! `ζ(k)` by Euler–Maclaurin summation with an explicit remainder bound.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{EvalResult, Neumaier};

use crate::error::{Error, Result};

const SPLIT: u64 = 20;
const MAX_TERMS: usize = 30;

/// `B_{2j}/(2j)!` for `j = 1..=MAX_TERMS+1`, from exact Bernoulli numbers.
fn coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let top = 2 * (MAX_TERMS + 1);
        let b = bernoulli(top);
        let mut fact = BigInt::one();
        let mut out = Vec::new();
        for (m, bm) in b.iter().enumerate().take(top + 1).skip(1) {
            fact *= BigInt::from(m);
            if m % 2 == 0 {
                let c = bm / BigRational::from_integer(fact.clone());
                out.push(c.to_f64().expect("finite coefficient"));
            }
        }
        out
    })
}

/// `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn eval_riemann(k: u32) -> Result<EvalResult> {
    if k < 2 {
        return Err(Error::Divergent(format!("zeta({k})")));
    }
    let s = k as f64;
    let n = SPLIT as f64;
    let mut acc = Neumaier::default();
    // each term carries its own rounding, weighted by its size
    let mut term_error = 0.0;
    let mut push = |acc: &mut Neumaier, x: f64, roundings: f64| {
        acc.add(x);
        term_error += roundings * f64::EPSILON * x.abs();
    };
    for j in 1..SPLIT {
        push(&mut acc, (j as f64).powf(-s), 2.0);
    }
    push(&mut acc, n.powf(1.0 - s) / (s - 1.0), 4.0);
    push(&mut acc, 0.5 * n.powf(-s), 2.0);

    // T_j = B_{2j}/(2j)! · s(s+1)⋯(s+2j−2) · N^{−s−2j+1}
    let coeffs = coefficients();
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    let mut omitted = f64::INFINITY;
    let mut used = 0;
    for (j, c) in coeffs.iter().enumerate() {
        let term = c * rising * power;
        if term.abs() < 1e-18 || j == MAX_TERMS {
            omitted = term.abs();
            break;
        }
        push(&mut acc, term, 3.0 * j as f64 + 6.0);
        used += 1;
        rising *= (s + 2.0 * j as f64 + 1.0) * (s + 2.0 * j as f64 + 2.0);
        power /= n * n;
    }
    let value = acc.value();
    let summation = 2.0 + ((SPLIT + used) as f64).powi(2) * f64::EPSILON;
    let rounding = term_error + summation * f64::EPSILON * value;
    Ok(EvalResult {
        value,
        error_bound: 2.0 * omitted + rounding,
        cutoff: SPLIT,
        terms: SPLIT + used + 2,
        converged: true,
    })
}
