//! Unsigned multiple zeta values as finite convolutions of nested sums at
//! argument 1/2. Writing the index as a word in `x, y`, splitting the
//! iterated integral at 1/2 gives
//! `ζ(w) = Σ_j Li_{A_j}(1/2) · Li_{B_j}(1/2)` where `A_j` reads the first
//! `j` letters and `B_j` the remaining letters reversed with `x ↔ y`.
//! Both series converge geometrically.

use super::{rounding, EvalResult, Neumaier, Summation};
use crate::index::MultiIndex;

const LI_TAIL: f64 = 1e-19;

/// `Li_s(1/2) = Σ_{n₁<⋯<n_k} 2^{−n_k} ∏ n_i^{−s_i}`; empty index gives 1.
pub(crate) fn li_half(s: &[u32], summation: Summation) -> EvalResult {
    if s.is_empty() {
        return EvalResult::exact(1.0);
    }
    let k = s.len();
    let c = (k - 1) as i32;
    let last = *s.last().unwrap() as i32;
    let mut fact = 1.0;
    for i in 2..=c {
        fact *= i as f64;
    }
    let g = |n: f64| 0.5f64.powf(n) * n.powi(-last) * (1.0 + n.ln()).powi(c) / fact;
    let mut n = (2 * c).max(1) as u64;
    let tail = loop {
        let q = 0.5 * (c as f64 / (n + 1) as f64).exp();
        if q < 1.0 {
            let t = g((n + 1) as f64) / (1.0 - q);
            if t <= LI_TAIL {
                break t;
            }
        }
        n += 1;
    };
    let mut acc: Vec<Neumaier> = vec![Neumaier::default(); k + 1];
    acc[0].add(1.0);
    let mut pow2 = 1.0;
    for m in 1..=n {
        let mf = m as f64;
        pow2 *= 0.5;
        for j in (1..=k).rev() {
            let mut w = mf.powi(-(s[j - 1] as i32)) * acc[j - 1].get(summation);
            if j == k {
                w *= pow2;
            }
            acc[j].add(w);
        }
    }
    let value = acc[k].get(summation);
    let s_max = *s.iter().max().unwrap();
    EvalResult {
        value,
        error_bound: tail + rounding(summation, k, n, s_max as u64 + 6, value.abs()),
        cutoff: n,
        terms: n * k as u64,
        converged: true,
    }
}

fn decode(word: &[bool]) -> Vec<u32> {
    // true = y opens a new slot, false = x raises it
    let mut out: Vec<u32> = Vec::new();
    for &letter in word {
        if letter {
            out.push(1);
        } else {
            *out.last_mut().expect("word starts with y") += 1;
        }
    }
    out
}

/// Requires an unsigned admissible index.
pub(crate) fn zeta(idx: &MultiIndex, summation: Summation) -> EvalResult {
    let mut word = Vec::with_capacity(idx.weight() as usize);
    for &a in idx.exps() {
        word.push(true);
        word.extend(std::iter::repeat_n(false, a as usize - 1));
    }
    let n = word.len();
    let mut total = Neumaier::default();
    let mut magnitude = 0.0;
    let mut bound = 0.0;
    let mut cutoff = 0;
    let mut terms = 0;
    for j in 0..=n {
        let a = li_half(&decode(&word[..j]), summation);
        let rest: Vec<bool> = word[j..].iter().rev().map(|&l| !l).collect();
        let b = li_half(&decode(&rest), summation);
        let p = a.value * b.value;
        total.add(p);
        magnitude += p.abs();
        bound += a.error_bound * (b.value.abs() + b.error_bound) + b.error_bound * a.value.abs();
        cutoff = cutoff.max(a.cutoff).max(b.cutoff);
        terms += a.terms + b.terms;
    }
    let value = total.get(summation);
    EvalResult {
        value,
        error_bound: bound + rounding(summation, 1, n as u64 + 1, 1, magnitude),
        cutoff,
        terms,
        converged: true,
    }
}
