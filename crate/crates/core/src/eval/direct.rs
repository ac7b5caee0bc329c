//! Truncated nested sums in double precision, with proven tail bounds.

use super::{rounding, EvalResult, Mode, Neumaier, Summation};
use crate::index::MultiIndex;

fn log1p_ln(x: f64) -> f64 {
    1.0 + x.ln()
}

/// `∫_M^∞ x^{−b} (1+ln x)^c dx`, closed form for `b > 1`.
fn tail_integral(b: f64, c: i32, m: f64) -> f64 {
    let l = log1p_ln(m);
    let beta = b - 1.0;
    let mut total = 0.0;
    let mut falling = 1.0; // c!/(c−i)!
    for i in 0..=c {
        total += falling * l.powi(c - i) / beta.powi(i + 1);
        falling *= (c - i) as f64;
    }
    m.powf(-beta) * total
}

/// Smallest integer at or above `start` where `x^{−b}(1+ln x)^c` is
/// decreasing, i.e. `1 + ln x ≥ c/b`.
fn monotone_from(b: f64, c: i32, start: u64) -> u64 {
    let x0 = ((c as f64 / b) - 1.0).exp().ceil().max(1.0) as u64;
    x0.max(start)
}

/// Bound on `Σ k^{−b} L(k)^c` over `k = from, from+2, ⋯`, `L = 1 + ln`.
fn envelope_sum_stride2(b: f64, c: i32, from: u64) -> f64 {
    let h = |x: f64| x.powf(-b) * log1p_ln(x).powi(c);
    let mut k = from;
    let mut explicit = 0.0;
    let m0 = monotone_from(b, c, from);
    while k < m0 {
        explicit += h(k as f64);
        k += 2;
    }
    explicit + h(k as f64) + 0.5 * tail_integral(b, c, k as f64)
}

/// Proven bound on `|Σ_{k_r > n} ⋯|` for an admissible index.
///
/// The inner nested sum satisfies `|S_{r−1}(k)| ≤ L(k)^{r−1}/(r−1)!` for
/// strict chains (`≤ L(k)^{r−1}` for weak ones). An unsigned last slot is
/// compared with an integral; a signed last slot is grouped into
/// consecutive pairs whose differences are bounded termwise.
pub fn tail_bound(idx: &MultiIndex, mode: Mode, n: u64) -> f64 {
    if idx.is_empty() {
        return 0.0;
    }
    let r = idx.depth();
    let a = idx.last().unwrap() as f64;
    let c = (r - 1) as i32;
    let phi = match mode {
        Mode::Strict => 1.0 / (1..=c).map(|i| i as f64).product::<f64>(),
        Mode::Star => 1.0,
    };
    if !idx.last_is_signed() {
        // Σ_{k>n} k^{−a} L(k)^c; the sum starting at n+1 is at most the
        // integral from n once the summand decreases
        let n = n.max(1);
        let m0 = monotone_from(a, c, n);
        let h = |x: f64| x.powf(-a) * log1p_ln(x).powi(c);
        let explicit: f64 = (n + 1..=m0).map(|k| h(k as f64)).sum();
        return phi * (explicit + tail_integral(a, c, m0 as f64));
    }
    // |g(K) − g(K+1)| ≤ (a+1)(1+1/(n+1))^c K^{−a−1} L(K)^c
    let growth = (1.0 + 1.0 / (n + 1) as f64).powi(c);
    (a + 1.0) * growth * envelope_sum_stride2(a + 1.0, c, n + 1)
}

/// Partial sum over chains with `k_r ≤ n`, and a rounding allowance.
pub(crate) fn partial_sum(idx: &MultiIndex, mode: Mode, n: u64, summation: Summation) -> (f64, f64) {
    let exps: Vec<i32> = idx.exps().iter().map(|&e| -(e as i32)).collect();
    let bars = idx.bars();
    let r = exps.len();
    let signed = idx.is_signed();
    let mut acc: Vec<Neumaier> = vec![Neumaier::default(); r + 1];
    acc[0].add(1.0);
    let mut mag = vec![0.0f64; r + 1];
    mag[0] = 1.0;
    for k in 1..=n {
        let kf = k as f64;
        let odd = k % 2 == 1;
        let mut level = |j: usize| {
            let w = kf.powi(exps[j - 1]);
            let sw = if bars[j - 1] && odd { -w } else { w };
            let inner = acc[j - 1].get(summation);
            acc[j].add(sw * inner);
            if signed {
                mag[j] += w * mag[j - 1];
            }
        };
        match mode {
            Mode::Strict => (1..=r).rev().for_each(&mut level),
            Mode::Star => (1..=r).for_each(&mut level),
        }
    }
    let value = acc[r].get(summation);
    let magnitude = if signed { mag[r] } else { value.abs() };
    let a_max = idx.exps().iter().copied().max().unwrap_or(0) as u64;
    (value, rounding(summation, r, n, a_max + 5, magnitude))
}

/// Smallest cutoff whose tail bound reaches `eps`, or `cap`.
pub(crate) fn choose_cutoff(idx: &MultiIndex, mode: Mode, eps: f64, cap: u64) -> (u64, bool) {
    let mut hi = 16u64.min(cap);
    while tail_bound(idx, mode, hi) > eps {
        if hi >= cap {
            return (cap, false);
        }
        hi = (hi * 2).min(cap);
    }
    let mut lo = hi / 2;
    if lo == 0 || tail_bound(idx, mode, lo) <= eps {
        return (hi.max(1), true);
    }
    // tail(lo) > eps ≥ tail(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(idx, mode, mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, true)
}

pub(crate) fn eval_at_cutoff(idx: &MultiIndex, mode: Mode, n: u64, summation: Summation) -> EvalResult {
    let (value, round) = partial_sum(idx, mode, n, summation);
    EvalResult {
        value,
        error_bound: tail_bound(idx, mode, n) + round,
        cutoff: n,
        terms: n * idx.depth() as u64,
        converged: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn tail_examples() {
        let t = tail_bound(&idx("2"), Mode::Strict, 1_000_000);
        assert!(t <= 1e-6 * (1.0 + 1e-12), "{t}");
        let t = tail_bound(&idx("2,bar2"), Mode::Strict, 10_000);
        assert!(t < 2e-7, "{t}");
    }

    #[test]
    fn tail_of_one_two_is_honest() {
        // exact tail Σ_{k>N} H_{k−1}/k² compared through a long partial sum
        let n = 1000u64;
        let far = 4_000_000u64;
        let (v_n, _) = partial_sum(&idx("1,2"), Mode::Strict, n, Summation::Compensated);
        let (v_far, _) = partial_sum(&idx("1,2"), Mode::Strict, far, Summation::Compensated);
        let lower = v_far - v_n;
        assert!(tail_bound(&idx("1,2"), Mode::Strict, n) >= lower);
    }

    #[test]
    fn tail_monotone() {
        for s in ["2", "1,2", "1,1,1,3", "2,bar2", "bar1,bar3", "3,1,2"] {
            for mode in [Mode::Strict, Mode::Star] {
                let mut prev = f64::INFINITY;
                let mut n = 1;
                while n < 1 << 24 {
                    let t = tail_bound(&idx(s), mode, n);
                    assert!(t.is_finite() && t >= 0.0);
                    assert!(t <= prev * (1.0 + 1e-12), "{s} {mode:?} {n}");
                    prev = t;
                    n *= 2;
                }
            }
        }
    }

    #[test]
    fn cutoff_is_minimal() {
        let i = idx("1,3");
        let (n, ok) = choose_cutoff(&i, Mode::Strict, 1e-5, 100_000_000);
        assert!(ok);
        assert!(tail_bound(&i, Mode::Strict, n) <= 1e-5);
        assert!(tail_bound(&i, Mode::Strict, n - 1) > 1e-5);
        let (n, ok) = choose_cutoff(&i, Mode::Strict, 1e-30, 1000);
        assert_eq!((n, ok), (1000, false));
    }

    #[test]
    fn alternating_eta() {
        let r = eval_at_cutoff(&idx("bar2"), Mode::Strict, 5000, Summation::Compensated);
        let expect = -std::f64::consts::PI.powi(2) / 12.0;
        assert!((r.value - expect).abs() <= r.error_bound);
    }
}
