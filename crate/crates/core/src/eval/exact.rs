//! Exact partial sums with all reciprocals put over the common
//! denominator `lcm(1..=n)`. Values at one nesting level share the same
//! power of that denominator, so the inner loops are integer only.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Mode;
use crate::index::MultiIndex;

/// Table of `(L/k)^a` for `L = lcm(1..=n)`.
pub struct Recips {
    lcm: BigInt,
    one: BigInt,
    table: HashMap<u32, Vec<BigInt>>,
}

impl Recips {
    pub fn new(n: u64, exps: impl IntoIterator<Item = u32>) -> Self {
        let mut lcm = BigInt::one();
        for k in 1..=n {
            lcm = lcm.lcm(&BigInt::from(k));
        }
        let quotients: Vec<BigInt> =
            (0..=n).map(|k| if k == 0 { BigInt::zero() } else { &lcm / BigInt::from(k) }).collect();
        let mut table = HashMap::new();
        for a in exps {
            table.entry(a).or_insert_with(|| quotients.iter().map(|q| q.pow(a)).collect::<Vec<_>>());
        }
        Recips { lcm, one: BigInt::one(), table }
    }

    /// `(L/k)^a`; the exponent must have been registered.
    pub fn get(&self, a: u32, k: usize) -> &BigInt {
        &self.table[&a][k]
    }

    pub fn unit(&self) -> &BigInt {
        &self.one
    }

    /// `L^w`.
    pub fn scale(&self, w: u32) -> BigInt {
        self.lcm.pow(w)
    }
}

/// `Σ_{k₁ < ⋯ < k_r ≤ n}` (or `≤` throughout for [`Mode::Star`]) of
/// `∏ σ_j(k_j) k_j^{-α_j}` with `σ_j(k) = (−1)^k` on barred slots.
pub fn partial_sum(idx: &MultiIndex, mode: Mode, n: u64) -> BigRational {
    if idx.is_empty() {
        return BigRational::one();
    }
    let exps = idx.exps();
    let bars = idx.bars();
    let r = exps.len();
    let recips = Recips::new(n, exps.iter().copied());
    // acc[j] = scaled partial sum of the first j slots
    let mut acc = vec![BigInt::zero(); r + 1];
    acc[0] = BigInt::one();
    let step = |j: usize, k: usize, acc: &mut Vec<BigInt>| {
        let mut t = &acc[j - 1] * recips.get(exps[j - 1], k);
        if bars[j - 1] && k % 2 == 1 {
            t = -t;
        }
        acc[j] += t;
    };
    for k in 1..=n as usize {
        match mode {
            Mode::Strict => (1..=r).rev().for_each(|j| step(j, k, &mut acc)),
            Mode::Star => (1..=r).for_each(|j| step(j, k, &mut acc)),
        }
    }
    BigRational::new(acc[r].clone(), recips.scale(idx.weight()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::rat;

    fn enumerate(idx: &MultiIndex, mode: Mode, n: u64) -> BigRational {
        fn go(idx: &MultiIndex, mode: Mode, n: u64, j: usize, lo: u64) -> BigRational {
            if j == idx.depth() {
                return BigRational::one();
            }
            let mut total = BigRational::zero();
            for k in lo..=n {
                let mut t = BigRational::new(BigInt::one(), BigInt::from(k).pow(idx.exps()[j]));
                if idx.bars()[j] && k % 2 == 1 {
                    t = -t;
                }
                let next = if mode == Mode::Strict { k + 1 } else { k };
                total += t * go(idx, mode, n, j + 1, next);
            }
            total
        }
        go(idx, mode, n, 0, 1)
    }

    #[test]
    fn small_values() {
        let i: MultiIndex = "2".parse().unwrap();
        assert_eq!(partial_sum(&i, Mode::Strict, 2), rat(5, 4));
        let i: MultiIndex = "1,2".parse().unwrap();
        assert_eq!(partial_sum(&i, Mode::Strict, 2), rat(1, 4));
        assert_eq!(partial_sum(&i, Mode::Star, 2), rat(1, 1) + rat(1, 4) + rat(1, 8));
    }

    #[test]
    fn matches_enumeration() {
        for s in ["1,2", "bar1,bar2", "2,bar1,3", "1,1,bar2", "3", "bar2"] {
            let i: MultiIndex = s.parse().unwrap();
            for mode in [Mode::Strict, Mode::Star] {
                assert_eq!(partial_sum(&i, mode, 9), enumerate(&i, mode, 9), "{s} {mode:?}");
            }
        }
    }
}
