//! Multi-indices and the exact combinatorics around them.
//!
//! Orientation follows the increasing-chain convention used everywhere in
//! this crate: `ζ(α₁,…,α_r)` sums over `k₁ < ⋯ < k_r` and the *last*
//! exponent carries the convergence condition `α_r ≥ 2`.
//!
//! Textual syntax: comma-separated entries, each one of `INT`, `barINT`
//! (alternating sign mark) or a repetition block `{ENTRY}^COUNT`, e.g.
//! `1,{1}^2,3` is `(1,1,1,3)` and `2,bar2` is `(2, 2̄)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive exponents, each optionally sign-marked.
///
/// A marked ("barred") slot contributes `(-1)^{k_j}` to the summand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    exps: Vec<u32>,
    bars: Vec<bool>,
}

impl MultiIndex {
    /// Unsigned index. Panics if an exponent is zero.
    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        let exps = exps.into();
        assert!(exps.iter().all(|&e| e >= 1), "exponents must be positive: {exps:?}");
        let bars = vec![false; exps.len()];
        MultiIndex { exps, bars }
    }

    pub fn try_signed(exps: Vec<u32>, bars: Vec<bool>) -> Result<Self> {
        if exps.len() != bars.len() {
            return Err(Error::Invalid("exponent and sign lengths differ".into()));
        }
        if let Some(pos) = exps.iter().position(|&e| e == 0) {
            return Err(Error::Invalid(format!("exponent at position {} is zero", pos + 1)));
        }
        Ok(MultiIndex { exps, bars })
    }

    /// Signed index. Panics on a zero exponent or mismatched lengths.
    pub fn signed(exps: impl Into<Vec<u32>>, bars: impl Into<Vec<bool>>) -> Self {
        Self::try_signed(exps.into(), bars.into()).expect("invalid signed index")
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `({e}^m)`.
    pub fn repeat(e: u32, m: usize) -> Self {
        Self::new(vec![e; m])
    }

    pub fn ones(m: usize) -> Self {
        Self::repeat(1, m)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn bars(&self) -> &[bool] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        self.bars.iter().any(|&b| b)
    }

    pub fn first(&self) -> Option<u32> {
        self.exps.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.exps.last().copied()
    }

    pub fn last_is_signed(&self) -> bool {
        self.bars.last().copied().unwrap_or(false)
    }

    pub fn weight(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.exps.len()
    }

    /// Number of exponents greater than one.
    pub fn height(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 1).count()
    }

    /// Nonempty with last exponent at least 2. Sign marks are ignored.
    pub fn is_admissible(&self) -> bool {
        self.last().is_some_and(|e| e >= 2)
    }

    pub fn push(&mut self, e: u32, bar: bool) {
        assert!(e >= 1);
        self.exps.push(e);
        self.bars.push(bar);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = self.clone();
        out.exps.extend_from_slice(&other.exps);
        out.bars.extend_from_slice(&other.bars);
        out
    }

    /// `(e, self…)`.
    pub fn prepend(&self, e: u32) -> MultiIndex {
        MultiIndex::new([e]).concat(self)
    }

    /// `(self…, e)`.
    pub fn append(&self, e: u32) -> MultiIndex {
        self.concat(&MultiIndex::new([e]))
    }

    pub fn reversed(&self) -> MultiIndex {
        let mut out = self.clone();
        out.exps.reverse();
        out.bars.reverse();
        out
    }

    /// Slots `range` (zero-based, half open).
    pub fn slice(&self, range: std::ops::Range<usize>) -> MultiIndex {
        MultiIndex { exps: self.exps[range.clone()].to_vec(), bars: self.bars[range].to_vec() }
    }

    /// Binary word: every exponent `a` becomes `y x^{a-1}`.
    ///
    /// Admissible unsigned indices are exactly the words starting with `y`
    /// and ending with `x`.
    pub fn to_word(&self) -> String {
        let mut w = String::with_capacity(self.weight() as usize);
        for &e in &self.exps {
            w.push('y');
            for _ in 1..e {
                w.push('x');
            }
        }
        w
    }

    pub fn from_word(word: &str) -> Result<MultiIndex> {
        let mut exps: Vec<u32> = Vec::new();
        for (i, ch) in word.chars().enumerate() {
            match ch {
                'y' => exps.push(1),
                'x' => match exps.last_mut() {
                    Some(e) => *e += 1,
                    None => {
                        return Err(Error::IndexSyntax { column: i + 1, message: "word must start with `y`".into() })
                    }
                },
                other => {
                    return Err(Error::IndexSyntax { column: i + 1, message: format!("unexpected letter `{other}`") })
                }
            }
        }
        Ok(MultiIndex::new(exps))
    }

    /// Dual index.
    ///
    /// Writes `self = ({1}^{a₁-1}, b₁+1, …, {1}^{a_s-1}, b_s+1)` and returns
    /// `({1}^{b_s-1}, a_s+1, …, {1}^{b₁-1}, a₁+1)`.
    pub fn dual(&self) -> Result<MultiIndex> {
        if self.is_signed() {
            return Err(Error::SignedDuality(self.to_string()));
        }
        if !self.is_admissible() {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        let mut blocks = Vec::new();
        let mut ones = 0u32;
        for &e in &self.exps {
            if e == 1 {
                ones += 1;
            } else {
                blocks.push((ones + 1, e - 1));
                ones = 0;
            }
        }
        let mut out = Vec::with_capacity(self.weight() as usize - self.depth());
        for &(a, b) in blocks.iter().rev() {
            out.extend(std::iter::repeat_n(1, b as usize - 1));
            out.push(a + 1);
        }
        Ok(MultiIndex::new(out))
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(exps: &[u32]) -> Self {
        MultiIndex::new(exps.to_vec())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(exps: Vec<u32>) -> Self {
        MultiIndex::new(exps)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(exps: [u32; N]) -> Self {
        MultiIndex::new(exps.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&e, &b)) in self.exps.iter().zip(&self.bars).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if b {
                f.write_str("bar")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = IndexParser { src: s.as_bytes(), pos: 0 };
        let idx = p.list()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(idx)
    }
}

struct IndexParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl IndexParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::IndexSyntax { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn list(&mut self) -> Result<MultiIndex> {
        let mut out = MultiIndex::empty();
        if self.peek().is_none() {
            return Ok(out);
        }
        loop {
            let entry = self.entry()?;
            out = out.concat(&entry);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::IndexSyntax { column: start + 1, message: "integer out of range".into() })
    }

    fn entry(&mut self) -> Result<MultiIndex> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let inner = self.entry()?;
                if self.peek() != Some(b'}') {
                    return Err(self.err("expected `}`"));
                }
                self.pos += 1;
                if self.peek() != Some(b'^') {
                    return Err(self.err("expected `^` after repetition block"));
                }
                self.pos += 1;
                let count = self.int()?;
                let mut out = MultiIndex::empty();
                for _ in 0..count {
                    out = out.concat(&inner);
                }
                Ok(out)
            }
            Some(b'b') => {
                if !self.src[self.pos..].starts_with(b"bar") {
                    return Err(self.err("expected `bar`"));
                }
                self.pos += 3;
                let column = self.pos;
                let e = self.int()?;
                if e == 0 {
                    return Err(Error::IndexSyntax { column: column + 1, message: "exponent must be positive".into() });
                }
                Ok(MultiIndex::signed(vec![e], vec![true]))
            }
            Some(c) if c.is_ascii_digit() => {
                let column = self.pos;
                let e = self.int()?;
                if e == 0 {
                    return Err(Error::IndexSyntax { column: column + 1, message: "exponent must be positive".into() });
                }
                Ok(MultiIndex::new([e]))
            }
            _ => Err(self.err("expected an index entry")),
        }
    }
}

/// Compositions of `total` into `parts` positive parts, lexicographic.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.current.take()?;
        let out = MultiIndex::new(cur.clone());
        // Successor: bump the rightmost slot whose suffix still has slack,
        // then reset that suffix to (1,…,1,rest).
        let r = cur.len();
        let mut next = cur;
        let mut suffix = *next.last().unwrap_or(&0);
        let mut i = r.saturating_sub(1);
        while i > 0 {
            i -= 1;
            let suffix_len = (r - 1 - i) as u32;
            if suffix > suffix_len {
                next[i] += 1;
                let rest = suffix - 1;
                for slot in next.iter_mut().skip(i + 1) {
                    *slot = 1;
                }
                next[r - 1] = rest - (suffix_len - 1);
                self.current = Some(next);
                return Some(out);
            }
            suffix += next[i];
        }
        Some(out)
    }
}

/// All `(α₁,…,α_r)` of positive integers with `Σα = k`, lexicographically.
/// Empty when `k < r` or `r == 0` (except `k = r = 0`, which yields `()`).
pub fn compositions(k: u32, r: usize) -> Compositions {
    let current = if r == 0 {
        (k == 0).then(Vec::new)
    } else if (k as usize) < r {
        None
    } else {
        let mut v = vec![1; r];
        v[r - 1] = k - (r as u32 - 1);
        Some(v)
    };
    Compositions { current }
}

/// Compositions of `k` into `r` parts whose last part is at least 2.
pub fn admissible_by_weight_depth(k: u32, r: usize) -> impl Iterator<Item = MultiIndex> {
    compositions(k, r).filter(MultiIndex::is_admissible)
}

/// Admissible indices of weight `k` and height `s`, by increasing depth and
/// lexicographically within a depth.
pub fn admissible_by_weight_height(k: u32, s: usize) -> impl Iterator<Item = MultiIndex> {
    admissible_of_weight(k).filter(move |idx| idx.height() == s)
}

/// All admissible indices of weight `k`, by increasing depth then lexicographic.
pub fn admissible_of_weight(k: u32) -> impl Iterator<Item = MultiIndex> {
    (1..k as usize).flat_map(move |r| admissible_by_weight_depth(k, r))
}

/// All indices of weight `k` (any depth), by increasing depth then lexicographic.
pub fn indices_of_weight(k: u32) -> impl Iterator<Item = MultiIndex> {
    (1..=k as usize).flat_map(move |r| compositions(k, r))
}

/// Compositions of `total` into `parts` nonnegative parts, lexicographic.
pub fn weak_compositions(total: u32, parts: usize) -> impl Iterator<Item = Vec<u32>> {
    compositions(total + parts as u32, parts).map(|c| c.exps().iter().map(|&x| x - 1).collect())
}

/// An integer partition, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    mu: BigUint,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Self::normalizer(&parts);
        Partition { parts, mu }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `(i, m_i)` for every part size `i` present, increasing in `i`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((i, m)) if *i == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `μ_λ = ∏ i^{m_i} m_i!`.
    pub fn mu(&self) -> &BigUint {
        &self.mu
    }

    fn normalizer(parts: &[u32]) -> BigUint {
        let mut mu = BigUint::one();
        let mut i = 0;
        while i < parts.len() {
            let p = parts[i];
            let mut m = 0u32;
            while i < parts.len() && parts[i] == p {
                m += 1;
                mu *= p;
                mu *= m;
                i += 1;
            }
        }
        mu
    }
}

/// Partitions of `n` in reverse lexicographic order, starting from `(n)`.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::new(cur.clone());
        let mut next = cur;
        let mut freed = 0u32;
        while let Some(&1) = next.last() {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let v = *last;
            freed += 1;
            while freed > 0 {
                let take = freed.min(v);
                next.push(take);
                freed -= take;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn partitions(n: u32) -> Partitions {
    let current = if n == 0 { Some(Vec::new()) } else { Some(vec![n]) };
    Partitions { current }
}
