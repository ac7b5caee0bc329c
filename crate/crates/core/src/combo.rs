//! Exact rational linear combinations of products of zeta atoms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::GeneralForm;
use crate::index::MultiIndex;

/// An evaluable quantity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Atom {
    /// Riemann zeta value `ζ(k)`.
    Riemann(u32),
    /// Multiple zeta value over strict chains, possibly alternating.
    Zeta(MultiIndex),
    /// Multiple zeta-star value over weak chains, possibly alternating.
    ZetaStar(MultiIndex),
    /// One of the two-chain sums `Z_B`, `Z_L`, `Z_U`.
    Form(GeneralForm),
}

impl Atom {
    /// Canonical representative; `None` stands for the constant 1.
    pub fn canonical(self) -> Option<Atom> {
        match self {
            Atom::Zeta(idx) | Atom::ZetaStar(idx) if idx.is_empty() => None,
            Atom::Zeta(idx) | Atom::ZetaStar(idx) if idx.depth() == 1 && !idx.is_signed() => {
                Some(Atom::Riemann(idx.exps()[0]))
            }
            other => Some(other),
        }
    }

    /// Checks that the defining series converges.
    ///
    /// A trailing signed exponent of 1 is rejected as well even though the
    /// outer alternating sum would converge.
    pub fn check_convergent(&self) -> Result<()> {
        let ok = match self {
            Atom::Riemann(k) => *k >= 2,
            Atom::Zeta(idx) | Atom::ZetaStar(idx) => idx.is_empty() || idx.is_admissible(),
            Atom::Form(form) => form.validate().is_ok(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DivergentAtom(self.to_string()))
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Riemann(k) => write!(f, "zeta({k})"),
            Atom::Zeta(idx) => write!(f, "zeta({idx})"),
            Atom::ZetaStar(idx) => write!(f, "zetastar({idx})"),
            Atom::Form(form) => write!(f, "{form}"),
        }
    }
}

/// A product of atoms; the empty product is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Atom>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut v: Vec<Atom> = atoms.into_iter().filter_map(Atom::canonical).collect();
        v.sort();
        Monomial(v)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `Σ qᵢ · monomialᵢ` with exact rational coefficients, zero terms dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearCombo {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LinearCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(Monomial::one(), q);
        c
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn atom(a: Atom) -> Self {
        Self::term(int(1), [a])
    }

    pub fn term(q: BigRational, atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut c = Self::zero();
        c.add_term(Monomial::from_atoms(atoms), q);
        c
    }

    /// `ζ(idx)`.
    pub fn zeta(idx: impl Into<MultiIndex>) -> Self {
        Self::atom(Atom::Zeta(idx.into()))
    }

    /// `ζ⋆(idx)`.
    pub fn zeta_star(idx: impl Into<MultiIndex>) -> Self {
        Self::atom(Atom::ZetaStar(idx.into()))
    }

    pub fn riemann(k: u32) -> Self {
        Self::atom(Atom::Riemann(k))
    }

    pub fn form(form: GeneralForm) -> Self {
        Self::atom(Atom::Form(form))
    }

    pub fn add_term(&mut self, mono: Monomial, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, q: &BigRational) -> LinearCombo {
        let mut out = LinearCombo::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * q);
        }
        out
    }

    pub fn pow(&self, n: u32) -> LinearCombo {
        let mut out = LinearCombo::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Every distinct atom, in order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.terms.keys().flat_map(|m| m.0.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces every atom by a combination.
    pub fn substitute<F>(&self, mut f: F) -> Result<LinearCombo>
    where
        F: FnMut(&Atom) -> Result<LinearCombo>,
    {
        let mut out = LinearCombo::zero();
        for (mono, q) in &self.terms {
            let mut prod = LinearCombo::constant(q.clone());
            for a in &mono.0 {
                prod = &prod * &f(a)?;
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// First atom whose series diverges, if any.
    pub fn divergent_atom(&self) -> Option<Atom> {
        self.atoms().into_iter().find(|a| a.check_convergent().is_err())
    }

    /// `[{atom, numerator, denominator}, …]`. Integers that do not fit in
    /// an `i64` are emitted as decimal strings.
    pub fn to_json(&self) -> Value {
        fn num(x: &BigInt) -> Value {
            match x.to_i64() {
                Some(v) => json!(v),
                None => json!(x.to_string()),
            }
        }
        Value::Array(
            self.terms
                .iter()
                .map(|(m, q)| {
                    json!({
                        "atom": m.to_string(),
                        "numerator": num(q.numer()),
                        "denominator": num(q.denom()),
                    })
                })
                .collect(),
        )
    }
}

impl Add for &LinearCombo {
    type Output = LinearCombo;
    fn add(self, rhs: &LinearCombo) -> LinearCombo {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }
}

impl Sub for &LinearCombo {
    type Output = LinearCombo;
    fn sub(self, rhs: &LinearCombo) -> LinearCombo {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), -q.clone());
        }
        out
    }
}

impl Mul for &LinearCombo {
    type Output = LinearCombo;
    fn mul(self, rhs: &LinearCombo) -> LinearCombo {
        let mut out = LinearCombo::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &rhs.terms {
                out.add_term(m1.times(m2), q1 * q2);
            }
        }
        out
    }
}

impl Neg for &LinearCombo {
    type Output = LinearCombo;
    fn neg(self) -> LinearCombo {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LinearCombo {
            type Output = LinearCombo;
            fn $method(self, rhs: LinearCombo) -> LinearCombo {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LinearCombo {
    fn sum<I: Iterator<Item = LinearCombo>>(iter: I) -> Self {
        iter.fold(LinearCombo::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for LinearCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let abs = q.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_atoms() {
        assert_eq!(LinearCombo::zeta([3]), LinearCombo::riemann(3));
        assert_eq!(LinearCombo::zeta_star([3]), LinearCombo::riemann(3));
        assert_eq!(LinearCombo::zeta(MultiIndex::empty()), LinearCombo::one());
        let alt = MultiIndex::signed(vec![2], vec![true]);
        assert_ne!(LinearCombo::zeta(alt), LinearCombo::riemann(2));
    }

    #[test]
    fn arithmetic_and_display() {
        let z2 = LinearCombo::riemann(2);
        let z4 = LinearCombo::riemann(4);
        let z22 = LinearCombo::zeta([2, 2]);
        let c = &(&z22.scale(&int(2)) + &z4) - &z2.pow(2);
        assert_eq!(c.len(), 3);
        assert_eq!(c.to_string(), "-zeta(2)^2 + zeta(4) + 2*zeta(2,2)");
        let zero = &c - &c;
        assert!(zero.is_zero());
        assert_eq!(zero.to_string(), "0");
        let d = &LinearCombo::constant(rat(7, 4)) * &z4;
        assert_eq!(d.to_string(), "7/4*zeta(4)");
        let e = &(-&d) + &LinearCombo::one();
        assert_eq!(e.to_string(), "1 - 7/4*zeta(4)");
    }

    #[test]
    fn json_shape() {
        let c = &LinearCombo::zeta([1, 2]).scale(&int(2)) - &LinearCombo::riemann(3);
        let v = c.to_json();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["atom"], "zeta(3)");
        assert_eq!(arr[0]["numerator"], -1);
        assert_eq!(arr[1]["atom"], "zeta(1,2)");
        assert_eq!(arr[1]["denominator"], 1);
    }

    #[test]
    fn divergence_detection() {
        let c = &LinearCombo::riemann(3) * &LinearCombo::riemann(1);
        assert_eq!(c.divergent_atom(), Some(Atom::Riemann(1)));
        assert_eq!(LinearCombo::zeta([2, 1]).divergent_atom(), Some(Atom::Zeta(MultiIndex::new([2, 1]))));
        assert!(LinearCombo::zeta(MultiIndex::signed(vec![2, 2], vec![false, true])).divergent_atom().is_none());
    }
}
