//! Expression mini-language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := rational | atom | '(' expr ')'
//! atom    := name '(' indexlist (';' indexlist)? ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use mzv_core::{Atom, FormKind, GeneralForm, LinearCombo, MultiIndex};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// The value as an exact combination of atoms.
    pub fn to_combo(&self) -> LinearCombo {
        match self {
            Expr::Num(q) => LinearCombo::constant(q.clone()),
            Expr::Atom(a) => LinearCombo::atom(a.clone()),
            Expr::Neg(x) => -&x.to_combo(),
            Expr::Add(a, b) => &a.to_combo() + &b.to_combo(),
            Expr::Sub(a, b) => &a.to_combo() - &b.to_combo(),
            Expr::Mul(a, b) => &a.to_combo() * &b.to_combo(),
            Expr::Pow(x, n) => x.to_combo().pow(*n),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if !q.is_integer() => 4,
            Expr::Num(_) | Expr::Atom(_) => 5,
        }
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Atom(Atom::Riemann(k)) => write!(f, "zeta({k})"),
            Expr::Atom(Atom::Zeta(idx)) => write!(f, "zeta({idx})"),
            Expr::Atom(Atom::ZetaStar(idx)) => write!(f, "zetastar({idx})"),
            Expr::Atom(Atom::Form(g)) => write!(f, "{g}"),
            Expr::Neg(x) => {
                f.write_str("-")?;
                paren(f, x, x.prec() < 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                paren(f, a, a.prec() < 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                paren(f, b, b.prec() <= 1)
            }
            Expr::Mul(a, b) => {
                paren(f, a, a.prec() < 2)?;
                f.write_str("*")?;
                paren(f, b, b.prec() <= 2)
            }
            Expr::Pow(x, n) => {
                paren(f, x, x.prec() < 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, CliError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err(p.pos, "unexpected input after expression"));
    }
    Ok(e)
}

/// Parses an index in the index syntax, reporting positions in `text`.
pub fn parse_index(text: &str) -> Result<MultiIndex, CliError> {
    Parser { src: text, pos: 0 }.index_at(0, text.len())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> CliError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        CliError::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("`{x}`"));
            Err(self.err(self.pos, format!("expected `{c}`, found {found}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.primary()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let n = self.digits().ok_or_else(|| self.err(at, "expected an integer exponent"))?;
            let n = n.parse::<u32>().map_err(|_| self.err(at, "exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let src: &'a str = self.src;
        let rest = &src[self.pos..];
        let len = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => self.atom(),
            Some(c) => Err(self.err(self.pos, format!("unexpected `{c}`"))),
            None => Err(self.err(self.pos, "unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Expr, CliError> {
        let num: BigInt = self.digits().expect("peeked a digit").parse().expect("digits");
        let mut den = BigInt::one();
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            den = self.digits().ok_or_else(|| self.err(at, "expected a denominator"))?.parse().expect("digits");
            if den.is_zero() {
                return Err(self.err(at, "zero denominator"));
            }
        }
        Ok(Expr::Num(BigRational::new(num, den)))
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_alphanumeric() || c == '_').len();
        let name = &rest[..len];
        self.pos += len;
        let kind = match name {
            "zeta" | "zetastar" => None,
            "zb" => Some(FormKind::B),
            "zl" => Some(FormKind::L),
            "zu" => Some(FormKind::U),
            _ => return Err(self.err(start, format!("unknown atom `{name}` (zeta, zetastar, zb, zl, zu)"))),
        };
        self.expect('(')?;
        let upper = self.index_list()?;
        let atom = match kind {
            None => {
                if self.peek() == Some(';') {
                    return Err(self.err(self.pos, format!("`{name}` takes a single index list")));
                }
                if name == "zeta" {
                    Atom::Zeta(upper)
                } else {
                    Atom::ZetaStar(upper)
                }
            }
            Some(kind) => {
                self.expect(';')?;
                let lower = self.index_list()?;
                Atom::Form(GeneralForm::new(kind, upper, lower))
            }
        };
        self.expect(')')?;
        Ok(Expr::Atom(atom))
    }

    /// An index list runs up to the next `;` or `)`.
    fn index_list(&mut self) -> Result<MultiIndex, CliError> {
        let start = self.pos;
        let len = self.src[start..].find([';', ')']).unwrap_or(self.src.len() - start);
        self.pos = start + len;
        self.index_at(start, start + len)
    }

    fn index_at(&self, start: usize, end: usize) -> Result<MultiIndex, CliError> {
        self.src[start..end].parse().map_err(|e| match e {
            mzv_core::Error::IndexSyntax { column, message } => self.err(start + column - 1, message),
            other => CliError::Core(other),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mzv_core::combo::rat;

    #[test]
    fn atoms() {
        assert_eq!(parse("zeta(1,2)").unwrap(), Expr::Atom(Atom::Zeta(MultiIndex::new([1, 2]))));
        assert_eq!(parse("zetastar({1}^3,2)").unwrap(), Expr::Atom(Atom::ZetaStar(MultiIndex::new([1, 1, 1, 2]))));
        assert_eq!(parse("zeta(2,bar2)").unwrap(), Expr::Atom(Atom::Zeta(MultiIndex::signed([2, 2], [false, true]))));
        let e = parse("zb(2,3; 1,1) - 7/4*zeta(5)").unwrap();
        let form = Expr::Atom(Atom::Form(GeneralForm::zb([2, 3], [1, 1])));
        let rhs = Expr::Mul(Box::new(Expr::Num(rat(7, 4))), Box::new(Expr::Atom(Atom::Zeta(MultiIndex::new([5])))));
        assert_eq!(e, Expr::Sub(Box::new(form), Box::new(rhs)));
        assert_eq!(parse("zu(3;)").unwrap(), Expr::Atom(Atom::Form(GeneralForm::zu([3], MultiIndex::empty()))));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("1 - 2 - 3").unwrap().to_string(), "1 - 2 - 3");
        assert_eq!(parse("1 - (2 - 3)").unwrap().to_string(), "1 - (2 - 3)");
        assert_eq!(parse("-zeta(2)^2").unwrap().to_string(), "-zeta(2)^2");
        assert_eq!(parse("(-zeta(2))^2").unwrap().to_string(), "(-zeta(2))^2");
        assert_eq!(parse("-(zeta(2)*zeta(3))").unwrap().to_string(), "-(zeta(2)*zeta(3))");
        assert_eq!(parse("2*(3*zeta(2))").unwrap().to_string(), "2*(3*zeta(2))");
        assert_eq!(parse("(1/2)^3").unwrap().to_string(), "(1/2)^3");
    }

    #[test]
    fn combos() {
        let c = parse("zeta(2)^2 - 2*zeta(2,2) - zeta(4)").unwrap().to_combo();
        let (lhs, rhs) =
            (LinearCombo::riemann(2).pow(2), &LinearCombo::zeta([2, 2]).scale(&rat(2, 1)) + &LinearCombo::riemann(4));
        assert_eq!(c, &lhs - &rhs);
        // a combination's display is itself parseable
        let back = parse(&c.to_string()).unwrap().to_combo();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_carry_positions() {
        let at = |s: &str| match parse(s).unwrap_err() {
            CliError::Parse { line, column, .. } => (line, column),
            e => panic!("{e}"),
        };
        assert_eq!(at("zeta(1,2"), (1, 9));
        assert_eq!(at("foo(2)"), (1, 1));
        assert_eq!(at("zeta(2,,3)"), (1, 8));
        assert_eq!(at("zeta(2)\n + zeta(0)"), (2, 9));
        assert_eq!(at("zeta(2) zeta(3)"), (1, 9));
        assert_eq!(at("zb(2,3)"), (1, 7));
        assert_eq!(at("zeta(2;3)"), (1, 7));
        assert_eq!(at("1/0"), (1, 3));
        assert_eq!(at("zeta(2)^x"), (1, 9));
        assert_eq!(at(""), (1, 1));
    }
}
