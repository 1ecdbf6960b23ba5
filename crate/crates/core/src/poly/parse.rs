//! Expression parser and printer.
//!
//! Grammar: integers, symbols `[A-Za-z][A-Za-z0-9_]*`, binary `+ - *`,
//! unary `+ -`, `^` with a nonnegative integer literal, and parentheses.

use std::fmt;

use num_traits::{One, Signed};

use super::{LaurentPoly, MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ring::{Integer, RingSpec};

/// Parses `text` as a polynomial over `ring`.
pub fn parse_expr(text: &str, ring: &RingSpec) -> Result<MPoly> {
    parse_expr_at(text, ring, 1, 1)
}

/// Like [`parse_expr`], reporting positions relative to `(line, column)`.
pub(crate) fn parse_expr_at(text: &str, ring: &RingSpec, line: usize, column: usize) -> Result<MPoly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, line, col: column, ring };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(&format!("unexpected `{c}`")));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    ring: &'a RingSpec,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { line: self.line, column: self.col, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("exponent must be a nonnegative integer literal"));
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let k: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        Ok(base.pow(k))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn atom(&mut self) -> Result<MPoly> {
        self.skip_ws();
        let n = self.ring.nvars();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v: Integer = digits.parse().expect("digits");
                Ok(MPoly::constant(v, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (line, col) = (self.line, self.col);
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                match self.ring.index_of(&name) {
                    Some(idx) => Ok(MPoly::var(n, idx)),
                    None => Err(Error::Parse { line, column: col, message: format!("unknown symbol `{name}`") }),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, ring: &RingSpec) -> fmt::Result {
    let mut first = true;
    for (idx, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.symbol(idx))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &MPoly, ring: &RingSpec) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        let a = c.abs();
        if m.is_one() {
            write!(f, "{a}")?;
        } else {
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write_monomial(f, m, ring)?;
        }
    }
    Ok(())
}

pub(crate) struct PolyDisplay<'a> {
    pub p: &'a MPoly,
    pub ring: &'a RingSpec,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.p, self.ring)
    }
}

/// Prints `num/den`, parenthesizing either side when it has several terms
/// or a coefficient.
pub(crate) fn write_fraction(f: &mut fmt::Formatter<'_>, num: &MPoly, den: &MPoly, ring: &RingSpec) -> fmt::Result {
    if den.is_one() {
        return write_poly(f, num, ring);
    }
    if num.len() > 1 {
        f.write_str("(")?;
        write_poly(f, num, ring)?;
        f.write_str(")")?;
    } else {
        write_poly(f, num, ring)?;
    }
    f.write_str("/")?;
    let simple = den.len() == 1 && (den.terms()[0].1.is_one() || den.terms()[0].0.is_one());
    let single_factor = simple && den.terms()[0].0.iter().filter(|&&e| e != 0).count() <= 1;
    if single_factor {
        write_poly(f, den, ring)
    } else {
        f.write_str("(")?;
        write_poly(f, den, ring)?;
        f.write_str(")")
    }
}

pub(crate) struct LaurentDisplay<'a> {
    pub p: &'a LaurentPoly,
    pub ring: &'a RingSpec,
}

impl fmt::Display for LaurentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pos, neg) = self.p.shift().split_signs();
        let num = self.p.body().mul_monomial(&pos);
        let den = MPoly::monomial(neg, Integer::one());
        write_fraction(f, &num, &den, self.ring)
    }
}

impl MPoly {
    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, ring }
    }

    pub fn to_string_in(&self, ring: &RingSpec) -> String {
        self.display(ring).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let r = RingSpec::cluster_only(["a", "b", "c", "d"]).unwrap();
        let f = parse_expr("a^2+d^2", &r).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string_in(&r), "a^2+d^2");
        assert_eq!(parse_expr("1", &r).unwrap(), MPoly::one(4));
        let g = RingSpec::cluster_only(["y1", "y2", "y3", "y4", "y5", "y6"]).unwrap();
        let f6 = parse_expr("y3^2 + y2*y4 + y1*y5", &g).unwrap();
        assert_eq!(f6.to_string_in(&g), "y1*y5+y2*y4+y3^2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        match parse_expr("x + \n  2*q", &r) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 5));
                assert!(message.contains("unknown symbol"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("x y", &r).is_err());
        assert!(parse_expr("x^-1", &r).is_err());
        assert!(parse_expr("(x+1", &r).is_err());
        assert!(parse_expr("", &r).is_err());
    }

    #[test]
    fn print_signs_and_coefficients() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let f = parse_expr("-3*x^2*y + x - 1", &r).unwrap();
        assert_eq!(f.to_string_in(&r), "-3*x^2*y+x-1");
        assert_eq!(parse_expr(&f.to_string_in(&r), &r).unwrap(), f);
    }
}
