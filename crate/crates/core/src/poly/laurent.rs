use std::fmt;

use num_traits::One;

use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ring::{Integer, RingSpec, SymbolKind};

/// Laurent polynomial stored as `shift * body`, where `shift` is a signed
/// monomial and `body` is a polynomial with no monomial content (minimum
/// exponent 0 in every symbol). This representation is unique, so equality
/// is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    shift: Monomial,
    body: MPoly,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { shift: Monomial::one(nvars), body: MPoly::zero(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly { shift: Monomial::one(nvars), body: MPoly::one(nvars) }
    }

    pub fn from_mpoly(p: &MPoly) -> Self {
        Self::from_parts(Monomial::one(p.nvars()), p.clone())
    }

    /// `shift * body` for an arbitrary polynomial body.
    pub fn from_parts(shift: Monomial, body: MPoly) -> Self {
        if body.is_zero() {
            return Self::zero(body.nvars());
        }
        let content = body.monomial_content();
        if content.is_one() {
            return LaurentPoly { shift, body };
        }
        LaurentPoly { shift: shift.mul(&content), body: body.div_monomial(&content) }
    }

    pub fn monomial(m: Monomial, c: Integer) -> Self {
        let nvars = m.len();
        Self::from_parts(m, MPoly::constant(c, nvars))
    }

    pub fn var(nvars: usize, idx: usize, exp: i32) -> Self {
        Self::monomial(Monomial::var(nvars, idx, exp), Integer::one())
    }

    pub fn nvars(&self) -> usize {
        self.body.nvars()
    }

    pub fn shift(&self) -> &Monomial {
        &self.shift
    }

    pub fn body(&self) -> &MPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.body.is_monomial()
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    /// Terms with their true (possibly negative) exponents, descending.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Integer)> {
        self.body.terms().iter().map(move |(m, c)| (m.mul(&self.shift), c))
    }

    /// Converts back to a polynomial when all exponents are nonnegative.
    pub fn to_mpoly(&self) -> Option<MPoly> {
        if self.is_zero() {
            return Some(self.body.clone());
        }
        self.shift.is_nonnegative().then(|| self.body.mul_monomial(&self.shift))
    }

    /// Membership in `S[x^{±1}]`: no negative exponent on a polynomial
    /// (non-invertible) coefficient generator.
    pub fn in_laurent_ring(&self, ring: &RingSpec) -> bool {
        self.is_zero() || ring.coeff_gens().iter().enumerate().all(|(i, _)| self.shift[i] >= 0)
    }

    pub fn min_exponent(&self, idx: usize) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.shift[idx]
        }
    }

    pub fn max_exponent(&self, idx: usize) -> i32 {
        self.shift[idx] + self.body.degree(idx) as i32
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { shift: self.shift.mul(m), body: self.body.clone() }
    }

    pub fn scale(&self, c: &Integer) -> LaurentPoly {
        Self::from_parts(self.shift.clone(), self.body.scale(c))
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        LaurentPoly { shift: self.shift.pow(k as i32), body: self.body.pow(k) }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { shift: self.shift.clone(), body: -&self.body }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        // Monomial content is additive, so the product body is content-free.
        LaurentPoly { shift: self.shift.mul(&other.shift), body: &self.body * &other.body }
    }

    fn combine(&self, other: &LaurentPoly, subtract: bool) -> LaurentPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg() } else { other.clone() };
        }
        let base = self.shift.meet(&other.shift);
        let a = self.body.mul_monomial(&self.shift.div(&base));
        let b = other.body.mul_monomial(&other.shift.div(&base));
        let body = if subtract { &a - &b } else { &a + &b };
        Self::from_parts(base, body)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.combine(other, true)
    }

    /// Exact quotient in the Laurent polynomial ring over all symbols.
    pub fn exact_div(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let body = self.body.exact_div(&other.body)?;
        Ok(LaurentPoly { shift: self.shift.div(&other.shift), body })
    }

    /// Exact quotient inside `L = S[x^{±1}]`: also rejects quotients that
    /// need a negative power of a polynomial coefficient generator.
    pub fn exact_div_in(&self, other: &LaurentPoly, ring: &RingSpec) -> Result<LaurentPoly> {
        let q = self.exact_div(other)?;
        if q.in_laurent_ring(ring) {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Largest `k` such that `g^k` divides `self` in `L`.
    pub fn multiplicity(&self, g: &MPoly, ring: &RingSpec) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Precondition("multiplicity of zero is unbounded".into()));
        }
        let gl = LaurentPoly::from_mpoly(g);
        if g.is_zero() || is_laurent_unit(&gl, ring) {
            return Err(Error::Precondition("multiplicity needs a nonzero non-unit divisor".into()));
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(q) = cur.exact_div_in(&gl, ring) {
            k += 1;
            cur = q;
        }
        Ok(k)
    }

    /// Restriction to terms with exponent 0 in `idx`.
    pub fn eval_zero(&self, idx: usize) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        match self.shift[idx] {
            s if s < 0 => Err(Error::LaurentAtZero),
            s if s > 0 => Ok(Self::zero(self.nvars())),
            _ => Ok(Self::from_parts(self.shift.clone(), self.body.eval_zero(idx))),
        }
    }

    /// Renames symbols: index `i` goes to `map[i]` in a ring with `nvars`
    /// symbols.
    pub fn permute_vars(&self, map: &[usize], nvars: usize) -> LaurentPoly {
        let mut shift = Monomial::one(nvars);
        for (i, &e) in self.shift.iter().enumerate() {
            shift[map[i]] += e;
        }
        Self::from_parts(shift, self.body.permute_vars(map, nvars))
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> impl fmt::Display + 'a {
        super::parse::LaurentDisplay { p: self, ring }
    }
}

/// Units of `L`: `±` a monomial in invertible and cluster symbols.
pub fn is_laurent_unit(p: &LaurentPoly, ring: &RingSpec) -> bool {
    p.is_monomial()
        && p.body.terms()[0].1.magnitude().is_one()
        && (0..p.nvars()).all(|i| p.shift[i] == 0 || ring.kind(i) != SymbolKind::Coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    #[test]
    fn shift_normalization_and_arith() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let f = LaurentPoly::from_mpoly(&parse_expr("x^2*y + x*y", &r).unwrap());
        assert_eq!(f.shift().as_slice(), &[1, 1]);
        assert_eq!(f.body(), &parse_expr("x+1", &r).unwrap());
        let inv = LaurentPoly::var(2, 0, -1);
        let g = f.mul(&inv);
        assert_eq!(g.to_mpoly().unwrap(), parse_expr("x*y+y", &r).unwrap());
        let h = g.sub(&LaurentPoly::from_mpoly(&parse_expr("x*y+y", &r).unwrap()));
        assert!(h.is_zero());
    }

    #[test]
    fn eval_zero_rejects_negative_exponents() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let f = LaurentPoly::from_mpoly(&parse_expr("y+1", &r).unwrap()).mul(&LaurentPoly::var(2, 0, -1));
        assert_eq!(f.eval_zero(0), Err(Error::LaurentAtZero));
        assert_eq!(f.eval_zero(1).unwrap(), LaurentPoly::var(2, 0, -1));
    }

    #[test]
    fn coefficient_generators_are_not_invertible() {
        let r = RingSpec::new(["A"], ["X"], ["x"]).unwrap();
        let one = LaurentPoly::one(3);
        let a = LaurentPoly::var(3, 0, 1);
        let xx = LaurentPoly::var(3, 1, 1);
        assert!(one.exact_div_in(&a, &r).is_err());
        assert!(one.exact_div_in(&xx, &r).is_ok());
    }
}
