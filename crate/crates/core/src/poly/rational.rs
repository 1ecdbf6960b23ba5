use std::fmt;

use num_traits::{One, Signed};

use super::gcd::gcd_raw;
use super::{LaurentPoly, MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ring::{Integer, RingSpec, SymbolKind};

/// Element of the ambient rational function field, stored as a reduced
/// fraction of integer polynomials over the root ring: numerator and
/// denominator are coprime in `Z[all symbols]` and the denominator has a
/// positive leading coefficient. The representation is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalExpr {
    num: MPoly,
    den: MPoly,
}

impl RationalExpr {
    pub fn from_mpoly(p: &MPoly) -> Self {
        RationalExpr { num: p.clone(), den: MPoly::one(p.nvars()) }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Self::from_mpoly(&MPoly::var(nvars, idx))
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (pos, neg) = p.shift().split_signs();
        RationalExpr { num: p.body().mul_monomial(&pos), den: MPoly::monomial(neg, Integer::one()) }
    }

    /// Reduces `num / den` to lowest terms.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_mpoly(&num));
        }
        let g = gcd_raw(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(RationalExpr { num, den })
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Denominator is a monomial with coefficient 1, that is, the value is a
    /// Laurent polynomial over all symbols.
    pub fn is_laurent_over_all(&self) -> bool {
        self.den.is_monomial() && self.den.terms()[0].1.is_one()
    }

    /// Membership in `S[x^{±1}]`: the denominator is a monomial in cluster
    /// and invertible symbols only.
    pub fn is_laurent(&self, ring: &RingSpec) -> bool {
        self.is_laurent_over_all()
            && self.den.terms()[0].0.iter().enumerate().all(|(i, &e)| e == 0 || ring.kind(i) != SymbolKind::Coeff)
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.is_laurent_over_all() {
            return None;
        }
        let m = self.den.terms()[0].0.neg();
        Some(LaurentPoly::from_parts(m, self.num.clone()))
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        if let (Some(a), Some(b)) = (self.to_laurent(), other.to_laurent()) {
            return Self::from_laurent(&a.mul(&b));
        }
        let g1 = gcd_raw(&self.num, &other.den);
        let g2 = gcd_raw(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        Self::signed(num, den)
    }

    fn signed(num: MPoly, den: MPoly) -> RationalExpr {
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            RationalExpr { num: -num, den: -den }
        } else {
            RationalExpr { num, den }
        }
    }

    pub fn inv(&self) -> Result<RationalExpr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::signed(self.den.clone(), self.num.clone()))
    }

    /// Division; tries an exact Laurent quotient before falling back to gcd
    /// reduction.
    pub fn div(&self, other: &RationalExpr) -> Result<RationalExpr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Some(a), Some(b)) = (self.to_laurent(), other.to_laurent()) {
            if let Ok(q) = a.exact_div(&b) {
                return Ok(Self::from_laurent(&q));
            }
        }
        Ok(self.mul(&other.inv()?))
    }

    fn combine(&self, other: &RationalExpr, subtract: bool) -> RationalExpr {
        if let (Some(a), Some(b)) = (self.to_laurent(), other.to_laurent()) {
            let s = if subtract { a.sub(&b) } else { a.add(&b) };
            return Self::from_laurent(&s);
        }
        let t1 = &self.num * &other.den;
        let t2 = &other.num * &self.den;
        let num = if subtract { &t1 - &t2 } else { &t1 + &t2 };
        Self::new(num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &RationalExpr) -> RationalExpr {
        self.combine(other, true)
    }

    pub fn pow(&self, k: i32) -> Result<RationalExpr> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        Ok(RationalExpr { num: self.num.pow(k), den: self.den.pow(k) })
    }

    /// Composition `self(vals)`: symbol `i` is replaced by `vals[i]` when it
    /// is `Some`, and kept otherwise.
    pub fn compose(&self, vals: &[Option<RationalExpr>]) -> Result<RationalExpr> {
        let n = compose_poly(&self.num, vals)?;
        let d = compose_poly(&self.den, vals)?;
        n.div(&d)
    }

    /// Substitutes a single symbol.
    pub fn substitute(&self, idx: usize, val: &RationalExpr) -> Result<RationalExpr> {
        let mut vals = vec![None; self.nvars()];
        vals[idx] = Some(val.clone());
        self.compose(&vals)
    }

    /// Renames symbols of the underlying polynomials.
    pub fn permute_vars(&self, map: &[usize], nvars: usize) -> RationalExpr {
        Self::signed(self.num.permute_vars(map, nvars), self.den.permute_vars(map, nvars))
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> impl fmt::Display + 'a {
        RationalDisplay { r: self, ring }
    }
}

/// Evaluates a polynomial at rational values, staying inside Laurent
/// arithmetic when every substituted value is Laurent.
pub fn compose_poly(p: &MPoly, vals: &[Option<RationalExpr>]) -> Result<RationalExpr> {
    let n = p.nvars();
    let laurent: Option<Vec<Option<LaurentPoly>>> =
        vals.iter().map(|v| v.as_ref().map(|v| v.to_laurent()).map_or(Some(None), |o| o.map(Some))).collect();
    if let Some(lv) = laurent {
        return Ok(RationalExpr::from_laurent(&compose_laurent(p, &lv)));
    }
    let mut acc = RationalExpr::from_mpoly(&MPoly::zero(n));
    let mut cache: rustc_hash::FxHashMap<(usize, i32), RationalExpr> = Default::default();
    for (m, c) in p.terms() {
        let mut keep = Monomial::one(n);
        let mut term = RationalExpr::from_mpoly(&MPoly::constant(c.clone(), n));
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &vals[i] {
                None => keep[i] = e,
                Some(v) => {
                    let pw = match cache.get(&(i, e)) {
                        Some(pw) => pw.clone(),
                        None => {
                            let pw = v.pow(e)?;
                            cache.insert((i, e), pw.clone());
                            pw
                        }
                    };
                    term = term.mul(&pw);
                }
            }
        }
        term = term.mul(&RationalExpr::from_mpoly(&MPoly::monomial(keep, Integer::one())));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Evaluates a polynomial at Laurent values.
pub fn compose_laurent(p: &MPoly, vals: &[Option<LaurentPoly>]) -> LaurentPoly {
    let n = p.nvars();
    // Group terms by the substituted part of their monomial to share powers.
    let mut cache: rustc_hash::FxHashMap<(usize, i32), LaurentPoly> = Default::default();
    let mut parts: Vec<LaurentPoly> = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut keep = Monomial::one(n);
        let mut term = LaurentPoly::monomial(Monomial::one(n), c.clone());
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &vals[i] {
                None => keep[i] = e,
                Some(v) => {
                    let pw = cache.entry((i, e)).or_insert_with(|| v.pow(e as u32));
                    term = term.mul(pw);
                }
            }
        }
        parts.push(term.mul_monomial(&keep));
    }
    sum_laurent(parts, n)
}

/// Sums Laurent polynomials pairwise to keep intermediate merges balanced.
fn sum_laurent(mut parts: Vec<LaurentPoly>, n: usize) -> LaurentPoly {
    if parts.is_empty() {
        return LaurentPoly::zero(n);
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}

struct RationalDisplay<'a> {
    r: &'a RationalExpr,
    ring: &'a RingSpec,
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::write_fraction(f, &self.r.num, &self.r.den, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    #[test]
    fn substitution_example() {
        // (b^2+b+a^3+a^2) with a <- (b+1)/a'
        let r = RingSpec::cluster_only(["a", "b", "c", "e"]).unwrap();
        let p = |s: &str| parse_expr(s, &r).unwrap();
        let f = RationalExpr::from_mpoly(&p("b^2+b+a^3+a^2"));
        let val = RationalExpr::new(p("b+1"), p("e")).unwrap();
        let got = f.substitute(0, &val).unwrap();
        let expected = RationalExpr::from_mpoly(&p("b*(b+1)"))
            .add(&RationalExpr::new(p("(b+1)^2*(b+1+e)"), p("e^3")).unwrap());
        assert_eq!(got, expected);
        assert!(got.is_laurent(&r));
        assert_eq!(f.substitute(0, &RationalExpr::var(4, 0)).unwrap(), f);
        let g = RationalExpr::from_mpoly(&p("1+b"));
        assert_eq!(g.substitute(1, &RationalExpr::from_mpoly(&p("0"))).unwrap(), RationalExpr::from_mpoly(&p("1")));
    }

    #[test]
    fn reduced_form_is_unique() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let p = |s: &str| parse_expr(s, &r).unwrap();
        let a = RationalExpr::new(p("x^2-y^2"), p("-2*x-2*y")).unwrap();
        let b = RationalExpr::new(p("y-x"), p("2")).unwrap();
        assert_eq!(a, b);
        let c = a.add(&b.neg());
        assert!(c.is_zero());
        assert_eq!(a.div(&a).unwrap(), RationalExpr::from_mpoly(&p("1")));
    }
}
