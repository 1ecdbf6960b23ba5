use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::Monomial;
use crate::error::{Error, Result};
use crate::ring::{int_gcd, Integer};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept in strictly descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality. Exponents are
/// nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Monomial, Integer)>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Integer::one(), nvars)
    }

    pub fn constant(c: Integer, nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Integer) -> Self {
        debug_assert!(m.is_nonnegative());
        let nvars = m.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly { nvars, terms: vec![(m, c)] }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Self::monomial(Monomial::var(nvars, idx, 1), Integer::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Integer)>) -> Self {
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), nvars);
            *acc.entry(m).or_insert_with(Integer::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<Monomial, Integer>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Integer)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Integer)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Integer> {
        match self.terms.as_slice() {
            [] => Some(Integer::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Integer> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn degree(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[idx]).max().unwrap_or(0).max(0) as u32
    }

    pub fn min_degree(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[idx]).min().unwrap_or(0).max(0) as u32
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn depends_on(&self, idx: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[idx] != 0)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.depends_on(i)).collect()
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.meet(m)),
        }
    }

    /// Componentwise maximum exponent over all terms.
    pub fn degree_vector(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.join(m)),
        }
    }

    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> Integer {
        let mut g = Integer::zero();
        for (_, c) in &self.terms {
            g = int_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &Integer) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_integer(&self, c: &Integer) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    debug_assert!((a % c).is_zero());
                    (m.clone(), a / c)
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Divides by a monomial known to divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients with respect to variable `idx`: `self = Σ c_k x^k`.
    pub fn coefficients_in(&self, idx: usize) -> Vec<MPoly> {
        let deg = self.degree(idx) as usize;
        let mut buckets: Vec<Vec<(Monomial, Integer)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m[idx] as usize;
            let mut m2 = m.clone();
            m2[idx] = 0;
            buckets[k].push((m2, c.clone()));
        }
        // Removing one variable keeps the relative order within a bucket
        // only up to degree shifts, so re-sort.
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { nvars: self.nvars, terms: t }
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients(nvars: usize, idx: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2[idx] += k as i32;
                terms.push((m2, a.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { nvars, terms }
    }

    /// Keeps only the terms free of variable `idx`.
    pub fn eval_zero(&self, idx: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m[idx] == 0).cloned().collect(),
        }
    }

    /// Substitutes integers for some variables.
    pub fn specialize(&self, values: &[(usize, Integer)]) -> MPoly {
        let mut pows: FxHashMap<(usize, i32), Integer> = FxHashMap::default();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (idx, v) in values {
                let e = m[*idx];
                if e != 0 {
                    let p = pows.entry((*idx, e)).or_insert_with(|| num_traits::pow(v.clone(), e as usize));
                    c2 *= &*p;
                    m2[*idx] = 0;
                }
            }
            (m2, c2)
        });
        let terms: Vec<_> = terms.collect();
        Self::from_terms(self.nvars, terms)
    }

    pub fn derivative(&self, idx: usize) -> MPoly {
        let terms = self.terms.iter().filter(|(m, _)| m[idx] > 0).map(|(m, c)| {
            let mut m2 = m.clone();
            m2[idx] -= 1;
            (m2, c * Integer::from(m[idx]))
        });
        Self::from_terms(self.nvars, terms.collect::<Vec<_>>())
    }

    /// Renames variables: old index `i` goes to `map[i]` in a ring with
    /// `nvars` symbols.
    pub fn permute_vars(&self, map: &[usize], nvars: usize) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = Monomial::one(nvars);
            for (i, &e) in m.iter().enumerate() {
                m2[map[i]] += e;
            }
            (m2, c.clone())
        });
        Self::from_terms(nvars, terms.collect::<Vec<_>>())
    }

    /// Replaces variable `idx` by `c * x_idx` where `c` is an integer sign and
    /// monomial: each term picks up `c^e`. The result may carry negative
    /// exponents in the monomial part, which are returned separately as a
    /// common shift so the polynomial stays nonnegative.
    pub(crate) fn rescale_var(&self, idx: usize, sign_negative: bool, mono: &Monomial) -> (MPoly, Monomial) {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m[idx];
                let c2 = if sign_negative && e % 2 != 0 { -c.clone() } else { c.clone() };
                (m.mul(&mono.pow(e)), c2)
            })
            .collect();
        let shift = terms.iter().fold(Monomial::one(self.nvars), |acc, (m, _)| acc.meet(m));
        let terms = terms.into_iter().map(|(m, c)| (m.div(&shift), c));
        (Self::from_terms(self.nvars, terms.collect::<Vec<_>>()), shift)
    }

    /// Exact division `self / g`.
    pub fn exact_div(&self, g: &MPoly) -> Result<MPoly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let [(gm, gc)] = g.terms.as_slice() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !m.divisible_by(gm) {
                    return Err(Error::NotDivisible);
                }
                let (q, r) = c.div_rem(gc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                terms.push((m.div(gm), q));
            }
            return Ok(MPoly { nvars: self.nvars, terms });
        }
        // Cheap degree-box rejection.
        let (fmax, fmin) = (self.degree_vector(), self.monomial_content());
        let (gmax, gmin) = (g.degree_vector(), g.monomial_content());
        for i in 0..self.nvars {
            if fmax[i] < gmax[i] || fmin[i] < gmin[i] || fmax[i] - fmin[i] < gmax[i] - gmin[i] {
                return Err(Error::NotDivisible);
            }
        }
        let (glm, glc) = (&g.terms[0].0, &g.terms[0].1);
        let mut rem: BTreeMap<Monomial, Integer> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !m.divisible_by(glm) {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(glc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qm = m.div(glm);
            for (gm, gc) in &g.terms[1..] {
                let key = qm.mul(gm);
                let delta = &qc * gc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(MPoly { nvars: self.nvars, terms: quot })
    }

    pub fn divides(&self, f: &MPoly) -> bool {
        f.exact_div(self).is_ok()
    }

    /// Largest `k` with `g^k | self`. `g` must be nonzero and not a constant
    /// `±1`.
    pub fn multiplicity(&self, g: &MPoly) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Precondition("multiplicity of zero is unbounded".into()));
        }
        if g.is_zero() || (g.is_constant() && g.terms[0].1.abs().is_one()) {
            return Err(Error::Precondition("multiplicity needs a nonzero non-unit divisor".into()));
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(q) = cur.exact_div(g) {
            k += 1;
            cur = q;
        }
        Ok(k)
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate_other { -c.clone() } else { c.clone() }));
        }
        MPoly { nvars: self.nvars.max(other.nvars), terms: out }
    }

    fn product(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return MPoly {
                nvars: self.nvars,
                terms: other.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
            };
        }
        if other.terms.len() == 1 {
            return other.product(self);
        }
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()) * 4);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let p = c1 * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += p,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.product(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl MPoly {
    /// Sign of the leading coefficient made positive.
    pub fn abs_leading(self) -> MPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::parse_expr;
    use crate::ring::RingSpec;

    fn r() -> RingSpec {
        RingSpec::cluster_only(["x", "y", "z", "a", "b"]).unwrap()
    }

    fn p(s: &str) -> super::MPoly {
        parse_expr(s, &r()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        assert_eq!(&p("b+1") + &p("-1"), p("b"));
        assert_eq!(&p("x") - &p("x"), p("0"));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p("x^2-1").exact_div(&p("x-1")).unwrap(), p("x+1"));
        assert!(p("x^2+1").exact_div(&p("x-1")).is_err());
        let f = p("(b+1)^2*(b+1+a)");
        assert_eq!(f.exact_div(&p("b+1")).unwrap(), p("(b+1)*(b+1+a)"));
        assert!(matches!(p("x").exact_div(&p("0")), Err(crate::error::Error::DivisionByZero)));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p("(x+y)^3*z").multiplicity(&p("x+y")).unwrap(), 3);
        assert_eq!(p("x^2+y").multiplicity(&p("x+y")).unwrap(), 0);
        assert!(p("x").multiplicity(&p("1")).is_err());
        assert!(p("0").multiplicity(&p("x")).is_err());
    }

    #[test]
    fn eval_zero_examples() {
        assert_eq!(p("b^2+b+a^3+a^2").eval_zero(4), p("a^3+a^2"));
        assert_eq!(p("y+1").eval_zero(1), p("1"));
        assert_eq!(p("x*y").eval_zero(1), p("0"));
    }

    #[test]
    fn coefficients_round_trip() {
        let f = p("x^2*y + 3*x*y^2 - y + 7*z");
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(super::MPoly::from_coefficients(f.nvars(), 1, &cs), f);
    }
}
