//! Bounded irreducibility checking.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::{content_wrt, gcd_raw};
use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ring::{is_unit, unit_normalize, Integer, RingSpec};

/// Effort spent on irreducibility checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrredBudget {
    /// Skip the check.
    Off,
    #[default]
    Heuristic,
    /// Like `Heuristic`, but an undecided answer is an error.
    Strict,
}

impl std::str::FromStr for IrredBudget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(IrredBudget::Off),
            "heuristic" => Ok(IrredBudget::Heuristic),
            "strict" => Ok(IrredBudget::Strict),
            _ => Err(Error::Precondition(format!("unknown irreducibility budget `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Carries a proper factor that was verified by exact division.
    Reducible(MPoly),
    Unknown,
    Unit,
}

const LINEAR_CANDIDATE_CAP: usize = 4096;
const SPECIALIZATION_TRIES: usize = 6;
const PRIMES: [u64; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

/// Decides irreducibility of `f` in `P = S[x]` within the given budget.
pub fn irreducible(f: &MPoly, ring: &RingSpec, budget: IrredBudget) -> Result<Irreducibility> {
    if f.is_zero() {
        return Err(Error::Precondition("irreducibility of zero".into()));
    }
    if budget == IrredBudget::Off {
        return Ok(Irreducibility::Unknown);
    }
    let verdict = check(f, ring);
    if budget == IrredBudget::Strict && verdict == Irreducibility::Unknown {
        return Err(Error::Budget(format!(
            "could not decide irreducibility of {}",
            f.display(ring)
        )));
    }
    Ok(verdict)
}

fn check(f: &MPoly, ring: &RingSpec) -> Irreducibility {
    if is_unit(f, ring) {
        return Irreducibility::Unit;
    }
    // Units of S are `±` inverted monomials, so strip them first.
    let f = unit_normalize(f, ring).expect("nonzero").0;
    let n = f.nvars();
    if let Some(c) = f.constant_value() {
        return match smallest_prime_factor(&c) {
            Some(p) if p == c.abs() => Irreducibility::Irreducible,
            Some(p) => Irreducibility::Reducible(MPoly::constant(p, n)),
            None => Irreducibility::Unknown,
        };
    }
    let content = f.content();
    if !content.is_one() {
        return Irreducibility::Reducible(MPoly::constant(content, n));
    }
    if f.is_monomial() {
        let m = &f.terms()[0].0;
        return if m.degree() == 1 {
            Irreducibility::Irreducible
        } else {
            let v = m.iter().position(|&e| e > 0).unwrap();
            Irreducibility::Reducible(MPoly::var(n, v))
        };
    }
    let mc = f.monomial_content();
    if !mc.is_one() {
        let v = mc.iter().position(|&e| e > 0).unwrap();
        return Irreducibility::Reducible(MPoly::var(n, v));
    }
    let support = f.support();
    for &v in &support {
        let c = content_wrt(&f, v);
        if !c.is_constant() {
            return Irreducibility::Reducible(c);
        }
    }
    for &v in &support {
        let g = gcd_raw(&f, &f.derivative(v));
        if !g.is_constant() {
            return Irreducibility::Reducible(g);
        }
    }
    for &v in &support {
        if f.degree(v) >= 2 {
            if let Some(w) = linear_factor(&f, v) {
                return Irreducibility::Reducible(w);
            }
        }
    }
    // Primitive and linear in some variable.
    if support.iter().any(|&v| f.degree(v) == 1) {
        return Irreducibility::Irreducible;
    }
    for &v in &support {
        if specialization_proves_irreducible(&f, v) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unknown
}

/// Smallest prime factor of a nonzero integer by trial division, or `None`
/// for units and when the search is too long.
fn smallest_prime_factor(c: &Integer) -> Option<Integer> {
    let a = c.abs();
    if a <= Integer::one() {
        return None;
    }
    let mut d = Integer::from(2);
    let limit = Integer::from(1_000_000u32);
    while &d * &d <= a {
        if d > limit {
            return None;
        }
        if (&a % &d).is_zero() {
            return Some(d);
        }
        d += 1;
    }
    Some(a)
}

/// Splits `p = c * m` with integer `c` and monomial `m` when `p` has one term.
fn single_term(p: &MPoly) -> Option<(Integer, Monomial)> {
    match p.terms() {
        [(m, c)] => Some((c.clone(), m.clone())),
        _ => None,
    }
}

fn integer_divisors(c: &Integer, cap: usize) -> Option<Vec<Integer>> {
    let a = c.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= a {
        if a % d == 0 {
            out.push(Integer::from(d));
            if d * d != a {
                out.push(Integer::from(a / d));
            }
        }
        d += 1;
        if out.len() > cap || d > 1_000_000 {
            return None;
        }
    }
    Some(out)
}

fn monomial_divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(m.len())];
    for (i, &e) in m.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for base in &out {
            for k in 0..=e {
                let mut b = base.clone();
                b[i] = k;
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// Searches for a factor `a*v + b` where `a` divides the leading and `b` the
/// trailing coefficient in `v`, both of the form integer times monomial.
fn linear_factor(f: &MPoly, v: usize) -> Option<MPoly> {
    let coeffs = f.coefficients_in(v);
    let (lc_c, lc_m) = single_term(coeffs.last()?)?;
    let (tc_c, tc_m) = single_term(coeffs.first()?)?;
    let n = f.nvars();
    let a_ints = integer_divisors(&lc_c, 64)?;
    let b_ints = integer_divisors(&tc_c, 64)?;
    let a_mons = monomial_divisors(&lc_m);
    let b_mons = monomial_divisors(&tc_m);
    let total = a_ints.len() * a_mons.len() * b_ints.len() * b_mons.len() * 2;
    if total > LINEAR_CANDIDATE_CAP {
        return None;
    }
    let xv = Monomial::var(n, v, 1);
    for ai in &a_ints {
        for am in &a_mons {
            for bi in &b_ints {
                for bm in &b_mons {
                    for sign in [1, -1] {
                        let b = Integer::from(sign) * bi;
                        let cand = MPoly::from_terms(n, [(am.mul(&xv), ai.clone()), (bm.clone(), b)]);
                        if cand.divides(f) {
                            return Some(cand);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Specializes every variable except `v` to small integers, keeping the
/// degree in `v`, and tries to show the image is irreducible over `Q`
/// from factorization degree patterns modulo small primes.
fn specialization_proves_irreducible(f: &MPoly, v: usize) -> bool {
    let deg = f.degree(v) as usize;
    let others: Vec<usize> = f.support().into_iter().filter(|&u| u != v).collect();
    let choices: [i64; 8] = [1, 2, -1, 3, -2, 5, -3, 7];
    for t in 0..SPECIALIZATION_TRIES {
        let values: Vec<(usize, Integer)> = others
            .iter()
            .enumerate()
            .map(|(k, &u)| (u, Integer::from(choices[(k * 3 + t * 5 + k * t) % choices.len()])))
            .collect();
        let g = f.specialize(&values);
        if g.degree(v) as usize != deg {
            continue;
        }
        let mut coeffs = vec![Integer::zero(); deg + 1];
        for (m, c) in g.terms() {
            coeffs[m[v] as usize] = c.clone();
        }
        if coeffs[0].is_zero() {
            continue;
        }
        let content = coeffs.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
        for c in coeffs.iter_mut() {
            *c /= &content;
        }
        if univariate_irreducible(&coeffs) {
            return true;
        }
    }
    false
}

/// Proves irreducibility over `Q` of a primitive integer polynomial given by
/// ascending coefficients: intersects the sets of possible factor degrees
/// coming from distinct-degree factorizations mod several primes.
fn univariate_irreducible(coeffs: &[Integer]) -> bool {
    let deg = coeffs.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    // possible[d] stays true while some factor of degree d is consistent.
    let mut possible = vec![true; deg + 1];
    let mut used = 0;
    for &p in &PRIMES {
        let fp: Vec<u64> = coeffs.iter().map(|c| c.mod_floor(&Integer::from(p)).to_u64().unwrap()).collect();
        if fp[deg] == 0 {
            continue;
        }
        let fp = monic(&fp, p);
        if degree(&gcd_mod(&fp, &derivative_mod(&fp, p), p)) != Some(0) {
            continue;
        }
        let degrees = ddf(&fp, p);
        let mut sums = vec![false; deg + 1];
        sums[0] = true;
        for d in degrees {
            for s in (d..=deg).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for d in 1..deg {
            possible[d] &= sums[d];
        }
        used += 1;
        if (1..deg).all(|d| !possible[d]) {
            return true;
        }
        if used >= 10 {
            break;
        }
    }
    false
}

fn trim_mod(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim_mod(&mut a);
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&c| c * inv % p).collect()
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim_mod(&mut r);
    let db = degree(b).expect("nonzero divisor");
    let inv = inv_mod(b[db], p);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = r[dr] * inv % p;
        let shift = dr - db;
        for (k, &bk) in b[..=db].iter().enumerate() {
            r[k + shift] = (r[k + shift] + p - q * bk % p) % p;
        }
        trim_mod(&mut r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_mod(&mut out);
    out
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, p)
    }
}

fn derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect();
    trim_mod(&mut out);
    out
}

fn div_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim_mod(&mut r);
    let db = degree(b).unwrap();
    let inv = inv_mod(b[db], p);
    let Some(da) = degree(&r) else { return Vec::new() };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![0u64; da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] * inv % p;
        q[dr - db] = c;
        for (k, &bk) in b[..=db].iter().enumerate() {
            r[k + dr - db] = (r[k + dr - db] + p - c * bk % p) % p;
        }
        trim_mod(&mut r);
    }
    q
}

fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem_mod(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem_mod(&mul_mod(&result, &b, p), f, p);
        }
        b = rem_mod(&mul_mod(&b, &b, p), f, p);
        e >>= 1;
    }
    result
}

/// Degrees of the irreducible factors of a monic squarefree `f` mod `p`.
fn ddf(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    while let Some(df) = degree(&f) {
        if df < 2 * d {
            if df > 0 {
                out.push(df);
            }
            break;
        }
        h = pow_mod(&h, p, &f, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        trim_mod(&mut hx);
        let g = gcd_mod(&hx, &f, p);
        if let Some(dg) = degree(&g) {
            if dg > 0 {
                for _ in 0..dg / d {
                    out.push(d);
                }
                f = div_mod(&f, &g, p);
                h = rem_mod(&h, &f, p);
            }
        }
        d += 1;
    }
    out
}
