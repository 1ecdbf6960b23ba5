//! Multivariate gcd by recursive content reduction and subresultant
//! remainder sequences.

use num_traits::One;

use super::MPoly;
use crate::error::{Error, Result};
use crate::ring::{int_gcd, unit_normalize, RingSpec};

/// Unit-normalized gcd of `f` and `g`.
pub fn gcd(f: &MPoly, g: &MPoly, ring: &RingSpec) -> Result<MPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::Zero("gcd of two zero polynomials"));
    }
    let h = gcd_raw(f, g);
    Ok(unit_normalize(&h, ring)?.0)
}

/// Gcd in `Z[all symbols]` with positive leading coefficient.
pub(crate) fn gcd_raw(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.clone().abs_leading();
    }
    if g.is_zero() {
        return f.clone().abs_leading();
    }
    let (mf, mg) = (f.monomial_content(), g.monomial_content());
    let mc = mf.meet(&mg);
    let (cf, cg) = (f.content(), g.content());
    let ic = int_gcd(&cf, &cg);
    let f1 = f.div_monomial(&mf).div_integer(&cf);
    let g1 = g.div_monomial(&mg).div_integer(&cg);
    let h = gcd_prim(&f1, &g1);
    h.mul_monomial(&mc).scale(&ic).abs_leading()
}

/// Both inputs nonzero with no monomial content and unit integer content.
fn gcd_prim(f: &MPoly, g: &MPoly) -> MPoly {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return MPoly::one(n);
    }
    if f == g || *f == -g {
        return f.clone().abs_leading();
    }
    if f.len() >= g.len() && g.divides(f) {
        return g.clone().abs_leading();
    }
    if g.len() > f.len() && f.divides(g) {
        return f.clone().abs_leading();
    }
    let sf = f.support();
    let sg = g.support();
    // A variable present on one side only: the gcd lies in its content.
    if let Some(&v) = sf.iter().find(|v| !sg.contains(v)) {
        return gcd_raw(&content_wrt(f, v), g);
    }
    if let Some(&v) = sg.iter().find(|v| !sf.contains(v)) {
        return gcd_raw(f, &content_wrt(g, v));
    }
    let v = *sf.iter().min_by_key(|&&v| (f.degree(v).max(g.degree(v)), v)).expect("nonconstant");
    let cf = content_wrt(f, v);
    let cg = content_wrt(g, v);
    let c = gcd_raw(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let (a, b) = if pf.degree(v) >= pg.degree(v) { (pf, pg) } else { (pg, pf) };
    let res = subresultant(a.coefficients_in(v), b.coefficients_in(v));
    match res {
        None => c,
        Some(coeffs) => {
            let r = MPoly::from_coefficients(n, v, &coeffs);
            let p = r.exact_div(&content_wrt(&r, v)).expect("content divides");
            (&p * &c).abs_leading()
        }
    }
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub(crate) fn content_wrt(f: &MPoly, v: usize) -> MPoly {
    let mut coeffs: Vec<MPoly> = f.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut acc = MPoly::zero(f.nvars());
    for c in &coeffs {
        acc = gcd_raw(&acc, c);
        if acc.is_constant() && acc.leading_coeff().is_some_and(|c| c.is_one()) {
            break;
        }
    }
    acc
}

type Upoly = Vec<MPoly>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &Upoly) -> usize {
    p.len() - 1
}

fn lc(p: &Upoly) -> &MPoly {
    p.last().expect("nonzero")
}

fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = a.clone();
    let db = deg(b);
    let lb = lc(b).clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] = &r[k + shift] - &t;
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero subresultant of nonconstant `a`, `b` with `deg a >= deg b`,
/// or `None` if the sequence reaches a nonzero constant.
fn subresultant(mut a: Upoly, mut b: Upoly) -> Option<Upoly> {
    let n = a[0].nvars();
    trim(&mut a);
    trim(&mut b);
    let mut g = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let d = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return Some(b);
        }
        if deg(&r) == 0 {
            return None;
        }
        let div = &g * &h.pow(d as u32);
        a = b;
        b = r.into_iter().map(|c| c.exact_div(&div).expect("subresultant division is exact")).collect();
        g = lc(&a).clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d as u32).exact_div(&h.pow(d as u32 - 1)).expect("subresultant division is exact"),
        };
    }
}

/// Repeatedly divides `h` by its gcd with `z` until they are coprime.
/// Returns the reduced polynomial and the product of removed factors.
pub(crate) fn remove_common_factors(h: &MPoly, z: &MPoly) -> (MPoly, MPoly) {
    let mut cur = h.clone();
    let mut removed = MPoly::one(h.nvars());
    loop {
        let g = gcd_raw(&cur, z);
        if g.is_one() {
            return (cur, removed);
        }
        cur = cur.exact_div(&g).expect("gcd divides");
        removed = &removed * &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    fn r() -> RingSpec {
        RingSpec::cluster_only(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_expr(s, &r()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("x^2-y^2"), &p("x^2+2*x*y+y^2"), &r()).unwrap(), p("x+y"));
        assert_eq!(gcd(&p("-3*x-3"), &p("0"), &r()).unwrap(), p("3*x+3"));
        assert_eq!(gcd(&p("2*x"), &p("4*y"), &r()).unwrap(), p("2"));
        assert!(gcd(&p("0"), &p("0"), &r()).is_err());
    }

    #[test]
    fn gcd_with_multivariate_cofactors() {
        let h = p("x*y + z^2 + 1");
        let f = &h * &p("x^3 - y*z + 2");
        let g = &h * &p("x*z + y^2 - 5");
        assert_eq!(gcd(&f, &g, &r()).unwrap(), h);
        let f2 = &f * &p("x+y");
        let g2 = &g * &p("(x+y)^2");
        assert_eq!(gcd(&f2, &g2, &r()).unwrap(), &h * &p("x+y"));
    }

    #[test]
    fn common_factor_removal_reaches_coprime() {
        let z = p("x*(x+1)");
        let (h, removed) = remove_common_factors(&p("(x+1)^3*x^2*(y+2)"), &z);
        assert_eq!(h, p("y+2"));
        assert_eq!(&h * &removed, p("(x+1)^3*x^2*(y+2)"));
    }
}
