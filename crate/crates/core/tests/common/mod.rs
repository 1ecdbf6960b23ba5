//! Generators and property checks shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use lpalg::fingerprint::similarity_fingerprint;
use lpalg::mutation::{mutate_with, Limits};
use lpalg::poly::{gcd, is_laurent_unit, IrredBudget, LaurentPoly, MPoly, Monomial, RationalExpr};
use lpalg::ring::{canonical, Integer, RingSpec};
use lpalg::seed::{canonical_var, Seed};
use lpalg::Error;
use proptest::prelude::*;

const COEFFS: usize = 3;

pub fn limits() -> Limits {
    Limits { max_terms: 20_000, max_degree: 40 }
}

fn ring(n: usize) -> RingSpec {
    RingSpec::new(["A", "B"], ["X"], ["x", "y", "z"].into_iter().take(n)).unwrap()
}

/// Each exchange polynomial is a sum of 2 or 3 monomials in the
/// coefficients and the other cluster variables.
fn raw_terms(n: usize) -> impl Strategy<Value = Vec<Vec<Vec<i32>>>> {
    let term = prop::collection::vec(0i32..3, COEFFS + n);
    prop::collection::vec(prop::collection::vec(term, 2..=3), n)
}

fn build(n: usize, raw: &[Vec<Vec<i32>>]) -> Option<Seed> {
    let r = ring(n);
    let polys = raw
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let terms = terms.iter().map(|e| {
                let mut e = e.clone();
                for c in e.iter_mut().take(COEFFS) {
                    *c = (*c).min(1);
                }
                e[COEFFS + i] = 0;
                (Monomial::from_vec(e), Integer::from(1))
            });
            MPoly::from_terms(r.nvars(), terms.collect::<Vec<_>>())
        })
        .collect();
    Seed::new(r, polys, IrredBudget::Strict).ok()
}

/// Valid seeds of rank `n` over `Z[A, B, X^{±1}]`.
pub fn seed_of_rank(n: usize) -> impl Strategy<Value = Seed> {
    raw_terms(n).prop_filter_map("invalid seed", move |raw| build(n, &raw))
}

pub fn seed() -> impl Strategy<Value = Seed> {
    prop_oneof![seed_of_rank(2), seed_of_rank(3)]
}

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, max_local_rejects: 1_000_000, failure_persistence: None, ..ProptestConfig::default() }
}

/// Mutation, treating an exhausted budget as an uninteresting case.
pub fn mu(s: &Seed, i: usize) -> Result<Option<Seed>, TestCaseError> {
    match mutate_with(s, i, &limits()) {
        Ok((t, _)) => Ok(Some(t)),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(TestCaseError::fail(format!("mutation at {i} of {} failed: {e}", s.display()))),
    }
}

/// The numerators of two Laurent elements share only Laurent units.
pub fn laurent_coprime(a: &RationalExpr, b: &RationalExpr, root: &RingSpec) -> bool {
    let g = gcd(a.num(), b.num(), root).unwrap();
    is_laurent_unit(&LaurentPoly::from_mpoly(&g), root)
}

pub fn check_involution(s: &Seed, i: usize) -> Result<(), TestCaseError> {
    let i = i % s.rank();
    let Some(t) = mu(s, i)? else { return Ok(()) };
    let Some(back) = mu(&t, i)? else { return Ok(()) };
    prop_assert!(back.equivalent(s).unwrap().is_some(), "{} -> {} -> {}", s.display(), t.display(), back.display());
    prop_assert_eq!(similarity_fingerprint(&back), similarity_fingerprint(s));
    Ok(())
}

pub fn check_hat_stability(s: &Seed, i: usize) -> Result<(), TestCaseError> {
    let i = i % s.rank();
    let Some(t) = mu(s, i)? else { return Ok(()) };
    let before = canonical_var(&s.hat_in_root(i).unwrap(), s.root()).unwrap().0;
    let after = canonical_var(&t.hat_in_root(i).unwrap(), t.root()).unwrap().0;
    prop_assert_eq!(before, after);
    Ok(())
}

pub fn check_dependence(s: &Seed, i: usize) -> Result<(), TestCaseError> {
    let i = i % s.rank();
    let Some(t) = mu(s, i)? else { return Ok(()) };
    let xi = s.ring().cluster_var(i);
    for j in (0..s.rank()).filter(|&j| j != i) {
        prop_assert_eq!(
            s.poly(j).depends_on(xi),
            t.poly(j).depends_on(xi),
            "F_{} in {} vs {}",
            j,
            s.display(),
            t.display()
        );
    }
    Ok(())
}

/// Mutates at `x`, then `y`, then `x` again, producing `z`, `u`, `v`.
pub fn check_caterpillar(s: &Seed, x: usize, dy: usize) -> Result<(), TestCaseError> {
    let n = s.rank();
    let (x, y) = (x % n, (x + dy) % n);
    if x == y {
        return Ok(());
    }
    let root = s.root().clone();
    let Some(t1) = mu(s, x)? else { return Ok(()) };
    let Some(t2) = mu(&t1, y)? else { return Ok(()) };
    let Some(t3) = mu(&t2, x)? else { return Ok(()) };
    let (z, u, v) = (t1.var(x), t2.var(y), t3.var(x));
    prop_assert!(z.is_laurent(&root));
    prop_assert!(u.is_laurent(&root), "u = {}", u.display(&root));
    prop_assert!(v.is_laurent(&root), "v = {}", v.display(&root));
    prop_assert!(laurent_coprime(z, u, &root), "z = {}, u = {}", z.display(&root), u.display(&root));
    prop_assert!(laurent_coprime(z, v, &root), "z = {}, v = {}", z.display(&root), v.display(&root));
    Ok(())
}

pub fn poly_ring() -> RingSpec {
    RingSpec::new(["A"], ["X"], ["x", "y", "z"]).unwrap()
}

/// Small polynomials over `A, X, x, y, z` with total degree at most 4.
pub fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0i32..3, 5), -4i64..5), 0..5).prop_map(|terms| {
        let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<i32>() <= 4);
        MPoly::from_terms(5, terms.map(|(e, c)| (Monomial::from_vec(e), Integer::from(c))).collect::<Vec<_>>())
    })
}

/// Exact division, gcd and multiplicity identities.
pub fn check_poly_oracles(f: &MPoly, g: &MPoly, h: &MPoly, k: u32) -> Result<(), TestCaseError> {
    let r = poly_ring();
    if !g.is_zero() {
        prop_assert_eq!(&(f * g).exact_div(g).unwrap(), f);
    }
    if !h.is_zero() && !(f.is_zero() && g.is_zero()) {
        let lhs = gcd(&(f * h), &(g * h), &r).unwrap();
        let rhs = canonical(&(h * &gcd(f, g, &r).unwrap()), &r);
        prop_assert_eq!(lhs, rhs);
    }
    if !f.is_zero() && !g.is_constant() && !g.is_monomial() {
        let base = f.multiplicity(g).unwrap();
        prop_assert_eq!((f * &g.pow(k)).multiplicity(g).unwrap(), base + k);
    }
    Ok(())
}
