use proptest::prelude::*;

use super::*;
use crate::ring::{canonical, Integer, RingSpec};

fn ring() -> RingSpec {
    RingSpec::new(["A"], ["X"], ["x", "y", "z"]).unwrap()
}

/// Small random polynomials over `A, X, x, y, z` with total degree <= 4.
fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0i32..3, 5), -4i64..5), 0..5).prop_map(|terms| {
        let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<i32>() <= 4);
        MPoly::from_terms(5, terms.map(|(e, c)| (Monomial::from_vec(e), Integer::from(c))).collect::<Vec<_>>())
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonconstant", |p| !p.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(), g in nonzero_poly()) {
        prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn gcd_is_multiplicative(f in nonzero_poly(), g in nonzero_poly(), h in nonzero_poly()) {
        let r = ring();
        let lhs = gcd(&(&f * &h), &(&g * &h), &r).unwrap();
        let rhs = canonical(&(&h * &gcd(&f, &g, &r).unwrap()), &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(f in nonzero_poly(), g in poly()) {
        let r = ring();
        let d = gcd(&f, &g, &r).unwrap();
        prop_assert!(d.divides(&f));
        prop_assert!(d.divides(&g));
    }

    #[test]
    fn multiplicity_counts_powers(f in nonzero_poly(), g in nonconstant_poly(), k in 0u32..4) {
        let base = f.multiplicity(&g).unwrap();
        prop_assert_eq!((&f * &g.pow(k)).multiplicity(&g).unwrap(), base + k);
    }

    #[test]
    fn substitution_matches_cleared_composition(f in poly(), p in poly(), q in nonzero_poly()) {
        // Symbol 2 is `x`; compare q^D * f(p/q) with the direct expansion.
        let x = 2;
        let d = f.degree(x);
        let val = RationalExpr::new(p.clone(), q.clone()).unwrap();
        let got = RationalExpr::from_mpoly(&f).substitute(x, &val).unwrap()
            .mul(&RationalExpr::from_mpoly(&q.pow(d)));
        let coeffs = f.coefficients_in(x);
        let mut direct = MPoly::zero(5);
        for (k, c) in coeffs.iter().enumerate() {
            direct = &direct + &(&(c * &p.pow(k as u32)) * &q.pow(d - k as u32));
        }
        prop_assert_eq!(got, RationalExpr::from_mpoly(&direct));
    }

    #[test]
    fn print_parse_round_trip(f in poly()) {
        let r = ring();
        prop_assert_eq!(parse_expr(&f.to_string_in(&r), &r).unwrap(), f);
    }

    #[test]
    fn laurent_and_rational_agree(f in poly(), g in poly(), e in prop::collection::vec(-2i32..3, 5)) {
        let m = Monomial::from_vec(e);
        let a = LaurentPoly::from_mpoly(&f).mul_monomial(&m);
        let b = LaurentPoly::from_mpoly(&g);
        let ra = RationalExpr::from_laurent(&a);
        let rb = RationalExpr::from_laurent(&b);
        prop_assert_eq!(RationalExpr::from_laurent(&a.add(&b)), ra.add(&rb));
        prop_assert_eq!(RationalExpr::from_laurent(&a.mul(&b)), ra.mul(&rb));
        if !b.is_zero() {
            let prod = a.mul(&b);
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn verified_reducible_witness(f in nonconstant_poly(), g in nonconstant_poly()) {
        let r = ring();
        let h = &f * &g;
        match irreducible(&h, &r, IrredBudget::Heuristic).unwrap() {
            Irreducibility::Irreducible => prop_assert!(false, "product reported irreducible: {}", h.to_string_in(&r)),
            Irreducibility::Reducible(w) => {
                prop_assert!(w.divides(&h));
                prop_assert!(!crate::ring::is_unit(&w, &r));
            }
            _ => {}
        }
    }
}

#[test]
fn parse_print_corpus() {
    let r = RingSpec::new(
        ["A", "B", "C", "D", "E", "F", "G", "P", "Q", "T", "U", "V", "W"],
        Vec::<&str>::new(),
        ["a", "b", "c", "d", "x", "y", "z", "u", "t", "y1", "y2", "y3", "y4", "y5", "y6", "X1", "X2", "X3", "X4"],
    )
    .unwrap();
    let corpus = [
        "b+1",
        "(a+1)^2+c^2",
        "b^2+b+a^3+a^2",
        "a^2+d^2",
        "A*y+B*E",
        "C*x+D*E",
        "D*z+B*C",
        "A*y^2+B*G*y+C*F*G^2",
        "A+B*y+C*y^2",
        "Q+P*x",
        "y4^2+y3*y5+y2*y6",
        "y3*y4^2+y3^2*y5+y1*y5^2+y1*y4*y6",
        "y2*y4^2*y5+y1*y4*y5^2+y1*y4^2*y6+y2^2*y5*y6+y1*y2*y6^2",
        "y2*y3^2*y5+y1*y2*y5^2+y2^2*y3*y6+y1*y3^2*y6+y1^2*y5*y6",
        "y3^2*y4+y1*y3*y6+y2*y4^2+y2^2*y6",
        "y3^2+y2*y4+y1*y5",
        "y2+y3+1",
        "y1^2+y1*y3+y3^2",
        "A+X2+X3+X4",
        "a*c*T+c*U*y+P*U*z+a*V*z",
        "P*U+a*V+b*W",
    ];
    for s in corpus {
        let f = parse_expr(s, &r).unwrap();
        let printed = f.to_string_in(&r);
        assert_eq!(parse_expr(&printed, &r).unwrap(), f, "{s}");
    }
}
