//! Seed mutation.

use crate::error::{Error, Result};
use crate::names::Namer;
use crate::poly::{remove_common_factors, LaurentPoly, MPoly, Monomial, RationalExpr};
use crate::ring::{RingSpec, SymbolKind};
use crate::seed::{var_key, Seed};

/// Size guards for intermediate and resulting expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    pub max_terms: usize,
    pub max_degree: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: 200_000, max_degree: 64 }
    }
}

impl Limits {
    pub fn check(&self, what: &str, p: &MPoly) -> Result<()> {
        if p.len() > self.max_terms {
            return Err(Error::Budget(format!("{what} has {} terms (cap {})", p.len(), self.max_terms)));
        }
        if p.total_degree() > self.max_degree {
            return Err(Error::Budget(format!(
                "{what} has total degree {} (cap {})",
                p.total_degree(),
                self.max_degree
            )));
        }
        Ok(())
    }
}

/// Intermediate data for one updated exchange polynomial, before the seed
/// is normalized. All values live in the current ring with slot `i` holding
/// the new variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub j: usize,
    /// `F̂_i` with `x_j = 0`.
    pub z: LaurentPoly,
    pub g: LaurentPoly,
    /// Product of the common factors removed from `G_j`.
    pub removed: MPoly,
    /// New exchange polynomial before unit normalization.
    pub f_new: MPoly,
    /// Laurent monomial `M` with `f_new = M * G_j / removed`.
    pub m: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationTrace {
    pub index: usize,
    pub records: Vec<TraceRecord>,
}

/// Drops the unit part (cluster and invertible monomials) of a Laurent
/// polynomial, keeping powers of polynomial coefficient generators.
fn strip_units(p: &LaurentPoly, ring: &RingSpec) -> MPoly {
    let mut keep = Monomial::one(ring.nvars());
    for idx in 0..ring.nvars() {
        if ring.kind(idx) == SymbolKind::Coeff {
            keep[idx] = p.shift()[idx];
        }
    }
    p.body().mul_monomial(&keep)
}

/// `μ_i(s)` with default limits.
pub fn mutate(s: &Seed, i: usize) -> Result<(Seed, MutationTrace)> {
    mutate_with(s, i, &Limits::default())
}

pub fn mutate_with(s: &Seed, i: usize, limits: &Limits) -> Result<(Seed, MutationTrace)> {
    s.check_index(i)?;
    let ring = s.ring();
    let n = s.rank();
    let xi = ring.cluster_var(i);
    let hat = s.hat(i);

    let x_new = s.hat_in_root(i)?.div(s.var(i))?;
    limits.check("new cluster variable numerator", x_new.num())?;
    limits.check("new cluster variable denominator", x_new.den())?;

    let mut polys = s.polys().to_vec();
    let mut records = Vec::new();
    let x_new_sym = LaurentPoly::var(ring.nvars(), xi, 1);
    for j in 0..n {
        if j == i {
            continue;
        }
        let fj = s.poly(j);
        let d = fj.degree(xi);
        if d == 0 {
            continue;
        }
        let xj = ring.cluster_var(j);
        if hat.exponents[j] != 0 {
            return Err(Error::Internal(format!(
                "F_{} depends on x_{} but the hat of x_{} involves x_{}",
                j + 1,
                i + 1,
                i + 1,
                j + 1
            )));
        }
        let z = hat.value.eval_zero(xj)?;
        if z.is_zero() {
            return Err(Error::Internal(format!("exchange Laurent polynomial {} vanishes at x_{} = 0", i + 1, j + 1)));
        }
        // G_j * x'^D, denominator-free in x'.
        let coeffs = fj.coefficients_in(xi);
        let mut zpow = LaurentPoly::one(ring.nvars());
        let mut parts = Vec::with_capacity(coeffs.len());
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let xp = x_new_sym.pow(d - k as u32);
                parts.push(LaurentPoly::from_mpoly(c).mul(&zpow).mul(&xp));
            }
            if k < d as usize {
                zpow = zpow.mul(&z);
            }
        }
        let g_scaled = parts.iter().fold(LaurentPoly::zero(ring.nvars()), |acc, p| acc.add(p));
        let z0 = strip_units(&z, ring);
        let (h, removed) = remove_common_factors(&strip_units(&g_scaled, ring), &z0);
        limits.check(&format!("exchange polynomial {}", j + 1), &h)?;
        let g_true = g_scaled.mul_monomial(&Monomial::var(ring.nvars(), xi, -(d as i32)));
        let m = LaurentPoly::from_mpoly(&h)
            .mul(&LaurentPoly::from_mpoly(&removed))
            .exact_div(&g_true)
            .map_err(|_| Error::Internal("normalizing factor is not a monomial".into()))?;
        if !m.is_monomial() {
            return Err(Error::Internal("normalizing factor is not a monomial".into()));
        }
        polys[j] = h.clone();
        records.push(TraceRecord { j, z, g: g_true, removed, f_new: h, m });
    }

    let mut vars = s.vars().to_vec();
    vars[i] = x_new;
    let new_name = default_name(s, &vars[i]);
    let mut names = s.names().to_vec();
    names[i] = new_name;
    let new_ring = ring.with_cluster_names(names)?;
    let out = Seed::from_parts(s.root().clone(), new_ring, vars, polys)?;
    Ok((out, MutationTrace { index: i, records }))
}

/// Root variables keep their root names; other new variables get fresh
/// names not used by the root ring or the current cluster.
fn default_name(s: &Seed, v: &RationalExpr) -> String {
    let mut namer = Namer::for_root(s.root());
    for (k, name) in s.var_keys().iter().zip(s.names()) {
        namer.register(k, name);
    }
    let (w, _) = crate::seed::canonical_var(v, s.root()).unwrap_or((v.clone(), crate::ring::Unit::one(s.root())));
    namer.name_for(&var_key(&w, s.root()))
}

/// Mutates along `path` from left to right.
pub fn mutate_path(s: &Seed, path: &[usize]) -> Result<Seed> {
    mutate_path_with(s, path, &Limits::default())
}

pub fn mutate_path_with(s: &Seed, path: &[usize], limits: &Limits) -> Result<Seed> {
    let mut cur = s.normalized()?;
    for &i in path {
        cur = mutate_with(&cur, i, limits)?.0;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_expr, IrredBudget};

    fn example22() -> Seed {
        let r = RingSpec::cluster_only(["a", "b", "c"]).unwrap();
        Seed::from_exprs(r, &["b+1", "(a+1)^2+c^2", "b^2+b+a^3+a^2"], IrredBudget::Heuristic).unwrap()
    }

    #[test]
    fn worked_example_mutation() {
        let s = example22();
        let (t, trace) = mutate(&s, 2).unwrap();
        assert_eq!(t.display().to_string(), "{(a, b+1), (b, a^2+d^2), (d, a^3+a^2+b^2+b)}");
        let d = t.var(2);
        assert_eq!(d.display(s.root()).to_string(), "(a^3+a^2+b^2+b)/(a*c)");
        let rec = trace.records.iter().find(|r| r.j == 1).unwrap();
        assert_eq!(rec.removed, parse_expr("(a+1)^2", s.ring()).unwrap());
        let back = LaurentPoly::from_mpoly(&rec.f_new)
            .mul(&LaurentPoly::from_mpoly(&rec.removed))
            .exact_div(&rec.m)
            .unwrap();
        assert_eq!(back, rec.g);
    }

    #[test]
    fn pentagon_first_mutation() {
        let r = RingSpec::new(["A", "B", "C", "D", "E"], Vec::<&str>::new(), ["x", "y"]).unwrap();
        let s = Seed::from_exprs(r, &["A*y+B*E", "C*x+D*E"], IrredBudget::Heuristic).unwrap();
        let (t, _) = mutate(&s, 0).unwrap();
        assert_eq!(t.display().to_string(), "{(z, A*y+B*E), (y, B*C+D*z)}");
    }

    #[test]
    fn involution_on_worked_example() {
        let s = example22();
        for i in 0..3 {
            let (t, _) = mutate(&s, i).unwrap();
            let (u, _) = mutate(&t, i).unwrap();
            assert!(s.equivalent(&u).unwrap().is_some(), "slot {i}");
            assert_eq!(u.names(), s.names());
        }
    }

    #[test]
    fn empty_path_is_normalization() {
        let s = example22();
        assert_eq!(mutate_path(&s, &[]).unwrap(), s);
    }

    #[test]
    fn budget_errors() {
        let s = example22();
        let tight = Limits { max_terms: 2, max_degree: 64 };
        assert!(matches!(mutate_with(&s, 2, &tight), Err(Error::Budget(_))));
    }
}
