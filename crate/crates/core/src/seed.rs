//! Seeds, exchange Laurent polynomials, normalization and equivalence.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{irreducible, IrredBudget, Irreducibility, LaurentPoly, MPoly, Monomial, RationalExpr};
use crate::ring::{is_unit, unit_normalize, Integer, RingSpec, Unit};

/// Exchange Laurent polynomial `F̂_i = F_i * prod_{j != i} x_j^{a_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeLaurent {
    pub base: usize,
    /// `a_j` for every slot, all `<= 0`, with `a_base = 0`.
    pub exponents: Vec<i32>,
    pub value: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Zero,
    Unit,
    /// Exchange polynomial involves its own variable.
    SelfDependence,
    /// Divisible by the cluster variable at this slot.
    DivisibleByVariable(usize),
    Reducible(MPoly),
    /// Irreducibility could not be decided under the strict budget.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Zero-based slot.
    pub index: usize,
    pub kind: ViolationKind,
}

impl Violation {
    pub fn describe(&self, ring: &RingSpec) -> String {
        let name = &ring.cluster_syms()[self.index];
        let at = self.index + 1;
        match &self.kind {
            ViolationKind::Zero => format!("LP1 at index {at} ({name}): exchange polynomial is zero"),
            ViolationKind::Unit => format!("LP1 at index {at} ({name}): exchange polynomial is a unit"),
            ViolationKind::SelfDependence => {
                format!("LP2 at index {at} ({name}): exchange polynomial involves {name}")
            }
            ViolationKind::DivisibleByVariable(k) => format!(
                "LP1 at index {at} ({name}): exchange polynomial is divisible by {}",
                ring.cluster_syms()[*k]
            ),
            ViolationKind::Reducible(w) => {
                format!("LP1 at index {at} ({name}): exchange polynomial has the factor {}", w.display(ring))
            }
            ViolationKind::Undecided => {
                format!("LP1 at index {at} ({name}): irreducibility undecided within budget")
            }
        }
    }
}

/// Checks (LP1) and (LP2) for exchange polynomials over `ring`.
pub fn validate_polys(ring: &RingSpec, polys: &[MPoly], budget: IrredBudget) -> Vec<Violation> {
    let mut out = Vec::new();
    if polys.len() != ring.rank() {
        return vec![Violation { index: 0, kind: ViolationKind::Zero }];
    }
    for (i, f) in polys.iter().enumerate() {
        let push = |out: &mut Vec<Violation>, kind| out.push(Violation { index: i, kind });
        if f.is_zero() {
            push(&mut out, ViolationKind::Zero);
            continue;
        }
        if f.depends_on(ring.cluster_var(i)) {
            push(&mut out, ViolationKind::SelfDependence);
        }
        if is_unit(f, ring) {
            push(&mut out, ViolationKind::Unit);
            continue;
        }
        let content = f.monomial_content();
        let mut divisible = false;
        for k in 0..ring.rank() {
            if content[ring.cluster_var(k)] > 0 {
                push(&mut out, ViolationKind::DivisibleByVariable(k));
                divisible = true;
            }
        }
        if divisible {
            continue;
        }
        match irreducible(f, ring, budget) {
            Ok(Irreducibility::Reducible(w)) => push(&mut out, ViolationKind::Reducible(w)),
            Ok(Irreducibility::Unit) => push(&mut out, ViolationKind::Unit),
            Err(_) => push(&mut out, ViolationKind::Undecided),
            Ok(_) => {}
        }
    }
    out
}

/// Computes `F̂_i` from the exchange polynomials of a seed.
pub fn compute_hat(ring: &RingSpec, polys: &[MPoly], i: usize) -> Result<ExchangeLaurent> {
    let n = ring.rank();
    if i >= n {
        return Err(Error::BadIndex { index: i, rank: n });
    }
    let fi = &polys[i];
    let mut exponents = vec![0i32; n];
    for j in 0..n {
        if j == i {
            continue;
        }
        let fj = &polys[j];
        let coeffs = fi.coefficients_in(ring.cluster_var(j));
        let mut best: Option<u32> = None;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = k as u32 + c.multiplicity(fj)?;
            best = Some(best.map_or(m, |b| b.min(m)));
            if best == Some(0) {
                break;
            }
        }
        exponents[j] = -(best.unwrap_or(0) as i32);
    }
    let mut mono = Monomial::one(ring.nvars());
    for (j, &a) in exponents.iter().enumerate() {
        mono[ring.cluster_var(j)] = a;
    }
    Ok(ExchangeLaurent { base: i, exponents, value: LaurentPoly::from_mpoly(fi).mul_monomial(&mono) })
}

/// Splits a variable as `v = u * w` with `w` the canonical representative of
/// its class up to units of `S`.
pub fn canonical_var(v: &RationalExpr, ring: &RingSpec) -> Result<(RationalExpr, Unit)> {
    let (num, un) = unit_normalize(v.num(), ring)?;
    let (den, ud) = unit_normalize(v.den(), ring)?;
    if un.is_one() && ud.is_one() {
        return Ok((v.clone(), un));
    }
    Ok((RationalExpr::new(num, den)?, un.mul(&ud.inverse())))
}

/// Canonical string of a variable class, used for keys and naming.
pub fn var_key(v: &RationalExpr, root: &RingSpec) -> String {
    format!("{}", v.display(root))
}

#[derive(Clone, Debug)]
pub struct Seed {
    root: Arc<RingSpec>,
    ring: RingSpec,
    vars: Vec<RationalExpr>,
    polys: Vec<MPoly>,
    hats: Vec<ExchangeLaurent>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.ring == other.ring && self.vars == other.vars && self.polys == other.polys
    }
}

impl Seed {
    /// Initial seed whose variables are the cluster symbols of `ring`.
    pub fn new(ring: RingSpec, polys: Vec<MPoly>, budget: IrredBudget) -> Result<Seed> {
        let violations = validate_polys(&ring, &polys, budget);
        if !violations.is_empty() {
            let msg: Vec<String> = violations.iter().map(|v| v.describe(&ring)).collect();
            return Err(Error::InvalidSeed(msg.join("; ")));
        }
        let vars = ring.cluster_range().map(|idx| RationalExpr::var(ring.nvars(), idx)).collect();
        Self::from_parts(Arc::new(ring.clone()), ring, vars, polys)
    }

    /// Parses one expression per slot.
    pub fn from_exprs(ring: RingSpec, exprs: &[&str], budget: IrredBudget) -> Result<Seed> {
        let polys = exprs.iter().map(|e| crate::poly::parse_expr(e, &ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys, budget)
    }

    /// Builds a normalized seed from variables in root coordinates and
    /// exchange polynomials in the current cluster symbols. No validation.
    pub fn from_parts(root: Arc<RingSpec>, ring: RingSpec, vars: Vec<RationalExpr>, polys: Vec<MPoly>) -> Result<Seed> {
        if !root.same_layout(&ring) || vars.len() != ring.rank() || polys.len() != ring.rank() {
            return Err(Error::InvalidSeed("ring, variable and polynomial counts disagree".into()));
        }
        let mut vars = vars;
        let mut polys = polys;
        for i in 0..vars.len() {
            let (w, u) = canonical_var(&vars[i], &root)?;
            vars[i] = w;
            if !u.is_one() {
                // The true variable is u * w, so substitute slot <- u * slot.
                let idx = ring.cluster_var(i);
                let mono = u.monomial(&ring);
                for p in polys.iter_mut() {
                    if p.depends_on(idx) {
                        *p = p.rescale_var(idx, u.negative, &mono).0;
                    }
                }
            }
        }
        for p in polys.iter_mut() {
            if p.is_zero() {
                return Err(Error::InvalidSeed("zero exchange polynomial".into()));
            }
            *p = unit_normalize(p, &ring)?.0;
        }
        let hats = (0..polys.len()).map(|i| compute_hat(&ring, &polys, i)).collect::<Result<Vec<_>>>()?;
        Ok(Seed { root, ring, vars, polys, hats })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn root(&self) -> &Arc<RingSpec> {
        &self.root
    }

    pub fn names(&self) -> &[String] {
        self.ring.cluster_syms()
    }

    pub fn vars(&self) -> &[RationalExpr] {
        &self.vars
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn hats(&self) -> &[ExchangeLaurent] {
        &self.hats
    }

    pub fn var(&self, i: usize) -> &RationalExpr {
        &self.vars[i]
    }

    pub fn poly(&self, i: usize) -> &MPoly {
        &self.polys[i]
    }

    pub fn hat(&self, i: usize) -> &ExchangeLaurent {
        &self.hats[i]
    }

    /// Slot of a cluster name, or a 1-based slot number.
    pub fn slot(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.names().iter().position(|s| s == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(k) if (1..=self.rank()).contains(&k) => Ok(k - 1),
            Ok(k) => Err(Error::BadIndex { index: k, rank: self.rank() }),
            Err(_) => Err(Error::UnknownSymbol(name.to_string())),
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::BadIndex { index: i, rank: self.rank() })
        }
    }

    pub fn validate(&self, budget: IrredBudget) -> Vec<Violation> {
        validate_polys(&self.ring, &self.polys, budget)
    }

    /// Re-runs normalization; seeds are stored normalized, so this is the
    /// identity on values built through the public constructors.
    pub fn normalized(&self) -> Result<Seed> {
        Self::from_parts(self.root.clone(), self.ring.clone(), self.vars.clone(), self.polys.clone())
    }

    /// Same seed with different names for the current cluster symbols.
    pub fn with_names(&self, names: Vec<String>) -> Result<Seed> {
        let ring = self.ring.with_cluster_names(names)?;
        Ok(Seed { ring, ..self.clone() })
    }

    /// Reorders slots: new slot `s` holds old slot `order[s]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Seed> {
        let n = self.rank();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Precondition("not a permutation of the slots".into()));
        }
        let names = order.iter().map(|&o| self.names()[o].clone()).collect();
        let ring = self.ring.with_cluster_names(names)?;
        let mut map: Vec<usize> = (0..self.ring.nvars()).collect();
        for (s, &o) in order.iter().enumerate() {
            map[self.ring.cluster_var(o)] = self.ring.cluster_var(s);
        }
        let nv = self.ring.nvars();
        let polys = order.iter().map(|&o| self.polys[o].permute_vars(&map, nv)).collect();
        let vars = order.iter().map(|&o| self.vars[o].clone()).collect();
        Self::from_parts(self.root.clone(), ring, vars, polys)
    }

    /// Canonical keys of the variables, in slot order.
    pub fn var_keys(&self) -> Vec<String> {
        self.vars.iter().map(|v| var_key(v, &self.root)).collect()
    }

    /// Slot order sorted by variable key.
    fn sorted_slots(&self, keys: &[String]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        order
    }

    /// Canonical serialization: equal keys iff equivalent seeds (for seeds
    /// over the same root).
    pub fn key(&self) -> String {
        let keys = self.var_keys();
        let order = self.sorted_slots(&keys);
        // position[slot] = rank of the slot in sorted order
        let mut map: Vec<usize> = (0..self.ring.nvars()).collect();
        for (pos, &slot) in order.iter().enumerate() {
            map[self.ring.cluster_var(slot)] = self.ring.cluster_var(pos);
        }
        let mut out = String::new();
        for &slot in &order {
            let p = self.polys[slot].permute_vars(&map, self.ring.nvars());
            out.push_str(&keys[slot]);
            out.push_str(" : ");
            for (m, c) in p.terms() {
                out.push_str(&c.to_string());
                out.push('[');
                for e in m.iter() {
                    out.push_str(&e.to_string());
                    out.push(',');
                }
                out.push(']');
            }
            out.push_str(" ;\n");
        }
        out
    }

    /// Slot pairing `pairing[i] = j` with `self.var(i) ∝ other.var(j)` and
    /// matching exchange polynomials, if the seeds are equivalent.
    pub fn equivalent(&self, other: &Seed) -> Result<Option<Vec<usize>>> {
        if !self.root.same_layout(&other.root) || self.root.cluster_syms() != other.root.cluster_syms() {
            return Err(Error::Precondition("seeds live in different ambient fields".into()));
        }
        if self.key() != other.key() {
            return Ok(None);
        }
        let ka = self.var_keys();
        let kb = other.var_keys();
        Ok(Some(ka.iter().map(|k| kb.iter().position(|x| x == k).expect("same key")).collect()))
    }

    /// Makes the current cluster the root coordinates.
    pub fn reroot(&self) -> Result<Seed> {
        let ring = self.ring.clone();
        let vars = ring.cluster_range().map(|idx| RationalExpr::var(ring.nvars(), idx)).collect();
        Self::from_parts(Arc::new(ring.clone()), ring, vars, self.polys.clone())
    }

    /// Moves slot `i` into the coefficient ring as an invertible generator.
    pub fn freeze(&self, i: usize) -> Result<Seed> {
        self.check_index(i)?;
        if self.rank() < 2 {
            return Err(Error::Precondition("cannot freeze the only cluster variable".into()));
        }
        let base = self.reroot()?;
        let ring = &base.ring;
        let c = ring.coeff_gens().len();
        let k = ring.inv_gens().len();
        let n = ring.rank();
        let mut inv = ring.inv_gens().to_vec();
        inv.push(ring.cluster_syms()[i].clone());
        let cluster: Vec<String> =
            ring.cluster_syms().iter().enumerate().filter(|&(s, _)| s != i).map(|(_, s)| s.clone()).collect();
        let new_ring = RingSpec::new(ring.coeff_gens().to_vec(), inv, cluster)?;
        let mut map: Vec<usize> = (0..ring.nvars()).collect();
        map[ring.cluster_var(i)] = c + k;
        for s in 0..n {
            if s != i {
                map[ring.cluster_var(s)] = c + k + 1 + if s < i { s } else { s - 1 };
            }
        }
        let mut polys = Vec::with_capacity(n - 1);
        for j in (0..n).filter(|&j| j != i) {
            // F_j / x_i^{a_i} with a_i the exponent of x_i in F̂_j.
            let a = base.hats[j].exponents[i];
            let mono = Monomial::var(ring.nvars(), ring.cluster_var(i), -a);
            let f = base.polys[j].mul_monomial(&mono);
            polys.push(f.permute_vars(&map, new_ring.nvars()));
        }
        let vars = new_ring.cluster_range().map(|idx| RationalExpr::var(new_ring.nvars(), idx)).collect();
        Self::from_parts(Arc::new(new_ring.clone()), new_ring, vars, polys)
    }

    /// `F̂_i` as an element of the ambient field, in root coordinates.
    pub fn hat_in_root(&self, i: usize) -> Result<RationalExpr> {
        let h = &self.hats[i].value;
        let (pos, neg) = h.shift().split_signs();
        let num = self.to_root(&h.body().mul_monomial(&pos))?;
        let den = self.to_root(&MPoly::monomial(neg, Integer::one()))?;
        num.div(&den)
    }

    /// Evaluates a polynomial in the current symbols in root coordinates.
    pub fn to_root(&self, p: &MPoly) -> Result<RationalExpr> {
        crate::poly::compose_poly(p, &self.substitution())
    }

    pub(crate) fn substitution(&self) -> Vec<Option<RationalExpr>> {
        let mut vals = vec![None; self.ring.nvars()];
        for (i, v) in self.vars.iter().enumerate() {
            vals[self.ring.cluster_var(i)] = Some(v.clone());
        }
        vals
    }

    /// Denominator vector of the variable in slot `i` over the root cluster.
    pub fn denominator_vector(&self, i: usize) -> Result<Vec<i32>> {
        denominator_vector(&self.vars[i], &self.root)
    }

    /// Pretty form `{(x, F_x), ...}` in the current names.
    pub fn display(&self) -> impl fmt::Display + '_ {
        SeedDisplay(self)
    }
}

/// Denominator vector of `v` over the cluster symbols of `root`.
pub fn denominator_vector(v: &RationalExpr, root: &RingSpec) -> Result<Vec<i32>> {
    if !v.is_laurent(root) {
        return Err(Error::NotLaurent(v.den().display(root).to_string()));
    }
    let l = v.to_laurent().expect("Laurent");
    Ok(root.cluster_range().map(|idx| -l.min_exponent(idx)).collect())
}

struct SeedDisplay<'a>(&'a Seed);

impl fmt::Display for SeedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        f.write_str("{")?;
        for i in 0..s.rank() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", s.names()[i], s.polys[i].display(&s.ring))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    fn example22() -> Seed {
        let r = RingSpec::cluster_only(["a", "b", "c"]).unwrap();
        Seed::from_exprs(r, &["b+1", "(a+1)^2+c^2", "b^2+b+a^3+a^2"], IrredBudget::Heuristic).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = example22();
        assert!(s.validate(IrredBudget::Heuristic).is_empty());

        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let f = vec![parse_expr("x+y", &r).unwrap(), parse_expr("x+1", &r).unwrap()];
        let v = validate_polys(&r, &f, IrredBudget::Heuristic);
        assert_eq!(v[0], Violation { index: 0, kind: ViolationKind::SelfDependence });
        assert!(v[0].describe(&r).starts_with("LP2 at index 1"));

        let f = vec![parse_expr("y*(y+1)", &r).unwrap(), parse_expr("x+1", &r).unwrap()];
        let v = validate_polys(&r, &f, IrredBudget::Heuristic);
        assert_eq!(v, vec![Violation { index: 0, kind: ViolationKind::DivisibleByVariable(1) }]);
        assert!(Seed::new(r, f, IrredBudget::Heuristic).is_err());
    }

    #[test]
    fn hat_examples() {
        let s = example22();
        assert_eq!(s.hat(0).exponents, vec![0, 0, 0]);
        assert_eq!(s.hat(1).exponents, vec![0, 0, 0]);
        assert_eq!(s.hat(2).exponents, vec![-1, 0, 0]);

        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let t = Seed::from_exprs(r, &["1+y", "1+x"], IrredBudget::Heuristic).unwrap();
        assert!(t.hats().iter().all(|h| h.exponents.iter().all(|&a| a == 0)));
    }

    #[test]
    fn proportional_polynomials_get_hat_exponent() {
        let r = RingSpec::new(["P", "Q"], Vec::<&str>::new(), ["x1", "x2", "x3", "x4"]).unwrap();
        let s = Seed::from_exprs(r, &["P", "P", "Q", "Q"], IrredBudget::Heuristic).unwrap();
        assert_eq!(s.hat(0).exponents, vec![0, -1, 0, 0]);
        assert_eq!(s.hat(2).exponents, vec![0, 0, 0, -1]);
    }

    #[test]
    fn sign_changes_normalize_away() {
        let s = example22();
        let r = s.ring().clone();
        let n = r.nvars();
        // Replace a by -a: store -a and rewrite F_b, F_c in terms of it.
        let vars = vec![RationalExpr::var(n, 0).neg(), RationalExpr::var(n, 1), RationalExpr::var(n, 2)];
        let polys = vec![
            parse_expr("b+1", &r).unwrap(),
            parse_expr("(1-a)^2+c^2", &r).unwrap(),
            parse_expr("-(b^2+b-a^3+a^2)", &r).unwrap(),
        ];
        let t = Seed::from_parts(s.root().clone(), r, vars, polys).unwrap();
        assert_eq!(t, s);
        assert_eq!(s.equivalent(&t).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(s.normalized().unwrap(), s);
    }

    #[test]
    fn freeze_examples() {
        let r = RingSpec::cluster_only(["x", "y"]).unwrap();
        let t = Seed::from_exprs(r, &["1+y", "1+x"], IrredBudget::Heuristic).unwrap();
        let f = t.freeze(1).unwrap();
        assert_eq!(f.rank(), 1);
        assert_eq!(f.ring().inv_gens(), &["y".to_string()]);
        assert_eq!(f.poly(0).to_string_in(f.ring()), "y+1");
        assert!(f.validate(IrredBudget::Heuristic).is_empty());

        let s = example22().freeze(1).unwrap();
        assert_eq!(s.names(), &["a".to_string(), "c".to_string()]);
        assert_eq!(s.poly(1).to_string_in(s.ring()), "a^3+b^2+a^2+b");
        assert!(s.validate(IrredBudget::Heuristic).is_empty());
    }

    #[test]
    fn denominator_vectors() {
        let r = RingSpec::new(["A", "B", "E"], Vec::<&str>::new(), ["x", "y"]).unwrap();
        let n = r.nvars();
        assert_eq!(denominator_vector(&RationalExpr::var(n, 3), &r).unwrap(), vec![-1, 0]);
        let z = RationalExpr::new(parse_expr("A*y+B*E", &r).unwrap(), parse_expr("x", &r).unwrap()).unwrap();
        assert_eq!(denominator_vector(&z, &r).unwrap(), vec![1, 0]);
        let bad = RationalExpr::new(parse_expr("1", &r).unwrap(), parse_expr("x+1", &r).unwrap()).unwrap();
        assert_eq!(denominator_vector(&bad, &r), Err(Error::NotLaurent("x+1".into())));
    }
}
