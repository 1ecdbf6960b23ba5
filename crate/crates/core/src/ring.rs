//! Coefficient rings, symbol layout and units.
//!
//! Every polynomial in this crate lives over a [`RingSpec`]: an ordered list of
//! polynomial coefficient generators, invertible (frozen) generators, and
//! cluster symbols. The concatenation `coeff ++ inv ++ cluster` fixes the
//! variable indices and the graded-lex monomial order.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Monomial};

/// Arbitrary precision integer used for every coefficient.
pub type Integer = BigInt;

/// Symbol layout of the ring `S[x_1, .., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    coeff: Vec<String>,
    inv: Vec<String>,
    cluster: Vec<String>,
}

/// Which block of the symbol list an index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Coeff,
    Inv,
    Cluster,
}

impl RingSpec {
    pub fn new<S: Into<String>>(
        coeff: impl IntoIterator<Item = S>,
        inv: impl IntoIterator<Item = S>,
        cluster: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let spec = RingSpec {
            coeff: coeff.into_iter().map(Into::into).collect(),
            inv: inv.into_iter().map(Into::into).collect(),
            cluster: cluster.into_iter().map(Into::into).collect(),
        };
        if spec.cluster.is_empty() {
            return Err(Error::Ring("a ring needs at least one cluster symbol".into()));
        }
        let mut seen = HashSet::new();
        for name in spec.symbols() {
            if !is_symbol_name(name) {
                return Err(Error::Ring(format!("invalid symbol name `{name}`")));
            }
            if !seen.insert(name) {
                return Err(Error::Ring(format!("symbol `{name}` declared twice")));
            }
        }
        Ok(spec)
    }

    /// Ring with integer coefficients and the given cluster symbols only.
    pub fn cluster_only<S: Into<String>>(cluster: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(Vec::<String>::new(), Vec::<String>::new(), cluster.into_iter().map(Into::into).collect::<Vec<String>>())
    }

    pub fn coeff_gens(&self) -> &[String] {
        &self.coeff
    }

    pub fn inv_gens(&self) -> &[String] {
        &self.inv
    }

    pub fn cluster_syms(&self) -> &[String] {
        &self.cluster
    }

    /// Rank `n`.
    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn nvars(&self) -> usize {
        self.coeff.len() + self.inv.len() + self.cluster.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.coeff.iter().chain(&self.inv).chain(&self.cluster)
    }

    pub fn symbol(&self, idx: usize) -> &str {
        let c = self.coeff.len();
        let k = self.inv.len();
        if idx < c {
            &self.coeff[idx]
        } else if idx < c + k {
            &self.inv[idx - c]
        } else {
            &self.cluster[idx - c - k]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols().position(|s| s == name)
    }

    pub fn kind(&self, idx: usize) -> SymbolKind {
        let c = self.coeff.len();
        let k = self.inv.len();
        if idx < c {
            SymbolKind::Coeff
        } else if idx < c + k {
            SymbolKind::Inv
        } else {
            SymbolKind::Cluster
        }
    }

    /// Variable index of cluster slot `slot`.
    pub fn cluster_var(&self, slot: usize) -> usize {
        self.coeff.len() + self.inv.len() + slot
    }

    pub fn inv_range(&self) -> std::ops::Range<usize> {
        self.coeff.len()..self.coeff.len() + self.inv.len()
    }

    pub fn cluster_range(&self) -> std::ops::Range<usize> {
        let start = self.coeff.len() + self.inv.len();
        start..start + self.cluster.len()
    }

    /// True for symbols that are units of the Laurent ring (inverted generators
    /// and cluster symbols).
    pub fn is_laurent_unit_var(&self, idx: usize) -> bool {
        self.kind(idx) != SymbolKind::Coeff
    }

    /// Same coefficient ring, different cluster names.
    pub fn with_cluster_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.cluster.len() {
            return Err(Error::Ring("cluster name count does not match rank".into()));
        }
        Self::new(self.coeff.clone(), self.inv.clone(), names)
    }

    /// True when both rings agree on everything except cluster names.
    pub fn same_layout(&self, other: &RingSpec) -> bool {
        self.coeff == other.coeff && self.inv == other.inv && self.cluster.len() == other.cluster.len()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ring {{ coeff {} ; coeff_inv {} ; cluster {} ; }}",
            self.coeff.join(" "),
            self.inv.join(" "),
            self.cluster.join(" ")
        )
    }
}

pub(crate) fn is_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A unit of `S`: a sign times a Laurent monomial in the invertible generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    pub negative: bool,
    /// Exponents over the invertible generators, in declaration order.
    pub exponents: Vec<i32>,
}

impl Unit {
    pub fn one(ring: &RingSpec) -> Self {
        Unit { negative: false, exponents: vec![0; ring.inv_gens().len()] }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        Unit {
            negative: self.negative != other.negative,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> Unit {
        Unit { negative: self.negative, exponents: self.exponents.iter().map(|e| -e).collect() }
    }

    pub fn pow(&self, k: i32) -> Unit {
        Unit {
            negative: self.negative && k.rem_euclid(2) == 1,
            exponents: self.exponents.iter().map(|e| e * k).collect(),
        }
    }

    /// Full-arity exponent vector of the monomial part.
    pub fn monomial(&self, ring: &RingSpec) -> Monomial {
        let mut m = Monomial::one(ring.nvars());
        for (k, idx) in ring.inv_range().enumerate() {
            m[idx] = self.exponents[k];
        }
        m
    }

    pub fn sign(&self) -> Integer {
        if self.negative {
            -Integer::one()
        } else {
            Integer::one()
        }
    }

    /// The unit as a polynomial. Fails when some exponent is negative.
    pub fn to_poly(&self, ring: &RingSpec) -> Option<MPoly> {
        if self.exponents.iter().any(|&e| e < 0) {
            return None;
        }
        Some(MPoly::monomial(self.monomial(ring), self.sign()))
    }
}

/// `p` is `±` a monomial in the invertible generators.
pub fn is_unit(p: &MPoly, ring: &RingSpec) -> bool {
    match p.terms() {
        [(m, c)] => {
            c.abs().is_one()
                && m.iter().enumerate().all(|(idx, &e)| e == 0 || ring.kind(idx) == SymbolKind::Inv)
        }
        _ => false,
    }
}

/// Splits `p = u * canonical` where `canonical` has no invertible-generator
/// content and a positive leading coefficient.
pub fn unit_normalize(p: &MPoly, ring: &RingSpec) -> Result<(MPoly, Unit)> {
    if p.is_zero() {
        return Err(Error::Zero("cannot normalize zero"));
    }
    let mut exps = Vec::with_capacity(ring.inv_gens().len());
    let mut shift = Monomial::one(ring.nvars());
    for idx in ring.inv_range() {
        let m = p.min_degree(idx);
        exps.push(m as i32);
        shift[idx] = m as i32;
    }
    let mut canonical = p.div_monomial(&shift);
    let negative = canonical.leading_coeff().map(|c| c.is_negative()).unwrap_or(false);
    if negative {
        canonical = -canonical;
    }
    Ok((canonical, Unit { negative, exponents: exps }))
}

/// Canonical representative of the `∝`-class of `p`.
pub fn canonical(p: &MPoly, ring: &RingSpec) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    unit_normalize(p, ring).map(|(c, _)| c).unwrap_or_else(|_| p.clone())
}

/// Integer gcd helper shared across modules.
pub(crate) fn int_gcd(a: &Integer, b: &Integer) -> Integer {
    use num_integer::Integer as _;
    if a.is_zero() {
        return b.abs();
    }
    a.gcd(b)
}
