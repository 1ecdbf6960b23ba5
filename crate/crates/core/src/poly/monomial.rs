use std::cmp::Ordering;
use std::ops::{Deref, DerefMut};

use smallvec::SmallVec;

/// Exponent vector over all symbols of a ring. Entries may be negative for
/// Laurent monomials.
///
/// `Ord` is graded lexicographic: total degree first, then the first symbol
/// with a differing exponent decides (larger exponent is larger).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_vec(exps: Vec<i32>) -> Self {
        Monomial(SmallVec::from_vec(exps))
    }

    pub fn var(nvars: usize, idx: usize, exp: i32) -> Self {
        let mut m = Self::one(nvars);
        m[idx] = exp;
        m
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|&a| a * k).collect())
    }

    pub fn neg(&self) -> Monomial {
        Monomial(self.0.iter().map(|&a| -a).collect())
    }

    /// `other` divides `self` in the polynomial sense.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// Positive and negative parts: `self = pos / neg`.
    pub fn split_signs(&self) -> (Monomial, Monomial) {
        let pos = self.0.iter().map(|&a| a.max(0)).collect();
        let neg = self.0.iter().map(|&a| (-a).max(0)).collect();
        (Monomial(pos), Monomial(neg))
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }
}

impl Deref for Monomial {
    type Target = [i32];
    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl DerefMut for Monomial {
    fn deref_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |v: &[i32]| Monomial::from_vec(v.to_vec());
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[0, 0]) < m(&[0, 1]));
    }
}
