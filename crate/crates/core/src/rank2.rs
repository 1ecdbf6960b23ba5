//! Finite-type classification of rank-two seeds.

use std::fmt;

use crate::error::{Error, Result};
use crate::explore::{explore, ExchangeGraph, ExploreLimits};
use crate::seed::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Rank2Shape {
    Triangle,
    Square,
    Pentagon,
    Hexagon,
    Octagon,
    Infinite,
}

impl Rank2Shape {
    pub fn seed_count(self) -> Option<usize> {
        match self {
            Rank2Shape::Triangle => Some(3),
            Rank2Shape::Square => Some(4),
            Rank2Shape::Pentagon => Some(5),
            Rank2Shape::Hexagon => Some(6),
            Rank2Shape::Octagon => Some(8),
            Rank2Shape::Infinite => None,
        }
    }
}

impl fmt::Display for Rank2Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rank2Shape::Triangle => "triangle",
            Rank2Shape::Square => "square",
            Rank2Shape::Pentagon => "pentagon",
            Rank2Shape::Hexagon => "hexagon",
            Rank2Shape::Octagon => "octagon",
            Rank2Shape::Infinite => "infinite",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Rank2Report {
    /// Degrees after ordering so that `b <= c`.
    pub b: u32,
    pub c: u32,
    /// True when the slots were swapped to get `b <= c`.
    pub swapped: bool,
    pub shape: Rank2Shape,
    /// Exchange graph for finite shapes.
    pub graph: Option<ExchangeGraph>,
}

impl Rank2Report {
    /// For finite shapes, whether exploration closed with the expected count.
    pub fn verified(&self) -> bool {
        match (&self.graph, self.shape.seed_count()) {
            (Some(g), Some(k)) => g.is_complete() && g.len() == k,
            _ => false,
        }
    }
}

/// `b = deg_{x1} F_2`, `c = deg_{x2} F_1`.
pub fn cartan_pair(s: &Seed) -> Result<(u32, u32)> {
    if s.rank() != 2 {
        return Err(Error::Precondition(format!("rank two required, got rank {}", s.rank())));
    }
    let r = s.ring();
    Ok((s.poly(1).degree(r.cluster_var(0)), s.poly(0).degree(r.cluster_var(1))))
}

pub fn rank2_classify(s: &Seed) -> Result<Rank2Report> {
    let (b0, c0) = cartan_pair(s)?;
    let (b, c, swapped) = if b0 <= c0 { (b0, c0, false) } else { (c0, b0, true) };
    let shape = match (b, c) {
        (0, _) if s.poly(0) == s.poly(1) => Rank2Shape::Triangle,
        (0, _) => Rank2Shape::Square,
        (1, 1) => Rank2Shape::Pentagon,
        (1, 2) => Rank2Shape::Hexagon,
        (1, 3) => Rank2Shape::Octagon,
        _ => Rank2Shape::Infinite,
    };
    let graph = match shape.seed_count() {
        Some(k) => Some(explore(s, &ExploreLimits { max_seeds: k + 1, ..Default::default() })?),
        None => None,
    };
    Ok(Rank2Report { b, c, swapped, shape, graph })
}

/// Almost positive roots of the Cartan matrix `[[2, -b], [-c, 2]]` in the
/// simple-root basis, for the finite cases with `1 = b <= c`. Coordinates
/// are ordered like the cluster `(x1, x2)` with `deg_{x2} F_1 = c`.
pub fn almost_positive_roots(b: u32, c: u32) -> Option<Vec<(i32, i32)>> {
    let mut roots = vec![(-1, 0), (0, -1), (1, 0), (0, 1), (1, 1)];
    match (b, c) {
        (1, 1) => {}
        (1, 2) => roots.push((1, 2)),
        (1, 3) => roots.extend([(1, 2), (1, 3), (2, 3)]),
        _ => return None,
    }
    roots.sort_unstable();
    Some(roots)
}

/// Sorted, deduplicated d-vectors of all variables of a rank-two graph
/// over its root cluster.
pub fn d_vectors(g: &ExchangeGraph) -> Result<Vec<(i32, i32)>> {
    let rep = g.check_laurent(0)?;
    let mut out = Vec::new();
    for e in &rep.entries {
        let d = e.d_vector.as_ref().ok_or_else(|| Error::NotLaurent(e.expr.clone()))?;
        out.push((d[0], d[1]));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IrredBudget;
    use crate::ring::RingSpec;

    fn seed(coeffs: &[&str], exprs: &[&str]) -> Seed {
        let r = RingSpec::new(coeffs.iter().copied(), Vec::<&str>::new(), ["x", "y"]).unwrap();
        Seed::from_exprs(r, exprs, IrredBudget::Heuristic).unwrap()
    }

    #[test]
    fn pentagon_classifies_and_closes() {
        let s = seed(&["A", "B", "C", "D", "E"], &["A*y+B*E", "C*x+D*E"]);
        let r = rank2_classify(&s).unwrap();
        assert_eq!(r.shape, Rank2Shape::Pentagon);
        assert!(r.verified());
        assert_eq!(d_vectors(r.graph.as_ref().unwrap()).unwrap(), almost_positive_roots(1, 1).unwrap());
    }

    #[test]
    fn triangle_and_square() {
        let s = seed(&["P"], &["P", "P"]);
        let r = rank2_classify(&s).unwrap();
        assert_eq!(r.shape, Rank2Shape::Triangle);
        assert!(r.verified());
        let s = seed(&["A", "B", "C"], &["A+B*y", "C"]);
        let r = rank2_classify(&s).unwrap();
        assert_eq!(r.shape, Rank2Shape::Square);
        assert!(r.verified());
    }

    #[test]
    fn swapped_degrees() {
        let s = seed(&["A", "B", "C", "P", "Q"], &["Q+P*y", "A+B*x+C*x^2"]);
        let r = rank2_classify(&s).unwrap();
        assert!(r.swapped);
        assert_eq!((r.b, r.c, r.shape), (1, 2, Rank2Shape::Hexagon));
        assert!(r.verified());
    }

    #[test]
    fn generic_binomials_of_degree_two_are_infinite() {
        let s = seed(&["A", "B", "C", "D"], &["A*y^2+B", "C*x^2+D"]);
        let r = rank2_classify(&s).unwrap();
        assert_eq!(r.shape, Rank2Shape::Infinite);
        assert!(r.graph.is_none());
    }

    #[test]
    fn rank_three_is_rejected() {
        let r = RingSpec::cluster_only(["a", "b", "c"]).unwrap();
        let s = Seed::from_exprs(r, &["b+1", "a+c", "b+1"], IrredBudget::Heuristic).unwrap();
        assert!(matches!(rank2_classify(&s), Err(Error::Precondition(_))));
    }
}
