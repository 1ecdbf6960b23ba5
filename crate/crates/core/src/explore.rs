//! Exchange graphs by breadth-first mutation, cluster complexes and the
//! Laurent check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHasher};
use serde_json::json;

use crate::error::{Error, Result};
use crate::mutation::{mutate_with, Limits};
use crate::names::Namer;
use crate::poly::RationalExpr;
use crate::seed::{canonical_var, denominator_vector, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExploreLimits {
    pub max_seeds: usize,
    /// Deepest BFS level that is expanded; `None` for no bound.
    pub max_depth: Option<usize>,
    pub mutation: Limits,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits { max_seeds: 10_000, max_depth: None, mutation: Limits::default() }
    }
}

/// Mutating `from` at `slot` gives `to`, where the new variable sits at
/// `to_slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Edge {
    pub from: usize,
    pub slot: usize,
    pub to: usize,
    pub to_slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    MaxSeeds,
    MaxDepth,
    Budget(String),
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub seed: Seed,
    pub key: String,
    pub var_keys: Vec<String>,
    pub depth: usize,
    /// BFS parent and the slot mutated there.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    truncations: Vec<Truncation>,
}

/// A distinct cluster variable of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub key: String,
    pub name: String,
    pub expr: RationalExpr,
}

/// Explores on the current rayon pool.
pub fn explore(s: &Seed, limits: &ExploreLimits) -> Result<ExchangeGraph> {
    let start = s.reroot()?;
    let mut namer = Namer::for_root(start.root());
    let root_keys = start.var_keys();
    let mut vertices = vec![Vertex {
        key: start.key(),
        var_keys: root_keys,
        seed: start,
        depth: 0,
        parent: None,
    }];
    let mut index: FxHashMap<String, usize> = FxHashMap::default();
    index.insert(vertices[0].key.clone(), 0);
    let mut edges = Vec::new();
    let mut truncations = Vec::new();
    let n = vertices[0].seed.rank();
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        if limits.max_depth.is_some_and(|d| depth >= d) {
            truncations.push(Truncation::MaxDepth);
            break;
        }
        let jobs: Vec<(usize, usize)> = frontier.iter().flat_map(|&u| (0..n).map(move |i| (u, i))).collect();
        let results: Vec<Result<(Seed, String)>> = jobs
            .par_iter()
            .map(|&(u, i)| {
                let t = mutate_with(&vertices[u].seed, i, &limits.mutation)?.0;
                let k = t.key();
                Ok((t, k))
            })
            .collect();
        let mut fresh: BTreeMap<String, (Seed, usize, usize)> = BTreeMap::new();
        let mut outcomes = Vec::with_capacity(jobs.len());
        for (&(u, i), r) in jobs.iter().zip(results) {
            match r {
                Ok((t, k)) => {
                    if !index.contains_key(&k) && !fresh.contains_key(&k) {
                        fresh.insert(k.clone(), (t.clone(), u, i));
                    }
                    outcomes.push(Some((u, i, t, k)));
                }
                Err(Error::Budget(msg)) => {
                    truncations.push(Truncation::Budget(msg));
                    outcomes.push(None);
                }
                Err(e) => return Err(e),
            }
        }
        let mut next = Vec::new();
        for (k, (t, u, i)) in fresh {
            if vertices.len() >= limits.max_seeds {
                if !truncations.contains(&Truncation::MaxSeeds) {
                    truncations.push(Truncation::MaxSeeds);
                }
                break;
            }
            let var_keys = t.var_keys();
            let names = var_keys.iter().map(|vk| namer.name_for(vk)).collect();
            let seed = t.with_names(names)?;
            index.insert(k.clone(), vertices.len());
            next.push(vertices.len());
            vertices.push(Vertex { seed, key: k, var_keys, depth: depth + 1, parent: Some((u, i)) });
        }
        for (u, i, t, k) in outcomes.into_iter().flatten() {
            if let Some(&v) = index.get(&k) {
                let new_key = crate::seed::var_key(t.var(i), t.root());
                let to_slot = vertices[v].var_keys.iter().position(|x| *x == new_key).expect("equivalent seeds");
                edges.push(Edge { from: u, slot: i, to: v, to_slot });
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(ExchangeGraph { vertices, edges, truncations })
}

/// Explores on a dedicated pool with `threads` workers (0 for the default).
pub fn explore_with_threads(s: &Seed, limits: &ExploreLimits, threads: usize) -> Result<ExchangeGraph> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| explore(s, limits))
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.vertices[0].seed.rank()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn seed(&self, v: usize) -> &Seed {
        &self.vertices[v].seed
    }

    pub fn root(&self) -> &Seed {
        self.seed(0)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn truncations(&self) -> &[Truncation] {
        &self.truncations
    }

    /// Closed under mutation: every vertex was expanded in every direction.
    pub fn is_complete(&self) -> bool {
        self.truncations.is_empty()
    }

    pub fn find(&self, s: &Seed) -> Option<usize> {
        let k = s.key();
        self.vertices.iter().position(|v| v.key == k)
    }

    /// Slots mutated along the BFS tree from the root to `v`.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some((p, i)) = self.vertices[cur].parent {
            path.push(i);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Every vertex has exactly one outgoing edge per slot.
    pub fn is_regular(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![vec![false; n]; self.len()];
        for e in &self.edges {
            if seen[e.from][e.slot] {
                return false;
            }
            seen[e.from][e.slot] = true;
        }
        seen.iter().all(|row| row.iter().all(|&b| b))
    }

    /// `(u, i, v, j)` present iff `(v, j, u, i)` present.
    pub fn is_edge_symmetric(&self) -> bool {
        let set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        self.edges
            .iter()
            .all(|e| set.contains(&Edge { from: e.to, slot: e.to_slot, to: e.from, to_slot: e.slot }))
    }

    /// Distinct cluster variables in order of first appearance.
    pub fn variables(&self) -> Vec<Variable> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in &self.vertices {
            for (slot, k) in v.var_keys.iter().enumerate() {
                if seen.insert(k.clone()) {
                    out.push(Variable {
                        key: k.clone(),
                        name: v.seed.names()[slot].clone(),
                        expr: v.seed.var(slot).clone(),
                    });
                }
            }
        }
        out
    }

    pub fn cluster_complex(&self) -> Result<ClusterComplex> {
        if !self.is_complete() {
            return Err(Error::Precondition("complex undefined on truncated graph".into()));
        }
        let variables = self.variables();
        let pos: FxHashMap<&str, usize> = variables.iter().enumerate().map(|(i, v)| (v.key.as_str(), i)).collect();
        let facets = self
            .vertices
            .iter()
            .map(|v| {
                let mut f: Vec<usize> = v.var_keys.iter().map(|k| pos[k.as_str()]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        Ok(ClusterComplex { variables, facets })
    }

    /// Expresses every variable over the cluster of vertex `base`.
    pub fn check_laurent(&self, base: usize) -> Result<LaurentReport> {
        let over_base = self.root_cluster_over(base)?;
        let base_ring = self.seed(base).ring().clone();
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (vid, v) in self.vertices.iter().enumerate() {
            for (slot, k) in v.var_keys.iter().enumerate() {
                if !seen.insert(k.clone()) {
                    continue;
                }
                let expr = match &over_base {
                    None => v.seed.var(slot).clone(),
                    Some(vals) => v.seed.var(slot).compose(vals)?,
                };
                let d_vector = denominator_vector(&expr, &base_ring).ok();
                entries.push(LaurentEntry {
                    name: v.seed.names()[slot].clone(),
                    expr: expr.display(&base_ring).to_string(),
                    d_vector,
                    path: self.path_to(vid),
                });
            }
        }
        Ok(LaurentReport { base, base_names: base_ring.cluster_syms().to_vec(), entries })
    }

    /// Root cluster symbols written over the cluster of `base`, up to units,
    /// as a substitution for root coordinates. `None` when `base` is the root.
    fn root_cluster_over(&self, base: usize) -> Result<Option<Vec<Option<RationalExpr>>>> {
        if base >= self.len() {
            return Err(Error::BadIndex { index: base, rank: self.len() });
        }
        if base == 0 {
            return Ok(None);
        }
        // Walk back from base to the root along reversed edges.
        let mut back = Vec::new();
        let mut cur = base;
        while let Some((p, i)) = self.vertices[cur].parent {
            let e = self.edges.iter().find(|e| e.from == p && e.slot == i).expect("tree edge");
            back.push(e.to_slot);
            cur = p;
        }
        let based = self.seed(base).reroot()?;
        let mut s = based.clone();
        for &j in &back {
            s = mutate_with(&s, j, &Limits { max_terms: usize::MAX, max_degree: i64::MAX })?.0;
        }
        // s is equivalent to the root seed; match its variables to root symbols.
        let root = self.root().root().clone();
        let base_vals = self.seed(base).substitution();
        let mut vals = vec![None; root.nvars()];
        for slot in 0..s.rank() {
            let in_root = s.var(slot).compose(&base_vals)?;
            let (w, _) = canonical_var(&in_root, &root)?;
            let idx = root
                .cluster_range()
                .find(|&idx| w == RationalExpr::var(root.nvars(), idx))
                .ok_or_else(|| Error::Internal("reverse path does not return to the root cluster".into()))?;
            vals[idx] = Some(s.var(slot).clone());
        }
        Ok(Some(vals))
    }

    /// Graphviz rendering; `short` labels vertices by key hashes.
    pub fn to_dot(&self, short: bool) -> String {
        let mut out = String::from("graph exchange {\n  node [shape=box];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = if short {
                let mut h = FxHasher::default();
                v.key.hash(&mut h);
                format!("{:016x}", h.finish())
            } else {
                v.seed.names().join(" ")
            };
            let _ = writeln!(out, "  s{i} [label=\"{label}\"];");
        }
        for e in &self.edges {
            if (e.from, e.slot) <= (e.to, e.to_slot) {
                let _ = writeln!(out, "  s{} -- s{} [label=\"{}\"];", e.from, e.to, e.slot + 1);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let root = self.root().root().clone();
        let seeds: Vec<_> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let s = &v.seed;
                json!({
                    "id": i,
                    "depth": v.depth,
                    "path": self.path_to(i).iter().map(|k| k + 1).collect::<Vec<_>>(),
                    "cluster": s.names(),
                    "exchange": (0..s.rank()).map(|j| s.poly(j).display(s.ring()).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let variables: Vec<_> = self
            .variables()
            .iter()
            .map(|v| {
                json!({
                    "name": v.name,
                    "value": v.expr.display(&root).to_string(),
                    "d_vector": denominator_vector(&v.expr, &root).ok(),
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "slot": e.slot + 1, "to": e.to, "to_slot": e.to_slot + 1}))
            .collect();
        let facets = self.cluster_complex().ok().map(|c| c.facet_names());
        json!({
            "complete": self.is_complete(),
            "seeds": seeds,
            "variables": variables,
            "edges": edges,
            "facets": facets,
        })
    }

    /// One-line summary such as `9 seeds, 6 variables, complete`.
    pub fn summary(&self) -> String {
        let status = if self.is_complete() { "complete" } else { "truncated" };
        format!("{} seeds, {} variables, {status}", self.len(), self.variables().len())
    }
}

#[derive(Clone, Debug)]
pub struct ClusterComplex {
    pub variables: Vec<Variable>,
    /// Sorted variable indices, one facet per seed.
    pub facets: Vec<Vec<usize>>,
}

impl ClusterComplex {
    pub fn is_face(&self, set: &[usize]) -> bool {
        self.facets.iter().any(|f| set.iter().all(|x| f.binary_search(x).is_ok()))
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|&i| self.variables[i].name.clone()).collect()).collect()
    }

    pub fn all_pairs_are_faces(&self) -> bool {
        let m = self.variables.len();
        (0..m).all(|a| (a + 1..m).all(|b| self.is_face(&[a, b])))
    }

    /// A smallest set of pairwise co-occurring variables that is not a face,
    /// if the complex is not a flag complex.
    pub fn non_flag_witness(&self) -> Option<Vec<usize>> {
        let m = self.variables.len();
        let adjacent = |a: usize, b: usize| self.is_face(&[a, b]);
        let mut faces: Vec<Vec<usize>> = (0..m).map(|a| vec![a]).collect();
        while !faces.is_empty() {
            let mut next = Vec::new();
            for f in &faces {
                let last = *f.last().unwrap();
                for v in last + 1..m {
                    if !f.iter().all(|&a| adjacent(a, v)) {
                        continue;
                    }
                    let mut c = f.clone();
                    c.push(v);
                    if self.is_face(&c) {
                        next.push(c);
                    } else if (0..c.len()).all(|skip| {
                        let sub: Vec<usize> =
                            c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                        self.is_face(&sub)
                    }) {
                        return Some(c);
                    }
                }
            }
            faces = next;
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentEntry {
    pub name: String,
    /// The variable over the base cluster.
    pub expr: String,
    /// `None` when the denominator is not a monomial.
    pub d_vector: Option<Vec<i32>>,
    /// Mutation path from the graph root to a seed containing the variable.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentReport {
    pub base: usize,
    pub base_names: Vec<String>,
    pub entries: Vec<LaurentEntry>,
}

impl LaurentReport {
    pub fn all_laurent(&self) -> bool {
        self.entries.iter().all(|e| e.d_vector.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LaurentEntry> {
        self.entries.iter().filter(|e| e.d_vector.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IrredBudget;
    use crate::ring::RingSpec;

    fn flag_seed() -> Seed {
        let r = RingSpec::new(["P", "Q"], Vec::<&str>::new(), ["x1", "x2", "x3", "x4"]).unwrap();
        Seed::from_exprs(r, &["P", "P", "Q", "Q"], IrredBudget::Heuristic).unwrap()
    }

    #[test]
    fn flag_example_counts() {
        let g = explore(&flag_seed(), &ExploreLimits::default()).unwrap();
        assert_eq!(g.summary(), "9 seeds, 6 variables, complete");
        assert!(g.is_regular());
        assert!(g.is_edge_symmetric());
        let c = g.cluster_complex().unwrap();
        assert!(c.all_pairs_are_faces());
        assert_eq!(c.non_flag_witness().map(|w| w.len()), Some(3));
    }

    #[test]
    fn rank_one_has_two_seeds() {
        let r = RingSpec::new(["A"], Vec::<&str>::new(), ["x"]).unwrap();
        let s = Seed::from_exprs(r, &["A+1"], IrredBudget::Heuristic).unwrap();
        let g = explore(&s, &ExploreLimits::default()).unwrap();
        assert_eq!(g.len(), 2);
        let c = g.cluster_complex().unwrap();
        assert!(c.facets.iter().all(|f| f.len() == 1));
    }

    #[test]
    fn truncation_is_reported() {
        let lim = ExploreLimits { max_seeds: 3, ..Default::default() };
        let g = explore(&flag_seed(), &lim).unwrap();
        assert_eq!(g.len(), 3);
        assert!(!g.is_complete());
        assert!(g.cluster_complex().is_err());
    }

    #[test]
    fn laurent_over_non_root_base() {
        let r = RingSpec::cluster_only(["a", "b", "c"]).unwrap();
        let s = Seed::from_exprs(r, &["b+1", "a+c", "b+1"], IrredBudget::Heuristic).unwrap();
        let g = explore(&s, &ExploreLimits::default()).unwrap();
        let rep = g.check_laurent(0).unwrap();
        assert!(rep.all_laurent());
        for base in 1..g.len() {
            let rep = g.check_laurent(base).unwrap();
            assert!(rep.all_laurent(), "base {base}");
            assert_eq!(rep.entries.len(), 7);
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let a = explore_with_threads(&flag_seed(), &ExploreLimits::default(), 1).unwrap();
        let b = explore_with_threads(&flag_seed(), &ExploreLimits::default(), 8).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_dot(false), b.to_dot(false));
    }
}
