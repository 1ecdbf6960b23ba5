//! Built-in seed families: the Gale–Robinson recurrence, the brick wall,
//! linear seeds of directed graphs and wiring-diagram seeds.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mutation::{mutate_with, Limits};
use crate::poly::{IrredBudget, MPoly, Monomial, RationalExpr};
use crate::ring::{Integer, RingSpec};
use crate::seed::Seed;

const GALE_ROBINSON: [&str; 6] = [
    "y4^2+y3*y5+y2*y6",
    "y3*y4^2+y3^2*y5+y1*y5^2+y1*y4*y6",
    "y2*y4^2*y5+y1*y4*y5^2+y1*y4^2*y6+y2^2*y5*y6+y1*y2*y6^2",
    "y2*y3^2*y5+y1*y2*y5^2+y2^2*y3*y6+y1*y3^2*y6+y1^2*y5*y6",
    "y3^2*y4+y1*y3*y6+y2*y4^2+y2^2*y6",
    "y3^2+y2*y4+y1*y5",
];

/// Initial seed for `y_i y_{i+6} = y_{i+3}^2 + y_{i+2} y_{i+4} + y_{i+1} y_{i+5}`.
pub fn gale_robinson() -> Seed {
    let ring = RingSpec::cluster_only((1..=6).map(|i| format!("y{i}"))).expect("valid ring");
    Seed::from_exprs(ring, &GALE_ROBINSON, IrredBudget::Heuristic).expect("valid seed")
}

/// Mutates at slot 0, names the new variable `y{index}` and rotates it to
/// the last slot, so the result has the same shape as the input.
pub fn gale_robinson_step(s: &Seed, index: usize, limits: &Limits) -> Result<Seed> {
    let (t, _) = mutate_with(s, 0, limits)?;
    let mut names = t.names().to_vec();
    names[0] = format!("y{index}");
    let t = t.with_names(names)?;
    let n = t.rank();
    let order: Vec<usize> = (1..n).chain([0]).collect();
    t.permuted(&order)
}

/// Terms `y7, y8, ...` up to `y{last}` in root coordinates.
pub fn gale_robinson_terms(last: usize, limits: &Limits) -> Result<Vec<RationalExpr>> {
    let mut s = gale_robinson();
    let mut out = Vec::new();
    for k in 7..=last {
        s = gale_robinson_step(&s, k, limits)?;
        out.push(s.var(s.rank() - 1).clone());
    }
    Ok(out)
}

/// Two-layer brick wall seed.
pub fn brick_wall() -> Seed {
    let ring = RingSpec::cluster_only(["y1", "y2", "y3"]).expect("valid ring");
    Seed::from_exprs(ring, &["y2+y3+1", "y1^2+y1*y3+y3^2", "y2+y1+1"], IrredBudget::Heuristic).expect("valid seed")
}

/// Directed graph without loops or repeated edges on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearGraph {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl LinearGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Precondition(format!("edge {i} -> {j} leaves the vertex set 1..{n}")));
            }
            if i == j {
                return Err(Error::Precondition(format!("loop at {i}")));
            }
            if !set.insert((i, j)) {
                return Err(Error::Precondition(format!("edge {i} -> {j} repeated")));
            }
        }
        Ok(LinearGraph { n, edges: set })
    }

    /// Lines `i -> j`; a line holding a single vertex declares it.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: ln + 1, column: 1, message };
            let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err(format!("expected a vertex, found `{}`", t.trim())));
            match line.split_once("->") {
                Some((a, b)) => {
                    let (i, j) = (num(a)?, num(b)?);
                    n = n.max(i).max(j);
                    edges.push((i, j));
                }
                None => n = n.max(num(line)?),
            }
        }
        Self::new(n, edges)
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(i, j)| self.edges.contains(&(j, i)))
    }
}

/// `F_i = A_i + sum over i -> j of X_j` over `Z[A_1..A_n]`.
pub fn linear_seed(g: &LinearGraph) -> Result<Seed> {
    let ring = RingSpec::new((1..=g.n).map(|i| format!("A{i}")), Vec::<String>::new(), (1..=g.n).map(|i| format!("X{i}")))?;
    let nv = ring.nvars();
    let polys = (1..=g.n)
        .map(|i| {
            let mut f = MPoly::var(nv, i - 1);
            for &(_, j) in g.edges.range((i, 0)..(i + 1, 0)) {
                f = &f + &MPoly::var(nv, ring.cluster_var(j - 1));
            }
            f
        })
        .collect();
    Seed::new(ring, polys, IrredBudget::Heuristic)
}

/// A corner region of an internal region and the side regions that are
/// not adjacent to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corner {
    pub region: String,
    pub far_sides: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub internal: bool,
    pub corners: Vec<Corner>,
}

/// Region adjacency data of a wiring diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    pub regions: Vec<Region>,
}

impl WiringDiagram {
    /// Blocks of `region <name> internal|boundary` followed, for internal
    /// regions, by lines `corner <name> sides <names...>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut regions: Vec<Region> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse { line: ln + 1, column: 1, message };
            match words.as_slice() {
                [] => {}
                ["region", name, kind] => {
                    let internal = match *kind {
                        "internal" => true,
                        "boundary" => false,
                        other => return Err(err(format!("expected `internal` or `boundary`, found `{other}`"))),
                    };
                    regions.push(Region { name: name.to_string(), internal, corners: Vec::new() });
                }
                ["corner", name, "sides", sides @ ..] => {
                    let r = regions.last_mut().ok_or_else(|| err("corner before any region".into()))?;
                    if !r.internal {
                        return Err(err(format!("boundary region `{}` cannot list corners", r.name)));
                    }
                    r.corners.push(Corner {
                        region: name.to_string(),
                        far_sides: sides.iter().map(|s| s.to_string()).collect(),
                    });
                }
                _ => return Err(err(format!("cannot read `{}`", line.trim()))),
            }
        }
        let d = WiringDiagram { regions };
        d.check()?;
        Ok(d)
    }

    fn region(&self, name: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.name == name)
    }

    /// Each internal `k`-gon has `k` corners, each listing `k - 2` far
    /// sides, and the corner/side adjacency closes into one cycle.
    pub fn check(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for r in &self.regions {
            if !names.insert(r.name.as_str()) {
                return Err(Error::Precondition(format!("region `{}` declared twice", r.name)));
            }
        }
        for r in self.regions.iter().filter(|r| r.internal) {
            let bad = |m: String| Error::Precondition(format!("region `{}`: {m}", r.name));
            for c in &r.corners {
                for x in std::iter::once(&c.region).chain(&c.far_sides) {
                    if self.region(x).is_none() {
                        return Err(bad(format!("unknown region `{x}`")));
                    }
                    if *x == r.name {
                        return Err(bad("lists itself".into()));
                    }
                }
            }
            let k = r.corners.len();
            if k < 3 {
                return Err(bad(format!("{k} corners")));
            }
            let sides: BTreeSet<&str> = r.corners.iter().flat_map(|c| c.far_sides.iter().map(String::as_str)).collect();
            if sides.len() != k {
                return Err(bad(format!("{k} corners but {} sides", sides.len())));
            }
            // near[c] = the two sides touching corner c.
            let mut near = Vec::new();
            for c in &r.corners {
                let far: BTreeSet<&str> = c.far_sides.iter().map(String::as_str).collect();
                if far.len() != k - 2 || far.len() != c.far_sides.len() {
                    return Err(bad(format!("corner `{}` must list {} distinct sides", c.region, k - 2)));
                }
                let touch: Vec<&str> = sides.difference(&far).copied().collect();
                near.push(touch);
            }
            // Walk corner -> side -> corner; the walk must visit all corners.
            let mut seen = vec![false; k];
            let (mut cur, mut via) = (0, near[0][0]);
            for _ in 0..k {
                if seen[cur] {
                    return Err(bad("corners and sides do not form a polygon".into()));
                }
                seen[cur] = true;
                let nxt = (0..k).find(|&o| o != cur && near[o].contains(&via));
                let Some(nxt) = nxt else { return Err(bad(format!("side `{via}` touches one corner"))) };
                via = if near[nxt][0] == via { near[nxt][1] } else { near[nxt][0] };
                cur = nxt;
            }
            if cur != 0 || seen.iter().any(|s| !s) {
                return Err(bad("corners and sides do not form a polygon".into()));
            }
        }
        Ok(())
    }
}

/// Seed with one cluster variable per internal region over the polynomial
/// ring of the boundary regions; `F_a = sum_R R * prod(far sides of R)`.
pub fn wiring_seed(d: &WiringDiagram) -> Result<Seed> {
    d.check()?;
    let coeffs: Vec<&str> = d.regions.iter().filter(|r| !r.internal).map(|r| r.name.as_str()).collect();
    let cluster: Vec<&str> = d.regions.iter().filter(|r| r.internal).map(|r| r.name.as_str()).collect();
    let ring = RingSpec::new(coeffs, Vec::<&str>::new(), cluster)?;
    let nv = ring.nvars();
    let idx = |name: &str| ring.index_of(name).expect("declared region");
    let polys = d
        .regions
        .iter()
        .filter(|r| r.internal)
        .map(|r| {
            let terms = r.corners.iter().map(|c| {
                let mut m = Monomial::var(nv, idx(&c.region), 1);
                for s in &c.far_sides {
                    m[idx(s)] += 1;
                }
                (m, Integer::from(1))
            });
            MPoly::from_terms(nv, terms.collect::<Vec<_>>())
        })
        .collect();
    Seed::new(ring, polys, IrredBudget::Heuristic)
}

/// Region data of the three-region example diagram.
pub const WIRING_EXAMPLE: &str = "\
region a internal
corner X sides b
corner Y sides c
corner Z sides P
region b internal
corner T sides a c
corner Y sides c U
corner P sides U Z
corner V sides Z a
region c internal
corner V sides a
corner W sides b
corner U sides P
region P boundary
region T boundary
region U boundary
region V boundary
region W boundary
region X boundary
region Y boundary
region Z boundary
";

/// Edge list of the four-vertex example graph.
pub const LINEAR_EXAMPLE: &str = "\
1 -> 2
2 -> 1
1 -> 3
3 -> 1
3 -> 2
2 -> 3
1 -> 4
3 -> 4
4 -> 2
";
