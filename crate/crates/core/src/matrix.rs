//! Exchange matrices of cluster algebras with geometric coefficients, used as
//! an independent check on LP mutation.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer as _;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mutation::{mutate_with, Limits};
use crate::poly::{compose_poly, MPoly, Monomial, RationalExpr};
use crate::ring::{Integer, RingSpec};
use crate::seed::Seed;

/// An `m x n` integer matrix whose top `n x n` block is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    m: usize,
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        let n = entries.first().map_or(0, Vec::len);
        if n == 0 || m < n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix(format!("expected an m x n matrix with m >= n >= 1, got {m} rows")));
        }
        let b = ExchangeMatrix { m, n, entries };
        b.symmetrizer()?;
        Ok(b)
    }

    /// Reads `m n` followed by `m` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for (col, tok) in line.split_whitespace().map(|t| (line.find(t).unwrap_or(0), t)) {
                tokens.push((ln + 1, col + 1, tok));
            }
        }
        let mut it = tokens.into_iter();
        let mut next = |what: &str| -> Result<i64> {
            let (line, column, tok) = it.next().ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("unexpected end of input, expected {what}"),
            })?;
            tok.parse().map_err(|_| Error::Parse { line, column, message: format!("expected {what}, found `{tok}`") })
        };
        let m = next("row count")?;
        let n = next("column count")?;
        if m <= 0 || n <= 0 {
            return Err(Error::Matrix("dimensions must be positive".into()));
        }
        let mut rows = Vec::with_capacity(m as usize);
        for _ in 0..m {
            rows.push((0..n).map(|_| next("matrix entry")).collect::<Result<Vec<_>>>()?);
        }
        if let Ok(extra) = next("nothing") {
            return Err(Error::Matrix(format!("trailing entry {extra}")));
        }
        Self::new(rows)
    }

    /// `[[B], [I]]` for a square `B`.
    pub fn principal(b: &[Vec<i64>]) -> Result<Self> {
        let n = b.len();
        let mut rows = b.to_vec();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Positive integers `d` with `d_i b_ij = -d_j b_ji` on the top block.
    pub fn symmetrizer(&self) -> Result<Vec<i64>> {
        let n = self.n;
        let b = &self.entries;
        for i in 0..n {
            if b[i][i] != 0 {
                return Err(Error::Matrix(format!("nonzero diagonal entry at {}", i + 1)));
            }
            for j in 0..n {
                if b[i][j].signum() != -b[j][i].signum() {
                    return Err(Error::Matrix(format!("not sign-skew-symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        // d as reduced fractions num/den, propagated over connected components.
        let mut d: Vec<Option<(i128, i128)>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some((1, 1));
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (p, q) = d[i].unwrap();
                for j in 0..n {
                    if b[i][j] == 0 {
                        continue;
                    }
                    // d_j = d_i * b_ij / -b_ji
                    let (mut np, mut nq) = (p * b[i][j] as i128, q * -(b[j][i] as i128));
                    let g = np.gcd(&nq);
                    np /= g;
                    nq /= g;
                    match d[j] {
                        None => {
                            d[j] = Some((np, nq));
                            stack.push(j);
                        }
                        Some((a, c)) if a * nq != np * c => {
                            return Err(Error::Matrix("top block is not skew-symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let d: Vec<(i128, i128)> = d.into_iter().map(Option::unwrap).collect();
        let l = d.iter().fold(1i128, |acc, &(_, q)| acc.lcm(&q));
        let mut out: Vec<i128> = d.iter().map(|&(p, q)| p * (l / q)).collect();
        let g = out.iter().fold(0i128, |acc, &x| acc.gcd(&x));
        for x in &mut out {
            *x /= g;
        }
        Ok(out.into_iter().map(|x| x as i64).collect())
    }

    /// Columns whose entries have gcd 1.
    pub fn is_primitive(&self) -> bool {
        (0..self.n).all(|j| (0..self.m).fold(0i64, |g, i| g.gcd(&self.entries[i][j])) == 1)
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Integer>> =
            self.entries.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.m).find(|&r| a[r][col] != Integer::from(0)) else { continue };
            a.swap(rank, p);
            for r in 0..self.m {
                if r != rank && a[r][col] != Integer::from(0) {
                    let (f, g) = (a[rank][col].clone(), a[r][col].clone());
                    for c in 0..self.n {
                        a[r][c] = &a[r][c] * &f - &a[rank][c] * &g;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Matrix mutation in direction `k` (zero-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::BadIndex { index: k, rank: self.n });
        }
        let b = &self.entries;
        let mut out = b.clone();
        for i in 0..self.m {
            for j in 0..self.n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(ExchangeMatrix { m: self.m, n: self.n, entries: out })
    }

    /// Cluster-algebra exchange binomial of column `j`, with rows `0..n`
    /// on the cluster symbols and the rest on the invertible generators.
    pub fn binomial(&self, j: usize, ring: &RingSpec) -> MPoly {
        let nv = ring.nvars();
        let mut pos = Monomial::one(nv);
        let mut neg = Monomial::one(nv);
        for i in 0..self.m {
            let idx = self.row_symbol(i, ring);
            let e = self.entries[i][j] as i32;
            if e > 0 {
                pos[idx] = e;
            } else if e < 0 {
                neg[idx] = -e;
            }
        }
        &MPoly::monomial(pos, Integer::one()) + &MPoly::monomial(neg, Integer::one())
    }

    fn row_symbol(&self, i: usize, ring: &RingSpec) -> usize {
        if i < self.n {
            ring.cluster_var(i)
        } else {
            ring.inv_range().start + (i - self.n)
        }
    }

    fn check_ring(&self, ring: &RingSpec) -> Result<()> {
        if ring.rank() != self.n || ring.inv_gens().len() != self.m - self.n {
            return Err(Error::Precondition(format!(
                "a {}x{} matrix needs {} cluster symbols and {} invertible generators",
                self.m,
                self.n,
                self.n,
                self.m - self.n
            )));
        }
        Ok(())
    }

    /// Default ring: cluster `x1..xn`, invertible generators `x(n+1)..xm`.
    pub fn default_ring(&self) -> RingSpec {
        let name = |i: usize| format!("x{}", i + 1);
        RingSpec::new(Vec::<String>::new(), (self.n..self.m).map(name), (0..self.n).map(name))
            .expect("distinct names")
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.m, self.n)?;
        for r in &self.entries {
            let row: Vec<String> = r.iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// LP seed whose exchange polynomials are the exchange binomials of `b`.
pub fn from_exchange_matrix(b: &ExchangeMatrix, ring: RingSpec) -> Result<Seed> {
    b.check_ring(&ring)?;
    if !b.is_primitive() {
        return Err(Error::Matrix("matrix has a non-primitive column".into()));
    }
    let polys = (0..b.cols()).map(|j| b.binomial(j, &ring)).collect();
    Seed::new(ring, polys, crate::poly::IrredBudget::Heuristic)
}

/// Outcome of comparing LP mutation with matrix mutation along one path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub path: Vec<usize>,
    pub steps: usize,
    pub mismatch: Option<String>,
}

/// Mutates the LP seed of `b` and the matrix itself along `path` and
/// compares the variables and exchange polynomials after every step.
pub fn cross_check_cluster(b: &ExchangeMatrix, ring: RingSpec, path: &[usize]) -> Result<CrossCheck> {
    cross_check_cluster_with(b, ring, path, &Limits::default())
}

/// [`cross_check_cluster`] under explicit mutation limits.
pub fn cross_check_cluster_with(
    b: &ExchangeMatrix,
    ring: RingSpec,
    path: &[usize],
    limits: &Limits,
) -> Result<CrossCheck> {
    if b.rank() != b.cols() {
        return Err(Error::Precondition("matrix is not of full rank".into()));
    }
    let mut seed = from_exchange_matrix(b, ring)?;
    let root: Arc<RingSpec> = seed.root().clone();
    let mut mat = b.clone();
    let mut vars: Vec<RationalExpr> = seed.vars().to_vec();
    for (step, &k) in path.iter().enumerate() {
        seed = mutate_with(&seed, k, limits)?.0;
        // x'_k = binomial_k / x_k with the binomial read in the matrix cluster.
        let mut subst: Vec<Option<RationalExpr>> = vec![None; root.nvars()];
        for (s, v) in vars.iter().enumerate() {
            subst[root.cluster_var(s)] = Some(v.clone());
        }
        let num = compose_poly(&mat.binomial(k, &root), &subst)?;
        vars[k] = num.div(&vars[k])?;
        mat = mat.mutate(k)?;
        let polys = (0..mat.cols()).map(|j| mat.binomial(j, seed.ring())).collect();
        let expected = Seed::from_parts(root.clone(), seed.ring().clone(), vars.clone(), polys)?;
        if expected != seed {
            let mut msg = format!("after step {} (mutation at {}):", step + 1, k + 1);
            for j in 0..seed.rank() {
                if expected.var(j) != seed.var(j) {
                    msg.push_str(&format!(
                        " variable {} is {} but the matrix gives {};",
                        j + 1,
                        seed.var(j).display(&root),
                        expected.var(j).display(&root)
                    ));
                }
                if expected.poly(j) != seed.poly(j) {
                    msg.push_str(&format!(
                        " polynomial {} is {} but the matrix gives {};",
                        j + 1,
                        seed.poly(j).display(seed.ring()),
                        expected.poly(j).display(seed.ring())
                    ));
                }
            }
            return Ok(CrossCheck { path: path.to_vec(), steps: step + 1, mismatch: Some(msg) });
        }
    }
    Ok(CrossCheck { path: path.to_vec(), steps: path.len(), mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials_from_matrix() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let s = from_exchange_matrix(&b, b.default_ring()).unwrap();
        assert_eq!(s.display().to_string(), "{(x1, x2+1), (x2, x1+1)}");
        let p = ExchangeMatrix::principal(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let s = from_exchange_matrix(&p, p.default_ring()).unwrap();
        assert_eq!(s.display().to_string(), "{(x1, x3+x2), (x2, x4*x1+1)}");
    }

    #[test]
    fn zero_column_is_rejected() {
        let b = ExchangeMatrix::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(from_exchange_matrix(&b, b.default_ring()), Err(Error::Matrix(_))));
    }

    #[test]
    fn mutation_examples() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().entries(), &[vec![0, -1], vec![1, 0]]);
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().entries(), &[vec![0, -1], vec![1, 0], vec![-1, 1], vec![0, 1]]);
    }

    #[test]
    fn symmetrizers() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-2, 0]]).unwrap();
        assert_eq!(b.symmetrizer().unwrap(), vec![2, 1]);
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-2, -1, 0]]).is_err());
    }

    #[test]
    fn parse_matrix_file() {
        let b = ExchangeMatrix::parse("4 2\n0 1\n-1 0\n1 0\n0 1\n").unwrap();
        assert_eq!(b.rows(), 4);
        assert_eq!(ExchangeMatrix::parse(&b.to_string()).unwrap(), b);
        assert!(matches!(ExchangeMatrix::parse("2 2\n0 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn rank_deficient_is_precondition() {
        let b = ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        assert_eq!(b.rank(), 2);
        assert!(matches!(cross_check_cluster(&b, b.default_ring(), &[0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn principal_a2_paths_agree() {
        let b = ExchangeMatrix::principal(&[vec![0, 1], vec![-1, 0]]).unwrap();
        for len in 0..=5 {
            for code in 0..(1usize << len) {
                let path: Vec<usize> = (0..len).map(|t| (code >> t) & 1).collect();
                let r = cross_check_cluster(&b, b.default_ring(), &path).unwrap();
                assert_eq!(r.mismatch, None, "{path:?}");
            }
        }
    }

    fn skew_symmetrizable_3x3() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (prop::collection::vec(-2i64..=2, 3), prop::collection::vec(1i64..=2, 3)).prop_map(|(u, d)| {
            // b_ij = s_ij d_j with s skew-symmetric is symmetrized by d.
            let s = [[0, u[0], u[1]], [-u[0], 0, u[2]], [-u[1], -u[2], 0]];
            (0..3).map(|i| (0..3).map(|j| s[i][j] * d[j]).collect()).collect()
        })
    }

    proptest! {
        #[test]
        fn matrix_mutation_is_an_involution(b in skew_symmetrizable_3x3(), k in 0usize..3) {
            let m = ExchangeMatrix::principal(&b).unwrap();
            prop_assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m.clone());
            prop_assert!(m.mutate(k).unwrap().is_primitive());
        }
    }
}
