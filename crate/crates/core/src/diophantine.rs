//! Minimal natural-number solutions of linear Diophantine systems.
//!
//! Homogeneous systems are solved with the Contejean–Devie frontier search: a
//! candidate `x` with residual `A·x ≠ 0` is only extended along a column `a_j`
//! with `⟨A·x, a_j⟩ < 0`, and any candidate above an already found solution is
//! dropped. Inhomogeneous systems `A·x = b` add a column `-b` whose coefficient is
//! capped at one; starting the search from that column alone enumerates exactly the
//! minimal inhomogeneous solutions once the homogeneous basis is known.
//!
//! Congruence rows `A_i·x ≡ b_i (mod d)` are reduced to `[0, d)` and receive a slack
//! column `-d`; solutions are projected back and filtered to their minimal elements.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// `A·x = b` over the naturals, with optional per-row moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiophantineSystem {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    moduli: Vec<Option<u64>>,
    vars: usize,
}

/// Minimal inhomogeneous solutions together with the homogeneous Hilbert basis.
/// Every solution is `b + Σ n_h·h` for some `b` in `minimal` and naturals `n_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub minimal: Vec<Vec<u64>>,
    pub hilbert: Vec<Vec<u64>>,
}

/// Default cap on the number of frontier candidates visited by one solve.
pub const DEFAULT_SEARCH_CAP: usize = 2_000_000;

impl DiophantineSystem {
    pub fn new(rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<Self> {
        let m = rows.len();
        Self::with_moduli(rows, rhs, vec![None; m])
    }

    /// `vars` must be given explicitly when the system has no rows.
    pub fn with_moduli(rows: Vec<Vec<i64>>, rhs: Vec<i64>, moduli: Vec<Option<u64>>) -> Result<Self> {
        let vars = rows.first().map_or(0, Vec::len);
        Self::build(rows, rhs, moduli, vars)
    }

    pub fn from_columns(columns: &[Vec<i64>], rhs: Vec<i64>, moduli: Vec<Option<u64>>) -> Result<Self> {
        let m = rhs.len();
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::Usage("column height differs from right-hand side".into()));
        }
        let rows = (0..m).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Self::build(rows, rhs, moduli, columns.len())
    }

    fn build(rows: Vec<Vec<i64>>, rhs: Vec<i64>, moduli: Vec<Option<u64>>, vars: usize) -> Result<Self> {
        if rhs.len() != rows.len() || moduli.len() != rows.len() {
            return Err(Error::Usage("row count, right-hand side and moduli must agree".into()));
        }
        if rows.iter().any(|r| r.len() != vars) {
            return Err(Error::Usage("ragged coefficient matrix".into()));
        }
        if moduli.iter().flatten().any(|&d| d < 1) {
            return Err(Error::Usage("modulus must be positive".into()));
        }
        Ok(Self { rows, rhs, moduli, vars })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().zip(&self.moduli).all(|(&b, d)| match d {
            Some(d) => b.rem_euclid(*d as i64) == 0,
            None => b == 0,
        })
    }

    /// Checks `A·x = b` (respecting moduli).
    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.rows.iter().zip(&self.rhs).zip(&self.moduli).all(|((row, &b), d)| {
            let lhs: i128 = row.iter().zip(x).map(|(&a, &v)| a as i128 * v as i128).sum();
            match d {
                Some(d) => (lhs - b as i128).rem_euclid(*d as i128) == 0,
                None => lhs == b as i128,
            }
        })
    }

    /// Columns of the extended (slack-augmented) equality system and its right-hand side.
    fn extended(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let m = self.rows.len();
        let mut cols: Vec<Vec<i64>> = (0..self.vars)
            .map(|j| {
                (0..m)
                    .map(|i| match self.moduli[i] {
                        Some(d) => self.rows[i][j].rem_euclid(d as i64),
                        None => self.rows[i][j],
                    })
                    .collect()
            })
            .collect();
        let rhs = (0..m)
            .map(|i| match self.moduli[i] {
                Some(d) => self.rhs[i].rem_euclid(d as i64),
                None => self.rhs[i],
            })
            .collect();
        for (i, d) in self.moduli.iter().enumerate() {
            if let Some(d) = d {
                let mut c = vec![0; m];
                c[i] = -(*d as i64);
                cols.push(c);
            }
        }
        (cols, rhs)
    }

    /// Minimal nonzero solutions of the homogeneous part.
    pub fn hilbert_basis(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        let (cols, _) = self.extended();
        let raw = cd_homogeneous(&cols, cap)?;
        Ok(minimal_elements(raw.into_iter().map(|x| x[..self.vars].to_vec()).filter(|x| x.iter().any(|&v| v > 0))))
    }

    /// Both the minimal inhomogeneous solutions and the homogeneous basis.
    pub fn solve(&self, cap: usize) -> Result<SolutionSet> {
        let hilbert_ext = {
            let (cols, _) = self.extended();
            cd_homogeneous(&cols, cap)?
        };
        self.solve_with_basis(&hilbert_ext, cap)
    }

    fn solve_with_basis(&self, hilbert_ext: &[Vec<u64>], cap: usize) -> Result<SolutionSet> {
        let raw = self.generating_with_basis(hilbert_ext, cap)?;
        Ok(SolutionSet { minimal: minimal_elements(raw.minimal), hilbert: minimal_elements(raw.hilbert) })
    }

    /// Like [`DiophantineSystem::solve`] but without discarding projections of slack
    /// solutions that are not minimal. Every solution is still `b + Σ n_h·h`, and on
    /// systems with congruence rows this is the only form where that decomposition is
    /// guaranteed with `b`, `h` drawn from the returned lists.
    fn generating_with_basis(&self, hilbert_ext: &[Vec<u64>], cap: usize) -> Result<SolutionSet> {
        let (cols, rhs) = self.extended();
        let project = |x: &Vec<u64>| x[..self.vars].to_vec();
        let hilbert: BTreeSet<Vec<u64>> =
            hilbert_ext.iter().map(project).filter(|x| x.iter().any(|&v| v > 0)).collect();
        let minimal: BTreeSet<Vec<u64>> = if rhs.iter().all(|&b| b == 0) {
            BTreeSet::from([vec![0; self.vars]])
        } else {
            cd_inhomogeneous(&cols, &rhs, hilbert_ext, cap)?.iter().map(project).collect()
        };
        Ok(SolutionSet { minimal: minimal.into_iter().collect(), hilbert: hilbert.into_iter().collect() })
    }
}

/// Componentwise-minimal solutions of `A·x = b` in lexicographic order (nonzero ones when `b = 0`).
pub fn min_nonneg_solutions(system: &DiophantineSystem) -> Result<Vec<Vec<u64>>> {
    if system.is_homogeneous() {
        system.hilbert_basis(DEFAULT_SEARCH_CAP)
    } else {
        Ok(system.solve(DEFAULT_SEARCH_CAP)?.minimal)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn dominates_any(x: &[u64], sols: &[Vec<u64>]) -> bool {
    sols.iter().any(|s| leq(s, x))
}

/// Minimal elements under the componentwise order, deduplicated and sorted.
pub(crate) fn minimal_elements(items: impl IntoIterator<Item = Vec<u64>>) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = items.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    all.sort_by_key(|x| x.iter().sum::<u64>());
    let mut kept: Vec<Vec<u64>> = Vec::new();
    for x in all {
        if !dominates_any(&x, &kept) {
            kept.push(x);
        }
    }
    kept.sort();
    kept
}

fn cd_homogeneous(cols: &[Vec<i64>], cap: usize) -> Result<Vec<Vec<u64>>> {
    let k = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    let mut sols: Vec<Vec<u64>> = Vec::new();
    let mut frontier: BTreeSet<Vec<u64>> = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            e
        })
        .collect();
    let mut visited = 0usize;
    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for x in &frontier {
            let ax = residual(cols, x, m, None);
            if ax.iter().all(|&v| v == 0) {
                if !dominates_any(x, &sols) {
                    sols.push(x.clone());
                }
            } else {
                pending.push((x.clone(), ax));
            }
        }
        let mut next = BTreeSet::new();
        for (x, ax) in pending {
            for (j, col) in cols.iter().enumerate() {
                if dot(&ax, col) < 0 {
                    let mut y = x.clone();
                    y[j] += 1;
                    if !dominates_any(&y, &sols) {
                        next.insert(y);
                    }
                }
            }
        }
        visited += next.len();
        if visited > cap {
            return Err(Error::ResourceGuard(format!("Diophantine frontier exceeded {cap} candidates")));
        }
        frontier = next;
    }
    Ok(sols)
}

/// Minimal solutions of `Σ x_j·cols_j = rhs` given the homogeneous basis of `cols`.
fn cd_inhomogeneous(cols: &[Vec<i64>], rhs: &[i64], hilbert: &[Vec<u64>], cap: usize) -> Result<Vec<Vec<u64>>> {
    let k = cols.len();
    let m = rhs.len();
    let neg_rhs: Vec<i64> = rhs.iter().map(|b| -b).collect();
    let mut sols: Vec<Vec<u64>> = hilbert.to_vec();
    let base = sols.len();
    let mut frontier: BTreeSet<Vec<u64>> = BTreeSet::new();
    frontier.insert(vec![0; k]);
    let mut visited = 0usize;
    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for x in &frontier {
            let ax = residual(cols, x, m, Some(&neg_rhs));
            if ax.iter().all(|&v| v == 0) {
                if !dominates_any(x, &sols) {
                    sols.push(x.clone());
                }
            } else {
                pending.push((x.clone(), ax));
            }
        }
        let mut next = BTreeSet::new();
        for (x, ax) in pending {
            for (j, col) in cols.iter().enumerate() {
                if dot(&ax, col) < 0 {
                    let mut y = x.clone();
                    y[j] += 1;
                    if !dominates_any(&y, &sols) {
                        next.insert(y);
                    }
                }
            }
        }
        visited += next.len();
        if visited > cap {
            return Err(Error::ResourceGuard(format!("Diophantine frontier exceeded {cap} candidates")));
        }
        frontier = next;
    }
    Ok(sols.split_off(base))
}

fn residual(cols: &[Vec<i64>], x: &[u64], m: usize, offset: Option<&[i64]>) -> Vec<i64> {
    let mut acc: Vec<i64> = match offset {
        Some(o) => o.to_vec(),
        None => vec![0; m],
    };
    for (col, &n) in cols.iter().zip(x) {
        if n == 0 {
            continue;
        }
        for (a, &c) in acc.iter_mut().zip(col) {
            *a += c * n as i64;
        }
    }
    acc
}

/// Memoised solver keyed by column sets, so repeated queries over the same columns
/// share one Hilbert basis computation. Results are generating sets (see
/// `generating_with_basis`), not necessarily minimal.
#[derive(Default)]
pub(crate) struct SolverCache {
    bases: std::collections::HashMap<(Vec<Vec<i64>>, Vec<Option<u64>>), Vec<Vec<u64>>>,
    solved: std::collections::HashMap<(Vec<Vec<i64>>, Vec<i64>, Vec<Option<u64>>), SolutionSet>,
}

impl SolverCache {
    pub fn solve(&mut self, columns: &[Vec<i64>], rhs: &[i64], moduli: &[Option<u64>], cap: usize) -> Result<SolutionSet> {
        let key = (columns.to_vec(), rhs.to_vec(), moduli.to_vec());
        if let Some(s) = self.solved.get(&key) {
            return Ok(s.clone());
        }
        let sys = DiophantineSystem::from_columns(columns, rhs.to_vec(), moduli.to_vec())?;
        let bkey = (columns.to_vec(), moduli.to_vec());
        if !self.bases.contains_key(&bkey) {
            let (cols, _) = sys.extended();
            let basis = cd_homogeneous(&cols, cap)?;
            self.bases.insert(bkey.clone(), basis);
        }
        let out = sys.generating_with_basis(&self.bases[&bkey], cap)?;
        self.solved.insert(key, out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Vec<Vec<u64>> {
        min_nonneg_solutions(&DiophantineSystem::new(rows, rhs).unwrap()).unwrap()
    }

    /// Minimal solutions inside `[0, bound]^k` by exhaustive enumeration.
    fn brute(sys: &DiophantineSystem, bound: u64) -> Vec<Vec<u64>> {
        let k = sys.vars();
        let mut all = Vec::new();
        let mut x = vec![0u64; k];
        loop {
            if sys.satisfied_by(&x) && (!sys.is_homogeneous() || x.iter().any(|&v| v > 0)) {
                all.push(x.clone());
            }
            let mut i = 0;
            while i < k && x[i] == bound {
                x[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            x[i] += 1;
        }
        let mut min: Vec<Vec<u64>> = all.iter().filter(|x| !all.iter().any(|y| y != *x && leq(y, x))).cloned().collect();
        min.sort();
        min
    }

    #[test]
    fn spec_examples() {
        assert_eq!(solve(vec![vec![1, -1]], vec![0]), vec![vec![1, 1]]);
        assert_eq!(solve(vec![vec![2, -3]], vec![0]), vec![vec![3, 2]]);
        let sys = DiophantineSystem::new(vec![vec![1, 1, -2]], vec![0]).unwrap();
        let expected = brute(&sys, 3);
        assert_eq!(expected, vec![vec![0, 2, 1], vec![1, 1, 1], vec![2, 0, 1]]);
        assert_eq!(min_nonneg_solutions(&sys).unwrap(), expected);
    }

    #[test]
    fn infeasible_is_empty() {
        assert!(solve(vec![vec![2]], vec![1]).is_empty());
        assert!(solve(vec![vec![1, 1]], vec![-1]).is_empty());
    }

    #[test]
    fn inhomogeneous() {
        assert_eq!(solve(vec![vec![1, 1]], vec![2]), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(solve(vec![vec![3, -2]], vec![1]), vec![vec![1, 1]]);
    }

    #[test]
    fn congruence_rows() {
        // 3x ≡ 1 (mod 4): minimal x = 3
        let sys = DiophantineSystem::with_moduli(vec![vec![3]], vec![1], vec![Some(4)]).unwrap();
        assert_eq!(min_nonneg_solutions(&sys).unwrap(), vec![vec![3]]);
        // x + y ≡ 0 (mod 2)
        let sys = DiophantineSystem::with_moduli(vec![vec![1, 1]], vec![0], vec![Some(2)]).unwrap();
        assert_eq!(min_nonneg_solutions(&sys).unwrap(), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(min_nonneg_solutions(&sys).unwrap(), brute(&sys, 4));
    }

    #[test]
    fn zero_column_is_its_own_solution() {
        assert_eq!(solve(vec![vec![0, 1]], vec![0]), vec![vec![1, 0]]);
    }

    #[test]
    fn full_solution_set_generates() {
        let sys = DiophantineSystem::new(vec![vec![1, -1]], vec![2]).unwrap();
        let s = sys.solve(DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.minimal, vec![vec![2, 0]]);
        assert_eq!(s.hilbert, vec![vec![1, 1]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn matches_box_oracle(
                k in 1usize..=3,
                m in 1usize..=2,
                entries in prop::collection::vec(-3i64..=3, 9),
                rhs in prop::collection::vec(-3i64..=3, 3),
                homogeneous in any::<bool>(),
            ) {
                let rows: Vec<Vec<i64>> = (0..m).map(|i| entries[i * 3..i * 3 + k].to_vec()).collect();
                let b: Vec<i64> = if homogeneous { vec![0; m] } else { rhs[..m].to_vec() };
                let sys = DiophantineSystem::new(rows, b).unwrap();
                let got = min_nonneg_solutions(&sys).unwrap();
                for x in &got {
                    prop_assert!(sys.satisfied_by(x));
                }
                for (i, x) in got.iter().enumerate() {
                    for (j, y) in got.iter().enumerate() {
                        prop_assert!(i == j || !leq(x, y));
                    }
                }
                let inside: Vec<Vec<u64>> = got.into_iter().filter(|x| x.iter().all(|&v| v <= 5)).collect();
                prop_assert_eq!(inside, brute(&sys, 5));
            }
        }
    }
}
