//! Finitely generated abelian groups `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` and their subgroups.
//!
//! A subgroup is stored as the Hermite normal form of its preimage in `Z^(r+k)`,
//! i.e. the lattice spanned by lifted generators together with the torsion relators
//! `d_i·e_(r+i)`. That preimage determines the subgroup uniquely, so the HNF is a
//! canonical basis and equality of subgroups is equality of bases.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianSpec {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(rename = "torsion", default)]
    torsion_moduli: Vec<u64>,
}

/// An element of an [`AbelianSpec`] group. Torsion coordinates are kept in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupVector(Vec<i64>);

impl GroupVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for GroupVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianSpec {
    pub fn new(free_rank: usize, torsion_moduli: Vec<u64>) -> Result<Self> {
        if let Some(d) = torsion_moduli.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("torsion modulus {d} is below 2")));
        }
        Ok(Self { free_rank, torsion_moduli })
    }

    /// `Z^n`.
    pub fn free(n: usize) -> Self {
        Self { free_rank: n, torsion_moduli: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_moduli(&self) -> &[u64] {
        &self.torsion_moduli
    }

    /// Number of coordinates of an element.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion_moduli.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_moduli.is_empty()
    }

    /// Modulus of coordinate `i`, `None` for free coordinates.
    pub fn modulus(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion_moduli[t])
    }

    pub fn zero(&self) -> GroupVector {
        GroupVector(vec![0; self.dim()])
    }

    pub fn unit(&self, i: usize) -> GroupVector {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        self.reduce(v)
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, coords: Vec<i64>) -> Result<GroupVector> {
        if coords.len() != self.dim() {
            return Err(Error::SpecMismatch(format!(
                "element has {} coordinates, group has {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(self.reduce(coords))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> GroupVector {
        for (i, d) in self.torsion_moduli.iter().enumerate() {
            let c = &mut coords[self.free_rank + i];
            *c = c.rem_euclid(*d as i64);
        }
        GroupVector(coords)
    }

    /// Checks that `v` is a reduced element of this group.
    pub fn check(&self, v: &GroupVector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::SpecMismatch(format!(
                "element {v} has {} coordinates, group has {}",
                v.len(),
                self.dim()
            )));
        }
        for (i, d) in self.torsion_moduli.iter().enumerate() {
            let c = v.0[self.free_rank + i];
            if c < 0 || c >= *d as i64 {
                return Err(Error::SpecMismatch(format!("torsion coordinate {c} of {v} not reduced mod {d}")));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupVector, b: &GroupVector) -> GroupVector {
        debug_assert_eq!(a.len(), b.len());
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupVector, b: &GroupVector) -> GroupVector {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &GroupVector) -> GroupVector {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GroupVector, k: i64) -> GroupVector {
        self.reduce(a.0.iter().map(|x| x * k).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupVector>) -> GroupVector {
        let mut acc = vec![0i64; self.dim()];
        for v in items {
            for (a, x) in acc.iter_mut().zip(&v.0) {
                *a += x;
            }
        }
        self.reduce(acc)
    }

    pub fn is_zero(&self, v: &GroupVector) -> bool {
        v.0.iter().all(|&c| c == 0)
    }

    /// Largest absolute value over the free coordinates.
    pub fn free_norm(&self, v: &GroupVector) -> u64 {
        v.0[..self.free_rank].iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    /// Integer rows of the torsion relators `d_i·e_(r+i)`.
    fn relator_rows(&self) -> Vec<Vec<BigInt>> {
        self.torsion_moduli
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![BigInt::zero(); self.dim()];
                row[self.free_rank + i] = BigInt::from(*d);
                row
            })
            .collect()
    }
}

impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for d in &self.torsion_moduli {
            write!(f, " + Z/{d}")?;
        }
        Ok(())
    }
}

/// Index of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Finite(BigUint),
    Infinite,
}

impl Index {
    pub fn finite(n: u64) -> Self {
        Index::Finite(BigUint::from(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Index::Finite(n) => n.to_u64(),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => match n.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&n.to_string()),
            },
            Index::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Row-style Hermite normal form: rows are in echelon form, pivots are positive and
/// entries above a pivot lie in `[0, pivot)`. Zero rows are dropped.
#[derive(Clone, Debug)]
pub(crate) struct Hnf {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// For each row of `rows`, the combination of input rows producing it.
    pub transform: Vec<Vec<BigInt>>,
    /// Basis of the integer relations among the input rows.
    pub kernel: Vec<Vec<BigInt>>,
}

pub(crate) fn hnf(input: &[Vec<BigInt>], width: usize) -> Hnf {
    let n = input.len();
    let mut rows: Vec<Vec<BigInt>> = input.to_vec();
    let mut trans: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut t = vec![BigInt::zero(); n];
            t[i] = BigInt::one();
            t
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == n {
            break;
        }
        loop {
            // smallest nonzero |entry| among rows r.. goes to position r
            let best = (r..n)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            rows.swap(r, best);
            trans.swap(r, best);
            let mut done = true;
            for i in (r + 1)..n {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                sub_multiple(&mut rows, i, r, &q);
                sub_multiple(&mut trans, i, r, &q);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            negate(&mut rows[r]);
            negate(&mut trans[r]);
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                sub_multiple(&mut rows, i, r, &q);
                sub_multiple(&mut trans, i, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let kernel = trans.split_off(r);
    rows.truncate(r);
    Hnf { rows, pivots, transform: trans, kernel }
}

fn sub_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (a, b) = m.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = m.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row {
        *x = -std::mem::take(x);
    }
}

impl Hnf {
    /// Writes `v` as an integer combination of the HNF rows, returning the
    /// coefficients per row, or `None` when `v` is outside the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        let mut next_col = 0;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if residual[next_col..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = residual[pc].div_rem(&row[pc]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in residual.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
            coeffs.push(q);
            next_col = pc + 1;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coeffs)
    }

    /// Canonical representative of `v` modulo the row lattice: pivot coordinates
    /// are brought into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let q = out[pc].div_floor(&row[pc]);
            if !q.is_zero() {
                for (x, y) in out.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        out
    }
}

pub(crate) fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A subgroup of an [`AbelianSpec`] group in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSubgroup {
    spec: AbelianSpec,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Canonical basis of the subgroup generated by `gens`.
pub fn canonical_basis(spec: &AbelianSpec, gens: &[GroupVector]) -> Result<LatticeSubgroup> {
    for g in gens {
        spec.check(g)?;
    }
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| to_big(g.coords())).collect();
    rows.extend(spec.relator_rows());
    let h = hnf(&rows, spec.dim());
    Ok(LatticeSubgroup { spec: spec.clone(), basis: h.rows, pivots: h.pivots })
}

impl LatticeSubgroup {
    pub fn zero(spec: &AbelianSpec) -> Self {
        canonical_basis(spec, &[]).expect("empty generating set")
    }

    pub fn whole(spec: &AbelianSpec) -> Self {
        let gens: Vec<_> = (0..spec.dim()).map(|i| spec.unit(i)).collect();
        canonical_basis(spec, &gens).expect("unit vectors")
    }

    pub fn spec(&self) -> &AbelianSpec {
        &self.spec
    }

    /// Canonical basis rows (lifted to `Z^(r+k)`, torsion relators included).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis rows as `i64` tuples; `None` if an entry does not fit.
    pub fn basis_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.basis.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
    }

    fn as_hnf(&self) -> Hnf {
        Hnf { rows: self.basis.clone(), pivots: self.pivots.clone(), transform: Vec::new(), kernel: Vec::new() }
    }

    pub fn contains(&self, v: &GroupVector) -> Result<bool> {
        self.spec.check(v)?;
        Ok(self.as_hnf().solve(&to_big(v.coords())).is_some())
    }

    /// Coefficients of `v` with respect to the canonical basis rows, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &GroupVector) -> Result<Option<Vec<BigInt>>> {
        self.spec.check(v)?;
        Ok(self.as_hnf().solve(&to_big(v.coords())))
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn index_in_ambient(&self) -> Index {
        if self.basis.len() < self.spec.dim() {
            return Index::Infinite;
        }
        let mut prod = BigUint::one();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            prod *= row[pc].magnitude();
        }
        Index::Finite(prod)
    }

    pub fn is_subgroup_of(&self, other: &LatticeSubgroup) -> bool {
        let h = other.as_hnf();
        self.spec == other.spec && self.basis.iter().all(|r| h.solve(r).is_some())
    }

    /// Canonical coset representative of `v` (free coordinates reduced modulo the pivots).
    pub fn coset_rep(&self, v: &GroupVector) -> Result<GroupVector> {
        self.spec.check(v)?;
        let red = self.as_hnf().reduce(&to_big(v.coords()));
        let coords = red
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::ResourceGuard("coordinate overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.spec.reduce(coords))
    }
}

/// Expresses elements as integer combinations of a fixed generator list.
#[derive(Clone, Debug)]
pub struct CombinationSolver {
    spec: AbelianSpec,
    n_gens: usize,
    hnf: Hnf,
}

impl CombinationSolver {
    pub fn new(spec: &AbelianSpec, gens: &[GroupVector]) -> Result<Self> {
        for g in gens {
            spec.check(g)?;
        }
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| to_big(g.coords())).collect();
        rows.extend(spec.relator_rows());
        let hnf = hnf(&rows, spec.dim());
        Ok(Self { spec: spec.clone(), n_gens: gens.len(), hnf })
    }

    /// Coefficients `c` with `v = Σ c_i·gens[i]`, or `None` if `v` is not generated.
    pub fn express(&self, v: &GroupVector) -> Result<Option<Vec<BigInt>>> {
        self.spec.check(v)?;
        let Some(coeffs) = self.hnf.solve(&to_big(v.coords())) else {
            return Ok(None);
        };
        let mut out = vec![BigInt::zero(); self.n_gens];
        for (q, t) in coeffs.iter().zip(&self.hnf.transform) {
            for (o, x) in out.iter_mut().zip(t) {
                *o += q * x;
            }
        }
        Ok(Some(out))
    }

    /// Generators of the relation module `{c : Σ c_i·gens[i] = 0 in G}`.
    ///
    /// Kernel vectors of the lifted matrix (generators stacked over torsion relators)
    /// projected onto the generator coordinates span exactly these relations.
    pub fn relations(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self
            .hnf
            .kernel
            .iter()
            .map(|k| k[..self.n_gens].to_vec())
            .filter(|k| k.iter().any(|x| !x.is_zero()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Rank of the integer matrix whose columns are given.
pub(crate) fn column_rank(columns: &[Vec<i64>], height: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = columns.iter().map(|c| to_big(c)).collect();
    hnf(&rows, height).rows.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv(spec: &AbelianSpec, v: &[i64]) -> GroupVector {
        spec.element(v.to_vec()).unwrap()
    }

    fn basis(sub: &LatticeSubgroup) -> Vec<Vec<i64>> {
        sub.basis_i64().unwrap()
    }

    #[test]
    fn canonical_examples() {
        let z2 = AbelianSpec::free(2);
        let s = canonical_basis(&z2, &[gv(&z2, &[2, 0]), gv(&z2, &[0, 3])]).unwrap();
        assert_eq!(basis(&s), vec![vec![2, 0], vec![0, 3]]);
        assert!(basis(&canonical_basis(&z2, &[]).unwrap()).is_empty());
        let z1 = AbelianSpec::free(1);
        let s = canonical_basis(&z1, &[gv(&z1, &[2]), gv(&z1, &[3])]).unwrap();
        assert_eq!(basis(&s), vec![vec![1]]);
    }

    #[test]
    fn mixed_specs_rejected() {
        let z2 = AbelianSpec::free(2);
        let z1 = AbelianSpec::free(1);
        let err = canonical_basis(&z2, &[gv(&z1, &[1])]).unwrap_err();
        assert!(matches!(err, Error::SpecMismatch(_)));
    }

    #[test]
    fn contains_examples() {
        let z2 = AbelianSpec::free(2);
        let s = canonical_basis(&z2, &[gv(&z2, &[2, 0]), gv(&z2, &[0, 3])]).unwrap();
        assert!(s.contains(&gv(&z2, &[4, 3])).unwrap());
        assert!(!s.contains(&gv(&z2, &[1, 0])).unwrap());
        assert!(LatticeSubgroup::zero(&z2).contains(&z2.zero()).unwrap());
        assert!(s.contains(&AbelianSpec::free(1).zero()).is_err());
    }

    #[test]
    fn index_examples() {
        let z2 = AbelianSpec::free(2);
        let idx = |gens: &[&[i64]]| {
            let gens: Vec<_> = gens.iter().map(|g| gv(&z2, g)).collect();
            canonical_basis(&z2, &gens).unwrap().index_in_ambient()
        };
        assert_eq!(idx(&[&[2, 0], &[0, 3]]), Index::finite(6));
        assert_eq!(idx(&[&[1, 0]]), Index::Infinite);
        assert_eq!(idx(&[&[2, 2], &[0, 4]]), Index::finite(8));
    }

    #[test]
    fn torsion_coordinates() {
        let g = AbelianSpec::new(1, vec![4]).unwrap();
        assert_eq!(gv(&g, &[1, -1]).coords(), &[1, 3]);
        let s = canonical_basis(&g, &[gv(&g, &[0, 2])]).unwrap();
        assert_eq!(s.index_in_ambient(), Index::Infinite);
        let s = canonical_basis(&g, &[gv(&g, &[1, 0]), gv(&g, &[0, 2])]).unwrap();
        assert_eq!(s.index_in_ambient(), Index::finite(2));
        assert!(s.contains(&gv(&g, &[5, 2])).unwrap());
        assert!(!s.contains(&gv(&g, &[5, 1])).unwrap());
        // (1,1) has order 4 in the torsion part once the free part is killed: index 1
        let s = canonical_basis(&g, &[gv(&g, &[1, 0]), gv(&g, &[0, 1])]).unwrap();
        assert_eq!(s.index_in_ambient(), Index::finite(1));
        assert!(AbelianSpec::new(0, vec![1]).is_err());
    }

    #[test]
    fn express_and_relations() {
        let z1 = AbelianSpec::free(1);
        let gens = vec![gv(&z1, &[2]), gv(&z1, &[3])];
        let solver = CombinationSolver::new(&z1, &gens).unwrap();
        let c = solver.express(&gv(&z1, &[7])).unwrap().unwrap();
        let total: BigInt = c.iter().zip(&gens).map(|(c, g)| c * g.coords()[0]).sum();
        assert_eq!(total, BigInt::from(7));
        let rel = solver.relations();
        assert_eq!(rel.len(), 1);
        let r: BigInt = rel[0].iter().zip(&gens).map(|(c, g)| c * g.coords()[0]).sum();
        assert!(r.is_zero());
        let only_even = CombinationSolver::new(&z1, &[gv(&z1, &[2])]).unwrap();
        assert!(only_even.express(&gv(&z1, &[3])).unwrap().is_none());
    }

    #[test]
    fn coset_reps() {
        let z1 = AbelianSpec::free(1);
        let s = canonical_basis(&z1, &[gv(&z1, &[3])]).unwrap();
        assert_eq!(s.coset_rep(&gv(&z1, &[-4])).unwrap().coords(), &[2]);
        assert_eq!(s.coset_rep(&gv(&z1, &[6])).unwrap().coords(), &[0]);
    }
}
