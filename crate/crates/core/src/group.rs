//! The finitely generated group `H` whose word problem an automaton is meant to accept,
//! together with a choice of generators `ρ: Σ* → H`.
//!
//! Three computable presentations are supported: finitely generated abelian groups,
//! finite groups given by a multiplication table, and split virtually abelian groups
//! `Z^m ⋊ F` where a finite point group `F` acts on `Z^m` by unimodular matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, canonical_basis, AbelianSpec, GroupVector, Index, LatticeSubgroup};

/// A finite group given by its multiplication table over ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates the group axioms. `names` defaults to the decimal ids.
    pub fn new(table: Vec<Vec<usize>>, identity: usize, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
            }
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidGroup(format!("{identity} is not a two-sided identity for {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return Err(Error::InvalidGroup(format!("{a} has no inverse"))),
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => return Err(Error::InvalidGroup(format!("{} names for {n} elements", v.len()))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Self { table, identity, inverses, names })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::new(vec![vec![0]], 0, Some(vec!["1".into()])).expect("trivial group")
    }

    /// Cyclic group of order `n` with ids `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table, 0, None).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = vec![self.identity];
        while let Some(a) = queue.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    queue.push(b);
                }
            }
        }
        seen
    }
}

/// `Z^m ⋊ F` with `(v, f)·(w, g) = (v + f·w, fg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectGroup {
    rank: usize,
    point: FiniteGroup,
    action: Vec<Vec<Vec<i64>>>,
}

impl SemidirectGroup {
    pub fn new(rank: usize, point: FiniteGroup, action: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if action.len() != point.order() {
            return Err(Error::InvalidGroup(format!(
                "{} action matrices for a point group of order {}",
                action.len(),
                point.order()
            )));
        }
        for (f, m) in action.iter().enumerate() {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::InvalidGroup(format!("action matrix of {} is not {rank}x{rank}", point.name(f))));
            }
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| lattice::to_big(r)).collect();
            let h = lattice::hnf(&rows, rank);
            let unimodular = h.rows.len() == rank && h.rows.iter().zip(&h.pivots).all(|(r, &p)| r[p].is_one());
            if !unimodular {
                return Err(Error::InvalidGroup(format!("action matrix of {} is not invertible over Z", point.name(f))));
            }
        }
        let id = point.identity();
        let identity_matrix: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        if action[id] != identity_matrix {
            return Err(Error::InvalidGroup("identity of F must act trivially".into()));
        }
        for f in 0..point.order() {
            for g in 0..point.order() {
                if matmul(&action[f], &action[g]) != action[point.mul(f, g)] {
                    return Err(Error::InvalidGroup(format!(
                        "action does not respect the product {}·{}",
                        point.name(f),
                        point.name(g)
                    )));
                }
            }
        }
        Ok(Self { rank, point, action })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn point_group(&self) -> &FiniteGroup {
        &self.point
    }

    pub fn act(&self, f: usize, v: &[i64]) -> Vec<i64> {
        self.action[f].iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn action_matrix(&self, f: usize) -> &[Vec<i64>] {
        &self.action[f]
    }
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Presentation of the target group `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetGroupSpec {
    Abelian(AbelianSpec),
    Finite(FiniteGroup),
    VirtuallyAbelian(SemidirectGroup),
}

/// Normal form of an element of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum TargetGroupElement {
    Abelian(GroupVector),
    Finite(usize),
    Semidirect { translation: Vec<i64>, point: usize },
}

impl TargetGroupSpec {
    /// The infinite dihedral group `Z ⋊ Z/2` with point names `1` and `s`.
    pub fn infinite_dihedral() -> Self {
        let point = FiniteGroup::new(vec![vec![0, 1], vec![1, 0]], 0, Some(vec!["1".into(), "s".into()]))
            .expect("Z/2");
        TargetGroupSpec::VirtuallyAbelian(
            SemidirectGroup::new(1, point, vec![vec![vec![1]], vec![vec![-1]]]).expect("dihedral action"),
        )
    }

    pub fn identity(&self) -> TargetGroupElement {
        match self {
            TargetGroupSpec::Abelian(a) => TargetGroupElement::Abelian(a.zero()),
            TargetGroupSpec::Finite(f) => TargetGroupElement::Finite(f.identity()),
            TargetGroupSpec::VirtuallyAbelian(s) => {
                TargetGroupElement::Semidirect { translation: vec![0; s.rank], point: s.point.identity() }
            }
        }
    }

    /// Checks that `x` is a normal-form element of this group.
    pub fn check(&self, x: &TargetGroupElement) -> Result<()> {
        match (self, x) {
            (TargetGroupSpec::Abelian(a), TargetGroupElement::Abelian(v)) => a.check(v),
            (TargetGroupSpec::Finite(f), TargetGroupElement::Finite(i)) if *i < f.order() => Ok(()),
            (TargetGroupSpec::VirtuallyAbelian(s), TargetGroupElement::Semidirect { translation, point })
                if translation.len() == s.rank && *point < s.point.order() =>
            {
                Ok(())
            }
            _ => Err(Error::InvalidGroup(format!("{x:?} is not an element of this group"))),
        }
    }

    pub fn mul(&self, x: &TargetGroupElement, y: &TargetGroupElement) -> TargetGroupElement {
        use TargetGroupElement as E;
        match (self, x, y) {
            (TargetGroupSpec::Abelian(a), E::Abelian(u), E::Abelian(v)) => E::Abelian(a.add(u, v)),
            (TargetGroupSpec::Finite(f), E::Finite(a), E::Finite(b)) => E::Finite(f.mul(*a, *b)),
            (
                TargetGroupSpec::VirtuallyAbelian(s),
                E::Semidirect { translation: v, point: f },
                E::Semidirect { translation: w, point: g },
            ) => {
                let fw = s.act(*f, w);
                E::Semidirect { translation: v.iter().zip(&fw).map(|(a, b)| a + b).collect(), point: s.point.mul(*f, *g) }
            }
            _ => panic!("element does not belong to the group"),
        }
    }

    pub fn inverse(&self, x: &TargetGroupElement) -> TargetGroupElement {
        use TargetGroupElement as E;
        match (self, x) {
            (TargetGroupSpec::Abelian(a), E::Abelian(u)) => E::Abelian(a.neg(u)),
            (TargetGroupSpec::Finite(f), E::Finite(a)) => E::Finite(f.inverse(*a)),
            (TargetGroupSpec::VirtuallyAbelian(s), E::Semidirect { translation, point }) => {
                let fi = s.point.inverse(*point);
                E::Semidirect { translation: s.act(fi, translation).into_iter().map(|c| -c).collect(), point: fi }
            }
            _ => panic!("element does not belong to the group"),
        }
    }

    /// `x^k` for any integer `k`, by repeated squaring.
    pub fn pow(&self, x: &TargetGroupElement, k: &BigInt) -> TargetGroupElement {
        let mut base = if k.is_negative() { self.inverse(x) } else { x.clone() };
        let mut e = k.abs();
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e /= &two;
        }
        acc
    }

    pub fn is_identity(&self, x: &TargetGroupElement) -> bool {
        *x == self.identity()
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a TargetGroupElement>) -> TargetGroupElement {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn display(&self, x: &TargetGroupElement) -> String {
        match (self, x) {
            (TargetGroupSpec::Finite(f), TargetGroupElement::Finite(a)) => f.name(*a).to_string(),
            (TargetGroupSpec::VirtuallyAbelian(s), TargetGroupElement::Semidirect { translation, point }) => {
                format!("({}; {})", join_coords(translation), s.point.name(*point))
            }
            (_, TargetGroupElement::Abelian(v)) => v.to_string(),
            _ => format!("{x:?}"),
        }
    }

    /// Canonical description of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[TargetGroupElement]) -> Result<SubgroupData> {
        for g in gens {
            self.check(g)?;
        }
        match self {
            TargetGroupSpec::Abelian(a) => {
                let vs: Vec<GroupVector> = gens
                    .iter()
                    .map(|g| match g {
                        TargetGroupElement::Abelian(v) => v.clone(),
                        _ => unreachable!("checked above"),
                    })
                    .collect();
                Ok(SubgroupData::Abelian(canonical_basis(a, &vs)?))
            }
            TargetGroupSpec::Finite(f) => {
                let ids: Vec<usize> = gens
                    .iter()
                    .map(|g| match g {
                        TargetGroupElement::Finite(i) => *i,
                        _ => unreachable!("checked above"),
                    })
                    .collect();
                Ok(SubgroupData::Finite { order: f.order(), members: f.closure(&ids) })
            }
            TargetGroupSpec::VirtuallyAbelian(s) => Ok(semidirect_subgroup(s, gens)?),
        }
    }

    /// Index of `⟨gens⟩` in `H`. Always decided for the supported presentations.
    pub fn subgroup_index(&self, gens: &[TargetGroupElement]) -> Result<Index> {
        Ok(self.subgroup(gens)?.index())
    }
}

fn join_coords(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    parts.join(",")
}

/// Canonical data of a subgroup of `H`; equal subgroups give equal data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupData {
    Abelian(LatticeSubgroup),
    Finite { order: usize, members: BTreeSet<usize> },
    /// Translation sublattice `K ∩ Z^m` and, per reachable point part, the reduced
    /// translation of one element of `K` with that point part.
    Semidirect { point_order: usize, lattice: LatticeSubgroup, cosets: BTreeMap<usize, Vec<i64>> },
}

impl SubgroupData {
    pub fn index(&self) -> Index {
        match self {
            SubgroupData::Abelian(l) => l.index_in_ambient(),
            SubgroupData::Finite { order, members } => Index::finite((order / members.len()) as u64),
            SubgroupData::Semidirect { point_order, lattice, cosets } => match lattice.index_in_ambient() {
                Index::Infinite => Index::Infinite,
                Index::Finite(n) => Index::Finite(n * num_bigint::BigUint::from((point_order / cosets.len()) as u64)),
            },
        }
    }

    pub fn contains(&self, x: &TargetGroupElement) -> Result<bool> {
        match (self, x) {
            (SubgroupData::Abelian(l), TargetGroupElement::Abelian(v)) => l.contains(v),
            (SubgroupData::Finite { members, .. }, TargetGroupElement::Finite(i)) => Ok(members.contains(i)),
            (SubgroupData::Semidirect { lattice, cosets, .. }, TargetGroupElement::Semidirect { translation, point }) => {
                let Some(t) = cosets.get(point) else { return Ok(false) };
                let spec = lattice.spec();
                let diff = spec.element(translation.iter().zip(t).map(|(a, b)| a - b).collect())?;
                lattice.contains(&diff)
            }
            _ => Err(Error::InvalidGroup(format!("{x:?} does not belong to this group"))),
        }
    }
}

fn semidirect_subgroup(s: &SemidirectGroup, gens: &[TargetGroupElement]) -> Result<SubgroupData> {
    let gens: Vec<(&[i64], usize)> = gens
        .iter()
        .map(|g| match g {
            TargetGroupElement::Semidirect { translation, point } => (translation.as_slice(), *point),
            _ => unreachable!("checked by caller"),
        })
        .collect();
    let id = s.point.identity();
    let mut reps: BTreeMap<usize, Vec<i64>> = BTreeMap::from([(id, vec![0; s.rank])]);
    let mut queue = vec![id];
    let mut schreier: Vec<Vec<i64>> = Vec::new();
    // Schreier generators of K ∩ Z^m relative to the transversal {(t_f, f)}
    while let Some(f) = queue.pop() {
        let tf = reps[&f].clone();
        for &(v, h) in &gens {
            let fv = s.act(f, v);
            let b: Vec<i64> = tf.iter().zip(&fv).map(|(x, y)| x + y).collect();
            let fh = s.point.mul(f, h);
            match reps.get(&fh) {
                Some(t) => schreier.push(b.iter().zip(t).map(|(x, y)| x - y).collect()),
                None => {
                    reps.insert(fh, b);
                    queue.push(fh);
                }
            }
        }
    }
    let zspec = AbelianSpec::free(s.rank);
    let vecs: Vec<GroupVector> = schreier.into_iter().map(|v| zspec.element(v)).collect::<Result<_>>()?;
    let lattice = canonical_basis(&zspec, &vecs)?;
    let mut cosets = BTreeMap::new();
    for (f, t) in reps {
        let rep = lattice.coset_rep(&zspec.element(t)?)?;
        cosets.insert(f, rep.into_coords());
    }
    Ok(SubgroupData::Semidirect { point_order: s.point.order(), lattice, cosets })
}

/// Default cap on ball sizes.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// A surjective monoid homomorphism `ρ: Σ* → H` on an inverse-closed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceOfGenerators {
    group: TargetGroupSpec,
    letters: Vec<char>,
    images: Vec<TargetGroupElement>,
    inverse_of: Vec<usize>,
}

impl ChoiceOfGenerators {
    /// Builds `ρ`. Letter inverses come from `inverses` when given, otherwise each letter
    /// is paired with the first letter (itself preferred) whose image is its inverse.
    pub fn new(
        group: TargetGroupSpec,
        assignment: Vec<(char, TargetGroupElement)>,
        inverses: Option<&BTreeMap<char, char>>,
    ) -> Result<Self> {
        let mut letters = Vec::new();
        let mut images = Vec::new();
        for (c, x) in assignment {
            if letters.contains(&c) {
                return Err(Error::Usage(format!("letter {c:?} assigned twice")));
            }
            group.check(&x)?;
            letters.push(c);
            images.push(x);
        }
        let mut inverse_of = Vec::with_capacity(letters.len());
        for (i, c) in letters.iter().enumerate() {
            let want = group.inverse(&images[i]);
            let j = match inverses.and_then(|m| m.get(c)) {
                Some(d) => {
                    let j = letters.iter().position(|x| x == d).ok_or(Error::UnknownLetter(*d))?;
                    if images[j] != want {
                        return Err(Error::Usage(format!("{d:?} is declared inverse of {c:?} but its image is not")));
                    }
                    j
                }
                None => {
                    if images[i] == want {
                        i
                    } else {
                        images.iter().position(|x| *x == want).ok_or(Error::NotInverseClosed(*c))?
                    }
                }
            };
            inverse_of.push(j);
        }
        let rho = Self { group, letters, images, inverse_of };
        if let TargetGroupSpec::Finite(f) = &rho.group {
            let ids: Vec<usize> = rho
                .images
                .iter()
                .map(|x| match x {
                    TargetGroupElement::Finite(i) => *i,
                    _ => unreachable!(),
                })
                .collect();
            if f.closure(&ids).len() != f.order() {
                return Err(Error::InvalidGroup("letter images do not generate the finite group".into()));
            }
        }
        Ok(rho)
    }

    pub fn group(&self) -> &TargetGroupSpec {
        &self.group
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn image(&self, c: char) -> Result<&TargetGroupElement> {
        let i = self.letter_index(c)?;
        Ok(&self.images[i])
    }

    pub fn inverse_letter(&self, c: char) -> Result<char> {
        Ok(self.letters[self.inverse_of[self.letter_index(c)?]])
    }

    fn letter_index(&self, c: char) -> Result<usize> {
        self.letters.iter().position(|&x| x == c).ok_or(Error::UnknownLetter(c))
    }

    /// `ρ(w)`; the empty word maps to `1_H`.
    pub fn evaluate_word(&self, w: &str) -> Result<TargetGroupElement> {
        self.evaluate(w.chars())
    }

    pub fn evaluate(&self, w: impl IntoIterator<Item = char>) -> Result<TargetGroupElement> {
        let mut acc = self.group.identity();
        for c in w {
            acc = self.group.mul(&acc, self.image(c)?);
        }
        Ok(acc)
    }

    pub fn is_identity(&self, x: &TargetGroupElement) -> bool {
        self.group.is_identity(x)
    }

    /// Letterwise inverse of `v`, reversed.
    pub fn inverse_word(&self, v: &str) -> Result<String> {
        v.chars().rev().map(|c| self.inverse_letter(c)).collect()
    }

    /// Elements of word length at most `radius`, each with its shortest,
    /// lexicographically least witness. Sorted by (witness length, witness).
    pub fn ball(&self, radius: usize, cap: usize) -> Result<Vec<(TargetGroupElement, String)>> {
        let mut sorted_letters = self.letters.clone();
        sorted_letters.sort_unstable();
        let id = self.group.identity();
        let mut seen: HashMap<TargetGroupElement, String> = HashMap::from([(id.clone(), String::new())]);
        let mut out = vec![(id.clone(), String::new())];
        let mut level = vec![(id, String::new())];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (x, w) in &level {
                for &c in &sorted_letters {
                    let y = self.group.mul(x, self.image(c)?);
                    if !seen.contains_key(&y) {
                        let mut w2 = w.clone();
                        w2.push(c);
                        seen.insert(y.clone(), w2.clone());
                        next.push((y, w2));
                        if seen.len() > cap {
                            return Err(Error::ResourceGuard(format!("ball exceeds {cap} elements")));
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        Ok(out)
    }

    /// Index of `⟨gens⟩` in `H`.
    pub fn subgroup_index_in_h(&self, gens: &[TargetGroupElement]) -> Result<Index> {
        self.group.subgroup_index(gens)
    }

    /// The letter images, paired with their letters.
    pub fn assignment(&self) -> impl Iterator<Item = (char, &TargetGroupElement)> {
        self.letters.iter().copied().zip(&self.images)
    }
}

/// Convenience constructors for common choices of generators.
pub mod presets {
    use super::*;

    /// `Z^n` with letters `x,y,z,…` mapping to `+e_i` and their uppercase versions to `-e_i`.
    /// For `n = 1` the letters are `a`/`A`.
    pub fn free_abelian(n: usize) -> ChoiceOfGenerators {
        let spec = AbelianSpec::free(n);
        let mut assignment = Vec::new();
        for i in 0..n {
            let (lo, hi) = letter_pair(n, i);
            let e = spec.unit(i);
            assignment.push((lo, TargetGroupElement::Abelian(e.clone())));
            assignment.push((hi, TargetGroupElement::Abelian(spec.neg(&e))));
        }
        ChoiceOfGenerators::new(TargetGroupSpec::Abelian(spec), assignment, None).expect("free abelian generators")
    }

    pub fn letter_pair(n: usize, i: usize) -> (char, char) {
        if n == 1 {
            ('a', 'A')
        } else {
            let lo = (b"xyzuvw".get(i).copied().unwrap_or(b'a' + i as u8)) as char;
            (lo, lo.to_ascii_uppercase())
        }
    }

    /// Infinite dihedral group with `t ↦ (1; 1)`, `T ↦ (-1; 1)`, `s ↦ (0; s)`.
    pub fn infinite_dihedral() -> ChoiceOfGenerators {
        let h = TargetGroupSpec::infinite_dihedral();
        let el = |t: i64, p: usize| TargetGroupElement::Semidirect { translation: vec![t], point: p };
        ChoiceOfGenerators::new(h, vec![('t', el(1, 0)), ('T', el(-1, 0)), ('s', el(0, 1))], None)
            .expect("dihedral generators")
    }

    /// The trivial group with an empty alphabet.
    pub fn trivial() -> ChoiceOfGenerators {
        ChoiceOfGenerators::new(TargetGroupSpec::Finite(FiniteGroup::trivial()), Vec::new(), None)
            .expect("trivial generators")
    }
}
