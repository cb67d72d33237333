//! Subword and scattered-subword orders, antichains of paths, and minimal accepting paths.

use serde::Serialize;

use crate::automaton::{GAutomaton, PathWord};
use crate::error::Result;
use crate::paths::{Constraints, PathEngine, SearchMode, Verdict};

/// Offset of the leftmost occurrence of `u` as a factor of `v`.
pub fn is_subword<T: PartialEq>(u: &[T], v: &[T]) -> Option<usize> {
    if u.is_empty() {
        return Some(0);
    }
    if u.len() > v.len() {
        return None;
    }
    (0..=v.len() - u.len()).find(|&i| v[i..i + u.len()] == *u)
}

/// Positions of `u`'s letters in `v`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub positions: Vec<usize>,
}

/// Greedy leftmost embedding of `u` as a scattered subword of `v`.
pub fn is_scattered_subword<T: PartialEq>(u: &[T], v: &[T]) -> Option<Embedding> {
    let mut positions = Vec::with_capacity(u.len());
    let mut j = 0;
    for x in u {
        while j < v.len() && v[j] != *x {
            j += 1;
        }
        if j == v.len() {
            return None;
        }
        positions.push(j);
        j += 1;
    }
    Some(Embedding { positions })
}

/// A set of pairwise ⊑_sc-incomparable words kept in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain<T> {
    items: Vec<Vec<T>>,
}

impl<T> Default for Antichain<T> {
    fn default() -> Self {
        Self { items: Vec::new() }
    }
}

impl<T: Ord + Clone> Antichain<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[Vec<T>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Returns whether `x` was added.
    pub fn insert(&mut self, x: Vec<T>) -> bool {
        if self.items.iter().any(|s| is_scattered_subword(s, &x).is_some()) {
            return false;
        }
        self.items.retain(|s| is_scattered_subword(&x, s).is_none());
        let at = self.items.partition_point(|s| (s.len(), s) < (x.len(), &x));
        self.items.insert(at, x);
        true
    }

    pub fn with(mut self, x: Vec<T>) -> Self {
        self.insert(x);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "bound")]
pub enum Completeness {
    /// Every minimal accepting path is listed.
    Certified,
    /// Every minimal accepting path of length at most the bound is listed.
    UpTo(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPathSet {
    pub paths: Vec<PathWord>,
    pub completeness: Completeness,
}

impl MinimalPathSet {
    pub fn is_certified(&self) -> bool {
        self.completeness == Completeness::Certified
    }
}

/// Minimal accepting paths, found as repeated shortest accepting paths that dominate
/// none of the paths found so far. Each such path is minimal: anything strictly below
/// it is shorter and would have to dominate an earlier one.
pub fn minimal_accepting_paths(a: &GAutomaton, mode: SearchMode) -> Result<MinimalPathSet> {
    minimal_accepting_paths_with(&PathEngine::new(mode), a)
}

pub fn minimal_accepting_paths_with(engine: &PathEngine, a: &GAutomaton) -> Result<MinimalPathSet> {
    let mut found = Antichain::new();
    loop {
        let c = Constraints {
            avoid: found.items().iter().map(|p: &Vec<usize>| PathWord(p.clone())).collect(),
            ..Constraints::default()
        };
        match engine.find_accepting_path(a, &c)? {
            Verdict::Yes(f) => {
                let added = found.insert(f.path.0);
                debug_assert!(added);
            }
            verdict => {
                let completeness = match (verdict, engine.mode()) {
                    (Verdict::No, _) => Completeness::Certified,
                    (_, SearchMode::Bounded { max_len, .. }) => Completeness::UpTo(max_len),
                    (_, SearchMode::Exact) => Completeness::UpTo(found.items().last().map_or(0, |p| p.len())),
                };
                let paths = found.items().iter().map(|p| PathWord(p.clone())).collect();
                return Ok(MinimalPathSet { paths, completeness });
            }
        }
    }
}

/// `α = α_0 e_1 α_1 … e_n α_n` for a dominated `μ = e_1 … e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub embedding: Embedding,
    /// Half-open index ranges of the blocks `α_0 … α_n` inside `α`.
    pub blocks: Vec<(usize, usize)>,
}

impl Domination {
    pub fn block(&self, alpha: &PathWord, i: usize) -> PathWord {
        let (s, e) = self.blocks[i];
        alpha.slice(s..e)
    }

    pub fn block_words(&self, alpha: &PathWord) -> Vec<PathWord> {
        (0..self.blocks.len()).map(|i| self.block(alpha, i)).collect()
    }
}

/// Greedy leftmost block decomposition of `α` over `μ`, if `μ ⊑_sc α`.
pub fn dominates(alpha: &PathWord, mu: &PathWord) -> Option<Domination> {
    let embedding = is_scattered_subword(mu.edges(), alpha.edges())?;
    let mut blocks = Vec::with_capacity(mu.len() + 1);
    let mut start = 0;
    for &p in &embedding.positions {
        blocks.push((start, p));
        start = p + 1;
    }
    blocks.push((start, alpha.len()));
    Some(Domination { embedding, blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PumpConstant {
    pub n: usize,
    /// Set when the minimal set is not certified, so `n` is only a lower bound.
    pub lower_bound_only: bool,
}

/// `N = 1 + max |μ|` over the minimal accepting paths.
pub fn pump_constant(set: &MinimalPathSet) -> PumpConstant {
    PumpConstant {
        n: 1 + set.paths.iter().map(|p| p.len()).max().unwrap_or(0),
        lower_bound_only: !set.is_certified(),
    }
}
