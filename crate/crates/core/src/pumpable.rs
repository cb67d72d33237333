//! Pumpable loops, the monoids `M(μ, p)` and constructive membership certificates.

use std::ops::Range;

use serde::Serialize;

use crate::automaton::{GAutomaton, PathWord, VertexId};
use crate::error::{Error, Result};
use crate::paths::{Constraints, PathEngine, SearchMode, Verdict};
use crate::wqo::{is_scattered_subword, is_subword, Domination, Embedding};

/// An accepting path `α = α_0 e_1 α_1 … e_n α_n` dominating `μ` with `σ` sitting
/// contiguously inside `α_j` at `offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpWitness {
    pub mu: PathWord,
    pub sigma: PathWord,
    pub alpha: PathWord,
    pub domination: Domination,
    pub j: usize,
    pub offset: usize,
}

impl PumpWitness {
    /// Assembles `α` from its blocks.
    pub fn from_blocks(mu: &PathWord, blocks: Vec<PathWord>, j: usize, offset: usize, sigma: PathWord) -> Self {
        debug_assert_eq!(blocks.len(), mu.len() + 1);
        let mut alpha = Vec::new();
        let mut positions = Vec::with_capacity(mu.len());
        let mut ranges = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.iter().enumerate() {
            ranges.push((alpha.len(), alpha.len() + b.len()));
            alpha.extend_from_slice(b.edges());
            if let Some(&e) = mu.edges().get(i) {
                positions.push(alpha.len());
                alpha.push(e);
            }
        }
        PumpWitness {
            mu: mu.clone(),
            sigma,
            alpha: PathWord(alpha),
            domination: Domination { embedding: Embedding { positions }, blocks: ranges },
            j,
            offset,
        }
    }

    /// The witness for `σ = ε` carried by `μ` itself.
    pub fn trivial(mu: &PathWord) -> Self {
        Self::from_blocks(mu, vec![PathWord::empty(); mu.len() + 1], 0, 0, PathWord::empty())
    }

    pub fn blocks(&self) -> Vec<PathWord> {
        self.domination.block_words(&self.alpha)
    }

    /// Base vertex of `σ`, when nonempty.
    pub fn base(&self, a: &GAutomaton) -> Option<VertexId> {
        a.source(&self.sigma)
    }

    pub fn validate(&self, a: &GAutomaton) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Certification(format!(
                "witness {} for {} in {}: {what}",
                a.format_path(&self.alpha),
                a.format_path(&self.sigma),
                a.format_path(&self.mu)
            )))
        };
        if !a.is_accepting(&self.alpha) {
            return fail("not accepting");
        }
        let d = &self.domination;
        if d.embedding.positions.len() != self.mu.len() || d.blocks.len() != self.mu.len() + 1 {
            return fail("decomposition has the wrong shape");
        }
        let mut at = 0;
        for (i, &(s, e)) in d.blocks.iter().enumerate() {
            if s != at || e < s || e > self.alpha.len() {
                return fail("blocks do not tile the path");
            }
            at = e;
            if let Some(&p) = d.embedding.positions.get(i) {
                if p != e || self.alpha.edges()[p] != self.mu.edges()[i] {
                    return fail("decomposition does not follow the dominated path");
                }
                at = p + 1;
            }
        }
        if at != self.alpha.len() {
            return fail("blocks do not tile the path");
        }
        let Some(&(s, e)) = d.blocks.get(self.j) else { return fail("block index out of range") };
        let from = s + self.offset;
        if from + self.sigma.len() > e || self.alpha.edges()[from..from + self.sigma.len()] != *self.sigma.edges() {
            return fail("loop is not inside its block");
        }
        Ok(())
    }
}

/// Is `σ` pumpable in `μ`? Blocks are tried from the lowest index up.
pub fn is_pumpable(engine: &PathEngine, a: &GAutomaton, sigma: &PathWord, mu: &PathWord) -> Result<Verdict<PumpWitness>> {
    if !a.is_accepting(mu) {
        return Err(Error::Usage(format!("{} is not an accepting path", a.format_path(mu))));
    }
    if sigma.is_empty() {
        return Ok(Verdict::Yes(PumpWitness::trivial(mu)));
    }
    if !a.is_closed(sigma) {
        return Err(Error::Usage(format!("{} is not a closed path", a.format_path(sigma))));
    }
    let mut unknown = None;
    for j in 0..=mu.len() {
        let c = Constraints::dominating(mu, Some((sigma, j)));
        match engine.find_accepting_path(a, &c)? {
            Verdict::Yes(f) => {
                let mut positions = f.milestone_starts.clone();
                let sigma_at = positions.remove(j);
                let mut ranges = Vec::with_capacity(mu.len() + 1);
                let mut start = 0;
                for &p in &positions {
                    ranges.push((start, p));
                    start = p + 1;
                }
                ranges.push((start, f.path.len()));
                let w = PumpWitness {
                    mu: mu.clone(),
                    sigma: sigma.clone(),
                    offset: sigma_at - ranges[j].0,
                    alpha: f.path,
                    domination: Domination { embedding: Embedding { positions }, blocks: ranges },
                    j,
                };
                w.validate(a)?;
                return Ok(Verdict::Yes(w));
            }
            Verdict::No => {}
            Verdict::Unknown(r) => {
                unknown.get_or_insert(r);
            }
        }
    }
    Ok(unknown.map_or(Verdict::No, Verdict::Unknown))
}

/// Membership in `M(μ, p)`: `ε`, or a loop at `p` pumpable in `μ`.
pub fn in_m(engine: &PathEngine, a: &GAutomaton, sigma: &PathWord, mu: &PathWord, p: VertexId) -> Result<Verdict<PumpWitness>> {
    if sigma.is_empty() {
        return is_pumpable(engine, a, sigma, mu);
    }
    if !a.is_closed_at(sigma, p) {
        return Ok(Verdict::No);
    }
    is_pumpable(engine, a, sigma, mu)
}

/// The members of `M(μ, p)` of length at most `bound`. Only a finite window of the
/// monoid; loops the engine could not decide are listed separately.
#[derive(Clone, Debug, Serialize)]
pub struct MonoidView {
    pub mu: PathWord,
    pub p: VertexId,
    pub bound: usize,
    pub members: Vec<PumpWitness>,
    pub undecided: Vec<PathWord>,
}

impl MonoidView {
    pub fn loops(&self) -> impl Iterator<Item = &PathWord> {
        self.members.iter().map(|w| &w.sigma)
    }

    pub fn contains(&self, sigma: &PathWord) -> bool {
        self.loops().any(|s| s == sigma)
    }
}

/// Closed walks at `p` of length at most `bound`, in shortlex order.
pub fn closed_walks(a: &GAutomaton, p: VertexId, bound: usize) -> Vec<PathWord> {
    let mut out = vec![PathWord::empty()];
    let mut level: Vec<(VertexId, Vec<usize>)> = vec![(p, Vec::new())];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (v, w) in &level {
            for e in a.out_edges(*v) {
                let mut x = w.clone();
                x.push(e);
                next.push((a.edge(e).dst, x));
            }
        }
        next.sort_by(|x, y| x.1.cmp(&y.1));
        out.extend(next.iter().filter(|(v, _)| *v == p).map(|(_, w)| PathWord(w.clone())));
        level = next;
    }
    out
}

pub fn enumerate_m(engine: &PathEngine, a: &GAutomaton, mu: &PathWord, p: VertexId, bound: usize) -> Result<MonoidView> {
    let mut members = Vec::new();
    let mut undecided = Vec::new();
    for sigma in closed_walks(a, p, bound) {
        match in_m(engine, a, &sigma, mu, p)? {
            Verdict::Yes(w) => members.push(w),
            Verdict::No => {}
            Verdict::Unknown(_) => undecided.push(sigma),
        }
    }
    Ok(MonoidView { mu: mu.clone(), p, bound, members, undecided })
}

/// A witness for `σ1·σ2` built from witnesses for `σ1` and `σ2` by merging the two
/// accepting paths block by block and moving `σ2` next to `σ1`.
pub fn concat_witness(a: &GAutomaton, w1: &PumpWitness, w2: &PumpWitness) -> Result<PumpWitness> {
    if w1.mu != w2.mu {
        return Err(Error::Usage("witnesses are for different dominated paths".into()));
    }
    if w2.sigma.is_empty() {
        return Ok(w1.clone());
    }
    if w1.sigma.is_empty() {
        return Ok(w2.clone());
    }
    if a.source(&w1.sigma) != a.source(&w2.sigma) {
        return Err(Error::Usage("loops have different base vertices".into()));
    }
    let alpha = w1.blocks();
    let beta = w2.blocks();
    let (i, j) = (w1.j, w2.j);
    let s1 = &w1.sigma;
    let s2 = &w2.sigma;
    let split = |b: &PathWord, off: usize, len: usize| (b.slice(0..off), b.slice(off + len..b.len()));
    let (a_pre, a_post) = split(&alpha[i], w1.offset, s1.len());
    let (b_pre, b_post) = split(&beta[j], w2.offset, s2.len());
    let cat = |parts: &[&PathWord]| PathWord(parts.iter().flat_map(|p| p.edges().iter().copied()).collect());
    let mut blocks: Vec<PathWord> = alpha.iter().zip(&beta).map(|(x, y)| x.concat(y)).collect();
    let (k, offset) = if i <= j {
        if i == j {
            blocks[i] = cat(&[&a_pre, s1, s2, &a_post, &b_pre, &b_post]);
        } else {
            blocks[i] = cat(&[&a_pre, s1, s2, &a_post, &beta[i]]);
            blocks[j] = cat(&[&alpha[j], &b_pre, &b_post]);
        }
        (i, a_pre.len())
    } else {
        blocks[j] = cat(&[&alpha[j], &b_pre, s1, s2, &b_post]);
        blocks[i] = cat(&[&a_pre, &a_post, &beta[i]]);
        (j, alpha[j].len() + b_pre.len())
    };
    let w = PumpWitness::from_blocks(&w1.mu, blocks, k, offset, s1.concat(s2));
    w.validate(a)?;
    Ok(w)
}

/// A witness for a loop `τ ⊑_sc σ` at the base of `σ`, obtained from the squared
/// witness by trading `σσ` for `τ·σ_0² e'_1 σ_1² … e'_k σ_k²`.
pub fn downward_witness(a: &GAutomaton, w: &PumpWitness, tau: &PathWord) -> Result<PumpWitness> {
    if w.sigma.is_empty() {
        return if tau.is_empty() {
            Ok(w.clone())
        } else {
            Err(Error::Usage("only ε lies below ε".into()))
        };
    }
    let p = a.source(&w.sigma).expect("nonempty loop");
    if !tau.is_empty() && !a.is_closed_at(tau, p) {
        return Err(Error::Usage(format!("{} is not closed at {}", a.format_path(tau), a.vertices()[p])));
    }
    let Some(emb) = is_scattered_subword(tau.edges(), w.sigma.edges()) else {
        return Err(Error::Usage(format!("{} is not below {}", a.format_path(tau), a.format_path(&w.sigma))));
    };
    let sq = concat_witness(a, w, w)?;
    let sigma = w.sigma.edges();
    let mut tail: Vec<usize> = Vec::with_capacity(2 * sigma.len());
    let mut start = 0;
    for (idx, &q) in emb.positions.iter().enumerate() {
        let piece = &sigma[start..q];
        tail.extend_from_slice(piece);
        tail.extend_from_slice(piece);
        tail.push(tau.edges()[idx]);
        start = q + 1;
    }
    let piece = &sigma[start..];
    tail.extend_from_slice(piece);
    tail.extend_from_slice(piece);
    let mut blocks = sq.blocks();
    let b = &blocks[sq.j];
    let mut merged = b.edges()[..sq.offset].to_vec();
    merged.extend_from_slice(tau.edges());
    merged.extend_from_slice(&tail);
    merged.extend_from_slice(&b.edges()[sq.offset + sq.sigma.len()..]);
    blocks[sq.j] = PathWord(merged);
    let out = PumpWitness::from_blocks(&w.mu, blocks, sq.j, sq.offset, tau.clone());
    out.validate(a)?;
    Ok(out)
}

/// Flanks `(ω1, ω2)` around a factor `ω` of a member `σ`, each shorter than the
/// number of vertices, with `ω1·ω·ω2` still a member.
#[derive(Clone, Debug, Serialize)]
pub struct Shrunk {
    pub omega1: PathWord,
    pub omega2: PathWord,
    pub witness: PumpWitness,
}

/// Removes the first closed subpath of `w` (started at `from`), if any.
fn cut_first_cycle(a: &GAutomaton, w: &PathWord, from: VertexId) -> Option<PathWord> {
    let seq = a.vertex_sequence(w, from);
    for k in 1..seq.len() {
        if let Some(i) = seq[..k].iter().position(|&v| v == seq[k]) {
            let mut e = w.edges()[..i].to_vec();
            e.extend_from_slice(&w.edges()[k..]);
            return Some(PathWord(e));
        }
    }
    None
}

/// Shrinks the flanks of `ω = σ[range]` by deleting closed subpaths, re-certifying each
/// intermediate loop from the witness of `σ`.
pub fn shrink(a: &GAutomaton, w: &PumpWitness, range: Range<usize>) -> Result<Shrunk> {
    let sigma = &w.sigma;
    if range.start > range.end || range.end > sigma.len() {
        return Err(Error::Usage("factor range outside the loop".into()));
    }
    if sigma.is_empty() {
        return Ok(Shrunk { omega1: PathWord::empty(), omega2: PathWord::empty(), witness: w.clone() });
    }
    let p = a.source(sigma).expect("nonempty loop");
    let omega = sigma.slice(range.clone());
    let mut left = sigma.slice(0..range.start);
    let mut right = sigma.slice(range.end..sigma.len());
    let mid = a.vertex_sequence(sigma, p)[range.end];
    let mut witness = w.clone();
    let mut transcript = vec![a.format_path(sigma)];
    loop {
        let next = if let Some(l) = cut_first_cycle(a, &left, p) {
            left = l;
            true
        } else if let Some(r) = cut_first_cycle(a, &right, mid) {
            right = r;
            true
        } else {
            false
        };
        if !next {
            break;
        }
        let tau = left.concat(&omega).concat(&right);
        transcript.push(a.format_path(&tau));
        witness = downward_witness(a, w, &tau).map_err(|e| {
            Error::Certification(format!("shrinking {} failed: {e}", transcript.join(" -> ")))
        })?;
    }
    let n = a.vertex_count();
    if left.len() >= n || right.len() >= n {
        return Err(Error::Certification(format!("flanks still long after {}", transcript.join(" -> "))));
    }
    Ok(Shrunk { omega1: left, omega2: right, witness })
}

/// [`shrink`] for the leftmost occurrence of `omega` in `σ`.
pub fn shrink_around(a: &GAutomaton, w: &PumpWitness, omega: &PathWord) -> Result<Shrunk> {
    let Some(at) = is_subword(omega.edges(), w.sigma.edges()) else {
        return Err(Error::Usage(format!("{} is not a factor of {}", a.format_path(omega), a.format_path(&w.sigma))));
    };
    shrink(a, w, at..at + omega.len())
}

/// Convenience wrapper with a fresh engine.
pub fn pumpable(a: &GAutomaton, sigma: &PathWord, mu: &PathWord, mode: SearchMode) -> Result<Verdict<PumpWitness>> {
    is_pumpable(&PathEngine::new(mode), a, sigma, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    const EXACT: SearchMode = SearchMode::Exact;

    fn path(a: &GAutomaton, s: &str) -> PathWord {
        a.parse_path(s).unwrap()
    }

    fn witness(a: &GAutomaton, sigma: &str, mu: &str) -> PumpWitness {
        pumpable(a, &path(a, sigma), &path(a, mu), EXACT).unwrap().witness().cloned().unwrap()
    }

    /// Independent membership oracle: some accepting path up to `max` has `μ`'s edges
    /// at increasing positions with `σ` contiguous in the right block.
    fn brute_pumpable(a: &GAutomaton, sigma: &PathWord, mu: &PathWord, max: usize) -> bool {
        if sigma.is_empty() {
            return true;
        }
        let mut stack = vec![(a.init(), Vec::<usize>::new())];
        while let Some((v, p)) = stack.pop() {
            let pw = PathWord(p.clone());
            if a.is_accepting(&pw) && brute_has_pump(&p, sigma.edges(), mu.edges()) {
                return true;
            }
            if p.len() < max {
                for e in a.out_edges(v) {
                    let mut q = p.clone();
                    q.push(e);
                    stack.push((a.edge(e).dst, q));
                }
            }
        }
        false
    }

    fn brute_has_pump(alpha: &[usize], sigma: &[usize], mu: &[usize]) -> bool {
        // Try every placement of σ and check μ embeds around it.
        (0..=alpha.len().saturating_sub(sigma.len())).any(|s| {
            alpha.len() >= sigma.len()
                && alpha[s..s + sigma.len()] == *sigma
                && (0..=mu.len()).any(|j| {
                    is_scattered_subword(&mu[..j], &alpha[..s]).is_some()
                        && is_scattered_subword(&mu[j..], &alpha[s + sigma.len()..]).is_some()
                })
        })
    }

    #[test]
    fn pumpable_examples() {
        let a1 = fixtures::a1();
        let w = witness(&a1, "e_a e_A", "ε");
        assert_eq!(w.alpha, path(&a1, "e_a e_A"));
        let w = witness(&a1, "e_a", "ε");
        assert_eq!(w.alpha, path(&a1, "e_a e_A"));
        let a5 = fixtures::a5();
        assert_eq!(pumpable(&a5, &path(&a5, "e_a"), &PathWord::empty(), EXACT).unwrap(), Verdict::No);
    }

    #[test]
    fn membership_examples() {
        let e = PathEngine::new(EXACT);
        let a1 = fixtures::a1();
        assert!(in_m(&e, &a1, &PathWord::empty(), &PathWord::empty(), 0).unwrap().is_yes());
        let a2 = fixtures::a2();
        let v = in_m(&e, &a2, &path(&a2, "e_s01 e_t1 e_s10"), &PathWord::empty(), 0).unwrap();
        assert_eq!(v.witness().unwrap().alpha, path(&a2, "e_t0 e_s01 e_t1 e_s10"));
        assert!(in_m(&e, &a2, &path(&a2, "e_t1"), &PathWord::empty(), 0).unwrap().is_no());
        let a5 = fixtures::a5();
        assert!(in_m(&e, &a5, &path(&a5, "e_a"), &PathWord::empty(), 0).unwrap().is_no());
    }

    #[test]
    fn enumeration_examples() {
        let e = PathEngine::new(EXACT);
        let a5 = fixtures::a5();
        let m = enumerate_m(&e, &a5, &PathWord::empty(), 0, 4).unwrap();
        assert_eq!(m.loops().cloned().collect::<Vec<_>>(), vec![PathWord::empty()]);
        let a1 = fixtures::a1();
        let m = enumerate_m(&e, &a1, &PathWord::empty(), 0, 2).unwrap();
        let expect: Vec<PathWord> =
            ["ε", "e_a", "e_A", "e_a e_a", "e_a e_A", "e_A e_a", "e_A e_A"].iter().map(|s| path(&a1, s)).collect();
        assert_eq!(m.loops().cloned().collect::<Vec<_>>(), expect);
        let a2 = fixtures::a2();
        let m = enumerate_m(&e, &a2, &PathWord::empty(), 0, 2).unwrap();
        for s in ["e_t0", "e_T0", "e_s01 e_s10"] {
            assert!(m.contains(&path(&a2, s)), "{s}");
        }
        for sigma in closed_walks(&a2, 0, 2) {
            assert_eq!(m.contains(&sigma), brute_pumpable(&a2, &sigma, &PathWord::empty(), 6));
        }
        for w in &m.members {
            w.validate(&a2).unwrap();
            assert!(a2.spec().is_zero(&a2.spec().sum(w.blocks().iter().map(|b| a2.value(b)).collect::<Vec<_>>().iter())));
        }
    }

    #[test]
    fn concat_examples() {
        let a1 = fixtures::a1();
        let w1 = witness(&a1, "e_a", "ε");
        let w2 = witness(&a1, "e_A", "ε");
        assert_eq!(w2.alpha, path(&a1, "e_a e_A"));
        let w = concat_witness(&a1, &w1, &w2).unwrap();
        assert_eq!(w.sigma, path(&a1, "e_a e_A"));
        assert_eq!(w.alpha, path(&a1, "e_a e_A e_A e_a"));
        let eps = PumpWitness::trivial(&PathWord::empty());
        assert_eq!(concat_witness(&a1, &w1, &eps).unwrap(), w1);
        assert_eq!(concat_witness(&a1, &eps, &eps).unwrap(), eps);
    }

    #[test]
    fn concat_across_blocks() {
        let a4 = fixtures::a4();
        let mu = path(&a4, "f1");
        let w1 = PumpWitness::from_blocks(&mu, vec![PathWord::empty(), path(&a4, "e_a e_A")], 1, 0, path(&a4, "e_a"));
        let w2 = PumpWitness::from_blocks(&mu, vec![PathWord::empty(), path(&a4, "e_A e_a")], 1, 1, path(&a4, "e_a"));
        w1.validate(&a4).unwrap();
        w2.validate(&a4).unwrap();
        let w = concat_witness(&a4, &w1, &w2).unwrap();
        assert_eq!(w.alpha, path(&a4, "f1 e_a e_a e_A e_A"));
    }

    #[test]
    fn downward_examples() {
        let a1 = fixtures::a1();
        let w = witness(&a1, "e_a e_A", "ε");
        assert_eq!(downward_witness(&a1, &w, &w.sigma).unwrap().sigma, w.sigma);
        assert!(downward_witness(&a1, &w, &PathWord::empty()).unwrap().sigma.is_empty());
        let w = witness(&a1, "e_a e_A e_A e_a", "ε");
        let d = downward_witness(&a1, &w, &path(&a1, "e_a e_a")).unwrap();
        assert!(a1.spec().is_zero(&a1.value(&d.alpha)));
        assert_eq!(d.sigma, path(&a1, "e_a e_a"));
    }

    #[test]
    fn shrink_examples() {
        let a1 = fixtures::a1();
        let w = witness(&a1, "e_a e_A e_a e_A", "ε");
        let s = shrink(&a1, &w, 0..4).unwrap();
        assert!(s.omega1.is_empty() && s.omega2.is_empty());
        let s = shrink(&a1, &w, 1..3).unwrap();
        assert!(s.omega1.is_empty() && s.omega2.is_empty());
        assert_eq!(s.witness.sigma, path(&a1, "e_A e_a"));
        let a2 = fixtures::a2();
        let w = witness(&a2, "e_s01 e_t1 e_s10 e_t0", "ε");
        let s = shrink_around(&a2, &w, &path(&a2, "e_t1 e_s10")).unwrap();
        assert!(s.omega1.len() < 2 && s.omega2.len() < 2);
        assert_eq!((s.omega1.clone(), s.omega2.clone()), (path(&a2, "e_s01"), PathWord::empty()));
        let e = PathEngine::new(EXACT);
        assert!(in_m(&e, &a2, &s.witness.sigma, &PathWord::empty(), 0).unwrap().is_yes());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn monoid_and_downward_closure(i in 0usize..64, j in 0usize..64, mask in any::<u32>()) {
            let a2 = fixtures::a2();
            let e = PathEngine::new(EXACT);
            let m = enumerate_m(&e, &a2, &PathWord::empty(), 0, 3).unwrap();
            let w1 = &m.members[i % m.members.len()];
            let w2 = &m.members[j % m.members.len()];
            let w = concat_witness(&a2, w1, w2).unwrap();
            prop_assert_eq!(&w.sigma, &w1.sigma.concat(&w2.sigma));
            prop_assert!(in_m(&e, &a2, &w.sigma, &PathWord::empty(), 0).unwrap().is_yes());
            let tau: Vec<usize> = w.sigma.edges().iter().enumerate().filter(|(k, _)| mask >> (k % 32) & 1 == 1).map(|(_, &x)| x).collect();
            let tau = PathWord(tau);
            if tau.is_empty() || (a2.is_path(&tau) && a2.is_closed_at(&tau, 0)) {
                let d = downward_witness(&a2, &w, &tau).unwrap();
                prop_assert_eq!(&d.sigma, &tau);
                prop_assert!(in_m(&e, &a2, &tau, &PathWord::empty(), 0).unwrap().is_yes());
            }
        }

        #[test]
        fn pumpable_matches_brute_force(seed in any::<u64>()) {
            let a = fixtures::random(seed, 3, 5, 1);
            let e = PathEngine::new(EXACT);
            let Some(mu) = crate::wqo::minimal_accepting_paths(&a, EXACT).unwrap().paths.into_iter().next() else {
                return Ok(());
            };
            for p in 0..a.vertex_count() {
                for sigma in closed_walks(&a, p, 2) {
                    let v = in_m(&e, &a, &sigma, &mu, p).unwrap();
                    if brute_pumpable(&a, &sigma, &mu, 7) {
                        prop_assert!(v.is_yes());
                    }
                    if let Verdict::Yes(w) = v {
                        w.validate(&a).unwrap();
                        prop_assert!(crate::paths::is_promising(&a, &sigma, EXACT).unwrap().is_yes());
                    }
                }
            }
        }
    }
}
