//! The groups `G(μ, p)`, `H(μ, p)` and the homomorphism between them, read off from
//! explored members of `M(μ, p)`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{GAutomaton, PathWord, VertexId};
use crate::error::{Error, Result};
use crate::group::{ChoiceOfGenerators, SubgroupData, TargetGroupElement};
use crate::lattice::{canonical_basis, CombinationSolver, GroupVector, Index, LatticeSubgroup};
use crate::paths::{PathEngine, Verdict};
use crate::pumpable::{closed_walks, in_m, MonoidView, PumpWitness};

/// Exploration lengths tried in order, stopping once both subgroups have been
/// unchanged for `stall` consecutive rounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub lengths: Vec<usize>,
    pub stall: usize,
}

impl Schedule {
    pub fn up_to(max_len: usize) -> Self {
        Self { lengths: (1..=max_len.max(1)).collect(), stall: 2 }
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Self::up_to(6)
    }
}

/// One generator of `G(μ, p)` with its image in `H` and the loop it came from.
#[derive(Clone, Debug)]
pub struct GenPair {
    pub g: GroupVector,
    pub h: TargetGroupElement,
    pub witness: PumpWitness,
}

#[derive(Clone, Debug)]
pub struct Round {
    pub bound: usize,
    pub members: usize,
    pub g_sub: LatticeSubgroup,
    pub h_index: Index,
}

#[derive(Clone, Debug)]
pub struct ExtractedHom {
    pub mu: PathWord,
    pub p: VertexId,
    pub pairs: Vec<GenPair>,
    pub g_sub: LatticeSubgroup,
    pub h_gens: Vec<TargetGroupElement>,
    pub view: MonoidView,
    pub history: Vec<Round>,
    /// Whether the stall window was reached before the schedule ran out. This is a
    /// heuristic signal only.
    pub stabilized: bool,
    /// Bound after which neither subgroup changed.
    pub stable_since: usize,
}

impl ExtractedHom {
    pub fn bound(&self) -> usize {
        self.view.bound
    }

    pub fn h_subgroup(&self, rho: &ChoiceOfGenerators) -> Result<SubgroupData> {
        rho.group().subgroup(&self.h_gens)
    }

    /// Adds a certified loop found outside the explored window.
    pub fn augment(&mut self, a: &GAutomaton, rho: &ChoiceOfGenerators, witness: PumpWitness) -> Result<()> {
        let pair = pair_of(a, rho, witness)?;
        if !self.pairs.iter().any(|q| q.g == pair.g && q.h == pair.h) {
            let mut gens: Vec<GroupVector> = self.pairs.iter().map(|q| q.g.clone()).collect();
            gens.push(pair.g.clone());
            self.g_sub = canonical_basis(a.spec(), &gens)?;
            self.h_gens.push(pair.h.clone());
            self.pairs.push(pair);
        }
        Ok(())
    }
}

fn pair_of(a: &GAutomaton, rho: &ChoiceOfGenerators, witness: PumpWitness) -> Result<GenPair> {
    Ok(GenPair { g: a.value(&witness.sigma), h: rho.evaluate(a.spell(&witness.sigma).chars())?, witness })
}

/// Explores `M(μ, p)` along the schedule and records generator pairs `(ℓ_G(σ), ρ(ℓ_Σ(σ)))`.
pub fn extract(
    engine: &PathEngine,
    a: &GAutomaton,
    rho: &ChoiceOfGenerators,
    mu: &PathWord,
    p: VertexId,
    schedule: &Schedule,
) -> Result<ExtractedHom> {
    if schedule.lengths.is_empty() {
        return Err(Error::Usage("empty exploration schedule".into()));
    }
    let spec = a.spec();
    let mut members: Vec<PumpWitness> = Vec::new();
    let mut undecided = Vec::new();
    let mut pairs: Vec<GenPair> = Vec::new();
    let mut history: Vec<Round> = Vec::new();
    let mut done = 0;
    let mut same = 0;
    let mut stable_since = 0;
    let mut last: Option<(LatticeSubgroup, SubgroupData)> = None;
    let mut bound = 0;
    for &len in &schedule.lengths {
        bound = len;
        for sigma in closed_walks(a, p, len).into_iter().filter(|s| s.len() > done || (done == 0 && s.is_empty())) {
            match in_m(engine, a, &sigma, mu, p)? {
                Verdict::Yes(w) => {
                    if !sigma.is_empty() {
                        let pair = pair_of(a, rho, w.clone())?;
                        if !pairs.iter().any(|q| q.g == pair.g && q.h == pair.h) {
                            pairs.push(pair);
                        }
                    }
                    members.push(w);
                }
                Verdict::No => {}
                Verdict::Unknown(_) => undecided.push(sigma),
            }
        }
        done = len;
        let gens: Vec<GroupVector> = pairs.iter().map(|q| q.g.clone()).collect();
        let g_sub = canonical_basis(spec, &gens)?;
        let hs: Vec<TargetGroupElement> = pairs.iter().map(|q| q.h.clone()).collect();
        let h_sub = rho.group().subgroup(&hs)?;
        history.push(Round { bound: len, members: members.len(), g_sub: g_sub.clone(), h_index: h_sub.index() });
        let current = (g_sub, h_sub);
        if last.as_ref() == Some(&current) {
            same += 1;
        } else {
            same = 0;
            stable_since = len;
        }
        last = Some(current);
        if same >= schedule.stall {
            break;
        }
    }
    let (g_sub, _) = last.expect("at least one round");
    let h_gens = pairs.iter().map(|q| q.h.clone()).collect();
    Ok(ExtractedHom {
        mu: mu.clone(),
        p,
        pairs,
        g_sub,
        h_gens,
        view: MonoidView { mu: mu.clone(), p, bound, members, undecided },
        history,
        stabilized: same >= schedule.stall,
        stable_since,
    })
}

/// `f̃(g)`: write `g` over the generators and multiply the images. The image group is
/// abelian, so the order of the factors does not matter.
pub fn hom_apply(hom: &ExtractedHom, rho: &ChoiceOfGenerators, g: &GroupVector) -> Result<TargetGroupElement> {
    let gens: Vec<GroupVector> = hom.pairs.iter().map(|q| q.g.clone()).collect();
    let solver = CombinationSolver::new(hom.g_sub.spec(), &gens)?;
    let coeffs = solver.express(g)?.ok_or(Error::NotInSubgroup)?;
    Ok(apply_coeffs(hom, rho, &coeffs))
}

fn apply_coeffs(hom: &ExtractedHom, rho: &ChoiceOfGenerators, coeffs: &[num_bigint::BigInt]) -> TargetGroupElement {
    let h = rho.group();
    let parts: Vec<TargetGroupElement> = hom.pairs.iter().zip(coeffs).map(|(q, c)| h.pow(&q.h, c)).collect();
    h.product(&parts)
}

/// Index of `H(μ, p)` in `H`.
pub fn image_index(hom: &ExtractedHom, rho: &ChoiceOfGenerators) -> Result<Index> {
    rho.subgroup_index_in_h(&hom.h_gens)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub relations_checked: usize,
    pub commutations_checked: usize,
    pub pairs_available: usize,
    pub pairs_checked: usize,
    pub seed: u64,
}

/// Checks that `ρ∘ℓ_Σ` factors through `ℓ_G` on the explored loops: generator relations
/// map to `1_H`, images commute, and sampled loops with equal register value have equal
/// images. Any violation is an error naming the offending loops.
pub fn audit_well_defined(
    a: &GAutomaton,
    rho: &ChoiceOfGenerators,
    hom: &ExtractedHom,
    samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    let h = rho.group();
    let mut report = AuditReport { seed, ..AuditReport::default() };
    let violation = |x: &PathWord, y: &PathWord, hx: &TargetGroupElement, hy: &TargetGroupElement| {
        Error::WellDefinedness(format!(
            "loops {} and {} have equal register value but spell {} ≠ {}",
            a.format_path(x),
            a.format_path(y),
            h.display(hx),
            h.display(hy)
        ))
    };
    // Equal-value loops among the explored members.
    let mut by_value: BTreeMap<GroupVector, Vec<&PumpWitness>> = BTreeMap::new();
    for w in &hom.view.members {
        by_value.entry(a.value(&w.sigma)).or_default().push(w);
    }
    let mut pairs: Vec<(&PathWord, &PathWord)> = Vec::new();
    for ws in by_value.values() {
        for (i, x) in ws.iter().enumerate() {
            for y in &ws[i + 1..] {
                pairs.push((&x.sigma, &y.sigma));
            }
        }
    }
    report.pairs_available = pairs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<(&PathWord, &PathWord)> = if pairs.is_empty() {
        Vec::new()
    } else if pairs.len() >= samples {
        pairs.choose_multiple(&mut rng, samples).copied().collect()
    } else {
        (0..samples).map(|_| pairs[rng.gen_range(0..pairs.len())]).collect()
    };
    for (x, y) in chosen {
        let hx = rho.evaluate(a.spell(x).chars())?;
        let hy = rho.evaluate(a.spell(y).chars())?;
        if hx != hy {
            return Err(violation(x, y, &hx, &hy));
        }
        report.pairs_checked += 1;
    }
    // Relations among generators.
    let gens: Vec<GroupVector> = hom.pairs.iter().map(|q| q.g.clone()).collect();
    let solver = CombinationSolver::new(a.spec(), &gens)?;
    for r in solver.relations() {
        let img = apply_coeffs(hom, rho, &r);
        if !h.is_identity(&img) {
            let (i, j) = relation_witnesses(&r);
            let (x, y) = (&hom.pairs[i], &hom.pairs[j]);
            if x.g == y.g {
                return Err(violation(&x.witness.sigma, &y.witness.sigma, &x.h, &y.h));
            }
            return Err(Error::WellDefinedness(format!(
                "relation {:?} among register values of explored loops maps to {} instead of the identity",
                r.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                h.display(&img)
            )));
        }
        report.relations_checked += 1;
    }
    for (i, x) in hom.pairs.iter().enumerate() {
        for y in &hom.pairs[i + 1..] {
            if h.mul(&x.h, &y.h) != h.mul(&y.h, &x.h) {
                return Err(Error::WellDefinedness(format!(
                    "images of {} and {} do not commute",
                    a.format_path(&x.witness.sigma),
                    a.format_path(&y.witness.sigma)
                )));
            }
            report.commutations_checked += 1;
        }
    }
    Ok(report)
}

/// Two generator indices involved in a relation, for the error message.
fn relation_witnesses(r: &[num_bigint::BigInt]) -> (usize, usize) {
    use num_traits::Zero;
    let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
    (nz[0], *nz.get(1).unwrap_or(&nz[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::paths::SearchMode;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn engine() -> PathEngine {
        PathEngine::new(SearchMode::Exact)
    }

    fn el(t: i64, p: usize) -> TargetGroupElement {
        TargetGroupElement::Semidirect { translation: vec![t], point: p }
    }

    #[test]
    fn extraction_examples() {
        let e = engine();
        let a1 = fixtures::a1();
        let rho = fixtures::a1_rho();
        let hom = extract(&e, &a1, &rho, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        assert_eq!(hom.g_sub, LatticeSubgroup::whole(a1.spec()));
        assert_eq!(image_index(&hom, &rho).unwrap(), Index::finite(1));
        assert!(hom.stabilized);
        assert_eq!(hom.stable_since, 1);

        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let hom = extract(&e, &a2, &rho2, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        assert_eq!(hom.g_sub, LatticeSubgroup::whole(a2.spec()));
        assert_eq!(image_index(&hom, &rho2).unwrap(), Index::finite(2));
        let sub = hom.h_subgroup(&rho2).unwrap();
        assert!(sub.contains(&el(1, 0)).unwrap());
        assert!(!sub.contains(&el(0, 1)).unwrap());

        let a3 = fixtures::a3();
        let rho3 = fixtures::a3_rho();
        let hom = extract(&e, &a3, &rho3, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        assert_eq!(hom.g_sub, LatticeSubgroup::zero(a3.spec()));
        assert!(hom.h_gens.is_empty());
        assert_eq!(image_index(&hom, &rho3).unwrap(), Index::finite(1));
    }

    #[test]
    fn apply_examples() {
        let e = engine();
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let hom = extract(&e, &a2, &rho2, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        let z = |x: i64| a2.spec().element(vec![x]).unwrap();
        assert_eq!(hom_apply(&hom, &rho2, &z(3)).unwrap(), el(3, 0));
        assert_eq!(hom_apply(&hom, &rho2, &z(0)).unwrap(), rho2.group().identity());
        let loop3 = a2.parse_path("e_t0 e_t0 e_t0").unwrap();
        assert_eq!(rho2.evaluate(a2.spell(&loop3).chars()).unwrap(), el(3, 0));
        let a1 = fixtures::a1();
        let rho = fixtures::a1_rho();
        let hom = extract(&e, &a1, &rho, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        let m2 = a1.spec().element(vec![-2]).unwrap();
        assert_eq!(hom_apply(&hom, &rho, &m2).unwrap(), TargetGroupElement::Abelian(m2.clone()));
        for w in &hom.view.members {
            let lhs = hom_apply(&hom, &rho, &a1.value(&w.sigma)).unwrap();
            assert_eq!(lhs, rho.evaluate(a1.spell(&w.sigma).chars()).unwrap());
        }
    }

    #[test]
    fn audit_examples() {
        let e = engine();
        let a1 = fixtures::a1();
        let rho = fixtures::a1_rho();
        let hom = extract(&e, &a1, &rho, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        let r = audit_well_defined(&a1, &rho, &hom, 500, 7).unwrap();
        assert_eq!(r.pairs_checked, 500);
        let x = a1.parse_path("e_a e_A").unwrap();
        let y = a1.parse_path("e_A e_a").unwrap();
        assert_eq!(rho.evaluate(a1.spell(&x).chars()).unwrap(), rho.evaluate(a1.spell(&y).chars()).unwrap());

        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let hom = extract(&e, &a2, &rho2, &PathWord::empty(), 0, &Schedule::default()).unwrap();
        audit_well_defined(&a2, &rho2, &hom, 500, 7).unwrap();
        let x = a2.parse_path("e_s01 e_t1 e_s10").unwrap();
        let y = a2.parse_path("e_T0").unwrap();
        assert_eq!(a2.value(&x), a2.value(&y));
        assert_eq!(rho2.evaluate(a2.spell(&x).chars()).unwrap(), el(-1, 0));
        assert_eq!(rho2.evaluate(a2.spell(&y).chars()).unwrap(), el(-1, 0));

        let planted = fixtures::planted();
        let hom = extract(&e, &planted, &rho, &PathWord::empty(), 0, &Schedule::up_to(2)).unwrap();
        assert!(matches!(audit_well_defined(&planted, &rho, &hom, 50, 7), Err(Error::WellDefinedness(_))));
    }

    #[test]
    fn exploration_is_monotone() {
        let e = engine();
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let hom = extract(&e, &a2, &rho2, &PathWord::empty(), 1, &Schedule { lengths: vec![1, 2, 3, 4], stall: 9 }).unwrap();
        for w in hom.history.windows(2) {
            assert!(w[0].g_sub.is_subgroup_of(&w[1].g_sub));
            assert!(w[0].h_index >= w[1].h_index);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn homomorphism_law(c in proptest::collection::vec(-3i64..4, 4), d in proptest::collection::vec(-3i64..4, 4)) {
            let a2 = fixtures::a2();
            let rho2 = fixtures::a2_rho();
            let hom = extract(&engine(), &a2, &rho2, &PathWord::empty(), 0, &Schedule::up_to(3)).unwrap();
            let spec = a2.spec();
            let combo = |c: &[i64]| spec.sum(hom.pairs.iter().zip(c).map(|(q, &k)| spec.scale(&q.g, k)).collect::<Vec<_>>().iter());
            let (g, g2) = (combo(&c), combo(&d));
            let lhs = hom_apply(&hom, &rho2, &spec.add(&g, &g2)).unwrap();
            let rhs = rho2.group().mul(&hom_apply(&hom, &rho2, &g).unwrap(), &hom_apply(&hom, &rho2, &g2).unwrap());
            prop_assert_eq!(lhs, rhs);
            // A second solution through the explicit combination gives the same image.
            let coeffs: Vec<BigInt> = hom.pairs.iter().enumerate().map(|(i, _)| BigInt::from(*c.get(i).unwrap_or(&0))).collect();
            prop_assert_eq!(apply_coeffs(&hom, &rho2, &coeffs), hom_apply(&hom, &rho2, &g).unwrap());
        }
    }
}
