//! Locating each element of `H` in a coset `h1⁻¹·H(μ, p)·h2⁻¹`, covering a ball with
//! such cosets and picking a finite-index `H(μ, p)`.

use std::collections::BTreeMap;

use crate::automaton::{GAutomaton, PathWord, VertexId};
use crate::error::{Error, Result};
use crate::group::{ChoiceOfGenerators, TargetGroupElement, DEFAULT_BALL_CAP};
use crate::hom::{audit_well_defined, extract, image_index, AuditReport, ExtractedHom, Schedule};
use crate::lattice::Index;
use crate::paths::{PathEngine, SearchMode, Verdict};
use crate::pumpable::{shrink, PumpWitness};
use crate::wqo::{dominates, minimal_accepting_paths_with, pump_constant, Domination, MinimalPathSet, PumpConstant};

#[derive(Clone, Debug)]
pub struct CosetLocator {
    pub h: TargetGroupElement,
    pub v: String,
    pub v_bar: String,
    pub n: usize,
    /// Accepting path spelling `(v·v̄)^N`.
    pub alpha: PathWord,
    pub mu: PathWord,
    pub domination: Domination,
    /// Edge ranges of `α` reading the copies of `v`.
    pub omegas: Vec<(usize, usize)>,
    pub i: usize,
    pub j: usize,
    pub p: VertexId,
    pub omega1: PathWord,
    pub omega2: PathWord,
    pub h1: TargetGroupElement,
    pub h2: TargetGroupElement,
    /// Certificate that `ω1·ω_i·ω2` lies in `M(μ, p)`.
    pub certificate: PumpWitness,
    /// Set when the loop's image was missing from the explored generators and was added.
    pub augmented: bool,
    /// Set when the minimal path set was not certified complete.
    pub provisional: bool,
}

/// Shared state for locating many elements: the minimal path set and the
/// homomorphisms extracted so far, each audited once when first built.
pub struct CoverContext<'a> {
    pub a: &'a GAutomaton,
    pub rho: &'a ChoiceOfGenerators,
    pub engine: PathEngine,
    pub schedule: Schedule,
    pub audit_samples: usize,
    pub seed: u64,
    pub minimal: MinimalPathSet,
    pub pump: PumpConstant,
    pub homs: BTreeMap<(PathWord, VertexId), ExtractedHom>,
    pub audits: BTreeMap<(PathWord, VertexId), AuditReport>,
}

impl<'a> CoverContext<'a> {
    pub fn new(
        a: &'a GAutomaton,
        rho: &'a ChoiceOfGenerators,
        mode: SearchMode,
        schedule: Schedule,
        audit_samples: usize,
        seed: u64,
    ) -> Result<Self> {
        if a.alphabet().iter().any(|c| !rho.letters().contains(c)) || rho.letters().iter().any(|c| !a.alphabet().contains(c))
        {
            return Err(Error::Usage("automaton alphabet and generator letters differ".into()));
        }
        let engine = PathEngine::new(mode);
        let minimal = minimal_accepting_paths_with(&engine, a)?;
        let pump = pump_constant(&minimal);
        Ok(Self {
            a,
            rho,
            engine,
            schedule,
            audit_samples,
            seed,
            minimal,
            pump,
            homs: BTreeMap::new(),
            audits: BTreeMap::new(),
        })
    }

    /// The extracted homomorphism at `(μ, p)`, built and audited on first use.
    pub fn hom(&mut self, mu: &PathWord, p: VertexId) -> Result<&mut ExtractedHom> {
        let key = (mu.clone(), p);
        if !self.homs.contains_key(&key) {
            let hom = extract(&self.engine, self.a, self.rho, mu, p, &self.schedule)?;
            let report = audit_well_defined(self.a, self.rho, &hom, self.audit_samples, self.seed)?;
            self.audits.insert(key.clone(), report);
            self.homs.insert(key.clone(), hom);
        }
        Ok(self.homs.get_mut(&key).expect("inserted above"))
    }

    pub fn locate(&mut self, h: &TargetGroupElement, v: &str) -> Result<CosetLocator> {
        let a = self.a;
        let rho = self.rho;
        if rho.evaluate(v.chars())? != *h {
            return Err(Error::Usage(format!("word {v:?} does not represent {}", rho.group().display(h))));
        }
        let v_bar = rho.inverse_word(v)?;
        let n = self.pump.n;
        let word = format!("{v}{v_bar}").repeat(n);
        let alpha = match self.engine.accepts(a, &word)? {
            Verdict::Yes(p) => p,
            Verdict::No => {
                return Err(Error::LanguageContract(format!("{word:?} represents the identity but is rejected")))
            }
            Verdict::Unknown(r) => return Err(Error::ResourceGuard(format!("could not decide {word:?}: {r}"))),
        };
        // Edge index reading each letter.
        let letter_edges: Vec<usize> =
            alpha.edges().iter().enumerate().filter(|(_, &e)| a.edge(e).sigma.is_some()).map(|(i, _)| i).collect();
        let k = v.chars().count();
        let omegas: Vec<(usize, usize)> = (0..n)
            .map(|c| {
                let first = 2 * k * c;
                if k == 0 {
                    // ε sits before the first letter of its copy.
                    let at = letter_edges.get(first).copied().unwrap_or(alpha.len());
                    (at, at)
                } else {
                    (letter_edges[first], letter_edges[first + k - 1] + 1)
                }
            })
            .collect();
        let (mu, domination) = self
            .minimal
            .paths
            .iter()
            .find_map(|mu| dominates(&alpha, mu).map(|d| (mu.clone(), d)))
            .ok_or_else(|| {
                Error::Certification(format!(
                    "{} dominates none of the {} known minimal accepting paths",
                    a.format_path(&alpha),
                    self.minimal.paths.len()
                ))
            })?;
        if n <= mu.len() {
            return Err(Error::Certification(format!("pump constant {n} does not exceed |μ| = {}", mu.len())));
        }
        let (i, j) = omegas
            .iter()
            .enumerate()
            .find_map(|(i, &(s, e))| {
                domination.blocks.iter().position(|&(bs, be)| bs <= s && e <= be).map(|j| (i, j))
            })
            .ok_or_else(|| Error::Certification("no copy of v avoids the dominated edges".into()))?;
        let (bs, be) = domination.blocks[j];
        let p = a.vertex_sequence(&alpha, a.init())[bs];
        let sigma = alpha.slice(bs..be);
        let witness = PumpWitness {
            mu: mu.clone(),
            sigma,
            alpha: alpha.clone(),
            domination: domination.clone(),
            j,
            offset: 0,
        };
        witness.validate(a)?;
        let (s, e) = omegas[i];
        let shrunk = if witness.sigma.is_empty() {
            crate::pumpable::Shrunk { omega1: PathWord::empty(), omega2: PathWord::empty(), witness: witness.clone() }
        } else {
            shrink(a, &witness, s - bs..e - bs)?
        };
        let h1 = rho.evaluate(a.spell(&shrunk.omega1).chars())?;
        let h2 = rho.evaluate(a.spell(&shrunk.omega2).chars())?;
        let group = rho.group();
        let inner = group.product([&h1, h, &h2]);
        let provisional = !self.minimal.is_certified();
        let hom = self.hom(&mu, p)?;
        let mut augmented = false;
        if !hom.h_subgroup(rho)?.contains(&inner)? {
            if !shrunk.witness.sigma.is_empty() {
                hom.augment(a, rho, shrunk.witness.clone())?;
                augmented = true;
            }
            if !hom.h_subgroup(rho)?.contains(&inner)? {
                return Err(Error::Certification(format!(
                    "{} is not in H(μ, p) after adding its certified loop",
                    group.display(&inner)
                )));
            }
        }
        Ok(CosetLocator {
            h: h.clone(),
            v: v.to_string(),
            v_bar,
            n,
            alpha,
            mu,
            domination,
            omegas,
            i,
            j,
            p,
            omega1: shrunk.omega1,
            omega2: shrunk.omega2,
            h1,
            h2,
            certificate: shrunk.witness,
            augmented,
            provisional,
        })
    }

    /// Locates `h` using its shortlex-least word.
    pub fn locate_element(&mut self, h: &TargetGroupElement, radius: usize) -> Result<CosetLocator> {
        let ball = self.rho.ball(radius, DEFAULT_BALL_CAP)?;
        let (_, v) = ball.iter().find(|(x, _)| x == h).ok_or_else(|| {
            Error::Usage(format!("{} has no word of length at most {radius}", self.rho.group().display(h)))
        })?;
        self.locate(h, &v.clone())
    }
}

/// Mechanical re-check of a locator's invariants.
pub fn verify_locator(ctx: &mut CoverContext<'_>, loc: &CosetLocator) -> Result<()> {
    let a = ctx.a;
    let rho = ctx.rho;
    let fail = |what: &str| Err(Error::Certification(format!("locator for {:?}: {what}", loc.v)));
    let word = format!("{}{}", loc.v, loc.v_bar).repeat(loc.n);
    if !a.is_accepting(&loc.alpha) || a.spell(&loc.alpha) != word {
        return fail("α is not an accepting path for (v·v̄)^N");
    }
    if dominates(&loc.alpha, &loc.mu).as_ref() != Some(&loc.domination) {
        return fail("decomposition does not match");
    }
    if loc.n <= loc.mu.len() || loc.omegas.len() != loc.n {
        return fail("counting argument does not apply");
    }
    let (s, e) = loc.omegas[loc.i];
    if loc.domination.embedding.positions.iter().any(|&q| s <= q && q < e) {
        return fail("chosen copy of v meets a dominated edge");
    }
    let bound = a.vertex_count();
    if loc.omega1.len() >= bound || loc.omega2.len() >= bound {
        return fail("flanks are too long");
    }
    loc.certificate.validate(a)?;
    let omega = loc.alpha.slice(s..e);
    if loc.certificate.sigma != loc.omega1.concat(&omega).concat(&loc.omega2) {
        return fail("certificate is for a different loop");
    }
    let inner = rho.group().product([&loc.h1, &loc.h, &loc.h2]);
    let hom = ctx.hom(&loc.mu, loc.p)?;
    if !hom.h_subgroup(rho)?.contains(&inner)? {
        return fail("h1·h·h2 is not in H(μ, p)");
    }
    Ok(())
}

/// Cosets used to cover a ball.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub radius: usize,
    pub locators: Vec<CosetLocator>,
    /// Distinct `(μ, p, h1, h2)` appearing among the locators.
    pub cosets: Vec<(PathWord, VertexId, TargetGroupElement, TargetGroupElement)>,
    pub provisional: bool,
}

impl CoverReport {
    pub fn subgroups(&self) -> Vec<(PathWord, VertexId)> {
        let mut out: Vec<(PathWord, VertexId)> = self.cosets.iter().map(|(m, p, _, _)| (m.clone(), *p)).collect();
        out.sort_by(|x, y| (x.0.shortlex_key(), x.1).cmp(&(y.0.shortlex_key(), y.1)));
        out.dedup();
        out
    }
}

pub fn cover_ball(ctx: &mut CoverContext<'_>, radius: usize) -> Result<CoverReport> {
    let ball = ctx.rho.ball(radius, DEFAULT_BALL_CAP)?;
    let mut locators = Vec::with_capacity(ball.len());
    for (h, v) in &ball {
        locators.push(ctx.locate(h, v)?);
    }
    // Generators may have grown while covering; re-check every locator at the end.
    for loc in &locators {
        verify_locator(ctx, loc)?;
    }
    let mut cosets: Vec<_> = locators.iter().map(|l| (l.mu.clone(), l.p, l.h1.clone(), l.h2.clone())).collect();
    cosets.sort();
    cosets.dedup();
    let provisional = !ctx.minimal.is_certified();
    Ok(CoverReport { radius, locators, cosets, provisional })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeumannChoice {
    pub mu: PathWord,
    pub p: VertexId,
    pub index: Index,
}

/// The `(μ, p)` of the cover with the smallest finite index of `H(μ, p)`, ties broken
/// by `(μ, p)` order. `None` when every explored image has infinite index.
pub fn neumann_select(ctx: &mut CoverContext<'_>, cover: &CoverReport) -> Result<Option<NeumannChoice>> {
    let mut best: Option<NeumannChoice> = None;
    for (mu, p) in cover.subgroups() {
        let rho = ctx.rho;
        let index = image_index(ctx.hom(&mu, p)?, rho)?;
        if !index.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|b| index < b.index) {
            best = Some(NeumannChoice { mu, p, index });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ctx<'a>(a: &'a GAutomaton, rho: &'a ChoiceOfGenerators) -> CoverContext<'a> {
        CoverContext::new(a, rho, SearchMode::Exact, Schedule::default(), 200, 1).unwrap()
    }

    fn el(t: i64, p: usize) -> TargetGroupElement {
        TargetGroupElement::Semidirect { translation: vec![t], point: p }
    }

    #[test]
    fn locator_examples() {
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let mut c = ctx(&a2, &rho2);
        let loc = c.locate(&el(1, 0), "t").unwrap();
        assert_eq!((loc.h1.clone(), loc.h2.clone()), (el(0, 0), el(0, 0)));
        assert_eq!((loc.mu.clone(), loc.p), (PathWord::empty(), 0));
        verify_locator(&mut c, &loc).unwrap();
        let loc = c.locate(&el(0, 1), "s").unwrap();
        assert!(loc.omega1.len() < 2 && loc.omega2.len() < 2);
        assert_eq!(loc.h2, el(0, 1));
        verify_locator(&mut c, &loc).unwrap();

        let a1 = fixtures::a1();
        let rho1 = fixtures::a1_rho();
        let mut c = ctx(&a1, &rho1);
        let one = TargetGroupElement::Abelian(a1.spec().element(vec![1]).unwrap());
        let loc = c.locate(&one, "a").unwrap();
        assert_eq!(loc.h1, rho1.group().identity());
        assert_eq!(loc.h2, rho1.group().identity());
    }

    #[test]
    fn cover_examples() {
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let mut c = ctx(&a2, &rho2);
        let cover = cover_ball(&mut c, 4).unwrap();
        assert_eq!(cover.locators.len(), rho2.ball(4, 1000).unwrap().len());
        let pick = neumann_select(&mut c, &cover).unwrap().unwrap();
        assert_eq!((pick.mu, pick.p, pick.index), (PathWord::empty(), 0, Index::finite(2)));

        let a1 = fixtures::a1();
        let rho1 = fixtures::a1_rho();
        let mut c = ctx(&a1, &rho1);
        let cover = cover_ball(&mut c, 5).unwrap();
        assert_eq!(cover.subgroups(), vec![(PathWord::empty(), 0)]);
        assert_eq!(neumann_select(&mut c, &cover).unwrap().unwrap().index, Index::finite(1));

        let a3 = fixtures::a3();
        let rho3 = fixtures::a3_rho();
        let mut c = ctx(&a3, &rho3);
        let cover = cover_ball(&mut c, 0).unwrap();
        assert_eq!(cover.locators.len(), 1);
        assert_eq!(neumann_select(&mut c, &cover).unwrap().unwrap().index, Index::finite(1));
    }

    #[test]
    fn covers_grow_with_radius() {
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let mut c = ctx(&a2, &rho2);
        let small = cover_ball(&mut c, 2).unwrap();
        let large = cover_ball(&mut c, 3).unwrap();
        for loc in &small.locators {
            verify_locator(&mut c, loc).unwrap();
            assert!(large.locators.iter().any(|l| l.h == loc.h));
        }
    }

    #[test]
    fn planted_fixture_fails_the_audit() {
        let planted = fixtures::planted();
        let rho = fixtures::a1_rho();
        let mut c = ctx(&planted, &rho);
        assert!(matches!(cover_ball(&mut c, 2), Err(Error::WellDefinedness(_))));
    }
}
