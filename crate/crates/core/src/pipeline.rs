//! End-to-end run: minimal paths, homomorphism extraction with audits, ball cover,
//! finite-index selection and a check of the word-problem contract. Reports are JSON.

use serde::Serialize;
use serde_json::{json, Value};

use crate::automaton::{GAutomaton, PathWord, VertexId};
use crate::cover::{cover_ball, neumann_select, CosetLocator, CoverContext, CoverReport, NeumannChoice};
use crate::error::{Error, Result};
use crate::group::{ChoiceOfGenerators, TargetGroupElement};
use crate::hom::{image_index, AuditReport, ExtractedHom, Schedule};
use crate::lattice::LatticeSubgroup;
use crate::paths::{LinearSetFamily, PathEngine, SearchMode, Verdict};
use crate::pumpable::{MonoidView, PumpWitness};
use crate::wqo::{Completeness, MinimalPathSet, PumpConstant};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    #[serde(flatten)]
    pub mode: SearchMode,
    pub radius: usize,
    pub explore_len: usize,
    pub seed: u64,
    pub audit_samples: usize,
    pub contract_len: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { mode: SearchMode::Exact, radius: 4, explore_len: 6, seed: 0, audit_samples: 500, contract_len: 6 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractCheck {
    pub max_len: usize,
    pub words: usize,
    pub undecided: usize,
}

/// Compares membership with `ρ(u) = 1_H` on every word up to `max_len`.
pub fn check_language_contract(
    engine: &PathEngine,
    a: &GAutomaton,
    rho: &ChoiceOfGenerators,
    max_len: usize,
) -> Result<ContractCheck> {
    let mut letters = a.alphabet().to_vec();
    letters.sort_unstable();
    let mut out = ContractCheck { max_len, ..ContractCheck::default() };
    let mut level = vec![String::new()];
    for len in 0..=max_len {
        for u in &level {
            let expect = rho.is_identity(&rho.evaluate(u.chars())?);
            match engine.accepts(a, u)? {
                Verdict::Yes(_) if !expect => {
                    return Err(Error::LanguageContract(format!("{u:?} is accepted but does not represent 1")))
                }
                Verdict::No if expect => {
                    return Err(Error::LanguageContract(format!("{u:?} represents 1 but is rejected")))
                }
                Verdict::Unknown(_) => out.undecided += 1,
                _ => {}
            }
            out.words += 1;
        }
        if len < max_len {
            level = level.iter().flat_map(|u| letters.iter().map(move |c| format!("{u}{c}"))).collect();
        }
    }
    Ok(out)
}

pub struct PipelineReport {
    pub config: PipelineConfig,
    pub minimal: MinimalPathSet,
    pub pump: PumpConstant,
    pub cover: CoverReport,
    pub homs: Vec<ExtractedHom>,
    pub audits: Vec<AuditReport>,
    pub neumann: Option<NeumannChoice>,
    pub contract: ContractCheck,
}

pub fn run_pipeline(a: &GAutomaton, rho: &ChoiceOfGenerators, config: &PipelineConfig) -> Result<PipelineReport> {
    let schedule = Schedule::up_to(config.explore_len);
    let mut ctx = CoverContext::new(a, rho, config.mode, schedule, config.audit_samples, config.seed)?;
    let cover = cover_ball(&mut ctx, config.radius)?;
    let neumann = neumann_select(&mut ctx, &cover)?;
    let contract = check_language_contract(&ctx.engine, a, rho, config.contract_len)?;
    Ok(PipelineReport {
        config: config.clone(),
        minimal: ctx.minimal.clone(),
        pump: ctx.pump,
        cover,
        homs: ctx.homs.values().cloned().collect(),
        audits: ctx.audits.values().cloned().collect(),
        neumann,
        contract,
    })
}

/// JSON renderings, with paths as edge names and group elements in display form.
pub mod render {
    use super::*;

    pub fn path(a: &GAutomaton, p: &PathWord) -> Value {
        Value::String(a.format_path(p))
    }

    pub fn vertex(a: &GAutomaton, v: VertexId) -> Value {
        Value::String(a.vertices()[v].clone())
    }

    pub fn element(rho: &ChoiceOfGenerators, x: &TargetGroupElement) -> Value {
        Value::String(rho.group().display(x))
    }

    pub fn lattice(l: &LatticeSubgroup) -> Value {
        Value::Array(
            l.basis().iter().map(|row| Value::Array(row.iter().map(|c| Value::String(c.to_string())).collect())).collect(),
        )
    }

    pub fn verdict(a: &GAutomaton, v: &Verdict) -> Value {
        match v {
            Verdict::Yes(p) => json!({"verdict": "yes", "witness": path(a, p)}),
            Verdict::No => json!({"verdict": "no"}),
            Verdict::Unknown(r) => json!({"verdict": "unknown", "reason": r}),
        }
    }

    pub fn minimal(a: &GAutomaton, m: &MinimalPathSet) -> Value {
        let completeness = match m.completeness {
            Completeness::Certified => json!({"kind": "certified"}),
            Completeness::UpTo(l) => json!({"kind": "up_to", "bound": l}),
        };
        json!({
            "paths": m.paths.iter().map(|p| path(a, p)).collect::<Vec<_>>(),
            "completeness": completeness,
        })
    }

    pub fn pump_witness(a: &GAutomaton, w: &PumpWitness) -> Value {
        json!({
            "sigma": path(a, &w.sigma),
            "mu": path(a, &w.mu),
            "alpha": path(a, &w.alpha),
            "blocks": w.blocks().iter().map(|b| path(a, b)).collect::<Vec<_>>(),
            "block": w.j,
            "offset": w.offset,
        })
    }

    pub fn monoid_view(a: &GAutomaton, m: &MonoidView) -> Value {
        json!({
            "mu": path(a, &m.mu),
            "p": vertex(a, m.p),
            "bound": m.bound,
            "members": m.members.iter().map(|w| pump_witness(a, w)).collect::<Vec<_>>(),
            "undecided": m.undecided.iter().map(|p| path(a, p)).collect::<Vec<_>>(),
        })
    }

    pub fn linear_sets(f: &LinearSetFamily) -> Value {
        Value::Array(f.sets.iter().map(|s| json!({"base": s.base, "periods": s.periods})).collect())
    }

    pub fn hom(a: &GAutomaton, rho: &ChoiceOfGenerators, h: &ExtractedHom) -> Result<Value> {
        Ok(json!({
            "mu": path(a, &h.mu),
            "p": vertex(a, h.p),
            "bound": h.bound(),
            "generators": h.pairs.iter().map(|q| json!({
                "g": q.g,
                "h": element(rho, &q.h),
                "loop": path(a, &q.witness.sigma),
                "alpha": path(a, &q.witness.alpha),
            })).collect::<Vec<_>>(),
            "g_basis": lattice(&h.g_sub),
            "h_generators": h.h_gens.iter().map(|x| element(rho, x)).collect::<Vec<_>>(),
            "index": image_index(h, rho)?,
            "stabilized": h.stabilized,
            "stable_since": h.stable_since,
            "stabilization_is_heuristic": true,
            "history": h.history.iter().map(|r| json!({
                "bound": r.bound,
                "members": r.members,
                "g_basis": lattice(&r.g_sub),
                "h_index": r.h_index,
            })).collect::<Vec<_>>(),
        }))
    }

    pub fn audit(r: &AuditReport) -> Value {
        json!({
            "relations_checked": r.relations_checked,
            "commutations_checked": r.commutations_checked,
            "pairs_available": r.pairs_available,
            "pairs_checked": r.pairs_checked,
            "seed": r.seed,
        })
    }

    pub fn locator(a: &GAutomaton, rho: &ChoiceOfGenerators, l: &CosetLocator) -> Value {
        json!({
            "h": element(rho, &l.h),
            "v": l.v,
            "v_bar": l.v_bar,
            "n": l.n,
            "alpha": path(a, &l.alpha),
            "mu": path(a, &l.mu),
            "p": vertex(a, l.p),
            "copy": l.i,
            "block": l.j,
            "omega1": path(a, &l.omega1),
            "omega2": path(a, &l.omega2),
            "h1": element(rho, &l.h1),
            "h2": element(rho, &l.h2),
            "certified_loop": path(a, &l.certificate.sigma),
            "augmented": l.augmented,
            "provisional": l.provisional,
            "verified": true,
        })
    }

    pub fn cover(a: &GAutomaton, rho: &ChoiceOfGenerators, c: &CoverReport) -> Value {
        json!({
            "radius": c.radius,
            "elements": c.locators.len(),
            "provisional": c.provisional,
            "cosets": c.cosets.iter().map(|(mu, p, h1, h2)| json!({
                "mu": path(a, mu),
                "p": vertex(a, *p),
                "h1": element(rho, h1),
                "h2": element(rho, h2),
            })).collect::<Vec<_>>(),
            "locators": c.locators.iter().map(|l| locator(a, rho, l)).collect::<Vec<_>>(),
        })
    }

    pub fn neumann(a: &GAutomaton, n: &Option<NeumannChoice>) -> Value {
        match n {
            Some(n) => json!({"mu": path(a, &n.mu), "p": vertex(a, n.p), "index": n.index}),
            None => json!({
                "inconclusive": true,
                "hint": "every explored H(mu, p) has infinite index; raise --explore-len or --radius",
            }),
        }
    }

    pub fn pipeline(a: &GAutomaton, rho: &ChoiceOfGenerators, r: &PipelineReport) -> Result<Value> {
        Ok(json!({
            "version": VERSION,
            "config": r.config,
            "minimal_paths": minimal(a, &r.minimal),
            "pump_constant": {"n": r.pump.n, "lower_bound_only": r.pump.lower_bound_only},
            "homomorphisms": r.homs.iter().map(|h| hom(a, rho, h)).collect::<Result<Vec<_>>>()?,
            "audits": r.audits.iter().map(audit).collect::<Vec<_>>(),
            "cover": cover(a, rho, &r.cover),
            "selected": neumann(a, &r.neumann),
            "language_contract": r.contract,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::Index;

    #[test]
    fn pipeline_examples() {
        let cfg = PipelineConfig { audit_samples: 100, contract_len: 4, ..PipelineConfig::default() };
        let a2 = fixtures::a2();
        let rho2 = fixtures::a2_rho();
        let r = run_pipeline(&a2, &rho2, &cfg).unwrap();
        assert_eq!(r.neumann.as_ref().unwrap().index, Index::finite(2));
        let v = render::pipeline(&a2, &rho2, &r).unwrap();
        assert_eq!(v["selected"]["index"], 2);
        assert_eq!(v["selected"]["p"], "q0");
        assert_eq!(v["config"]["seed"], 0);

        let a1 = fixtures::a1();
        let r = run_pipeline(&a1, &fixtures::a1_rho(), &cfg).unwrap();
        assert_eq!(r.neumann.unwrap().index, Index::finite(1));
        let a3 = fixtures::a3();
        let r = run_pipeline(&a3, &fixtures::a3_rho(), &PipelineConfig { radius: 0, ..cfg.clone() }).unwrap();
        assert_eq!(r.neumann.unwrap().index, Index::finite(1));

        let planted = fixtures::planted();
        assert!(matches!(run_pipeline(&planted, &fixtures::a1_rho(), &cfg), Err(Error::WellDefinedness(_))));
    }

    #[test]
    fn contract_catches_wrong_languages() {
        let e = PathEngine::new(SearchMode::Exact);
        let a1 = fixtures::a1();
        assert_eq!(check_language_contract(&e, &a1, &fixtures::a1_rho(), 4).unwrap().words, 31);
        let planted = fixtures::planted();
        assert!(matches!(
            check_language_contract(&e, &planted, &fixtures::a1_rho(), 3),
            Err(Error::LanguageContract(_))
        ));
    }
}
