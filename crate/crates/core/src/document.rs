//! JSON documents: an automaton plus an optional target group and choice of generators.
//!
//! ```json
//! {
//!   "spec": {"rank": 1, "torsion": []},
//!   "alphabet": ["a", "A"],
//!   "vertices": ["q"],
//!   "edges": [{"id": "e_a", "src": "q", "dst": "q", "g": [1], "sigma": "a"},
//!             {"id": "e_A", "src": "q", "dst": "q", "g": [-1], "sigma": "A"}],
//!   "init": "q", "ter": "q",
//!   "target_group": {"kind": "abelian", "rank": 1},
//!   "rho": {"a": [1], "A": [-1]}
//! }
//! ```
//!
//! Target groups are `abelian` (`rank`, `torsion`), `finite` (`table`, `identity`,
//! optional `names`), `virtually_abelian` (`rank`, `point` as a finite group, `action`
//! as one integer matrix per point element) or `dihedral`. Letter images are written as
//! a coordinate list, a point-element name or index, or `{"translation", "point"}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::automaton::{subdivide_normalize, GAutomaton, RawAutomaton};
use crate::error::{Error, Result};
use crate::group::{ChoiceOfGenerators, FiniteGroup, SemidirectGroup, TargetGroupElement, TargetGroupSpec};
use crate::lattice::AbelianSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    #[serde(flatten)]
    pub automaton: RawAutomaton,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<BTreeMap<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDoc {
    Abelian {
        rank: usize,
        #[serde(default)]
        torsion: Vec<u64>,
    },
    Finite(FiniteDoc),
    VirtuallyAbelian {
        rank: usize,
        point: FiniteDoc,
        action: Vec<Vec<Vec<i64>>>,
    },
    Dihedral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteDoc {
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A parsed document: the normalized automaton and, when present, `ρ`.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub automaton: GAutomaton,
    pub rho: Option<ChoiceOfGenerators>,
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("malformed document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_parts(a: &GAutomaton, rho: Option<&ChoiceOfGenerators>) -> Self {
        let (target_group, rho_doc, inverses) = match rho {
            None => (None, None, None),
            Some(r) => {
                let images = r.assignment().map(|(c, x)| (c.to_string(), element_to_value(r.group(), x))).collect();
                let inverses = r
                    .letters()
                    .iter()
                    .map(|&c| (c.to_string(), r.inverse_letter(c).expect("own letter").to_string()))
                    .collect();
                (Some(group_to_doc(r.group())), Some(images), Some(inverses))
            }
        };
        Document { automaton: a.to_raw(), target_group, rho: rho_doc, inverses }
    }

    /// Normalizes the automaton and builds `ρ`. A `rho` without `target_group` (or the
    /// reverse) is an error.
    pub fn load(&self) -> Result<Loaded> {
        let automaton = subdivide_normalize(&self.automaton)?;
        let rho = match (&self.target_group, &self.rho) {
            (None, None) => None,
            (Some(g), Some(images)) => {
                let group = doc_to_group(g)?;
                let mut assignment = Vec::new();
                for (letter, v) in images {
                    let c = single_char(letter)?;
                    assignment.push((c, value_to_element(&group, v)?));
                }
                let inverses = match &self.inverses {
                    None => None,
                    Some(m) => Some(
                        m.iter()
                            .map(|(a, b)| Ok((single_char(a)?, single_char(b)?)))
                            .collect::<Result<BTreeMap<char, char>>>()?,
                    ),
                };
                Some(ChoiceOfGenerators::new(group, order_like(&automaton, assignment), inverses.as_ref())?)
            }
            _ => return Err(Error::Usage("\"target_group\" and \"rho\" must be given together".into())),
        };
        Ok(Loaded { automaton, rho })
    }
}

/// Puts the letters of `ρ` in the automaton's alphabet order, extra letters last.
fn order_like(a: &GAutomaton, mut assignment: Vec<(char, TargetGroupElement)>) -> Vec<(char, TargetGroupElement)> {
    assignment.sort_by_key(|(c, _)| (a.alphabet().iter().position(|x| x == c).unwrap_or(usize::MAX), *c));
    assignment
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Usage(format!("{s:?} is not a single letter"))),
    }
}

fn finite_from_doc(d: &FiniteDoc) -> Result<FiniteGroup> {
    FiniteGroup::new(d.table.clone(), d.identity, d.names.clone())
}

fn finite_to_doc(f: &FiniteGroup) -> FiniteDoc {
    FiniteDoc { table: f.table().to_vec(), identity: f.identity(), names: Some(f.names().to_vec()) }
}

pub fn doc_to_group(d: &GroupDoc) -> Result<TargetGroupSpec> {
    Ok(match d {
        GroupDoc::Abelian { rank, torsion } => TargetGroupSpec::Abelian(AbelianSpec::new(*rank, torsion.clone())?),
        GroupDoc::Finite(f) => TargetGroupSpec::Finite(finite_from_doc(f)?),
        GroupDoc::VirtuallyAbelian { rank, point, action } => {
            TargetGroupSpec::VirtuallyAbelian(SemidirectGroup::new(*rank, finite_from_doc(point)?, action.clone())?)
        }
        GroupDoc::Dihedral => TargetGroupSpec::infinite_dihedral(),
    })
}

pub fn group_to_doc(g: &TargetGroupSpec) -> GroupDoc {
    match g {
        TargetGroupSpec::Abelian(a) => GroupDoc::Abelian { rank: a.free_rank(), torsion: a.torsion_moduli().to_vec() },
        TargetGroupSpec::Finite(f) => GroupDoc::Finite(finite_to_doc(f)),
        TargetGroupSpec::VirtuallyAbelian(s) => GroupDoc::VirtuallyAbelian {
            rank: s.rank(),
            point: finite_to_doc(s.point_group()),
            action: (0..s.point_group().order()).map(|f| s.action_matrix(f).to_vec()).collect(),
        },
    }
}

fn point_from_value(f: &FiniteGroup, v: &Value) -> Result<usize> {
    match v {
        Value::String(name) => f.id_of(name).ok_or_else(|| Error::InvalidGroup(format!("unknown element {name:?}"))),
        Value::Number(n) => n
            .as_u64()
            .map(|x| x as usize)
            .filter(|&x| x < f.order())
            .ok_or_else(|| Error::InvalidGroup(format!("element index {n} out of range"))),
        other => Err(Error::InvalidGroup(format!("cannot read {other} as a group element"))),
    }
}

fn ints(v: &Value) -> Result<Vec<i64>> {
    serde_json::from_value(v.clone()).map_err(|_| Error::InvalidGroup(format!("expected an integer list, got {v}")))
}

pub fn value_to_element(g: &TargetGroupSpec, v: &Value) -> Result<TargetGroupElement> {
    let x = match g {
        TargetGroupSpec::Abelian(a) => TargetGroupElement::Abelian(a.element(ints(v)?)?),
        TargetGroupSpec::Finite(f) => TargetGroupElement::Finite(point_from_value(f, v)?),
        TargetGroupSpec::VirtuallyAbelian(s) => {
            let t = v.get("translation").ok_or_else(|| Error::InvalidGroup(format!("missing translation in {v}")))?;
            let p = v.get("point").ok_or_else(|| Error::InvalidGroup(format!("missing point in {v}")))?;
            TargetGroupElement::Semidirect { translation: ints(t)?, point: point_from_value(s.point_group(), p)? }
        }
    };
    g.check(&x)?;
    Ok(x)
}

pub fn element_to_value(g: &TargetGroupSpec, x: &TargetGroupElement) -> Value {
    match (g, x) {
        (TargetGroupSpec::Finite(f), TargetGroupElement::Finite(i)) => Value::String(f.name(*i).to_string()),
        (TargetGroupSpec::VirtuallyAbelian(s), TargetGroupElement::Semidirect { translation, point }) => {
            serde_json::json!({"translation": translation, "point": s.point_group().name(*point)})
        }
        _ => serde_json::to_value(x).expect("elements serialize"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        let cases = [
            (fixtures::a1(), fixtures::a1_rho()),
            (fixtures::a2(), fixtures::a2_rho()),
            (fixtures::a3(), fixtures::a3_rho()),
            (fixtures::a4(), fixtures::a4_rho()),
        ];
        for (a, rho) in cases {
            let text = Document::from_parts(&a, Some(&rho)).to_json();
            let loaded = Document::from_json(&text).unwrap().load().unwrap();
            assert_eq!(loaded.automaton, a);
            assert_eq!(loaded.rho.unwrap(), rho);
        }
    }

    #[test]
    fn hand_written_document() {
        let text = r#"{
            "spec": {"rank": 1},
            "alphabet": ["t", "T", "s"],
            "vertices": ["q0", "q1"],
            "edges": [
                {"id": "e_t0", "src": "q0", "dst": "q0", "g": [1], "sigma": "t"},
                {"id": "e_T0", "src": "q0", "dst": "q0", "g": [-1], "sigma": "T"},
                {"id": "e_t1", "src": "q1", "dst": "q1", "g": [-1], "sigma": "t"},
                {"id": "e_T1", "src": "q1", "dst": "q1", "g": [1], "sigma": "T"},
                {"id": "e_s01", "src": "q0", "dst": "q1", "g": [0], "sigma": "s"},
                {"id": "e_s10", "src": "q1", "dst": "q0", "g": [0], "sigma": "s"}
            ],
            "init": "q0", "ter": "q0",
            "target_group": {"kind": "dihedral"},
            "rho": {"t": {"translation": [1], "point": "1"},
                    "T": {"translation": [-1], "point": "1"},
                    "s": {"translation": [0], "point": "s"}}
        }"#;
        let loaded = Document::from_json(text).unwrap().load().unwrap();
        assert_eq!(loaded.automaton, fixtures::a2());
        assert_eq!(loaded.rho.unwrap(), fixtures::a2_rho());
    }

    #[test]
    fn rho_without_group_is_rejected() {
        let mut d = Document::from_parts(&fixtures::a1(), Some(&fixtures::a1_rho()));
        d.target_group = None;
        assert!(matches!(d.load(), Err(Error::Usage(_))));
        assert!(Document::from_json("{").is_err());
    }

    #[test]
    fn finite_group_document() {
        let text = r#"{
            "spec": {"rank": 0}, "alphabet": ["r"], "vertices": ["q"], "edges": [],
            "init": "q", "ter": "q",
            "target_group": {"kind": "finite", "table": [[0,1],[1,0]]},
            "rho": {"r": 1}
        }"#;
        let loaded = Document::from_json(text).unwrap().load().unwrap();
        let rho = loaded.rho.unwrap();
        assert_eq!(rho.inverse_letter('r').unwrap(), 'r');
    }
}
