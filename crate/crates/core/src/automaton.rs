//! Automata over an abelian register group.
//!
//! A [`GAutomaton`] is a finite directed multigraph whose edges carry a register
//! increment in an [`AbelianSpec`] group and either one input letter or nothing.
//! Paths are sequences of edge ids ([`PathWord`]); two parallel edges with equal labels
//! are still distinct symbols of a path.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{AbelianSpec, GroupVector};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub dst: VertexId,
    pub g: GroupVector,
    pub sigma: Option<char>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAutomaton {
    spec: AbelianSpec,
    alphabet: Vec<char>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    init: VertexId,
    ter: VertexId,
}

/// A path given by its edge ids. The empty path is a valid path at every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWord(pub Vec<EdgeId>);

impl PathWord {
    pub fn empty() -> Self {
        PathWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    /// Word concatenation; composability is the caller's concern (see [`GAutomaton::concat`]).
    pub fn concat(&self, other: &PathWord) -> PathWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PathWord(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> PathWord {
        PathWord(self.0[range].to_vec())
    }

    pub fn repeat(&self, n: usize) -> PathWord {
        PathWord(self.0.repeat(n))
    }

    /// Shortlex key: shorter first, then lexicographic on edge ids.
    pub fn shortlex_key(&self) -> (usize, &[EdgeId]) {
        (self.0.len(), &self.0)
    }
}

impl From<Vec<EdgeId>> for PathWord {
    fn from(v: Vec<EdgeId>) -> Self {
        PathWord(v)
    }
}

impl GAutomaton {
    /// Builds and validates an automaton.
    pub fn new(
        spec: AbelianSpec,
        alphabet: Vec<char>,
        vertices: Vec<String>,
        edges: Vec<Edge>,
        init: VertexId,
        ter: VertexId,
    ) -> Result<Self> {
        let a = Self { spec, alphabet, vertices, edges, init, ter };
        let diags = a.diagnostics();
        if diags.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAutomaton(diags))
        }
    }

    /// All violated invariants, empty when the automaton is well formed.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.vertices.len();
        if nv == 0 {
            out.push("automaton has no vertices".to_string());
        }
        let mut names = HashSet::new();
        for v in &self.vertices {
            if !names.insert(v) {
                out.push(format!("duplicate vertex {v:?}"));
            }
        }
        let mut letters = HashSet::new();
        for c in &self.alphabet {
            if !letters.insert(c) {
                out.push(format!("duplicate letter {c:?}"));
            }
        }
        if self.init >= nv {
            out.push(format!("unknown vertex for init: {}", self.init));
        }
        if self.ter >= nv {
            out.push(format!("unknown vertex for ter: {}", self.ter));
        }
        let mut enames = HashSet::new();
        for e in &self.edges {
            if !enames.insert(&e.name) {
                out.push(format!("duplicate edge {:?}", e.name));
            }
            if e.src >= nv {
                out.push(format!("edge {:?}: unknown vertex {}", e.name, e.src));
            }
            if e.dst >= nv {
                out.push(format!("edge {:?}: unknown vertex {}", e.name, e.dst));
            }
            if let Err(err) = self.spec.check(&e.g) {
                out.push(format!("edge {:?}: {err}", e.name));
            }
            if let Some(c) = e.sigma {
                if !letters.contains(&c) {
                    out.push(format!("edge {:?}: letter {c:?} not in alphabet", e.name));
                }
            }
        }
        out
    }

    /// Re-checks every invariant.
    pub fn validate(&self) -> Result<()> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(d))
        }
    }

    pub fn spec(&self) -> &AbelianSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn init(&self) -> VertexId {
        self.init
    }

    pub fn ter(&self) -> VertexId {
        self.ter
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Parses a path written as edge names separated by `,`, `.`, `·` or whitespace.
    /// `ε` and the empty string denote the empty path.
    pub fn parse_path(&self, s: &str) -> Result<PathWord> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c == ',' || c == '.' || c == '·' || c.is_whitespace()) {
            if tok.is_empty() || tok == "ε" {
                continue;
            }
            out.push(self.edge_id(tok).ok_or_else(|| Error::Usage(format!("unknown edge {tok:?}")))?);
        }
        Ok(PathWord(out))
    }

    pub fn format_path(&self, p: &PathWord) -> String {
        if p.is_empty() {
            return "ε".to_string();
        }
        p.0.iter().map(|&e| self.edges[e].name.as_str()).collect::<Vec<_>>().join("·")
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == v).map(|(i, _)| i)
    }

    pub fn is_path(&self, p: &PathWord) -> bool {
        p.0.iter().all(|&e| e < self.edges.len()) && p.0.windows(2).all(|w| self.edges[w[0]].dst == self.edges[w[1]].src)
    }

    pub fn source(&self, p: &PathWord) -> Option<VertexId> {
        p.0.first().map(|&e| self.edges[e].src)
    }

    pub fn target(&self, p: &PathWord) -> Option<VertexId> {
        p.0.last().map(|&e| self.edges[e].dst)
    }

    /// `ℓ_G` of a path.
    pub fn value(&self, p: &PathWord) -> GroupVector {
        self.spec.sum(p.0.iter().map(|&e| &self.edges[e].g))
    }

    /// `ℓ_Σ` of a path.
    pub fn spell(&self, p: &PathWord) -> String {
        p.0.iter().filter_map(|&e| self.edges[e].sigma).collect()
    }

    /// Closed paths start and end at one vertex; the empty path is closed.
    pub fn is_closed(&self, p: &PathWord) -> bool {
        self.is_path(p) && self.source(p) == self.target(p)
    }

    /// Closed at `v`: the empty path counts as closed at every vertex.
    pub fn is_closed_at(&self, p: &PathWord, v: VertexId) -> bool {
        p.is_empty() || (self.is_closed(p) && self.source(p) == Some(v))
    }

    /// Starts at `p_init`, ends at `p_ter` and has register sum zero.
    pub fn is_accepting(&self, p: &PathWord) -> bool {
        if p.is_empty() {
            return self.init == self.ter;
        }
        self.is_path(p)
            && self.source(p) == Some(self.init)
            && self.target(p) == Some(self.ter)
            && self.spec.is_zero(&self.value(p))
    }

    /// Vertices visited by `p` starting from `start` (`start` included).
    pub fn vertex_sequence(&self, p: &PathWord, start: VertexId) -> Vec<VertexId> {
        let mut out = vec![start];
        out.extend(p.0.iter().map(|&e| self.edges[e].dst));
        out
    }

    /// Concatenation of paths, checking that they compose.
    pub fn concat(&self, a: &PathWord, b: &PathWord) -> Result<PathWord> {
        match (self.target(a), self.source(b)) {
            (Some(t), Some(s)) if t != s => {
                Err(Error::Usage(format!("{} does not compose with {}", self.format_path(a), self.format_path(b))))
            }
            _ => Ok(a.concat(b)),
        }
    }

    /// Vertices reachable from `v`.
    pub fn reachable_from(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                if e.src == x && seen.insert(e.dst) {
                    stack.push(e.dst);
                }
            }
        }
        seen
    }

    /// Vertices from which `v` is reachable.
    pub fn coreachable_to(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                if e.dst == x && seen.insert(e.src) {
                    stack.push(e.src);
                }
            }
        }
        seen
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            spec: self.spec.clone(),
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.name.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                    g: e.g.coords().to_vec(),
                    sigma: e.sigma.map(String::from).unwrap_or_default(),
                })
                .collect(),
            init: self.vertices[self.init].clone(),
            ter: self.vertices[self.ter].clone(),
        }
    }
}

impl fmt::Display for GAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-automaton over {:?}", self.spec, self.alphabet.iter().collect::<String>())?;
        writeln!(f, "init {} ter {}", self.vertices[self.init], self.vertices[self.ter])?;
        for e in &self.edges {
            writeln!(
                f,
                "  {}: {} -> {} [{} / {}]",
                e.name,
                self.vertices[e.src],
                self.vertices[e.dst],
                e.sigma.map(String::from).unwrap_or_else(|| "ε".into()),
                e.g
            )?;
        }
        Ok(())
    }
}

/// Name-based automaton as it appears in input documents; edge labels may be words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAutomaton {
    pub spec: AbelianSpec,
    pub alphabet: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub init: String,
    pub ter: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub g: Vec<i64>,
    #[serde(default)]
    pub sigma: String,
}

impl RawAutomaton {
    /// Every structural problem of the document; empty when it can be normalized.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = AbelianSpec::new(self.spec.free_rank(), self.spec.torsion_moduli().to_vec()) {
            out.push(e.to_string());
        }
        let mut letters = HashSet::new();
        for l in &self.alphabet {
            let mut it = l.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => {
                    if !letters.insert(c) {
                        out.push(format!("duplicate letter {l:?}"));
                    }
                }
                _ => out.push(format!("alphabet entry {l:?} is not a single character")),
            }
        }
        let vset: HashSet<&String> = self.vertices.iter().collect();
        if vset.len() != self.vertices.len() {
            out.push("duplicate vertex names".to_string());
        }
        if self.vertices.is_empty() {
            out.push("automaton has no vertices".to_string());
        }
        for (what, v) in [("init", &self.init), ("ter", &self.ter)] {
            if !vset.contains(v) {
                out.push(format!("{what}: unknown vertex {v:?}"));
            }
        }
        let mut ids = HashSet::new();
        for e in &self.edges {
            if !ids.insert(&e.id) {
                out.push(format!("duplicate edge {:?}", e.id));
            }
            for v in [&e.src, &e.dst] {
                if !vset.contains(v) {
                    out.push(format!("edge {:?}: unknown vertex {v:?}", e.id));
                }
            }
            if e.g.len() != self.spec.dim() {
                out.push(format!("edge {:?}: label has {} coordinates, group has {}", e.id, e.g.len(), self.spec.dim()));
            }
            for c in e.sigma.chars() {
                if !letters.contains(&c) {
                    out.push(format!("edge {:?}: letter {c:?} not in alphabet", e.id));
                }
            }
        }
        out
    }
}

/// Turns a raw automaton into one whose edges read at most one letter.
///
/// An edge `(p → q, g, c_1…c_k)` with `k ≥ 2` becomes a chain through fresh vertices
/// `id#1 … id#(k-1)`: the first link carries `g` and `c_1`, the others `0` and one
/// letter each. Edges of the chain are named `id#0 … id#(k-1)`.
pub fn subdivide_normalize(raw: &RawAutomaton) -> Result<GAutomaton> {
    let diags = raw.validate();
    if !diags.is_empty() {
        return Err(Error::InvalidAutomaton(diags));
    }
    let spec = AbelianSpec::new(raw.spec.free_rank(), raw.spec.torsion_moduli().to_vec())?;
    let alphabet: Vec<char> = raw.alphabet.iter().filter_map(|l| l.chars().next()).collect();
    let mut vertices = raw.vertices.clone();
    let mut taken: HashSet<String> = vertices.iter().cloned().chain(raw.edges.iter().map(|e| e.id.clone())).collect();
    let mut fresh = |base: String| -> String {
        let mut name = base.clone();
        let mut k = 0;
        while taken.contains(&name) {
            k += 1;
            name = format!("{base}'{k}");
        }
        taken.insert(name.clone());
        name
    };
    let vid = |vertices: &[String], n: &str| vertices.iter().position(|v| v == n).expect("validated");
    let mut edges = Vec::new();
    for e in &raw.edges {
        let g = spec.element(e.g.clone())?;
        let src = vid(&vertices, &e.src);
        let dst = vid(&vertices, &e.dst);
        let letters: Vec<char> = e.sigma.chars().collect();
        if letters.len() <= 1 {
            edges.push(Edge { name: e.id.clone(), src, dst, g, sigma: letters.first().copied() });
            continue;
        }
        let k = letters.len();
        let mut prev = src;
        for (i, &c) in letters.iter().enumerate() {
            let next = if i + 1 == k {
                dst
            } else {
                let name = fresh(format!("{}#{}", e.id, i + 1));
                vertices.push(name);
                vertices.len() - 1
            };
            let label = if i == 0 { g.clone() } else { spec.zero() };
            let name = fresh(format!("{}#{i}", e.id));
            edges.push(Edge { name, src: prev, dst: next, g: label, sigma: Some(c) });
            prev = next;
        }
    }
    let init = vid(&vertices, &raw.init);
    let ter = vid(&vertices, &raw.ter);
    GAutomaton::new(spec, alphabet, vertices, edges, init, ter)
}

/// Small helper for building automata in code: vertices by name, edges appended in order.
#[derive(Clone, Debug)]
pub struct AutomatonBuilder {
    spec: AbelianSpec,
    alphabet: Vec<char>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl AutomatonBuilder {
    pub fn new(spec: AbelianSpec, alphabet: &str) -> Self {
        Self { spec, alphabet: alphabet.chars().collect(), vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn vertex(&mut self, name: &str) -> VertexId {
        match self.vertices.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vertices.push(name.to_string());
                self.vertices.len() - 1
            }
        }
    }

    /// Adds an edge; `sigma = None` is an ε-edge. Torsion coordinates are reduced.
    pub fn edge(&mut self, name: &str, src: &str, dst: &str, g: &[i64], sigma: Option<char>) -> EdgeId {
        let src = self.vertex(src);
        let dst = self.vertex(dst);
        let g = self.spec.element(g.to_vec()).expect("label dimension matches the register group");
        self.edges.push(Edge { name: name.to_string(), src, dst, g, sigma });
        self.edges.len() - 1
    }

    pub fn build(mut self, init: &str, ter: &str) -> Result<GAutomaton> {
        let i = self.vertex(init);
        let t = self.vertex(ter);
        GAutomaton::new(self.spec, self.alphabet, self.vertices, self.edges, i, t)
    }
}
