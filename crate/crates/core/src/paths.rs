//! Decision procedures over accepting paths: membership, emptiness, promising paths,
//! constrained path search and closed-walk register values.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::automaton::{GAutomaton, PathWord, VertexId};
use crate::diophantine::{DiophantineSystem, SolverCache};
use crate::error::{Error, Result};
use crate::lattice::GroupVector;
use crate::search::{bounded_search, Arc, Caps, ExactSolver, Outcome, SearchGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SearchMode {
    Exact,
    Bounded { max_len: usize, max_counter: u64 },
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Exact => write!(f, "exact"),
            SearchMode::Bounded { max_len, max_counter } => write!(f, "bounded({max_len}, {max_counter})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W = PathWord> {
    Yes(W),
    No,
    Unknown(String),
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(f(w)),
            Verdict::No => Verdict::No,
            Verdict::Unknown(r) => Verdict::Unknown(r),
        }
    }

    /// `Some(true)` for Yes, `Some(false)` for No, `None` for Unknown.
    pub fn conclusive(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown(_) => None,
        }
    }
}

/// Requirements on an accepting path.
///
/// `milestones` must occur contiguously, in order and without overlap; `avoid` lists
/// paths the result must not dominate (as scattered subsequences).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub spell: Option<String>,
    pub milestones: Vec<PathWord>,
    pub avoid: Vec<PathWord>,
}

impl Constraints {
    pub fn spelling(word: &str) -> Self {
        Self { spell: Some(word.to_string()), ..Self::default() }
    }

    /// Dominate `mu`, with `sigma` placed contiguously inside block `j` when given.
    pub fn dominating(mu: &PathWord, pump: Option<(&PathWord, usize)>) -> Self {
        let mut milestones: Vec<PathWord> = mu.edges().iter().map(|&e| PathWord(vec![e])).collect();
        if let Some((sigma, j)) = pump {
            if !sigma.is_empty() {
                milestones.insert(j.min(milestones.len()), sigma.clone());
            }
        }
        Self { milestones, ..Self::default() }
    }
}

/// An accepting path found under [`Constraints`], with the start of each milestone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub path: PathWord,
    pub milestone_starts: Vec<usize>,
}

/// Union of linear sets `base + N·periods`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinearSetFamily {
    pub sets: Vec<LinearSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LinearSet {
    pub base: GroupVector,
    pub periods: Vec<GroupVector>,
}

impl LinearSetFamily {
    pub fn contains(&self, a: &GAutomaton, v: &GroupVector) -> Result<bool> {
        for s in &self.sets {
            if in_linear_set(a, &s.base, &s.periods, v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn in_linear_set(a: &GAutomaton, base: &GroupVector, periods: &[GroupVector], v: &GroupVector) -> Result<bool> {
    let spec = a.spec();
    let rhs = spec.sub(v, base);
    let cols: Vec<Vec<i64>> = periods.iter().map(|p| p.coords().to_vec()).collect();
    let moduli = (0..spec.dim()).map(|i| spec.modulus(i)).collect();
    let sys = DiophantineSystem::from_columns(&cols, rhs.coords().to_vec(), moduli)?;
    if sys.is_homogeneous() {
        return Ok(true);
    }
    Ok(!sys.solve(crate::diophantine::DEFAULT_SEARCH_CAP)?.minimal.is_empty())
}

/// Decision procedures sharing one Diophantine cache.
pub struct PathEngine {
    mode: SearchMode,
    caps: Caps,
    cache: RefCell<SolverCache>,
}

impl PathEngine {
    pub fn new(mode: SearchMode) -> Self {
        Self::with_caps(mode, Caps::default())
    }

    pub fn with_caps(mode: SearchMode, caps: Caps) -> Self {
        Self { mode, caps, cache: RefCell::new(SolverCache::default()) }
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    /// Is `u` the label of an accepting path?
    pub fn accepts(&self, a: &GAutomaton, u: &str) -> Result<Verdict> {
        if let Some(c) = u.chars().find(|c| !a.alphabet().contains(c)) {
            return Err(Error::UnknownLetter(c));
        }
        Ok(self.find_accepting_path(a, &Constraints::spelling(u))?.map(|f| f.path))
    }

    /// Existence of an accepting path; `Yes` carries one, so it means "nonempty".
    pub fn is_empty(&self, a: &GAutomaton) -> Result<Verdict> {
        Ok(self.find_accepting_path(a, &Constraints::default())?.map(|f| f.path))
    }

    /// Paths `(ω1, ω2)` with `ω1·ω·ω2` accepting.
    pub fn is_promising(&self, a: &GAutomaton, omega: &PathWord) -> Result<Verdict<(PathWord, PathWord)>> {
        if !a.is_path(omega) {
            return Err(Error::Usage(format!("{} is not a path", a.format_path(omega))));
        }
        if omega.is_empty() {
            return Ok(self.is_empty(a)?.map(|p| (PathWord::empty(), p)));
        }
        let c = Constraints { milestones: vec![omega.clone()], ..Constraints::default() };
        Ok(self.find_accepting_path(a, &c)?.map(|f| {
            let s = f.milestone_starts[0];
            (f.path.slice(0..s), f.path.slice(s + omega.len()..f.path.len()))
        }))
    }

    pub fn find_accepting_path(&self, a: &GAutomaton, c: &Constraints) -> Result<Verdict<Found>> {
        for m in &c.milestones {
            if m.is_empty() || !a.is_path(m) {
                return Err(Error::Usage(format!("milestone {} is not a nonempty path", a.format_path(m))));
            }
        }
        let product = Product::build(a, c, self.caps.nodes)?;
        let outcome = match self.mode {
            SearchMode::Exact => ExactSolver::new(&product.graph, self.caps, &self.cache).solve()?,
            SearchMode::Bounded { max_len, max_counter } => {
                bounded_search(&product.graph, max_len, Some(max_counter), self.caps)
            }
        };
        match outcome {
            Outcome::Absent => Ok(Verdict::No),
            Outcome::Unknown(r) => Ok(Verdict::Unknown(r)),
            Outcome::Found(run) => {
                let mut starts = Vec::new();
                let mut pos = 0;
                for &arc in &run.arcs {
                    if product.milestone_of[arc].is_some() {
                        starts.push(pos);
                    }
                    pos += product.graph.arcs[arc].label.len();
                }
                let found = Found { path: run.path, milestone_starts: starts };
                check_found(a, c, &found)?;
                Ok(Verdict::Yes(found))
            }
        }
    }
}

/// Independent re-validation of a constrained witness.
fn check_found(a: &GAutomaton, c: &Constraints, f: &Found) -> Result<()> {
    let fail = |what: &str| Err(Error::Certification(format!("witness {} {what}", a.format_path(&f.path))));
    if !a.is_accepting(&f.path) {
        return fail("is not accepting");
    }
    if let Some(w) = &c.spell {
        if a.spell(&f.path) != *w {
            return fail("spells the wrong word");
        }
    }
    if f.milestone_starts.len() != c.milestones.len() {
        return fail("misses a milestone");
    }
    let mut floor = 0;
    for (m, &s) in c.milestones.iter().zip(&f.milestone_starts) {
        if s < floor || s + m.len() > f.path.len() || f.path.edges()[s..s + m.len()] != *m.edges() {
            return fail("does not contain its milestones in order");
        }
        floor = s + m.len();
    }
    for mu in &c.avoid {
        if crate::wqo::is_scattered_subword(mu.edges(), f.path.edges()).is_some() {
            return fail("dominates an excluded path");
        }
    }
    Ok(())
}

/// The automaton crossed with word position, milestone stage and greedy-embedding
/// pointers into the excluded paths.
struct Product {
    graph: SearchGraph,
    milestone_of: Vec<Option<usize>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    vertex: VertexId,
    pos: usize,
    stage: usize,
    ptrs: Vec<u16>,
}

impl Product {
    fn build(a: &GAutomaton, c: &Constraints, node_cap: usize) -> Result<Self> {
        let word: Vec<char> = c.spell.as_deref().unwrap_or("").chars().collect();
        let spelled = c.spell.is_some();
        let advance = |ptrs: &mut [u16], e: usize| {
            for (p, mu) in ptrs.iter_mut().zip(&c.avoid) {
                if (*p as usize) < mu.len() && mu.edges()[*p as usize] == e {
                    *p += 1;
                }
            }
        };
        let start = State { vertex: a.init(), pos: 0, stage: 0, ptrs: vec![0; c.avoid.len()] };
        let mut ids: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
        let mut states = vec![start];
        let mut arcs = Vec::new();
        let mut milestone_of = Vec::new();
        let out: Vec<Vec<usize>> = (0..a.vertex_count()).map(|v| a.out_edges(v).collect()).collect();
        let mut i = 0;
        while i < states.len() {
            let st = states[i].clone();
            let mut moves: Vec<(State, GroupVector, Vec<usize>, Option<usize>)> = Vec::new();
            for &e in &out[st.vertex] {
                let edge = a.edge(e);
                let pos = match edge.sigma {
                    None => st.pos,
                    Some(ch) if spelled => {
                        if word.get(st.pos) != Some(&ch) {
                            continue;
                        }
                        st.pos + 1
                    }
                    Some(_) => st.pos,
                };
                let mut ptrs = st.ptrs.clone();
                advance(&mut ptrs, e);
                moves.push((State { vertex: edge.dst, pos, stage: st.stage, ptrs }, edge.g.clone(), vec![e], None));
            }
            if let Some(m) = c.milestones.get(st.stage) {
                if a.source(m) == Some(st.vertex) {
                    let letters: Vec<char> = a.spell(m).chars().collect();
                    let fits = !spelled || word.get(st.pos..st.pos + letters.len()) == Some(&letters[..]);
                    if fits {
                        let mut ptrs = st.ptrs.clone();
                        for &e in m.edges() {
                            advance(&mut ptrs, e);
                        }
                        let pos = if spelled { st.pos + letters.len() } else { st.pos };
                        let dst = a.target(m).expect("nonempty milestone");
                        moves.push((
                            State { vertex: dst, pos, stage: st.stage + 1, ptrs },
                            a.value(m),
                            m.edges().to_vec(),
                            Some(st.stage),
                        ));
                    }
                }
            }
            for (next, value, label, ms) in moves {
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        if id >= node_cap {
                            return Err(Error::ResourceGuard(format!("product graph exceeds {node_cap} nodes")));
                        }
                        ids.insert(next.clone(), id);
                        states.push(next);
                        id
                    }
                };
                arcs.push(Arc { src: i, dst: id, value, label });
                milestone_of.push(ms);
            }
            i += 1;
        }
        let sinks = states
            .iter()
            .map(|s| {
                s.vertex == a.ter()
                    && s.pos == word.len()
                    && s.stage == c.milestones.len()
                    && s.ptrs.iter().zip(&c.avoid).all(|(&p, mu)| (p as usize) < mu.len())
            })
            .collect();
        let graph =
            SearchGraph { spec: a.spec().clone(), nodes: states.len(), arcs, source: 0, sinks, target: a.spec().zero() };
        Ok(Product { graph, milestone_of })
    }
}

/// Largest number of cycles whose subsets [`closed_value_sets`] will enumerate.
pub const MAX_VALUE_SET_CYCLES: usize = 16;

/// Exact description of `{ℓ_G(σ) : σ closed at p}` (the empty path included).
pub fn closed_value_sets(a: &GAutomaton, p: VertexId) -> Result<LinearSetFamily> {
    let spec = a.spec();
    let reach = a.reachable_from(p);
    let coreach = a.coreachable_to(p);
    let scc: BTreeSet<VertexId> = reach.intersection(&coreach).copied().collect();
    let arcs: Vec<Arc> = a
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| scc.contains(&e.src) && scc.contains(&e.dst))
        .map(|(i, e)| Arc { src: e.src, dst: e.dst, value: e.g.clone(), label: vec![i] })
        .collect();
    let g = SearchGraph {
        spec: spec.clone(),
        nodes: a.vertex_count(),
        sinks: vec![false; a.vertex_count()],
        arcs,
        source: p,
        target: spec.zero(),
    };
    let all: Vec<usize> = (0..g.arcs.len()).collect();
    let cycles = crate::search::simple_cycles(&g, &all, 20_000)?;
    if cycles.len() > MAX_VALUE_SET_CYCLES {
        return Err(Error::ResourceGuard(format!(
            "{} simple cycles at {}; at most {MAX_VALUE_SET_CYCLES} are supported",
            cycles.len(),
            a.vertices()[p]
        )));
    }
    let nodes: Vec<BTreeSet<usize>> =
        cycles.iter().map(|c| c.iter().map(|&x| g.arcs[x].src).collect()).collect();
    let values: Vec<GroupVector> = cycles.iter().map(|c| spec.sum(c.iter().map(|&x| &g.arcs[x].value))).collect();
    let connected = |set: &[usize]| -> bool {
        let mut touched: BTreeSet<usize> = BTreeSet::from([p]);
        let mut left: Vec<usize> = set.to_vec();
        loop {
            let before = left.len();
            left.retain(|&c| {
                if nodes[c].iter().any(|v| touched.contains(v)) {
                    touched.extend(nodes[c].iter().copied());
                    false
                } else {
                    true
                }
            });
            if left.is_empty() {
                return true;
            }
            if left.len() == before {
                return false;
            }
        }
    };
    let mut raw: BTreeSet<LinearSet> = BTreeSet::new();
    for mask in 0u32..(1u32 << cycles.len()) {
        let set: Vec<usize> = (0..cycles.len()).filter(|&i| mask >> i & 1 == 1).collect();
        if !connected(&set) {
            continue;
        }
        // Shrink the mandatory part while every optional cycle still touches it.
        let mut core = set.clone();
        for &c in &set {
            let trial: Vec<usize> = core.iter().copied().filter(|&x| x != c).collect();
            if !connected(&trial) {
                continue;
            }
            let mut touched: BTreeSet<usize> = BTreeSet::from([p]);
            for &x in &trial {
                touched.extend(nodes[x].iter().copied());
            }
            if set.iter().all(|&x| nodes[x].iter().any(|v| touched.contains(v))) {
                core = trial;
            }
        }
        let base = spec.sum(core.iter().map(|&x| &values[x]));
        let periods: BTreeSet<GroupVector> = set.iter().map(|&x| values[x].clone()).collect();
        raw.insert(LinearSet { base, periods: periods.into_iter().collect() });
    }
    let raw: Vec<LinearSet> = raw.into_iter().collect();
    let mut kept: Vec<LinearSet> = Vec::new();
    for (i, s) in raw.iter().enumerate() {
        let mut subsumed = false;
        for (j, t) in raw.iter().enumerate() {
            if i == j || !s.periods.iter().all(|p| t.periods.contains(p)) {
                continue;
            }
            if !in_linear_set(a, &t.base, &t.periods, &s.base)? {
                continue;
            }
            // Mutual subsumption keeps the earlier set.
            let mutual = t.periods.iter().all(|p| s.periods.contains(p)) && in_linear_set(a, &s.base, &s.periods, &t.base)?;
            if !mutual || j < i {
                subsumed = true;
                break;
            }
        }
        if !subsumed {
            kept.push(s.clone());
        }
    }
    Ok(LinearSetFamily { sets: kept })
}

pub fn accepts(a: &GAutomaton, u: &str, mode: SearchMode) -> Result<Verdict> {
    PathEngine::new(mode).accepts(a, u)
}

pub fn is_empty(a: &GAutomaton, mode: SearchMode) -> Result<Verdict> {
    PathEngine::new(mode).is_empty(a)
}

pub fn is_promising(a: &GAutomaton, omega: &PathWord, mode: SearchMode) -> Result<Verdict<(PathWord, PathWord)>> {
    PathEngine::new(mode).is_promising(a, omega)
}

pub fn find_accepting_path(a: &GAutomaton, c: &Constraints, mode: SearchMode) -> Result<Verdict<Found>> {
    PathEngine::new(mode).find_accepting_path(a, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const B: SearchMode = SearchMode::Bounded { max_len: 12, max_counter: 24 };

    fn path(a: &GAutomaton, s: &str) -> PathWord {
        a.parse_path(s).unwrap()
    }

    #[test]
    fn accepts_examples() {
        let a1 = fixtures::a1();
        assert_eq!(accepts(&a1, "aA", SearchMode::Exact).unwrap(), Verdict::Yes(path(&a1, "e_a e_A")));
        assert_eq!(accepts(&a1, "aaA", SearchMode::Exact).unwrap(), Verdict::No);
        assert_eq!(accepts(&a1, "aaA", B).unwrap(), Verdict::No);
        let a2 = fixtures::a2();
        let w = accepts(&a2, "stst", SearchMode::Exact).unwrap();
        assert_eq!(w, Verdict::Yes(path(&a2, "e_s01 e_t1 e_s10 e_t0")));
        assert!(accepts(&a2, "stst", B).unwrap().is_yes());
        assert!(matches!(accepts(&a1, "ab", SearchMode::Exact), Err(Error::UnknownLetter('b'))));
    }

    #[test]
    fn emptiness_examples() {
        assert_eq!(is_empty(&fixtures::a3(), SearchMode::Exact).unwrap(), Verdict::Yes(PathWord::empty()));
        assert_eq!(is_empty(&fixtures::a5(), SearchMode::Exact).unwrap(), Verdict::Yes(PathWord::empty()));
        let a4 = fixtures::a4();
        assert_eq!(is_empty(&a4, SearchMode::Exact).unwrap(), Verdict::Yes(path(&a4, "f1")));
        assert_eq!(is_empty(&a4, B).unwrap(), Verdict::Yes(path(&a4, "f1")));
    }

    #[test]
    fn promising_examples() {
        let a1 = fixtures::a1();
        let v = is_promising(&a1, &path(&a1, "e_a"), SearchMode::Exact).unwrap();
        assert_eq!(v, Verdict::Yes((PathWord::empty(), path(&a1, "e_A"))));
        let a5 = fixtures::a5();
        assert_eq!(is_promising(&a5, &path(&a5, "e_a"), SearchMode::Exact).unwrap(), Verdict::No);
        assert!(matches!(is_promising(&a5, &path(&a5, "e_a"), B).unwrap(), Verdict::Unknown(_)));
        let a2 = fixtures::a2();
        let v = is_promising(&a2, &path(&a2, "e_s01"), SearchMode::Exact).unwrap();
        assert_eq!(v, Verdict::Yes((PathWord::empty(), path(&a2, "e_s10"))));
    }

    #[test]
    fn constrained_examples() {
        let a1 = fixtures::a1();
        let v = find_accepting_path(&a1, &Constraints::spelling("aA"), SearchMode::Exact).unwrap();
        assert_eq!(v.witness().unwrap().path, path(&a1, "e_a e_A"));
        let a2 = fixtures::a2();
        let sigma = path(&a2, "e_s01 e_t1 e_s10");
        let c = Constraints::dominating(&PathWord::empty(), Some((&sigma, 0)));
        let f = find_accepting_path(&a2, &c, SearchMode::Exact).unwrap().witness().cloned().unwrap();
        assert_eq!(f.path, path(&a2, "e_t0 e_s01 e_t1 e_s10"));
        assert_eq!(f.milestone_starts, vec![1]);
        assert!(find_accepting_path(&a2, &c, B).unwrap().is_yes());
        let a5 = fixtures::a5();
        assert_eq!(find_accepting_path(&a5, &Constraints::spelling("a"), SearchMode::Exact).unwrap(), Verdict::No);
    }

    #[test]
    fn avoiding_found_paths() {
        let a4 = fixtures::a4();
        let c = Constraints { avoid: vec![path(&a4, "f1")], ..Constraints::default() };
        assert_eq!(find_accepting_path(&a4, &c, SearchMode::Exact).unwrap(), Verdict::No);
        let a1 = fixtures::a1();
        let c = Constraints { avoid: vec![path(&a1, "e_a e_A")], ..Constraints::default() };
        assert_eq!(find_accepting_path(&a1, &c, SearchMode::Exact).unwrap().witness().unwrap().path, PathWord::empty());
    }

    #[test]
    fn value_set_examples() {
        let a1 = fixtures::a1();
        let f = closed_value_sets(&a1, 0).unwrap();
        let z = |x: i64| a1.spec().element(vec![x]).unwrap();
        assert_eq!(f.sets, vec![LinearSet { base: z(0), periods: vec![z(-1), z(1)] }]);
        let a5 = fixtures::a5();
        assert_eq!(closed_value_sets(&a5, 0).unwrap().sets, vec![LinearSet { base: z(0), periods: vec![z(1)] }]);
        let a3 = fixtures::a3();
        let f3 = closed_value_sets(&a3, 0).unwrap();
        assert_eq!(f3.sets, vec![LinearSet { base: a3.spec().zero(), periods: vec![] }]);
    }

    #[test]
    fn value_sets_cover_short_closed_walks() {
        let a2 = fixtures::a2();
        for p in 0..2 {
            let fam = closed_value_sets(&a2, p).unwrap();
            let mut level = vec![(p, a2.spec().zero())];
            for _ in 0..5 {
                let mut next = Vec::new();
                for (v, val) in &level {
                    for e in a2.out_edges(*v) {
                        let edge = a2.edge(e);
                        next.push((edge.dst, a2.spec().add(val, &edge.g)));
                    }
                }
                for (v, val) in &next {
                    if *v == p {
                        assert!(fam.contains(&a2, val).unwrap());
                    }
                }
                level = next;
            }
        }
    }

    fn brute_accepts(a: &GAutomaton, v: usize, rest: &[char], slack: usize, sum: &GroupVector) -> bool {
        if rest.is_empty() && v == a.ter() && a.spec().is_zero(sum) {
            return true;
        }
        a.out_edges(v).any(|e| {
            let edge = a.edge(e);
            let next = a.spec().add(sum, &edge.g);
            match edge.sigma {
                None => slack > 0 && brute_accepts(a, edge.dst, rest, slack - 1, &next),
                Some(c) => rest.first() == Some(&c) && brute_accepts(a, edge.dst, &rest[1..], slack, &next),
            }
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn exact_accepts_is_sound_and_complete(seed in 0u64..1_000_000, u in "[ab]{0,4}") {
            let a = fixtures::random(seed, 3, 6, 1 + (seed % 2) as usize);
            let chars: Vec<char> = u.chars().collect();
            match PathEngine::new(SearchMode::Exact).accepts(&a, &u).unwrap() {
                Verdict::Yes(w) => proptest::prop_assert!(a.is_accepting(&w) && a.spell(&w) == u),
                Verdict::No => proptest::prop_assert!(!brute_accepts(&a, a.init(), &chars, 6, &a.spec().zero())),
                Verdict::Unknown(r) => proptest::prop_assert!(false, "exact mode undecided: {}", r),
            }
        }
    }
}
