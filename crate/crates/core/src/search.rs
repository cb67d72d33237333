//! Zero-sum path search over finite graphs with register-valued arcs.
//!
//! A [`SearchGraph`] has arcs labelled by nonempty edge sequences of the underlying
//! automaton; a run from the source to a sink whose values sum to the target is what
//! every decision procedure asks for. The exact solver splits such a run into a
//! simple path plus simple cycles, solves the cycle multiplicities as a Diophantine
//! system and checks that the chosen cycles stay connected to the path. Witnesses are
//! then canonicalized by a breadth-first search bounded by the length the solver
//! proved sufficient.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::automaton::{EdgeId, PathWord};
use crate::diophantine::{SolverCache, DEFAULT_SEARCH_CAP};
use crate::error::{Error, Result};
use crate::lattice::{AbelianSpec, GroupVector};

/// Resource limits; exceeding one in exact mode is a hard error, never a guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub cycles: usize,
    pub paths: usize,
    pub nodes: usize,
    pub bfs_states: usize,
    pub diophantine: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { cycles: 20_000, paths: 200_000, nodes: 200_000, bfs_states: 3_000_000, diophantine: DEFAULT_SEARCH_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Arc {
    pub src: usize,
    pub dst: usize,
    pub value: GroupVector,
    pub label: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub(crate) struct SearchGraph {
    pub spec: AbelianSpec,
    pub nodes: usize,
    pub arcs: Vec<Arc>,
    pub source: usize,
    pub sinks: Vec<bool>,
    pub target: GroupVector,
}

/// A run: the arcs taken and the edge sequence they spell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Run {
    pub arcs: Vec<usize>,
    pub path: PathWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(Run),
    Absent,
    Unknown(String),
}

impl SearchGraph {
    fn weight(&self, a: usize) -> usize {
        self.arcs[a].label.len()
    }

    fn run_value(&self, arcs: &[usize]) -> GroupVector {
        self.spec.sum(arcs.iter().map(|&a| &self.arcs[a].value))
    }

    fn run_of(&self, arcs: Vec<usize>) -> Run {
        let path = PathWord(arcs.iter().flat_map(|&a| self.arcs[a].label.iter().copied()).collect());
        Run { arcs, path }
    }

    /// Nodes reachable from the source and co-reachable to some sink.
    fn live_nodes(&self) -> Vec<bool> {
        let mut fwd = vec![false; self.nodes];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for a in &self.arcs {
            out[a.src].push(a.dst);
            inc[a.dst].push(a.src);
        }
        let mut stack = vec![self.source];
        fwd[self.source] = true;
        while let Some(x) = stack.pop() {
            for &y in &out[x] {
                if !fwd[y] {
                    fwd[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut bwd = vec![false; self.nodes];
        let mut stack: Vec<usize> = (0..self.nodes).filter(|&v| self.sinks[v]).collect();
        for &v in &stack {
            bwd[v] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &inc[x] {
                if !bwd[y] {
                    bwd[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.nodes).map(|v| fwd[v] && bwd[v]).collect()
    }
}

/// Exact decision plus canonical witness.
pub(crate) struct ExactSolver<'g> {
    g: &'g SearchGraph,
    caps: Caps,
    cache: &'g RefCell<SolverCache>,
}

/// Canonical witness search bounded by length and (optionally) counter norm.
pub(crate) fn bounded_search(g: &SearchGraph, max_len: usize, max_norm: Option<u64>, caps: Caps) -> Outcome {
    match bfs(g, max_len, max_norm, caps.bfs_states) {
        Bfs::Found(run) => Outcome::Found(run),
        Bfs::Exhausted => Outcome::Absent,
        Bfs::Pruned => Outcome::Unknown(format!(
            "no witness within length {max_len}{}",
            max_norm.map(|n| format!(" and counter norm {n}")).unwrap_or_default()
        )),
        Bfs::StateCap => Outcome::Unknown(format!("search exceeded {} states", caps.bfs_states)),
    }
}

impl<'g> ExactSolver<'g> {
    pub fn new(g: &'g SearchGraph, caps: Caps, cache: &'g RefCell<SolverCache>) -> Self {
        Self { g, caps, cache }
    }

    /// `Found` with the lexicographically least among shortest runs, or `Absent`.
    pub fn solve(&self) -> Result<Outcome> {
        let g = self.g;
        if g.sinks[g.source] && g.spec.is_zero(&g.target) {
            return Ok(Outcome::Found(g.run_of(Vec::new())));
        }
        let Some(euler) = self.decide()? else {
            return Ok(Outcome::Absent);
        };
        let bound = euler.iter().map(|&a| g.weight(a)).sum::<usize>();
        match bfs(g, bound, None, self.caps.bfs_states) {
            Bfs::Found(run) => Ok(Outcome::Found(run)),
            Bfs::StateCap => Ok(Outcome::Found(g.run_of(euler))),
            Bfs::Exhausted | Bfs::Pruned => Err(Error::Certification(format!(
                "solver produced a run of length {bound} that the canonical search cannot reproduce"
            ))),
        }
    }

    /// Some run (as arcs, in Euler order) or `None` when no run exists.
    fn decide(&self) -> Result<Option<Vec<usize>>> {
        let g = self.g;
        let live = g.live_nodes();
        if !live[g.source] {
            return Ok(None);
        }
        let arcs: Vec<usize> = (0..g.arcs.len()).filter(|&a| live[g.arcs[a].src] && live[g.arcs[a].dst]).collect();
        let cycles = simple_cycles(g, &arcs, self.caps.cycles)?;
        let cycle_nodes: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&a| g.arcs[a].src).collect()).collect();
        let cycle_values: Vec<GroupVector> = cycles.iter().map(|c| g.run_value(c)).collect();
        let moduli: Vec<Option<u64>> = (0..g.spec.dim()).map(|i| g.spec.modulus(i)).collect();
        let mut seen_groups: HashSet<(Vec<u64>, GroupVector)> = HashSet::new();
        let mut found: Option<Vec<usize>> = None;
        simple_paths(g, &arcs, &live, self.caps.paths, &mut |path: &[usize], end: usize| {
            let nodes = path_nodes(g, path, end);
            let bits = bitset(&nodes, g.nodes);
            let value = g.run_value(path);
            if !seen_groups.insert((bits, value.clone())) {
                return Ok(false);
            }
            let residual = g.spec.sub(&g.target, &value);
            if cycles.is_empty() {
                if g.spec.is_zero(&residual) {
                    found = Some(path.to_vec());
                    return Ok(true);
                }
                return Ok(false);
            }
            // Cycles that can be chained onto the path at all.
            let mut comp = vec![false; g.nodes];
            for &v in &nodes {
                comp[v] = true;
            }
            let mut usable = vec![false; cycles.len()];
            loop {
                let mut changed = false;
                for (i, cn) in cycle_nodes.iter().enumerate() {
                    if !usable[i] && cn.iter().any(|&v| comp[v]) {
                        usable[i] = true;
                        changed = true;
                        for &v in cn {
                            comp[v] = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let idx: Vec<usize> = (0..cycles.len()).filter(|&i| usable[i]).collect();
            if idx.is_empty() {
                if g.spec.is_zero(&residual) {
                    found = Some(path.to_vec());
                    return Ok(true);
                }
                return Ok(false);
            }
            // One column per distinct cycle value; cycles sharing a value are interchangeable
            // as far as the sum goes, so only connectivity tells them apart.
            let mut values: Vec<&GroupVector> = Vec::new();
            let class_of: Vec<usize> = idx
                .iter()
                .map(|&i| match values.iter().position(|v| **v == cycle_values[i]) {
                    Some(c) => c,
                    None => {
                        values.push(&cycle_values[i]);
                        values.len() - 1
                    }
                })
                .collect();
            let columns: Vec<Vec<i64>> = values.iter().map(|v| v.coords().to_vec()).collect();
            let sols = self.cache.borrow_mut().solve(&columns, residual.coords(), &moduli, self.caps.diophantine)?;
            let mut budget = self.caps.paths;
            for b in &sols.minimal {
                let mut spread = vec![0u64; idx.len()];
                let mut hit = None;
                distribute(b, &class_of, 0, &mut spread, &mut budget, &mut |d| {
                    hit = connected_choice(d, &sols.hilbert, &class_of, &idx, &cycle_nodes, &nodes, g.nodes);
                    hit.is_some()
                })?;
                if let Some(mult) = hit {
                    let mut counts = vec![0u64; cycles.len()];
                    for (k, &i) in idx.iter().enumerate() {
                        counts[i] = mult[k];
                    }
                    found = Some(euler_run(g, path, end, &cycles, &counts));
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        Ok(found)
    }
}

/// Every way of spreading the per-class counts `b` over the cycles of each class;
/// stops as soon as `visit` returns true.
fn distribute(
    b: &[u64],
    class_of: &[usize],
    k: usize,
    spread: &mut Vec<u64>,
    budget: &mut usize,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> Result<bool> {
    if k == class_of.len() {
        if *budget == 0 {
            return Err(Error::ResourceGuard("too many cycle assignments".into()));
        }
        *budget -= 1;
        return Ok(visit(spread));
    }
    let c = class_of[k];
    let used: u64 = spread[..k].iter().zip(class_of).filter(|(_, &d)| d == c).map(|(x, _)| x).sum();
    let left = b[c] - used;
    let last = !class_of[k + 1..].contains(&c);
    let range = if last { left..=left } else { 0..=left };
    for x in range.rev() {
        spread[k] = x;
        if distribute(b, class_of, k + 1, spread, budget, visit)? {
            return Ok(true);
        }
    }
    spread[k] = 0;
    Ok(false)
}

/// Greatest set of Hilbert-basis elements (over value classes) whose cycles stay
/// connected to the path together with the cycle counts `d`; returns the resulting
/// per-cycle multiplicities when `d`'s own cycles are connected under that choice.
fn connected_choice(
    d: &[u64],
    hilbert: &[Vec<u64>],
    class_of: &[usize],
    idx: &[usize],
    cycle_nodes: &[Vec<usize>],
    path_nodes: &[usize],
    n: usize,
) -> Option<Vec<u64>> {
    let mut keep: Vec<bool> = vec![true; hilbert.len()];
    loop {
        let support: Vec<bool> = (0..idx.len())
            .map(|k| d[k] > 0 || hilbert.iter().zip(&keep).any(|(h, &on)| on && h[class_of[k]] > 0))
            .collect();
        let comp = component(path_nodes, &support, idx, cycle_nodes, n);
        let reached: Vec<bool> =
            (0..hilbert.first().map_or(0, Vec::len)).map(|c| (0..idx.len()).any(|k| comp[k] && class_of[k] == c)).collect();
        let mut changed = false;
        for (h, on) in hilbert.iter().zip(keep.iter_mut()) {
            if *on && h.iter().enumerate().any(|(c, &x)| x > 0 && !reached[c]) {
                *on = false;
                changed = true;
            }
        }
        if changed {
            continue;
        }
        if !(0..idx.len()).all(|k| d[k] == 0 || comp[k]) {
            return None;
        }
        // One copy of each kept element per connected cycle of each of its classes.
        let mut mult = d.to_vec();
        let first: Vec<Option<usize>> =
            reached.iter().enumerate().map(|(c, _)| (0..idx.len()).find(|&k| comp[k] && class_of[k] == c)).collect();
        for (h, _) in hilbert.iter().zip(&keep).filter(|(_, &on)| on) {
            for k in (0..idx.len()).filter(|&k| comp[k] && h[class_of[k]] > 0) {
                for (c, &x) in h.iter().enumerate().filter(|(_, &x)| x > 0) {
                    let at = if c == class_of[k] { k } else { first[c].expect("reached class") };
                    mult[at] += x;
                }
            }
        }
        return Some(mult);
    }
}

/// Which of the supported cycles are connected to the path through supported cycles.
fn component(path_nodes: &[usize], support: &[bool], idx: &[usize], cycle_nodes: &[Vec<usize>], n: usize) -> Vec<bool> {
    let mut touched = vec![false; n];
    for &v in path_nodes {
        touched[v] = true;
    }
    let mut inside = vec![false; idx.len()];
    loop {
        let mut changed = false;
        for k in 0..idx.len() {
            if support[k] && !inside[k] && cycle_nodes[idx[k]].iter().any(|&v| touched[v]) {
                inside[k] = true;
                changed = true;
                for &v in &cycle_nodes[idx[k]] {
                    touched[v] = true;
                }
            }
        }
        if !changed {
            return inside;
        }
    }
}

fn path_nodes(g: &SearchGraph, path: &[usize], end: usize) -> Vec<usize> {
    if path.is_empty() {
        return vec![end];
    }
    let mut v: Vec<usize> = path.iter().map(|&a| g.arcs[a].src).collect();
    v.push(end);
    v
}

fn bitset(nodes: &[usize], n: usize) -> Vec<u64> {
    let mut bits = vec![0u64; n.div_ceil(64)];
    for &v in nodes {
        bits[v / 64] |= 1 << (v % 64);
    }
    bits
}

/// Eulerian trail through the path and the chosen cycle multiset (Hierholzer).
fn euler_run(g: &SearchGraph, path: &[usize], end: usize, cycles: &[Vec<usize>], counts: &[u64]) -> Vec<usize> {
    let mut out_arcs: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut push = |a: usize| out_arcs.entry(g.arcs[a].src).or_default().push(a);
    for &a in path {
        push(a);
    }
    for (c, &k) in cycles.iter().zip(counts) {
        for _ in 0..k {
            for &a in c {
                push(a);
            }
        }
    }
    for list in out_arcs.values_mut() {
        list.sort_unstable_by(|a, b| b.cmp(a));
    }
    let start = if path.is_empty() { end } else { g.arcs[path[0]].src };
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut trail = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        match out_arcs.get_mut(&v).and_then(Vec::pop) {
            Some(a) => stack.push((g.arcs[a].dst, Some(a))),
            None => {
                stack.pop();
                if let Some(a) = via {
                    trail.push(a);
                }
            }
        }
    }
    trail.reverse();
    trail
}

/// Simple cycles among `arcs`, each listed once starting from its least node.
pub(crate) fn simple_cycles(g: &SearchGraph, arcs: &[usize], cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); g.nodes];
    for &a in arcs {
        out_arcs[g.arcs[a].src].push(a);
    }
    let scc = scc_ids(g.nodes, &out_arcs, g);
    let mut cycles = Vec::new();
    let mut on_path = vec![false; g.nodes];
    for start in 0..g.nodes {
        if out_arcs[start].is_empty() {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        let mut arcs_taken: Vec<usize> = Vec::new();
        on_path[start] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out_arcs[v].len() {
                let a = out_arcs[v][*i];
                *i += 1;
                let w = g.arcs[a].dst;
                if w == start {
                    let mut c = arcs_taken.clone();
                    c.push(a);
                    cycles.push(c);
                    if cycles.len() > cap {
                        return Err(Error::ResourceGuard(format!("more than {cap} simple cycles")));
                    }
                } else if w > start && !on_path[w] && scc[w] == scc[start] {
                    on_path[w] = true;
                    arcs_taken.push(a);
                    stack.push((w, 0));
                }
            } else {
                on_path[v] = false;
                stack.pop();
                if !stack.is_empty() {
                    arcs_taken.pop();
                }
            }
        }
    }
    Ok(cycles)
}

fn scc_ids(n: usize, out_arcs: &[Vec<usize>], g: &SearchGraph) -> Vec<usize> {
    // Kosaraju with explicit stacks.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out_arcs[v].len() {
                let w = g.arcs[out_arcs[v][*i]].dst;
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, list) in out_arcs.iter().enumerate() {
        for &a in list {
            rev[g.arcs[a].dst].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Calls `visit(path, end)` for every simple path from the source to a sink, in
/// depth-first order by arc id; stops early when `visit` returns `true`.
fn simple_paths(
    g: &SearchGraph,
    arcs: &[usize],
    live: &[bool],
    cap: usize,
    visit: &mut dyn FnMut(&[usize], usize) -> Result<bool>,
) -> Result<()> {
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); g.nodes];
    for &a in arcs {
        out_arcs[g.arcs[a].src].push(a);
    }
    let mut on_path = vec![false; g.nodes];
    let mut count = 0usize;
    let mut stack: Vec<(usize, usize)> = vec![(g.source, 0)];
    let mut taken: Vec<usize> = Vec::new();
    on_path[g.source] = true;
    if g.sinks[g.source] && visit(&[], g.source)? {
        return Ok(());
    }
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < out_arcs[v].len() {
            let a = out_arcs[v][*i];
            *i += 1;
            let w = g.arcs[a].dst;
            if on_path[w] || !live[w] {
                continue;
            }
            taken.push(a);
            if g.sinks[w] {
                count += 1;
                if count > cap {
                    return Err(Error::ResourceGuard(format!("more than {cap} simple paths")));
                }
                if visit(&taken, w)? {
                    return Ok(());
                }
            }
            on_path[w] = true;
            stack.push((w, 0));
        } else {
            on_path[v] = false;
            stack.pop();
            taken.pop();
        }
    }
    Ok(())
}

enum Bfs {
    Found(Run),
    Exhausted,
    Pruned,
    StateCap,
}

/// Unit-step transition of the subdivided graph.
#[derive(Clone, Copy)]
struct Step {
    edge: EdgeId,
    arc: usize,
    first: bool,
    next: usize,
}

/// Breadth-first search over (position, value) states of the subdivided graph.
/// Positions `0..nodes` are graph nodes; the rest are interior points of long arcs.
fn bfs(g: &SearchGraph, max_len: usize, max_norm: Option<u64>, state_cap: usize) -> Bfs {
    let n = g.nodes;
    let mut mid_base = vec![0usize; g.arcs.len()];
    let mut total = n;
    for (a, arc) in g.arcs.iter().enumerate() {
        mid_base[a] = total;
        total += arc.label.len() - 1;
    }
    let mut steps: Vec<Vec<Step>> = vec![Vec::new(); total];
    for (a, arc) in g.arcs.iter().enumerate() {
        let w = arc.label.len();
        let pos = |k: usize| if k == w { arc.dst } else { mid_base[a] + k - 1 };
        steps[arc.src].push(Step { edge: arc.label[0], arc: a, first: true, next: pos(1) });
        for k in 1..w {
            steps[mid_base[a] + k - 1].push(Step { edge: arc.label[k], arc: a, first: false, next: pos(k + 1) });
        }
    }
    for list in &mut steps {
        list.sort_by_key(|s| (s.edge, s.next));
    }
    // Unit distance from each position to the nearest sink.
    let mut dist = vec![usize::MAX; total];
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (x, list) in steps.iter().enumerate() {
        for s in list {
            rev[s.next].push(x);
        }
    }
    let mut queue = VecDeque::new();
    for v in 0..n {
        if g.sinks[v] {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &rev[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let spec = &g.spec;
    let zero = spec.zero();
    let step_value = |s: &Step| if s.first { &g.arcs[s.arc].value } else { &zero };
    let is_goal = |pos: usize, v: &GroupVector| pos < n && g.sinks[pos] && *v == g.target;

    let mut index: HashMap<(usize, GroupVector), usize> = HashMap::new();
    let mut states: Vec<(usize, GroupVector)> = Vec::new();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let start = (g.source, zero.clone());
    if dist[g.source] == usize::MAX {
        return Bfs::Exhausted;
    }
    index.insert(start.clone(), 0);
    states.push(start.clone());
    layers.push(vec![0]);
    let mut goal: Option<usize> = if is_goal(start.0, &start.1) { Some(0) } else { None };
    let mut pruned = false;
    let mut depth = 0;
    while goal.is_none() {
        if depth >= max_len {
            pruned |= layers[depth].iter().any(|&sid| steps[states[sid].0].iter().any(|s| dist[s.next] != usize::MAX));
            break;
        }
        let mut next = Vec::new();
        for &sid in &layers[depth] {
            let (pos, val) = states[sid].clone();
            for s in &steps[pos] {
                if dist[s.next] == usize::MAX {
                    continue;
                }
                if depth + 1 + dist[s.next] > max_len {
                    pruned = true;
                    continue;
                }
                let nv = spec.add(&val, step_value(s));
                if let Some(cap) = max_norm {
                    if spec.free_norm(&nv) > cap {
                        pruned = true;
                        continue;
                    }
                }
                let key = (s.next, nv);
                if index.contains_key(&key) {
                    continue;
                }
                let id = states.len();
                if goal.is_none() && is_goal(key.0, &key.1) {
                    goal = Some(id);
                }
                index.insert(key.clone(), id);
                states.push(key);
                next.push(id);
                if states.len() > state_cap {
                    return Bfs::StateCap;
                }
            }
        }
        depth += 1;
        let empty = next.is_empty();
        layers.push(next);
        if empty {
            break;
        }
    }
    let Some(goal) = goal else {
        return if pruned { Bfs::Pruned } else { Bfs::Exhausted };
    };
    let d = layers.iter().position(|l| l.contains(&goal)).expect("goal was layered");
    // States on some shortest run to the goal.
    let mut good: Vec<HashSet<usize>> = vec![HashSet::new(); d + 1];
    good[d].insert(goal);
    let succ = |sid: usize, s: &Step| -> Option<usize> {
        let (_, ref val) = states[sid];
        index.get(&(s.next, spec.add(val, step_value(s)))).copied()
    };
    for k in (0..d).rev() {
        for &sid in &layers[k] {
            if steps[states[sid].0].iter().any(|s| succ(sid, s).is_some_and(|t| good[k + 1].contains(&t))) {
                good[k].insert(sid);
            }
        }
    }
    // Greedy lexicographic walk, tracking every state consistent with the prefix.
    let mut fronts: Vec<Vec<usize>> = vec![vec![0]];
    let mut edges = Vec::with_capacity(d);
    for k in 0..d {
        let mut best: Option<EdgeId> = None;
        let mut next: Vec<usize> = Vec::new();
        for &sid in &fronts[k] {
            for s in &steps[states[sid].0] {
                if let Some(t) = succ(sid, s).filter(|t| good[k + 1].contains(t)) {
                    match best {
                        Some(b) if s.edge > b => {}
                        Some(b) if s.edge == b => {
                            if !next.contains(&t) {
                                next.push(t);
                            }
                        }
                        _ => {
                            best = Some(s.edge);
                            next = vec![t];
                        }
                    }
                }
            }
        }
        edges.push(best.expect("good states have good successors"));
        fronts.push(next);
    }
    // Recover one arc sequence spelling the chosen edges.
    let mut arcs_rev = Vec::new();
    let mut cur = *fronts[d].first().expect("goal reached");
    for k in (0..d).rev() {
        let (sid, step) = fronts[k]
            .iter()
            .find_map(|&sid| {
                steps[states[sid].0]
                    .iter()
                    .find(|s| s.edge == edges[k] && succ(sid, s) == Some(cur))
                    .map(|s| (sid, *s))
            })
            .expect("front states connect");
        if step.first {
            arcs_rev.push(step.arc);
        }
        cur = sid;
    }
    arcs_rev.reverse();
    Bfs::Found(Run { arcs: arcs_rev, path: PathWord(edges) })
}
