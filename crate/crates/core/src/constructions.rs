//! Builders for word-problem automata and the closure constructions.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::automaton::{Edge, GAutomaton};
use crate::error::{Error, Result};
use crate::group::{presets, ChoiceOfGenerators, TargetGroupElement, TargetGroupSpec};
use crate::lattice::{self, AbelianSpec, GroupVector, LatticeSubgroup};

/// Largest number of coset sheets [`register_restrict`] will build.
pub const MAX_SHEETS: u64 = 4096;

/// One-vertex automaton over `Z^n` with a loop per letter of [`presets::free_abelian`].
pub fn build_wp_abelian(n: usize) -> Result<(GAutomaton, ChoiceOfGenerators)> {
    if n == 0 {
        return Err(Error::Usage("rank must be at least 1".into()));
    }
    let rho = presets::free_abelian(n);
    let a = build_wp_virtually_abelian(&rho)?;
    Ok((a, rho))
}

/// Deterministic automaton accepting the word problem of `H` under `ρ`.
///
/// States are the elements of the point group `F` (a single state `q` when `F` is
/// trivial). A letter with image `(v, f)` moves `f₀ → f₀f` and adds `f₀·v`.
/// Abelian `H` registers in `H` itself; finite `H` uses the rank-0 register group.
pub fn build_wp_virtually_abelian(rho: &ChoiceOfGenerators) -> Result<GAutomaton> {
    let alphabet: Vec<char> = rho.letters().to_vec();
    match rho.group() {
        TargetGroupSpec::Abelian(spec) => {
            let edges = rho
                .assignment()
                .map(|(c, x)| match x {
                    TargetGroupElement::Abelian(v) => {
                        Edge { name: format!("e_{c}"), src: 0, dst: 0, g: v.clone(), sigma: Some(c) }
                    }
                    _ => unreachable!("validated by ChoiceOfGenerators"),
                })
                .collect();
            GAutomaton::new(spec.clone(), alphabet, vec!["q".into()], edges, 0, 0)
        }
        TargetGroupSpec::Finite(f) => {
            let images: Vec<(char, Vec<i64>, usize)> = rho
                .assignment()
                .map(|(c, x)| match x {
                    TargetGroupElement::Finite(p) => (c, Vec::new(), *p),
                    _ => unreachable!("validated by ChoiceOfGenerators"),
                })
                .collect();
            sheets(AbelianSpec::free(0), f.order(), f.identity(), |a, b| f.mul(a, b), |_, v| v.to_vec(), &images, alphabet)
        }
        TargetGroupSpec::VirtuallyAbelian(s) => {
            let images: Vec<(char, Vec<i64>, usize)> = rho
                .assignment()
                .map(|(c, x)| match x {
                    TargetGroupElement::Semidirect { translation, point } => (c, translation.clone(), *point),
                    _ => unreachable!("validated by ChoiceOfGenerators"),
                })
                .collect();
            let f = s.point_group();
            sheets(
                AbelianSpec::free(s.rank()),
                f.order(),
                f.identity(),
                |a, b| f.mul(a, b),
                |p, v| s.act(p, v),
                &images,
                alphabet,
            )
        }
    }
}

fn sheets(
    spec: AbelianSpec,
    order: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    act: impl Fn(usize, &[i64]) -> Vec<i64>,
    images: &[(char, Vec<i64>, usize)],
    alphabet: Vec<char>,
) -> Result<GAutomaton> {
    // Identity first, so that it becomes vertex 0.
    let mut order_of: Vec<usize> = vec![identity];
    order_of.extend((0..order).filter(|&x| x != identity));
    let pos: HashMap<usize, usize> = order_of.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let single = order == 1;
    let vname = |i: usize| if single { "q".to_string() } else { format!("q{i}") };
    let sep = if order > 10 { "_" } else { "" };
    let mut loops = Vec::new();
    let mut moves = Vec::new();
    for (i, &f0) in order_of.iter().enumerate() {
        for (c, v, f) in images {
            let j = pos[&mul(f0, *f)];
            let g = spec.element(act(f0, v))?;
            if i == j {
                let name = if single { format!("e_{c}") } else { format!("e_{c}{i}") };
                loops.push(Edge { name, src: i, dst: j, g, sigma: Some(*c) });
            } else {
                moves.push(Edge { name: format!("e_{c}{i}{sep}{j}"), src: i, dst: j, g, sigma: Some(*c) });
            }
        }
    }
    loops.extend(moves);
    let vertices = (0..order).map(vname).collect();
    GAutomaton::new(spec, alphabet, vertices, loops, 0, 0)
}

/// Automaton over `Δ` accepting `φ⁻¹(L(A))`, where `phi` maps each letter of `Δ` to a
/// word over the alphabet of `A`.
///
/// Reading `b` with `φ(b) = c_1…c_k` walks through `k - 1` stage copies of `A`; the
/// first step reads `b`, the rest are ε-edges. ε-edges of `A` are copied into every
/// stage. Letters with `φ(b) = ε` become zero loops at every original vertex.
pub fn inverse_hom_pullback(a: &GAutomaton, phi: &[(char, String)]) -> Result<GAutomaton> {
    let mut delta = Vec::new();
    for (b, w) in phi {
        if delta.contains(b) {
            return Err(Error::Usage(format!("letter {b:?} mapped twice")));
        }
        if let Some(c) = w.chars().find(|c| !a.alphabet().contains(c)) {
            return Err(Error::UnknownLetter(c));
        }
        delta.push(*b);
    }
    let spec = a.spec().clone();
    let n = a.vertex_count();
    let mut vertices: Vec<String> = a.vertices().to_vec();
    // stage_base[b][i] = id of the copy of vertex 0 at stage i (1 ≤ i < k).
    let mut stage_base: Vec<Vec<usize>> = Vec::new();
    for (b, w) in phi {
        let k = w.chars().count();
        let mut bases = vec![0];
        for i in 1..k.max(1) {
            bases.push(vertices.len());
            for v in a.vertices() {
                vertices.push(format!("{v}@{b}{i}"));
            }
        }
        stage_base.push(bases);
    }
    let mut edges = Vec::new();
    for e in a.edges().iter().filter(|e| e.sigma.is_none()) {
        edges.push(e.clone());
    }
    for (bi, (b, w)) in phi.iter().enumerate() {
        let letters: Vec<char> = w.chars().collect();
        let k = letters.len();
        let at = |stage: usize, v: usize| if stage == 0 || stage == k { v } else { stage_base[bi][stage] + v };
        if k == 0 {
            for v in 0..n {
                edges.push(Edge {
                    name: format!("{b}@{}", a.vertices()[v]),
                    src: v,
                    dst: v,
                    g: spec.zero(),
                    sigma: Some(*b),
                });
            }
            continue;
        }
        for stage in 1..k {
            for e in a.edges().iter().filter(|e| e.sigma.is_none()) {
                edges.push(Edge {
                    name: format!("{}@{b}{stage}", e.name),
                    src: at(stage, e.src),
                    dst: at(stage, e.dst),
                    g: e.g.clone(),
                    sigma: None,
                });
            }
        }
        for (i, &c) in letters.iter().enumerate() {
            for e in a.edges().iter().filter(|e| e.sigma == Some(c)) {
                edges.push(Edge {
                    name: format!("{}@{b}{i}>", e.name),
                    src: at(i, e.src),
                    dst: at(i + 1, e.dst),
                    g: e.g.clone(),
                    sigma: if i == 0 { Some(*b) } else { None },
                });
            }
        }
    }
    GAutomaton::new(spec, delta, vertices, edges, a.init(), a.ter())
}

/// Relabels a torsion-free register group into `target` through an injective map.
/// `images[i]` is the image of the `i`-th unit vector.
pub fn register_extend(a: &GAutomaton, target: &AbelianSpec, images: &[GroupVector]) -> Result<GAutomaton> {
    let src = a.spec();
    if !src.is_torsion_free() {
        return Err(Error::Unsupported("register_extend needs a torsion-free source group".into()));
    }
    if images.len() != src.dim() {
        return Err(Error::SpecMismatch(format!("{} images for a rank-{} group", images.len(), src.dim())));
    }
    for g in images {
        target.check(g)?;
    }
    let free: Vec<Vec<i64>> = images.iter().map(|g| g.coords()[..target.free_rank()].to_vec()).collect();
    if lattice::column_rank(&free, target.free_rank()) < src.dim() {
        return Err(Error::NotInjective("embedding images are linearly dependent on the free part".into()));
    }
    let edges = a
        .edges()
        .iter()
        .map(|e| {
            let g = target.sum(std::iter::empty());
            let g = e.g.coords().iter().zip(images).fold(g, |acc, (&k, im)| target.add(&acc, &target.scale(im, k)));
            Edge { g, ..e.clone() }
        })
        .collect();
    GAutomaton::new(target.clone(), a.alphabet().to_vec(), a.vertices().to_vec(), edges, a.init(), a.ter())
}

/// Coset construction: an automaton registering in the finite-index subgroup `sub`,
/// with coordinates taken in its canonical basis.
///
/// States are pairs (vertex, coset representative); an edge `g` from `(v, c)` goes to
/// `(v', c')` with `c' = rep(c + g)` and register `c + g - c'`.
pub fn register_restrict(a: &GAutomaton, sub: &LatticeSubgroup) -> Result<GAutomaton> {
    let spec = a.spec();
    if sub.spec() != spec {
        return Err(Error::SpecMismatch(format!("subgroup of {} for an automaton over {}", sub.spec(), spec)));
    }
    if !spec.is_torsion_free() {
        return Err(Error::Unsupported("register_restrict needs a torsion-free register group".into()));
    }
    let index = sub.index_in_ambient();
    let Some(count) = index.as_u64() else {
        return Err(Error::InfiniteIndex);
    };
    if count > MAX_SHEETS {
        return Err(Error::ResourceGuard(format!("index {count} exceeds {MAX_SHEETS} sheets")));
    }
    let transversal = transversal(sub)?;
    let sheet_of: HashMap<GroupVector, usize> = transversal.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let target = AbelianSpec::free(sub.basis().len());
    let t = transversal.len();
    let single = t == 1;
    let mut vertices = Vec::with_capacity(a.vertex_count() * t);
    for v in a.vertices() {
        for c in &transversal {
            vertices.push(if single { v.clone() } else { format!("{v}/{c}") });
        }
    }
    let mut edges = Vec::new();
    for e in a.edges() {
        for (ci, c) in transversal.iter().enumerate() {
            let moved = spec.add(c, &e.g);
            let rep = sub.coset_rep(&moved)?;
            let cj = sheet_of[&rep];
            let label = spec.sub(&moved, &rep);
            let coeffs = sub.coordinates(&label)?.expect("difference of coset members lies in the subgroup");
            let coords = coeffs
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::ResourceGuard("coordinate overflow".into())))
                .collect::<Result<Vec<_>>>()?;
            edges.push(Edge {
                name: if single { e.name.clone() } else { format!("{}/{c}", e.name) },
                src: e.src * t + ci,
                dst: e.dst * t + cj,
                g: target.element(coords)?,
                sigma: e.sigma,
            });
        }
    }
    let zero = sheet_of[&spec.zero()];
    GAutomaton::new(target, a.alphabet().to_vec(), vertices, edges, a.init() * t + zero, a.ter() * t + zero)
}

/// Coset representatives of a full-rank subgroup of `Z^r`: the box `0 ≤ x_i < pivot_i`,
/// in lexicographic order.
fn transversal(sub: &LatticeSubgroup) -> Result<Vec<GroupVector>> {
    let spec = sub.spec();
    let dim = spec.dim();
    let mut bounds = vec![1i64; dim];
    for (row, &pc) in sub.basis().iter().zip(sub.pivots()) {
        bounds[pc] = row[pc].to_i64().ok_or_else(|| Error::ResourceGuard("pivot overflow".into()))?;
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    loop {
        out.push(spec.element(cur.clone())?);
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Graphviz rendering. The initial vertex is drawn bold, the terminal one doubled;
/// edges are labelled `σ / g`.
pub fn export_dot(a: &GAutomaton) -> String {
    let mut out = String::new();
    out.push_str("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, v) in a.vertices().iter().enumerate() {
        let mut attrs = Vec::new();
        if i == a.ter() {
            attrs.push("shape=doublecircle");
        }
        if i == a.init() {
            attrs.push("style=bold");
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {};", quote(v));
        } else {
            let _ = writeln!(out, "  {} [{}];", quote(v), attrs.join(", "));
        }
    }
    for e in a.edges() {
        let sigma = e.sigma.map(String::from).unwrap_or_else(|| "ε".into());
        let _ = writeln!(
            out,
            "  {} -> {} [id={}, label={}];",
            quote(&a.vertices()[e.src]),
            quote(&a.vertices()[e.dst]),
            quote(&e.name),
            quote(&format!("{sigma} / {}", e.g))
        );
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::PathWord;
    use crate::fixtures;
    use crate::lattice::canonical_basis;

    fn gv(c: &[i64]) -> GroupVector {
        AbelianSpec::free(c.len()).element(c.to_vec()).unwrap()
    }

    /// Brute force: every path spelling `u` with at most `slack` ε-edges in total.
    fn brute_accepts(a: &GAutomaton, u: &str, slack: usize) -> bool {
        fn go(a: &GAutomaton, v: usize, rest: &[char], slack: usize, sum: &GroupVector) -> bool {
            if rest.is_empty() && v == a.ter() && a.spec().is_zero(sum) {
                return true;
            }
            for e in a.out_edges(v) {
                let edge = a.edge(e);
                let next = a.spec().add(sum, &edge.g);
                match edge.sigma {
                    None if slack > 0 => {
                        if go(a, edge.dst, rest, slack - 1, &next) {
                            return true;
                        }
                    }
                    Some(c) if rest.first() == Some(&c) => {
                        if go(a, edge.dst, &rest[1..], slack, &next) {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
            false
        }
        let chars: Vec<char> = u.chars().collect();
        go(a, a.init(), &chars, slack, &a.spec().zero())
    }

    fn words(alphabet: &[char], max: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut level = vec![String::new()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &level {
                for c in alphabet {
                    next.push(format!("{w}{c}"));
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    #[test]
    fn abelian_builders() {
        let (a, _) = build_wp_abelian(1).unwrap();
        assert_eq!(a, fixtures::a1());
        let (a2, rho) = build_wp_abelian(2).unwrap();
        assert_eq!(a2.edges().len(), 4);
        assert_eq!(a2.vertex_count(), 1);
        assert!(a2.is_accepting(&PathWord::empty()));
        for w in words(rho.letters(), 4) {
            assert_eq!(brute_accepts(&a2, &w, 0), rho.is_identity(&rho.evaluate_word(&w).unwrap()), "{w}");
        }
        assert!(build_wp_abelian(0).is_err());
    }

    #[test]
    fn dihedral_builder_is_a2() {
        let a = build_wp_virtually_abelian(&fixtures::a2_rho()).unwrap();
        assert_eq!(a, fixtures::a2());
    }

    #[test]
    fn dihedral_builder_matches_group_oracle() {
        let rho = fixtures::a2_rho();
        let a = build_wp_virtually_abelian(&rho).unwrap();
        for w in words(rho.letters(), 6) {
            assert_eq!(brute_accepts(&a, &w, 0), rho.is_identity(&rho.evaluate_word(&w).unwrap()), "{w}");
        }
    }

    #[test]
    fn trivial_and_z_builders() {
        let a = build_wp_virtually_abelian(&fixtures::a3_rho()).unwrap();
        assert_eq!(a, fixtures::a3());
        let point = crate::group::FiniteGroup::trivial();
        let z = TargetGroupSpec::VirtuallyAbelian(crate::group::SemidirectGroup::new(1, point, vec![vec![vec![1]]]).unwrap());
        let el = |t| TargetGroupElement::Semidirect { translation: vec![t], point: 0 };
        let rho = ChoiceOfGenerators::new(z, vec![('a', el(1)), ('A', el(-1))], None).unwrap();
        assert_eq!(build_wp_virtually_abelian(&rho).unwrap(), fixtures::a1());
    }

    #[test]
    fn finite_group_builder() {
        let rho = ChoiceOfGenerators::new(
            TargetGroupSpec::Finite(crate::group::FiniteGroup::cyclic(3)),
            vec![('r', TargetGroupElement::Finite(1)), ('R', TargetGroupElement::Finite(2))],
            None,
        )
        .unwrap();
        let a = build_wp_virtually_abelian(&rho).unwrap();
        assert_eq!(a.vertex_count(), 3);
        for w in words(rho.letters(), 5) {
            assert_eq!(brute_accepts(&a, &w, 0), rho.is_identity(&rho.evaluate_word(&w).unwrap()), "{w}");
        }
    }

    #[test]
    fn pullback_examples() {
        let a1 = fixtures::a1();
        let p = inverse_hom_pullback(&a1, &[('b', "aA".into())]).unwrap();
        for n in 0..4 {
            assert!(brute_accepts(&p, &"b".repeat(n), n), "{n}");
        }
        let p = inverse_hom_pullback(&a1, &[('b', String::new())]).unwrap();
        for n in 0..4 {
            assert!(brute_accepts(&p, &"b".repeat(n), 0));
        }
        let p = inverse_hom_pullback(&fixtures::a4(), &[('b', String::new())]).unwrap();
        assert!(brute_accepts(&p, "bb", 1));
        let id = inverse_hom_pullback(&a1, &[('a', "a".into()), ('A', "A".into())]).unwrap();
        for w in words(&['a', 'A'], 5) {
            assert_eq!(brute_accepts(&id, &w, 0), brute_accepts(&a1, &w, 0));
        }
    }

    #[test]
    fn pullback_mixed_images() {
        let a2 = fixtures::a2();
        let phi = [('u', "st".to_string()), ('v', "Ts".to_string()), ('w', String::new())];
        let p = inverse_hom_pullback(&a2, &phi).unwrap();
        let map: HashMap<char, &str> = phi.iter().map(|(c, w)| (*c, w.as_str())).collect();
        for w in words(&['u', 'v', 'w'], 4) {
            let image: String = w.chars().map(|c| map[&c]).collect();
            assert_eq!(brute_accepts(&p, &w, 2 * w.len()), brute_accepts(&a2, &image, 0), "{w}");
        }
        assert!(matches!(inverse_hom_pullback(&a2, &[('u', "x".into())]), Err(Error::UnknownLetter('x'))));
    }

    #[test]
    fn extend_examples() {
        let a1 = fixtures::a1();
        let z2 = AbelianSpec::free(2);
        let e = register_extend(&a1, &z2, &[z2.element(vec![1, 0]).unwrap()]).unwrap();
        let d = register_extend(&a1, &AbelianSpec::free(1), &[gv(&[2])]).unwrap();
        for w in words(&['a', 'A'], 6) {
            let want = brute_accepts(&a1, &w, 0);
            assert_eq!(brute_accepts(&e, &w, 0), want);
            assert_eq!(brute_accepts(&d, &w, 0), want);
        }
        let same = register_extend(&a1, &AbelianSpec::free(1), &[gv(&[1])]).unwrap();
        assert_eq!(same, a1);
        let bad = register_extend(&a1, &AbelianSpec::free(1), &[gv(&[0])]);
        assert!(matches!(bad, Err(Error::NotInjective(_))));
    }

    #[test]
    fn extend_into_torsion_needs_free_rank() {
        let a1 = fixtures::a1();
        let t = AbelianSpec::new(1, vec![4]).unwrap();
        assert!(register_extend(&a1, &t, &[t.element(vec![0, 1]).unwrap()]).is_err());
        let ok = register_extend(&a1, &t, &[t.element(vec![1, 1]).unwrap()]).unwrap();
        for w in words(&['a', 'A'], 5) {
            assert_eq!(brute_accepts(&ok, &w, 0), brute_accepts(&a1, &w, 0));
        }
    }

    #[test]
    fn restrict_examples() {
        let a1 = fixtures::a1();
        let z = AbelianSpec::free(1);
        for (k, sheets) in [(2, 2), (3, 3), (1, 1)] {
            let sub = canonical_basis(&z, &[gv(&[k])]).unwrap();
            let r = register_restrict(&a1, &sub).unwrap();
            assert_eq!(r.vertex_count(), sheets);
            for w in words(&['a', 'A'], 6) {
                assert_eq!(brute_accepts(&r, &w, 0), brute_accepts(&a1, &w, 0), "k={k} {w}");
            }
        }
        let whole = LatticeSubgroup::whole(&z);
        assert_eq!(register_restrict(&a1, &whole).unwrap(), a1);
        assert!(matches!(register_restrict(&a1, &LatticeSubgroup::zero(&z)), Err(Error::InfiniteIndex)));
    }

    #[test]
    fn restrict_two_dimensional() {
        let (a, rho) = build_wp_abelian(2).unwrap();
        let z2 = AbelianSpec::free(2);
        let sub = canonical_basis(&z2, &[gv(&[2, 1]), gv(&[0, 3])]).unwrap();
        let r = register_restrict(&a, &sub).unwrap();
        assert_eq!(r.vertex_count(), 6);
        for w in words(rho.letters(), 4) {
            assert_eq!(brute_accepts(&r, &w, 0), brute_accepts(&a, &w, 0), "{w}");
        }
    }

    #[test]
    fn dot_output() {
        let d3 = export_dot(&fixtures::a3());
        assert_eq!(d3.matches("->").count(), 0);
        assert_eq!(d3.matches("\"q\"").count(), 1);
        let d1 = export_dot(&fixtures::a1());
        assert_eq!(d1.matches("\"q\" -> \"q\"").count(), 2);
        assert!(d1.contains("label=\"a / (1)\""));
        assert!(d1.contains("label=\"A / (-1)\""));
        assert_eq!(d1, export_dot(&fixtures::a1()));
        assert!(export_dot(&fixtures::a4()).contains("ε / (0)"));
    }
}
