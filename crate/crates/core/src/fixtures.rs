//! Reference automata used throughout the tests and the documentation.

use crate::automaton::{AutomatonBuilder, GAutomaton};
use crate::group::{presets, ChoiceOfGenerators};
use crate::lattice::AbelianSpec;

/// One vertex, loops `e_a` (+1, `a`) and `e_A` (−1, `A`): the word problem of `Z`.
pub fn a1() -> GAutomaton {
    let mut b = AutomatonBuilder::new(AbelianSpec::free(1), "aA");
    b.edge("e_a", "q", "q", &[1], Some('a'));
    b.edge("e_A", "q", "q", &[-1], Some('A'));
    b.build("q", "q").expect("A1")
}

pub fn a1_rho() -> ChoiceOfGenerators {
    presets::free_abelian(1)
}

/// Two sheets `q0`, `q1` switched by `s`; `t` counts up on `q0` and down on `q1`:
/// the word problem of the infinite dihedral group.
pub fn a2() -> GAutomaton {
    let mut b = AutomatonBuilder::new(AbelianSpec::free(1), "tTs");
    b.edge("e_t0", "q0", "q0", &[1], Some('t'));
    b.edge("e_T0", "q0", "q0", &[-1], Some('T'));
    b.edge("e_t1", "q1", "q1", &[-1], Some('t'));
    b.edge("e_T1", "q1", "q1", &[1], Some('T'));
    b.edge("e_s01", "q0", "q1", &[0], Some('s'));
    b.edge("e_s10", "q1", "q0", &[0], Some('s'));
    b.build("q0", "q0").expect("A2")
}

pub fn a2_rho() -> ChoiceOfGenerators {
    presets::infinite_dihedral()
}

/// One vertex, no edges, trivial register: accepts only the empty word.
pub fn a3() -> GAutomaton {
    let b = AutomatonBuilder::new(AbelianSpec::free(0), "");
    b.build("q", "q").expect("A3")
}

pub fn a3_rho() -> ChoiceOfGenerators {
    presets::trivial()
}

/// `p --ε--> r` followed by the `Z` loops at `r`.
pub fn a4() -> GAutomaton {
    let mut b = AutomatonBuilder::new(AbelianSpec::free(1), "aA");
    b.edge("f1", "p", "r", &[0], None);
    b.edge("e_a", "r", "r", &[1], Some('a'));
    b.edge("e_A", "r", "r", &[-1], Some('A'));
    b.build("p", "r").expect("A4")
}

pub fn a4_rho() -> ChoiceOfGenerators {
    presets::free_abelian(1)
}

/// A single positive loop: only the empty path is accepting.
pub fn a5() -> GAutomaton {
    let mut b = AutomatonBuilder::new(AbelianSpec::free(1), "a");
    b.edge("e_a", "q", "q", &[1], Some('a'));
    b.build("q", "q").expect("A5")
}

/// A1 with an extra loop reading `A` but adding +1. Its language is not the word
/// problem of `Z`, and the loops `e_a`, `e_x` share a register value while spelling
/// inverse letters.
pub fn planted() -> GAutomaton {
    let mut b = AutomatonBuilder::new(AbelianSpec::free(1), "aA");
    b.edge("e_a", "q", "q", &[1], Some('a'));
    b.edge("e_A", "q", "q", &[-1], Some('A'));
    b.edge("e_x", "q", "q", &[1], Some('A'));
    b.build("q", "q").expect("planted")
}

/// A seeded random automaton over `Z^rank` with at most `max_vertices` vertices and
/// `max_edges` edges, register values in `[-2, 2]`, letters drawn from `ab` or ε.
pub fn random(seed: u64, max_vertices: usize, max_edges: usize, rank: usize) -> GAutomaton {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let mut b = AutomatonBuilder::new(AbelianSpec::free(rank), "ab");
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for v in &names {
        b.vertex(v);
    }
    for i in 0..m {
        let src = &names[rng.gen_range(0..n)];
        let dst = &names[rng.gen_range(0..n)];
        let g: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
        let sigma = [None, Some('a'), Some('b')][rng.gen_range(0..3)];
        b.edge(&format!("e{i}"), src, dst, &g, sigma);
    }
    let init = &names[rng.gen_range(0..n)];
    let ter = &names[rng.gen_range(0..n)];
    b.build(init, ter).expect("random automaton")
}
