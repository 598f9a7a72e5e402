//! Seed-reproducible random instances for the verification harness.
//!
//! Facets are drawn Erdős–Rényi style (random subsets, then downward
//! closure); partitions assign each vertex an independent uniform block,
//! so degenerate partitions occur and exercise the nonzero face-ring part
//! of the Koszul differential.  The generator is a hand-rolled SplitMix64,
//! so a seed pins the exact instance stream forever.

use crate::simplicial::ColoredComplex;

/// SplitMix64: tiny, fast, stable across platforms.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// One random colored complex on at most `max_vertices` vertices.
pub fn random_complex(rng: &mut Rng, max_vertices: usize) -> ColoredComplex {
    let m = 1 + rng.below(max_vertices);
    let names: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();

    // Random facets: a handful of random subsets, biased small so the
    // downward closures stay at desk scale.
    let facet_count = rng.below(2 * m + 1);
    let mut facets: Vec<Vec<String>> = Vec::new();
    for _ in 0..facet_count {
        let size = 1 + rng.below(m.min(4));
        let mut picked = Vec::new();
        while picked.len() < size {
            let v = rng.below(m);
            if !picked.contains(&v) {
                picked.push(v);
            }
        }
        picked.sort_unstable();
        facets.push(picked.iter().map(|&v| names[v].clone()).collect());
    }
    // Sprinkle isolated vertices so ghosts and 0-faces both occur.
    for v in 0..m {
        if rng.chance(1, 2) {
            facets.push(vec![names[v].clone()]);
        }
    }

    // Random partition by independent block assignment; empty blocks are
    // dropped.  Degenerate partitions are kept on purpose.
    let k = 1 + rng.below(m);
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(); k];
    for v in 0..m {
        blocks[rng.below(k)].push(names[v].clone());
    }
    blocks.retain(|b| !b.is_empty());

    ColoredComplex::from_facets(&names, &facets, Some(&blocks))
        .expect("generated instance is valid")
}
