use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bit::Bit;
use crate::rational::{int, Rational};
use crate::signal::Signal;

/// Parameters of a seeded corpus of test signals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub max_edges: usize,
    /// Every edge lies in `[0, horizon]`.
    pub horizon: Rational,
    /// Edges lie on the grid `k / time_grid_denominator`.
    pub time_grid_denominator: u32,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0,
            count: 100,
            max_edges: 4,
            horizon: int(10),
            time_grid_denominator: 2,
        }
    }
}

fn fixed_prefix() -> Vec<Signal> {
    let step = |b: bool, edges: &[i64]| {
        Signal::new(Bit::new(b), edges.iter().map(|&e| int(e)).collect()).expect("sorted edges")
    };
    vec![
        Signal::zero(),
        Signal::one(),
        step(false, &[2]),
        step(false, &[2, 3]),
        step(true, &[2]),
    ]
}

/// Builds the corpus: the constants, a step and a pulse first, then
/// distinct random grid signals. The same config always yields the same list.
pub fn generate_corpus(cfg: &CorpusConfig) -> Vec<Signal> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(cfg.count);
    for s in fixed_prefix() {
        if out.len() >= cfg.count {
            return out;
        }
        let fits = s.edges().len() <= cfg.max_edges && s.edges().iter().all(|e| *e <= cfg.horizon);
        if fits && seen.insert(s.clone()) {
            out.push(s);
        }
    }
    let den = cfg.time_grid_denominator.max(1);
    let steps = (&cfg.horizon * int(den as i64))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);
    let grid = |k: u64| Rational::new(BigInt::from(k), BigInt::from(den));
    let slots = usize::try_from(steps + 1).unwrap_or(usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut attempts = cfg.count.saturating_mul(20);
    while out.len() < cfg.count && attempts > 0 {
        attempts -= 1;
        let n = rng.random_range(0..=cfg.max_edges.min(slots));
        let mut ks: Vec<u64> = rand::seq::index::sample(&mut rng, slots, n)
            .into_iter()
            .map(|k| k as u64)
            .collect();
        ks.sort_unstable();
        let s = Signal::new(Bit::new(rng.random()), ks.into_iter().map(grid).collect())
            .expect("distinct sorted grid points");
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}
