#![allow(dead_code)]

use std::collections::BTreeSet;

use delaykit::{int, rat, Bit, Rational, Signal};
use rand::Rng;

pub fn sig(s: &str) -> Signal {
    s.parse().unwrap()
}

/// Value at `t` from the raw edge list: the initial value flipped once per
/// edge at or before `t`.
pub fn value_at(u: &Signal, t: &Rational) -> bool {
    let flips = u.edges().iter().filter(|e| *e <= t).count();
    u.initial().is_one() ^ (flips % 2 == 1)
}

/// Every value `u` takes on the closed interval `[a, b]`: its value at `a`
/// and after each edge inside `(a, b]`.
fn values_on(u: &Signal, a: &Rational, b: &Rational) -> Vec<bool> {
    let mut out = vec![value_at(u, a)];
    out.extend(u.edges().iter().filter(|e| *e > a && *e <= b).map(|e| value_at(u, e)));
    out
}

pub fn oracle_all(u: &Signal, d: &Rational, m: &Rational, t: &Rational) -> bool {
    let a = t - d;
    values_on(u, &a, &(&a + m)).into_iter().all(|v| v)
}

pub fn oracle_any(u: &Signal, d: &Rational, m: &Rational, t: &Rational) -> bool {
    let a = t - d;
    values_on(u, &a, &(&a + m)).into_iter().any(|v| v)
}

/// Probe times for a window output: every edge of `u` moved to where it
/// can enter or leave a window, midpoints between consecutive candidates,
/// and points beyond both ends.
pub fn window_probes(u: &Signal, d: &Rational, m: &Rational) -> Vec<Rational> {
    let mut pts: BTreeSet<Rational> = BTreeSet::new();
    pts.insert(int(0));
    for e in u.edges() {
        for t in [e.clone(), e + d, e + d - m] {
            if t >= int(0) {
                pts.insert(t);
            }
        }
    }
    let sorted: Vec<Rational> = pts.iter().cloned().collect();
    for w in sorted.windows(2) {
        pts.insert((&w[0] + &w[1]) / int(2));
    }
    let last = sorted.last().cloned().unwrap_or_else(|| int(0));
    pts.insert(&last + int(1));
    pts.insert(&last + rat(1, 7));
    pts.into_iter().collect()
}

/// A signal with up to `max_edges` distinct edges on the grid
/// `{k / den : 0 <= k <= horizon * den}`.
pub fn grid_signal(rng: &mut impl Rng, max_edges: usize, horizon: i64, den: i64) -> Signal {
    let n = rng.random_range(0..=max_edges);
    let slots = (horizon * den) as usize + 1;
    let picks: BTreeSet<i64> = (0..n).map(|_| rng.random_range(0..slots) as i64).collect();
    let edges = picks.into_iter().map(|k| rat(k, den)).collect();
    Signal::new(Bit::new(rng.random_bool(0.5)), edges).unwrap()
}

/// `(d, m)` with `0 <= m <= d` on the grid with denominator `den`.
pub fn grid_window(rng: &mut impl Rng, max_d: i64, den: i64) -> (Rational, Rational) {
    let d = rng.random_range(0..=max_d * den);
    let m = rng.random_range(0..=d);
    (rat(d, den), rat(m, den))
}
