//! Finite, reproducible listings of `i(u)`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::stability::stable;
use super::{Budget, DcError, DcNode, DelayCondition, Members, Membership};
use crate::bit::Bit;
use crate::interval::{Bound, IntervalSet};
use crate::rational::{int, Rational};
use crate::signal::Signal;

/// Collects distinct signals in first-seen order, up to a cap.
struct Collector {
    seen: HashSet<Signal>,
    out: Vec<Signal>,
    cap: usize,
    truncated: bool,
}

impl Collector {
    fn new(cap: usize) -> Self {
        Collector {
            seen: HashSet::new(),
            out: Vec::new(),
            cap,
            truncated: false,
        }
    }

    fn push(&mut self, s: Signal) {
        if self.seen.contains(&s) {
            return;
        }
        if self.out.len() >= self.cap {
            self.truncated = true;
            return;
        }
        self.seen.insert(s.clone());
        self.out.push(s);
    }

    fn full(&self) -> bool {
        self.out.len() >= self.cap
    }

    fn finish(self, complete: bool) -> Members {
        Members {
            signals: self.out,
            complete: complete && !self.truncated,
        }
    }
}

/// Grid points `k / den` in `[0, limit]`, integers first.
fn grid_points(limit: &Rational, den: u32) -> Vec<Rational> {
    let den = den.max(1);
    let steps = (limit * Rational::from_integer(BigInt::from(den)))
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(0)
        .max(0);
    let mut pts: Vec<Rational> = (0..=steps)
        .map(|k| Rational::new(BigInt::from(k), BigInt::from(den)))
        .collect();
    pts.sort_by_key(|p| !p.is_integer());
    pts
}

/// The feasible start-up times `{ d >= 0 : x = u * chi_[d, inf) }`.
pub fn startup_delays(u: &Signal, x: &Signal) -> IntervalSet {
    let mut feasible = IntervalSet::non_negative();
    // x must vanish on (-inf, d)
    match x.ones().infimum() {
        None => {}
        Some(Bound::Unbounded) => return IntervalSet::empty(),
        Some(Bound::Closed(a)) => {
            feasible = feasible.intersection(&IntervalSet::interval(Bound::Unbounded, Bound::Closed(a)))
        }
        Some(Bound::Open(a)) => {
            feasible = feasible.intersection(&IntervalSet::interval(Bound::Unbounded, Bound::Open(a)))
        }
    }
    // x must agree with u on [d, inf)
    match u.xor(x).ones().supremum() {
        None => {}
        Some(Bound::Unbounded) => return IntervalSet::empty(),
        Some(Bound::Open(b)) | Some(Bound::Closed(b)) => {
            feasible = feasible.intersection(&IntervalSet::at_least(b))
        }
    }
    feasible
}

fn sol_sc_members(u: &Signal, budget: &Budget) -> Members {
    let target = u.final_value();
    let mut c = Collector::new(budget.members);
    let half = &budget.horizon / int(2);
    c.push(u.clone());
    if let Ok(s) = u.translate(&half) {
        c.push(s);
    }
    c.push(Signal::constant(target));
    let points = grid_points(&budget.horizon, budget.grid_denominator);
    for t in points.iter().filter(|t| t.is_positive()) {
        if c.full() {
            break;
        }
        c.push(Signal::new(!target, vec![t.clone()]).expect("single non-negative edge"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let attempts = budget.members.saturating_mul(4);
    for _ in 0..attempts {
        if c.full() || points.is_empty() {
            break;
        }
        let n = rng.random_range(0..=budget.max_edges.min(points.len()));
        let mut picked: Vec<Rational> = rand::seq::index::sample(&mut rng, points.len(), n)
            .into_iter()
            .map(|k| points[k].clone())
            .collect();
        picked.sort();
        let initial = Bit::new(rng.random::<bool>());
        let s = Signal::new(initial, picked).expect("sorted distinct grid points");
        let s = if s.final_value() == target { s } else { s.negate() };
        c.push(s);
    }
    c.finish(false)
}

fn startup_members(u: &Signal, budget: &Budget) -> Members {
    let mut c = Collector::new(budget.members);
    let mut delays = vec![Rational::zero()];
    delays.extend(u.edges().iter().cloned());
    let limit = &budget.horizon + u.last_edge().cloned().unwrap_or_else(Rational::zero);
    delays.extend(grid_points(&limit, budget.grid_denominator));
    for d in delays {
        let mask = Signal::new(Bit::ZERO, vec![d]).expect("non-negative start-up time");
        c.push(u.and(&mask));
    }
    // the set is finite only when u vanishes on [0, inf)
    let complete = !u.eval(&Rational::zero()).is_one() && u.edges().iter().all(|e| e.is_zero());
    c.finish(complete)
}

impl DelayCondition {
    pub fn enumerate(&self, u: &Signal, members: usize) -> Result<Members, DcError> {
        self.enumerate_with(u, &Budget::with_members(members))
    }

    /// Lists up to `budget.members` distinct members of `self(u)`.
    /// Deterministic conditions return their single member; the result is
    /// the same on every call with the same budget.
    pub fn enumerate_with(&self, u: &Signal, budget: &Budget) -> Result<Members, DcError> {
        if !self.is_enumerable() {
            return Err(DcError::NotEnumerable(self.to_string()));
        }
        if self.is_deterministic() {
            return Ok(Members {
                signals: vec![self.apply_with(u, budget)?],
                complete: true,
            });
        }
        let empty = || DcError::EmptyDelaySet {
            dc: self.to_string(),
            input: u.clone(),
        };
        match self.node() {
            DcNode::SolSc => Ok(sol_sc_members(u, budget)),
            DcNode::StartupMask => Ok(startup_members(u, budget)),
            DcNode::Meet(i, j) => {
                let (source, other) = match (i.is_enumerable(), j.is_enumerable()) {
                    (true, true) => {
                        let mi = i.enumerate_with(u, budget)?;
                        if mi.complete {
                            (mi, j)
                        } else {
                            let mj = j.enumerate_with(u, budget)?;
                            if mj.complete {
                                (mj, i)
                            } else {
                                (mi, j)
                            }
                        }
                    }
                    (true, false) => (i.enumerate_with(u, budget)?, j),
                    _ => (j.enumerate_with(u, budget)?, i),
                };
                self.filter(source, u, budget, |x| other.member_with(u, x, budget))
            }
            DcNode::MeetSet(i, set) => self.filter(i.enumerate_with(u, budget)?, u, budget, |x| {
                Ok(Membership::from_bool(set.contains(x)))
            }),
            DcNode::MeetFam(i, fam) => self.filter(i.enumerate_with(u, budget)?, u, budget, |x| {
                Ok(Membership::from_bool(fam.contains(u, x)))
            }),
            DcNode::Join(i, j) => {
                let a = i.enumerate_with(u, budget)?;
                let b = j.enumerate_with(u, budget)?;
                let mut c = Collector::new(budget.members);
                for s in interleave(vec![a.signals, b.signals]) {
                    c.push(s);
                }
                Ok(c.finish(a.complete && b.complete))
            }
            DcNode::Serial(outer, inner) => {
                let xs = inner.enumerate_with(u, budget)?;
                let mut complete = xs.complete;
                let mut lists = Vec::with_capacity(xs.signals.len());
                for x in &xs.signals {
                    let ys = outer.enumerate_with(x, budget)?;
                    complete &= ys.complete;
                    lists.push(ys.signals);
                }
                let mut c = Collector::new(budget.members);
                for s in interleave(lists) {
                    c.push(s);
                }
                Ok(c.finish(complete))
            }
            DcNode::User(user) => {
                let generator = user.generator.as_ref().ok_or_else(|| DcError::NotEnumerable(self.to_string()))?;
                let mut c = Collector::new(budget.members);
                for x in generator(u, budget) {
                    if stable(u, &x).is_one() && (user.member)(u, &x) {
                        c.push(x);
                    }
                }
                Ok(c.finish(false))
            }
            DcNode::Ident
            | DcNode::Pure(_)
            | DcNode::WindowAll { .. }
            | DcNode::WindowAny { .. }
            | DcNode::Select { .. } => unreachable!("deterministic"),
        }
        .and_then(|m: Members| {
            if m.complete && m.signals.is_empty() {
                Err(empty())
            } else {
                Ok(m)
            }
        })
    }

    fn filter(
        &self,
        source: Members,
        u: &Signal,
        budget: &Budget,
        keep: impl Fn(&Signal) -> Result<Membership, DcError>,
    ) -> Result<Members, DcError> {
        let mut complete = source.complete;
        let mut c = Collector::new(budget.members);
        for x in source.signals {
            match keep(&x)? {
                Membership::Holds => c.push(x),
                Membership::Unknown => complete = false,
                Membership::Fails => {}
            }
        }
        if complete && c.out.is_empty() {
            return Err(DcError::EmptyDelaySet {
                dc: self.to_string(),
                input: u.clone(),
            });
        }
        Ok(c.finish(complete))
    }
}

/// Round-robin merge: first elements of every list, then second ones...
fn interleave(lists: Vec<Vec<Signal>>) -> Vec<Signal> {
    let mut iters: Vec<_> = lists.into_iter().map(|l| l.into_iter()).collect();
    let mut out = Vec::new();
    loop {
        let mut any = false;
        for it in iters.iter_mut() {
            if let Some(s) = it.next() {
                out.push(s);
                any = true;
            }
        }
        if !any {
            return out;
        }
    }
}
