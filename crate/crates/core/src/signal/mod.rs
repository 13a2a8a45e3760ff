//! Boolean signals over dense real time.
//!
//! A [`Signal`] is a right-continuous, piecewise-constant function
//! `R -> {0, 1}` with finitely many switching times, all `>= 0`. It is
//! stored as its value on `(-inf, first edge)` and the strictly increasing
//! list of edges; every listed edge is a genuine value change, so two
//! signals are equal as functions exactly when they are equal structurally.

mod window;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::bit::Bit;
use crate::interval::IntervalSet;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignalError {
    #[error("edge times must be strictly increasing ({prev} is followed by {next})")]
    Unordered { prev: Rational, next: Rational },
    #[error("edge time {0} is negative")]
    NegativeEdge(Rational),
    #[error("not a signal: {0}")]
    NotASignal(String),
    #[error("window requires 0 <= m <= d (got d = {d}, m = {m})")]
    BadWindow { d: Rational, m: Rational },
}

/// Pointwise binary law of `{0, 1}` lifted to signals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    And,
    Or,
    Xor,
}

impl BinaryOp {
    pub fn apply(self, a: Bit, b: Bit) -> Bit {
        match self {
            BinaryOp::And => a & b,
            BinaryOp::Or => a | b,
            BinaryOp::Xor => a ^ b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signal {
    initial: Bit,
    edges: Vec<Rational>,
}

impl Signal {
    pub fn new(initial: Bit, edges: Vec<Rational>) -> Result<Self, SignalError> {
        if let Some(first) = edges.first() {
            if first.is_negative() {
                return Err(SignalError::NegativeEdge(first.clone()));
            }
        }
        if let Some(w) = edges.windows(2).find(|w| w[0] >= w[1]) {
            return Err(SignalError::Unordered {
                prev: w[0].clone(),
                next: w[1].clone(),
            });
        }
        Ok(Signal { initial, edges })
    }

    pub fn constant(value: Bit) -> Self {
        Signal {
            initial: value,
            edges: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(Bit::ZERO)
    }

    pub fn one() -> Self {
        Self::constant(Bit::ONE)
    }

    /// Builds a signal from its value before `times[0]` and the value held
    /// from each time on. Times must be strictly increasing and `>= 0`;
    /// steps that do not change the value are dropped.
    pub(crate) fn from_steps(initial: Bit, steps: impl IntoIterator<Item = (Rational, Bit)>) -> Self {
        let mut edges = Vec::new();
        let mut current = initial;
        for (t, v) in steps {
            if v != current {
                debug_assert!(edges.last().is_none_or(|e| *e < t));
                debug_assert!(!t.is_negative());
                edges.push(t);
                current = v;
            }
        }
        Signal { initial, edges }
    }

    /// Value on `(-inf, first edge)`.
    pub fn initial(&self) -> Bit {
        self.initial
    }

    pub fn edges(&self) -> &[Rational] {
        &self.edges
    }

    pub fn is_constant(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<&Rational> {
        self.edges.last()
    }

    fn parity(&self, count: usize) -> Bit {
        self.initial ^ Bit::new(count % 2 == 1)
    }

    pub fn eval(&self, t: &Rational) -> Bit {
        self.parity(self.edges.partition_point(|e| e <= t))
    }

    /// `x(t - 0)`, the value on `(t - eps, t)` for small `eps > 0`.
    pub fn left_limit(&self, t: &Rational) -> Bit {
        self.parity(self.edges.partition_point(|e| e < t))
    }

    /// The value the signal settles to after its last edge.
    pub fn final_value(&self) -> Bit {
        self.parity(self.edges.len())
    }

    /// Edge times where the value switches 0 -> 1.
    pub fn rising_edges(&self) -> Vec<Rational> {
        self.edges_after_value(Bit::ONE)
    }

    /// Edge times where the value switches 1 -> 0.
    pub fn falling_edges(&self) -> Vec<Rational> {
        self.edges_after_value(Bit::ZERO)
    }

    fn edges_after_value(&self, value: Bit) -> Vec<Rational> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(k, _)| self.parity(k + 1) == value)
            .map(|(_, e)| e.clone())
            .collect()
    }

    pub fn is_rising_at(&self, t: &Rational) -> bool {
        !self.left_limit(t).is_one() && self.eval(t).is_one()
    }

    pub fn is_falling_at(&self, t: &Rational) -> bool {
        self.left_limit(t).is_one() && !self.eval(t).is_one()
    }

    /// The set `{ t : x(t) = 1 }`.
    pub fn ones(&self) -> IntervalSet {
        let mut regions = Vec::with_capacity(2 * self.edges.len() + 1);
        regions.push(self.initial.is_one());
        for k in 1..=self.edges.len() {
            let v = self.parity(k).is_one();
            regions.push(v);
            regions.push(v);
        }
        IntervalSet::from_regions(self.edges.clone(), regions)
    }

    /// The set `{ t : x(t) = 0 }`.
    pub fn zeros(&self) -> IntervalSet {
        self.negate().ones()
    }

    /// The signal equal to the characteristic function of `set`.
    pub fn from_characteristic(set: &IntervalSet) -> Result<Self, SignalError> {
        let cuts = set.cuts();
        for (i, c) in cuts.iter().enumerate() {
            if set.at_cut(i) != set.gap_after(i) {
                return Err(SignalError::NotASignal(format!(
                    "indicator of {set} is not right-continuous at {c}"
                )));
            }
            if c.is_negative() {
                return Err(SignalError::NotASignal(format!(
                    "indicator of {set} switches at negative time {c}"
                )));
            }
        }
        // after the two checks every cut flips the value
        Ok(Signal {
            initial: Bit::new(set.gap_before(0)),
            edges: cuts.to_vec(),
        })
    }

    /// `t -> x(t - d)`: shift right by `d`. Fails when an edge would move
    /// to a negative time.
    pub fn translate(&self, d: &Rational) -> Result<Self, SignalError> {
        let edges: Vec<Rational> = self.edges.iter().map(|e| e + d).collect();
        if let Some(first) = edges.first() {
            if first.is_negative() {
                return Err(SignalError::NotASignal(format!(
                    "shifting {self} by {d} moves an edge to {first}"
                )));
            }
        }
        Ok(Signal {
            initial: self.initial,
            edges,
        })
    }

    pub fn negate(&self) -> Self {
        Signal {
            initial: !self.initial,
            edges: self.edges.clone(),
        }
    }

    pub fn combine(&self, op: BinaryOp, other: &Signal) -> Self {
        Self::pointwise(&[self, other], |v| op.apply(v[0], v[1]))
    }

    pub fn and(&self, other: &Signal) -> Self {
        self.combine(BinaryOp::And, other)
    }

    pub fn or(&self, other: &Signal) -> Self {
        self.combine(BinaryOp::Or, other)
    }

    pub fn xor(&self, other: &Signal) -> Self {
        self.combine(BinaryOp::Xor, other)
    }

    /// Applies `f` instantaneously to the operand values at every time.
    pub fn pointwise(operands: &[&Signal], f: impl Fn(&[Bit]) -> Bit) -> Self {
        let mut times: Vec<&Rational> = operands.iter().flat_map(|s| s.edges.iter()).collect();
        times.sort();
        times.dedup();
        let mut values: Vec<Bit> = operands.iter().map(|s| s.initial).collect();
        let initial = f(&values);
        let steps: Vec<(Rational, Bit)> = times
            .into_iter()
            .map(|t| {
                for (v, s) in values.iter_mut().zip(operands) {
                    *v = s.eval(t);
                }
                (t.clone(), f(&values))
            })
            .collect();
        Self::from_steps(initial, steps)
    }

    /// Same function on `(-inf, tau)`, extended by its left limit at `tau`
    /// from `tau` on.
    pub fn truncate_before(&self, tau: &Rational) -> Self {
        Signal {
            initial: self.initial,
            edges: self.edges.iter().filter(|e| *e < tau).cloned().collect(),
        }
    }

    /// Same function on `(-inf, horizon]`, constant afterwards.
    pub fn truncate_after(&self, horizon: &Rational) -> Self {
        Signal {
            initial: self.initial,
            edges: self.edges.iter().filter(|e| *e <= horizon).cloned().collect(),
        }
    }

    /// `AND` of `x` over the closed interval `[lo, hi]`; 1 when it is empty.
    pub fn all_on(&self, lo: &Rational, hi: &Rational) -> Bit {
        if lo > hi {
            return Bit::ONE;
        }
        let window = IntervalSet::closed(lo.clone(), hi.clone());
        Bit::new(window.is_subset(&self.ones()))
    }

    /// `OR` of `x` over the closed interval `[lo, hi]`; 0 when it is empty.
    pub fn any_on(&self, lo: &Rational, hi: &Rational) -> Bit {
        if lo > hi {
            return Bit::ZERO;
        }
        let window = IntervalSet::closed(lo.clone(), hi.clone());
        Bit::new(!window.intersection(&self.ones()).is_empty())
    }

    /// `AND` of `x` over a finite set of times; 1 for the empty set.
    pub fn all_at<'a>(&self, times: impl IntoIterator<Item = &'a Rational>) -> Bit {
        Bit::new(times.into_iter().all(|t| self.eval(t).is_one()))
    }

    /// `OR` of `x` over a finite set of times; 0 for the empty set.
    pub fn any_at<'a>(&self, times: impl IntoIterator<Item = &'a Rational>) -> Bit {
        Bit::new(times.into_iter().any(|t| self.eval(t).is_one()))
    }
}

impl Default for Signal {
    fn default() -> Self {
        Self::zero()
    }
}

/// Canonical order: fewer edges first, then initial value, then the edge
/// list lexicographically.
impl Ord for Signal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then(self.initial.cmp(&other.initial))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Signal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Written as `sig(0; 2, 5)`.
impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sig({};", self.initial)?;
        for (k, e) in self.edges.iter().enumerate() {
            f.write_str(if k == 0 { " " } else { ", " })?;
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for Signal {
    type Err = SignalError;

    /// Parses the [`Display`](fmt::Display) form `sig(0; 2, 5)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SignalError::NotASignal(format!("cannot parse `{s}`"));
        let body = s
            .trim()
            .strip_prefix("sig(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (init, rest) = body.split_once(';').ok_or_else(bad)?;
        let initial = match init.trim() {
            "0" => Bit::ZERO,
            "1" => Bit::ONE,
            _ => return Err(bad()),
        };
        let edges = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| crate::rational::parse_rational(t).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Signal::new(initial, edges)
    }
}
