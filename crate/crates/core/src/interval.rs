//! Finite unions of rational intervals with open or closed endpoints.
//!
//! A set is stored as a sorted list of cut points together with the
//! membership of every region they delimit: the open gap before the first
//! cut, each cut point itself, and each open gap after a cut. Boolean
//! operations work region by region on the merged cut list, so open and
//! closed boundaries are handled exactly.

use std::fmt;

use num_traits::Zero;

use crate::rational::Rational;

/// One endpoint of an [`Interval`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(Rational),
    Open(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(v) | Bound::Open(v) => Some(v),
        }
    }
}

/// A connected piece of an [`IntervalSet`]. `Unbounded` on the lower side
/// means -inf, on the upper side +inf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lower: Bound,
    pub upper: Bound,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Bound::Closed(a), Bound::Closed(b)) = (&self.lower, &self.upper) {
            if a == b {
                return write!(f, "{{{a}}}");
            }
        }
        match &self.lower {
            Bound::Unbounded => f.write_str("(-inf")?,
            Bound::Closed(a) => write!(f, "[{a}")?,
            Bound::Open(a) => write!(f, "({a}")?,
        }
        f.write_str(", ")?;
        match &self.upper {
            Bound::Unbounded => f.write_str("inf)"),
            Bound::Closed(b) => write!(f, "{b}]"),
            Bound::Open(b) => write!(f, "{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    cuts: Vec<Rational>,
    // 2 * cuts.len() + 1 entries: gap, point, gap, point, ..., gap
    regions: Vec<bool>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet {
            cuts: Vec::new(),
            regions: vec![false],
        }
    }

    pub fn full() -> Self {
        IntervalSet {
            cuts: Vec::new(),
            regions: vec![true],
        }
    }

    pub fn point(at: Rational) -> Self {
        IntervalSet {
            cuts: vec![at],
            regions: vec![false, true, false],
        }
    }

    /// The set described by one interval; empty when the bounds cross.
    pub fn interval(lower: Bound, upper: Bound) -> Self {
        let mut cuts = Vec::new();
        let mut regions = vec![matches!(lower, Bound::Unbounded)];
        if let (Some(a), Some(b)) = (lower.value(), upper.value()) {
            if a > b {
                return Self::empty();
            }
            if a == b {
                return match (&lower, &upper) {
                    (Bound::Closed(_), Bound::Closed(_)) => Self::point(a.clone()),
                    _ => Self::empty(),
                };
            }
        }
        if let Some(a) = lower.value() {
            cuts.push(a.clone());
            regions.push(matches!(lower, Bound::Closed(_)));
            regions.push(true);
        }
        if let Some(b) = upper.value() {
            cuts.push(b.clone());
            regions.push(matches!(upper, Bound::Closed(_)));
            regions.push(false);
        }
        IntervalSet { cuts, regions }.normalized()
    }

    /// `[a, b)`
    pub fn half_open(a: Rational, b: Rational) -> Self {
        Self::interval(Bound::Closed(a), Bound::Open(b))
    }

    /// `[a, b]`
    pub fn closed(a: Rational, b: Rational) -> Self {
        Self::interval(Bound::Closed(a), Bound::Closed(b))
    }

    /// `[a, inf)`
    pub fn at_least(a: Rational) -> Self {
        Self::interval(Bound::Closed(a), Bound::Unbounded)
    }

    /// `[0, inf)`
    pub fn non_negative() -> Self {
        Self::at_least(Rational::zero())
    }

    pub fn from_parts(parts: impl IntoIterator<Item = Interval>) -> Self {
        parts
            .into_iter()
            .fold(Self::empty(), |acc, p| acc.union(&Self::interval(p.lower, p.upper)))
    }

    /// Builds a set directly from cut points and region flags. The flags
    /// must have length `2 * cuts.len() + 1` and the cuts must be strictly
    /// increasing.
    pub(crate) fn from_regions(cuts: Vec<Rational>, regions: Vec<bool>) -> Self {
        debug_assert_eq!(regions.len(), 2 * cuts.len() + 1);
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        IntervalSet { cuts, regions }.normalized()
    }

    pub(crate) fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    /// Membership of the open gap just below cut `i` (or -inf for `i == 0`).
    pub(crate) fn gap_before(&self, i: usize) -> bool {
        self.regions[2 * i]
    }

    pub(crate) fn at_cut(&self, i: usize) -> bool {
        self.regions[2 * i + 1]
    }

    pub(crate) fn gap_after(&self, i: usize) -> bool {
        self.regions[2 * i + 2]
    }

    fn normalized(mut self) -> Self {
        let mut cuts = Vec::with_capacity(self.cuts.len());
        let mut regions = Vec::with_capacity(self.regions.len());
        regions.push(self.regions[0]);
        for (i, cut) in self.cuts.drain(..).enumerate() {
            let left = *regions.last().unwrap();
            let at = self.regions[2 * i + 1];
            let right = self.regions[2 * i + 2];
            if left == at && at == right {
                continue;
            }
            cuts.push(cut);
            regions.push(at);
            regions.push(right);
        }
        IntervalSet { cuts, regions }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        match self.cuts.binary_search(t) {
            Ok(i) => self.regions[2 * i + 1],
            Err(i) => self.regions[2 * i],
        }
    }

    /// Membership of the open gap immediately to the right of `t`.
    fn right_of(&self, t: &Rational) -> bool {
        match self.cuts.binary_search(t) {
            Ok(i) => self.regions[2 * i + 2],
            Err(i) => self.regions[2 * i],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty() && !self.regions[0]
    }

    pub fn is_full(&self) -> bool {
        self.cuts.is_empty() && self.regions[0]
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut cuts: Vec<Rational> = Vec::with_capacity(self.cuts.len() + other.cuts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cuts.len() || j < other.cuts.len() {
            let next = match (self.cuts.get(i), other.cuts.get(j)) {
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(a), Some(b)) if a > b => {
                    j += 1;
                    b
                }
                (Some(a), Some(_)) => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(a), None) => {
                    i += 1;
                    a
                }
                (None, Some(b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            cuts.push(next.clone());
        }
        let mut regions = Vec::with_capacity(2 * cuts.len() + 1);
        regions.push(op(self.regions[0], other.regions[0]));
        for c in &cuts {
            regions.push(op(self.contains(c), other.contains(c)));
            regions.push(op(self.right_of(c), other.right_of(c)));
        }
        IntervalSet { cuts, regions }.normalized()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        IntervalSet {
            cuts: self.cuts.clone(),
            regions: self.regions.iter().map(|r| !r).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// `{ x + d : x in self }`
    pub fn shift(&self, d: &Rational) -> Self {
        IntervalSet {
            cuts: self.cuts.iter().map(|c| c + d).collect(),
            regions: self.regions.clone(),
        }
    }

    /// `{ c - x : x in self }`
    pub fn reflect(&self, c: &Rational) -> Self {
        IntervalSet {
            cuts: self.cuts.iter().rev().map(|x| c - x).collect(),
            regions: self.regions.iter().rev().copied().collect(),
        }
    }

    /// Greatest lower bound: `None` if empty, `Some(Unbounded)` if the set
    /// is unbounded below, otherwise the boundary value with whether it is
    /// attained.
    pub fn infimum(&self) -> Option<Bound> {
        self.parts().first().map(|p| p.lower.clone())
    }

    pub fn supremum(&self) -> Option<Bound> {
        self.parts().last().map(|p| p.upper.clone())
    }

    pub fn parts(&self) -> Vec<Interval> {
        let n = self.cuts.len();
        let mut parts = Vec::new();
        let mut open: Option<Bound> = None;
        for r in 0..self.regions.len() {
            let inside = self.regions[r];
            match (inside, open.is_some()) {
                (true, false) => {
                    open = Some(if r == 0 {
                        Bound::Unbounded
                    } else if r % 2 == 1 {
                        Bound::Closed(self.cuts[r / 2].clone())
                    } else {
                        Bound::Open(self.cuts[r / 2 - 1].clone())
                    });
                }
                (false, true) => {
                    // the run ended in region r - 1
                    let prev = r - 1;
                    let upper = if prev % 2 == 1 {
                        Bound::Closed(self.cuts[prev / 2].clone())
                    } else {
                        Bound::Open(self.cuts[prev / 2].clone())
                    };
                    parts.push(Interval {
                        lower: open.take().unwrap(),
                        upper,
                    });
                }
                _ => {}
            }
        }
        if let Some(lower) = open {
            debug_assert!(self.regions[2 * n]);
            parts.push(Interval {
                lower,
                upper: Bound::Unbounded,
            });
        }
        parts
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.parts();
        if parts.is_empty() {
            return f.write_str("{}");
        }
        for (k, p) in parts.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
