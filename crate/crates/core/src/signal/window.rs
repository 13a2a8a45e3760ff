//! Closed-window AND/OR operators.
//!
//! For a 1-interval `[a, b)` of `u`, the window `[t - d, t - d + m]` lies
//! inside it iff `t` is in `[a + d, b + d - m)`, and meets it iff `t` is in
//! `[a + d - m, b + d)`. Both results are unions of left-closed,
//! right-open intervals, hence signals again.

use num_traits::{Signed, Zero};

use super::{Signal, SignalError};
use crate::interval::{Bound, Interval, IntervalSet};
use crate::rational::Rational;

fn check_window(d: &Rational, m: &Rational) -> Result<(), SignalError> {
    if m.is_negative() || m > d {
        return Err(SignalError::BadWindow {
            d: d.clone(),
            m: m.clone(),
        });
    }
    Ok(())
}

fn shifted(part: &Interval, lower_by: &Rational, upper_by: &Rational) -> IntervalSet {
    let lower = match &part.lower {
        Bound::Unbounded => Bound::Unbounded,
        Bound::Closed(a) => Bound::Closed(a + lower_by),
        Bound::Open(a) => Bound::Open(a + lower_by),
    };
    let upper = match &part.upper {
        Bound::Unbounded => Bound::Unbounded,
        Bound::Closed(b) => Bound::Closed(b + upper_by),
        Bound::Open(b) => Bound::Open(b + upper_by),
    };
    IntervalSet::interval(lower, upper)
}

impl Signal {
    /// `x(t) = AND of u over [t - d, t - d + m]`, for `0 <= m <= d`.
    pub fn window_all(&self, d: &Rational, m: &Rational) -> Result<Signal, SignalError> {
        check_window(d, m)?;
        let shrink = d - m;
        let ones = self
            .ones()
            .parts()
            .iter()
            .fold(IntervalSet::empty(), |acc, p| acc.union(&shifted(p, d, &shrink)));
        Signal::from_characteristic(&ones)
    }

    /// `x(t) = OR of u over [t - d, t - d + m]`, for `0 <= m <= d`.
    pub fn window_any(&self, d: &Rational, m: &Rational) -> Result<Signal, SignalError> {
        check_window(d, m)?;
        let widen = d - m;
        let ones = self
            .ones()
            .parts()
            .iter()
            .fold(IntervalSet::empty(), |acc, p| acc.union(&shifted(p, &widen, d)));
        Signal::from_characteristic(&ones)
    }

    /// Time by which the window operators look behind: the output at `t`
    /// depends on the input at times `<= t - (d - m)` only.
    pub fn window_lookahead(d: &Rational, m: &Rational) -> Rational {
        let l = d - m;
        if l.is_negative() {
            Rational::zero()
        } else {
            l
        }
    }
}
