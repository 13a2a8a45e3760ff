//! Stability condition and transmission delays for transitions.
//!
//! Signals here have finitely many edges, so each one is eventually
//! constant at its final value. The stability condition "u eventually `a`
//! implies x eventually `a`" then holds exactly when both final values
//! agree.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::DcError;
use crate::bit::Bit;
use crate::rational::Rational;
use crate::signal::Signal;

/// `1` iff `(u, x)` satisfies the stability condition.
pub fn stable(u: &Signal, x: &Signal) -> Bit {
    Bit::new(u.final_value() == x.final_value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Rising,
    Falling,
    Unclassified,
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransitionKind::Rising => "rising",
            TransitionKind::Falling => "falling",
            TransitionKind::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionDelayReport {
    /// `max(0, t2_star - t1_star)`
    pub delay: Rational,
    /// Time from which the input stays at its final value (0 if constant).
    pub t1_star: Rational,
    /// Time from which the output stays at its final value (0 if constant).
    pub t2_star: Rational,
    pub kind: TransitionKind,
}

impl fmt::Display for TransmissionDelayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d = {} ({})", self.delay, self.kind)
    }
}

fn settling_time(s: &Signal) -> Rational {
    s.last_edge().cloned().unwrap_or_else(Rational::zero)
}

/// Transmission delay of the last transition from `u` to `x`. The pair
/// must satisfy the stability condition.
pub fn transmission_delay(u: &Signal, x: &Signal) -> Result<TransmissionDelayReport, DcError> {
    if !stable(u, x).is_one() {
        return Err(DcError::NotStable {
            input: u.clone(),
            output: x.clone(),
        });
    }
    let t1_star = settling_time(u);
    let t2_star = settling_time(x);
    let diff = &t2_star - &t1_star;
    let delay = if diff > Rational::zero() { diff } else { Rational::zero() };
    let kind = if u.is_rising_at(&t1_star) && x.is_rising_at(&t2_star) {
        TransitionKind::Rising
    } else if u.is_falling_at(&t1_star) && x.is_falling_at(&t2_star) {
        TransitionKind::Falling
    } else {
        TransitionKind::Unclassified
    };
    Ok(TransmissionDelayReport {
        delay,
        t1_star,
        t2_star,
        kind,
    })
}
