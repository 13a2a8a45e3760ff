use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use super::as_display;
use super::checks::constancy_witness;
use crate::dc::{stable, Budget, DcError, DelayCondition, Membership};
use crate::rational::Rational;
use crate::signal::Signal;

fn pairs_as_display<S: Serializer>(v: &[(Signal, Signal)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(u, x)| [u.to_string(), x.to_string()]))
}

/// A concrete violation found by a checker. Every variant can be replayed
/// against the conditions it was found for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// Two distinct members of `i(u)`.
    NonSingleton {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        first: Signal,
        #[serde(serialize_with = "as_display")]
        second: Signal,
    },
    /// `x in i(u)` but not `x in j(u)`.
    NotIncluded {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
    },
    /// `x in i(u)` and `u` shifted by `shift` is a signal, but `x` shifted
    /// is not.
    ShiftLeavesSignals {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
        #[serde(serialize_with = "as_display")]
        shift: Rational,
    },
    /// `x in i(u)` but the shifted `x` is not in `i` of the shifted `u`.
    ShiftNotMember {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
        #[serde(serialize_with = "as_display")]
        shift: Rational,
    },
    /// `y` is in `i` of `u` shifted by `shift >= 0`, but `y` shifted back
    /// is not in `i(u)`.
    ShiftBackFails {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
        #[serde(serialize_with = "as_display")]
        shift: Rational,
    },
    /// `x in i(u)` differs from `not x in i(not u)`.
    Asymmetric {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
    },
    /// No common `(d_r, d_f)` fits every listed pair.
    NotConstant {
        #[serde(serialize_with = "pairs_as_display")]
        pairs: Vec<(Signal, Signal)>,
    },
    /// An output edge not licensed by the input `offset` time units earlier.
    EdgeNotLicensed {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
        #[serde(serialize_with = "as_display")]
        edge: Rational,
        #[serde(serialize_with = "as_display")]
        offset: Rational,
        rising: bool,
    },
    /// A member that violates the stability condition.
    Unstable {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        output: Signal,
    },
    /// Two routes that should agree gave different signals.
    Mismatch {
        #[serde(serialize_with = "as_display")]
        input: Signal,
        #[serde(serialize_with = "as_display")]
        left: Signal,
        #[serde(serialize_with = "as_display")]
        right: Signal,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Counterexample::*;
        match self {
            NonSingleton { input, first, second } => {
                write!(f, "u = {input} has members {first} and {second}")
            }
            NotIncluded { input, output } => {
                write!(f, "u = {input}, x = {output} is in the first condition only")
            }
            ShiftLeavesSignals { input, output, shift } => {
                write!(f, "u = {input}, x = {output}, d = {shift}: shifted x is not a signal")
            }
            ShiftNotMember { input, output, shift } => {
                write!(f, "u = {input}, x = {output}, d = {shift}: shifted x is not a member")
            }
            ShiftBackFails { input, output, shift } => write!(
                f,
                "u = {input}, y = {output}, d = {shift}: y is a member for the shifted input but y shifted back is not"
            ),
            Asymmetric { input, output } => {
                write!(f, "u = {input}, x = {output}: membership changes under negation")
            }
            NotConstant { pairs } => write!(f, "no common (d_r, d_f) over {} pairs", pairs.len()),
            EdgeNotLicensed { input, output, edge, offset, rising } => write!(
                f,
                "u = {input}, x = {output}: {} edge at {edge} not licensed by u({edge} - {offset})",
                if *rising { "rising" } else { "falling" }
            ),
            Unstable { input, output } => write!(f, "u = {input}, x = {output} is not stable"),
            Mismatch { input, left, right } => write!(f, "u = {input}: {left} vs {right}"),
        }
    }
}

impl Counterexample {
    /// Re-runs the failing membership/apply calls. Returns `true` when the
    /// violation is reproduced. `other` is the second condition of an
    /// inclusion check.
    pub fn replay(
        &self,
        dc: &DelayCondition,
        other: Option<&DelayCondition>,
        budget: &Budget,
    ) -> Result<bool, DcError> {
        use Counterexample::*;
        let is = |u: &Signal, x: &Signal| -> Result<bool, DcError> {
            Ok(dc.member_with(u, x, budget)? == Membership::Holds)
        };
        Ok(match self {
            NonSingleton { input, first, second } => {
                first != second && is(input, first)? && is(input, second)?
            }
            NotIncluded { input, output } => {
                let other = match other {
                    Some(o) => o,
                    None => return Ok(false),
                };
                is(input, output)? && other.member_with(input, output, budget)? == Membership::Fails
            }
            ShiftLeavesSignals { input, output, shift } => {
                is(input, output)? && input.translate(shift).is_ok() && output.translate(shift).is_err()
            }
            ShiftNotMember { input, output, shift } => {
                let (Ok(u2), Ok(x2)) = (input.translate(shift), output.translate(shift)) else {
                    return Ok(false);
                };
                is(input, output)? && dc.member_with(&u2, &x2, budget)? == Membership::Fails
            }
            ShiftBackFails { input, output, shift } => {
                if shift.is_negative() {
                    return Ok(false);
                }
                let Ok(u2) = input.translate(shift) else {
                    return Ok(false);
                };
                if !is(&u2, output)? {
                    return Ok(false);
                }
                match output.translate(&-shift) {
                    Err(_) => true,
                    Ok(back) => dc.member_with(input, &back, budget)? == Membership::Fails,
                }
            }
            Asymmetric { input, output } => {
                let direct = dc.member_with(input, output, budget)?;
                let negated = dc.member_with(&input.negate(), &output.negate(), budget)?;
                direct != Membership::Unknown && negated != Membership::Unknown && direct != negated
            }
            NotConstant { pairs } => !constancy_witness(pairs).is_constant(),
            EdgeNotLicensed { input, output, edge, offset, rising } => {
                let at = edge - offset;
                if *rising {
                    output.is_rising_at(edge) && !input.eval(&at).is_one()
                } else {
                    output.is_falling_at(edge) && input.eval(&at).is_one()
                }
            }
            Unstable { input, output } => is(input, output)? && !stable(input, output).is_one(),
            Mismatch { left, right, .. } => left != right,
        })
    }
}

/// Outcome of a checker. `Holds` means no counterexample was found on the
/// examined corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { counterexample: Counterexample },
    /// Some memberships could not be decided within the budget.
    Unknown { reason: String },
}

impl Verdict {
    pub fn fails(counterexample: Counterexample) -> Self {
        Verdict::Fails { counterexample }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Fails { counterexample } => Some(counterexample),
            _ => None,
        }
    }

    /// Combines two verdicts: a failure wins, then an unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (f @ Verdict::Fails { .. }, _) | (_, f @ Verdict::Fails { .. }) => f,
            (u @ Verdict::Unknown { .. }, _) | (_, u @ Verdict::Unknown { .. }) => u,
            _ => Verdict::Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Fails { counterexample } => write!(f, "fails: {counterexample}"),
            Verdict::Unknown { reason } => write!(f, "unknown: {reason}"),
        }
    }
}

/// Accumulates undecided cases while a checker scans a corpus.
#[derive(Default)]
pub(crate) struct Undecided(usize);

impl Undecided {
    pub(crate) fn note(&mut self, m: Membership) {
        if m == Membership::Unknown {
            self.0 += 1;
        }
    }

    pub(crate) fn verdict(self) -> Verdict {
        if self.0 == 0 {
            Verdict::Holds
        } else {
            Verdict::Unknown {
                reason: format!("{} memberships undecided within budget", self.0),
            }
        }
    }
}
