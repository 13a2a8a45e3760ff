use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use super::as_display;
use super::verdict::{Counterexample, Undecided, Verdict};
use crate::dc::{stable, Budget, DcError, DelayCondition, Membership};
use crate::interval::IntervalSet;
use crate::rational::Rational;
use crate::signal::Signal;

/// Does `i(u)` have a single element for every `u` of the corpus?
pub fn check_determinism(i: &DelayCondition, corpus: &[Signal], budget: &Budget) -> Result<Verdict, DcError> {
    for u in corpus {
        let members = i.enumerate_with(u, budget)?;
        if let [first, second, ..] = members.signals.as_slice() {
            return Ok(Verdict::fails(Counterexample::NonSingleton {
                input: u.clone(),
                first: first.clone(),
                second: second.clone(),
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Looks for `x in i(u)` with `x` not in `j(u)`.
pub fn check_inclusion(
    i: &DelayCondition,
    j: &DelayCondition,
    corpus: &[Signal],
    budget: &Budget,
) -> Result<Verdict, DcError> {
    let mut undecided = Undecided::default();
    for u in corpus {
        for x in i.enumerate_with(u, budget)?.signals {
            match j.member_with(u, &x, budget)? {
                Membership::Fails => {
                    return Ok(Verdict::fails(Counterexample::NotIncluded { input: u.clone(), output: x }))
                }
                m => undecided.note(m),
            }
        }
    }
    Ok(undecided.verdict())
}

/// Inclusion both ways.
pub fn check_equivalence(
    i: &DelayCondition,
    j: &DelayCondition,
    corpus: &[Signal],
    budget: &Budget,
) -> Result<Verdict, DcError> {
    Ok(check_inclusion(i, j, corpus, budget)?.and(check_inclusion(j, i, corpus, budget)?))
}

/// Shifts every enumerated member by every `d` in `shifts` (forward
/// direction), and shifts members of `i(u o tau^d)` back for `d >= 0`.
pub fn check_time_invariance(
    i: &DelayCondition,
    corpus: &[Signal],
    shifts: &[Rational],
    budget: &Budget,
) -> Result<Verdict, DcError> {
    let mut undecided = Undecided::default();
    for u in corpus {
        let members = i.enumerate_with(u, budget)?;
        for x in &members.signals {
            for d in shifts {
                let Ok(u2) = u.translate(d) else { continue };
                let cex = |kind: fn(Signal, Signal, Rational) -> Counterexample| {
                    Ok(Verdict::fails(kind(u.clone(), x.clone(), d.clone())))
                };
                let Ok(x2) = x.translate(d) else {
                    return cex(|input, output, shift| Counterexample::ShiftLeavesSignals { input, output, shift });
                };
                match i.member_with(&u2, &x2, budget)? {
                    Membership::Fails => {
                        return cex(|input, output, shift| Counterexample::ShiftNotMember { input, output, shift })
                    }
                    m => undecided.note(m),
                }
            }
        }
        for d in shifts.iter().filter(|d| !d.is_negative()) {
            let u2 = u.translate(d)?;
            for y in i.enumerate_with(&u2, budget)?.signals {
                let back = match y.translate(&-d) {
                    Ok(back) => i.member_with(u, &back, budget)?,
                    Err(_) => Membership::Fails,
                };
                match back {
                    Membership::Fails => {
                        return Ok(Verdict::fails(Counterexample::ShiftBackFails {
                            input: u.clone(),
                            output: y,
                            shift: d.clone(),
                        }))
                    }
                    m => undecided.note(m),
                }
            }
        }
    }
    Ok(undecided.verdict())
}

/// Compares `x in i(u)` with `not x in i(not u)` on probes: members of
/// `i(u)`, negated members of `i(not u)`, and the corpus itself.
pub fn check_symmetry(i: &DelayCondition, corpus: &[Signal], budget: &Budget) -> Result<Verdict, DcError> {
    let mut undecided = Undecided::default();
    for u in corpus {
        let nu = u.negate();
        let mut probes = Vec::new();
        if i.is_enumerable() {
            probes.extend(i.enumerate_with(u, budget)?.signals);
            probes.extend(i.enumerate_with(&nu, budget)?.signals.iter().map(Signal::negate));
        }
        probes.extend(corpus.iter().cloned());
        for x in probes {
            let direct = i.member_with(u, &x, budget)?;
            let negated = i.member_with(&nu, &x.negate(), budget)?;
            undecided.note(direct);
            undecided.note(negated);
            if direct != Membership::Unknown && negated != Membership::Unknown && direct != negated {
                return Ok(Verdict::fails(Counterexample::Asymmetric { input: u.clone(), output: x }));
            }
        }
    }
    Ok(undecided.verdict())
}

/// Every enumerated member satisfies the stability condition.
pub fn check_stability(i: &DelayCondition, corpus: &[Signal], budget: &Budget) -> Result<Verdict, DcError> {
    for u in corpus {
        for x in i.enumerate_with(u, budget)?.signals {
            if !stable(u, &x).is_one() {
                return Ok(Verdict::fails(Counterexample::Unstable { input: u.clone(), output: x }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The delays `(d_r, d_f)` compatible with a set of input/output pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstancyWitness {
    #[serde(serialize_with = "as_display")]
    pub feasible_dr: IntervalSet,
    #[serde(serialize_with = "as_display")]
    pub feasible_df: IntervalSet,
}

impl ConstancyWitness {
    fn unconstrained() -> Self {
        ConstancyWitness {
            feasible_dr: IntervalSet::non_negative(),
            feasible_df: IntervalSet::non_negative(),
        }
    }

    fn narrow(&mut self, u: &Signal, x: &Signal) {
        let (ones, zeros) = (u.ones(), u.zeros());
        for t in x.rising_edges() {
            self.feasible_dr = self.feasible_dr.intersection(&ones.reflect(&t));
        }
        for t in x.falling_edges() {
            self.feasible_df = self.feasible_df.intersection(&zeros.reflect(&t));
        }
    }

    pub fn is_constant(&self) -> bool {
        !self.feasible_dr.is_empty() && !self.feasible_df.is_empty()
    }

    pub fn admits(&self, dr: &Rational, df: &Rational) -> bool {
        self.feasible_dr.contains(dr) && self.feasible_df.contains(df)
    }
}

impl fmt::Display for ConstancyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_r in {}, d_f in {}", self.feasible_dr, self.feasible_df)
    }
}

/// Intersects, over every rising edge `t` of every `x`, the delays `d` with
/// `u(t - d) = 1`, and over falling edges those with `u(t - d) = 0`.
pub fn constancy_witness(pairs: &[(Signal, Signal)]) -> ConstancyWitness {
    let mut w = ConstancyWitness::unconstrained();
    for (u, x) in pairs {
        w.narrow(u, x);
    }
    w
}

/// Corpus-relative constancy: a common `(d_r, d_f)` for all enumerated
/// pairs. On failure the counterexample holds the shortest prefix of pairs
/// that already admits no witness.
pub fn check_constancy(
    i: &DelayCondition,
    corpus: &[Signal],
    budget: &Budget,
) -> Result<(Verdict, ConstancyWitness), DcError> {
    let mut pairs = Vec::new();
    let mut w = ConstancyWitness::unconstrained();
    for u in corpus {
        for x in i.enumerate_with(u, budget)?.signals {
            w.narrow(u, &x);
            pairs.push((u.clone(), x));
            if !w.is_constant() {
                return Ok((Verdict::fails(Counterexample::NotConstant { pairs }), w));
            }
        }
    }
    Ok((Verdict::Holds, w))
}

/// Checks the two constancy inequalities for fixed delays at every edge of
/// every enumerated member.
pub fn check_constancy_delays(
    i: &DelayCondition,
    dr: &Rational,
    df: &Rational,
    corpus: &[Signal],
    budget: &Budget,
) -> Result<Verdict, DcError> {
    for u in corpus {
        for x in i.enumerate_with(u, budget)?.signals {
            if let Some(cex) = unlicensed_edge(u, &x, dr, df) {
                return Ok(Verdict::fails(cex));
            }
        }
    }
    Ok(Verdict::Holds)
}

fn unlicensed_edge(u: &Signal, x: &Signal, dr: &Rational, df: &Rational) -> Option<Counterexample> {
    let cex = |edge: &Rational, offset: &Rational, rising| Counterexample::EdgeNotLicensed {
        input: u.clone(),
        output: x.clone(),
        edge: edge.clone(),
        offset: offset.clone(),
        rising,
    };
    if let Some(t) = x.rising_edges().into_iter().find(|t| !u.eval(&(t - dr)).is_one()) {
        return Some(cex(&t, dr, true));
    }
    x.falling_edges()
        .into_iter()
        .find(|t| u.eval(&(t - df)).is_one())
        .map(|t| cex(&t, df, false))
}
