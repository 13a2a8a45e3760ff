//! Membership `x in i(u)` and the deterministic transform.

use super::stability::stable;
use super::{Budget, DcError, DcNode, DelayCondition, Membership};
use crate::signal::Signal;

type MemberTest<'a> = Box<dyn Fn(&Signal) -> Result<Membership, DcError> + 'a>;

impl DelayCondition {
    /// Decides `x in self(u)` with the default [`Budget`].
    pub fn member(&self, u: &Signal, x: &Signal) -> Result<Membership, DcError> {
        self.member_with(u, x, &Budget::default())
    }

    /// Decides `x in self(u)`. The answer is exact except for serial
    /// connections whose inner condition is neither deterministic nor
    /// completely enumerable; those may return [`Membership::Unknown`].
    ///
    /// Meets check their non-emptiness hypothesis on `u` first and fail
    /// with [`DcError::EmptyDelaySet`] when it is violated.
    pub fn member_with(&self, u: &Signal, x: &Signal, budget: &Budget) -> Result<Membership, DcError> {
        Ok(match self.node() {
            DcNode::Ident => Membership::from_bool(x == u),
            DcNode::Pure(d) => Membership::from_bool(*x == u.translate(d)?),
            DcNode::WindowAll { d, m } => Membership::from_bool(*x == u.window_all(d, m)?),
            DcNode::WindowAny { d, m } => Membership::from_bool(*x == u.window_any(d, m)?),
            DcNode::StartupMask => Membership::from_bool(!super::startup_delays(u, x).is_empty()),
            DcNode::SolSc => Membership::from_bool(stable(u, x).is_one()),
            DcNode::Meet(i, j) => {
                self.ensure_meet_nonempty(u, budget)?;
                let left = i.member_with(u, x, budget)?;
                if left == Membership::Fails {
                    return Ok(Membership::Fails);
                }
                left.and(j.member_with(u, x, budget)?)
            }
            DcNode::MeetSet(i, set) => {
                self.ensure_meet_nonempty(u, budget)?;
                if !set.contains(x) {
                    return Ok(Membership::Fails);
                }
                i.member_with(u, x, budget)?
            }
            DcNode::MeetFam(i, family) => {
                self.ensure_meet_nonempty(u, budget)?;
                if !family.contains(u, x) {
                    return Ok(Membership::Fails);
                }
                i.member_with(u, x, budget)?
            }
            DcNode::Join(i, j) => {
                let left = i.member_with(u, x, budget)?;
                if left == Membership::Holds {
                    return Ok(Membership::Holds);
                }
                left.or(j.member_with(u, x, budget)?)
            }
            DcNode::Serial(outer, inner) => serial_member(outer, inner, u, x, budget)?,
            DcNode::Select { .. } => Membership::from_bool(*x == self.apply_with(u, budget)?),
            DcNode::User(user) => {
                Membership::from_bool(stable(u, x).is_one() && (user.member)(u, x))
            }
        })
    }

    /// The unique member of `self(u)`, for deterministic conditions.
    pub fn apply(&self, u: &Signal) -> Result<Signal, DcError> {
        self.apply_with(u, &Budget::default())
    }

    pub fn apply_with(&self, u: &Signal, budget: &Budget) -> Result<Signal, DcError> {
        let not_det = || DcError::NotDeterministic(self.to_string());
        let empty = || DcError::EmptyDelaySet {
            dc: self.to_string(),
            input: u.clone(),
        };
        match self.node() {
            DcNode::Ident => Ok(u.clone()),
            DcNode::Pure(d) => Ok(u.translate(d)?),
            DcNode::WindowAll { d, m } => Ok(u.window_all(d, m)?),
            DcNode::WindowAny { d, m } => Ok(u.window_any(d, m)?),
            DcNode::Meet(i, j) => {
                let (det, other) = if i.is_deterministic() {
                    (i, j)
                } else if j.is_deterministic() {
                    (j, i)
                } else {
                    return Err(not_det());
                };
                let x = det.apply_with(u, budget)?;
                if other.member_with(u, &x, budget)? == Membership::Fails {
                    return Err(empty());
                }
                Ok(x)
            }
            DcNode::MeetSet(i, set) => {
                let x = i.apply_with(u, budget)?;
                if !set.contains(&x) {
                    return Err(empty());
                }
                Ok(x)
            }
            DcNode::MeetFam(i, family) => {
                let x = i.apply_with(u, budget)?;
                if !family.contains(u, &x) {
                    return Err(empty());
                }
                Ok(x)
            }
            DcNode::Serial(outer, inner) => {
                if !self.is_deterministic() {
                    return Err(not_det());
                }
                let x = inner.apply_with(u, budget)?;
                outer.apply_with(&x, budget)
            }
            DcNode::Select { inner, budget } => inner
                .enumerate_with(u, budget)?
                .signals
                .into_iter()
                .min()
                .ok_or_else(empty),
            DcNode::User(user) => match &user.transform {
                Some(t) => {
                    let x = t(u);
                    if !stable(u, &x).is_one() {
                        return Err(DcError::NotStable {
                            input: u.clone(),
                            output: x,
                        });
                    }
                    Ok(x)
                }
                None => Err(not_det()),
            },
            DcNode::StartupMask | DcNode::SolSc | DcNode::Join(..) => Err(not_det()),
        }
    }

    /// Checks on one input that a meet node has at least one member,
    /// as far as the operands allow deciding it.
    fn ensure_meet_nonempty(&self, u: &Signal, budget: &Budget) -> Result<(), DcError> {
        let empty = || DcError::EmptyDelaySet {
            dc: self.to_string(),
            input: u.clone(),
        };
        let (probe, other): (&DelayCondition, MemberTest) =
            match self.node() {
                DcNode::Meet(i, j) => {
                    let i_first = i.is_deterministic() || (i.is_enumerable() && !j.is_deterministic());
                    let (a, b) = if i_first { (i, j) } else { (j, i) };
                    (a, Box::new(move |x| b.member_with(u, x, budget)))
                }
                DcNode::MeetSet(i, set) => (i, Box::new(move |x| Ok(Membership::from_bool(set.contains(x))))),
                DcNode::MeetFam(i, fam) => (
                    i,
                    Box::new(move |x| Ok(Membership::from_bool(fam.contains(u, x)))),
                ),
                _ => return Ok(()),
            };
        if probe.is_deterministic() {
            let x = probe.apply_with(u, budget)?;
            return match other(&x)? {
                Membership::Fails => Err(empty()),
                _ => Ok(()),
            };
        }
        if !probe.is_enumerable() {
            return Ok(());
        }
        let members = probe.enumerate_with(u, budget)?;
        let mut all_fail = true;
        for x in &members.signals {
            match other(x)? {
                Membership::Holds => return Ok(()),
                Membership::Unknown => all_fail = false,
                Membership::Fails => {}
            }
        }
        if members.complete && all_fail {
            return Err(empty());
        }
        Ok(())
    }
}

fn serial_member(
    outer: &DelayCondition,
    inner: &DelayCondition,
    u: &Signal,
    y: &Signal,
    budget: &Budget,
) -> Result<Membership, DcError> {
    if inner.is_deterministic() {
        let x = inner.apply_with(u, budget)?;
        return outer.member_with(&x, y, budget);
    }
    // every member of every condition is stable, hence so is every
    // member of a serial connection
    if !stable(u, y).is_one() {
        return Ok(Membership::Fails);
    }
    if matches!(outer.node(), DcNode::SolSc) {
        // all x in inner(u) share u's final value, and inner(u) is non-empty
        return Ok(Membership::Holds);
    }
    if !inner.is_enumerable() {
        return Ok(Membership::Unknown);
    }
    let witnesses = inner.enumerate_with(u, budget)?;
    let mut verdict = Membership::Fails;
    for x in &witnesses.signals {
        verdict = verdict.or(outer.member_with(x, y, budget)?);
        if verdict == Membership::Holds {
            return Ok(verdict);
        }
    }
    if !witnesses.complete {
        verdict = verdict.or(Membership::Unknown);
    }
    Ok(verdict)
}
