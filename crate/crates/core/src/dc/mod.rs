//! Delay conditions: maps from an input signal to a non-empty set of
//! admissible output signals, each of which satisfies the stability
//! condition with the input.
//!
//! A [`DelayCondition`] is an immutable expression tree. Every condition
//! decides membership `x in i(u)`; some can also list members
//! ([`DelayCondition::enumerate`]) or compute the unique member directly
//! ([`DelayCondition::apply`]).

mod enumerate;
mod member;
mod parse;
mod stability;

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{int, Rational};
use crate::signal::{Signal, SignalError};

pub use enumerate::startup_delays;
pub use parse::{parse_dc, parse_dc_prefix, DcParseError};
pub use stability::{stable, transmission_delay, TransitionKind, TransmissionDelayReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcError {
    #[error("{dc} has no member for input {input}")]
    EmptyDelaySet { dc: String, input: Signal },
    #[error("{0} is not deterministic")]
    NotDeterministic(String),
    #[error("{0} cannot enumerate its members")]
    NotEnumerable(String),
    #[error("({input}, {output}) does not satisfy the stability condition")]
    NotStable { input: Signal, output: Signal },
    #[error("invalid delay parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Signal(#[from] SignalError),
}

/// Three-valued answer to `x in i(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Holds,
    Fails,
    /// A witness search ran out of budget.
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Membership::Holds
        } else {
            Membership::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Membership::Holds
    }

    pub fn and(self, other: Membership) -> Membership {
        use Membership::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Holds,
        }
    }

    pub fn or(self, other: Membership) -> Membership {
        use Membership::*;
        match (self, other) {
            (Holds, _) | (_, Holds) => Holds,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Fails,
        }
    }
}

/// Limits for enumeration and witness search.
///
/// Non-deterministic conditions such as the stability condition have
/// infinitely many members; enumeration lists a reproducible finite
/// sample drawn from a grid of step `1 / grid_denominator` over
/// `[0, horizon]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    /// Maximum number of members returned by one enumeration.
    pub members: usize,
    pub horizon: Rational,
    pub grid_denominator: u32,
    /// Maximum edge count of randomly drawn members.
    pub max_edges: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            members: 16,
            horizon: int(10),
            grid_denominator: 2,
            max_edges: 4,
            seed: 0,
        }
    }
}

impl Budget {
    pub fn with_members(members: usize) -> Self {
        Budget {
            members,
            ..Budget::default()
        }
    }
}

/// A finite list of members, and whether it is all of `i(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Members {
    pub signals: Vec<Signal>,
    pub complete: bool,
}

type SetPredicate = dyn Fn(&Signal) -> bool + Send + Sync;
type FamilyPredicate = dyn Fn(&Signal, &Signal) -> bool + Send + Sync;
type Generator = dyn Fn(&Signal, &Budget) -> Vec<Signal> + Send + Sync;
type Transform = dyn Fn(&Signal) -> Signal + Send + Sync;

/// A set of signals `U`, given by its membership predicate.
#[derive(Clone)]
pub struct SignalSet {
    name: String,
    contains: Arc<SetPredicate>,
}

impl SignalSet {
    pub fn new(name: impl Into<String>, contains: impl Fn(&Signal) -> bool + Send + Sync + 'static) -> Self {
        SignalSet {
            name: name.into(),
            contains: Arc::new(contains),
        }
    }

    pub fn contains(&self, x: &Signal) -> bool {
        (self.contains)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for SignalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignalSet({})", self.name)
    }
}

/// A map `phi : S -> P*(S)`, given as the predicate `x in phi(u)`.
#[derive(Clone)]
pub struct SetFamily {
    name: String,
    contains: Arc<FamilyPredicate>,
}

impl SetFamily {
    pub fn new(
        name: impl Into<String>,
        contains: impl Fn(&Signal, &Signal) -> bool + Send + Sync + 'static,
    ) -> Self {
        SetFamily {
            name: name.into(),
            contains: Arc::new(contains),
        }
    }

    pub fn contains(&self, u: &Signal, x: &Signal) -> bool {
        (self.contains)(u, x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily({})", self.name)
    }
}

/// A user-defined condition. Its membership predicate is always
/// intersected with the stability condition, so the result is a delay
/// condition whatever the predicate says.
#[derive(Clone)]
pub struct UserDc {
    name: String,
    member: Arc<FamilyPredicate>,
    generator: Option<Arc<Generator>>,
    transform: Option<Arc<Transform>>,
}

impl UserDc {
    pub fn new(
        name: impl Into<String>,
        member: impl Fn(&Signal, &Signal) -> bool + Send + Sync + 'static,
    ) -> Self {
        UserDc {
            name: name.into(),
            member: Arc::new(member),
            generator: None,
            transform: None,
        }
    }

    /// Attaches a candidate generator; candidates that are not members are
    /// dropped during enumeration.
    pub fn with_generator(
        mut self,
        generator: impl Fn(&Signal, &Budget) -> Vec<Signal> + Send + Sync + 'static,
    ) -> Self {
        self.generator = Some(Arc::new(generator));
        self
    }

    /// Declares the condition deterministic with the given transform.
    pub fn with_transform(mut self, transform: impl Fn(&Signal) -> Signal + Send + Sync + 'static) -> Self {
        self.transform = Some(Arc::new(transform));
        self
    }
}

impl fmt::Debug for UserDc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UserDc({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub enum DcNode {
    /// `I(u) = {u}`
    Ident,
    /// `I_d(u) = {u shifted right by d}`, `d >= 0`
    Pure(Rational),
    /// `{ u(t) * chi_[d, inf)(t) : d >= 0 }`
    StartupMask,
    /// Every output satisfying the stability condition.
    SolSc,
    WindowAll { d: Rational, m: Rational },
    WindowAny { d: Rational, m: Rational },
    Meet(DelayCondition, DelayCondition),
    MeetSet(DelayCondition, SignalSet),
    MeetFam(DelayCondition, SetFamily),
    Join(DelayCondition, DelayCondition),
    /// `Serial(i, j)(u) = { y : x in j(u), y in i(x) }`: `j` first.
    Serial(DelayCondition, DelayCondition),
    /// The canonically least enumerated member of `inner(u)`.
    Select { inner: DelayCondition, budget: Budget },
    User(UserDc),
}

#[derive(Clone, Debug)]
pub struct DelayCondition(Arc<DcNode>);

impl DelayCondition {
    fn from_node(node: DcNode) -> Self {
        DelayCondition(Arc::new(node))
    }

    pub fn node(&self) -> &DcNode {
        &self.0
    }

    pub fn ident() -> Self {
        Self::from_node(DcNode::Ident)
    }

    pub fn pure(d: Rational) -> Result<Self, DcError> {
        if d.is_negative() {
            return Err(DcError::InvalidParameter(format!("pure delay {d} is negative")));
        }
        Ok(Self::from_node(DcNode::Pure(d)))
    }

    pub fn startup_mask() -> Self {
        Self::from_node(DcNode::StartupMask)
    }

    pub fn sol_sc() -> Self {
        Self::from_node(DcNode::SolSc)
    }

    pub fn window_all(d: Rational, m: Rational) -> Result<Self, DcError> {
        check_window(&d, &m)?;
        Ok(Self::from_node(DcNode::WindowAll { d, m }))
    }

    pub fn window_any(d: Rational, m: Rational) -> Result<Self, DcError> {
        check_window(&d, &m)?;
        Ok(Self::from_node(DcNode::WindowAny { d, m }))
    }

    /// `(i ^ j)(u) = i(u) n j(u)`. Emptiness is reported when an input
    /// exercises it.
    pub fn meet(&self, other: &DelayCondition) -> Self {
        Self::from_node(DcNode::Meet(self.clone(), other.clone()))
    }

    pub fn meet_set(&self, set: SignalSet) -> Self {
        Self::from_node(DcNode::MeetSet(self.clone(), set))
    }

    pub fn meet_fam(&self, family: SetFamily) -> Self {
        Self::from_node(DcNode::MeetFam(self.clone(), family))
    }

    /// `(i v j)(u) = i(u) u j(u)`
    pub fn join(&self, other: &DelayCondition) -> Self {
        Self::from_node(DcNode::Join(self.clone(), other.clone()))
    }

    /// Serial connection `self o inner`: the input goes through `inner`
    /// first, then through `self`.
    pub fn serial(&self, inner: &DelayCondition) -> Self {
        Self::from_node(DcNode::Serial(self.clone(), inner.clone()))
    }

    /// A deterministic condition included in `self`, picking the
    /// canonically least enumerated member for each input.
    pub fn select_deterministic(&self, budget: Budget) -> Result<Self, DcError> {
        if !self.is_enumerable() {
            return Err(DcError::NotEnumerable(self.to_string()));
        }
        Ok(Self::from_node(DcNode::Select {
            inner: self.clone(),
            budget,
        }))
    }

    pub fn user(dc: UserDc) -> Self {
        Self::from_node(DcNode::User(dc))
    }

    /// Whether [`apply`](Self::apply) is available.
    pub fn is_deterministic(&self) -> bool {
        match self.node() {
            DcNode::Ident
            | DcNode::Pure(_)
            | DcNode::WindowAll { .. }
            | DcNode::WindowAny { .. }
            | DcNode::Select { .. } => true,
            DcNode::StartupMask | DcNode::SolSc | DcNode::Join(..) => false,
            DcNode::Meet(i, j) => i.is_deterministic() || j.is_deterministic(),
            DcNode::MeetSet(i, _) | DcNode::MeetFam(i, _) => i.is_deterministic(),
            DcNode::Serial(i, j) => i.is_deterministic() && j.is_deterministic(),
            DcNode::User(u) => u.transform.is_some(),
        }
    }

    /// Whether [`enumerate`](Self::enumerate) is available.
    pub fn is_enumerable(&self) -> bool {
        match self.node() {
            DcNode::Ident
            | DcNode::Pure(_)
            | DcNode::WindowAll { .. }
            | DcNode::WindowAny { .. }
            | DcNode::StartupMask
            | DcNode::SolSc
            | DcNode::Select { .. } => true,
            DcNode::Meet(i, j) => i.is_enumerable() || j.is_enumerable(),
            DcNode::MeetSet(i, _) | DcNode::MeetFam(i, _) => i.is_enumerable(),
            DcNode::Join(i, j) | DcNode::Serial(i, j) => i.is_enumerable() && j.is_enumerable(),
            DcNode::User(u) => u.generator.is_some() || u.transform.is_some(),
        }
    }

    /// For a deterministic condition, a time `L >= 0` such that the output
    /// at `t` depends only on input values at times `<= t - L`.
    pub fn lookahead(&self) -> Option<Rational> {
        if !self.is_deterministic() {
            return None;
        }
        match self.node() {
            DcNode::Ident | DcNode::Select { .. } | DcNode::User(_) => Some(Rational::zero()),
            DcNode::Pure(d) => Some(d.clone()),
            DcNode::WindowAll { d, m } | DcNode::WindowAny { d, m } => {
                Some(Signal::window_lookahead(d, m))
            }
            DcNode::Meet(i, j) => {
                if i.is_deterministic() {
                    i.lookahead()
                } else {
                    j.lookahead()
                }
            }
            DcNode::MeetSet(i, _) | DcNode::MeetFam(i, _) => i.lookahead(),
            DcNode::Serial(i, j) => Some(i.lookahead()? + j.lookahead()?),
            DcNode::StartupMask | DcNode::SolSc | DcNode::Join(..) => None,
        }
    }
}

fn check_window(d: &Rational, m: &Rational) -> Result<(), DcError> {
    if m.is_negative() || m > d {
        return Err(DcError::Signal(SignalError::BadWindow {
            d: d.clone(),
            m: m.clone(),
        }));
    }
    Ok(())
}

/// Renders the condition in the mini-language accepted by [`parse_dc`].
/// Conditions built from closures print with their name and do not parse
/// back.
impl fmt::Display for DelayCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            DcNode::Ident => f.write_str("ident"),
            DcNode::Pure(d) => write!(f, "pure({d})"),
            DcNode::StartupMask => f.write_str("startup"),
            DcNode::SolSc => f.write_str("solsc"),
            DcNode::WindowAll { d, m } => write!(f, "window_all({d},{m})"),
            DcNode::WindowAny { d, m } => write!(f, "window_any({d},{m})"),
            DcNode::Meet(i, j) => write!(f, "meet({i},{j})"),
            DcNode::MeetSet(i, s) => write!(f, "meet_set({i},{})", s.name),
            DcNode::MeetFam(i, p) => write!(f, "meet_fam({i},{})", p.name),
            DcNode::Join(i, j) => write!(f, "join({i},{j})"),
            DcNode::Serial(i, j) => write!(f, "serial({i},{j})"),
            DcNode::Select { inner, .. } => write!(f, "select({inner})"),
            DcNode::User(u) => write!(f, "user({})", u.name),
        }
    }
}
