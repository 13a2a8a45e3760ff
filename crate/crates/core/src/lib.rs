//! Exact Boolean signals over real time, delay conditions and their
//! properties, and an event-driven simulator for asynchronous circuits
//! built from Boolean gates and delay models.

#![allow(clippy::result_large_err)]

pub mod bit;
pub mod interval;
pub mod rational;
pub mod signal;
pub mod dc;
pub mod lab;
pub mod sim;
pub mod io;

pub use bit::Bit;
pub use interval::{Bound, Interval, IntervalSet};
pub use rational::{int, parse_rational, rat, Rational};
pub use signal::{BinaryOp, Signal, SignalError};

pub use dc::{
    parse_dc, stable, transmission_delay, Budget, DcError, DelayCondition, Members, Membership,
    SetFamily, SignalSet, TransitionKind, TransmissionDelayReport, UserDc,
};
