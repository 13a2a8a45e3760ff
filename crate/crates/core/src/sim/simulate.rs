use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;
use thiserror::Error;

use super::netlist::{Compiled, Netlist, NetlistError, NodeKind};
use crate::dc::{transmission_delay, DcError, DelayCondition, TransmissionDelayReport};
use crate::interval::Bound;
use crate::rational::Rational;
use crate::signal::Signal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error(transparent)]
    Dc(#[from] DcError),
    #[error("no stimulus for input `{0}`")]
    MissingStimulus(String),
    #[error("stimulus `{0}` is not an input of the netlist")]
    UnknownStimulus(String),
    #[error("horizon must be non-negative, got {0}")]
    NegativeHorizon(Rational),
    #[error("stimulus `{input}` has an edge at {edge}, beyond the horizon")]
    StimulusBeyondHorizon { input: String, edge: Rational },
    #[error("no steady state before time 0 for the feedback through {}", .0.join(", "))]
    NoInitialState(Vec<String>),
    #[error("`{node}` still switches at {time}, past the horizon")]
    HorizonExceeded { node: String, time: Rational },
    #[error("no signal named `{0}`")]
    UnknownSignal(String),
}

/// Input signals by port name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stimulus(BTreeMap<String, Signal>);

impl Stimulus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, input: impl Into<String>, signal: Signal) -> Self {
        self.insert(input, signal);
        self
    }

    pub fn insert(&mut self, input: impl Into<String>, signal: Signal) {
        self.0.insert(input.into(), signal);
    }

    pub fn get(&self, input: &str) -> Option<&Signal> {
        self.0.get(input)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Signal)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl<S: Into<String>> FromIterator<(S, Signal)> for Stimulus {
    fn from_iter<I: IntoIterator<Item = (S, Signal)>>(iter: I) -> Self {
        Stimulus(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// The first event past the horizon, when the circuit has not settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pending {
    pub node: String,
    pub time: Rational,
}

/// Every signal of a simulated netlist on `[0, horizon]`, held at its
/// value at the horizon afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub horizon: Rational,
    signals: Vec<(String, Signal)>,
    index: HashMap<String, usize>,
    /// `None` when the held values are the exact behavior for all time.
    pub pending: Option<Pending>,
}

impl Simulation {
    pub fn get(&self, name: &str) -> Option<&Signal> {
        self.index.get(name).map(|&k| &self.signals[k].1)
    }

    /// Inputs, then nodes, in definition order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Signal)> {
        self.signals.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn is_settled(&self) -> bool {
        self.pending.is_none()
    }

    /// Fails with [`SimError::HorizonExceeded`] unless the circuit is quiet
    /// after the horizon.
    pub fn settled(&self) -> Result<&Self, SimError> {
        match &self.pending {
            None => Ok(self),
            Some(p) => Err(SimError::HorizonExceeded {
                node: p.node.clone(),
                time: p.time.clone(),
            }),
        }
    }

    /// Transmission delay from `input` to `output`; needs a settled run so
    /// that final values are known.
    pub fn transmission_delay(&self, input: &str, output: &str) -> Result<TransmissionDelayReport, SimError> {
        self.settled()?;
        let get = |n: &str| self.get(n).ok_or_else(|| SimError::UnknownSignal(n.to_string()));
        Ok(transmission_delay(get(input)?, get(output)?)?)
    }
}

/// Simulates `netlist` on `[0, horizon]`.
///
/// Gates act instantaneously; delays apply their condition. Feedback is
/// resolved in chunks: a delay with lookahead `L > 0` determines its output
/// up to `t + L` from its input up to `t`, so each sweep extends the exact
/// prefix by the smallest such `L` on a cycle. Before time 0 every signal
/// is constant; for feedback loops that constant state is found by
/// iterating the static equations from 0.
pub fn simulate(netlist: &Netlist, stimulus: &Stimulus, horizon: &Rational) -> Result<Simulation, SimError> {
    let c = netlist.compile()?;
    if horizon.is_negative() {
        return Err(SimError::NegativeHorizon(horizon.clone()));
    }
    if let Some((name, _)) = stimulus.iter().find(|(n, _)| !netlist.inputs.iter().any(|i| i == n)) {
        return Err(SimError::UnknownStimulus(name.to_string()));
    }
    let inputs: Vec<Signal> = netlist
        .inputs
        .iter()
        .map(|name| {
            let s = stimulus.get(name).ok_or_else(|| SimError::MissingStimulus(name.clone()))?;
            match s.last_edge() {
                Some(e) if e > horizon => Err(SimError::StimulusBeyondHorizon {
                    input: name.clone(),
                    edge: e.clone(),
                }),
                _ => Ok(s.clone()),
            }
        })
        .collect::<Result<_, _>>()?;

    let eval = Evaluator { net: netlist, c: &c };
    let breaks: Vec<usize> = (0..c.names.len()).filter(|&v| c.is_break[v]).collect();
    let mut held = eval.initial_breaks(&inputs, &breaks)?;
    let values = match breaks.iter().filter_map(|&v| c.lookahead[v].clone()).min() {
        None => eval.sweep(&inputs, &held)?,
        Some(step) => {
            // every signal is exact on (-inf, known)
            let mut known = step.clone();
            loop {
                let values = eval.sweep(&inputs, &held)?;
                if known > *horizon {
                    break values;
                }
                for &v in &breaks {
                    let operand = values[c.operands[v][0]].truncate_before(&known);
                    held.insert(v, eval.delay(v).apply(&operand)?);
                }
                known += &step;
            }
        }
    };

    let signals: Vec<Signal> = values.iter().map(|s| s.truncate_after(horizon)).collect();
    let pending = eval.first_event_after(&signals)?;
    let index = c.names.iter().cloned().enumerate().map(|(k, n)| (n, k)).collect();
    Ok(Simulation {
        horizon: horizon.clone(),
        signals: c.names.iter().cloned().zip(signals).collect(),
        index,
        pending,
    })
}

/// Simulates and reports the transmission delay between two signals.
pub fn path_delay_report(
    netlist: &Netlist,
    stimulus: &Stimulus,
    input: &str,
    output: &str,
    horizon: &Rational,
) -> Result<TransmissionDelayReport, SimError> {
    simulate(netlist, stimulus, horizon)?.transmission_delay(input, output)
}

struct Evaluator<'a> {
    net: &'a Netlist,
    c: &'a Compiled,
}

impl Evaluator<'_> {
    fn node_kind(&self, v: usize) -> &NodeKind {
        &self.net.nodes[v - self.c.n_inputs].kind
    }

    fn delay(&self, v: usize) -> &DelayCondition {
        match self.node_kind(v) {
            NodeKind::Delay { dc, .. } => dc,
            NodeKind::Gate { .. } => unreachable!("break vertices are delays"),
        }
    }

    /// Output of vertex `v` given its operand signals.
    fn node(&self, v: usize, operands: &[&Signal]) -> Result<Signal, SimError> {
        Ok(match self.node_kind(v) {
            NodeKind::Gate { kind, .. } => Signal::pointwise(operands, |bits| kind.eval(bits)),
            NodeKind::Delay { dc, .. } => dc.apply(operands[0])?,
        })
    }

    /// One pass in evaluation order with the break vertices held fixed.
    fn sweep(&self, inputs: &[Signal], held: &HashMap<usize, Signal>) -> Result<Vec<Signal>, SimError> {
        let mut values: Vec<Option<Signal>> = vec![None; self.c.names.len()];
        for &v in &self.c.order {
            let s = if v < self.c.n_inputs {
                inputs[v].clone()
            } else if let Some(h) = held.get(&v) {
                h.clone()
            } else {
                let ops: Vec<&Signal> = self.c.operands[v]
                    .iter()
                    .map(|&w| values[w].as_ref().expect("operands precede in evaluation order"))
                    .collect();
                self.node(v, &ops)?
            };
            values[v] = Some(s);
        }
        Ok(values.into_iter().map(|s| s.expect("every vertex is ordered")).collect())
    }

    /// Constant break outputs consistent with the constant values every
    /// signal has before time 0, found by updating one break at a time
    /// starting from all zeros.
    fn initial_breaks(&self, inputs: &[Signal], breaks: &[usize]) -> Result<HashMap<usize, Signal>, SimError> {
        let constants: Vec<Signal> = inputs.iter().map(|s| Signal::constant(s.initial())).collect();
        let mut guess: HashMap<usize, Signal> = breaks.iter().map(|&v| (v, Signal::zero())).collect();
        for _ in 0..breaks.len() + 64 {
            let mut changed = false;
            for &v in breaks {
                let values = self.sweep(&constants, &guess)?;
                let operand = Signal::constant(values[self.c.operands[v][0]].initial());
                let next = self.delay(v).apply(&operand)?;
                if guess[&v] != next {
                    guess.insert(v, next);
                    changed = true;
                }
            }
            if !changed {
                return Ok(guess);
            }
        }
        Err(SimError::NoInitialState(
            breaks.iter().map(|&v| self.c.names[v].clone()).collect(),
        ))
    }

    /// Re-evaluates every vertex from the held signals; any disagreement
    /// means the circuit keeps switching after the horizon.
    fn first_event_after(&self, signals: &[Signal]) -> Result<Option<Pending>, SimError> {
        let mut first: Option<Pending> = None;
        for v in self.c.n_inputs..signals.len() {
            let ops: Vec<&Signal> = self.c.operands[v].iter().map(|&w| &signals[w]).collect();
            let next = self.node(v, &ops)?;
            let time = match next.xor(&signals[v]).ones().infimum() {
                Some(Bound::Closed(t)) | Some(Bound::Open(t)) => t,
                _ => continue,
            };
            if first.as_ref().is_none_or(|p| time < p.time) {
                first = Some(Pending {
                    node: self.c.names[v].clone(),
                    time,
                });
            }
        }
        Ok(first)
    }
}
