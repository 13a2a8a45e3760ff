use std::io::{self, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;
use vcd::{IdCode, SimulationCommand, TimescaleUnit, Value};

use crate::bit::Bit;
use crate::rational::denominator_lcm;
use crate::signal::Signal;

use super::write_atomic;

#[derive(Debug, Error)]
pub enum VcdError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("signal `{name}`: scaled time {time} does not fit in 64 bits")]
    TimeOverflow { name: String, time: BigInt },
}

/// Signals laid out on an integer time axis. Every time is multiplied by
/// `scale`, the least common multiple of all edge denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcdExport {
    pub scale: BigInt,
    pub names: Vec<String>,
    pub initial: Vec<Bit>,
    /// Strictly increasing timestamps, each with the signals that change there.
    pub changes: Vec<(u64, Vec<(usize, Bit)>)>,
}

impl VcdExport {
    pub fn new<'a, N: AsRef<str>>(
        signals: impl IntoIterator<Item = (N, &'a Signal)>,
    ) -> Result<Self, VcdError> {
        let signals: Vec<(String, &Signal)> =
            signals.into_iter().map(|(n, s)| (n.as_ref().to_string(), s)).collect();
        let scale = denominator_lcm(signals.iter().flat_map(|(_, s)| s.edges()));
        let mut events = Vec::new();
        for (k, (name, s)) in signals.iter().enumerate() {
            let mut value = s.initial();
            for e in s.edges() {
                let scaled = (e * &scale).to_integer();
                let time = scaled.to_u64().ok_or_else(|| VcdError::TimeOverflow {
                    name: name.clone(),
                    time: scaled.clone(),
                })?;
                value = !value;
                events.push((time, k, value));
            }
        }
        events.sort();
        let mut changes: Vec<(u64, Vec<(usize, Bit)>)> = Vec::new();
        for (time, k, value) in events {
            match changes.last_mut() {
                Some((t, group)) if *t == time => group.push((k, value)),
                _ => changes.push((time, vec![(k, value)])),
            }
        }
        Ok(VcdExport {
            scale,
            initial: signals.iter().map(|(_, s)| s.initial()).collect(),
            names: signals.into_iter().map(|(n, _)| n).collect(),
            changes,
        })
    }

    pub fn write<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = vcd::Writer::new(out);
        w.comment(&format!("time scale {}: one tick is 1/{} time unit", self.scale, self.scale))?;
        w.timescale(1, TimescaleUnit::NS)?;
        w.add_module("top")?;
        let ids: Vec<IdCode> = self
            .names
            .iter()
            .map(|n| w.add_wire(1, n))
            .collect::<io::Result<_>>()?;
        w.upscope()?;
        w.enddefinitions()?;
        if !self.names.is_empty() {
            w.timestamp(0)?;
            w.begin(SimulationCommand::Dumpvars)?;
            for (id, b) in ids.iter().zip(&self.initial) {
                w.change_scalar(*id, value(*b))?;
            }
            w.end()?;
        }
        for (time, group) in &self.changes {
            // An edge at 0 overrides the initial dump.
            if *time != 0 {
                w.timestamp(*time)?;
            }
            for (k, b) in group {
                w.change_scalar(ids[*k], value(*b))?;
            }
        }
        w.flush()
    }
}

fn value(b: Bit) -> Value {
    if b.is_one() {
        Value::V1
    } else {
        Value::V0
    }
}

pub fn write_vcd<'a, N: AsRef<str>, W: Write>(
    signals: impl IntoIterator<Item = (N, &'a Signal)>,
    out: W,
) -> Result<BigInt, VcdError> {
    let export = VcdExport::new(signals)?;
    export.write(out)?;
    Ok(export.scale)
}

/// Writes the dump atomically to `path`; returns the scale.
pub fn export_vcd<'a, N: AsRef<str>>(
    signals: impl IntoIterator<Item = (N, &'a Signal)>,
    path: impl AsRef<Path>,
) -> Result<BigInt, VcdError> {
    let mut buf = Vec::new();
    let scale = write_vcd(signals, &mut buf)?;
    write_atomic(path, &buf)?;
    Ok(scale)
}
