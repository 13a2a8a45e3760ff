//! Netlists of Boolean gates and deterministic delays, and their exact
//! simulation.

mod netlist;
mod simulate;

pub use netlist::{GateKind, Netlist, NetlistError, Node, NodeKind, TruthTable, MAX_FAN_IN};
pub use simulate::{path_delay_report, simulate, Pending, SimError, Simulation, Stimulus};
