//! Fixtures shared by the benchmarks.

use delaykit::sim::{Netlist, Stimulus};
use delaykit::{rat, Bit, Signal};

/// A signal with `n` edges spaced by irregular quarter units.
pub fn busy_signal(n: usize, phase: i64) -> Signal {
    let mut t = 0;
    let edges = (0..n)
        .map(|k| {
            t += 1 + (k as i64 * 7 + phase) % 5;
            rat(t, 4)
        })
        .collect();
    Signal::new(Bit::ZERO, edges).expect("edges increase")
}

/// `len` stages alternating pure and inertial delays, with an inverter
/// every third stage.
pub fn delay_chain(len: usize) -> Netlist {
    let mut text = String::from("input u\n");
    let mut prev = "u".to_string();
    for k in 0..len {
        let name = format!("s{k}");
        match k % 3 {
            0 => text += &format!("delay {name} = pure(1/2) {prev}\n"),
            1 => text += &format!("delay {name} = window_all(1, 1/4) {prev}\n"),
            _ => text += &format!("gate {name} = not {prev}\n"),
        }
        prev = name;
    }
    text += &format!("output {prev}\n");
    text.parse().expect("chain parses")
}

/// A NAND ring oscillator enabled at time 1.
pub fn oscillator() -> (Netlist, Stimulus) {
    let net = "input en\n\
               gate g = nand en f\n\
               delay f = pure(1) g\n\
               output g\n"
        .parse()
        .expect("ring parses");
    let stim = Stimulus::new().with("en", Signal::new(Bit::ZERO, vec![rat(1, 1)]).unwrap());
    (net, stim)
}
