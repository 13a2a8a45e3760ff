use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::bit::Bit;
use crate::dc::{parse_dc_prefix, DelayCondition};
use crate::rational::Rational;

/// Largest number of operands a gate may have.
pub const MAX_FAN_IN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("name `{0}` is defined twice")]
    DuplicateName(String),
    #[error("`{node}` refers to undefined `{operand}`")]
    DanglingReference { node: String, operand: String },
    #[error("gate `{node}` expects {expected} operands, got {found}")]
    Arity { node: String, expected: usize, found: usize },
    #[error("gate `{node}` has {count} operands; at most {MAX_FAN_IN} are allowed")]
    TooManyOperands { node: String, count: usize },
    #[error("delay `{node}` uses the non-deterministic condition {dc}")]
    NonDeterministicDelay { node: String, dc: String },
    #[error("cycle without a positive delay through {}", .0.join(", "))]
    ZeroDelayCycle(Vec<String>),
}

/// A truth table over `arity` operands. Row `k` is the output for the
/// valuation whose binary encoding is `k`, first operand most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    rows: Vec<Bit>,
}

impl TruthTable {
    /// Builds a table from its `2^arity` rows.
    pub fn new(rows: Vec<Bit>) -> Option<Self> {
        let n = rows.len();
        if !n.is_power_of_two() || n > 1 << MAX_FAN_IN {
            return None;
        }
        Some(TruthTable {
            arity: n.trailing_zeros() as usize,
            rows,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, operands: &[Bit]) -> Bit {
        let k = operands.iter().fold(0usize, |k, b| (k << 1) | b.as_bool() as usize);
        self.rows[k]
    }
}

impl FromStr for TruthTable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let rows = s
            .chars()
            .map(|c| match c {
                '0' => Ok(Bit::ZERO),
                '1' => Ok(Bit::ONE),
                _ => Err(format!("truth table digit `{c}`")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        TruthTable::new(rows).ok_or_else(|| format!("truth table `{s}` needs 2^n rows with n <= {MAX_FAN_IN}"))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rows.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateKind {
    And,
    Or,
    Xor,
    Nand,
    Nor,
    Not,
    Table(TruthTable),
}

impl GateKind {
    pub fn eval(&self, operands: &[Bit]) -> Bit {
        let all = || operands.iter().all(|b| b.is_one());
        let any = || operands.iter().any(|b| b.is_one());
        match self {
            GateKind::And => Bit::new(all()),
            GateKind::Or => Bit::new(any()),
            GateKind::Xor => operands.iter().fold(Bit::ZERO, |a, &b| a ^ b),
            GateKind::Nand => Bit::new(!all()),
            GateKind::Nor => Bit::new(!any()),
            GateKind::Not => !operands[0],
            GateKind::Table(t) => t.eval(operands),
        }
    }

    fn arity(&self) -> Option<usize> {
        match self {
            GateKind::Not => Some(1),
            GateKind::Table(t) => Some(t.arity()),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::And => f.write_str("and"),
            GateKind::Or => f.write_str("or"),
            GateKind::Xor => f.write_str("xor"),
            GateKind::Nand => f.write_str("nand"),
            GateKind::Nor => f.write_str("nor"),
            GateKind::Not => f.write_str("not"),
            GateKind::Table(t) => write!(f, "tt:{t}"),
        }
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "and" => GateKind::And,
            "or" => GateKind::Or,
            "xor" => GateKind::Xor,
            "nand" => GateKind::Nand,
            "nor" => GateKind::Nor,
            "not" => GateKind::Not,
            _ => match s.strip_prefix("tt:") {
                Some(bits) => GateKind::Table(bits.parse()?),
                None => return Err(format!("unknown gate `{s}`")),
            },
        })
    }
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    Gate { kind: GateKind, operands: Vec<String> },
    Delay { dc: DelayCondition, operand: String },
}

#[derive(Clone, Debug)]
pub struct Node {
    pub name: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn operands(&self) -> &[String] {
        match &self.kind {
            NodeKind::Gate { operands, .. } => operands,
            NodeKind::Delay { operand, .. } => std::slice::from_ref(operand),
        }
    }
}

/// Boolean gates and delays wired by name. Build one with the chained
/// constructors or parse the line format:
///
/// ```text
/// # comment
/// input u
/// delay a = pure(1) u
/// gate w = xor u a
/// delay x = window_all(2, 2) w
/// output x
/// ```
#[derive(Clone, Debug, Default)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub nodes: Vec<Node>,
    pub outputs: Vec<String>,
}

impl Netlist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn input(mut self, name: impl Into<String>) -> Self {
        self.inputs.push(name.into());
        self
    }

    pub fn gate<S: Into<String>>(
        mut self,
        name: impl Into<String>,
        kind: GateKind,
        operands: impl IntoIterator<Item = S>,
    ) -> Self {
        self.nodes.push(Node {
            name: name.into(),
            kind: NodeKind::Gate {
                kind,
                operands: operands.into_iter().map(Into::into).collect(),
            },
        });
        self
    }

    pub fn delay(mut self, name: impl Into<String>, dc: DelayCondition, operand: impl Into<String>) -> Self {
        self.nodes.push(Node {
            name: name.into(),
            kind: NodeKind::Delay {
                dc,
                operand: operand.into(),
            },
        });
        self
    }

    pub fn output(mut self, name: impl Into<String>) -> Self {
        self.outputs.push(name.into());
        self
    }

    /// All names in definition order: inputs first, then nodes.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.inputs
            .iter()
            .map(String::as_str)
            .chain(self.nodes.iter().map(|n| n.name.as_str()))
    }

    pub fn parse(text: &str) -> Result<Self, NetlistError> {
        let mut net = Netlist::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let syntax = |message: String| NetlistError::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match keyword {
                "input" | "output" => {
                    let name = single_name(rest).map_err(syntax)?;
                    net = if keyword == "input" { net.input(name) } else { net.output(name) };
                }
                "gate" | "delay" => {
                    let (name, body) = rest
                        .split_once('=')
                        .ok_or_else(|| syntax(format!("expected `{keyword} <name> = ...`")))?;
                    let name = single_name(name.trim()).map_err(syntax)?;
                    let body = body.trim();
                    if keyword == "gate" {
                        let mut words = body.split_whitespace();
                        let kind: GateKind = words
                            .next()
                            .ok_or_else(|| syntax("missing gate function".into()))?
                            .parse()
                            .map_err(syntax)?;
                        let operands: Vec<&str> = words.collect();
                        if operands.is_empty() {
                            return Err(syntax(format!("gate `{name}` has no operands")));
                        }
                        net = net.gate(name, kind, operands);
                    } else {
                        let (dc, used) = parse_dc_prefix(body).map_err(|e| syntax(e.to_string()))?;
                        let operand = single_name(body[used..].trim()).map_err(syntax)?;
                        net = net.delay(name, dc, operand);
                    }
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }
        Ok(net)
    }

    pub fn validate(&self) -> Result<(), NetlistError> {
        self.compile().map(|_| ())
    }

    pub(crate) fn compile(&self) -> Result<Compiled, NetlistError> {
        let mut index = HashMap::new();
        for (k, name) in self.names().enumerate() {
            if index.insert(name, k).is_some() {
                return Err(NetlistError::DuplicateName(name.to_string()));
            }
        }
        let n_inputs = self.inputs.len();
        let n = n_inputs + self.nodes.len();
        let mut operands = vec![Vec::new(); n];
        let mut lookahead = vec![None; n];
        for (k, node) in self.nodes.iter().enumerate() {
            let v = n_inputs + k;
            for op in node.operands() {
                let &w = index.get(op.as_str()).ok_or_else(|| NetlistError::DanglingReference {
                    node: node.name.clone(),
                    operand: op.clone(),
                })?;
                operands[v].push(w);
            }
            match &node.kind {
                NodeKind::Gate { kind, operands } => {
                    if operands.len() > MAX_FAN_IN {
                        return Err(NetlistError::TooManyOperands {
                            node: node.name.clone(),
                            count: operands.len(),
                        });
                    }
                    let expected = kind.arity().unwrap_or(operands.len().max(1));
                    if operands.len() != expected {
                        return Err(NetlistError::Arity {
                            node: node.name.clone(),
                            expected,
                            found: operands.len(),
                        });
                    }
                }
                NodeKind::Delay { dc, .. } => {
                    if !dc.is_deterministic() {
                        return Err(NetlistError::NonDeterministicDelay {
                            node: node.name.clone(),
                            dc: dc.to_string(),
                        });
                    }
                    lookahead[v] = Some(dc.lookahead().unwrap_or_else(Rational::zero));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for out in &self.outputs {
            if !index.contains_key(out.as_str()) {
                return Err(NetlistError::DanglingReference {
                    node: "output".into(),
                    operand: out.clone(),
                });
            }
            if !seen.insert(out) {
                return Err(NetlistError::DuplicateName(out.clone()));
            }
        }

        let names: Vec<String> = self.names().map(str::to_string).collect();
        let positive = |v: usize| lookahead[v].as_ref().is_some_and(|l: &Rational| l.is_positive());
        let graph = |cut: &dyn Fn(usize) -> bool| {
            let mut g = DiGraph::<usize, ()>::with_capacity(n, n);
            let ids: Vec<NodeIndex> = (0..n).map(|v| g.add_node(v)).collect();
            for (v, ops) in operands.iter().enumerate() {
                if !cut(v) {
                    for &w in ops {
                        g.add_edge(ids[w], ids[v], ());
                    }
                }
            }
            g
        };
        let cyclic = |g: &DiGraph<usize, ()>| -> Vec<Vec<usize>> {
            tarjan_scc(g)
                .into_iter()
                .filter(|c| c.len() > 1 || g.contains_edge(c[0], c[0]))
                .map(|c| {
                    let mut vs: Vec<usize> = c.into_iter().map(|i| g[i]).collect();
                    vs.sort_unstable();
                    vs
                })
                .collect()
        };

        if let Some(zero) = cyclic(&graph(&positive)).into_iter().next() {
            return Err(NetlistError::ZeroDelayCycle(zero.into_iter().map(|v| names[v].clone()).collect()));
        }
        let mut is_break = vec![false; n];
        for v in cyclic(&graph(&|_| false)).into_iter().flatten() {
            is_break[v] = positive(v);
        }
        let dag = graph(&|v| is_break[v]);
        let order = toposort(&dag, None)
            .expect("cutting positive delays on cycles leaves no cycle")
            .into_iter()
            .map(|i| dag[i])
            .collect();
        Ok(Compiled {
            names,
            n_inputs,
            operands,
            lookahead,
            is_break,
            order,
        })
    }
}

fn single_name(s: &str) -> Result<&str, String> {
    let valid = !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || "_.[]$".contains(c))
        && !s.starts_with(|c: char| c.is_ascii_digit());
    if valid {
        Ok(s)
    } else {
        Err(format!("invalid name `{s}`"))
    }
}

impl FromStr for Netlist {
    type Err = NetlistError;

    fn from_str(s: &str) -> Result<Self, NetlistError> {
        Netlist::parse(s)
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.inputs {
            writeln!(f, "input {name}")?;
        }
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Gate { kind, operands } => {
                    writeln!(f, "gate {} = {kind} {}", node.name, operands.join(" "))?
                }
                NodeKind::Delay { dc, operand } => writeln!(f, "delay {} = {dc} {operand}", node.name)?,
            }
        }
        for name in &self.outputs {
            writeln!(f, "output {name}")?;
        }
        Ok(())
    }
}

/// Vertex numbering: inputs, then nodes in definition order.
pub(crate) struct Compiled {
    pub names: Vec<String>,
    pub n_inputs: usize,
    pub operands: Vec<Vec<usize>>,
    /// `Some` for delay nodes.
    pub lookahead: Vec<Option<Rational>>,
    /// Positive delays on a cycle; their outputs are advanced in chunks.
    pub is_break: Vec<bool>,
    /// Evaluation order once the break nodes' inputs are cut.
    pub order: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_tables() {
        let t: TruthTable = "0110".parse().unwrap();
        assert_eq!(t.arity(), 2);
        assert_eq!(t.eval(&[Bit::ONE, Bit::ZERO]), Bit::ONE);
        assert_eq!(t.eval(&[Bit::ONE, Bit::ONE]), Bit::ZERO);
        // first operand is the high bit
        let t: TruthTable = "0010".parse().unwrap();
        assert_eq!(t.eval(&[Bit::ONE, Bit::ZERO]), Bit::ONE);
        assert_eq!(t.eval(&[Bit::ZERO, Bit::ONE]), Bit::ZERO);
        assert!("011".parse::<TruthTable>().is_err());
        assert!("01x0".parse::<TruthTable>().is_err());
        assert_eq!(GateKind::Nand.eval(&[Bit::ONE, Bit::ONE, Bit::ZERO]), Bit::ONE);
        assert_eq!(GateKind::Xor.eval(&[Bit::ONE, Bit::ONE, Bit::ONE]), Bit::ONE);
    }

    #[test]
    fn parse_and_print() {
        let text = "input u\n\
                    # a comment\n\
                    delay a = pure(1) u\n\
                    gate w = xor u a   # trailing\n\
                    delay x = window_all(2, 2) w\n\
                    gate y = tt:0110 u x\n\
                    output x\n";
        let net = Netlist::parse(text).unwrap();
        assert_eq!(net.inputs, vec!["u"]);
        assert_eq!(net.nodes.len(), 4);
        assert_eq!(net.outputs, vec!["x"]);
        net.validate().unwrap();
        let printed = net.to_string();
        assert!(printed.contains("delay x = window_all(2,2) w"));
        assert_eq!(Netlist::parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        for (text, line) in [
            ("input u\nwire v\n", 2),
            ("input u\ngate g = frob u\n", 2),
            ("gate g = and\n", 1),
            ("input u\ndelay d = pure(1.5) u\n", 2),
            ("input u\ndelay d = pure(1)\n", 2),
            ("input u v\n", 1),
        ] {
            match Netlist::parse(text) {
                Err(NetlistError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn validation() {
        let ok = "input a\ninput b\ngate n = nand a b\noutput n\n";
        Netlist::parse(ok).unwrap().validate().unwrap();
        let dup = Netlist::parse("input a\ngate a = not a\n").unwrap();
        assert_eq!(dup.validate(), Err(NetlistError::DuplicateName("a".into())));
        let dangling = Netlist::parse("input a\ngate g = and a b\n").unwrap();
        assert!(matches!(dangling.validate(), Err(NetlistError::DanglingReference { .. })));
        let arity = Netlist::parse("input a\ninput b\ngate g = not a b\n").unwrap();
        assert!(matches!(arity.validate(), Err(NetlistError::Arity { expected: 1, .. })));
        let tt = Netlist::parse("input a\ngate g = tt:0110 a\n").unwrap();
        assert!(matches!(tt.validate(), Err(NetlistError::Arity { expected: 2, .. })));
        let wide = Netlist::parse("input a\ngate g = and a a a a a a a a a\n").unwrap();
        assert!(matches!(wide.validate(), Err(NetlistError::TooManyOperands { count: 9, .. })));
        let nondet = Netlist::parse("input a\ndelay d = solsc a\n").unwrap();
        assert!(matches!(nondet.validate(), Err(NetlistError::NonDeterministicDelay { .. })));
        let out = Netlist::parse("input a\noutput b\n").unwrap();
        assert!(matches!(out.validate(), Err(NetlistError::DanglingReference { .. })));
    }

    #[test]
    fn cycles_need_positive_delays() {
        let self_loop = Netlist::parse("input u\ngate g = or u d\ndelay d = pure(0) g\n").unwrap();
        assert_eq!(
            self_loop.validate(),
            Err(NetlistError::ZeroDelayCycle(vec!["g".into(), "d".into()]))
        );
        let ident = Netlist::parse("delay d = ident d\n").unwrap();
        assert_eq!(ident.validate(), Err(NetlistError::ZeroDelayCycle(vec!["d".into()])));
        let full_window = Netlist::parse("input u\ngate g = or u d\ndelay d = window_any(1,1) g\n").unwrap();
        assert!(matches!(full_window.validate(), Err(NetlistError::ZeroDelayCycle(_))));
        let latch = "input s\ninput r\n\
                     gate q = nor r qnd\n\
                     gate qn = nor s qd\n\
                     delay qd = pure(1/2) q\n\
                     delay qnd = pure(1/2) qn\n";
        let c = Netlist::parse(latch).unwrap().compile().unwrap();
        assert_eq!(c.is_break.iter().filter(|b| **b).count(), 2);
    }
}
