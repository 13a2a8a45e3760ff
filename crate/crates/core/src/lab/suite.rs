use std::fmt::Write as _;

use serde::Serialize;

use super::checks::*;
use super::corpus::{generate_corpus, CorpusConfig};
use super::verdict::{Counterexample, Verdict};
use crate::dc::{parse_dc, Budget, DcError, DelayCondition, SignalSet};
use crate::rational::{int, rat, Rational};
use crate::signal::Signal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    /// The law is a documented negative result; it passes when the
    /// expected counterexample is found and replays.
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub name: String,
    pub expected: Expectation,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: usize,
    /// The instance that decided the verdict, if any.
    pub subject: Option<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub seed: u64,
    pub passed: bool,
    pub laws: Vec<LawResult>,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ok = self.laws.iter().filter(|l| l.passed).count();
        let _ = writeln!(
            out,
            "theorem suite, seed {}: {} of {} laws passed",
            self.seed,
            ok,
            self.laws.len()
        );
        for law in &self.laws {
            let status = if law.passed { "ok  " } else { "FAIL" };
            let _ = write!(out, "{status} {} [{} cases]", law.name, law.cases);
            if law.expected == Expectation::Fails {
                out.push_str(" (expected to fail)");
            }
            if let Some(s) = &law.subject {
                let _ = write!(out, " {s}");
            }
            let _ = writeln!(out, ": {}", law.verdict);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type Case = (String, Result<Verdict, DcError>);

struct Suite {
    corpus: Vec<Signal>,
    budget: Budget,
    shifts: Vec<Rational>,
    laws: Vec<LawResult>,
}

fn dc(text: &str) -> DelayCondition {
    parse_dc(text).expect("built-in law operand")
}

fn dcs(texts: &[&str]) -> Vec<DelayCondition> {
    texts.iter().map(|t| dc(t)).collect()
}

fn error_verdict(e: DcError) -> Verdict {
    Verdict::Unknown {
        reason: format!("error: {e}"),
    }
}

impl Suite {
    /// Records a law that must hold on every case; stops at the first case
    /// that does not.
    fn holds(&mut self, name: &str, cases: impl IntoIterator<Item = Case>) {
        let mut count = 0;
        let mut outcome = (None, Verdict::Holds);
        for (subject, result) in cases {
            count += 1;
            let verdict = result.unwrap_or_else(error_verdict);
            if !verdict.holds() {
                outcome = (Some(subject), verdict);
                break;
            }
        }
        self.laws.push(LawResult {
            name: name.to_string(),
            expected: Expectation::Holds,
            passed: outcome.1.holds(),
            cases: count,
            subject: outcome.0,
            verdict: outcome.1,
        });
    }

    /// Records a documented negative result: the check must fail, with
    /// `expected` as counterexample when given, and the counterexample
    /// must replay.
    fn fails(
        &mut self,
        name: &str,
        subject: &DelayCondition,
        other: Option<&DelayCondition>,
        result: Result<Verdict, DcError>,
        expected: Option<Counterexample>,
    ) {
        let verdict = result.unwrap_or_else(error_verdict);
        let passed = match verdict.counterexample() {
            Some(cex) => {
                expected.as_ref().is_none_or(|e| e == cex)
                    && cex.replay(subject, other, &self.budget).unwrap_or(false)
            }
            None => false,
        };
        self.laws.push(LawResult {
            name: name.to_string(),
            expected: Expectation::Fails,
            passed,
            cases: 1,
            subject: Some(subject.to_string()),
            verdict,
        });
    }

    fn inclusion(&self, i: &DelayCondition, j: &DelayCondition) -> Case {
        (format!("{i} in {j}"), check_inclusion(i, j, &self.corpus, &self.budget))
    }

    fn equivalence(&self, i: &DelayCondition, j: &DelayCondition) -> Case {
        (format!("{i} = {j}"), check_equivalence(i, j, &self.corpus, &self.budget))
    }

    fn determinism(&self, i: &DelayCondition) -> Case {
        (i.to_string(), check_determinism(i, &self.corpus, &self.budget))
    }

    fn time_invariance(&self, i: &DelayCondition) -> Case {
        (i.to_string(), check_time_invariance(i, &self.corpus, &self.shifts, &self.budget))
    }

    fn symmetry(&self, i: &DelayCondition) -> Case {
        (i.to_string(), check_symmetry(i, &self.corpus, &self.budget))
    }

    fn stability(&self, i: &DelayCondition) -> Case {
        (i.to_string(), check_stability(i, &self.corpus, &self.budget))
    }
}

fn window_grid() -> Vec<(Rational, Rational)> {
    let mut grid = Vec::new();
    for d in [int(0), rat(1, 2), int(1), int(2), int(3)] {
        for m in [int(0), rat(1, 2), int(1), d.clone()] {
            if m <= d && !grid.contains(&(d.clone(), m.clone())) {
                grid.push((d.clone(), m));
            }
        }
    }
    grid
}

fn pairs<T: Clone>(xs: &[T], ys: &[T]) -> Vec<(T, T)> {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

const BUILTINS: &[&str] = &[
    "ident",
    "pure(2)",
    "pure(1/2)",
    "startup",
    "solsc",
    "window_all(2,1)",
    "window_all(1,1)",
    "window_all(3/2,0)",
    "window_any(2,1)",
    "window_any(3/2,1/2)",
    "window_any(1,1)",
];

/// Runs every law over a corpus generated from `seed`. The report is
/// sorted by law name and identical for identical seeds.
pub fn run_theorem_suite(seed: u64) -> TheoremReport {
    let corpus = generate_corpus(&CorpusConfig {
        seed,
        count: 40,
        max_edges: 4,
        horizon: int(8),
        time_grid_denominator: 2,
    });
    let mut s = Suite {
        corpus,
        budget: Budget { seed, ..Budget::default() },
        shifts: vec![int(-3), int(-2), int(-1), rat(-1, 2), rat(1, 2), int(1), int(2), rat(7, 2)],
        laws: Vec::new(),
    };
    let builtins = dcs(BUILTINS);
    let sol_sc = DelayCondition::sol_sc();

    lattice_laws(&mut s, &builtins, &sol_sc);
    property_laws(&mut s, &sol_sc);
    serial_laws(&mut s);

    s.laws.sort_by(|a, b| a.name.cmp(&b.name));
    TheoremReport {
        seed,
        passed: s.laws.iter().all(|l| l.passed),
        laws: s.laws,
    }
}

fn lattice_laws(s: &mut Suite, builtins: &[DelayCondition], sol_sc: &DelayCondition) {
    let cases: Vec<Case> = builtins.iter().map(|i| s.stability(i)).collect();
    s.holds("dc.stability", cases);

    let cases: Vec<Case> = builtins.iter().map(|i| s.inclusion(i, sol_sc)).collect();
    s.holds("order.universal_element", cases);

    let cases: Vec<Case> = builtins.iter().map(|i| s.inclusion(i, i)).collect();
    s.holds("order.reflexive", cases);

    let chain = dcs(&[
        "pure(2)",
        "join(pure(2),pure(3))",
        "join(join(pure(2),pure(3)),ident)",
        "window_all(2,1)",
        "join(window_all(2,1),startup)",
        "solsc",
    ]);
    let mut cases = Vec::new();
    for a in &chain {
        for b in &chain {
            let ab = check_inclusion(a, b, &s.corpus, &s.budget);
            if !matches!(ab, Ok(Verdict::Holds)) {
                continue;
            }
            for c in &chain {
                if matches!(check_inclusion(b, c, &s.corpus, &s.budget), Ok(Verdict::Holds)) {
                    cases.push(s.inclusion(a, c));
                }
            }
        }
    }
    s.holds("order.transitive", cases);

    let mut cases = Vec::new();
    for j in dcs(&["solsc", "startup", "join(pure(1),pure(2))", "window_any(2,1)"]) {
        let selected = j.select_deterministic(s.budget.clone());
        match selected {
            Ok(i) => {
                cases.push(s.inclusion(&i, &j));
                cases.push(s.determinism(&i));
            }
            Err(e) => cases.push((j.to_string(), Err(e))),
        }
    }
    s.holds("order.deterministic_refinement", cases);

    let cases: Vec<Case> = [
        ("meet(pure(2),solsc)", "pure(2)"),
        ("serial(ident,window_all(2,1))", "window_all(2,1)"),
        ("meet(join(pure(1),pure(2)),pure(1))", "pure(1)"),
    ]
    .iter()
    .flat_map(|(i, j)| {
        let (i, j) = (dc(i), dc(j));
        [s.inclusion(&i, &j), s.equivalence(&i, &j)]
    })
    .collect();
    s.holds("order.deterministic_is_minimal", cases);

    let meets = [
        ("pure(2)", "solsc"),
        ("join(pure(1),pure(2))", "join(pure(2),pure(3))"),
        ("startup", "solsc"),
        ("window_any(2,1)", "join(window_any(2,1),pure(1))"),
    ];
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut stability = Vec::new();
    for (i, j) in meets {
        let (i, j) = (dc(i), dc(j));
        let (m, v) = (i.meet(&j), i.join(&j));
        lower.push(s.inclusion(&m, &i));
        lower.push(s.inclusion(&m, &j));
        upper.push(s.inclusion(&i, &v));
        upper.push(s.inclusion(&j, &v));
        stability.push(s.stability(&m));
        stability.push(s.stability(&v));
    }
    s.holds("meet.lower_bound", lower);
    s.holds("join.upper_bound", upper);
    s.holds("dc.meet_and_join_are_dcs", stability);

    let at_most_one_edge = SignalSet::new("at_most_one_edge", |x| x.edges().len() <= 1);
    let cases = vec![
        s.stability(&sol_sc.meet_set(at_most_one_edge.clone())),
        s.inclusion(&sol_sc.meet_set(at_most_one_edge), sol_sc),
    ];
    s.holds("dc.meet_with_set", cases);

    let k = dc("pure(2)");
    let (i, j) = (dc("join(pure(2),pure(3))"), sol_sc.clone());
    let cases = vec![s.inclusion(&k, &i), s.inclusion(&k, &j), s.inclusion(&k, &i.meet(&j))];
    s.holds("meet.greatest_lower_bound", cases);

    let (i, j) = (dc("pure(1)"), dc("window_all(2,1)"));
    let cases: Vec<Case> = [sol_sc.clone(), dc("join(join(pure(1),window_all(2,1)),ident)")]
        .iter()
        .map(|k| s.inclusion(&i.join(&j), k))
        .collect();
    s.holds("join.least_upper_bound", cases);
}

fn property_laws(s: &mut Suite, sol_sc: &DelayCondition) {
    let deterministic = dcs(&[
        "ident",
        "pure(2)",
        "pure(1/2)",
        "meet(pure(2),solsc)",
        "meet(join(pure(1),pure(2)),pure(1))",
        "select(solsc)",
    ]);
    let cases: Vec<Case> = deterministic.iter().map(|i| s.determinism(i)).collect();
    s.holds("determinism.examples", cases);

    let u = Signal::new(crate::Bit::ZERO, vec![int(2)]).expect("step");
    let r = check_determinism(sol_sc, std::slice::from_ref(&u), &s.budget);
    let expected = Counterexample::NonSingleton {
        input: u.clone(),
        first: u.clone(),
        second: u.translate(&int(5)).expect("shift"),
    };
    s.fails("determinism.solsc", sol_sc, None, r, Some(expected));
    let startup = DelayCondition::startup_mask();
    let r = check_determinism(&startup, &s.corpus, &s.budget);
    s.fails("determinism.startup", &startup, None, r, None);

    let invariant = dcs(&[
        "ident",
        "pure(2)",
        "pure(1/2)",
        "meet(pure(2),solsc)",
        "join(pure(1),window_any(2,1))",
        "join(pure(1/2),pure(2))",
    ]);
    let cases: Vec<Case> = invariant.iter().map(|i| s.time_invariance(i)).collect();
    s.holds("time_invariance.examples", cases);

    let r = check_time_invariance(sol_sc, &[Signal::one()], &[int(-2)], &s.budget);
    let expected = Counterexample::ShiftLeavesSignals {
        input: Signal::one(),
        output: Signal::new(crate::Bit::ZERO, vec![int(1)]).expect("step"),
        shift: int(-2),
    };
    s.fails("time_invariance.solsc", sol_sc, None, r, Some(expected));
    let r = check_time_invariance(&startup, &s.corpus, &s.shifts, &s.budget);
    s.fails("time_invariance.startup", &startup, None, r, None);

    let grid = window_grid();
    let windows: Vec<(DelayCondition, DelayCondition, Rational, Rational)> = grid
        .iter()
        .map(|(d, m)| {
            (
                DelayCondition::window_all(d.clone(), m.clone()).expect("grid has m <= d"),
                DelayCondition::window_any(d.clone(), m.clone()).expect("grid has m <= d"),
                d.clone(),
                m.clone(),
            )
        })
        .collect();
    let cases: Vec<Case> = windows
        .iter()
        .flat_map(|(all, any, ..)| [s.determinism(all), s.determinism(any)])
        .collect();
    s.holds("windows.determinism", cases);
    let cases: Vec<Case> = windows
        .iter()
        .flat_map(|(all, any, ..)| [s.time_invariance(all), s.time_invariance(any)])
        .collect();
    s.holds("windows.time_invariance", cases);
    let cases: Vec<Case> = windows
        .iter()
        .flat_map(|(all, any, d, m)| {
            let lead = d - m;
            [
                (
                    format!("{all} with (d_r, d_f) = ({d}, {lead})"),
                    check_constancy_delays(all, d, &lead, &s.corpus, &s.budget),
                ),
                (
                    format!("{any} with (d_r, d_f) = ({lead}, {d})"),
                    check_constancy_delays(any, &lead, d, &s.corpus, &s.budget),
                ),
            ]
        })
        .collect();
    s.holds("windows.constancy", cases);

    let mut cases = Vec::new();
    for (i, c) in [
        ("meet(pure(2),solsc)", "pure(2)"),
        ("meet(join(pure(1),pure(2)),pure(1))", "pure(1)"),
        ("select(join(window_all(2,1),pure(3)))", "join(window_all(2,1),pure(3))"),
        ("meet(window_any(2,1),join(window_any(2,1),pure(1)))", "window_any(2,1)"),
    ] {
        let (i, c) = (dc(i), dc(c));
        let included = s.inclusion(&i, &c);
        let proceed = matches!(included.1, Ok(Verdict::Holds));
        cases.push(included);
        if proceed {
            let r = check_constancy(&i, &s.corpus, &s.budget).map(|(v, _)| v);
            cases.push((format!("{i} is constant"), r));
        }
    }
    s.holds("constancy.inherited_by_subsets", cases);
    let r = check_constancy(sol_sc, &s.corpus, &s.budget).map(|(v, _)| v);
    s.fails("constancy.solsc", sol_sc, None, r, None);

    let symmetric = dcs(&[
        "ident",
        "pure(2)",
        "pure(1/2)",
        "solsc",
        "window_all(3/2,0)",
        "meet(pure(2),solsc)",
        "join(pure(1),pure(2))",
        "join(solsc,pure(1))",
    ]);
    let cases: Vec<Case> = symmetric.iter().map(|i| s.symmetry(i)).collect();
    s.holds("symmetry.examples", cases);
    let w = dc("window_all(2,2)");
    let pulse = Signal::new(crate::Bit::ZERO, vec![int(2), int(3)]).expect("pulse");
    let r = check_symmetry(&w, std::slice::from_ref(&pulse), &s.budget);
    let expected = Counterexample::Asymmetric {
        input: pulse,
        output: Signal::zero(),
    };
    s.fails("symmetry.window_all", &w, None, r, Some(expected));
    let r = check_symmetry(&startup, &s.corpus, &s.budget);
    s.fails("symmetry.startup", &startup, None, r, None);
}

fn serial_laws(s: &mut Suite) {
    let mut cases = Vec::new();
    for (a, b) in [(int(0), int(1)), (rat(1, 2), rat(3, 2)), (int(2), int(3)), (rat(1, 3), rat(5, 2))] {
        let ab = DelayCondition::pure(a.clone())
            .and_then(|pa| Ok(pa.serial(&DelayCondition::pure(b.clone())?)))
            .expect("non-negative");
        let sum = DelayCondition::pure(&a + &b).expect("non-negative");
        let r = s.corpus.iter().try_fold(Verdict::Holds, |v, u| {
            if !v.holds() {
                return Ok(v);
            }
            let (left, right) = (ab.apply(u)?, sum.apply(u)?);
            Ok(if left == right {
                Verdict::Holds
            } else {
                Verdict::fails(Counterexample::Mismatch {
                    input: u.clone(),
                    left,
                    right,
                })
            })
        });
        cases.push((format!("{ab} = {sum}"), r));
    }
    s.holds("serial.pure_composition", cases);

    let ident = DelayCondition::ident();
    let units = dcs(&[
        "pure(2)",
        "window_all(2,1)",
        "window_any(1,1/2)",
        "join(pure(1),pure(2))",
        "startup",
        "solsc",
    ]);
    let cases: Vec<Case> = units
        .iter()
        .flat_map(|i| [s.equivalence(&i.serial(&ident), i), s.equivalence(&ident.serial(i), i)])
        .collect();
    s.holds("serial.unit", cases);

    let outer = dcs(&["startup", "solsc", "join(pure(1),pure(2))", "window_all(2,1)"]);
    let inner = dcs(&["pure(1)", "join(pure(1),pure(2))", "window_any(1,1/2)"]);
    let mut cases = Vec::new();
    for i in &outer {
        for (j, k) in pairs(&inner, &inner) {
            cases.push(s.equivalence(&i.serial(&j).serial(&k), &i.serial(&j.serial(&k))));
        }
    }
    s.holds("serial.associative", cases);

    // start-up masking after a shift admits outputs the reverse order cannot
    let (a, b) = (dc("startup"), dc("pure(1)"));
    let (left, right) = (a.serial(&b), b.serial(&a));
    let r = check_inclusion(&left, &right, &s.corpus, &s.budget);
    s.fails("serial.not_commutative", &left, Some(&right), r, None);

    let any = dcs(&["startup", "solsc", "pure(1)", "window_any(2,1)", "join(pure(1),window_all(1,1))"]);
    let cases: Vec<Case> = pairs(&any, &any).iter().map(|(i, j)| s.stability(&i.serial(j))).collect();
    s.holds("serial.closure.dc", cases);

    let det = dcs(&["ident", "pure(1)", "window_all(2,1)", "window_any(1,1/2)", "select(solsc)"]);
    let cases: Vec<Case> = pairs(&det, &det)
        .iter()
        .map(|(i, j)| {
            let k = i.serial(j);
            if k.is_deterministic() {
                s.determinism(&k)
            } else {
                (k.to_string(), Err(DcError::NotDeterministic(k.to_string())))
            }
        })
        .collect();
    s.holds("serial.closure.determinism", cases);

    let ti = dcs(&["pure(1)", "window_all(2,1)", "window_any(1,1/2)", "join(pure(1/2),pure(1))"]);
    let cases: Vec<Case> = pairs(&ti, &ti).iter().map(|(i, j)| s.time_invariance(&i.serial(j))).collect();
    s.holds("serial.closure.time_invariance", cases);

    let sym_outer = dcs(&["ident", "pure(1)", "solsc", "join(pure(1),pure(2))"]);
    let sym_inner = dcs(&["ident", "pure(1)", "join(pure(1),pure(2))"]);
    let mut cases: Vec<Case> = pairs(&sym_outer, &sym_inner)
        .iter()
        .map(|(i, j)| s.symmetry(&i.serial(j)))
        .collect();
    cases.push(s.symmetry(&dc("serial(solsc,solsc)")));
    s.holds("serial.closure.symmetry", cases);

    let mut cases = Vec::new();
    for (i, j) in [
        ("pure(2)", "join(pure(2),pure(3))"),
        ("window_all(2,1)", "solsc"),
        ("startup", "solsc"),
    ] {
        let (i, j) = (dc(i), dc(j));
        cases.push(s.inclusion(&i, &j));
        for k in dcs(&["pure(1)", "join(pure(1/2),pure(1))", "window_any(1,1/2)"]) {
            cases.push(s.inclusion(&i.serial(&k), &j.serial(&k)));
        }
    }
    s.holds("serial.monotone_left", cases);

    let mut cases = Vec::new();
    for (j, k) in [
        ("pure(2)", "join(pure(2),pure(3))"),
        ("window_all(2,1)", "join(window_all(2,1),pure(1))"),
    ] {
        let (j, k) = (dc(j), dc(k));
        cases.push(s.inclusion(&j, &k));
        for i in dcs(&["pure(1)", "startup", "solsc", "join(pure(1),pure(2))"]) {
            cases.push(s.inclusion(&i.serial(&j), &i.serial(&k)));
        }
    }
    s.holds("serial.monotone_right", cases);

    let ops = dcs(&["pure(1)", "startup", "solsc", "window_all(2,1)"]);
    let mut cases = Vec::new();
    for (n, i) in ops.iter().enumerate() {
        for j in &ops[n + 1..] {
            for k in dcs(&["pure(1/2)", "join(pure(1),pure(2))", "window_any(1,1/2)"]) {
                cases.push(s.equivalence(&i.join(j).serial(&k), &i.serial(&k).join(&j.serial(&k))));
            }
        }
    }
    s.holds("serial.distributes_over_join.left", cases);

    let inner = dcs(&["pure(1/2)", "pure(2)", "window_any(1,1/2)", "join(pure(1),pure(3))"]);
    let mut cases = Vec::new();
    for i in &ops {
        for (n, j) in inner.iter().enumerate() {
            for k in &inner[n + 1..] {
                cases.push(s.equivalence(&i.serial(&j.join(k)), &i.serial(j).join(&i.serial(k))));
            }
        }
    }
    s.holds("serial.distributes_over_join.right", cases);

    let sets = [
        (
            dc("solsc"),
            SignalSet::new("at_most_one_edge", |x| x.edges().len() <= 1),
        ),
        (
            dc("join(pure(1),ident)"),
            SignalSet::new("quiet_before_1", |x| x.edges().iter().all(|e| *e >= int(1))),
        ),
        (
            dc("startup"),
            SignalSet::new("zero_at_0", |x| !x.eval(&int(0)).is_one()),
        ),
    ];
    let mut equal = Vec::new();
    let mut inner_incl = Vec::new();
    for (i, set) in &sets {
        for j in dcs(&["window_all(2,1)", "join(pure(1/2),window_any(1,1))", "pure(1)"]) {
            let left = i.meet_set(set.clone()).serial(&j);
            let right = i.serial(&j).meet_set(set.clone());
            equal.push(s.equivalence(&left, &right));
        }
    }
    for (j, set) in &sets[1..] {
        for i in dcs(&["pure(1)", "join(pure(1),pure(2))", "solsc"]) {
            inner_incl.push(s.inclusion(&i.serial(&j.meet_set(set.clone())), &i.serial(j)));
        }
    }
    s.holds("serial.meet_with_set.outer", equal);
    s.holds("serial.meet_with_set.inner", inner_incl);

    let (i, j) = (dc("join(pure(1),pure(3))"), dc("join(pure(2),pure(3))"));
    let k = dc("join(ident,pure(1))");
    let mut cases = Vec::new();
    for k2 in [k.clone(), dc("window_all(2,1)"), dc("pure(1/2)")] {
        cases.push(s.inclusion(&i.meet(&j).serial(&k2), &i.serial(&k2).meet(&j.serial(&k2))));
    }
    s.holds("serial.meet.left", cases);
    let (left, right) = (i.meet(&j).serial(&k), i.serial(&k).meet(&j.serial(&k)));
    let r = check_inclusion(&right, &left, &s.corpus, &s.budget);
    s.fails("serial.meet.left_is_strict", &right, Some(&left), r, None);

    let mut cases = Vec::new();
    for i2 in [k.clone(), dc("startup"), dc("solsc")] {
        cases.push(s.inclusion(&i2.serial(&i.meet(&j)), &i2.serial(&i).meet(&i2.serial(&j))));
    }
    s.holds("serial.meet.right", cases);
    let (left, right) = (k.serial(&i.meet(&j)), k.serial(&i).meet(&k.serial(&j)));
    let r = check_inclusion(&right, &left, &s.corpus, &s.budget);
    s.fails("serial.meet.right_is_strict", &right, Some(&left), r, None);
}
