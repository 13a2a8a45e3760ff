//! Property checkers for delay conditions, seeded test corpora, and an
//! executable suite of the algebraic laws they satisfy.
//!
//! Universal claims are checked by falsification: a `holds` verdict means
//! that no counterexample was found on the corpus within the budget.

mod checks;
mod corpus;
mod suite;
mod verdict;

pub use checks::{
    check_constancy, check_constancy_delays, check_determinism, check_equivalence, check_inclusion,
    check_stability, check_symmetry, check_time_invariance, constancy_witness, ConstancyWitness,
};
pub use corpus::{generate_corpus, CorpusConfig};
pub use suite::{run_theorem_suite, Expectation, LawResult, TheoremReport};
pub use verdict::{Counterexample, Verdict};

fn as_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
