//! Qualitative model checking of randomized CTL over finite Markov decision
//! processes.
//!
//! The library answers questions of the form "from which states can the
//! controller make a temporal event sure / almost-sure / positively probable /
//! feasible?" for both existential (`E…`) and universal (`A…`) readings, by
//! fixed-point computation on the underlying graph — never by numeric
//! probability values. Everything downstream is support-determined: scaling a
//! transition probability without changing its support cannot change any
//! verdict here, and one of the test suites checks exactly that.
//!
//! # Module map
//!
//! | Module | What it does |
//! |---|---|
//! | [`mdp`] | States, moves, distributions; validation; the alternation transform |
//! | [`prob`] | Exact rational / float probability values for model input |
//! | [`io`] | JSON wire formats for models and automata |
//! | [`formula`] | Grammar, parser, dualization, and the eight quantifiers |
//! | [`fixpoint`] | Bit-set state sets and the `pre`/`cpre`/`apre` operators |
//! | [`checker`] | Recursive evaluation of formulas, with optional trace |
//! | [`equivalence`] | Partition refinement for five grades of state equivalence |
//! | [`rabin`] | Deterministic Rabin automata, products, and qualitative winning sets |
//! | [`oracle`] | Strategy-enumeration cross-checks and formula-enumeration distinguishers |
//! | [`corpus`] | Small hand-built models used throughout the tests and examples |
//! | [`cli`] | The `qrctl` command-line front end |
//!
//! # Runnable examples
//!
//! Each major capability has a standalone example under `examples/`:
//!
//! | Example | Shows |
//! |---|---|
//! | `check_formulas` | All eight readings of one eventuality, duality, tracing |
//! | `equivalence_minimize` | The five relations on one model, certificates, quotients |
//! | `alternation_transform` | A mixture the relations miss until the transform exposes it |
//! | `rabin_objectives` | Automaton products, monitors vs. formulas, a property only automata see |
//! | `oracle_cross_check` | Brute-force strategy enumeration agreeing with the checker |
//! | `refinement_locality` | How far a one-edge change can propagate through the partition |
//!
//! Run one with `cargo run --example check_formulas`.
//!
//! # Quick start
//!
//! ```
//! use qrctl::{checker::check, corpus, formula::parse};
//!
//! let m = corpus::two_state_chain();
//! let sat = check(&m, &parse("Eas F r").unwrap()).unwrap();
//! assert_eq!(m.names_of(&sat), ["s", "t"]);
//! ```

pub mod checker;
pub mod cli;
pub mod corpus;
pub mod equivalence;
pub mod fixpoint;
pub mod formula;
pub mod io;
pub mod mdp;
pub mod oracle;
pub mod prob;
pub mod rabin;
