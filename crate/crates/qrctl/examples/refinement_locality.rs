//! Show that qualitative equivalence is not a local property.
//!
//! Run with: `cargo run --example refinement_locality`
//!
//! One-step neighborhood isomorphism — matching moves, successor labels,
//! and exact transition probabilities — sounds like it should imply
//! qualitative equivalence. The lookalike family refutes that: `s2`, `s3`,
//! `s4` have isomorphic one-step neighborhoods, yet `s2` retries its coin
//! through `w` while `s3`/`s4` get a single flip through `x`/`x2`, so only
//! `s2` reaches `r` with probability one. Meanwhile `s1` is equivalent to
//! `s2` despite *not* being neighborhood-isomorphic to it (different
//! probabilities). Locality neither captures nor respects the equivalence.
//!
//! The demo also runs the depth-bounded formula enumeration and confirms it
//! lands on the same partition as the fixpoint-based refiner.

use qrctl::corpus;
use qrctl::equivalence::regression_1neighbourhood;
use qrctl::oracle::{enumerate_distinguishers, Fragment};

fn main() {
    let report = regression_1neighbourhood();
    let m = &report.model;
    println!("lookalike family: {} states", m.n_states());
    println!();

    println!("one-step isomorphic pairs (under the label partition):");
    for (a, b) in &report.iso_pairs {
        println!("  {a} ~ {b}");
    }
    let (a, b) = &report.non_iso_pair;
    println!("not isomorphic: {a} / {b} (probabilities differ)");
    println!();

    println!(
        "one-step refinement blocks: {:?}",
        report.partition_pre_cpre.block_names(m)
    );
    println!(
        "with the until-splitter:    {:?}",
        report.partition_pos.block_names(m)
    );
    println!(
        "witness '{}': true at {}, false at {}",
        report.witness_formula, report.witness_true_at, report.witness_false_at
    );
    println!();

    // Independent route: enumerate fragment formulas by depth and split on
    // their satisfaction sets.
    let m = corpus::lookalike_family();
    let (partition, found) =
        enumerate_distinguishers(&m, Fragment::Positive, 3).expect("within bounds");
    assert_eq!(partition, report.partition_pos);
    println!(
        "formula enumeration reaches the same partition with {} recorded splitters;",
        found.len()
    );
    let first_until = found
        .iter()
        .find(|d| d.formula.contains(" U "))
        .expect("an until formula fires");
    println!(
        "the first until-splitter (depth {}): {}",
        first_until.depth, first_until.formula
    );
}
