//! Partition a model by qualitative equivalences and minimize it.
//!
//! Run with: `cargo run --example equivalence_minimize`
//!
//! Five relations are available, each defined by the set of splitter
//! operations under which the partition must be stable:
//!
//! - `bisim`     — one-step possible moves (probabilistic bisimulation
//!                 coarsened to supports);
//! - `simclo`, `sure`, `pos_next` — possible and certain moves;
//! - `pos`       — possible/certain moves plus the almost-sure-until
//!                 splitter, which sees multi-step probability-one behavior.
//!
//! On the retry-vs-one-shot model the first four relations merge the two
//! entry states; `pos` tells them apart, and the recorded certificate shows
//! the exact splitter application that did it.

use qrctl::corpus;
use qrctl::equivalence::{equiv, quotient, Relation};

fn main() {
    let m = corpus::retry_vs_one_shot();
    println!("model: retry-vs-one-shot (s can retry its coin; t gets one flip)");
    println!();

    for relation in [
        Relation::Bisim,
        Relation::SimClosure,
        Relation::Sure,
        Relation::PosNext,
        Relation::Pos,
    ] {
        let (partition, certificates) = equiv(&m, relation).expect("within budget");
        println!(
            "{:9} -> {:?}  ({} splits recorded)",
            relation.token(),
            partition.block_names(&m),
            certificates.len()
        );
    }
    println!();

    let (partition, certificates) = equiv(&m, Relation::Pos).unwrap();
    println!("pos-splitters, in application order:");
    for c in &certificates {
        println!(
            "  {:?} with operands {:?} / {:?}: block {:?} -> {:?} + {:?}",
            c.kind, c.c1, c.c2, c.block_before, c.inside, c.outside
        );
    }
    println!();

    let q = quotient(&m, &partition);
    println!(
        "quotient under pos: {} states (from {})",
        q.n_states(),
        m.n_states()
    );
    let (check, _) = equiv(&q, Relation::Pos).unwrap();
    assert_eq!(check.n_blocks(), q.n_states(), "quotient is minimal");
    println!("re-partitioning the quotient yields singletons only: minimal.");
}
