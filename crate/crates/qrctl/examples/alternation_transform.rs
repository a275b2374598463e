//! Make convex mixtures observable by splitting decision and chance steps.
//!
//! Run with: `cargo run --example alternation_transform`
//!
//! In the convex-choice model, `s` picks deterministically between sinks
//! `u{q}` and `v{r}`, while `s'` has the same two actions plus a third that
//! mixes them fifty-fifty. Because the mixture is a convex combination of
//! the pure actions, no qualitative formula evaluated on this model can
//! tell `s` from `s'`.
//!
//! The alternation transform inserts an explicit half-step per action: the
//! original state keeps a `turn` label and deterministically enters a fresh
//! state that carries the action's distribution. On the transformed model
//! the mixture becomes a distinct intermediate state, and a next-next
//! formula separates the pair.

use qrctl::checker::check;
use qrctl::corpus;
use qrctl::equivalence::{equiv, Relation};
use qrctl::formula::parse;

fn main() {
    let m = corpus::convex_choice();
    let (partition, _) = equiv(&m, Relation::Pos).unwrap();
    println!("original model blocks (pos): {:?}", partition.block_names(&m));
    let s = m.state_index("s").unwrap();
    let s2 = m.state_index("s'").unwrap();
    assert_eq!(partition.block_of(s), partition.block_of(s2));
    println!("  -> s and s' are merged: the mixture action is invisible.");
    println!();

    let t = m.alternate().expect("fresh names available");
    println!(
        "alternation: {} -> {} states (one per original action)",
        m.n_states(),
        t.n_states()
    );
    let (partition, _) = equiv(&t, Relation::Pos).unwrap();
    println!("transformed model blocks (pos): {:?}", partition.block_names(&t));
    let s = t.state_index("s").unwrap();
    let s2 = t.state_index("s'").unwrap();
    assert_ne!(partition.block_of(s), partition.block_of(s2));
    println!("  -> s and s' are now separated.");
    println!();

    // The separating observation: the mixture half-step is the only state
    // that can reach q and can reach r in one move, and only s' has an
    // action that certainly enters it.
    let witness = parse("Esure X (Epos X q & Epos X r)").unwrap();
    let sat = check(&t, &witness).expect("checkable");
    println!("witness 'Esure X (Epos X q & Epos X r)' holds at {:?}", t.names_of(&sat));
    assert_ne!(sat.contains(s), sat.contains(s2));
}
