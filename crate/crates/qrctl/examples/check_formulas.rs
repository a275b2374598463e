//! Evaluate qualitative formulas on a small Markov chain.
//!
//! Run with: `cargo run --example check_formulas`
//!
//! The model is a two-state chain: `s{q}` flips a fair coin between staying
//! put and moving to the absorbing `t{r}`. The demo walks through the four
//! qualitative readings of "eventually r" — certainty over all paths,
//! probability one, positive probability, and path feasibility — under both
//! the existential and the universal strategy quantifier, then shows
//! dualization and a per-subformula trace.

use qrctl::checker::{check, check_with_trace};
use qrctl::corpus;
use qrctl::formula::{dualize, parse};

fn main() {
    let m = corpus::two_state_chain();
    println!("model: two-state chain (s flips a fair coin; t absorbs)");
    println!();

    for text in [
        "Esure F r", "Eas F r", "Epos F r", "Eex F r", //
        "Asure F r", "Aas F r", "Apos F r", "Aex F r",
    ] {
        let f = parse(text).expect("formula parses");
        let sat = check(&m, &f).expect("formula is checkable");
        println!("{text:12} holds at {:?}", m.names_of(&sat));
    }
    println!();
    println!("note: s satisfies 'Eas F r' but not 'Esure F r' — the run that");
    println!("stays at s forever has probability zero yet still exists.");
    println!();

    // Universal quantifiers are evaluated through their existential duals;
    // dualize() rewrites any formula into existential-only form with the
    // same meaning.
    let f = parse("Asure F r").unwrap();
    let d = dualize(&f);
    println!("dualize(Asure F r) = {d}");
    assert_eq!(check(&m, &f).unwrap(), check(&m, &d).unwrap());
    println!("  ... and both forms evaluate to the same set.");
    println!();

    // --trace equivalent: satisfying sets of every quantified subformula.
    let f = parse("Eas (true U (r | Esure X r))").unwrap();
    let (sat, trace) = check_with_trace(&m, &f).expect("checkable");
    println!("trace for 'Eas (true U (r | Esure X r))':");
    for entry in &trace {
        println!("  {} = {:?}", entry.formula, m.names_of(&entry.states));
    }
    println!("final: {:?}", m.names_of(&sat));
}
