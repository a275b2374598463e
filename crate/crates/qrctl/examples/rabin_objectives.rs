//! Verify path properties given as deterministic automata with Rabin pairs.
//!
//! Run with: `cargo run --example rabin_objectives`
//!
//! Single temporal operators are checked directly by fixpoints, but richer
//! path properties need memory. An automaton reads the trace of labelings,
//! the synchronous product tracks its location alongside the model state,
//! and nested fixpoints on the product answer the qualitative question.
//!
//! Part 1 rebuilds next/until monitors and confirms that the automaton
//! route agrees with the direct checker. Part 2 shows a property beyond
//! single operators — "eventually q∧p with p persisting from then on",
//! where the anchor may be retried after failures — that the product
//! verifies but any single anchored formula misses.

use qrctl::checker::check;
use qrctl::corpus;
use qrctl::fixpoint::pre;
use qrctl::formula::{parse, Quantifier};
use qrctl::rabin::{check_star, monitors, product, rabin_qual};

fn main() {
    // Part 1: monitors for single operators agree with the direct checker.
    let m = corpus::two_state_chain();
    let eventually_r = monitors::eventually("r");
    println!(
        "monitor 'eventually r': {} locations over alphabet {:?}",
        eventually_r.n_locations(),
        eventually_r.alphabet()
    );
    let pm = product(&m, &eventually_r).expect("deterministic");
    println!(
        "product with the two-state chain: {} states, {} pair(s)",
        pm.mdp.n_states(),
        pm.pairs.len()
    );
    for token in ["Esure", "Eas", "Epos", "Eex"] {
        let q = Quantifier::from_token(token).unwrap();
        let via_star = check_star(&m, q, &eventually_r, None).unwrap();
        let via_check = check(&m, &parse(&format!("{token} F r")).unwrap()).unwrap();
        assert_eq!(via_star, via_check);
        println!("  {token:5} F r = {:?}  (automaton route agrees)", m.names_of(&via_star));
    }
    println!();

    // Universal quantifiers need a complement automaton (this tool does not
    // complement Rabin automata): A-sure "eventually r" is the complement
    // of E-feasible "never r".
    let never_r = monitors::never("r");
    let q = Quantifier::from_token("Asure").unwrap();
    let sat = check_star(&m, q, &eventually_r, Some(&never_r)).unwrap();
    println!("Asure F r via complement automaton = {:?}", m.names_of(&sat));
    println!();

    // Part 2: re-anchored persistence, a property no single anchored
    // formula captures. In the gadget, y{q} can gamble toward the safe
    // loop g, and every crash walks back to y for another try.
    let base = corpus::anchored_persistence_gadget();
    let p_set = pre(&base, &qrctl::fixpoint::StateSet::singleton(base.n_states(), base.state_index("y").unwrap()));
    let m = base.add_proposition("p", &p_set).expect("fresh name");
    println!("gadget: p := 'may hit y next' = {:?}", m.names_of(&p_set));

    let anchored = monitors::anchored_persistence("q", "p");
    let pm = product(&m, &anchored).expect("deterministic");
    let almost = rabin_qual(&pm, qrctl::formula::Mode::Almost);
    let at_entries = (0..m.n_states())
        .filter(|&s| almost.contains(pm.entries[s]))
        .count();
    println!(
        "automaton verdict: almost-surely anchored-persistent from {}/{} states",
        at_entries,
        m.n_states()
    );

    let approx = check(&m, &parse("Eas (true U (q & Esure G p))").unwrap()).unwrap();
    println!(
        "one-shot approximation 'Eas F (q & Esure G p)' holds at {:?}",
        m.names_of(&approx)
    );
    assert!(approx.is_empty());
    println!("the approximation is empty: it cannot see that a failed anchor");
    println!("may be retried, while the product automaton tracks exactly that.");
}
