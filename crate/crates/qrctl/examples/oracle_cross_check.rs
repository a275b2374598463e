//! Cross-check the fixpoint checker against brute-force strategy enumeration.
//!
//! Run with: `cargo run --example oracle_cross_check`
//!
//! The oracle enumerates every pure memoryless strategy, analyzes each
//! induced chain by graph search (plus value iteration when an actual
//! probability is wanted), and folds per-strategy answers into the eight
//! quantifier verdicts. It shares no code with the fixpoint evaluators, so
//! agreement is strong evidence both are right.

use qrctl::checker::check;
use qrctl::corpus;
use qrctl::formula::{parse, Quantifier};
use qrctl::oracle::{
    chain_reach_prob, enumerate_strategies, qualitative_verdict, OracleLimits, PathEvent,
};

fn main() {
    let m = corpus::retry_vs_one_shot();
    let strategies = enumerate_strategies(&m).count();
    println!(
        "retry-vs-one-shot: {} states, {} memoryless strategies",
        m.n_states(),
        strategies
    );

    let q_states = m.states_with_prop(m.prop_index("q").unwrap());
    let event = PathEvent::Until(m.full_set(), q_states);
    let table = qualitative_verdict(&m, &event, &OracleLimits::default()).expect("within bounds");
    println!("oracle verdicts for 'true U q':");
    for q in Quantifier::ALL {
        let oracle_set = table.get(q);
        let formula = parse(&format!("{} (true U q)", q.token())).unwrap();
        let checker_set = check(&m, &formula).unwrap();
        assert_eq!(*oracle_set, checker_set, "{}", q.token());
        println!(
            "  {:5} -> {:?}  (checker agrees)",
            q.token(),
            m.names_of(oracle_set)
        );
    }
    println!();

    // The probability route: fix the always-retry strategy by taking the
    // model's only Markov-chain corpus member and iterating to convergence.
    let chain = corpus::two_state_chain();
    let target = chain.states_with_prop(chain.prop_index("r").unwrap());
    let probs = chain_reach_prob(&chain, &target, 1e-12).expect("is a chain");
    println!("two-state chain: probability of reaching r per state:");
    for s in 0..chain.n_states() {
        println!("  {} -> {:.6}", chain.state_name(s), probs[s]);
    }
    println!("the coin state reaches r with probability one, yet not surely —");
    println!("which is exactly the gap the qualitative modes articulate.");
}
