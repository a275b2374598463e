//! Built-in example models shared by tests, examples, and documentation.
//!
//! Each constructor documents the behavioral quirk the model exhibits; the
//! models double as regression anchors for the checker, the equivalence
//! refiner, and the enumeration oracle.

use crate::io::{RawModel, RawState};
use crate::mdp::{validate, Mdp};
use crate::prob::Prob;
use std::collections::BTreeMap;

/// Compact raw-model builder: `(name, labels, [(action, [(succ, prob)])])`
/// per state, probabilities as literals like `"1/2"`.
pub fn model(
    props: &[&str],
    states: &[(&str, &[&str], &[(&str, &[(&str, &str)])])],
) -> RawModel {
    RawModel {
        propositions: props.iter().map(|p| p.to_string()).collect(),
        states: states
            .iter()
            .map(|&(name, labels, actions)| RawState {
                name: name.to_string(),
                labels: labels.iter().map(|l| l.to_string()).collect(),
                actions: actions
                    .iter()
                    .map(|&(a, dist)| {
                        (
                            a.to_string(),
                            dist.iter()
                                .map(|&(t, p)| {
                                    (t.to_string(), Prob::parse(p).expect("probability literal"))
                                })
                                .collect::<BTreeMap<String, Prob>>(),
                        )
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Validates a compact description, panicking on mistakes (corpus models are
/// hand-checked).
pub fn build(
    props: &[&str],
    states: &[(&str, &[&str], &[(&str, &[(&str, &str)])])],
) -> Mdp {
    validate(&model(props, states)).expect("corpus model").0
}

/// Two-state chain: `s{q}` flips a fair coin between staying and moving to
/// the absorbing `t{r}`.
///
/// The smallest model separating the probability-one and certainty readings
/// of reachability: from `s`, `r` is reached with probability one, but the
/// all-paths (sure) reading fails because `s → s → …` never leaves.
pub fn two_state_chain() -> Mdp {
    build(
        &["q", "r"],
        &[
            ("s", &["q"], &[("a", &[("s", "1/2"), ("t", "1/2")])]),
            ("t", &["r"], &[("a", &[("t", "1")])]),
        ],
    )
}

/// Convex-choice pair: `s` picks between sinks `u{q}` and `v{r}`
/// deterministically; `s'` has the same two actions plus a third that mixes
/// them fifty-fifty.
///
/// The extra action is a convex combination of the other two, so `s` and `s'`
/// agree on every formula evaluated directly on this model — yet the player
/// step introduced by [`Mdp::alternate`] makes the mixture observable.
pub fn convex_choice() -> Mdp {
    build(
        &["q", "r"],
        &[
            ("s", &[], &[("a", &[("u", "1")]), ("b", &[("v", "1")])]),
            (
                "s'",
                &[],
                &[
                    ("a", &[("u", "1")]),
                    ("b", &[("v", "1")]),
                    ("c", &[("u", "1/2"), ("v", "1/2")]),
                ],
            ),
            ("u", &["q"], &[("a", &[("u", "1")])]),
            ("v", &["r"], &[("a", &[("v", "1")])]),
        ],
    )
}

/// Retry-vs-one-shot pair: both `s` and `t` can stall forever, and both have
/// a coin that half-reaches the target `u{q}`; only `s` can retry its coin.
///
/// The states have identical one-step behavior up to grouping (the same
/// possible/certain moves relative to every block union), so refinement with
/// single-step splitters alone leaves them merged; the probability-one
/// reachability of `q` tells them apart (`s` retries until it wins, `t` gets
/// a single flip), which is exactly what the until-based splitter detects.
pub fn retry_vs_one_shot() -> Mdp {
    build(
        &["q"],
        &[
            (
                "s",
                &[],
                &[
                    ("coin", &[("s", "1/2"), ("u", "1/2")]),
                    ("leave", &[("u", "1/2"), ("z", "1/2")]),
                    ("wait", &[("s", "1")]),
                ],
            ),
            (
                "t",
                &[],
                &[
                    ("shot", &[("u", "1/2"), ("z", "1/2")]),
                    ("wait", &[("t", "1")]),
                ],
            ),
            ("u", &["q"], &[("stay", &[("u", "1")])]),
            ("z", &[], &[("stay", &[("z", "1")])]),
        ],
    )
}

/// Lookalike family: four entry states over a retry-vs-one-shot core.
///
/// `s2`, `s3`, `s4` are pairwise indistinguishable by any one-step
/// neighborhood comparison (matching probabilities, successors with equal
/// labels), and `s1` differs from all of them already in its probabilities.
/// Yet `s1` and `s2` are equivalent for every qualitative formula while `s3`
/// and `s4` are not equivalent to them: `s2`'s coin feeds the retrying `w`,
/// `s3`/`s4`'s coins feed the one-shot `x`/`x2`. Distinguishing power here is
/// genuinely non-local — it needs the until-based splitter, not neighborhood
/// isomorphism.
pub fn lookalike_family() -> Mdp {
    build(
        &["r"],
        &[
            ("s1", &[], &[("f", &[("w", "1/2"), ("rhat", "1/2")])]),
            ("s2", &[], &[("f", &[("w", "1/3"), ("rhat", "2/3")])]),
            ("s3", &[], &[("f", &[("x", "1/3"), ("rhat", "2/3")])]),
            ("s4", &[], &[("f", &[("x2", "1/3"), ("rhat", "2/3")])]),
            (
                "w",
                &[],
                &[
                    ("coin", &[("w", "1/2"), ("rhat", "1/2")]),
                    ("leave", &[("rhat", "1/2"), ("z", "1/2")]),
                    ("wait", &[("w", "1")]),
                ],
            ),
            (
                "x",
                &[],
                &[
                    ("shot", &[("rhat", "1/2"), ("z", "1/2")]),
                    ("wait", &[("x", "1")]),
                ],
            ),
            (
                "x2",
                &[],
                &[
                    ("shot", &[("rhat", "1/2"), ("z", "1/2")]),
                    ("wait", &[("x2", "1")]),
                ],
            ),
            ("rhat", &["r"], &[("stay", &[("rhat", "1")])]),
            ("z", &[], &[("stay", &[("z", "1")])]),
        ],
    )
}

/// Anchored-persistence gadget: `y{q}` can gamble toward the safe loop `g`,
/// and every crash (`z`) walks back to `y` via `w`.
///
/// Let `p` hold at states with a move that may hit `q` next (`y`, `g`, `w`).
/// A strategy from `y` reaches, with probability one, a final visit of `y`
/// followed by `g` forever — so "eventually `q∧p` with `p` persisting from
/// that point on" holds almost surely, even though no state satisfies
/// "certainly-always `p`" *and* `q` at once. The automaton pipeline proves
/// the property; composing plain reachability toward `q ∧ certainly-always-p`
/// does not.
pub fn anchored_persistence_gadget() -> Mdp {
    build(
        &["q"],
        &[
            (
                "y",
                &["q"],
                &[
                    ("gamble", &[("g", "1/2"), ("z", "1/2")]),
                    ("linger", &[("y", "1/2"), ("z", "1/2")]),
                ],
            ),
            ("g", &[], &[("stay", &[("g", "1")]), ("back", &[("y", "1")])]),
            ("z", &[], &[("go", &[("w", "1")])]),
            ("w", &[], &[("go", &[("y", "1")])]),
        ],
    )
}

/// One absorbing state labeling `q`; the degenerate corner case.
pub fn single_state() -> Mdp {
    build(&["q"], &[("s", &["q"], &[("a", &[("s", "1")])])])
}

/// Deterministic branch: one decision between two labeled sinks.
pub fn deterministic_branch() -> Mdp {
    build(
        &["q", "r"],
        &[
            ("s", &[], &[("a", &[("u", "1")]), ("b", &[("v", "1")])]),
            ("u", &["q"], &[("a", &[("u", "1")])]),
            ("v", &["r"], &[("a", &[("v", "1")])]),
        ],
    )
}

/// Deterministic three-cycle with `q` on one state; exercises cyclic
/// certainty reasoning (every path revisits `q` forever).
pub fn three_state_cycle() -> Mdp {
    build(
        &["q"],
        &[
            ("s0", &["q"], &[("a", &[("s1", "1")])]),
            ("s1", &[], &[("a", &[("s2", "1")])]),
            ("s2", &[], &[("a", &[("s0", "1")])]),
        ],
    )
}

/// All hand-built corpus models, smallest first.
pub fn small_models() -> Vec<Mdp> {
    vec![
        single_state(),
        two_state_chain(),
        three_state_cycle(),
        deterministic_branch(),
        convex_choice(),
        retry_vs_one_shot(),
        anchored_persistence_gadget(),
        lookalike_family(),
    ]
}

/// Coin-flip line with `n` states: state `i` either stays or advances, the
/// final state is absorbing and labeled `goal`. Used for scaling checks
/// (transition count grows linearly with `n`).
pub fn chain_line(n: usize) -> Mdp {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut states = Vec::with_capacity(n);
    for i in 0..n {
        let (labels, actions) = if i + 1 < n {
            (
                vec![],
                BTreeMap::from([(
                    "step".to_string(),
                    BTreeMap::from([
                        (names[i].clone(), Prob::ratio(1, 2)),
                        (names[i + 1].clone(), Prob::ratio(1, 2)),
                    ]),
                )]),
            )
        } else {
            (
                vec!["goal".to_string()],
                BTreeMap::from([(
                    "stay".to_string(),
                    BTreeMap::from([(names[i].clone(), Prob::ONE)]),
                )]),
            )
        };
        states.push(RawState {
            name: names[i].clone(),
            labels,
            actions,
        });
    }
    validate(&RawModel {
        propositions: vec!["goal".to_string()],
        states,
    })
    .expect("chain model")
    .0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_models_validate() {
        for m in small_models() {
            assert!(m.n_states() >= 1);
            assert!(!m.actions().is_empty());
        }
    }

    #[test]
    fn chain_line_shape() {
        let m = chain_line(5);
        assert_eq!(m.n_states(), 5);
        assert!(m.is_markov_chain());
        assert_eq!(m.transition_size(), 2 * 4 + 1);
        let goal = m.prop_index("goal").unwrap();
        assert!(m.has_prop(4, goal));
        assert!(!m.has_prop(0, goal));
        assert_eq!(chain_line(1).n_states(), 1);
    }
}
