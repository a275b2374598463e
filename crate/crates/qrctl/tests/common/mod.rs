//! Seeded random generators shared by the integration suites.
//!
//! Everything is deterministic given the seed: models use exact rational
//! probabilities (integer weights over their sum), so validation is exact
//! and reruns are bit-identical.

use qrctl::formula::{Mode, PathFormula, Polarity, Quantifier, StateFormula};
use qrctl::io::{RawModel, RawState};
use qrctl::mdp::{validate, Mdp};
use qrctl::prob::Prob;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const PROPS: [&str; 2] = ["q", "r"];

/// A random model with `1..=max_states` states and `1..=max_actions` moves
/// per state; propositions `q`, `r`; exact rational transition weights.
pub fn gen_mdp(rng: &mut ChaCha8Rng, max_states: usize, max_actions: usize) -> Mdp {
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let states: Vec<RawState> = (0..n)
        .map(|i| {
            let labels: Vec<String> = PROPS
                .iter()
                .filter(|_| rng.gen_bool(0.4))
                .map(|p| p.to_string())
                .collect();
            let n_moves = rng.gen_range(1..=max_actions);
            let actions: BTreeMap<String, BTreeMap<String, Prob>> = (0..n_moves)
                .map(|k| {
                    let name = char::from(b'a' + k as u8).to_string();
                    (name, gen_distribution(rng, &names))
                })
                .collect();
            RawState {
                name: names[i].clone(),
                labels,
                actions,
            }
        })
        .collect();
    let raw = RawModel {
        propositions: PROPS.iter().map(|p| p.to_string()).collect(),
        states,
    };
    validate(&raw).expect("generated model is valid").0
}

fn gen_distribution(rng: &mut ChaCha8Rng, names: &[String]) -> BTreeMap<String, Prob> {
    let support = rng.gen_range(1..=names.len().min(3));
    let mut targets: Vec<usize> = (0..names.len()).collect();
    targets.shuffle(rng);
    targets.truncate(support);
    let weights: Vec<i64> = (0..support).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    targets
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| (names[t].clone(), Prob::ratio(w, total)))
        .collect()
}

/// A random alternating model: `turn`-labeled states have only
/// singleton-destination moves; the rest have exactly one move.
pub fn gen_amdp(rng: &mut ChaCha8Rng, max_states: usize) -> Mdp {
    let n = rng.gen_range(2..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let states: Vec<RawState> = (0..n)
        .map(|i| {
            let is_turn = rng.gen_bool(0.5);
            let mut labels: Vec<String> = PROPS
                .iter()
                .filter(|_| rng.gen_bool(0.4))
                .map(|p| p.to_string())
                .collect();
            let actions: BTreeMap<String, BTreeMap<String, Prob>> = if is_turn {
                labels.push("turn".to_string());
                let n_moves = rng.gen_range(1..=3usize.min(n));
                let mut targets: Vec<usize> = (0..n).collect();
                targets.shuffle(rng);
                (0..n_moves)
                    .map(|k| {
                        let name = char::from(b'a' + k as u8).to_string();
                        let dist = BTreeMap::from([(names[targets[k]].clone(), Prob::ONE)]);
                        (name, dist)
                    })
                    .collect()
            } else {
                BTreeMap::from([("a".to_string(), gen_distribution(rng, &names))])
            };
            RawState {
                name: names[i].clone(),
                labels,
                actions,
            }
        })
        .collect();
    let mut propositions: Vec<String> = PROPS.iter().map(|p| p.to_string()).collect();
    propositions.push("turn".to_string());
    let raw = RawModel {
        propositions,
        states,
    };
    let m = validate(&raw).expect("generated model is valid").0;
    assert!(
        matches!(m.check_alternating(), qrctl::mdp::AlternationCheck::Accepted(_)),
        "generator must produce alternating models"
    );
    m
}

/// A random formula in the directly-checkable fragment: every temporal
/// operator sits immediately under a quantifier with temporal-free operands.
pub fn gen_formula(rng: &mut ChaCha8Rng, depth: usize) -> StateFormula {
    if depth == 0 {
        return gen_atom(rng);
    }
    match rng.gen_range(0..6u8) {
        0 => gen_formula(rng, depth - 1).not(),
        1 => gen_formula(rng, depth - 1).or(gen_formula(rng, depth - 1)),
        _ => {
            let q = gen_quantifier(rng);
            let a = PathFormula::embed(gen_formula(rng, depth - 1));
            let path = match rng.gen_range(0..3u8) {
                0 => a.next(),
                1 => a.until(PathFormula::embed(gen_formula(rng, depth - 1))),
                _ => a.wait_for(PathFormula::embed(gen_formula(rng, depth - 1))),
            };
            StateFormula::quant(q, path)
        }
    }
}

pub fn gen_quantifier(rng: &mut ChaCha8Rng) -> Quantifier {
    let polarity = if rng.gen_bool(0.5) {
        Polarity::Exists
    } else {
        Polarity::Forall
    };
    let mode = match rng.gen_range(0..4u8) {
        0 => Mode::Sure,
        1 => Mode::Almost,
        2 => Mode::Positive,
        _ => Mode::Feasible,
    };
    Quantifier::new(polarity, mode)
}

fn gen_atom(rng: &mut ChaCha8Rng) -> StateFormula {
    let base = match rng.gen_range(0..3u8) {
        0 => StateFormula::True,
        1 => StateFormula::atom("q"),
        _ => StateFormula::atom("r"),
    };
    if rng.gen_bool(0.3) {
        base.not()
    } else {
        base
    }
}

/// The same model with every probability perturbed by ±20% and each
/// distribution renormalized; supports are unchanged by construction.
pub fn perturb(m: &Mdp, rng: &mut ChaCha8Rng) -> Mdp {
    let mut raw = m.to_raw();
    for state in &mut raw.states {
        for dist in state.actions.values_mut() {
            let perturbed: Vec<(String, f64)> = dist
                .iter()
                .map(|(name, p)| {
                    let factor = 1.0 + rng.gen_range(-0.2..=0.2);
                    (name.clone(), p.value() * factor)
                })
                .collect();
            let total: f64 = perturbed.iter().map(|(_, v)| v).sum();
            *dist = perturbed
                .into_iter()
                .map(|(name, v)| (name, Prob::Float(v / total)))
                .collect();
        }
    }
    validate(&raw).expect("perturbed model is valid").0
}
