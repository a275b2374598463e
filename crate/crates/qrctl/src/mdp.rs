//! Finite Markov decision processes with propositional labelings.
//!
//! An [`Mdp`] couples a finite state space with, per state, a nonempty set of
//! named actions, each carrying a probability distribution over successor
//! states, plus a labeling with declared atomic propositions. Models are
//! built by [`validate`]-ing a raw description (see [`crate::io`] for the
//! JSON form), which checks:
//!
//! * distinct state and proposition names,
//! * labels only use declared propositions,
//! * every state has at least one action,
//! * every distribution has probabilities in `(0, 1]` summing to one
//!   (exactly for all-fraction distributions, within `1e-9` when floats
//!   participate).
//!
//! The proposition named [`TURN_PROP`] is distinguished: it marks states
//! whose actions are meant to be resolved by a pure (player) choice rather
//! than by chance. [`Mdp::check_alternating`] verifies the strict turn
//! discipline, and [`Mdp::alternate`] rewrites any model into an equivalent
//! alternating one by splitting every action choice into a player step
//! followed by a chance step.

use crate::fixpoint::StateSet;
use crate::io::{RawModel, RawState};
use crate::prob::Prob;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

/// Name of the distinguished proposition marking player-choice states.
pub const TURN_PROP: &str = "turn";

/// Tolerance used for distribution sums that involve floating-point entries.
pub const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("model has no states")]
    EmptyModel,
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("duplicate proposition `{0}`")]
    DuplicateProposition(String),
    #[error("state `{state}`: proposition `{prop}` is not declared")]
    UndeclaredProposition { state: String, prop: String },
    #[error("state `{0}` has no actions")]
    EmptyMoveSet(String),
    #[error("state `{state}`, action `{action}`: unknown successor `{successor}`")]
    UnknownSuccessor {
        state: String,
        action: String,
        successor: String,
    },
    #[error("state `{state}`, action `{action}`: probability {prob} outside (0, 1]")]
    BadProbability {
        state: String,
        action: String,
        prob: String,
    },
    #[error("state `{state}`, action `{action}`: probabilities sum to {sum}, expected 1")]
    BadDistribution {
        state: String,
        action: String,
        sum: String,
    },
    #[error("cannot synthesize a fresh state name, `{0}` is taken")]
    NameCollision(String),
}

/// A non-fatal observation produced by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationWarning {
    pub state: String,
    pub message: String,
}

/// One named action of a state together with its successor distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Move {
    /// Index into [`Mdp::actions`].
    pub action: usize,
    /// Successor distribution, sorted by state index; only positive entries
    /// are stored, so the keys are exactly the destination set.
    pub dist: Vec<(usize, Prob)>,
}

#[derive(Debug, Clone, PartialEq)]
struct StateData {
    name: String,
    /// Sorted indices into the proposition table.
    labels: Vec<usize>,
    /// Sorted by action name.
    moves: Vec<Move>,
}

/// A validated Markov decision process.
#[derive(Debug, Clone, PartialEq)]
pub struct Mdp {
    props: Vec<String>,
    prop_index: HashMap<String, usize>,
    actions: Vec<String>,
    states: Vec<StateData>,
    state_index: HashMap<String, usize>,
}

/// Split of the state space into player-choice and chance states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmdpPartition {
    /// States labeled with the turn proposition (pure choice, deterministic
    /// actions).
    pub player: StateSet,
    /// Remaining states (single action, arbitrary distribution).
    pub chance: StateSet,
}

/// A reason why a model is not alternating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmdpViolation {
    pub state: String,
    pub detail: String,
}

/// Outcome of [`Mdp::check_alternating`]; rejection is a value, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum AlternationCheck {
    Accepted(AmdpPartition),
    Rejected(Vec<AmdpViolation>),
}

impl AlternationCheck {
    pub fn is_alternating(&self) -> bool {
        matches!(self, AlternationCheck::Accepted(_))
    }
}

/// Checks a raw model description and builds the internal representation.
///
/// Returns the model plus warnings about suspicious (but legal) use of the
/// turn proposition: a turn-labeled state whose actions are not all
/// deterministic is almost certainly a modeling mistake, yet remains a valid
/// MDP.
pub fn validate(raw: &RawModel) -> Result<(Mdp, Vec<ValidationWarning>), ModelError> {
    let mut prop_index = HashMap::new();
    for (i, p) in raw.propositions.iter().enumerate() {
        if prop_index.insert(p.clone(), i).is_some() {
            return Err(ModelError::DuplicateProposition(p.clone()));
        }
    }
    if raw.states.is_empty() {
        return Err(ModelError::EmptyModel);
    }
    let mut state_index = HashMap::new();
    for (i, st) in raw.states.iter().enumerate() {
        if state_index.insert(st.name.clone(), i).is_some() {
            return Err(ModelError::DuplicateState(st.name.clone()));
        }
    }

    let mut action_names: Vec<String> = raw
        .states
        .iter()
        .flat_map(|st| st.actions.keys().cloned())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    action_names.sort();
    let action_index: HashMap<&str, usize> = action_names
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();

    let mut states = Vec::with_capacity(raw.states.len());
    for st in &raw.states {
        let mut labels = Vec::new();
        for l in &st.labels {
            let &idx = prop_index
                .get(l)
                .ok_or_else(|| ModelError::UndeclaredProposition {
                    state: st.name.clone(),
                    prop: l.clone(),
                })?;
            labels.push(idx);
        }
        labels.sort_unstable();
        labels.dedup();

        if st.actions.is_empty() {
            return Err(ModelError::EmptyMoveSet(st.name.clone()));
        }
        let mut moves = Vec::with_capacity(st.actions.len());
        for (action, dist) in &st.actions {
            let mut entries = Vec::with_capacity(dist.len());
            let mut sum = Prob::ZERO;
            let mut exact = true;
            for (succ, &p) in dist {
                let &t = state_index
                    .get(succ)
                    .ok_or_else(|| ModelError::UnknownSuccessor {
                        state: st.name.clone(),
                        action: action.clone(),
                        successor: succ.clone(),
                    })?;
                if p.value() <= 0.0 || p.value() > 1.0 {
                    return Err(ModelError::BadProbability {
                        state: st.name.clone(),
                        action: action.clone(),
                        prob: p.to_string(),
                    });
                }
                exact &= p.is_exact();
                sum = sum.add(p);
                entries.push((t, p));
            }
            let ok = if exact {
                sum == Prob::ONE
            } else {
                (sum.value() - 1.0).abs() <= SUM_TOLERANCE
            };
            if !ok {
                return Err(ModelError::BadDistribution {
                    state: st.name.clone(),
                    action: action.clone(),
                    sum: sum.to_string(),
                });
            }
            entries.sort_by_key(|&(t, _)| t);
            moves.push(Move {
                action: action_index[action.as_str()],
                dist: entries,
            });
        }
        moves.sort_by(|a, b| action_names[a.action].cmp(&action_names[b.action]));
        states.push(StateData {
            name: st.name.clone(),
            labels,
            moves,
        });
    }

    let mdp = Mdp {
        props: raw.propositions.clone(),
        prop_index,
        actions: action_names,
        states,
        state_index,
    };

    let mut warnings = Vec::new();
    if let Some(turn) = mdp.prop_index.get(TURN_PROP).copied() {
        for s in 0..mdp.n_states() {
            if !mdp.states[s].labels.contains(&turn) {
                continue;
            }
            for mv in &mdp.states[s].moves {
                if mv.dist.len() > 1 {
                    warnings.push(ValidationWarning {
                        state: mdp.states[s].name.clone(),
                        message: format!(
                            "labeled `{TURN_PROP}` but action `{}` has {} destinations",
                            mdp.actions[mv.action],
                            mv.dist.len()
                        ),
                    });
                }
            }
        }
    }
    Ok((mdp, warnings))
}

impl Mdp {
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s].name
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn prop_index(&self, name: &str) -> Option<usize> {
        self.prop_index.get(name).copied()
    }

    /// Global action-name table; `Move::action` indexes into it.
    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn action_name(&self, a: usize) -> &str {
        &self.actions[a]
    }

    /// Sorted proposition indices labeling state `s`.
    pub fn labels(&self, s: usize) -> &[usize] {
        &self.states[s].labels
    }

    pub fn has_prop(&self, s: usize, prop: usize) -> bool {
        self.states[s].labels.binary_search(&prop).is_ok()
    }

    /// Actions of state `s`, sorted by action name.
    pub fn moves(&self, s: usize) -> &[Move] {
        &self.states[s].moves
    }

    /// Total number of transition entries (size of the transition relation).
    pub fn transition_size(&self) -> usize {
        self.states
            .iter()
            .map(|st| st.moves.iter().map(|mv| mv.dist.len()).sum::<usize>())
            .sum()
    }

    /// Successors of `s` under any action, sorted and deduplicated.
    pub fn edge_successors(&self, s: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.states[s]
            .moves
            .iter()
            .flat_map(|mv| mv.dist.iter().map(|&(t, _)| t))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The action-erased successor relation for every state.
    pub fn edge_relation(&self) -> Vec<Vec<usize>> {
        (0..self.n_states()).map(|s| self.edge_successors(s)).collect()
    }

    /// True when every state has exactly one action (a Markov chain).
    pub fn is_markov_chain(&self) -> bool {
        self.states.iter().all(|st| st.moves.len() == 1)
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::new(self.n_states())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n_states())
    }

    /// The set of states labeled with proposition index `prop`.
    pub fn states_with_prop(&self, prop: usize) -> StateSet {
        StateSet::from_indices(
            self.n_states(),
            (0..self.n_states()).filter(|&s| self.has_prop(s, prop)),
        )
    }

    /// State names for the members of `set`, in state order.
    pub fn names_of(&self, set: &StateSet) -> Vec<String> {
        set.iter().map(|s| self.states[s].name.clone()).collect()
    }

    /// Checks the strict turn discipline: turn-labeled states may only have
    /// deterministic actions, and unlabeled states exactly one action.
    pub fn check_alternating(&self) -> AlternationCheck {
        let turn = self.prop_index.get(TURN_PROP).copied();
        let mut violations = Vec::new();
        let mut player = self.empty_set();
        let mut chance = self.empty_set();
        for s in 0..self.n_states() {
            let is_player = turn.is_some_and(|t| self.has_prop(s, t));
            if is_player {
                player.insert(s);
                for mv in self.moves(s) {
                    if mv.dist.len() > 1 {
                        violations.push(AmdpViolation {
                            state: self.states[s].name.clone(),
                            detail: format!(
                                "turn-labeled state has action `{}` with {} destinations",
                                self.actions[mv.action],
                                mv.dist.len()
                            ),
                        });
                    }
                }
            } else {
                chance.insert(s);
                if self.moves(s).len() != 1 {
                    violations.push(AmdpViolation {
                        state: self.states[s].name.clone(),
                        detail: format!(
                            "chance state has {} actions, expected exactly 1",
                            self.moves(s).len()
                        ),
                    });
                }
            }
        }
        if violations.is_empty() {
            AlternationCheck::Accepted(AmdpPartition { player, chance })
        } else {
            AlternationCheck::Rejected(violations)
        }
    }

    /// Rewrites the model into an alternating one.
    ///
    /// Every original state becomes a turn-labeled player state with one
    /// deterministic action per original action, leading to a fresh chance
    /// state `state@action` that carries the original distribution (and the
    /// original labels minus the turn proposition). The result has
    /// `|S| + Σ_s |moves(s)|` states and accepts under
    /// [`Mdp::check_alternating`].
    pub fn alternate(&self) -> Result<Mdp, ModelError> {
        let mut props = self.props.clone();
        if self.prop_index(TURN_PROP).is_none() {
            props.push(TURN_PROP.to_string());
        }

        let mut used: HashSet<String> =
            self.states.iter().map(|st| st.name.clone()).collect();
        // Synthesized-state names in deterministic order: states in order,
        // moves in action order; one retry with a trailing apostrophe.
        let mut synth_names = Vec::new();
        for s in 0..self.n_states() {
            for mv in self.moves(s) {
                let base = format!("{}@{}", self.states[s].name, self.actions[mv.action]);
                let name = if !used.contains(&base) {
                    base
                } else {
                    let retry = format!("{base}'");
                    if used.contains(&retry) {
                        return Err(ModelError::NameCollision(retry));
                    }
                    retry
                };
                used.insert(name.clone());
                synth_names.push(name);
            }
        }

        let prob_one = Prob::ONE;
        let mut raw_states = Vec::new();
        let mut k = 0;
        for s in 0..self.n_states() {
            let mut labels: Vec<String> = self.states[s]
                .labels
                .iter()
                .map(|&p| self.props[p].clone())
                .collect();
            if !labels.iter().any(|l| l == TURN_PROP) {
                labels.push(TURN_PROP.to_string());
            }
            let mut actions = BTreeMap::new();
            for (j, mv) in self.moves(s).iter().enumerate() {
                let target = synth_names[k + j].clone();
                actions.insert(
                    self.actions[mv.action].clone(),
                    BTreeMap::from([(target, prob_one)]),
                );
            }
            k += self.moves(s).len();
            raw_states.push(RawState {
                name: self.states[s].name.clone(),
                labels,
                actions,
            });
        }
        let mut k = 0;
        for s in 0..self.n_states() {
            for mv in self.moves(s) {
                let labels: Vec<String> = self.states[s]
                    .labels
                    .iter()
                    .map(|&p| self.props[p].clone())
                    .filter(|l| l != TURN_PROP)
                    .collect();
                let dist: BTreeMap<String, Prob> = mv
                    .dist
                    .iter()
                    .map(|&(t, p)| (self.states[t].name.clone(), p))
                    .collect();
                let actions = BTreeMap::from([(self.actions[mv.action].clone(), dist)]);
                raw_states.push(RawState {
                    name: synth_names[k].clone(),
                    labels,
                    actions,
                });
                k += 1;
            }
        }

        let raw = RawModel {
            propositions: props,
            states: raw_states,
        };
        let (mdp, _warnings) = validate(&raw)?;
        Ok(mdp)
    }

    /// Returns a copy of the model with a fresh proposition labeling exactly
    /// the given states.
    pub fn add_proposition(&self, name: &str, members: &StateSet) -> Result<Mdp, ModelError> {
        if self.prop_index(name).is_some() {
            return Err(ModelError::DuplicateProposition(name.to_string()));
        }
        let mut raw = self.to_raw();
        raw.propositions.push(name.to_string());
        for (s, st) in raw.states.iter_mut().enumerate() {
            if members.contains(s) {
                st.labels.push(name.to_string());
            }
        }
        let (mdp, _warnings) = validate(&raw)?;
        Ok(mdp)
    }

    /// The raw (serializable) form of this model. Validating it again yields
    /// an identical structure.
    pub fn to_raw(&self) -> RawModel {
        RawModel {
            propositions: self.props.clone(),
            states: self
                .states
                .iter()
                .map(|st| RawState {
                    name: st.name.clone(),
                    labels: st.labels.iter().map(|&p| self.props[p].clone()).collect(),
                    actions: st
                        .moves
                        .iter()
                        .map(|mv| {
                            (
                                self.actions[mv.action].clone(),
                                mv.dist
                                    .iter()
                                    .map(|&(t, p)| (self.states[t].name.clone(), p))
                                    .collect(),
                            )
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
