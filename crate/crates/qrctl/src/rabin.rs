//! Deterministic Rabin automata, their synchronous product with a model,
//! and qualitative evaluation of automaton objectives.
//!
//! This is the route to path properties beyond single temporal operators: a
//! deterministic automaton reads the trace of state labelings (projected
//! onto the automaton's alphabet), the product model tracks the automaton
//! location alongside the model state, and nested fixpoints on the product
//! answer in which states the accepted-path event holds surely, almost
//! surely, with positive probability, or feasibly.

use crate::fixpoint::{apre, cpre, lfp, pre, StateSet};
use crate::formula::{Mode, Polarity, Quantifier};
use crate::io::{RawDra, RawLocation, RawModel, RawPair, RawState};
use crate::mdp::{validate, Mdp};
use crate::prob::Prob;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest supported alphabet: determinism checks enumerate all labelings.
pub const MAX_ALPHABET: usize = 16;

/// Errors reported by automaton handling.
#[derive(Debug, Error)]
pub enum RabinError {
    /// Structural problem in an automaton description.
    #[error("bad automaton description: {0}")]
    Format(String),
    /// The automaton fails one of the three determinism clauses.
    #[error("automaton is not deterministic ({0:?})")]
    NotDeterministic(Vec<Violation>),
    /// A universal query needs a caller-supplied complement automaton.
    #[error("universal automaton queries require a complement automaton")]
    MissingComplement,
    /// The alphabet is too large for exhaustive labeling enumeration.
    #[error("alphabet has {0} propositions, above the supported maximum of {MAX_ALPHABET}")]
    AlphabetTooLarge(usize),
}

/// A failed determinism clause with a human-readable witness.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    /// 1 = unique initial location per labeling; 2 = total successors;
    /// 3 = no two successors share a labeling.
    pub clause: u8,
    pub detail: String,
}

#[derive(Debug, Clone)]
struct Location {
    name: String,
    /// Labeling as a bitmask over alphabet indices.
    labels: u16,
    successors: Vec<usize>,
}

/// An infinite-word automaton with a Rabin acceptance condition: locations
/// carry labelings over the alphabet, and a run is accepting when for some
/// pair `(P, R)` it eventually avoids `P` forever while revisiting `R`.
#[derive(Debug, Clone)]
pub struct RabinAutomaton {
    alphabet: Vec<String>,
    locations: Vec<Location>,
    initial: Vec<usize>,
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl RabinAutomaton {
    /// Builds and structurally validates an automaton from its description.
    pub fn from_raw(raw: &RawDra) -> Result<RabinAutomaton, RabinError> {
        if raw.alphabet.len() > MAX_ALPHABET {
            return Err(RabinError::AlphabetTooLarge(raw.alphabet.len()));
        }
        let mut prop_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, p) in raw.alphabet.iter().enumerate() {
            if prop_index.insert(p, i).is_some() {
                return Err(RabinError::Format(format!(
                    "alphabet proposition '{p}' declared twice"
                )));
            }
        }
        let mut loc_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, l) in raw.locations.iter().enumerate() {
            if loc_index.insert(&l.name, i).is_some() {
                return Err(RabinError::Format(format!(
                    "location '{}' declared twice",
                    l.name
                )));
            }
        }
        let lookup = |name: &str, role: &str| -> Result<usize, RabinError> {
            loc_index.get(name).copied().ok_or_else(|| {
                RabinError::Format(format!("unknown location '{name}' in {role}"))
            })
        };
        let mut locations = Vec::with_capacity(raw.locations.len());
        for l in &raw.locations {
            let mut mask = 0u16;
            for p in &l.labels {
                let i = prop_index.get(p.as_str()).copied().ok_or_else(|| {
                    RabinError::Format(format!(
                        "location '{}' labeled with '{p}', which is not in the alphabet",
                        l.name
                    ))
                })?;
                mask |= 1 << i;
            }
            let successors = l
                .successors
                .iter()
                .map(|s| lookup(s, &format!("successors of '{}'", l.name)))
                .collect::<Result<Vec<_>, _>>()?;
            locations.push(Location {
                name: l.name.clone(),
                labels: mask,
                successors,
            });
        }
        let initial = raw
            .initial
            .iter()
            .map(|s| lookup(s, "the initial set"))
            .collect::<Result<Vec<_>, _>>()?;
        let pairs = raw
            .pairs
            .iter()
            .map(|pair| {
                let p = pair
                    .p
                    .iter()
                    .map(|s| lookup(s, "a pair's P set"))
                    .collect::<Result<Vec<_>, _>>()?;
                let r = pair
                    .r
                    .iter()
                    .map(|s| lookup(s, "a pair's R set"))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((p, r))
            })
            .collect::<Result<Vec<_>, RabinError>>()?;
        Ok(RabinAutomaton {
            alphabet: raw.alphabet.clone(),
            locations,
            initial,
            pairs,
        })
    }

    /// The automaton as a plain description (for writing to disk).
    pub fn to_raw(&self) -> RawDra {
        RawDra {
            alphabet: self.alphabet.clone(),
            locations: self
                .locations
                .iter()
                .map(|l| RawLocation {
                    name: l.name.clone(),
                    labels: self.mask_props(l.labels),
                    successors: l.successors.iter().map(|&i| self.locations[i].name.clone()).collect(),
                })
                .collect(),
            initial: self.initial.iter().map(|&i| self.locations[i].name.clone()).collect(),
            pairs: self
                .pairs
                .iter()
                .map(|(p, r)| RawPair {
                    p: p.iter().map(|&i| self.locations[i].name.clone()).collect(),
                    r: r.iter().map(|&i| self.locations[i].name.clone()).collect(),
                })
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn n_locations(&self) -> usize {
        self.locations.len()
    }

    pub fn location_name(&self, i: usize) -> &str {
        &self.locations[i].name
    }

    fn mask_props(&self, mask: u16) -> Vec<String> {
        (0..self.alphabet.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.alphabet[i].clone())
            .collect()
    }

    fn describe_labeling(&self, mask: u16) -> String {
        let props = self.mask_props(mask);
        if props.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", props.join(","))
        }
    }

    /// All determinism violations: a unique initial location per labeling,
    /// total successors, and label-distinct successors.
    pub fn determinism_violations(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let all_masks = 0..(1u32 << self.alphabet.len());
        for mask in all_masks.clone() {
            let mask = mask as u16;
            let hits: Vec<&str> = self
                .initial
                .iter()
                .filter(|&&l| self.locations[l].labels == mask)
                .map(|&l| self.locations[l].name.as_str())
                .collect();
            if hits.is_empty() {
                violations.push(Violation {
                    clause: 1,
                    detail: format!(
                        "no initial location is labeled {}",
                        self.describe_labeling(mask)
                    ),
                });
            } else if hits.len() > 1 {
                violations.push(Violation {
                    clause: 1,
                    detail: format!(
                        "initial locations '{}' and '{}' both carry labeling {}",
                        hits[0],
                        hits[1],
                        self.describe_labeling(mask)
                    ),
                });
            }
        }
        for (i, l) in self.locations.iter().enumerate() {
            for mask in all_masks.clone() {
                let mask = mask as u16;
                let hits: Vec<usize> = l
                    .successors
                    .iter()
                    .copied()
                    .filter(|&t| self.locations[t].labels == mask)
                    .collect();
                if hits.is_empty() {
                    violations.push(Violation {
                        clause: 2,
                        detail: format!(
                            "location '{}' has no successor labeled {}",
                            self.locations[i].name,
                            self.describe_labeling(mask)
                        ),
                    });
                } else if hits.len() > 1 {
                    violations.push(Violation {
                        clause: 3,
                        detail: format!(
                            "successors '{}' and '{}' of location '{}' share labeling {}",
                            self.locations[hits[0]].name,
                            self.locations[hits[1]].name,
                            self.locations[i].name,
                            self.describe_labeling(mask)
                        ),
                    });
                }
            }
        }
        violations
    }

    pub fn is_deterministic(&self) -> bool {
        self.determinism_violations().is_empty()
    }

    fn initial_for(&self, mask: u16) -> Option<usize> {
        self.initial
            .iter()
            .copied()
            .find(|&l| self.locations[l].labels == mask)
    }

    fn successor_for(&self, l: usize, mask: u16) -> Option<usize> {
        self.locations[l]
            .successors
            .iter()
            .copied()
            .find(|&t| self.locations[t].labels == mask)
    }
}

/// The synchronous product of a model and a deterministic automaton.
///
/// Product states are the pairs `(s, l)` whose labelings agree on the
/// alphabet (the model labeling is projected onto it); per-action successor
/// locations are unique by determinism, so each base distribution lifts
/// unchanged. The automaton pairs lift to product state sets.
#[derive(Debug)]
pub struct ProductMdp {
    /// The product as an ordinary model; state names are `base:location`,
    /// propositions are the automaton alphabet.
    pub mdp: Mdp,
    /// Lifted acceptance pairs over product states.
    pub pairs: Vec<(StateSet, StateSet)>,
    /// `entries[s]` is the product state `(s, l_init(s))`.
    pub entries: Vec<usize>,
    /// Base state of each product state.
    pub base_of: Vec<usize>,
    /// Automaton location of each product state.
    pub loc_of: Vec<usize>,
}

/// Builds the synchronous product, rejecting non-deterministic automata.
pub fn product(m: &Mdp, a: &RabinAutomaton) -> Result<ProductMdp, RabinError> {
    let violations = a.determinism_violations();
    if !violations.is_empty() {
        return Err(RabinError::NotDeterministic(violations));
    }
    // Project each base labeling onto the automaton alphabet.
    let base_mask: Vec<u16> = (0..m.n_states())
        .map(|s| {
            let mut mask = 0u16;
            for (i, p) in a.alphabet.iter().enumerate() {
                if let Some(pi) = m.prop_index(p) {
                    if m.has_prop(s, pi) {
                        mask |= 1 << i;
                    }
                }
            }
            mask
        })
        .collect();

    let mut base_of = Vec::new();
    let mut loc_of = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in 0..m.n_states() {
        for l in 0..a.locations.len() {
            if a.locations[l].labels == base_mask[s] {
                index.insert((s, l), base_of.len());
                base_of.push(s);
                loc_of.push(l);
            }
        }
    }

    let name_of = |k: usize| format!("{}:{}", m.state_name(base_of[k]), a.locations[loc_of[k]].name);
    let states: Vec<RawState> = (0..base_of.len())
        .map(|k| {
            let (s, l) = (base_of[k], loc_of[k]);
            let mut actions: BTreeMap<String, BTreeMap<String, Prob>> = BTreeMap::new();
            for mv in m.moves(s) {
                let mut dist: BTreeMap<String, Prob> = BTreeMap::new();
                for &(t, p) in &mv.dist {
                    let l2 = a
                        .successor_for(l, base_mask[t])
                        .expect("determinism guarantees a successor per labeling");
                    let target = index[&(t, l2)];
                    dist.insert(name_of(target), p);
                }
                actions.insert(m.action_name(mv.action).to_string(), dist);
            }
            RawState {
                name: name_of(k),
                labels: a.mask_props(a.locations[l].labels),
                actions,
            }
        })
        .collect();
    let raw = RawModel {
        propositions: a.alphabet.clone(),
        states,
    };
    let (pm, _) = validate(&raw).map_err(|e| RabinError::Format(format!("product: {e}")))?;

    // The validated model may renumber states (it sorts by name order of
    // declaration — declaration order here is pair order, which validate
    // preserves), so map indices through names for safety.
    let reindex: Vec<usize> = (0..base_of.len())
        .map(|k| pm.state_index(&name_of(k)).expect("product state exists"))
        .collect();
    let mut re_base = vec![0; base_of.len()];
    let mut re_loc = vec![0; base_of.len()];
    for k in 0..base_of.len() {
        re_base[reindex[k]] = base_of[k];
        re_loc[reindex[k]] = loc_of[k];
    }

    let mut pairs = Vec::with_capacity(a.pairs.len());
    for (p, r) in &a.pairs {
        let mut ps = pm.empty_set();
        let mut rs = pm.empty_set();
        for k in 0..re_base.len() {
            if p.contains(&re_loc[k]) {
                ps.insert(k);
            }
            if r.contains(&re_loc[k]) {
                rs.insert(k);
            }
        }
        pairs.push((ps, rs));
    }
    let entries: Vec<usize> = (0..m.n_states())
        .map(|s| {
            let l = a
                .initial_for(base_mask[s])
                .expect("determinism guarantees an initial location per labeling");
            reindex[index[&(s, l)]]
        })
        .collect();
    Ok(ProductMdp {
        mdp: pm,
        pairs,
        entries,
        base_of: re_base,
        loc_of: re_loc,
    })
}

/// Product states where the automaton objective holds in the given mode.
///
/// Per pair, a nested greatest/least fixpoint computes where play can keep
/// revisiting `R` while staying clear of `P` (once past a finite prefix);
/// an outer reachability fixpoint then adds the states that can steer into
/// such a region. The pair condition demands avoiding `P` outright, so the
/// fixpoints run on the complement of the lifted `P` set.
pub fn rabin_qual(pm: &ProductMdp, mode: Mode) -> StateSet {
    let m = &pm.mdp;
    let n = m.n_states();
    let hat = |hat_mode: Mode| -> StateSet {
        let mut out = StateSet::new(n);
        for (p_i, r_i) in &pm.pairs {
            out.union_with(&hat_pair(m, &p_i.complement(), r_i, hat_mode));
        }
        out
    };
    match mode {
        Mode::Sure => {
            let core = hat(Mode::Sure);
            lfp(n, |w| core.union(&cpre(m, w))).expect("monotone fixpoint converges")
        }
        Mode::Almost => {
            let core = hat(Mode::Almost);
            // Greatest fixpoint over z of the least fixpoint over w of
            // apre(z, w) ∪ core.
            let mut z = m.full_set();
            for _ in 0..=n {
                let w = lfp(n, |ws| apre(m, &z, ws).union(&core))
                    .expect("monotone fixpoint converges");
                if w == z {
                    return z;
                }
                z = w;
            }
            unreachable!("outer fixpoint descends and must stabilize");
        }
        Mode::Positive => {
            let core = hat(Mode::Almost);
            lfp(n, |w| core.union(&pre(m, w))).expect("monotone fixpoint converges")
        }
        Mode::Feasible => {
            let core = hat(Mode::Feasible);
            lfp(n, |w| core.union(&pre(m, w))).expect("monotone fixpoint converges")
        }
    }
}

/// One pair's recurrence core: `νY.μX.[ notP ∩ (step(X) ∪ (R ∩ revisit(Y))) ]`
/// where the step/revisit operators depend on the mode.
fn hat_pair(m: &Mdp, not_p: &StateSet, r: &StateSet, mode: Mode) -> StateSet {
    let n = m.n_states();
    let mut y = m.full_set();
    for _ in 0..=n {
        let anchor = match mode {
            Mode::Sure | Mode::Almost => r.intersect(&cpre(m, &y)),
            Mode::Feasible => r.intersect(&pre(m, &y)),
            Mode::Positive => unreachable!("positive mode reuses the almost core"),
        };
        let x = match mode {
            Mode::Sure => lfp(n, |xs| not_p.intersect(&cpre(m, xs).union(&anchor))),
            Mode::Almost => lfp(n, |xs| not_p.intersect(&apre(m, &y, xs).union(&anchor))),
            Mode::Feasible => lfp(n, |xs| not_p.intersect(&pre(m, xs).union(&anchor))),
            Mode::Positive => unreachable!(),
        }
        .expect("monotone fixpoint converges");
        if x == y {
            return y;
        }
        y = x;
    }
    unreachable!("outer fixpoint descends and must stabilize");
}

/// Base states satisfying the quantified automaton objective.
///
/// Existential modes are answered on the product at the entry states
/// `(s, l_init(s))`. Universal modes are answered through the duality with
/// the complementary path set: the caller must supply an automaton for the
/// complement language (this tool does not complement Rabin automata), and
/// the answer is the complement of the dual existential query on it.
pub fn check_star(
    m: &Mdp,
    quantifier: Quantifier,
    a: &RabinAutomaton,
    complement: Option<&RabinAutomaton>,
) -> Result<StateSet, RabinError> {
    match quantifier.polarity {
        Polarity::Exists => {
            let pm = product(m, a)?;
            let sat = rabin_qual(&pm, quantifier.mode);
            let mut out = m.empty_set();
            for s in 0..m.n_states() {
                if sat.contains(pm.entries[s]) {
                    out.insert(s);
                }
            }
            Ok(out)
        }
        Polarity::Forall => {
            let comp = complement.ok_or(RabinError::MissingComplement)?;
            let dual = quantifier.dual();
            Ok(check_star(m, dual, comp, None)?.complement())
        }
    }
}

/// Hand-built deterministic automata for common path shapes.
///
/// Each monitor is a small status machine expanded into a deterministic
/// automaton: locations are (status, labeling-just-read) pairs, so clauses
/// 1–3 of determinism hold by construction.
pub mod monitors {
    use super::*;

    /// Expands a status machine into a deterministic automaton. `init` maps
    /// the first labeling to a status; `advance` maps (status, next
    /// labeling) to the next status; `pairs` lists (P, R) over statuses.
    pub fn from_monitor(
        alphabet: &[&str],
        statuses: &[&str],
        init: impl Fn(u16) -> usize,
        advance: impl Fn(usize, u16) -> usize,
        pairs: &[(&[usize], &[usize])],
    ) -> RabinAutomaton {
        assert!(alphabet.len() <= MAX_ALPHABET);
        let n_masks = 1u32 << alphabet.len();
        let loc_id = |status: usize, mask: u16| -> usize {
            status * n_masks as usize + mask as usize
        };
        let loc_name = |status: usize, mask: u16| -> String {
            let props: Vec<&str> = (0..alphabet.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| alphabet[i])
                .collect();
            if props.is_empty() {
                format!("{}/none", statuses[status])
            } else {
                format!("{}/{}", statuses[status], props.join("+"))
            }
        };
        let mut locations = Vec::new();
        for status in 0..statuses.len() {
            for mask in 0..n_masks {
                let mask = mask as u16;
                let successors = (0..n_masks)
                    .map(|next_mask| {
                        let next_mask = next_mask as u16;
                        loc_id(advance(status, next_mask), next_mask)
                    })
                    .collect();
                locations.push(Location {
                    name: loc_name(status, mask),
                    labels: mask,
                    successors,
                });
            }
        }
        let initial = (0..n_masks)
            .map(|mask| loc_id(init(mask as u16), mask as u16))
            .collect();
        let pairs = pairs
            .iter()
            .map(|(p, r)| {
                let expand = |statuses_in: &[usize]| -> Vec<usize> {
                    statuses_in
                        .iter()
                        .flat_map(|&st| (0..n_masks).map(move |mask| loc_id(st, mask as u16)))
                        .collect()
                };
                (expand(p), expand(r))
            })
            .collect();
        RabinAutomaton {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            locations,
            initial,
            pairs,
        }
    }

    fn has(mask: u16, bit: usize) -> bool {
        mask & (1 << bit) != 0
    }

    /// The next state satisfies `prop` (the first alphabet entry).
    pub fn next_prop(prop: &str) -> RabinAutomaton {
        // Statuses: 0 = at the start, 1 = accepted, 2 = rejected.
        from_monitor(
            &[prop],
            &["start", "acc", "rej"],
            |_| 0,
            |status, mask| match status {
                0 => {
                    if has(mask, 0) {
                        1
                    } else {
                        2
                    }
                }
                other => other,
            },
            &[(&[2], &[1])],
        )
    }

    /// `q U r` (the anchor position needs only `r`).
    pub fn until(q: &str, r: &str) -> RabinAutomaton {
        // Statuses: 0 = pending, 1 = accepted, 2 = rejected.
        let step = |mask: u16| {
            if has(mask, 1) {
                1
            } else if has(mask, 0) {
                0
            } else {
                2
            }
        };
        from_monitor(
            &[q, r],
            &["pend", "acc", "rej"],
            step,
            move |status, mask| match status {
                0 => step(mask),
                other => other,
            },
            &[(&[2], &[1])],
        )
    }

    /// `q W r` (the anchor position needs both `q` and `r`; `q` forever also
    /// accepts). Uses two pairs: one for anchored acceptance, one for the
    /// forever-pending branch.
    pub fn wait_for(q: &str, r: &str) -> RabinAutomaton {
        // Statuses: 0 = pending (q so far), 1 = accepted, 2 = rejected.
        let step = |mask: u16| {
            if has(mask, 0) && has(mask, 1) {
                1
            } else if has(mask, 0) {
                0
            } else {
                2
            }
        };
        from_monitor(
            &[q, r],
            &["pend", "acc", "rej"],
            step,
            move |status, mask| match status {
                0 => step(mask),
                other => other,
            },
            &[(&[2], &[1]), (&[2], &[0])],
        )
    }

    /// Eventually `prop`; exercises an empty `P` set.
    pub fn eventually(prop: &str) -> RabinAutomaton {
        // Statuses: 0 = waiting, 1 = accepted.
        from_monitor(
            &[prop],
            &["wait", "acc"],
            |mask| if has(mask, 0) { 1 } else { 0 },
            |status, mask| {
                if status == 1 || has(mask, 0) {
                    1
                } else {
                    0
                }
            },
            &[(&[], &[1])],
        )
    }

    /// Never `prop` (complement of [`eventually`]).
    pub fn never(prop: &str) -> RabinAutomaton {
        // Statuses: 0 = clean, 1 = dead.
        from_monitor(
            &[prop],
            &["clean", "dead"],
            |mask| if has(mask, 0) { 1 } else { 0 },
            |status, mask| {
                if status == 1 || has(mask, 0) {
                    1
                } else {
                    0
                }
            },
            &[(&[1], &[0])],
        )
    }

    /// Accepts every trace.
    pub fn accept_all(alphabet: &[&str]) -> RabinAutomaton {
        from_monitor(alphabet, &["all"], |_| 0, |_, _| 0, &[(&[], &[0])])
    }

    /// Rejects every trace (no pairs at all).
    pub fn reject_all(alphabet: &[&str]) -> RabinAutomaton {
        from_monitor(alphabet, &["all"], |_| 0, |_, _| 0, &[])
    }

    /// Eventually a position satisfying both `q` and `p`, with `p` holding
    /// forever from that position on. Re-anchoring is allowed: losing `p`
    /// sends the monitor back to searching.
    pub fn anchored_persistence(q: &str, p: &str) -> RabinAutomaton {
        // Statuses: 0 = searching, 1 = anchored.
        let react = |status: usize, mask: u16| {
            if !has(mask, 1) {
                0 // p fails: any anchor is lost
            } else if has(mask, 0) {
                1 // p and q: anchor here (or keep an existing anchor)
            } else {
                status // p without q: keep the current phase
            }
        };
        from_monitor(
            &[q, p],
            &["search", "hold"],
            move |mask| react(0, mask),
            react,
            &[(&[0], &[1])],
        )
    }

    /// The conjunction reading: eventually `q`, and `p` at every position.
    pub fn reach_and_persist(q: &str, p: &str) -> RabinAutomaton {
        // Statuses: 0 = fresh (no q yet), 1 = seen, 2 = dead (p failed).
        let react = |status: usize, mask: u16| {
            if status == 2 || !has(mask, 1) {
                2
            } else if status == 1 || has(mask, 0) {
                1
            } else {
                0
            }
        };
        from_monitor(
            &[q, p],
            &["fresh", "seen", "dead"],
            move |mask| react(0, mask),
            react,
            &[(&[2], &[1])],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::check;
    use crate::corpus;
    use crate::formula::parse;

    fn set(m: &Mdp, names: &[&str]) -> StateSet {
        let mut out = m.empty_set();
        for name in names {
            out.insert(m.state_index(name).unwrap());
        }
        out
    }

    fn quant(token: &str) -> Quantifier {
        Quantifier::from_token(token).unwrap()
    }

    #[test]
    fn monitors_are_deterministic() {
        let automata = vec![
            monitors::next_prop("q"),
            monitors::until("q", "r"),
            monitors::wait_for("q", "r"),
            monitors::eventually("r"),
            monitors::never("r"),
            monitors::accept_all(&["q", "r"]),
            monitors::reject_all(&[]),
            monitors::anchored_persistence("q", "p"),
            monitors::reach_and_persist("q", "p"),
        ];
        for a in &automata {
            assert!(
                a.is_deterministic(),
                "{:?}",
                a.determinism_violations()
            );
        }
    }

    #[test]
    fn raw_round_trip_preserves_the_automaton() {
        let a = monitors::until("q", "r");
        let raw = a.to_raw();
        let b = RabinAutomaton::from_raw(&raw).unwrap();
        assert!(b.is_deterministic());
        assert_eq!(a.n_locations(), b.n_locations());
        assert_eq!(a.alphabet(), b.alphabet());
    }

    #[test]
    fn determinism_violations_name_their_clause() {
        // Two initial locations with the same (empty) labeling; a location
        // with no successors; two successors sharing a labeling.
        let raw = RawDra {
            alphabet: vec!["q".to_string()],
            locations: vec![
                RawLocation {
                    name: "a".into(),
                    labels: vec![],
                    successors: vec!["a".into(), "b".into(), "c".into()],
                },
                RawLocation {
                    name: "b".into(),
                    labels: vec![],
                    successors: vec![],
                },
                RawLocation {
                    name: "c".into(),
                    labels: vec!["q".into()],
                    successors: vec!["c".into()],
                },
            ],
            initial: vec!["a".into(), "b".into()],
            pairs: vec![],
        };
        let a = RabinAutomaton::from_raw(&raw).unwrap();
        let violations = a.determinism_violations();
        let clauses: Vec<u8> = violations.iter().map(|v| v.clause).collect();
        assert!(clauses.contains(&1), "{violations:?}");
        assert!(clauses.contains(&2), "{violations:?}");
        assert!(clauses.contains(&3), "{violations:?}");
    }

    #[test]
    fn format_errors_are_reported() {
        let raw = RawDra {
            alphabet: vec!["q".to_string()],
            locations: vec![RawLocation {
                name: "a".into(),
                labels: vec!["zap".into()],
                successors: vec![],
            }],
            initial: vec![],
            pairs: vec![],
        };
        assert!(matches!(
            RabinAutomaton::from_raw(&raw),
            Err(RabinError::Format(_))
        ));
        let big = RawDra {
            alphabet: (0..17).map(|i| format!("p{i}")).collect(),
            locations: vec![],
            initial: vec![],
            pairs: vec![],
        };
        assert!(matches!(
            RabinAutomaton::from_raw(&big),
            Err(RabinError::AlphabetTooLarge(17))
        ));
    }

    #[test]
    fn product_states_pair_matching_labelings() {
        let m = corpus::two_state_chain();
        let a = monitors::eventually("r");
        let pm = product(&m, &a).unwrap();
        assert!(pm.mdp.n_states() <= m.n_states() * a.n_locations());
        for k in 0..pm.mdp.n_states() {
            // The product state's labeling equals the location's labeling.
            let name = pm.mdp.state_name(k);
            assert!(name.contains(':'), "{name}");
        }
        // Entry states exist for every base state.
        assert_eq!(pm.entries.len(), m.n_states());
    }

    #[test]
    fn eventually_monitor_matches_the_plain_checker_on_the_chain() {
        let m = corpus::two_state_chain();
        let a = monitors::eventually("r");
        assert_eq!(
            check_star(&m, quant("Eas"), &a, None).unwrap(),
            check(&m, &parse("Eas F r").unwrap()).unwrap()
        );
        assert_eq!(
            check_star(&m, quant("Esure"), &a, None).unwrap(),
            set(&m, &["t"])
        );
        assert_eq!(check_star(&m, quant("Eas"), &a, None).unwrap(), m.full_set());
    }

    #[test]
    fn temporal_monitors_match_the_checker_across_the_corpus() {
        for m in corpus::small_models() {
            if m.n_states() > 6 || m.prop_index("q").is_none() {
                continue;
            }
            let has_r = m.prop_index("r").is_some();
            let mut cases: Vec<(RabinAutomaton, &str)> =
                vec![(monitors::next_prop("q"), "X q")];
            if has_r {
                cases.push((monitors::until("q", "r"), "q U r"));
                cases.push((monitors::wait_for("q", "r"), "q W r"));
            }
            for (a, path_text) in &cases {
                for mode in ["Esure", "Eas", "Epos", "Eex"] {
                    let q = quant(mode);
                    let formula = parse(&format!("{mode} ({path_text})")).unwrap();
                    let via_star = check_star(&m, q, a, None).unwrap();
                    let via_check = check(&m, &formula).unwrap();
                    assert_eq!(
                        via_star,
                        via_check,
                        "{mode} ({path_text}) on a model with states {:?}",
                        m.names_of(&m.full_set())
                    );
                }
            }
        }
    }

    #[test]
    fn mode_monotonicity_on_products() {
        let m = corpus::convex_choice();
        for a in [
            monitors::until("q", "r"),
            monitors::wait_for("q", "r"),
            monitors::eventually("q"),
            monitors::anchored_persistence("q", "r"),
            monitors::reach_and_persist("q", "r"),
        ] {
            let pm = product(&m, &a).unwrap();
            let sure = rabin_qual(&pm, Mode::Sure);
            let almost = rabin_qual(&pm, Mode::Almost);
            let pos = rabin_qual(&pm, Mode::Positive);
            let feasible = rabin_qual(&pm, Mode::Feasible);
            assert!(sure.is_subset(&almost));
            assert!(almost.is_subset(&pos));
            assert!(pos.is_subset(&feasible));
        }
    }

    #[test]
    fn trivial_acceptance_and_rejection() {
        let m = corpus::convex_choice();
        let yes = monitors::accept_all(&["q", "r"]);
        let no = monitors::reject_all(&["q", "r"]);
        for mode in ["Esure", "Eas", "Epos", "Eex"] {
            assert_eq!(check_star(&m, quant(mode), &yes, None).unwrap(), m.full_set());
            assert!(check_star(&m, quant(mode), &no, None).unwrap().is_empty());
        }
    }

    #[test]
    fn universal_queries_need_a_complement() {
        let m = corpus::two_state_chain();
        let a = monitors::eventually("r");
        assert!(matches!(
            check_star(&m, quant("Asure"), &a, None),
            Err(RabinError::MissingComplement)
        ));
        let complement = monitors::never("r");
        let verdict = check_star(&m, quant("Asure"), &a, Some(&complement)).unwrap();
        assert_eq!(verdict, check(&m, &parse("Asure F r").unwrap()).unwrap());
    }

    #[test]
    fn nondeterministic_automata_are_rejected_by_product() {
        let raw = RawDra {
            alphabet: vec![],
            locations: vec![RawLocation {
                name: "a".into(),
                labels: vec![],
                successors: vec![],
            }],
            initial: vec!["a".into()],
            pairs: vec![],
        };
        let a = RabinAutomaton::from_raw(&raw).unwrap();
        let m = corpus::two_state_chain();
        assert!(matches!(
            product(&m, &a),
            Err(RabinError::NotDeterministic(_))
        ));
    }

    #[test]
    fn anchored_persistence_sees_reanchoring_that_plain_formulas_miss() {
        let base = corpus::anchored_persistence_gadget();
        // Materialize "can reach the q-state in one step" as a label.
        let p_set = crate::fixpoint::pre(&base, &set(&base, &["y"]));
        assert_eq!(p_set, set(&base, &["y", "g", "w"]));
        let m = base.add_proposition("p", &p_set).unwrap();

        let star = check_star(
            &m,
            quant("Eas"),
            &monitors::anchored_persistence("q", "p"),
            None,
        )
        .unwrap();
        assert_eq!(star, m.full_set(), "re-anchoring achieves the event almost surely");

        // The one-shot approximation inside the plain logic is false
        // everywhere: no state anchors with a surely-forever p region.
        let approx = check(&m, &parse("Eas (true U (q & Esure G p))").unwrap()).unwrap();
        assert!(approx.is_empty());
        assert_eq!(
            check(&m, &parse("Esure G p").unwrap()).unwrap(),
            set(&m, &["g"])
        );
    }
}
