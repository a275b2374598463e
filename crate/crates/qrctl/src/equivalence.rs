//! Partition refinement for the qualitative state equivalences, with
//! certified splits and quotient construction.
//!
//! All relations are computed as the coarsest refinement of the label
//! partition stable under a chosen set of splitter operators:
//!
//! - `pre` only — bisimulation-style one-step possibility;
//! - `pre` + `cpre` — the simulation-closure / sure-formula / positive-next
//!   relations (these coincide as op sets);
//! - `pre` + `cpre` + almost-sure-until — the full positive-probability
//!   logic relation, which genuinely needs the non-local until splitter.
//!
//! Every split is logged as a [`Certificate`] naming the separating operator
//! and the block it cut; the refinement loop is deterministic (fixed scan
//! order, canonical block numbering) so runs are reproducible bit for bit.

use crate::checker::ex_until;
use crate::fixpoint::{cpre, pre, StateSet};
use crate::formula::Mode;
use crate::io::{RawModel, RawState};
use crate::mdp::{validate, Mdp};
use crate::prob::Prob;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Default ceiling on the number of blocks before union enumeration for the
/// until splitter is abandoned.
pub const DEFAULT_BUDGET: usize = 20;

/// Errors reported by the refinement loop.
#[derive(Debug, Error)]
pub enum EquivError {
    /// The partition grew beyond the union-enumeration budget while the
    /// until splitter was still enabled; the search would be exponential in
    /// the block count, so the tool refuses rather than approximates.
    #[error("partition has {blocks} blocks, beyond the union-enumeration budget of {budget}")]
    BudgetExceeded { blocks: usize, budget: usize },
}

/// A partition of the state space into disjoint, covering blocks.
///
/// Blocks are kept in canonical order (ascending minimal member), so block
/// ids are stable for a given partition value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    blocks: Vec<StateSet>,
}

impl Partition {
    pub(crate) fn from_blocks(n: usize, mut blocks: Vec<StateSet>) -> Partition {
        blocks.sort_by_key(|b| b.iter().next().expect("blocks are nonempty"));
        let mut assignment = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            for s in block.iter() {
                assignment[s] = id;
            }
        }
        debug_assert!(assignment.iter().all(|&b| b != usize::MAX));
        Partition { assignment, blocks }
    }

    /// Block id of a state.
    pub fn block_of(&self, s: usize) -> usize {
        self.assignment[s]
    }

    /// All blocks, in canonical order.
    pub fn blocks(&self) -> &[StateSet] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn same_block(&self, s: usize, t: usize) -> bool {
        self.assignment[s] == self.assignment[t]
    }

    /// Union of the given block ids as a state set.
    pub fn union_of(&self, ids: &[usize]) -> StateSet {
        let mut out = StateSet::new(self.assignment.len());
        for &id in ids {
            out.union_with(&self.blocks[id]);
        }
        out
    }

    /// True when every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| other.blocks.iter().any(|o| b.is_subset(o)))
    }

    /// Blocks as sorted lists of state names.
    pub fn block_names(&self, m: &Mdp) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| m.names_of(b)).collect()
    }

    fn split(&mut self, block: usize, inside: StateSet, outside: StateSet) {
        let mut blocks = std::mem::take(&mut self.blocks);
        blocks[block] = inside;
        blocks.push(outside);
        *self = Partition::from_blocks(self.assignment.len(), blocks);
    }
}

/// The label partition: states grouped by exact proposition sets.
pub fn initial_partition(m: &Mdp) -> Partition {
    let mut groups: BTreeMap<Vec<usize>, StateSet> = BTreeMap::new();
    for s in 0..m.n_states() {
        groups
            .entry(m.labels(s).to_vec())
            .or_insert_with(|| m.empty_set())
            .insert(s);
    }
    Partition::from_blocks(m.n_states(), groups.into_values().collect())
}

/// Which splitter operators a refinement run may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpSet {
    pub pre: bool,
    pub cpre: bool,
    pub eu: bool,
}

/// The equivalences offered by [`equiv`], named by how they are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Stable under `pre` only.
    Bisim,
    /// Stable under `pre` and `cpre` (simulation closure).
    SimClosure,
    /// Same op set as [`Relation::SimClosure`]: the relation induced by
    /// sure-mode formulas coincides with it on every model.
    Sure,
    /// Same op set again: positive-mode next-only formulas induce it too.
    PosNext,
    /// Stable under `pre`, `cpre`, and the almost-sure-until splitter: the
    /// relation induced by the full positive-probability logic.
    Pos,
}

impl Relation {
    pub fn ops(self) -> OpSet {
        match self {
            Relation::Bisim => OpSet {
                pre: true,
                cpre: false,
                eu: false,
            },
            Relation::SimClosure | Relation::Sure | Relation::PosNext => OpSet {
                pre: true,
                cpre: true,
                eu: false,
            },
            Relation::Pos => OpSet {
                pre: true,
                cpre: true,
                eu: true,
            },
        }
    }

    /// Command-line token for the relation.
    pub fn token(self) -> &'static str {
        match self {
            Relation::Bisim => "bisim",
            Relation::SimClosure => "simclo",
            Relation::Sure => "sure",
            Relation::PosNext => "pos_next",
            Relation::Pos => "pos",
        }
    }

    pub fn from_token(token: &str) -> Option<Relation> {
        match token {
            "bisim" => Some(Relation::Bisim),
            "simclo" => Some(Relation::SimClosure),
            "sure" => Some(Relation::Sure),
            "pos_next" => Some(Relation::PosNext),
            "pos" => Some(Relation::Pos),
            _ => None,
        }
    }
}

/// Which operator justified a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitterKind {
    Pre,
    Cpre,
    EuAlmost,
}

/// A certified split: the separating operator (with its operand unions,
/// given as state names so they stay meaningful after renumbering) and the
/// block it cut.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub kind: SplitterKind,
    /// States of the first operand union.
    pub c1: Vec<String>,
    /// States of the second operand union (empty for one-argument splitters).
    pub c2: Vec<String>,
    /// Members of the block that was split.
    pub block_before: Vec<String>,
    /// Members satisfying the splitter predicate.
    pub inside: Vec<String>,
    /// Members not satisfying it.
    pub outside: Vec<String>,
}

/// `⟦∃almost(C1 U C2)⟧` for arbitrary state sets: the until splitter.
pub fn eu_almost_set(m: &Mdp, c1: &StateSet, c2: &StateSet) -> StateSet {
    ex_until(Mode::Almost, m, c1, c2).expect("monotone fixpoint converges")
}

/// Coarsest refinement of the label partition stable under the chosen
/// operators, together with the log of certified splits.
///
/// Splitters are scanned in a fixed order (pre over single blocks ascending,
/// then cpre via per-state signatures, then until over unions of increasing
/// size); after every split the scan restarts, so the first certificate in
/// the log is always the first splitter that fires on the initial partition.
pub fn coarsest_stable(
    m: &Mdp,
    ops: OpSet,
    budget: usize,
) -> Result<(Partition, Vec<Certificate>), EquivError> {
    let mut partition = initial_partition(m);
    let mut certificates = Vec::new();
    if m.n_states() == 1 {
        return Ok((partition, certificates));
    }
    'refine: loop {
        // Phase 1: pre over single blocks. pre distributes over unions, so
        // single blocks are enough for stability under all unions.
        if ops.pre {
            for c in 0..partition.n_blocks() {
                let predicate = pre(m, &partition.blocks()[c]);
                let names = c_names(m, &partition, &[c]);
                if let Some(cert) =
                    split_by(m, &mut partition, &predicate, SplitterKind::Pre, names, vec![])
                {
                    certificates.push(cert);
                    continue 'refine;
                }
            }
        }
        // Phase 2: cpre. Two states agree on cpre of every union of blocks
        // exactly when their antichains of minimal per-move block-sets
        // coincide, so the signature comparison is exact; a separating union
        // is recovered as a smallest element of the symmetric difference.
        if ops.cpre {
            if let Some((ids, c1_names)) = cpre_separating_union(m, &partition) {
                let predicate = cpre(m, &partition.union_of(&ids));
                let cert = split_by(m, &mut partition, &predicate, SplitterKind::Cpre, c1_names, vec![])
                    .expect("signature difference yields a real split");
                certificates.push(cert);
                continue 'refine;
            }
        }
        // Phase 3: almost-sure until over pairs of unions, smallest first.
        if ops.eu {
            if partition.n_blocks() > budget {
                return Err(EquivError::BudgetExceeded {
                    blocks: partition.n_blocks(),
                    budget,
                });
            }
            let k = partition.n_blocks();
            let unions = subsets_by_size(k);
            for total in 2..=2 * k {
                for len1 in 1..total.min(k + 1) {
                    let len2 = total - len1;
                    if len2 < 1 || len2 > k {
                        continue;
                    }
                    for ids1 in &unions[len1] {
                        for ids2 in &unions[len2] {
                            let c1 = partition.union_of(ids1);
                            let c2 = partition.union_of(ids2);
                            let predicate = eu_almost_set(m, &c1, &c2);
                            let names1 = c_names(m, &partition, ids1);
                            let names2 = c_names(m, &partition, ids2);
                            if let Some(cert) = split_by(
                                m,
                                &mut partition,
                                &predicate,
                                SplitterKind::EuAlmost,
                                names1,
                                names2,
                            ) {
                                certificates.push(cert);
                                continue 'refine;
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    // Post-hoc certificate audit: every logged splitter must have been
    // genuinely non-constant on the block it cut.
    for cert in &certificates {
        debug_assert!(!cert.inside.is_empty() && !cert.outside.is_empty());
    }
    Ok((partition, certificates))
}

/// Computes one of the named equivalences with the default budget.
pub fn equiv(m: &Mdp, relation: Relation) -> Result<(Partition, Vec<Certificate>), EquivError> {
    coarsest_stable(m, relation.ops(), DEFAULT_BUDGET)
}

fn c_names(m: &Mdp, partition: &Partition, ids: &[usize]) -> Vec<String> {
    m.names_of(&partition.union_of(ids))
}

/// Splits the first block (ascending) on which the predicate is
/// non-constant, returning the certificate, or `None` if the predicate is
/// constant on every block.
fn split_by(
    m: &Mdp,
    partition: &mut Partition,
    predicate: &StateSet,
    kind: SplitterKind,
    c1: Vec<String>,
    c2: Vec<String>,
) -> Option<Certificate> {
    for b in 0..partition.n_blocks() {
        let block = &partition.blocks()[b];
        let inside = block.intersect(predicate);
        if inside.is_empty() || inside == *block {
            continue;
        }
        let outside = block.minus(predicate);
        let cert = Certificate {
            kind,
            c1,
            c2,
            block_before: m.names_of(block),
            inside: m.names_of(&inside),
            outside: m.names_of(&outside),
        };
        partition.split(b, inside, outside);
        return Some(cert);
    }
    None
}

/// Per-state cpre signature: the minimal (under inclusion) sets of block ids
/// covered by each move's successor set, as a canonically sorted antichain.
fn cpre_signature(m: &Mdp, partition: &Partition, s: usize) -> Vec<Vec<usize>> {
    let mut move_blocks: Vec<Vec<usize>> = m
        .moves(s)
        .iter()
        .map(|mv| {
            let mut ids: Vec<usize> = mv.dist.iter().map(|&(t, _)| partition.block_of(t)).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    move_blocks.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    move_blocks.dedup();
    let mut antichain: Vec<Vec<usize>> = Vec::new();
    for cand in move_blocks {
        if !antichain.iter().any(|kept| is_subseq_subset(kept, &cand)) {
            antichain.push(cand);
        }
    }
    antichain
}

/// Subset test on sorted id lists.
fn is_subseq_subset(small: &[usize], large: &[usize]) -> bool {
    let mut it = large.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Finds, if any, a union of blocks whose cpre separates two states of one
/// block: the smallest element of the symmetric difference of the first
/// differing pair of signatures. Minimality makes it separating: a strictly
/// smaller subset covering it would itself lie in the difference.
fn cpre_separating_union(m: &Mdp, partition: &Partition) -> Option<(Vec<usize>, Vec<String>)> {
    for block in partition.blocks() {
        let mut members = block.iter();
        let first = members.next().expect("blocks are nonempty");
        let sig_first = cpre_signature(m, partition, first);
        for t in members {
            let sig_t = cpre_signature(m, partition, t);
            if sig_t == sig_first {
                continue;
            }
            let mut difference: Vec<&Vec<usize>> = sig_first
                .iter()
                .filter(|x| !sig_t.contains(x))
                .chain(sig_t.iter().filter(|x| !sig_first.contains(x)))
                .collect();
            difference.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
            let ids = difference[0].clone();
            let names = c_names(m, partition, &ids);
            return Some((ids, names));
        }
    }
    None
}

/// All subsets of `0..k`, grouped by size (outer index = size); within one
/// size, subsets are listed in lexicographic order.
fn subsets_by_size(k: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=k).map(|size| combinations(k, size)).collect()
}

/// All sorted `size`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 || size > k {
        return out;
    }
    let mut combo: Vec<usize> = (0..size).collect();
    'gen: loop {
        out.push(combo.clone());
        let mut i = size;
        loop {
            if i == 0 {
                break 'gen;
            }
            i -= 1;
            if combo[i] < k - size + i {
                combo[i] += 1;
                for j in i + 1..size {
                    combo[j] = combo[j - 1] + 1;
                }
                continue 'gen;
            }
        }
    }
    out
}

/// One state per block: the representative is the block's lowest-index
/// member; its actions survive with successor probabilities summed per
/// target block.
///
/// Panics if a block mixes label sets — callers must pass partitions that
/// refine the label partition, which everything produced by [`equiv`] does.
pub fn quotient(m: &Mdp, partition: &Partition) -> Mdp {
    let reps: Vec<usize> = partition
        .blocks()
        .iter()
        .map(|b| b.iter().next().expect("blocks are nonempty"))
        .collect();
    for (block, &rep) in partition.blocks().iter().zip(&reps) {
        for s in block.iter() {
            assert_eq!(
                m.labels(s),
                m.labels(rep),
                "quotient requires label-constant blocks (state '{}' differs from '{}')",
                m.state_name(s),
                m.state_name(rep)
            );
        }
    }
    let states: Vec<RawState> = reps
        .iter()
        .map(|&rep| {
            let mut actions: BTreeMap<String, BTreeMap<String, Prob>> = BTreeMap::new();
            for mv in m.moves(rep) {
                let mut dist: BTreeMap<String, Prob> = BTreeMap::new();
                for &(t, p) in &mv.dist {
                    let target = m.state_name(reps[partition.block_of(t)]).to_string();
                    let entry = dist.entry(target).or_insert(Prob::ZERO);
                    *entry = entry.add(p);
                }
                actions.insert(m.action_name(mv.action).to_string(), dist);
            }
            RawState {
                name: m.state_name(rep).to_string(),
                labels: m
                    .labels(rep)
                    .iter()
                    .map(|&p| m.props()[p].clone())
                    .collect(),
                actions,
            }
        })
        .collect();
    let raw = RawModel {
        propositions: m.props().to_vec(),
        states,
    };
    validate(&raw).expect("quotient of a valid model is valid").0
}

/// Whether two states have isomorphic one-step futures up to the partition:
/// they share a block, and there are bijections between their successor
/// sets and between their move sets that preserve blocks and transition
/// probabilities exactly.
pub fn one_neighbourhood_isomorphic(
    m: &Mdp,
    s: usize,
    t: usize,
    partition: &Partition,
) -> bool {
    if !partition.same_block(s, t) {
        return false;
    }
    let es = m.edge_successors(s);
    let et = m.edge_successors(t);
    if es.len() != et.len() || m.moves(s).len() != m.moves(t).len() {
        return false;
    }
    let prob_of = |state: usize, mv: usize, succ: usize| -> Prob {
        m.moves(state)[mv]
            .dist
            .iter()
            .find(|&&(x, _)| x == succ)
            .map(|&(_, p)| p)
            .unwrap_or(Prob::ZERO)
    };
    for succ_perm in permutations(et.len()) {
        let class_ok = es
            .iter()
            .zip(&succ_perm)
            .all(|(&a, &i)| partition.same_block(a, et[i]));
        if !class_ok {
            continue;
        }
        for move_perm in permutations(m.moves(s).len()) {
            let matches = (0..m.moves(s).len()).all(|j| {
                es.iter().zip(&succ_perm).all(|(&a, &i)| {
                    prob_of(s, j, a).value_eq(prob_of(t, move_perm[j], et[i]))
                })
            });
            if matches {
                return true;
            }
        }
    }
    false
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    let mut used = vec![false; k];
    fn rec(k: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if depth == k {
            out.push(current.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                current[depth] = v;
                rec(k, current, used, depth + 1, out);
                used[v] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, 0, &mut out);
    out
}

/// Demonstration that positive-probability equivalence cannot be computed by
/// any refinement operator that only inspects one-step futures up to the
/// current partition.
#[derive(Debug)]
pub struct LocalityReport {
    /// The four-sibling family the demonstration runs on.
    pub model: Mdp,
    /// Pairs with isomorphic one-step futures under the label partition —
    /// a local operator must treat these uniformly.
    pub iso_pairs: Vec<(String, String)>,
    /// A pair with non-isomorphic futures that the full relation
    /// nevertheless merges.
    pub non_iso_pair: (String, String),
    /// The partition stable under the one-step operators only.
    pub partition_pre_cpre: Partition,
    /// The full positive-probability partition (strictly finer here).
    pub partition_pos: Partition,
    /// Index of the first until-splitter certificate in the pos run's log.
    pub eu_certificate_index: usize,
    /// A distinguishing formula for the pair the until splitter separates.
    pub witness_formula: String,
    pub witness_true_at: String,
    pub witness_false_at: String,
}

/// Runs the locality demonstration on the built-in four-sibling family.
///
/// The family has states `s2, s3, s4` with pairwise isomorphic one-step
/// futures (so any local rule treats them alike) while the full relation
/// keeps `s1 ≈ s2` but separates `s2` from `s3` — the separation is only
/// found by the almost-sure-until splitter, whose certificate index is
/// reported.
pub fn regression_1neighbourhood() -> LocalityReport {
    let m = crate::corpus::lookalike_family();
    let initial = initial_partition(&m);
    let idx = |name: &str| m.state_index(name).expect("family state");

    let mut iso_pairs = Vec::new();
    for (a, b) in [("s2", "s3"), ("s3", "s4"), ("s2", "s4")] {
        assert!(
            one_neighbourhood_isomorphic(&m, idx(a), idx(b), &initial),
            "{a} and {b} should look alike one step out"
        );
        iso_pairs.push((a.to_string(), b.to_string()));
    }
    assert!(
        !one_neighbourhood_isomorphic(&m, idx("s1"), idx("s2"), &initial),
        "s1 and s2 differ one step out (1/2 vs 1/3)"
    );

    let (partition_pre_cpre, _) = coarsest_stable(
        &m,
        OpSet {
            pre: true,
            cpre: true,
            eu: false,
        },
        DEFAULT_BUDGET,
    )
    .expect("family is small");
    let (partition_pos, certificates) = equiv(&m, Relation::Pos).expect("family is small");

    assert!(
        partition_pre_cpre.same_block(idx("s1"), idx("s3")),
        "one-step stability alone keeps all four siblings together"
    );
    assert!(partition_pos.same_block(idx("s1"), idx("s2")));
    assert!(!partition_pos.same_block(idx("s2"), idx("s3")));
    assert!(partition_pos.same_block(idx("s3"), idx("s4")));

    let eu_certificate_index = certificates
        .iter()
        .position(|c| c.kind == SplitterKind::EuAlmost)
        .expect("the until splitter must fire on this family");

    LocalityReport {
        model: m,
        iso_pairs,
        non_iso_pair: ("s1".to_string(), "s2".to_string()),
        partition_pre_cpre,
        partition_pos,
        eu_certificate_index,
        witness_formula: "Eas F r".to_string(),
        witness_true_at: "s2".to_string(),
        witness_false_at: "s3".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker;
    use crate::corpus;
    use crate::formula::parse;

    fn blocks_of_names(p: &Partition, m: &Mdp) -> Vec<Vec<String>> {
        p.block_names(m)
    }

    #[test]
    fn initial_partition_groups_by_labels() {
        let m = corpus::two_state_chain();
        let p = initial_partition(&m);
        assert_eq!(blocks_of_names(&p, &m), vec![vec!["s"], vec!["t"]]);

        let m2 = corpus::convex_choice();
        let p2 = initial_partition(&m2);
        assert_eq!(
            blocks_of_names(&p2, &m2),
            vec![vec!["s", "s'"], vec!["u"], vec!["v"]]
        );
    }

    #[test]
    fn eu_splitter_set_matches_checker() {
        let m = corpus::two_state_chain();
        let t = StateSet::singleton(2, 1);
        assert_eq!(eu_almost_set(&m, &m.full_set(), &t), m.full_set());
        assert!(eu_almost_set(&m, &m.full_set(), &m.empty_set()).is_empty());
        assert_eq!(eu_almost_set(&m, &m.empty_set(), &m.full_set()), m.full_set());
    }

    #[test]
    fn convex_choice_keeps_the_mixing_state_under_pos() {
        let m = corpus::convex_choice();
        let (p, certs) = equiv(&m, Relation::Pos).unwrap();
        assert_eq!(
            blocks_of_names(&p, &m),
            vec![vec!["s", "s'"], vec!["u"], vec!["v"]]
        );
        assert!(certs.is_empty(), "label partition is already stable");
    }

    #[test]
    fn alternation_separates_the_mixing_state() {
        let m = corpus::convex_choice().alternate().unwrap();
        let (p, _) = equiv(&m, Relation::Pos).unwrap();
        let s = m.state_index("s").unwrap();
        let sp = m.state_index("s'").unwrap();
        assert!(!p.same_block(s, sp));
    }

    #[test]
    fn retry_gadget_partitions() {
        let m = corpus::retry_vs_one_shot();
        let (one_step, _) = coarsest_stable(
            &m,
            OpSet {
                pre: true,
                cpre: true,
                eu: false,
            },
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(
            blocks_of_names(&one_step, &m),
            vec![vec!["s", "t"], vec!["u"], vec!["z"]]
        );
        let (pos, certs) = equiv(&m, Relation::Pos).unwrap();
        assert_eq!(
            blocks_of_names(&pos, &m),
            vec![vec!["s"], vec!["t"], vec!["u"], vec!["z"]]
        );
        assert!(certs.iter().any(|c| c.kind == SplitterKind::EuAlmost));
    }

    #[test]
    fn lookalike_family_partitions() {
        let m = corpus::lookalike_family();
        let (one_step, _) = coarsest_stable(
            &m,
            OpSet {
                pre: true,
                cpre: true,
                eu: false,
            },
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(
            blocks_of_names(&one_step, &m),
            vec![
                vec!["s1", "s2", "s3", "s4"],
                vec!["w", "x", "x2"],
                vec!["rhat"],
                vec!["z"],
            ]
        );
        let (pos, _) = equiv(&m, Relation::Pos).unwrap();
        assert_eq!(
            blocks_of_names(&pos, &m),
            vec![
                vec!["s1", "s2"],
                vec!["s3", "s4"],
                vec!["w"],
                vec!["x", "x2"],
                vec!["rhat"],
                vec!["z"],
            ]
        );
    }

    #[test]
    fn splits_are_certified_and_reproducible() {
        let m = corpus::lookalike_family();
        let (_, certs1) = equiv(&m, Relation::Pos).unwrap();
        let (_, certs2) = equiv(&m, Relation::Pos).unwrap();
        assert_eq!(certs1.len(), certs2.len());
        for (a, b) in certs1.iter().zip(&certs2) {
            assert_eq!(format!("{a:?}"), format!("{b:?}"));
            assert!(!a.inside.is_empty());
            assert!(!a.outside.is_empty());
            // Re-check: the predicate really is non-constant on the block.
            assert_eq!(
                a.block_before.len(),
                a.inside.len() + a.outside.len()
            );
        }
    }

    #[test]
    fn refinement_monotonicity_across_relations() {
        for m in corpus::small_models() {
            let (pos, _) = equiv(&m, Relation::Pos).unwrap();
            let (pos_next, _) = equiv(&m, Relation::PosNext).unwrap();
            let (bisim, _) = equiv(&m, Relation::Bisim).unwrap();
            let initial = initial_partition(&m);
            assert!(pos.refines(&pos_next));
            assert!(pos_next.refines(&bisim));
            assert!(bisim.refines(&initial));
        }
    }

    #[test]
    fn alternating_models_collapse_all_relations() {
        for base in corpus::small_models() {
            if base.n_states() > 6 {
                continue;
            }
            let m = base.alternate().unwrap();
            let (pos, _) = equiv(&m, Relation::Pos).unwrap();
            let (simclo, _) = equiv(&m, Relation::SimClosure).unwrap();
            assert_eq!(pos, simclo, "on alternating models the until splitter adds nothing");
        }
    }

    #[test]
    fn quotient_collapses_duplicated_branches() {
        let m = corpus::lookalike_family();
        let (pos, _) = equiv(&m, Relation::Pos).unwrap();
        let q = quotient(&m, &pos);
        assert_eq!(q.n_states(), 6);
        // Quotient preserves the distinguishing verdict at representatives.
        let f = parse("Eas F r").unwrap();
        let before = checker::check(&m, &f).unwrap();
        let after = checker::check(&q, &f).unwrap();
        let s1 = m.state_index("s1").unwrap();
        let s3 = m.state_index("s3").unwrap();
        assert!(before.contains(s1) && !before.contains(s3));
        let qs1 = q.state_index("s1").unwrap();
        let qs3 = q.state_index("s3").unwrap();
        assert!(after.contains(qs1) && !after.contains(qs3));
        // Summed branch: s1's two w/x-type successors collapse per block.
        assert!(q.state_index("x2").is_none());
    }

    #[test]
    fn quotient_preserves_verdicts_on_corpus() {
        for m in corpus::small_models() {
            if m.n_states() > 6 {
                continue;
            }
            let (pos, _) = equiv(&m, Relation::Pos).unwrap();
            let q = quotient(&m, &pos);
            for text in ["Eas F q", "Esure X q", "Epos (q U r)", "Aex G q"] {
                let f = parse(text).unwrap();
                let f_ok = match checker::check(&m, &f) {
                    Ok(set) => set,
                    Err(_) => continue, // model may not declare q/r
                };
                let q_ok = checker::check(&q, &f).unwrap();
                for (block_id, block) in pos.blocks().iter().enumerate() {
                    let rep = block.iter().next().unwrap();
                    let q_state = q.state_index(m.state_name(rep)).unwrap();
                    for s in block.iter() {
                        assert_eq!(
                            f_ok.contains(s),
                            q_ok.contains(q_state),
                            "{} block {} state {}",
                            text,
                            block_id,
                            m.state_name(s)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn locality_regression_report() {
        let report = regression_1neighbourhood();
        assert_eq!(report.iso_pairs.len(), 3);
        assert_eq!(report.non_iso_pair, ("s1".to_string(), "s2".to_string()));
        // The one-step partition is strictly coarser than the full one.
        assert!(report.partition_pos.refines(&report.partition_pre_cpre));
        assert!(report.partition_pos != report.partition_pre_cpre);
        // The witness formula checks out.
        let f = parse(&report.witness_formula).unwrap();
        let sat = checker::check(&report.model, &f).unwrap();
        let m = &report.model;
        assert!(sat.contains(m.state_index(&report.witness_true_at).unwrap()));
        assert!(!sat.contains(m.state_index(&report.witness_false_at).unwrap()));
    }

    #[test]
    fn budget_refusal_is_reported() {
        let m = corpus::chain_line(25);
        // Every interior state of the line is already separated by pre, so
        // the block count exceeds the budget before the until phase starts.
        let result = coarsest_stable(
            &m,
            OpSet {
                pre: true,
                cpre: true,
                eu: true,
            },
            8,
        );
        assert!(matches!(
            result,
            Err(EquivError::BudgetExceeded { blocks: _, budget: 8 })
        ));
    }

    #[test]
    fn single_state_model_is_trivial() {
        let m = corpus::single_state();
        let (p, certs) = equiv(&m, Relation::Pos).unwrap();
        assert_eq!(p.n_blocks(), 1);
        assert!(certs.is_empty());
    }
}
