//! Brute-force reference semantics for qualitative verdicts.
//!
//! This module deliberately avoids the fixpoint algorithms used by the
//! analytic evaluators. Instead it enumerates every pure memoryless strategy,
//! analyzes each induced chain by plain graph search (plus value iteration
//! when an actual probability is wanted), and folds the per-strategy answers
//! into per-quantifier answers. The test suite uses these verdicts as an
//! independent cross-check of the fixpoint-based checker.
//!
//! Soundness rests on two standard facts, adopted here as documented
//! assumptions: pure memoryless strategies suffice for single next / until /
//! wait-for objectives under every qualitative mode, and the per-strategy
//! qualitative verdicts depend only on transition supports, never on the
//! exact probability values.

use crate::fixpoint::StateSet;
use crate::formula::{Mode, Polarity, Quantifier};
use crate::mdp::Mdp;
use thiserror::Error;

/// Size bounds protecting the exponential strategy enumeration, plus the
/// absolute tolerance used by numeric probability iteration.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Maximum number of states accepted by the enumerating verdict functions.
    pub max_states: usize,
    /// Maximum number of moves available in any single state.
    pub max_actions: usize,
    /// Absolute convergence tolerance for `chain_reach_prob`.
    pub tolerance: f64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_states: 8,
            max_actions: 3,
            tolerance: 1e-12,
        }
    }
}

/// Errors reported by the oracle.
#[derive(Debug, Error)]
pub enum OracleError {
    /// The model is too large for exhaustive strategy enumeration.
    #[error("model exceeds oracle bounds: {0}")]
    BoundExceeded(String),
    /// A chain-only computation was invoked on a model with choices.
    #[error("model is not a Markov chain: some state has more than one move")]
    NotMarkovChain,
}

/// A path event whose operands have already been evaluated to state sets.
#[derive(Debug, Clone)]
pub enum PathEvent {
    /// The next state lies in the given set.
    Next(StateSet),
    /// Until: some position hits the second set, all earlier positions lie in
    /// the first (the anchor position itself is unconstrained by the first).
    Until(StateSet, StateSet),
    /// Wait-for: either the first set holds forever, or some position hits
    /// the second set with the first holding at every position up to and
    /// including the anchor.
    WaitFor(StateSet, StateSet),
}

/// A pure memoryless strategy: one move index (into `m.moves(s)`) per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorylessStrategy {
    /// `choice[s]` indexes into `m.moves(s)`.
    pub choice: Vec<usize>,
}

impl MemorylessStrategy {
    /// Successor lists of the induced chain (supports of the chosen moves).
    pub fn induced_successors(&self, m: &Mdp) -> Vec<Vec<usize>> {
        (0..m.n_states())
            .map(|s| {
                m.moves(s)[self.choice[s]]
                    .dist
                    .iter()
                    .map(|&(t, _)| t)
                    .collect()
            })
            .collect()
    }

    /// Transition rows of the induced chain with numeric probabilities.
    pub fn induced_rows(&self, m: &Mdp) -> Vec<Vec<(usize, f64)>> {
        (0..m.n_states())
            .map(|s| {
                m.moves(s)[self.choice[s]]
                    .dist
                    .iter()
                    .map(|&(t, ref p)| (t, p.value()))
                    .collect()
            })
            .collect()
    }
}

/// Iterator over all pure memoryless strategies of a model, in odometer
/// order over move indices (first state is the least significant digit).
pub struct Strategies {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Strategies {
    type Item = MemorylessStrategy;

    fn next(&mut self) -> Option<MemorylessStrategy> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut advanced = false;
        for (digit, &count) in succ.iter_mut().zip(self.counts.iter()) {
            if *digit + 1 < count {
                *digit += 1;
                advanced = true;
                break;
            }
            *digit = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(MemorylessStrategy { choice: cur })
    }
}

/// Enumerates every pure memoryless strategy of `m`.
pub fn enumerate_strategies(m: &Mdp) -> Strategies {
    let counts: Vec<usize> = (0..m.n_states()).map(|s| m.moves(s).len()).collect();
    let start = vec![0; counts.len()];
    Strategies {
        counts,
        next: Some(start),
    }
}

/// Per-quantifier verdict sets, in canonical quantifier order.
#[derive(Debug, Clone)]
pub struct VerdictTable {
    entries: Vec<(Quantifier, StateSet)>,
}

impl VerdictTable {
    /// The verdict set for one quantifier.
    pub fn get(&self, q: Quantifier) -> &StateSet {
        &self
            .entries
            .iter()
            .find(|(quant, _)| *quant == q)
            .expect("table covers all quantifiers")
            .1
    }

    /// All entries, in canonical quantifier order.
    pub fn entries(&self) -> &[(Quantifier, StateSet)] {
        &self.entries
    }
}

fn mode_index(mode: Mode) -> usize {
    match mode {
        Mode::Sure => 0,
        Mode::Almost => 1,
        Mode::Positive => 2,
        Mode::Feasible => 3,
    }
}

/// Computes the verdict table for a single path event by exhaustive strategy
/// enumeration: existential answers are disjunctions over strategies,
/// universal answers conjunctions.
pub fn qualitative_verdict(
    m: &Mdp,
    event: &PathEvent,
    limits: &OracleLimits,
) -> Result<VerdictTable, OracleError> {
    let n = m.n_states();
    if n > limits.max_states {
        return Err(OracleError::BoundExceeded(format!(
            "{} states exceed the bound of {}",
            n, limits.max_states
        )));
    }
    if let Some(s) = (0..n).find(|&s| m.moves(s).len() > limits.max_actions) {
        return Err(OracleError::BoundExceeded(format!(
            "state '{}' has {} moves, exceeding the bound of {}",
            m.state_name(s),
            m.moves(s).len(),
            limits.max_actions
        )));
    }

    // exists[mode] folds with OR, forall[mode] with AND; the strategy space
    // is never empty because every state has at least one move.
    let mut exists = vec![vec![false; n]; 4];
    let mut forall = vec![vec![true; n]; 4];
    for strategy in enumerate_strategies(m) {
        let succ = strategy.induced_successors(m);
        let verdicts = match event {
            PathEvent::Next(q) => next_verdicts(&succ, q),
            PathEvent::Until(q, r) => until_verdicts(&succ, q, r),
            PathEvent::WaitFor(q, r) => {
                // (sure, almost, pos, nullo)(q W r)
                //   = (not nullo, not pos, not almost, not sure)((!r) U (!q))
                let u = until_verdicts(&succ, &r.complement(), &q.complement());
                let [u_sure, u_almost, u_pos, u_nullo] = u;
                [
                    negated(&u_nullo),
                    negated(&u_pos),
                    negated(&u_almost),
                    negated(&u_sure),
                ]
            }
        };
        for (mode, verdict) in verdicts.iter().enumerate() {
            for s in 0..n {
                exists[mode][s] |= verdict[s];
                forall[mode][s] &= verdict[s];
            }
        }
    }

    let entries = Quantifier::ALL
        .iter()
        .map(|&q| {
            let row = match q.polarity {
                Polarity::Exists => &exists,
                Polarity::Forall => &forall,
            };
            (q, to_set(n, &row[mode_index(q.mode)]))
        })
        .collect();
    Ok(VerdictTable { entries })
}

/// Reachability probabilities in a Markov chain.
///
/// States certainly failing and certainly succeeding are classified by graph
/// search first, so 0/1 answers never depend on the tolerance; only the
/// remaining states go through value iteration. The middle block is
/// substochastic with guaranteed exit, so iteration converges geometrically;
/// the internal sweep cap is a safety valve, not a practical limit.
pub fn chain_reach_prob(
    m: &Mdp,
    target: &StateSet,
    tolerance: f64,
) -> Result<Vec<f64>, OracleError> {
    if !m.is_markov_chain() {
        return Err(OracleError::NotMarkovChain);
    }
    let n = m.n_states();
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|s| {
            m.moves(s)[0]
                .dist
                .iter()
                .map(|&(t, ref p)| (t, p.value()))
                .collect()
        })
        .collect();
    // Absorb the target: reaching it settles the event.
    let absorbed: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            if target.contains(s) {
                vec![s]
            } else {
                rows[s].iter().map(|&(t, _)| t).collect()
            }
        })
        .collect();
    let can_reach = back_reach(&absorbed, |s| target.contains(s));
    let prob1 = {
        let reach_bad = back_reach(&absorbed, |s| !can_reach[s]);
        negated(&reach_bad)
    };

    let mut x: Vec<f64> = (0..n).map(|s| if prob1[s] { 1.0 } else { 0.0 }).collect();
    let middle: Vec<usize> = (0..n).filter(|&s| can_reach[s] && !prob1[s]).collect();
    if !middle.is_empty() {
        let mut next = x.clone();
        for _ in 0..10_000_000u64 {
            let mut delta = 0.0f64;
            for &s in &middle {
                let v: f64 = rows[s].iter().map(|&(t, p)| p * x[t]).sum();
                delta = delta.max((v - x[s]).abs());
                next[s] = v;
            }
            std::mem::swap(&mut x, &mut next);
            if delta <= tolerance {
                break;
            }
        }
    }
    Ok(x)
}

/// `[sure, almost, pos, nullo]` per-state verdicts for `Next(q)` in the
/// induced chain: one-step support inclusion or intersection.
fn next_verdicts(succ: &[Vec<usize>], q: &StateSet) -> [Vec<bool>; 4] {
    let n = succ.len();
    let mut all = vec![false; n];
    let mut any = vec![false; n];
    for s in 0..n {
        all[s] = succ[s].iter().all(|&t| q.contains(t));
        any[s] = succ[s].iter().any(|&t| q.contains(t));
    }
    [all.clone(), all, any.clone(), any]
}

/// `[sure, almost, pos, nullo]` per-state verdicts for `Until(q, r)` in the
/// induced chain, by graph search on the support structure.
fn until_verdicts(succ: &[Vec<usize>], q: &StateSet, r: &StateSet) -> [Vec<bool>; 4] {
    let n = succ.len();
    let good = |s: usize| r.contains(s);
    let waiting = |s: usize| q.contains(s) && !r.contains(s);

    // Good and bad states absorb: the event is settled either way.
    let absorbed: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            if waiting(s) {
                succ[s].clone()
            } else {
                vec![s]
            }
        })
        .collect();

    // Positive probability = a finite witness path exists.
    let pos = back_reach(&absorbed, good);
    // Probability one = the prob-zero region is unreachable.
    let almost = {
        let reach_zero = back_reach(&absorbed, |s| !pos[s]);
        negated(&reach_zero)
    };
    // Sure = no bad state and no cycle reachable before the target: every
    // maximal path in this graph then terminates in the target.
    let sure = {
        let pruned: Vec<Vec<usize>> = (0..n)
            .map(|s| if waiting(s) { succ[s].clone() } else { vec![] })
            .collect();
        let mut danger = vec![false; n];
        for s in 0..n {
            if !good(s) && !waiting(s) {
                danger[s] = true;
            }
        }
        for component in strongly_connected_components(&pruned) {
            let cyclic = component.len() > 1
                || pruned[component[0]].contains(&component[0]);
            if cyclic {
                for &s in &component {
                    danger[s] = true;
                }
            }
        }
        let doomed = back_reach(&pruned, |s| danger[s]);
        negated(&doomed)
    };
    let nullo = pos.clone();
    [sure, almost, pos, nullo]
}

/// States from which a seed state is reachable (seeds included).
fn back_reach(succ: &[Vec<usize>], seed: impl Fn(usize) -> bool) -> Vec<bool> {
    let n = succ.len();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, row) in succ.iter().enumerate() {
        for &t in row {
            rev[t].push(s);
        }
    }
    let mut hit: Vec<bool> = (0..n).map(&seed).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&s| hit[s]).collect();
    while let Some(t) = queue.pop() {
        for &s in &rev[t] {
            if !hit[s] {
                hit[s] = true;
                queue.push(s);
            }
        }
    }
    hit
}

/// Strongly connected components (iterative Kosaraju), each sorted, in
/// deterministic discovery order.
fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s0 in 0..n {
        if visited[s0] {
            continue;
        }
        visited[s0] = true;
        let mut stack: Vec<(usize, usize)> = vec![(s0, 0)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < succ[u].len() {
                let v = succ[u][*i];
                *i += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, row) in succ.iter().enumerate() {
        for &v in row {
            rev[v].push(u);
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &u in order.iter().rev() {
        if component[u] != usize::MAX {
            continue;
        }
        let id = components.len();
        components.push(Vec::new());
        component[u] = id;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            components[id].push(x);
            for &y in &rev[x] {
                if component[y] == usize::MAX {
                    component[y] = id;
                    stack.push(y);
                }
            }
        }
    }
    for c in &mut components {
        c.sort_unstable();
    }
    components
}

fn negated(v: &[bool]) -> Vec<bool> {
    v.iter().map(|&b| !b).collect()
}

fn to_set(n: usize, v: &[bool]) -> StateSet {
    let mut set = StateSet::new(n);
    for (s, &b) in v.iter().enumerate() {
        if b {
            set.insert(s);
        }
    }
    set
}

/// State bound for the automaton-objective oracle.
pub const RABIN_MAX_STATES: usize = 12;
/// Strategy bound for the automaton-objective oracle.
pub const RABIN_MAX_STRATEGIES: usize = 20_000;

/// Product states where the automaton objective holds existentially in the
/// given mode, by brute force.
///
/// Per memoryless strategy on the product, the induced chain's recurrent
/// structure decides each mode directly from supports:
/// - almost: no rejecting closed recurrent class is reachable;
/// - positive: some accepting closed recurrent class is reachable;
/// - feasible: some accepting realizable infinity set is reachable (a
///   strongly connected support subset the path can tour forever);
/// - sure: no rejecting realizable infinity set is reachable.
///
/// Only existential answers are produced: against automaton objectives the
/// universal quantifiers range over an adversary that may need memory, so a
/// memoryless fold would be unsound for them.
pub fn rabin_verdict(pm: &crate::rabin::ProductMdp, mode: Mode) -> Result<StateSet, OracleError> {
    let m = &pm.mdp;
    let n = m.n_states();
    if n > RABIN_MAX_STATES {
        return Err(OracleError::BoundExceeded(format!(
            "product has {n} states, above the oracle bound of {RABIN_MAX_STATES}"
        )));
    }
    let strategy_count = (0..n)
        .map(|s| m.moves(s).len())
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    if strategy_count > RABIN_MAX_STRATEGIES {
        return Err(OracleError::BoundExceeded(format!(
            "product admits {strategy_count} strategies, above the oracle bound of {RABIN_MAX_STRATEGIES}"
        )));
    }
    let accepting = |set: &[usize]| -> bool {
        pm.pairs.iter().any(|(p, r)| {
            set.iter().all(|&u| !p.contains(u)) && set.iter().any(|&u| r.contains(u))
        })
    };
    let mut out = m.empty_set();
    for sigma in enumerate_strategies(m) {
        let succ = sigma.induced_successors(m);
        let verdict = match mode {
            Mode::Almost | Mode::Positive => {
                let components = strongly_connected_components(&succ);
                let mut good = vec![false; n];
                let mut bad = vec![false; n];
                for comp in &components {
                    let closed = comp
                        .iter()
                        .all(|&u| succ[u].iter().all(|&v| comp.binary_search(&v).is_ok()));
                    if closed {
                        let flag = if accepting(comp) { &mut good } else { &mut bad };
                        for &u in comp {
                            flag[u] = true;
                        }
                    }
                }
                match mode {
                    Mode::Almost => negated(&back_reach(&succ, |s| bad[s])),
                    _ => back_reach(&succ, |s| good[s]),
                }
            }
            Mode::Sure | Mode::Feasible => {
                // Realizable infinity sets are the strongly connected
                // support subsets (a singleton needs a self-loop); each lies
                // inside one component of the induced graph.
                let components = strongly_connected_components(&succ);
                let mut good = vec![false; n];
                let mut bad = vec![false; n];
                for comp in &components {
                    for mask in 1u32..(1 << comp.len()) {
                        let subset: Vec<usize> = comp
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| mask & (1 << i) != 0)
                            .map(|(_, &u)| u)
                            .collect();
                        if !tourable(&subset, &succ) {
                            continue;
                        }
                        let flag = if accepting(&subset) { &mut good } else { &mut bad };
                        for &u in &subset {
                            flag[u] = true;
                        }
                    }
                }
                match mode {
                    Mode::Sure => negated(&back_reach(&succ, |s| bad[s])),
                    _ => back_reach(&succ, |s| good[s]),
                }
            }
        };
        for s in 0..n {
            if verdict[s] {
                out.insert(s);
            }
        }
    }
    Ok(out)
}

/// Whether a path can stay inside `subset` forever while visiting every
/// member infinitely often: the induced subgraph must be strongly connected
/// and every member must keep a successor inside.
fn tourable(subset: &[usize], succ: &[Vec<usize>]) -> bool {
    let inside = |v: usize| subset.binary_search(&v).is_ok();
    if subset.len() == 1 {
        return succ[subset[0]].contains(&subset[0]);
    }
    // Forward reachability from the first member, restricted to the subset.
    let mut seen = vec![false; subset.len()];
    let mut stack = vec![subset[0]];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &succ[u] {
            if inside(v) {
                let i = subset.binary_search(&v).unwrap();
                if !seen[i] {
                    seen[i] = true;
                    stack.push(v);
                }
            }
        }
    }
    if seen.iter().any(|&b| !b) {
        return false;
    }
    // Backward reachability to the first member, restricted to the subset.
    let mut reach_back = vec![false; subset.len()];
    reach_back[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &u) in subset.iter().enumerate() {
            if reach_back[i] {
                continue;
            }
            let hits = succ[u]
                .iter()
                .any(|&v| inside(v) && reach_back[subset.binary_search(&v).unwrap()]);
            if hits {
                reach_back[i] = true;
                changed = true;
            }
        }
    }
    reach_back.iter().all(|&b| b)
}

/// Formula fragments for distinguisher enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// One-step under positive/sure plus almost-until: the generators whose
    /// closure characterizes the positive-equivalence partition.
    Positive,
    /// One-step generators only.
    Sure,
}

/// A formula recorded during distinguisher enumeration, with the refinement
/// round that produced it.
#[derive(Debug, Clone)]
pub struct FoundDistinguisher {
    pub depth: usize,
    pub formula: String,
}

/// State bound for distinguisher enumeration (large enough for the
/// nine-state lookalike family, whose almost-until split is the showcase).
pub const DISTINGUISHER_MAX_STATES: usize = 9;
/// Depth bound for distinguisher enumeration.
pub const DISTINGUISHER_MAX_DEPTH: usize = 4;

/// The partition induced by every fragment formula up to the given depth.
///
/// Starting from the label partition, each round generates the fragment's
/// quantified formulas over all unions of current blocks and splits blocks
/// by their satisfaction sets; two states end in the same block iff no
/// generated formula separates them. Each splitting formula is recorded.
/// Satisfaction sets are computed by the checker's own evaluators applied
/// to the materialized operand sets, which is exactly how the checker
/// evaluates the corresponding formula text.
pub fn enumerate_distinguishers(
    m: &Mdp,
    fragment: Fragment,
    depth: usize,
) -> Result<(crate::equivalence::Partition, Vec<FoundDistinguisher>), OracleError> {
    use crate::checker::{ex_next, ex_until};
    use crate::equivalence::Partition;

    if m.n_states() > DISTINGUISHER_MAX_STATES {
        return Err(OracleError::BoundExceeded(format!(
            "model has {} states, above the enumeration bound of {DISTINGUISHER_MAX_STATES}",
            m.n_states()
        )));
    }
    if depth > DISTINGUISHER_MAX_DEPTH {
        return Err(OracleError::BoundExceeded(format!(
            "depth {depth} is above the enumeration bound of {DISTINGUISHER_MAX_DEPTH}"
        )));
    }

    // Blocks with defining formula texts; the initial classes are defined by
    // their label literals.
    let mut blocks: Vec<(StateSet, String)> = crate::equivalence::initial_partition(m)
        .blocks()
        .iter()
        .map(|b| (b.clone(), label_literals(m, b)))
        .collect();
    let mut found = Vec::new();

    for round in 1..=depth {
        // Snapshot: candidates are generated from the round-start blocks.
        let snapshot: Vec<(StateSet, String)> = blocks.clone();
        let k = snapshot.len();
        let union_of = |mask: u32| -> (StateSet, String) {
            let mut set = StateSet::new(m.n_states());
            let mut parts = Vec::new();
            for (i, (b, text)) in snapshot.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    set.union_with(b);
                    parts.push(text.clone());
                }
            }
            (set, parts.join(" | "))
        };
        let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
        masks.sort_by_key(|&mask| (mask.count_ones(), mask));
        let full = (1u32 << k) - 1;

        let mut candidates: Vec<(StateSet, String)> = Vec::new();
        for &mask in masks.iter().filter(|&&mask| mask != full) {
            let (u, text) = union_of(mask);
            candidates.push((
                ex_next(Mode::Positive, m, &u),
                format!("Epos X ({text})"),
            ));
            candidates.push((ex_next(Mode::Sure, m, &u), format!("Esure X ({text})")));
        }
        if fragment == Fragment::Positive {
            let mut pairs: Vec<(u32, u32)> = Vec::new();
            for &m1 in &masks {
                for &m2 in masks.iter().filter(|&&m2| m2 != full) {
                    pairs.push((m1, m2));
                }
            }
            pairs.sort_by_key(|&(m1, m2)| (m1.count_ones() + m2.count_ones(), m1, m2));
            for (m1, m2) in pairs {
                let (u1, t1) = union_of(m1);
                let (u2, t2) = union_of(m2);
                let sat = ex_until(Mode::Almost, m, &u1, &u2)
                    .expect("until fixpoints converge");
                let t1 = if m1 == full { "true".to_string() } else { t1 };
                candidates.push((sat, format!("Eas (({t1}) U ({t2}))")));
            }
        }

        let mut split_this_round = false;
        for (sat, text) in candidates {
            let mut caused_split = false;
            let mut next_blocks = Vec::with_capacity(blocks.len() + 1);
            for (set, formula) in blocks.drain(..) {
                let inside = set.intersect(&sat);
                if inside.is_empty() || inside == set {
                    next_blocks.push((set, formula));
                    continue;
                }
                let outside = set.minus(&sat);
                next_blocks.push((inside, format!("({formula}) & ({text})")));
                next_blocks.push((outside, format!("({formula}) & !({text})")));
                caused_split = true;
            }
            blocks = next_blocks;
            if caused_split {
                split_this_round = true;
                found.push(FoundDistinguisher {
                    depth: round,
                    formula: text,
                });
            }
        }
        if !split_this_round {
            break;
        }
    }

    let partition = Partition::from_blocks(
        m.n_states(),
        blocks.into_iter().map(|(set, _)| set).collect(),
    );
    Ok((partition, found))
}

/// The conjunction of label literals defining a label class.
fn label_literals(m: &Mdp, block: &StateSet) -> String {
    let witness = block.iter().next().expect("blocks are nonempty");
    let literals: Vec<String> = (0..m.props().len())
        .map(|p| {
            if m.has_prop(witness, p) {
                m.props()[p].clone()
            } else {
                format!("!{}", m.props()[p])
            }
        })
        .collect();
    if literals.is_empty() {
        "true".to_string()
    } else {
        literals.join(" & ")
    }
}
