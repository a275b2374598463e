//! Fixpoint-based evaluation of qualitative randomized CTL.
//!
//! [`check`] evaluates a state formula bottom-up. Universal quantifiers are
//! first rewritten existentially by [`dualize`], so a single family of
//! existential schemata covers all eight quantifiers:
//!
//! - next: `cpre` for the certainty modes (sure, almost), `pre` for the
//!   possibility modes (positive, feasible);
//! - until: least fixpoints, with the almost mode as a nested
//!   greatest/least fixpoint over `apre`;
//! - wait-for: greatest fixpoints; the positive mode reduces to a positive
//!   until whose target adds the states where the first operand can be
//!   maintained forever on all paths.
//!
//! The wait-for anchor is inclusive: a path satisfies `q W r` when either
//! `q` holds forever, or some position satisfies `r` with `q` holding at
//! every position up to and including it. The greatest fixpoints below
//! therefore intersect the whole body with the first operand.

use crate::fixpoint::{apre, cpre, gfp, lfp, pre, FixpointError, StateSet};
use crate::formula::{dualize, path_as_state, Mode, PathFormula, Polarity, StateFormula};
use crate::mdp::{AlternationCheck, Mdp};
use thiserror::Error;

/// Errors reported by the checker.
#[derive(Debug, Error)]
pub enum CheckError {
    /// The formula nests temporal operators without an intervening
    /// quantifier, so the plain checker cannot evaluate it.
    #[error(
        "formula is outside the checkable fragment: every temporal operator \
         must sit directly under a quantifier with temporal-free operands"
    )]
    NotQrctl,
    /// The formula mentions a proposition the model does not declare.
    #[error("proposition '{0}' is not declared by the model")]
    UndeclaredProposition(String),
    /// A fixpoint iteration failed to converge (impossible for the monotone
    /// transformers used here; kept as an honest error path).
    #[error(transparent)]
    Fixpoint(#[from] FixpointError),
    /// A construct restricted to alternating models was applied elsewhere.
    #[error("model is not alternating: {0}")]
    NotAlternating(String),
}

/// One step of evaluation: a quantified subformula (after normalization)
/// together with its satisfying set.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub formula: String,
    pub states: StateSet,
}

/// Evaluates a state formula, returning its satisfying set.
///
/// The formula is normalized by [`dualize`] first, so universally
/// quantified and negated temporal shapes are accepted whenever their
/// normal form lies in the checkable fragment.
pub fn check(m: &Mdp, f: &StateFormula) -> Result<StateSet, CheckError> {
    let normalized = dualize(f);
    eval_state(m, &normalized, &mut None)
}

/// Like [`check`], but also records each quantified subformula of the
/// normalized formula with its satisfying set, innermost first.
pub fn check_with_trace(
    m: &Mdp,
    f: &StateFormula,
) -> Result<(StateSet, Vec<TraceEntry>), CheckError> {
    let normalized = dualize(f);
    let mut trace = Some(Vec::new());
    let states = eval_state(m, &normalized, &mut trace)?;
    Ok((states, trace.unwrap_or_default()))
}

fn eval_state(
    m: &Mdp,
    f: &StateFormula,
    trace: &mut Option<Vec<TraceEntry>>,
) -> Result<StateSet, CheckError> {
    match f {
        StateFormula::True => Ok(m.full_set()),
        StateFormula::Atom(name) => {
            let prop = m
                .prop_index(name)
                .ok_or_else(|| CheckError::UndeclaredProposition(name.clone()))?;
            Ok(m.states_with_prop(prop))
        }
        StateFormula::Not(inner) => Ok(eval_state(m, inner, trace)?.complement()),
        StateFormula::Or(a, b) => {
            let left = eval_state(m, a, trace)?;
            let right = eval_state(m, b, trace)?;
            Ok(left.union(&right))
        }
        StateFormula::Quant(q, path) => {
            if q.polarity == Polarity::Forall {
                // Not produced by the top-level normalization, but callers
                // may evaluate subformulas directly; rewrite locally.
                let rewritten = dualize(f);
                return eval_state(m, &rewritten, trace);
            }
            let states = eval_exists(m, q.mode, path, trace)?;
            if let Some(entries) = trace {
                entries.push(TraceEntry {
                    formula: f.to_string(),
                    states: states.clone(),
                });
            }
            Ok(states)
        }
    }
}

fn eval_exists(
    m: &Mdp,
    mode: Mode,
    path: &PathFormula,
    trace: &mut Option<Vec<TraceEntry>>,
) -> Result<StateSet, CheckError> {
    // A quantifier over a temporal-free path formula is decided at the first
    // position, so every mode degenerates to plain state evaluation.
    if let Some(sf) = path_as_state(path) {
        return eval_state(m, &sf, trace);
    }
    match path {
        PathFormula::Next(op) => {
            let q = operand(m, op, trace)?;
            Ok(ex_next(mode, m, &q))
        }
        PathFormula::Until(a, b) => {
            let q = operand(m, a, trace)?;
            let r = operand(m, b, trace)?;
            ex_until(mode, m, &q, &r)
        }
        PathFormula::WaitFor(a, b) => {
            let q = operand(m, a, trace)?;
            let r = operand(m, b, trace)?;
            ex_wait(mode, m, &q, &r)
        }
        _ => Err(CheckError::NotQrctl),
    }
}

fn operand(
    m: &Mdp,
    path: &PathFormula,
    trace: &mut Option<Vec<TraceEntry>>,
) -> Result<StateSet, CheckError> {
    let sf = path_as_state(path).ok_or(CheckError::NotQrctl)?;
    eval_state(m, &sf, trace)
}

/// Satisfying set of an existentially quantified next step.
pub fn ex_next(mode: Mode, m: &Mdp, q: &StateSet) -> StateSet {
    match mode {
        Mode::Sure | Mode::Almost => cpre(m, q),
        Mode::Positive | Mode::Feasible => pre(m, q),
    }
}

/// Satisfying set of an existentially quantified until.
pub fn ex_until(mode: Mode, m: &Mdp, q: &StateSet, r: &StateSet) -> Result<StateSet, CheckError> {
    let n = m.n_states();
    match mode {
        Mode::Sure => Ok(lfp(n, |x| r.union(&q.intersect(&cpre(m, x))))?),
        Mode::Positive | Mode::Feasible => Ok(lfp(n, |x| r.union(&q.intersect(&pre(m, x))))?),
        Mode::Almost => {
            // Greatest fixpoint over y of the least fixpoint over x of
            // r ∪ (q ∩ apre(y, x)); the outer iterate descends from the
            // full set and stabilizes within n steps.
            let mut y = m.full_set();
            for _ in 0..=n {
                let x = lfp(n, |xs| r.union(&q.intersect(&apre(m, &y, xs))))?;
                if x == y {
                    return Ok(y);
                }
                y = x;
            }
            Err(FixpointError::NonConvergence(n + 1).into())
        }
    }
}

/// Satisfying set of an existentially quantified wait-for.
pub fn ex_wait(mode: Mode, m: &Mdp, q: &StateSet, r: &StateSet) -> Result<StateSet, CheckError> {
    let n = m.n_states();
    match mode {
        Mode::Sure | Mode::Almost => Ok(gfp(n, |y| q.intersect(&r.union(&cpre(m, y))))?),
        Mode::Feasible => Ok(gfp(n, |y| q.intersect(&r.union(&pre(m, y))))?),
        Mode::Positive => {
            // Wait-for holds with positive probability iff the until part
            // can anchor (both operands at once), or a region where the
            // first operand holds forever on all paths is reachable through
            // first-operand states.
            let forever = gfp(n, |y| q.intersect(&cpre(m, y)))?;
            let target = r.intersect(q).union(&forever);
            ex_until(Mode::Positive, m, q, &target)
        }
    }
}

/// One-step predecessor combining certainty on the first operand with a
/// chance of the second, expressed through single-step quantifiers only:
/// `cpre(φ∩ψ) ∪ ({s : E(s) ⊆ φ} ∩ {s : every move meets ψ})`.
///
/// On alternating models this coincides with [`apre`]; elsewhere the two may
/// diverge, which is why [`eval_F_apre`] insists on alternation while this
/// raw version stays available for demonstrating the divergence.
pub fn f_apre_raw(m: &Mdp, phi: &StateSet, psi: &StateSet) -> StateSet {
    let mut out = cpre(m, &phi.intersect(psi));
    for s in 0..m.n_states() {
        if out.contains(s) {
            continue;
        }
        let all_inside = m
            .moves(s)
            .iter()
            .all(|mv| mv.dist.iter().all(|&(t, _)| phi.contains(t)));
        let each_meets = m
            .moves(s)
            .iter()
            .all(|mv| mv.dist.iter().any(|&(t, _)| psi.contains(t)));
        if all_inside && each_meets {
            out.insert(s);
        }
    }
    out
}

/// The combinator of [`f_apre_raw`], guarded so it is only applied where it
/// provably equals [`apre`]: on alternating models.
#[allow(non_snake_case)]
pub fn eval_F_apre(m: &Mdp, phi: &StateSet, psi: &StateSet) -> Result<StateSet, CheckError> {
    match m.check_alternating() {
        AlternationCheck::Accepted(_) => Ok(f_apre_raw(m, phi, psi)),
        AlternationCheck::Rejected(violations) => {
            let first = violations
                .first()
                .map(|v| format!("state '{}': {}", v.state, v.detail))
                .unwrap_or_else(|| "unknown violation".to_string());
            Err(CheckError::NotAlternating(format!(
                "{} ({} violation(s) total)",
                first,
                violations.len()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::formula::{parse, Mode, PathFormula, Polarity, Quantifier, StateFormula};
    use crate::oracle::{qualitative_verdict, OracleLimits, PathEvent};

    fn set(m: &Mdp, names: &[&str]) -> StateSet {
        let mut out = m.empty_set();
        for name in names {
            out.insert(m.state_index(name).unwrap());
        }
        out
    }

    fn run(m: &Mdp, text: &str) -> StateSet {
        check(m, &parse(text).unwrap()).unwrap()
    }

    #[test]
    fn two_state_chain_reachability_verdicts() {
        let m = corpus::two_state_chain();
        assert_eq!(run(&m, "Eas F r"), m.full_set());
        assert_eq!(run(&m, "Asure F r"), set(&m, &["t"]));
        assert_eq!(run(&m, "Asure F q"), set(&m, &["s"]));
        assert_eq!(run(&m, "Esure F r"), set(&m, &["t"]));
    }

    #[test]
    fn wait_for_requires_the_anchor_to_satisfy_both_operands() {
        let m = corpus::two_state_chain();
        // r holds only at t, which is not a q-state, so the anchored branch
        // never fires; only the stay-in-q-forever branch remains.
        assert_eq!(run(&m, "Eex (q W r)"), set(&m, &["s"]));
        assert!(run(&m, "Epos (q W r)").is_empty());
        assert!(run(&m, "Eas (q W r)").is_empty());
        assert!(run(&m, "Esure (q W r)").is_empty());
    }

    #[test]
    fn always_operator_reduces_to_wait_for_with_empty_anchor() {
        let m = corpus::retry_vs_one_shot();
        // Only the absorbing q-state u can maintain q forever; s merely
        // passes through q-states with interruptions.
        assert_eq!(run(&m, "Esure G q"), set(&m, &["u"]));
        assert_eq!(run(&m, "Eex G q"), set(&m, &["u"]));
    }

    #[test]
    fn negated_temporal_shapes_normalize_before_fragment_checks() {
        let m = corpus::two_state_chain();
        let direct = run(&m, "Eas !(q U r)");
        let rewritten = run(&m, "Eas (!r W !q)");
        assert_eq!(direct, rewritten);
    }

    #[test]
    fn nested_temporal_operators_without_quantifiers_are_rejected() {
        let m = corpus::two_state_chain();
        for text in ["Eas (X q U r)", "Esure (q U (r U q))", "Apos X X q"] {
            let f = parse(text).unwrap();
            assert!(matches!(check(&m, &f), Err(CheckError::NotQrctl)), "{text}");
        }
    }

    #[test]
    fn undeclared_propositions_are_reported() {
        let m = corpus::two_state_chain();
        let f = parse("Eas F missing").unwrap();
        assert!(matches!(
            check(&m, &f),
            Err(CheckError::UndeclaredProposition(p)) if p == "missing"
        ));
    }

    #[test]
    fn retry_gadget_checker_verdicts() {
        let m = corpus::retry_vs_one_shot();
        assert_eq!(run(&m, "Eas F q"), set(&m, &["s", "u"]));
        assert_eq!(run(&m, "Esure F q"), set(&m, &["u"]));
        assert_eq!(run(&m, "Epos F q"), set(&m, &["s", "t", "u"]));
    }

    #[test]
    fn checker_agrees_with_oracle_on_small_corpus() {
        let limits = OracleLimits {
            max_states: 9,
            ..OracleLimits::default()
        };
        for m in corpus::small_models() {
            if m.n_states() > limits.max_states {
                continue;
            }
            // Operands: `true` plus each declared proposition.
            let mut operands: Vec<(StateFormula, StateSet)> =
                vec![(StateFormula::True, m.full_set())];
            for (i, p) in m.props().iter().enumerate() {
                operands.push((StateFormula::atom(p), m.states_with_prop(i)));
            }
            for (qf, qs) in &operands {
                for (rf, rs) in &operands {
                    let shapes = [
                        (
                            PathFormula::next(PathFormula::embed(qf.clone())),
                            PathEvent::Next(qs.clone()),
                        ),
                        (
                            PathFormula::until(
                                PathFormula::embed(qf.clone()),
                                PathFormula::embed(rf.clone()),
                            ),
                            PathEvent::Until(qs.clone(), rs.clone()),
                        ),
                        (
                            PathFormula::wait_for(
                                PathFormula::embed(qf.clone()),
                                PathFormula::embed(rf.clone()),
                            ),
                            PathEvent::WaitFor(qs.clone(), rs.clone()),
                        ),
                    ];
                    for (path, event) in &shapes {
                        let table = qualitative_verdict(&m, event, &limits).unwrap();
                        for quant in Quantifier::ALL {
                            let f = StateFormula::quant(quant, path.clone());
                            let analytic = check(&m, &f).unwrap();
                            assert_eq!(
                                analytic,
                                *table.get(quant),
                                "disagreement on {} over {:?}",
                                f,
                                m.names_of(&m.full_set())
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dualization_is_semantically_transparent() {
        let m = corpus::retry_vs_one_shot();
        for text in [
            "Asure F q",
            "Aas (q U !q)",
            "Apos X q",
            "Aex (q W !q)",
            "!Eas F q",
            "Esure X (q | !q)",
        ] {
            let f = parse(text).unwrap();
            let d = crate::formula::dualize(&f);
            assert_eq!(check(&m, &f).unwrap(), check(&m, &d).unwrap(), "{text}");
        }
    }

    #[test]
    fn next_modes_collapse_pairwise() {
        for m in corpus::small_models() {
            for prop in 0..m.props().len() {
                let q = m.states_with_prop(prop);
                assert_eq!(ex_next(Mode::Sure, &m, &q), ex_next(Mode::Almost, &m, &q));
                assert_eq!(
                    ex_next(Mode::Positive, &m, &q),
                    ex_next(Mode::Feasible, &m, &q)
                );
            }
        }
    }

    #[test]
    fn trace_lists_quantified_subformulas_innermost_first() {
        let m = corpus::retry_vs_one_shot();
        let f = parse("Epos X Eas F q").unwrap();
        let (states, trace) = check_with_trace(&m, &f).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].formula, "Eas F q");
        assert_eq!(trace[0].states, set(&m, &["s", "u"]));
        assert_eq!(trace[1].states, states);
    }

    #[test]
    fn one_step_combinator_diverges_from_apre_off_alternating_models() {
        let m = corpus::retry_vs_one_shot();
        let phi = set(&m, &["s", "u"]);
        let psi = set(&m, &["u"]);
        let via_apre = apre(&m, &phi, &psi);
        let via_combinator = f_apre_raw(&m, &phi, &psi);
        assert!(via_apre.contains(m.state_index("s").unwrap()));
        assert!(!via_combinator.contains(m.state_index("s").unwrap()));
        assert!(matches!(
            eval_F_apre(&m, &phi, &psi),
            Err(CheckError::NotAlternating(_))
        ));
    }

    #[test]
    fn one_step_combinator_matches_apre_on_alternating_models() {
        let base = corpus::convex_choice();
        let m = base.alternate().unwrap();
        let n = m.n_states();
        let mut pairs: Vec<(StateSet, StateSet)> = vec![
            (m.empty_set(), m.empty_set()),
            (m.full_set(), m.full_set()),
            (m.full_set(), m.empty_set()),
        ];
        for a in 0..n {
            for b in 0..n {
                pairs.push((StateSet::singleton(n, a), StateSet::singleton(n, b)));
            }
        }
        for (phi, psi) in &pairs {
            assert_eq!(
                eval_F_apre(&m, phi, psi).unwrap(),
                apre(&m, phi, psi),
                "phi={:?} psi={:?}",
                m.names_of(phi),
                m.names_of(psi)
            );
        }
    }

    #[test]
    fn chain_line_reachability_shapes() {
        let m = corpus::chain_line(64);
        assert_eq!(run(&m, "Epos (true U goal)"), m.full_set());
        assert_eq!(run(&m, "Eas (true U goal)"), m.full_set());
        assert_eq!(run(&m, "Esure (true U goal)"), set(&m, &["s63"]));
    }

    #[test]
    fn universal_quantifier_of_state_operand_is_state_evaluation() {
        let m = corpus::convex_choice();
        let q = Quantifier::new(Polarity::Forall, Mode::Almost);
        let f = StateFormula::quant(q, PathFormula::embed(StateFormula::atom("q")));
        assert_eq!(check(&m, &f).unwrap(), set(&m, &["u"]));
    }
}
