//! State sets, predecessor operators, and bounded fixed-point iteration.
//!
//! All set-valued computations in the checker run over [`StateSet`] bit sets
//! indexed by state position. The three predecessor operators defined here are
//! the complete basis used everywhere else:
//!
//! * [`pre`]: some action reaches the set with positive probability,
//! * [`cpre`]: some action reaches the set with certainty (all destinations
//!   inside),
//! * [`apre`]: some action stays inside one set with certainty while touching
//!   another with positive probability (`apre(y, y) == cpre(y)`).
//!
//! [`lfp`] and [`gfp`] iterate a monotone transformer from the empty/full set
//! and fail with [`FixpointError::NonConvergence`] instead of looping if the
//! transformer was not monotone (a monotone transformer over `n` states always
//! converges within `n + 1` applications).

use crate::mdp::Mdp;
use thiserror::Error;

/// A set of states, stored as a bit vector over state indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    n: usize,
    words: Vec<u64>,
}

impl StateSet {
    /// Empty set over a universe of `n` states.
    pub fn new(n: usize) -> StateSet {
        StateSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// Full set over a universe of `n` states.
    pub fn full(n: usize) -> StateSet {
        let mut s = StateSet::new(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    /// Singleton `{i}` over a universe of `n` states.
    pub fn singleton(n: usize, i: usize) -> StateSet {
        let mut s = StateSet::new(n);
        s.insert(i);
        s
    }

    /// Builds a set from state indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> StateSet {
        let mut s = StateSet::new(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the universe this set ranges over.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn minus(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> StateSet {
        let mut out = StateSet::full(self.n);
        for (a, b) in out.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// True when the two sets share at least one state.
    pub fn intersects(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Iterates member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.contains(i))
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &StateSet, f: impl Fn(u64, u64) -> u64) -> StateSet {
        debug_assert_eq!(self.n, other.n);
        StateSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl std::fmt::Debug for StateSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixpointError {
    /// The transformer did not reach a fixed point within the permitted
    /// number of applications (universe size + 1); it cannot be monotone.
    #[error("fixed-point iteration did not converge within {0} applications")]
    NonConvergence(usize),
}

/// States with an action whose destinations intersect `x`.
pub fn pre(m: &Mdp, x: &StateSet) -> StateSet {
    let mut out = StateSet::new(m.n_states());
    for s in 0..m.n_states() {
        if m.moves(s)
            .iter()
            .any(|mv| mv.dist.iter().any(|&(t, _)| x.contains(t)))
        {
            out.insert(s);
        }
    }
    out
}

/// States with an action whose destinations are all inside `x`.
pub fn cpre(m: &Mdp, x: &StateSet) -> StateSet {
    let mut out = StateSet::new(m.n_states());
    for s in 0..m.n_states() {
        if m.moves(s)
            .iter()
            .any(|mv| mv.dist.iter().all(|&(t, _)| x.contains(t)))
        {
            out.insert(s);
        }
    }
    out
}

/// States with an action whose destinations are all inside `y` and intersect
/// `x`. `apre(y, y)` coincides with `cpre(y)`.
pub fn apre(m: &Mdp, y: &StateSet, x: &StateSet) -> StateSet {
    let mut out = StateSet::new(m.n_states());
    for s in 0..m.n_states() {
        if m.moves(s).iter().any(|mv| {
            mv.dist.iter().all(|&(t, _)| y.contains(t))
                && mv.dist.iter().any(|&(t, _)| x.contains(t))
        }) {
            out.insert(s);
        }
    }
    out
}

/// Least fixed point of `f` from the empty set over `n` states.
pub fn lfp(
    n: usize,
    mut f: impl FnMut(&StateSet) -> StateSet,
) -> Result<StateSet, FixpointError> {
    let mut cur = StateSet::new(n);
    for _ in 0..=n {
        let next = f(&cur);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(FixpointError::NonConvergence(n + 1))
}

/// Greatest fixed point of `f` from the full set over `n` states.
pub fn gfp(
    n: usize,
    mut f: impl FnMut(&StateSet) -> StateSet,
) -> Result<StateSet, FixpointError> {
    let mut cur = StateSet::full(n);
    for _ in 0..=n {
        let next = f(&cur);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(FixpointError::NonConvergence(n + 1))
}
