//! Formula syntax: state formulas, path formulas, and the eight path
//! quantifiers.
//!
//! A state formula is boolean logic over atomic propositions plus quantified
//! path formulas; a path formula adds the temporal operators `X` (next),
//! `U` (until), and `W` (wait-for, the weak until: either the first operand
//! holds forever, or it holds up to and including a position satisfying the
//! second). Quantifiers pair a strategy polarity (`E` — some strategy, `A` —
//! all strategies) with a path mode:
//!
//! * `sure` — every feasible path satisfies the formula,
//! * `as` — the formula holds with probability one (almost surely),
//! * `pos` — the formula holds with positive probability,
//! * `ex` — some feasible path satisfies the formula, probability ignored.
//!
//! Concrete syntax accepted by [`parse`]: quantifier tokens `Esure`, `Eas`,
//! `Epos`, `Eex`, `Asure`, `Aas`, `Apos`, `Aex` (with game-theoretic aliases
//! `<1>`, `<1,p>`, `<p>`, `<0>`), operators `! & | ->`, temporal `X U W` and
//! the sugar `F φ = true U φ`, `G φ = φ W !true`. Precedence, tightest
//! first: unary (`!`, `X`, `F`, `G`), then `U`/`W` (right-associative), then
//! `&`, then `|`, then `->`. A quantifier is followed by a parenthesized
//! path formula or by a unary-level one (`Eas F r` works, `Eas (q U r)`
//! needs the parentheses).
//!
//! There is no conjunction node: `&` and `->` desugar into `!` and `|`, so
//! the core enums stay minimal. [`print`] (also available through
//! `Display`) emits canonical syntax with minimal parentheses such that
//! `parse(print(f)) == f` for every parser-produced formula.

mod parse;

pub use parse::{parse, ParseError};

use std::fmt;

/// Strategy polarity of a quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Some strategy.
    Exists,
    /// All strategies.
    Forall,
}

/// Path mode of a quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Every feasible path.
    Sure,
    /// With probability one.
    Almost,
    /// With positive probability.
    Positive,
    /// Some feasible path, probability ignored.
    Feasible,
}

/// A path quantifier: polarity plus mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quantifier {
    pub polarity: Polarity,
    pub mode: Mode,
}

impl Quantifier {
    pub const fn new(polarity: Polarity, mode: Mode) -> Quantifier {
        Quantifier { polarity, mode }
    }

    /// All eight quantifiers, `E` row first.
    pub const ALL: [Quantifier; 8] = [
        Quantifier::new(Polarity::Exists, Mode::Sure),
        Quantifier::new(Polarity::Exists, Mode::Almost),
        Quantifier::new(Polarity::Exists, Mode::Positive),
        Quantifier::new(Polarity::Exists, Mode::Feasible),
        Quantifier::new(Polarity::Forall, Mode::Sure),
        Quantifier::new(Polarity::Forall, Mode::Almost),
        Quantifier::new(Polarity::Forall, Mode::Positive),
        Quantifier::new(Polarity::Forall, Mode::Feasible),
    ];

    /// The dual quantifier: `⟦Q φ⟧ = ⟦!(dual(Q) !φ)⟧`. Polarity flips and
    /// the mode swaps sure↔ex and as↔pos.
    pub fn dual(self) -> Quantifier {
        let polarity = match self.polarity {
            Polarity::Exists => Polarity::Forall,
            Polarity::Forall => Polarity::Exists,
        };
        let mode = match self.mode {
            Mode::Sure => Mode::Feasible,
            Mode::Feasible => Mode::Sure,
            Mode::Almost => Mode::Positive,
            Mode::Positive => Mode::Almost,
        };
        Quantifier::new(polarity, mode)
    }

    /// Canonical token, e.g. `Eas`.
    pub fn token(self) -> &'static str {
        match (self.polarity, self.mode) {
            (Polarity::Exists, Mode::Sure) => "Esure",
            (Polarity::Exists, Mode::Almost) => "Eas",
            (Polarity::Exists, Mode::Positive) => "Epos",
            (Polarity::Exists, Mode::Feasible) => "Eex",
            (Polarity::Forall, Mode::Sure) => "Asure",
            (Polarity::Forall, Mode::Almost) => "Aas",
            (Polarity::Forall, Mode::Positive) => "Apos",
            (Polarity::Forall, Mode::Feasible) => "Aex",
        }
    }

    /// Parses a canonical token or one of the game-theoretic aliases
    /// (`<1>` = `Esure`, `<1,p>` = `Eex`, `<p>` = `Aex`, `<0>` = `Asure`).
    pub fn from_token(tok: &str) -> Option<Quantifier> {
        let q = |p, m| Some(Quantifier::new(p, m));
        match tok {
            "Esure" | "<1>" => q(Polarity::Exists, Mode::Sure),
            "Eas" => q(Polarity::Exists, Mode::Almost),
            "Epos" => q(Polarity::Exists, Mode::Positive),
            "Eex" | "<1,p>" => q(Polarity::Exists, Mode::Feasible),
            "Asure" | "<0>" => q(Polarity::Forall, Mode::Sure),
            "Aas" => q(Polarity::Forall, Mode::Almost),
            "Apos" => q(Polarity::Forall, Mode::Positive),
            "Aex" | "<p>" => q(Polarity::Forall, Mode::Feasible),
            _ => None,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A state formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateFormula {
    True,
    Atom(String),
    Not(Box<StateFormula>),
    Or(Box<StateFormula>, Box<StateFormula>),
    Quant(Quantifier, Box<PathFormula>),
}

/// A path formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathFormula {
    /// A state formula evaluated at the current position.
    Embed(StateFormula),
    Not(Box<PathFormula>),
    Or(Box<PathFormula>, Box<PathFormula>),
    Next(Box<PathFormula>),
    Until(Box<PathFormula>, Box<PathFormula>),
    WaitFor(Box<PathFormula>, Box<PathFormula>),
}

impl StateFormula {
    pub fn atom(name: &str) -> StateFormula {
        StateFormula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> StateFormula {
        StateFormula::Not(Box::new(self))
    }

    pub fn or(self, other: StateFormula) -> StateFormula {
        StateFormula::Or(Box::new(self), Box::new(other))
    }

    /// Conjunction, desugared to `!(!a | !b)`.
    pub fn and(self, other: StateFormula) -> StateFormula {
        self.not().or(other.not()).not()
    }

    /// Implication, desugared to `!a | b`.
    pub fn implies(self, other: StateFormula) -> StateFormula {
        self.not().or(other)
    }

    pub fn quant(q: Quantifier, path: PathFormula) -> StateFormula {
        StateFormula::Quant(q, Box::new(path))
    }
}

impl PathFormula {
    pub fn embed(f: StateFormula) -> PathFormula {
        PathFormula::Embed(f)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> PathFormula {
        PathFormula::Not(Box::new(self))
    }

    pub fn or(self, other: PathFormula) -> PathFormula {
        PathFormula::Or(Box::new(self), Box::new(other))
    }

    /// Conjunction, desugared to `!(!a | !b)`.
    pub fn and(self, other: PathFormula) -> PathFormula {
        self.not().or(other.not()).not()
    }

    pub fn next(self) -> PathFormula {
        PathFormula::Next(Box::new(self))
    }

    pub fn until(self, other: PathFormula) -> PathFormula {
        PathFormula::Until(Box::new(self), Box::new(other))
    }

    pub fn wait_for(self, other: PathFormula) -> PathFormula {
        PathFormula::WaitFor(Box::new(self), Box::new(other))
    }

    /// `F φ`, desugared to `true U φ`.
    pub fn eventually(self) -> PathFormula {
        PathFormula::Embed(StateFormula::True).until(self)
    }

    /// `G φ`, desugared to `φ W !true`.
    pub fn always(self) -> PathFormula {
        self.wait_for(PathFormula::Embed(StateFormula::True).not())
    }
}

/// Collapses a path formula that contains no temporal operator into the
/// equivalent state formula, if possible.
pub fn path_as_state(p: &PathFormula) -> Option<StateFormula> {
    match p {
        PathFormula::Embed(f) => Some(f.clone()),
        PathFormula::Not(a) => Some(path_as_state(a)?.not()),
        PathFormula::Or(a, b) => Some(path_as_state(a)?.or(path_as_state(b)?)),
        _ => None,
    }
}

/// Syntactic fragments a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Every temporal operator sits immediately beneath a quantifier, with
    /// temporal-free operands.
    pub qrctl: bool,
    /// Always true: the full logic admits every well-formed formula.
    pub qrctl_star: bool,
    /// In the restricted fragment *and* only `pos`-mode quantifiers.
    pub qrctl_pos: bool,
    /// In the restricted fragment *and* only `sure`-mode quantifiers.
    pub qrctl_sure: bool,
    /// In the restricted fragment with `X` as the only temporal operator.
    pub next_only: bool,
}

impl Classification {
    /// Human-readable tags, used by the command-line front end.
    pub fn tags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.qrctl {
            out.push("QRCTL");
        }
        out.push("QRCTL*");
        if self.qrctl_pos {
            out.push("QRCTLpos");
        }
        if self.qrctl_sure {
            out.push("QRCTLsure");
        }
        if self.next_only {
            out.push("next-only");
        }
        out
    }
}

/// Classifies a formula into the syntactic fragments. Strictly syntactic: a
/// negation above a temporal operator disqualifies the restricted fragment
/// even when it could be rewritten away (see [`dualize`]).
pub fn classify(f: &StateFormula) -> Classification {
    fn state_ok(f: &StateFormula) -> bool {
        match f {
            StateFormula::True | StateFormula::Atom(_) => true,
            StateFormula::Not(a) => state_ok(a),
            StateFormula::Or(a, b) => state_ok(a) && state_ok(b),
            StateFormula::Quant(_, p) => path_ok(p),
        }
    }
    // Temporal-free path whose embedded state formulas are in the fragment.
    fn operand_ok(p: &PathFormula) -> bool {
        match p {
            PathFormula::Embed(f) => state_ok(f),
            PathFormula::Not(a) => operand_ok(a),
            PathFormula::Or(a, b) => operand_ok(a) && operand_ok(b),
            _ => false,
        }
    }
    fn path_ok(p: &PathFormula) -> bool {
        match p {
            PathFormula::Next(a) => operand_ok(a),
            PathFormula::Until(a, b) | PathFormula::WaitFor(a, b) => {
                operand_ok(a) && operand_ok(b)
            }
            _ => operand_ok(p),
        }
    }
    fn collect_modes(f: &StateFormula, out: &mut Vec<Mode>) {
        match f {
            StateFormula::True | StateFormula::Atom(_) => {}
            StateFormula::Not(a) => collect_modes(a, out),
            StateFormula::Or(a, b) => {
                collect_modes(a, out);
                collect_modes(b, out);
            }
            StateFormula::Quant(q, p) => {
                out.push(q.mode);
                collect_modes_path(p, out);
            }
        }
    }
    fn collect_modes_path(p: &PathFormula, out: &mut Vec<Mode>) {
        match p {
            PathFormula::Embed(f) => collect_modes(f, out),
            PathFormula::Not(a) | PathFormula::Next(a) => collect_modes_path(a, out),
            PathFormula::Or(a, b)
            | PathFormula::Until(a, b)
            | PathFormula::WaitFor(a, b) => {
                collect_modes_path(a, out);
                collect_modes_path(b, out);
            }
        }
    }
    fn has_until_or_wait(f: &StateFormula) -> bool {
        fn in_path(p: &PathFormula) -> bool {
            match p {
                PathFormula::Embed(f) => has_until_or_wait(f),
                PathFormula::Not(a) | PathFormula::Next(a) => in_path(a),
                PathFormula::Or(a, b) => in_path(a) || in_path(b),
                PathFormula::Until(..) | PathFormula::WaitFor(..) => true,
            }
        }
        match f {
            StateFormula::True | StateFormula::Atom(_) => false,
            StateFormula::Not(a) => has_until_or_wait(a),
            StateFormula::Or(a, b) => has_until_or_wait(a) || has_until_or_wait(b),
            StateFormula::Quant(_, p) => in_path(p),
        }
    }

    let qrctl = state_ok(f);
    let mut modes = Vec::new();
    collect_modes(f, &mut modes);
    Classification {
        qrctl,
        qrctl_star: true,
        qrctl_pos: qrctl && modes.iter().all(|&m| m == Mode::Positive),
        qrctl_sure: qrctl && modes.iter().all(|&m| m == Mode::Sure),
        next_only: qrctl && !has_until_or_wait(f),
    }
}

/// Rewrites a formula so that only `E`-polarity quantifiers remain, pushing
/// the induced path negations through the temporal operators:
///
/// * `A⋆ φ` becomes `!E⋆' !φ` with the dual mode (sure↔ex, as↔pos),
/// * `!(φ U ψ)` becomes `!ψ W !φ` and `!(φ W ψ)` becomes `!ψ U !φ`,
/// * `!X φ` becomes `X !φ`, and double negations cancel.
///
/// The rewrite preserves meaning on every formula and preserves membership
/// in the restricted fragment; it is the normalization step the checker
/// applies before pattern-matching a quantified path.
pub fn dualize(f: &StateFormula) -> StateFormula {
    match f {
        StateFormula::True => StateFormula::True,
        StateFormula::Atom(a) => StateFormula::Atom(a.clone()),
        StateFormula::Not(a) => dualize(a).not(),
        StateFormula::Or(a, b) => dualize(a).or(dualize(b)),
        StateFormula::Quant(q, p) => match q.polarity {
            Polarity::Exists => StateFormula::quant(*q, norm_path(p)),
            Polarity::Forall => {
                StateFormula::quant(q.dual(), neg_path(norm_path(p))).not()
            }
        },
    }
}

/// Normalizes a path formula: dualizes embedded state formulas and pushes
/// path-level negations inward.
fn norm_path(p: &PathFormula) -> PathFormula {
    match p {
        PathFormula::Embed(f) => PathFormula::Embed(dualize(f)),
        PathFormula::Not(a) => neg_path(norm_path(a)),
        PathFormula::Or(a, b) => norm_path(a).or(norm_path(b)),
        PathFormula::Next(a) => norm_path(a).next(),
        PathFormula::Until(a, b) => norm_path(a).until(norm_path(b)),
        PathFormula::WaitFor(a, b) => norm_path(a).wait_for(norm_path(b)),
    }
}

/// Negation of an already-normalized path formula, pushed as deep as the
/// operators allow. A negated disjunction of temporal subformulas has no
/// pushed form and keeps its outer negation.
fn neg_path(p: PathFormula) -> PathFormula {
    match p {
        PathFormula::Not(a) => *a,
        PathFormula::Next(a) => neg_path(*a).next(),
        PathFormula::Until(a, b) => neg_path(*b).wait_for(neg_path(*a)),
        PathFormula::WaitFor(a, b) => neg_path(*b).until(neg_path(*a)),
        PathFormula::Embed(_) => p.not(),
        PathFormula::Or(a, b) => {
            let or = PathFormula::Or(a, b);
            match path_as_state(&or) {
                Some(f) => PathFormula::Embed(f.not()),
                None => or.not(),
            }
        }
    }
}

/// Canonical syntax for a formula; equivalent to the `Display` impl.
pub fn print(f: &StateFormula) -> String {
    f.to_string()
}

// Precedence levels used by the printer. State side: `|` = 1, `&` = 2,
// `!` = 3, primary = 4. Path side: `|` = 1, `&` = 2, `U`/`W` = 3 (right
// associative), unary = 4, primary = 5.
fn fmt_state(f: &StateFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    // Conjunction sugar: `!(!a | !b)` prints as `a & b`.
    if let StateFormula::Not(x) = f {
        if let StateFormula::Or(a, b) = &**x {
            if let (StateFormula::Not(a), StateFormula::Not(b)) = (&**a, &**b) {
                let parens = min > 2;
                if parens {
                    out.write_str("(")?;
                }
                fmt_state(a, 2, out)?;
                out.write_str(" & ")?;
                fmt_state(b, 3, out)?;
                if parens {
                    out.write_str(")")?;
                }
                return Ok(());
            }
        }
    }
    match f {
        StateFormula::True => out.write_str("true"),
        StateFormula::Atom(a) => out.write_str(a),
        StateFormula::Not(a) => {
            out.write_str("!")?;
            fmt_state(a, 3, out)
        }
        StateFormula::Or(a, b) => {
            let parens = min > 1;
            if parens {
                out.write_str("(")?;
            }
            fmt_state(a, 1, out)?;
            out.write_str(" | ")?;
            fmt_state(b, 2, out)?;
            if parens {
                out.write_str(")")?;
            }
            Ok(())
        }
        StateFormula::Quant(q, p) => {
            write!(out, "{q} ")?;
            if path_prec(p) >= 4 {
                fmt_path(p, 4, out)
            } else {
                out.write_str("(")?;
                fmt_path(p, 0, out)?;
                out.write_str(")")
            }
        }
    }
}

/// Precedence of the head operator of `p` as printed (sugar included).
fn path_prec(p: &PathFormula) -> u8 {
    match p {
        PathFormula::Embed(_) => 5,
        PathFormula::Next(_) => 4,
        PathFormula::Not(x) => {
            // `a & b` sugar has precedence 2; a plain negation 4.
            if matches!(&**x, PathFormula::Or(a, b)
                if matches!(&**a, PathFormula::Not(_)) && matches!(&**b, PathFormula::Not(_)))
            {
                2
            } else {
                4
            }
        }
        PathFormula::Or(..) => 1,
        PathFormula::Until(a, _) if matches!(&**a, PathFormula::Embed(StateFormula::True)) => 4,
        PathFormula::WaitFor(_, b)
            if matches!(&**b, PathFormula::Not(x) if matches!(&**x, PathFormula::Embed(StateFormula::True))) =>
        {
            4
        }
        PathFormula::Until(..) | PathFormula::WaitFor(..) => 3,
    }
}

fn fmt_path(p: &PathFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    // Conjunction sugar at path level.
    if let PathFormula::Not(x) = p {
        if let PathFormula::Or(a, b) = &**x {
            if let (PathFormula::Not(a), PathFormula::Not(b)) = (&**a, &**b) {
                let parens = min > 2;
                if parens {
                    out.write_str("(")?;
                }
                fmt_path(a, 2, out)?;
                out.write_str(" & ")?;
                fmt_path(b, 3, out)?;
                if parens {
                    out.write_str(")")?;
                }
                return Ok(());
            }
        }
    }
    // `F` and `G` sugar.
    if let PathFormula::Until(a, b) = p {
        if matches!(&**a, PathFormula::Embed(StateFormula::True)) {
            out.write_str("F ")?;
            return fmt_path(b, 4, out);
        }
    }
    if let PathFormula::WaitFor(a, b) = p {
        if matches!(&**b, PathFormula::Not(x) if matches!(&**x, PathFormula::Embed(StateFormula::True)))
        {
            out.write_str("G ")?;
            return fmt_path(a, 4, out);
        }
    }
    match p {
        PathFormula::Embed(f) => fmt_state(f, 4, out),
        PathFormula::Not(a) => {
            out.write_str("!")?;
            fmt_path(a, 4, out)
        }
        PathFormula::Next(a) => {
            out.write_str("X ")?;
            fmt_path(a, 4, out)
        }
        PathFormula::Or(a, b) => {
            let parens = min > 1;
            if parens {
                out.write_str("(")?;
            }
            fmt_path(a, 1, out)?;
            out.write_str(" | ")?;
            fmt_path(b, 2, out)?;
            if parens {
                out.write_str(")")?;
            }
            Ok(())
        }
        PathFormula::Until(a, b) => {
            let parens = min > 3;
            if parens {
                out.write_str("(")?;
            }
            fmt_path(a, 4, out)?;
            out.write_str(" U ")?;
            fmt_path(b, 3, out)?;
            if parens {
                out.write_str(")")?;
            }
            Ok(())
        }
        PathFormula::WaitFor(a, b) => {
            let parens = min > 3;
            if parens {
                out.write_str("(")?;
            }
            fmt_path(a, 4, out)?;
            out.write_str(" W ")?;
            fmt_path(b, 3, out)?;
            if parens {
                out.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_state(self, 0, f)
    }
}

impl fmt::Display for PathFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_path(self, 0, f)
    }
}
