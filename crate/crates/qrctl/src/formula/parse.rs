//! Recursive-descent parser for the formula syntax described in the module
//! documentation.

use super::{PathFormula, Quantifier, StateFormula};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
}

fn err<T>(pos: usize, expected: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        pos,
        expected: expected.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    Ident(String),
    Quant(Quantifier),
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Next,
    Until,
    WaitFor,
    Finally,
    Globally,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::True => "`true`".into(),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Quant(q) => format!("`{q}`"),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Next => "`X`".into(),
        Tok::Until => "`U`".into(),
        Tok::WaitFor => "`W`".into(),
        Tok::Finally => "`F`".into(),
        Tok::Globally => "`G`".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '!' => {
                out.push((Tok::Bang, i));
                i += 1;
            }
            '&' => {
                out.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                out.push((Tok::Pipe, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return err(i, "`->`");
                }
            }
            '<' => {
                let close = src[i..]
                    .find('>')
                    .map(|k| i + k)
                    .ok_or(ParseError::Syntax {
                        pos: i,
                        expected: "closing `>` of a quantifier alias".into(),
                    })?;
                let tok = &src[i..=close];
                match Quantifier::from_token(tok) {
                    Some(q) => out.push((Tok::Quant(q), i)),
                    None => return err(i, "a quantifier alias `<1>`, `<1,p>`, `<p>`, or `<0>`"),
                }
                i = close + 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_ascii_alphanumeric() || c == '_' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let word = &src[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "X" => Tok::Next,
                    "U" => Tok::Until,
                    "W" => Tok::WaitFor,
                    "F" => Tok::Finally,
                    "G" => Tok::Globally,
                    _ => match Quantifier::from_token(word) {
                        Some(q) => Tok::Quant(q),
                        None => Tok::Ident(word.to_string()),
                    },
                };
                out.push((tok, start));
            }
            _ => return err(i, "a formula token"),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |&(_, p)| p)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            err(self.pos(), describe(&t))
        }
    }

    // State formulas.

    fn state_impl(&mut self) -> Result<StateFormula, ParseError> {
        let lhs = self.state_or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.i += 1;
            let rhs = self.state_impl()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn state_or(&mut self) -> Result<StateFormula, ParseError> {
        let mut lhs = self.state_and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.i += 1;
            lhs = lhs.or(self.state_and()?);
        }
        Ok(lhs)
    }

    fn state_and(&mut self) -> Result<StateFormula, ParseError> {
        let mut lhs = self.state_unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.i += 1;
            lhs = lhs.and(self.state_unary()?);
        }
        Ok(lhs)
    }

    fn state_unary(&mut self) -> Result<StateFormula, ParseError> {
        if self.peek() == Some(&Tok::Bang) {
            self.i += 1;
            Ok(self.state_unary()?.not())
        } else {
            self.state_primary()
        }
    }

    fn state_primary(&mut self) -> Result<StateFormula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::True) => {
                self.i += 1;
                Ok(StateFormula::True)
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                Ok(StateFormula::Atom(name))
            }
            Some(Tok::Quant(q)) => {
                self.i += 1;
                let path = self.quantified_path()?;
                Ok(StateFormula::quant(q, path))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.state_impl()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => err(self.pos(), "a state formula"),
        }
    }

    /// Path operand of a quantifier: a parenthesized full path formula or a
    /// unary-level one.
    fn quantified_path(&mut self) -> Result<PathFormula, ParseError> {
        if self.peek() == Some(&Tok::LParen) {
            self.i += 1;
            let inner = self.path_impl()?;
            self.expect(Tok::RParen)?;
            Ok(inner)
        } else {
            self.path_unary()
        }
    }

    // Path formulas.

    fn path_impl(&mut self) -> Result<PathFormula, ParseError> {
        let lhs = self.path_or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.i += 1;
            let rhs = self.path_impl()?;
            Ok(lhs.not().or(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn path_or(&mut self) -> Result<PathFormula, ParseError> {
        let mut lhs = self.path_and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.i += 1;
            lhs = lhs.or(self.path_and()?);
        }
        Ok(lhs)
    }

    fn path_and(&mut self) -> Result<PathFormula, ParseError> {
        let mut lhs = self.path_until()?;
        while self.peek() == Some(&Tok::Amp) {
            self.i += 1;
            lhs = lhs.and(self.path_until()?);
        }
        Ok(lhs)
    }

    fn path_until(&mut self) -> Result<PathFormula, ParseError> {
        let lhs = self.path_unary()?;
        match self.peek() {
            Some(Tok::Until) => {
                self.i += 1;
                Ok(lhs.until(self.path_until()?))
            }
            Some(Tok::WaitFor) => {
                self.i += 1;
                Ok(lhs.wait_for(self.path_until()?))
            }
            _ => Ok(lhs),
        }
    }

    fn path_unary(&mut self) -> Result<PathFormula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.i += 1;
                Ok(self.path_unary()?.not())
            }
            Some(Tok::Next) => {
                self.i += 1;
                Ok(self.path_unary()?.next())
            }
            Some(Tok::Finally) => {
                self.i += 1;
                Ok(self.path_unary()?.eventually())
            }
            Some(Tok::Globally) => {
                self.i += 1;
                Ok(self.path_unary()?.always())
            }
            _ => self.path_primary(),
        }
    }

    fn path_primary(&mut self) -> Result<PathFormula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::True) => {
                self.i += 1;
                Ok(PathFormula::Embed(StateFormula::True))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                Ok(PathFormula::Embed(StateFormula::Atom(name)))
            }
            Some(Tok::Quant(q)) => {
                self.i += 1;
                let path = self.quantified_path()?;
                Ok(PathFormula::Embed(StateFormula::quant(q, path)))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.path_impl()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => err(self.pos(), "a path formula"),
        }
    }
}

/// Parses a state formula.
pub fn parse(src: &str) -> Result<StateFormula, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let f = p.state_impl()?;
    if let Some(t) = p.peek() {
        return err(p.pos(), format!("end of input, found {}", describe(t)));
    }
    Ok(f)
}
