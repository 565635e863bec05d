//! Strict recursive-descent parser for both surface dialects.
//!
//! Every binary connective must be wrapped in exactly one pair of brackets;
//! there are no precedence rules and redundant brackets are rejected. The
//! body of a quantifier is the smallest formula following the colon.

use crate::logic::ast::{BinOp, Formula, Pred, Term};
use crate::logic::Dialect;

const MAX_NESTING: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected {expected} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: String,
}

pub fn parse(text: &str, dialect: Dialect) -> Result<Formula, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        dialect,
        nesting: 0,
    };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    dialect: Dialect,
    nesting: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest().chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Consumes the first matching alternative after skipping whitespace.
    fn eat_any(&mut self, alternatives: &[&str]) -> bool {
        self.skip_ws();
        for alt in alternatives {
            if self.rest().starts_with(alt) {
                self.pos += alt.len();
                return true;
            }
        }
        false
    }

    fn expect(&mut self, alternatives: &[&str], what: &str) -> Result<(), ParseError> {
        if self.eat_any(alternatives) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.error("shallower nesting"));
        }
        let f = self.formula_inner();
        self.nesting -= 1;
        f
    }

    fn formula_inner(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('~' | '¬') => {
                self.bump();
                Ok(Formula::not(self.formula()?))
            }
            Some(q @ ('A' | '∀' | 'E' | '∃')) => {
                self.bump();
                let var = self.variable()?;
                self.expect(&[":"], "`:` after quantified variable")?;
                let body = self.formula()?;
                Ok(if matches!(q, 'A' | '∀') {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            Some('(') => {
                self.bump();
                let left = self.formula()?;
                let op = self.connective()?;
                let right = self.formula()?;
                self.expect(&[")"], "`)`")?;
                Ok(Formula::binop(op, left, right))
            }
            Some(_) => match self.dialect {
                Dialect::Dictation => self.dictation_atom(),
                Dialect::Grid => self.grid_atom(),
            },
            None => Err(self.error("formula")),
        }
    }

    fn connective(&mut self) -> Result<BinOp, ParseError> {
        if self.eat_any(&["&", "∧"]) {
            Ok(BinOp::And)
        } else if self.eat_any(&["v", "∨"]) {
            Ok(BinOp::Or)
        } else if self.eat_any(&["->", "→"]) {
            Ok(BinOp::Implies)
        } else if self.eat_any(&["<->", "↔"]) {
            Ok(BinOp::Iff)
        } else {
            Err(self.error("connective `&`, `v`, `->` or `<->`"))
        }
    }

    fn variable(&mut self) -> Result<char, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.bump();
                Ok(c)
            }
            _ => Err(self.error("variable (a single small letter)")),
        }
    }

    fn dictation_atom(&mut self) -> Result<Formula, ParseError> {
        let left = self.term()?;
        let pred = if self.eat_any(&["<=", "=<", "≤"]) {
            Pred::Le
        } else if self.eat_any(&[">=", "≥"]) {
            Pred::Ge
        } else if self.eat_any(&["<"]) {
            Pred::Lt
        } else if self.eat_any(&[">"]) {
            Pred::Gt
        } else if self.eat_any(&["="]) {
            Pred::Eq
        } else {
            return Err(self.error("relation `<`, `<=`, `>`, `>=` or `=`"));
        };
        let right = self.term()?;
        Ok(Formula::binary(pred, left, right))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut term = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits: &str = {
                    let rest = self.rest();
                    let end = rest
                        .find(|c: char| !c.is_ascii_digit())
                        .unwrap_or(rest.len());
                    &rest[..end]
                };
                self.pos += digits.len();
                // Numerals never take arguments.
                return digits
                    .parse::<u64>()
                    .map(Term::Num)
                    .map_err(|_| ParseError {
                        offset: start,
                        expected: "numeral that fits in 64 bits".into(),
                    });
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.bump();
                Term::Sym(c)
            }
            _ => return Err(self.error("term")),
        };
        while self.peek() == Some('(') {
            self.bump();
            let arg = self.term()?;
            self.expect(&[")"], "`)` closing the argument")?;
            term = Term::App(Box::new(term), Box::new(arg));
        }
        Ok(term)
    }

    fn grid_atom(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let word_len = self
            .rest()
            .find(|c: char| !c.is_ascii_lowercase())
            .unwrap_or(self.rest().len());
        if word_len == 0 {
            return Err(match self.rest().chars().next() {
                Some(c) if c.is_ascii_digit() => {
                    self.error("letter (numerals are not part of the grid language)")
                }
                _ => self.error("formula"),
            });
        }
        if word_len == 1 {
            let a = self.grid_letter()?;
            self.expect(&["="], "`=`")?;
            let b = self.grid_letter()?;
            return Ok(Formula::binary(Pred::Eq, a, b));
        }
        let word = &self.rest()[..word_len];
        if word == "dist" {
            self.pos += word_len;
            let (a, b) = self.grid_pair()?;
            self.expect(&["="], "`=` between distances")?;
            self.expect(&["dist"], "`dist`")?;
            let (x, y) = self.grid_pair()?;
            return Ok(Formula::atom(Pred::DistEq, vec![a, b, x, y]));
        }
        let pred = [
            Pred::Rechts,
            Pred::Links,
            Pred::Ueber,
            Pred::Unter,
            Pred::Nachbar,
        ]
        .into_iter()
        .find(|p| p.grid_keyword() == Some(word));
        let Some(pred) = pred else {
            return Err(ParseError {
                offset: start,
                expected: format!(
                    "predicate rechts, links, ueber, unter, nachbar or dist (found `{word}`)"
                ),
            });
        };
        self.pos += word_len;
        let (a, b) = self.grid_pair()?;
        Ok(Formula::binary(pred, a, b))
    }

    fn grid_pair(&mut self) -> Result<(Term, Term), ParseError> {
        self.expect(&["("], "`(`")?;
        let a = self.grid_letter()?;
        self.expect(&[","], "`,`")?;
        let b = self.grid_letter()?;
        self.expect(&[")"], "`)`")?;
        Ok((a, b))
    }

    fn grid_letter(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.bump();
                Ok(Term::Sym(c))
            }
            Some(c) if c.is_ascii_digit() => {
                Err(self.error("letter (numerals are not part of the grid language)"))
            }
            _ => Err(self.error("letter")),
        }
    }
}
