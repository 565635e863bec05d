use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::logic::ParseError;

/// Feedback category shared by both exercise types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Correct,
    SufficientNotNecessary,
    NecessaryNotSufficient,
    Neither,
    Rejected,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Correct => "correct",
            Category::SufficientNotNecessary => "sufficient_not_necessary",
            Category::NecessaryNotSufficient => "necessary_not_sufficient",
            Category::Neither => "neither",
            Category::Rejected => "rejected",
        }
    }

    /// Advice shown for a graded (non-rejected) submission.
    pub fn advice(self) -> &'static str {
        match self {
            Category::Correct => "Congratulations, your formula is correct!",
            Category::SufficientNotNecessary => {
                "Your condition is sufficient, but not necessary. \
                 Make it more inclusive by loosening the condition."
            }
            Category::NecessaryNotSufficient => {
                "Your condition is necessary, but not sufficient. \
                 Impose further restrictions."
            }
            Category::Neither => "Your condition is neither sufficient nor necessary. Try again.",
            Category::Rejected => "Your input was rejected.",
        }
    }

    /// Classifies from the two implication results: `sufficient` means the
    /// answer implies the target, `necessary` the converse.
    pub fn from_implications(sufficient: bool, necessary: bool) -> Category {
        match (sufficient, necessary) {
            (true, true) => Category::Correct,
            (true, false) => Category::SufficientNotNecessary,
            (false, true) => Category::NecessaryNotSufficient,
            (false, false) => Category::Neither,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a submission was not graded at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Parse(ParseError),
    FreeSymbolMismatch {
        expected: BTreeSet<char>,
        found: BTreeSet<char>,
    },
    FreeVariableCount {
        found: BTreeSet<char>,
    },
    ConstantShadow {
        name: char,
    },
    DepthCapExceeded {
        depth: usize,
        cap: usize,
    },
}

fn letters(set: &BTreeSet<char>) -> String {
    let v: Vec<String> = set.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

impl Rejection {
    pub fn kind(&self) -> &'static str {
        match self {
            Rejection::Parse(_) => "parse_error",
            Rejection::FreeSymbolMismatch { .. } => "free_symbol_mismatch",
            Rejection::FreeVariableCount { .. } => "free_variable_count",
            Rejection::ConstantShadow { .. } => "constant_shadow",
            Rejection::DepthCapExceeded { .. } => "depth_cap_exceeded",
        }
    }

    pub fn offset(&self) -> Option<usize> {
        match self {
            Rejection::Parse(e) => Some(e.offset),
            _ => None,
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Parse(e) => write!(f, "not a well-formed formula: {e}"),
            Rejection::FreeSymbolMismatch { expected, found } => write!(
                f,
                "the formula must have exactly the free symbols {} but has {}",
                letters(expected),
                letters(found)
            ),
            Rejection::FreeVariableCount { found } => write!(
                f,
                "the formula must have exactly one free variable but has {}",
                letters(found)
            ),
            Rejection::ConstantShadow { name } => write!(
                f,
                "`{name}` names a marked square and cannot be used as a variable"
            ),
            Rejection::DepthCapExceeded { depth, cap } => write!(
                f,
                "the formula nests {depth} quantifiers; at most {cap} are evaluated"
            ),
        }
    }
}
