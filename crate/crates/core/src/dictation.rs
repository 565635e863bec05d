//! Dictation checking: compare a submitted formula against the accepted
//! formalizations by proving implications in both directions.

use std::collections::BTreeSet;

use crate::logic::{parse, Dialect, Formula};
use crate::prover::{prove_implication, BackgroundTheory, ProverBounds};
use crate::verdict::{Category, Rejection};

#[derive(Clone, Debug, PartialEq)]
pub struct DictationExercise {
    pub id: String,
    pub prompt: String,
    /// Equally acceptable formalizations; never empty.
    pub accepted: Vec<Formula>,
    /// Free symbols every answer must have, function letters included.
    pub required_symbols: BTreeSet<char>,
    pub bounds: ProverBounds,
    pub theory_extras: Vec<Formula>,
    pub experimental: bool,
}

impl DictationExercise {
    pub fn theory(&self) -> BackgroundTheory {
        BackgroundTheory::with_extras(self.theory_extras.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DictationVerdict {
    pub category: Category,
    pub message: String,
    /// Set exactly when `category` is `Rejected`.
    pub rejection: Option<Rejection>,
}

impl DictationVerdict {
    fn graded(category: Category) -> Self {
        DictationVerdict {
            category,
            message: category.advice().to_string(),
            rejection: None,
        }
    }

    fn rejected(reason: Rejection) -> Self {
        DictationVerdict {
            category: Category::Rejected,
            message: reason.to_string(),
            rejection: Some(reason),
        }
    }
}

pub fn check_dictation(ex: &DictationExercise, input: &str) -> DictationVerdict {
    let formula = match parse(input, Dialect::Dictation) {
        Ok(f) => f,
        Err(e) => return DictationVerdict::rejected(Rejection::Parse(e)),
    };
    let found = formula.free_symbols();
    if found != ex.required_symbols {
        return DictationVerdict::rejected(Rejection::FreeSymbolMismatch {
            expected: ex.required_symbols.clone(),
            found,
        });
    }
    DictationVerdict::graded(classify(ex, &formula))
}

/// Grades an already parsed formula with the correct symbol set.
pub fn classify(ex: &DictationExercise, formula: &Formula) -> Category {
    let theory = ex.theory();
    let proves = |a: &Formula, b: &Formula| {
        prove_implication(a, b, &ex.bounds, &theory)
            .map(|o| o.is_proved())
            .unwrap_or(false)
    };
    let sufficient = ex.accepted.iter().any(|acc| proves(formula, acc));
    let necessary = ex.accepted.iter().any(|acc| proves(acc, formula));
    Category::from_implications(sufficient, necessary)
}
