//! Wire types shared by the HTTP API and the command line `--json` mode.

use std::collections::BTreeMap;

use formalize_core::grid::{Coloring, GridCoord, SquareSet, GRID_SIZE};
use formalize_core::store::Exercise;
use formalize_core::{Category, DictationVerdict, GridVerdict, Rejection};
use serde::{Deserialize, Serialize};

/// An exercise as shown to students. Accepted formalizations and reference
/// solutions are never part of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ExerciseSummary {
    Dictation {
        id: String,
        prompt: String,
        symbols: Vec<char>,
        #[serde(skip_serializing_if = "std::ops::Not::not")]
        experimental: bool,
    },
    Grid {
        id: String,
        description: String,
        constants: BTreeMap<char, GridCoord>,
        grid_size: usize,
        /// The highlighted squares of the problem picture.
        yellow: SquareSet,
    },
}

impl From<&Exercise> for ExerciseSummary {
    fn from(ex: &Exercise) -> Self {
        match ex {
            Exercise::Dictation(d) => ExerciseSummary::Dictation {
                id: d.id.clone(),
                prompt: d.prompt.clone(),
                symbols: d.required_symbols.iter().copied().collect(),
                experimental: d.experimental,
            },
            Exercise::Grid(g) => ExerciseSummary::Grid {
                id: g.id.clone(),
                description: g.description.clone(),
                constants: g.constants.clone(),
                grid_size: GRID_SIZE,
                yellow: g.target,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CheckRequest {
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub kind: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
}

impl From<&Rejection> for Reason {
    fn from(r: &Rejection) -> Self {
        Reason {
            kind: r.kind(),
            detail: r.to_string(),
            offset: r.offset(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResponse {
    pub category: Category,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
}

impl From<&DictationVerdict> for CheckResponse {
    fn from(v: &DictationVerdict) -> Self {
        CheckResponse {
            category: v.category,
            message: v.message.clone(),
            coloring: None,
            reason: v.rejection.as_ref().map(Reason::from),
        }
    }
}

impl From<&GridVerdict> for CheckResponse {
    fn from(v: &GridVerdict) -> Self {
        CheckResponse {
            category: v.category,
            message: v.message.clone(),
            coloring: v.coloring,
            reason: v.rejection.as_ref().map(Reason::from),
        }
    }
}

pub fn check_exercise(ex: &Exercise, formula: &str) -> CheckResponse {
    match ex {
        Exercise::Dictation(d) => (&formalize_core::check_dictation(d, formula)).into(),
        Exercise::Grid(g) => (&formalize_core::check_grid(g, formula)).into(),
    }
}
