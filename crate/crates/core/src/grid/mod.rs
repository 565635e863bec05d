//! Board semantics and checking for grid exercises.

mod board;
mod eval;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::logic::{parse, Dialect, Formula};
use crate::verdict::{Category, Rejection};

pub use board::{holds_atom, GridCoord, SquareSet, GRID_RADIUS, GRID_SIZE, SQUARE_COUNT};
pub use eval::{eval_extension, EvalError};

pub const DEFAULT_DEPTH_CAP: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct GridExercise {
    pub id: String,
    pub description: String,
    /// Letters labelling squares; always contains `u` at the center.
    pub constants: BTreeMap<char, GridCoord>,
    /// The highlighted (yellow) squares.
    pub target: SquareSet,
    pub depth_cap: usize,
    /// Stored solution used by pack self-tests; never shown to students.
    pub reference_solution: Option<Formula>,
}

impl GridExercise {
    pub fn new(id: impl Into<String>, description: impl Into<String>, target: SquareSet) -> Self {
        GridExercise {
            id: id.into(),
            description: description.into(),
            constants: BTreeMap::from([('u', GridCoord::CENTER)]),
            target,
            depth_cap: DEFAULT_DEPTH_CAP,
            reference_solution: None,
        }
    }

    pub fn with_constant(mut self, name: char, at: GridCoord) -> Self {
        self.constants.insert(name, at);
        self
    }

    pub fn extension(&self, f: &Formula, free_var: char) -> Result<SquareSet, EvalError> {
        eval_extension(&self.constants, f, free_var, self.depth_cap)
    }
}

/// Partition of the defined set `U` and the target `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// U ∩ Y
    pub green: SquareSet,
    /// U ∖ Y
    pub red: SquareSet,
    /// Y ∖ U
    pub yellow: SquareSet,
}

impl Coloring {
    pub fn new(defined: &SquareSet, target: &SquareSet) -> Self {
        Coloring {
            green: defined.intersection(target),
            red: defined.difference(target),
            yellow: target.difference(defined),
        }
    }

    /// One line per row, top row first: `G` green, `R` red, `Y` yellow,
    /// `·` elsewhere.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in (-i64::from(GRID_RADIUS)..=i64::from(GRID_RADIUS)).rev() {
            for col in -i64::from(GRID_RADIUS)..=i64::from(GRID_RADIUS) {
                let sq = GridCoord::new(col, row).expect("on board");
                out.push(if self.green.contains(sq) {
                    'G'
                } else if self.red.contains(sq) {
                    'R'
                } else if self.yellow.contains(sq) {
                    'Y'
                } else {
                    '·'
                });
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridVerdict {
    pub category: Category,
    pub message: String,
    /// Absent exactly when the submission was rejected.
    pub coloring: Option<Coloring>,
    pub rejection: Option<Rejection>,
}

impl GridVerdict {
    fn rejected(reason: Rejection) -> Self {
        GridVerdict {
            category: Category::Rejected,
            message: reason.to_string(),
            coloring: None,
            rejection: Some(reason),
        }
    }
}

/// Category from the set relation between defined set and target.
pub fn classify_sets(defined: &SquareSet, target: &SquareSet) -> Category {
    let sufficient = defined.is_subset(target);
    let necessary = target.is_subset(defined);
    Category::from_implications(sufficient, necessary)
}

pub fn check_grid(ex: &GridExercise, input: &str) -> GridVerdict {
    let formula = match parse(input, Dialect::Grid) {
        Ok(f) => f,
        Err(e) => return GridVerdict::rejected(Rejection::Parse(e)),
    };
    check_grid_formula(ex, &formula)
}

pub fn check_grid_formula(ex: &GridExercise, formula: &Formula) -> GridVerdict {
    let free: std::collections::BTreeSet<char> = formula
        .free_symbols()
        .into_iter()
        .filter(|c| !ex.constants.contains_key(c))
        .collect();
    if free.len() != 1 {
        return GridVerdict::rejected(Rejection::FreeVariableCount { found: free });
    }
    let var = *free.iter().next().expect("one free variable");
    if let Some(name) = formula
        .bound_variables()
        .into_iter()
        .find(|v| ex.constants.contains_key(v))
    {
        return GridVerdict::rejected(Rejection::ConstantShadow { name });
    }
    let defined = match ex.extension(formula, var) {
        Ok(s) => s,
        Err(EvalError::DepthCapExceeded { depth, cap }) => {
            return GridVerdict::rejected(Rejection::DepthCapExceeded { depth, cap })
        }
        Err(e) => unreachable!("checked before evaluation: {e}"),
    };
    let category = classify_sets(&defined, &ex.target);
    GridVerdict {
        category,
        message: category.advice().to_string(),
        coloring: Some(Coloring::new(&defined, &ex.target)),
        rejection: None,
    }
}
