//! First-order syntax shared by both exercise types.

mod ast;
mod parse;
mod print;

pub use ast::{BinOp, DialectMismatch, Formula, Pred, Term};
pub use parse::{parse, ParseError};
pub use print::print;

/// Selects grammar, admissible predicates and admissible term formers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dialect {
    /// Order relations over the reals with function application and numerals.
    Dictation,
    /// Relational language over squares of the board.
    Grid,
}
