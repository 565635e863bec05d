//! Grading engine for first-order formalization exercises.
//!
//! Two exercise types share one formula syntax:
//!
//! * **dictations** ask for a formula over the reals matching a sentence;
//!   answers are compared against accepted solutions by proving both
//!   implications with a bounded tableau prover ([`prover`]).
//! * **grid exercises** ask for a formula with one free variable whose
//!   extension on a 21×21 board equals a highlighted set; answers are
//!   evaluated exactly ([`grid`]).

pub mod dictation;
pub mod grid;
pub mod logic;
pub mod prover;
pub mod store;
pub mod verdict;

pub use dictation::{check_dictation, DictationExercise, DictationVerdict};
pub use grid::{check_grid, Coloring, GridCoord, GridExercise, GridVerdict, SquareSet};
pub use logic::{parse, print, Dialect, Formula, ParseError};
pub use prover::{prove_implication, BackgroundTheory, ProofOutcome, ProverBounds};
pub use store::{builtin_packs, load_pack, selftest, Exercise, ExercisePack, StoreError};
pub use verdict::{Category, Rejection};
