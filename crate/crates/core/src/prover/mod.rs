//! Resource-bounded tableau prover for the dictation dialect.
//!
//! The prover is sound and deliberately incomplete: universal formulas may
//! only be instantiated a bounded number of times on each branch, so that
//! propositional reasoning is unrestricted while first-order search stays
//! shallow. Free letters of the problem are rigid constants.

mod closure;
mod model;
mod nnf;
mod tableau;

use serde::{Deserialize, Serialize};

use crate::logic::{Dialect, DialectMismatch, Formula, Pred, Term};

pub use model::{eval_in_model, FiniteOrderModel, ModelError};

use nnf::{to_nnf, Arena};
use tableau::{Branch, Search, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProverBounds {
    /// Instantiations allowed per universal formula occurrence per branch.
    pub gamma_limit: u32,
    /// Cap on rule applications for one implication.
    pub node_limit: u64,
}

impl ProverBounds {
    pub const DEFAULT_GAMMA_LIMIT: u32 = 3;
    pub const DEFAULT_NODE_LIMIT: u64 = 20_000;

    pub fn with_gamma_limit(gamma_limit: u32) -> Self {
        ProverBounds {
            gamma_limit,
            ..Default::default()
        }
    }
}

impl Default for ProverBounds {
    fn default() -> Self {
        ProverBounds {
            gamma_limit: Self::DEFAULT_GAMMA_LIMIT,
            node_limit: Self::DEFAULT_NODE_LIMIT,
        }
    }
}

/// Axioms assumed on every branch.
///
/// The order and equality axioms are built into the branch closure check
/// rather than instantiated; `extras` are ordinary closed formulas that
/// consume instantiation budget like any other universal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackgroundTheory {
    pub irreflexive: bool,
    pub transitive: bool,
    pub total: bool,
    /// Reflexivity, symmetry, transitivity and congruence of `=`.
    pub equality: bool,
    pub extras: Vec<Formula>,
}

impl Default for BackgroundTheory {
    fn default() -> Self {
        BackgroundTheory {
            irreflexive: true,
            transitive: true,
            total: true,
            equality: true,
            extras: Vec::new(),
        }
    }
}

impl BackgroundTheory {
    pub fn with_extras(extras: Vec<Formula>) -> Self {
        BackgroundTheory {
            extras,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exhaustion {
    /// The rule-application cap was reached.
    NodeLimit,
    /// An open branch remained with every permitted instantiation used.
    Saturated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    Proved { closed_branches: u64, nodes: u64 },
    NotProvedWithinBounds { reason: Exhaustion, nodes: u64 },
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved { .. })
    }
}

/// Rewrites `<=`, `>` and `>=` in terms of `<` and `=`.
pub fn normalize(f: &Formula) -> Result<Formula, DialectMismatch> {
    f.check_dialect(Dialect::Dictation)?;
    Ok(normalize_unchecked(f))
}

fn normalize_unchecked(f: &Formula) -> Formula {
    match f {
        Formula::Atom(pred, args) => {
            let (a, b) = (args[0].clone(), args[1].clone());
            let lt = |x: Term, y: Term| Formula::binary(Pred::Lt, x, y);
            let eq = |x: Term, y: Term| Formula::binary(Pred::Eq, x, y);
            match pred {
                Pred::Le => Formula::or(lt(a.clone(), b.clone()), eq(a, b)),
                Pred::Gt => lt(b, a),
                Pred::Ge => Formula::or(lt(b.clone(), a.clone()), eq(b, a)),
                _ => f.clone(),
            }
        }
        Formula::Not(g) => Formula::not(normalize_unchecked(g)),
        Formula::Forall(v, body) => Formula::forall(*v, normalize_unchecked(body)),
        Formula::Exists(v, body) => Formula::exists(*v, normalize_unchecked(body)),
        _ => {
            let (op, a, b) = f.as_binary().expect("binary connective");
            Formula::binop(op, normalize_unchecked(a), normalize_unchecked(b))
        }
    }
}

/// Tries to close a tableau for `theory ∪ {phi, ¬psi}`.
///
/// The search is run with instantiation budgets 1, 2, … up to
/// `bounds.gamma_limit`, sharing one node budget, so a proof found under a
/// smaller budget is found identically under any larger one.
pub fn prove_implication(
    phi: &Formula,
    psi: &Formula,
    bounds: &ProverBounds,
    theory: &BackgroundTheory,
) -> Result<ProofOutcome, DialectMismatch> {
    let phi = normalize(phi)?;
    let psi = normalize(psi)?;
    let extras = theory
        .extras
        .iter()
        .map(normalize)
        .collect::<Result<Vec<_>, _>>()?;

    let mut arena = Arena::default();
    let mut roots = Vec::new();
    for e in &extras {
        roots.push(to_nnf(e, true, &mut arena, &mut Vec::new()));
    }
    roots.push(to_nnf(&phi, true, &mut arena, &mut Vec::new()));
    roots.push(to_nnf(&psi, false, &mut arena, &mut Vec::new()));

    let mut nodes = 0;
    let mut reason = Exhaustion::Saturated;
    for limit in 1..=bounds.gamma_limit.max(1) {
        let mut tableau = Tableau::new(&mut arena, theory, limit, bounds.node_limit, nodes);
        let result = tableau.run(Branch::new(roots.clone()));
        nodes = tableau.nodes;
        match result {
            Ok(Search::Closed { branches }) => {
                return Ok(ProofOutcome::Proved {
                    closed_branches: branches,
                    nodes,
                })
            }
            // A larger budget cannot help when no occurrence used up this one.
            Ok(Search::Open { budget_hit: false }) => break,
            Ok(Search::Open { budget_hit: true }) => {}
            Err(e) => {
                reason = e;
                break;
            }
        }
    }
    Ok(ProofOutcome::NotProvedWithinBounds { reason, nodes })
}
