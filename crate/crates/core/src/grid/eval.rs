//! Exact evaluation of grid formulas.
//!
//! Evaluation is vectorized over the free variable: each subformula yields
//! the set of squares at which it holds, given fixed squares for every
//! other letter in scope. Binary atoms become row lookups in precomputed
//! relation tables, so a formula with `d` nested quantifiers costs about
//! `441^d` bitset operations rather than `441^(d+1)` scalar checks.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::grid::board::{holds_atom, GridCoord, SquareSet, SQUARE_COUNT};
use crate::logic::{Formula, Pred, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("formula nests {depth} quantifiers, more than the cap of {cap}")]
    DepthCapExceeded { depth: usize, cap: usize },
    #[error("`{0}` is neither the free variable nor a marked square")]
    UnknownConstant(char),
    #[error("formula is not in the grid language")]
    NotGridFormula,
}

const BINARY: [Pred; 6] = [
    Pred::Eq,
    Pred::Rechts,
    Pred::Links,
    Pred::Ueber,
    Pred::Unter,
    Pred::Nachbar,
];

/// Largest distance between two aligned squares.
const MAX_DIST: usize = 20;

struct Tables {
    /// `forward[p][a]` = { b : p(a, b) }
    forward: Vec<Vec<SquareSet>>,
    /// `backward[p][b]` = { a : p(a, b) }
    backward: Vec<Vec<SquareSet>>,
    /// `ring[c][d]` = squares aligned with `c` at distance `d`
    ring: Vec<[SquareSet; MAX_DIST + 1]>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut forward = vec![vec![SquareSet::empty(); SQUARE_COUNT]; BINARY.len()];
        let mut backward = forward.clone();
        for (p, pred) in BINARY.iter().enumerate() {
            for a in GridCoord::all() {
                for b in GridCoord::all() {
                    if holds_atom(*pred, &[a, b]) {
                        forward[p][a.index()].insert(b);
                        backward[p][b.index()].insert(a);
                    }
                }
            }
        }
        let mut ring = vec![[SquareSet::empty(); MAX_DIST + 1]; SQUARE_COUNT];
        for c in GridCoord::all() {
            for s in GridCoord::all() {
                if let Some(d) = aligned_distance(c, s) {
                    ring[c.index()][d].insert(s);
                }
            }
        }
        Tables {
            forward,
            backward,
            ring,
        }
    })
}

fn aligned_distance(p: GridCoord, q: GridCoord) -> Option<usize> {
    if p.col() == q.col() || p.row() == q.row() {
        Some(((p.col() - q.col()).abs() + (p.row() - q.row()).abs()) as usize)
    } else {
        None
    }
}

/// One side of `dist(p,q)=dist(r,s)` as a function of the free square.
enum Side {
    Fixed(Option<usize>),
    /// distance from the free square to a fixed one
    From(usize),
    /// `dist(x,x)`: zero everywhere
    Zero,
}

fn side(p: &Arg, q: &Arg) -> Side {
    match (p, q) {
        (Arg::Fixed(a), Arg::Fixed(b)) => Side::Fixed(aligned_distance(
            GridCoord::from_index(*a),
            GridCoord::from_index(*b),
        )),
        (Arg::Fixed(c), Arg::Free) | (Arg::Free, Arg::Fixed(c)) => Side::From(*c),
        (Arg::Free, Arg::Free) => Side::Zero,
    }
}

fn eval_dist(left: Side, right: Side) -> SquareSet {
    let ring = &tables().ring;
    let at = |c: usize, d: Option<usize>| match d {
        Some(d) => ring[c][d],
        None => SquareSet::empty(),
    };
    match (left, right) {
        (Side::Fixed(d), Side::Fixed(e)) => broadcast(d.is_some() && d == e),
        (Side::Fixed(d), Side::From(c)) | (Side::From(c), Side::Fixed(d)) => at(c, d),
        (Side::Fixed(d), Side::Zero) | (Side::Zero, Side::Fixed(d)) => broadcast(d == Some(0)),
        (Side::From(c), Side::Zero) | (Side::Zero, Side::From(c)) => ring[c][0],
        (Side::Zero, Side::Zero) => SquareSet::full(),
        (Side::From(c), Side::From(e)) => (0..=MAX_DIST)
            .map(|d| ring[c][d].intersection(&ring[e][d]))
            .fold(SquareSet::empty(), |acc, s| acc.union(&s)),
    }
}

fn table_index(pred: Pred) -> Option<usize> {
    BINARY.iter().position(|p| *p == pred)
}

/// Letter environment; `None` means unbound.
type Env = [Option<u16>; 26];

fn slot(c: char) -> usize {
    (c as u8 - b'a') as usize
}

/// The set of squares `s` such that `f` holds with `free_var ↦ s` and
/// every other free letter read from `constants`.
pub fn eval_extension(
    constants: &BTreeMap<char, GridCoord>,
    f: &Formula,
    free_var: char,
    depth_cap: usize,
) -> Result<SquareSet, EvalError> {
    f.check_dialect(crate::logic::Dialect::Grid)
        .map_err(|_| EvalError::NotGridFormula)?;
    let depth = f.quantifier_depth();
    if depth > depth_cap {
        return Err(EvalError::DepthCapExceeded {
            depth,
            cap: depth_cap,
        });
    }
    if let Some(c) = f
        .free_symbols()
        .into_iter()
        .find(|c| *c != free_var && !constants.contains_key(c))
    {
        return Err(EvalError::UnknownConstant(c));
    }
    let mut env: Env = [None; 26];
    for (name, sq) in constants {
        if name.is_ascii_lowercase() {
            env[slot(*name)] = Some(sq.index() as u16);
        }
    }
    // The free variable shadows a constant of the same name.
    env[slot(free_var)] = None;
    Ok(eval_set(f, &mut env, free_var))
}

#[derive(Clone, Copy)]
enum Arg {
    Free,
    Fixed(usize),
}

fn arg(t: &Term, env: &Env, var: char) -> Arg {
    let Term::Sym(c) = t else {
        unreachable!("grid terms are letters")
    };
    if *c == var {
        Arg::Free
    } else {
        let i = env[slot(*c)].expect("letters are bound or constants") as usize;
        Arg::Fixed(i)
    }
}

fn broadcast(b: bool) -> SquareSet {
    if b {
        SquareSet::full()
    } else {
        SquareSet::empty()
    }
}

fn eval_atom(pred: Pred, args: &[Term], env: &Env, var: char) -> SquareSet {
    let mut resolved = [Arg::Free; 4];
    for (slot, t) in resolved.iter_mut().zip(args) {
        *slot = arg(t, env, var);
    }
    if let Some(p) = table_index(pred) {
        let t = tables();
        return match (&resolved[0], &resolved[1]) {
            (Arg::Fixed(a), Arg::Fixed(b)) => broadcast(t.forward[p][*a].contains_index(*b)),
            (Arg::Fixed(a), Arg::Free) => t.forward[p][*a],
            (Arg::Free, Arg::Fixed(b)) => t.backward[p][*b],
            (Arg::Free, Arg::Free) => broadcast(pred == Pred::Eq),
        };
    }
    eval_dist(
        side(&resolved[0], &resolved[1]),
        side(&resolved[2], &resolved[3]),
    )
}

fn eval_set(f: &Formula, env: &mut Env, var: char) -> SquareSet {
    match f {
        Formula::Atom(pred, args) => eval_atom(*pred, args, env, var),
        Formula::Not(g) => eval_set(g, env, var).complement(),
        Formula::And(a, b) => {
            let left = eval_set(a, env, var);
            if left.is_empty() {
                return left;
            }
            left.intersection(&eval_set(b, env, var))
        }
        Formula::Or(a, b) => {
            let left = eval_set(a, env, var);
            if left.is_full() {
                return left;
            }
            left.union(&eval_set(b, env, var))
        }
        Formula::Implies(a, b) => {
            let left = eval_set(a, env, var).complement();
            if left.is_full() {
                return left;
            }
            left.union(&eval_set(b, env, var))
        }
        Formula::Iff(a, b) => {
            let left = eval_set(a, env, var);
            let right = eval_set(b, env, var);
            left.intersection(&right)
                .union(&left.complement().intersection(&right.complement()))
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let universal = matches!(f, Formula::Forall(..));
            if *v == var {
                // The quantifier captures the free variable: the body no
                // longer depends on the outer square.
                let inner = eval_set(body, env, var);
                return broadcast(if universal {
                    inner.is_full()
                } else {
                    !inner.is_empty()
                });
            }
            let saved = env[slot(*v)];
            let mut acc = broadcast(universal);
            for s in 0..SQUARE_COUNT {
                env[slot(*v)] = Some(s as u16);
                let r = eval_set(body, env, var);
                if universal {
                    acc = acc.intersection(&r);
                    if acc.is_empty() {
                        break;
                    }
                } else {
                    acc = acc.union(&r);
                    if acc.is_full() {
                        break;
                    }
                }
            }
            env[slot(*v)] = saved;
            acc
        }
    }
}
