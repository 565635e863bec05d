#![allow(dead_code)]

use std::collections::BTreeMap;

use formalize_core::grid::{GridCoord, SquareSet};
use formalize_core::logic::{BinOp, Formula, Pred, Term};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn letter(rng: &mut StdRng) -> char {
    (b'a' + rng.random_range(0..26u8)) as char
}

fn random_term(rng: &mut StdRng, budget: u32) -> Term {
    match rng.random_range(0..6) {
        0 => Term::Num(if rng.random_bool(0.8) {
            rng.random_range(0..20)
        } else {
            rng.random()
        }),
        1 | 2 if budget > 0 => {
            let head = if rng.random_bool(0.85) {
                Term::Sym(letter(rng))
            } else {
                random_term(rng, budget - 1)
            };
            let head = if matches!(head, Term::Num(_)) {
                Term::Sym('f')
            } else {
                head
            };
            Term::App(Box::new(head), Box::new(random_term(rng, budget - 1)))
        }
        _ => Term::Sym(letter(rng)),
    }
}

fn random_binop(rng: &mut StdRng) -> BinOp {
    [BinOp::And, BinOp::Or, BinOp::Implies, BinOp::Iff][rng.random_range(0..4)]
}

/// Arbitrary well-formed dictation syntax tree, not necessarily meaningful.
pub fn random_dictation_ast(rng: &mut StdRng, depth: u32) -> Formula {
    let leaf = depth == 0 || rng.random_bool(0.25);
    if leaf {
        let pred = [Pred::Lt, Pred::Le, Pred::Gt, Pred::Ge, Pred::Eq][rng.random_range(0..5)];
        return Formula::binary(pred, random_term(rng, 2), random_term(rng, 2));
    }
    match rng.random_range(0..4) {
        0 => Formula::not(random_dictation_ast(rng, depth - 1)),
        1 => Formula::binop(
            random_binop(rng),
            random_dictation_ast(rng, depth - 1),
            random_dictation_ast(rng, depth - 1),
        ),
        2 => Formula::forall(letter(rng), random_dictation_ast(rng, depth - 1)),
        _ => Formula::exists(letter(rng), random_dictation_ast(rng, depth - 1)),
    }
}

const GRID_BINARY: [Pred; 6] = [
    Pred::Eq,
    Pred::Rechts,
    Pred::Links,
    Pred::Ueber,
    Pred::Unter,
    Pred::Nachbar,
];

fn grid_atom(rng: &mut StdRng, mut pick: impl FnMut(&mut StdRng) -> char) -> Formula {
    if rng.random_range(0..7) == 0 {
        let args = (0..4).map(|_| Term::Sym(pick(rng))).collect();
        Formula::atom(Pred::DistEq, args)
    } else {
        let pred = GRID_BINARY[rng.random_range(0..6)];
        Formula::binary(pred, Term::Sym(pick(rng)), Term::Sym(pick(rng)))
    }
}

/// Arbitrary well-formed grid syntax tree over all letters.
pub fn random_grid_ast(rng: &mut StdRng, depth: u32) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        return grid_atom(rng, letter);
    }
    match rng.random_range(0..4) {
        0 => Formula::not(random_grid_ast(rng, depth - 1)),
        1 => Formula::binop(
            random_binop(rng),
            random_grid_ast(rng, depth - 1),
            random_grid_ast(rng, depth - 1),
        ),
        2 => Formula::forall(letter(rng), random_grid_ast(rng, depth - 1)),
        _ => Formula::exists(letter(rng), random_grid_ast(rng, depth - 1)),
    }
}

/// A grid formula whose letters are `free`, the given constants and the
/// variables bound above each occurrence; at most `quantifiers` nested
/// quantifiers. Bound variables come from `y`, `z`, `w` and occasionally
/// rebind `free`.
pub fn random_grid_formula(
    rng: &mut StdRng,
    size: u32,
    quantifiers: usize,
    free: char,
    constants: &[char],
) -> Formula {
    fn go(rng: &mut StdRng, size: u32, q: usize, scope: &mut Vec<char>) -> Formula {
        if size == 0 || rng.random_bool(0.2) {
            let snapshot = scope.clone();
            return grid_atom(rng, |r| snapshot[r.random_range(0..snapshot.len())]);
        }
        match rng.random_range(0..6) {
            0 => Formula::not(go(rng, size - 1, q, scope)),
            1 | 2 => {
                let a = go(rng, size / 2, q, scope);
                let b = go(rng, size / 2, q, scope);
                Formula::binop(random_binop(rng), a, b)
            }
            _ if q > 0 => {
                let v = if rng.random_bool(0.1) {
                    scope[0]
                } else {
                    ['y', 'z', 'w'][rng.random_range(0..3)]
                };
                scope.push(v);
                scope.push(v);
                let body = go(rng, size - 1, q - 1, scope);
                scope.pop();
                scope.pop();
                if rng.random_bool(0.5) {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
            _ => go(rng, 0, q, scope),
        }
    }
    let mut scope = vec![free];
    scope.extend_from_slice(constants);
    go(rng, size, quantifiers, &mut scope)
}

pub fn random_square(rng: &mut StdRng) -> GridCoord {
    GridCoord::new(rng.random_range(-10..=10), rng.random_range(-10..=10)).unwrap()
}

/// `u` at the center plus `a` and `b` at random squares.
pub fn random_constants(rng: &mut StdRng) -> BTreeMap<char, GridCoord> {
    BTreeMap::from([
        ('u', GridCoord::CENTER),
        ('a', random_square(rng)),
        ('b', random_square(rng)),
    ])
}

type Sq = (i64, i64);

fn aligned(p: Sq, q: Sq) -> bool {
    p.0 == q.0 || p.1 == q.1
}

fn manhattan(p: Sq, q: Sq) -> i64 {
    (p.0 - q.0).abs() + (p.1 - q.1).abs()
}

fn naive_atom(pred: Pred, s: &[Sq]) -> bool {
    match pred {
        Pred::Eq => s[0] == s[1],
        Pred::Rechts => s[1].1 == s[0].1 && s[1].0 > s[0].0,
        Pred::Links => s[1].1 == s[0].1 && s[1].0 < s[0].0,
        Pred::Ueber => s[1].0 == s[0].0 && s[1].1 > s[0].1,
        Pred::Unter => s[1].0 == s[0].0 && s[1].1 < s[0].1,
        Pred::Nachbar => manhattan(s[0], s[1]) == 1,
        Pred::DistEq => {
            aligned(s[0], s[1])
                && aligned(s[2], s[3])
                && manhattan(s[0], s[1]) == manhattan(s[2], s[3])
        }
        _ => panic!("not a grid predicate"),
    }
}

fn board() -> impl Iterator<Item = Sq> {
    (-10..=10).flat_map(|c| (-10..=10).map(move |r| (c, r)))
}

type Env = [Sq; 26];

fn slot(c: char) -> usize {
    (c as u8 - b'a') as usize
}

fn naive_holds(f: &Formula, env: &mut Env) -> bool {
    match f {
        Formula::Atom(pred, args) => {
            let mut s = [(0, 0); 4];
            for (i, t) in args.iter().enumerate() {
                let Term::Sym(c) = t else {
                    panic!("grid terms are letters")
                };
                s[i] = env[slot(*c)];
            }
            naive_atom(*pred, &s)
        }
        Formula::Not(g) => !naive_holds(g, env),
        Formula::And(a, b) => {
            let (x, y) = (naive_holds(a, env), naive_holds(b, env));
            x & y
        }
        Formula::Or(a, b) => {
            let (x, y) = (naive_holds(a, env), naive_holds(b, env));
            x | y
        }
        Formula::Implies(a, b) => {
            let (x, y) = (naive_holds(a, env), naive_holds(b, env));
            !x | y
        }
        Formula::Iff(a, b) => naive_holds(a, env) == naive_holds(b, env),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let saved = env[slot(*v)];
            let (mut all, mut any) = (true, false);
            for s in board() {
                env[slot(*v)] = s;
                let r = naive_holds(body, env);
                all &= r;
                any |= r;
            }
            env[slot(*v)] = saved;
            if matches!(f, Formula::Forall(..)) {
                all
            } else {
                any
            }
        }
    }
}

/// Brute-force extension: every square, every quantifier instance, no
/// shortcuts.
pub fn naive_extension(constants: &BTreeMap<char, GridCoord>, f: &Formula, var: char) -> SquareSet {
    let mut out = SquareSet::empty();
    for s in board() {
        let mut env: Env = [(99, 99); 26];
        for (c, g) in constants {
            env[slot(*c)] = (g.col(), g.row());
        }
        env[slot(var)] = s;
        if naive_holds(f, &mut env) {
            out.insert(GridCoord::new(s.0, s.1).unwrap());
        }
    }
    out
}

/// Renames every bound variable to a fresh letter taken from `fresh`,
/// consistently per binder.
pub fn rename_bound(f: &Formula, fresh: &mut impl Iterator<Item = char>) -> Formula {
    fn term(t: &Term, map: &BTreeMap<char, char>) -> Term {
        match t {
            Term::Sym(c) => Term::Sym(*map.get(c).unwrap_or(c)),
            Term::Num(k) => Term::Num(*k),
            Term::App(h, a) => Term::App(Box::new(term(h, map)), Box::new(term(a, map))),
        }
    }
    fn go(
        f: &Formula,
        map: &BTreeMap<char, char>,
        fresh: &mut dyn Iterator<Item = char>,
    ) -> Formula {
        match f {
            Formula::Atom(p, args) => {
                Formula::atom(*p, args.iter().map(|t| term(t, map)).collect())
            }
            Formula::Not(g) => Formula::not(go(g, map, fresh)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let to = fresh.next().expect("enough fresh letters");
                let mut inner = map.clone();
                inner.insert(*v, to);
                let body = go(body, &inner, fresh);
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(to, body)
                } else {
                    Formula::exists(to, body)
                }
            }
            _ => {
                let (op, a, b) = f.as_binary().expect("binary connective");
                let a = go(a, map, fresh);
                let b = go(b, map, fresh);
                Formula::binop(op, a, b)
            }
        }
    }
    go(f, &BTreeMap::new(), fresh)
}

/// Finite strict order `0..n` with interpretations for letters.
#[derive(Clone, Debug)]
pub struct OrderModel {
    pub n: u64,
    pub constants: BTreeMap<char, u64>,
    pub functions: BTreeMap<char, Vec<u64>>,
}

impl OrderModel {
    pub fn random(rng: &mut StdRng, n: u64, constants: &[char], functions: &[char]) -> Self {
        OrderModel {
            n,
            constants: constants
                .iter()
                .map(|c| (*c, rng.random_range(0..n)))
                .collect(),
            functions: functions
                .iter()
                .map(|f| (*f, (0..n).map(|_| rng.random_range(0..n)).collect()))
                .collect(),
        }
    }

    fn term(&self, t: &Term, env: &BTreeMap<char, u64>) -> u64 {
        match t {
            Term::Num(k) => {
                assert!(*k < self.n, "numeral {k} outside the model");
                *k
            }
            Term::Sym(c) => env
                .get(c)
                .or_else(|| self.constants.get(c))
                .copied()
                .expect("letter interpreted"),
            Term::App(head, arg) => {
                let Term::Sym(f) = **head else {
                    panic!("only letters are applied")
                };
                self.functions[&f][self.term(arg, env) as usize]
            }
        }
    }

    pub fn holds(&self, f: &Formula, env: &mut BTreeMap<char, u64>) -> bool {
        match f {
            Formula::Atom(pred, args) => {
                let a = self.term(&args[0], env);
                let b = self.term(&args[1], env);
                match pred {
                    Pred::Lt => a < b,
                    Pred::Le => a <= b,
                    Pred::Gt => a > b,
                    Pred::Ge => a >= b,
                    Pred::Eq => a == b,
                    _ => panic!("not a dictation predicate"),
                }
            }
            Formula::Not(g) => !self.holds(g, env),
            Formula::And(a, b) => self.holds(a, env) && self.holds(b, env),
            Formula::Or(a, b) => self.holds(a, env) || self.holds(b, env),
            Formula::Implies(a, b) => !self.holds(a, env) || self.holds(b, env),
            Formula::Iff(a, b) => self.holds(a, env) == self.holds(b, env),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let saved = env.get(v).copied();
                let universal = matches!(f, Formula::Forall(..));
                let mut result = universal;
                for e in 0..self.n {
                    env.insert(*v, e);
                    if self.holds(body, env) != universal {
                        result = !universal;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(*v, s),
                    None => env.remove(v),
                };
                result
            }
        }
    }
}

/// Splits the free symbols of `f` into applied (function) and plain letters.
pub fn symbol_roles(f: &Formula) -> (Vec<char>, Vec<char>) {
    fn walk_term(t: &Term, funs: &mut Vec<char>) {
        if let Term::App(head, arg) = t {
            if let Term::Sym(c) = **head {
                funs.push(c);
            }
            walk_term(head, funs);
            walk_term(arg, funs);
        }
    }
    let mut funs = Vec::new();
    f.visit(&mut |g| {
        if let Formula::Atom(_, args) = g {
            for t in args {
                walk_term(t, &mut funs);
            }
        }
    });
    let free = f.free_symbols();
    let functions: Vec<char> = free.iter().copied().filter(|c| funs.contains(c)).collect();
    let constants: Vec<char> = free.iter().copied().filter(|c| !funs.contains(c)).collect();
    (functions, constants)
}

pub fn max_numeral(f: &Formula) -> u64 {
    fn term(t: &Term) -> u64 {
        match t {
            Term::Num(k) => *k,
            Term::Sym(_) => 0,
            Term::App(h, a) => term(h).max(term(a)),
        }
    }
    let mut m = 0;
    f.visit(&mut |g| {
        if let Formula::Atom(_, args) = g {
            for t in args {
                m = m.max(term(t));
            }
        }
    });
    m
}

fn order_term(rng: &mut StdRng, scope: &[char]) -> Term {
    match rng.random_range(0..8) {
        0 => Term::Num(rng.random_range(0..2)),
        1 | 2 => Term::call(['f', 'g'][rng.random_range(0..2)], order_term(rng, scope)),
        3 => Term::Sym('c'),
        _ if scope.is_empty() => Term::Sym('d'),
        _ => Term::Sym(scope[rng.random_range(0..scope.len())]),
    }
}

/// Small formulas over the order language with letters `c`, `d`, unary
/// `f`, `g` and numerals 0 and 1.
pub fn order_formula(rng: &mut StdRng, depth: u32, scope: &mut Vec<char>) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        let pred = [Pred::Lt, Pred::Le, Pred::Gt, Pred::Ge, Pred::Eq][rng.random_range(0..5)];
        return Formula::binary(pred, order_term(rng, scope), order_term(rng, scope));
    }
    match rng.random_range(0..5) {
        0 => Formula::not(order_formula(rng, depth - 1, scope)),
        1 | 2 => {
            let a = order_formula(rng, depth - 1, scope);
            let b = order_formula(rng, depth - 1, scope);
            Formula::binop(random_binop(rng), a, b)
        }
        _ => {
            let v = ['x', 'y', 'z'][rng.random_range(0..3)];
            scope.push(v);
            let body = order_formula(rng, depth - 1, scope);
            scope.pop();
            if rng.random_bool(0.5) {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
    }
}

/// An implication candidate, biased toward ones a correct prover can show.
pub fn implication_candidate(rng: &mut StdRng) -> (Formula, Formula) {
    let mut s = Vec::new();
    let mut f = |rng: &mut StdRng, d: u32| order_formula(rng, d, &mut s);
    let p = f(rng, 3);
    let q = f(rng, 2);
    let t = |rng: &mut StdRng| order_term(rng, &[]);
    match rng.random_range(0..10) {
        0 => (Formula::and(p.clone(), q), p),
        1 => (p.clone(), Formula::or(q, p)),
        2 => (Formula::not(Formula::not(p.clone())), p),
        3 => (
            Formula::not(Formula::or(p.clone(), q.clone())),
            Formula::and(Formula::not(p), Formula::not(q)),
        ),
        4 => {
            let (a, b, c) = (t(rng), t(rng), t(rng));
            (
                Formula::and(
                    Formula::binary(Pred::Lt, a.clone(), b.clone()),
                    Formula::binary(Pred::Le, b, c.clone()),
                ),
                Formula::binary(Pred::Lt, a, c),
            )
        }
        5 => {
            let (a, b) = (t(rng), t(rng));
            (
                Formula::not(Formula::binary(Pred::Lt, a.clone(), b.clone())),
                Formula::binary(Pred::Ge, a, b),
            )
        }
        6 => {
            let (a, b) = (t(rng), t(rng));
            (
                Formula::binary(Pred::Eq, a.clone(), b.clone()),
                Formula::binary(Pred::Eq, Term::call('f', b), Term::call('f', a)),
            )
        }
        7 => {
            let body = order_formula(rng, 2, &mut vec!['x', 'y']);
            (
                Formula::exists('x', Formula::forall('y', body.clone())),
                Formula::forall('y', Formula::exists('x', body)),
            )
        }
        8 => {
            let body = order_formula(rng, 2, &mut vec!['x']);
            (
                Formula::forall('x', body.clone()),
                Formula::exists('x', body),
            )
        }
        _ => (p, q),
    }
}
