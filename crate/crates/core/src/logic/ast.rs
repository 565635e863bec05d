use std::collections::BTreeSet;
use std::fmt;

use crate::logic::Dialect;

/// A term of the dictation dialect. Grid formulas only ever contain `Sym`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Sym(char),
    Num(u64),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn sym(name: char) -> Term {
        Term::Sym(name)
    }

    /// Builds `head(arg)`. Returns `None` when the head is a numeral.
    pub fn app(head: Term, arg: Term) -> Option<Term> {
        match head {
            Term::Num(_) => None,
            head => Some(Term::App(Box::new(head), Box::new(arg))),
        }
    }

    /// `f(x)` for a one-letter function symbol.
    pub fn call(fun: char, arg: Term) -> Term {
        Term::App(Box::new(Term::Sym(fun)), Box::new(arg))
    }

    fn collect_syms(&self, out: &mut Vec<char>) {
        match self {
            Term::Sym(c) => out.push(*c),
            Term::Num(_) => {}
            Term::App(head, arg) => {
                head.collect_syms(out);
                arg.collect_syms(out);
            }
        }
    }

    fn is_well_formed(&self) -> bool {
        match self {
            Term::Sym(c) => c.is_ascii_lowercase(),
            Term::Num(_) => true,
            Term::App(head, arg) => {
                !matches!(**head, Term::Num(_)) && head.is_well_formed() && arg.is_well_formed()
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Sym(c) => write!(f, "{c}"),
            Term::Num(n) => write!(f, "{n}"),
            Term::App(head, arg) => write!(f, "{head}({arg})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Rechts,
    Links,
    Ueber,
    Unter,
    Nachbar,
    DistEq,
}

impl Pred {
    pub const DICTATION: [Pred; 5] = [Pred::Lt, Pred::Le, Pred::Gt, Pred::Ge, Pred::Eq];
    pub const GRID: [Pred; 7] = [
        Pred::Rechts,
        Pred::Links,
        Pred::Ueber,
        Pred::Unter,
        Pred::Nachbar,
        Pred::Eq,
        Pred::DistEq,
    ];

    pub fn arity(self) -> usize {
        match self {
            Pred::DistEq => 4,
            _ => 2,
        }
    }

    pub fn allowed_in(self, dialect: Dialect) -> bool {
        match dialect {
            Dialect::Dictation => Pred::DICTATION.contains(&self),
            Dialect::Grid => Pred::GRID.contains(&self),
        }
    }

    /// Keyword used by the grid surface syntax for prefix predicates.
    pub fn grid_keyword(self) -> Option<&'static str> {
        match self {
            Pred::Rechts => Some("rechts"),
            Pred::Links => Some("links"),
            Pred::Ueber => Some("ueber"),
            Pred::Unter => Some("unter"),
            Pred::Nachbar => Some("nachbar"),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => " v ",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Pred, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(char, Box<Formula>),
    Exists(char, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: Pred, args: Vec<Term>) -> Formula {
        Formula::Atom(pred, args)
    }

    pub fn binary(pred: Pred, a: Term, b: Term) -> Formula {
        Formula::Atom(pred, vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: char, body: Formula) -> Formula {
        Formula::Forall(var, Box::new(body))
    }

    pub fn exists(var: char, body: Formula) -> Formula {
        Formula::Exists(var, Box::new(body))
    }

    pub fn binop(op: BinOp, a: Formula, b: Formula) -> Formula {
        match op {
            BinOp::And => Formula::and(a, b),
            BinOp::Or => Formula::or(a, b),
            BinOp::Implies => Formula::implies(a, b),
            BinOp::Iff => Formula::iff(a, b),
        }
    }

    /// Splits a binary connective into its parts.
    pub fn as_binary(&self) -> Option<(BinOp, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((BinOp::And, a, b)),
            Formula::Or(a, b) => Some((BinOp::Or, a, b)),
            Formula::Implies(a, b) => Some((BinOp::Implies, a, b)),
            Formula::Iff(a, b) => Some((BinOp::Iff, a, b)),
            _ => None,
        }
    }

    /// Letters occurring free, including function heads; numerals excluded.
    pub fn free_symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<char>, out: &mut BTreeSet<char>) {
        match self {
            Formula::Atom(_, args) => {
                let mut syms = Vec::new();
                for t in args {
                    t.collect_syms(&mut syms);
                }
                out.extend(syms.into_iter().filter(|c| !bound.contains(c)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(*v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every letter bound by some quantifier.
    pub fn bound_variables(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Forall(v, _) | Formula::Exists(v, _) = f {
                out.insert(*v);
            }
        });
        out
    }

    /// Maximum number of quantifiers on a root-to-leaf path.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.quantifier_depth(),
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Not(g) => g.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.visit(f),
        }
    }

    /// Checks every structural invariant for the dialect: admissible
    /// predicates and arities, single-letter symbols, no numerals or
    /// applications in grid formulas, no numeral-headed applications.
    pub fn check_dialect(&self, dialect: Dialect) -> Result<(), DialectMismatch> {
        let mut result = Ok(());
        self.visit(&mut |f| {
            if result.is_err() {
                return;
            }
            match f {
                Formula::Atom(pred, args) => {
                    if !pred.allowed_in(dialect) {
                        result = Err(DialectMismatch::Predicate {
                            pred: *pred,
                            dialect,
                        });
                    } else if args.len() != pred.arity() {
                        result = Err(DialectMismatch::Arity {
                            pred: *pred,
                            found: args.len(),
                        });
                    } else if let Some(t) = args.iter().find(|t| !t.is_well_formed()) {
                        result = Err(DialectMismatch::Term {
                            term: t.to_string(),
                            dialect,
                        });
                    } else if dialect == Dialect::Grid {
                        if let Some(t) = args.iter().find(|t| !matches!(t, Term::Sym(_))) {
                            result = Err(DialectMismatch::Term {
                                term: t.to_string(),
                                dialect,
                            });
                        }
                    }
                }
                Formula::Forall(v, _) | Formula::Exists(v, _) if !v.is_ascii_lowercase() => {
                    result = Err(DialectMismatch::Variable(*v));
                }
                _ => {}
            }
        });
        result
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DialectMismatch {
    #[error("predicate {pred:?} is not part of the {dialect:?} dialect")]
    Predicate { pred: Pred, dialect: Dialect },
    #[error("predicate {pred:?} applied to {found} arguments")]
    Arity { pred: Pred, found: usize },
    #[error("term `{term}` is not admissible in the {dialect:?} dialect")]
    Term { term: String, dialect: Dialect },
    #[error("`{0}` is not a variable name")]
    Variable(char),
}
