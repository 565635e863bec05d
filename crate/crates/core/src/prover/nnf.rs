//! Hash-consed terms and negation normal form used inside the tableau.

use std::collections::HashMap;
use std::fmt::Write;
use std::rc::Rc;

use crate::logic::{Formula, Pred, Term};

pub(crate) type TermId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    /// A letter that is free in the problem; rigid.
    Letter(char),
    /// Constant introduced by the δ-rule or an empty-branch γ-rule.
    Fresh(u32),
    Num(u64),
    App(TermId, TermId),
    /// A letter bound by an enclosing quantifier of the formula holding it.
    Var(char),
}

#[derive(Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    ground: Vec<bool>,
    index: HashMap<Node, TermId>,
    fresh: u32,
}

impl Arena {
    pub fn intern(&mut self, node: Node) -> TermId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let ground = match node {
            Node::Var(_) => false,
            Node::App(h, a) => self.ground[h as usize] && self.ground[a as usize],
            _ => true,
        };
        let id = self.nodes.len() as TermId;
        self.nodes.push(node);
        self.ground.push(ground);
        self.index.insert(node, id);
        id
    }

    pub fn node(&self, id: TermId) -> Node {
        self.nodes[id as usize]
    }

    pub fn is_ground(&self, id: TermId) -> bool {
        self.ground[id as usize]
    }

    pub fn fresh(&mut self) -> TermId {
        self.fresh += 1;
        self.intern(Node::Fresh(self.fresh))
    }

    pub fn intern_term(&mut self, t: &Term, bound: &[char]) -> TermId {
        match t {
            Term::Sym(c) if bound.contains(c) => self.intern(Node::Var(*c)),
            Term::Sym(c) => self.intern(Node::Letter(*c)),
            Term::Num(n) => self.intern(Node::Num(*n)),
            Term::App(h, a) => {
                let h = self.intern_term(h, bound);
                let a = self.intern_term(a, bound);
                self.intern(Node::App(h, a))
            }
        }
    }

    pub fn subst(&mut self, id: TermId, var: char, by: TermId) -> TermId {
        if self.is_ground(id) {
            return id;
        }
        match self.node(id) {
            Node::Var(c) if c == var => by,
            Node::App(h, a) => {
                let h = self.subst(h, var, by);
                let a = self.subst(a, var, by);
                self.intern(Node::App(h, a))
            }
            _ => id,
        }
    }

    /// Ground subterms in post-order, skipping bare function heads.
    pub fn ground_subterms(&self, id: TermId, out: &mut Vec<TermId>) {
        if let Node::App(h, a) = self.node(id) {
            if matches!(self.node(h), Node::App(..)) {
                self.ground_subterms(h, out);
            }
            self.ground_subterms(a, out);
        }
        if self.is_ground(id) {
            out.push(id);
        }
    }

    #[cfg(test)]
    pub fn render(&self, id: TermId) -> String {
        match self.node(id) {
            Node::Letter(c) | Node::Var(c) => c.to_string(),
            Node::Fresh(k) => format!("c{k}"),
            Node::Num(n) => n.to_string(),
            Node::App(h, a) => format!("{}({})", self.render(h), self.render(a)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Rel {
    Lt,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Lit {
    pub pos: bool,
    pub rel: Rel,
    pub a: TermId,
    pub b: TermId,
}

impl Lit {
    pub fn negated(self) -> Lit {
        Lit {
            pos: !self.pos,
            ..self
        }
    }
}

pub(crate) type Nf = Rc<NfNode>;

#[derive(Debug)]
pub(crate) enum NfNode {
    Lit(Lit),
    And(Nf, Nf),
    Or(Nf, Nf),
    Forall(char, Nf),
    Exists(char, Nf),
}

/// Converts a formula over `<` and `=` only into negation normal form.
/// `positive == false` yields the normal form of the negation.
pub(crate) fn to_nnf(f: &Formula, positive: bool, arena: &mut Arena, bound: &mut Vec<char>) -> Nf {
    let node = match f {
        Formula::Atom(pred, args) => {
            let rel = match pred {
                Pred::Lt => Rel::Lt,
                Pred::Eq => Rel::Eq,
                other => panic!("predicate {other:?} must be normalized away"),
            };
            let a = arena.intern_term(&args[0], bound);
            let b = arena.intern_term(&args[1], bound);
            NfNode::Lit(Lit {
                pos: positive,
                rel,
                a,
                b,
            })
        }
        Formula::Not(g) => return to_nnf(g, !positive, arena, bound),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let a = to_nnf(a, positive, arena, bound);
            let b = to_nnf(b, positive, arena, bound);
            if matches!(f, Formula::And(..)) == positive {
                NfNode::And(a, b)
            } else {
                NfNode::Or(a, b)
            }
        }
        Formula::Implies(a, b) => {
            let a = to_nnf(a, !positive, arena, bound);
            let b = to_nnf(b, positive, arena, bound);
            if positive {
                NfNode::Or(a, b)
            } else {
                NfNode::And(a, b)
            }
        }
        Formula::Iff(a, b) => {
            let ap = to_nnf(a, true, arena, bound);
            let an = to_nnf(a, false, arena, bound);
            let bp = to_nnf(b, true, arena, bound);
            let bn = to_nnf(b, false, arena, bound);
            if positive {
                NfNode::And(Rc::new(NfNode::Or(an, bp)), Rc::new(NfNode::Or(ap, bn)))
            } else {
                NfNode::And(Rc::new(NfNode::Or(ap, bp)), Rc::new(NfNode::Or(an, bn)))
            }
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            bound.push(*v);
            let body = to_nnf(body, positive, arena, bound);
            bound.pop();
            if matches!(f, Formula::Forall(..)) == positive {
                NfNode::Forall(*v, body)
            } else {
                NfNode::Exists(*v, body)
            }
        }
    };
    Rc::new(node)
}

pub(crate) fn subst(f: &Nf, var: char, by: TermId, arena: &mut Arena) -> Nf {
    match &**f {
        NfNode::Lit(l) => {
            let a = arena.subst(l.a, var, by);
            let b = arena.subst(l.b, var, by);
            if a == l.a && b == l.b {
                f.clone()
            } else {
                Rc::new(NfNode::Lit(Lit { a, b, ..*l }))
            }
        }
        NfNode::And(a, b) => Rc::new(NfNode::And(
            subst(a, var, by, arena),
            subst(b, var, by, arena),
        )),
        NfNode::Or(a, b) => Rc::new(NfNode::Or(
            subst(a, var, by, arena),
            subst(b, var, by, arena),
        )),
        NfNode::Forall(v, _) | NfNode::Exists(v, _) if *v == var => f.clone(),
        NfNode::Forall(v, body) => Rc::new(NfNode::Forall(*v, subst(body, var, by, arena))),
        NfNode::Exists(v, body) => Rc::new(NfNode::Exists(*v, subst(body, var, by, arena))),
    }
}

/// Ground subterms of a formula in reading order.
pub(crate) fn ground_terms(f: &Nf, arena: &Arena, out: &mut Vec<TermId>) {
    match &**f {
        NfNode::Lit(l) => {
            arena.ground_subterms(l.a, out);
            arena.ground_subterms(l.b, out);
        }
        NfNode::And(a, b) | NfNode::Or(a, b) => {
            ground_terms(a, arena, out);
            ground_terms(b, arena, out);
        }
        NfNode::Forall(_, body) | NfNode::Exists(_, body) => ground_terms(body, arena, out),
    }
}

/// Disjuncts of a (possibly nested) disjunction.
pub(crate) fn disjuncts(f: &Nf, out: &mut Vec<Nf>) {
    match &**f {
        NfNode::Or(a, b) => {
            disjuncts(a, out);
            disjuncts(b, out);
        }
        _ => out.push(f.clone()),
    }
}

/// Key identifying a formula up to renaming of bound variables. With
/// `dual` set, the key of its negation's normal form is produced instead.
pub(crate) fn alpha_key(f: &Nf, dual: bool, arena: &Arena) -> String {
    let mut out = String::new();
    let mut binders = Vec::new();
    write_key(f, dual, arena, &mut binders, &mut out);
    out
}

fn write_key(f: &Nf, dual: bool, arena: &Arena, binders: &mut Vec<char>, out: &mut String) {
    match &**f {
        NfNode::Lit(l) => {
            let pos = l.pos != dual;
            out.push(if pos { '+' } else { '-' });
            out.push(if l.rel == Rel::Lt { '<' } else { '=' });
            write_term_key(l.a, arena, binders, out);
            out.push(',');
            write_term_key(l.b, arena, binders, out);
            out.push(';');
        }
        NfNode::And(a, b) | NfNode::Or(a, b) => {
            let conj = matches!(**f, NfNode::And(..)) != dual;
            out.push(if conj { '&' } else { '|' });
            out.push('[');
            write_key(a, dual, arena, binders, out);
            write_key(b, dual, arena, binders, out);
            out.push(']');
        }
        NfNode::Forall(v, body) | NfNode::Exists(v, body) => {
            let univ = matches!(**f, NfNode::Forall(..)) != dual;
            out.push(if univ { 'A' } else { 'E' });
            binders.push(*v);
            write_key(body, dual, arena, binders, out);
            binders.pop();
        }
    }
}

fn write_term_key(id: TermId, arena: &Arena, binders: &[char], out: &mut String) {
    if arena.is_ground(id) {
        let _ = write!(out, "t{id}");
        return;
    }
    match arena.node(id) {
        Node::Var(c) => match binders.iter().rposition(|b| *b == c) {
            Some(i) => {
                let _ = write!(out, "#{}", binders.len() - 1 - i);
            }
            None => {
                let _ = write!(out, "?{c}");
            }
        },
        Node::App(h, a) => {
            out.push('(');
            write_term_key(h, arena, binders, out);
            out.push(' ');
            write_term_key(a, arena, binders, out);
            out.push(')');
        }
        _ => unreachable!("non-ground leaf is always a variable"),
    }
}
