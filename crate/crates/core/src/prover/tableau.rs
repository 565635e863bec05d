//! Depth-first ground tableau with a per-occurrence instantiation budget.
//!
//! Rule priority on a branch: literals, α and δ; then β-formulas that have
//! at most one disjunct left alive; then a genuine β split; and only when
//! nothing else applies, one γ round (every universal occurrence with budget
//! left takes its next unused branch term). A branch closes when its ground
//! literals are inconsistent with the background theory, or when a formula
//! and the normal form of its negation both occur on it.

use std::collections::{HashSet, VecDeque};

use crate::prover::closure::inconsistent;
use crate::prover::nnf::{
    alpha_key, disjuncts, ground_terms, subst, Arena, Lit, Nf, NfNode, Rel, TermId,
};
use crate::prover::{BackgroundTheory, Exhaustion};

pub(crate) enum Search {
    Closed { branches: u64 },
    Open { budget_hit: bool },
}

pub(crate) struct Tableau<'a> {
    pub arena: &'a mut Arena,
    pub theory: &'a BackgroundTheory,
    pub gamma_limit: u32,
    pub node_limit: u64,
    pub nodes: u64,
    budget_hit: bool,
}

#[derive(Clone)]
struct Gamma {
    var: char,
    body: Nf,
    used: Vec<TermId>,
}

#[derive(Clone, Default)]
pub(crate) struct Branch {
    literals: Vec<Lit>,
    literal_set: HashSet<Lit>,
    keys: HashSet<String>,
    todo: VecDeque<Nf>,
    betas: Vec<Vec<Nf>>,
    gammas: Vec<Gamma>,
    terms: Vec<TermId>,
    term_set: HashSet<TermId>,
}

impl Branch {
    pub fn new(roots: Vec<Nf>) -> Self {
        Branch {
            todo: roots.into(),
            ..Default::default()
        }
    }

    fn register_terms(&mut self, f: &Nf, arena: &Arena) {
        let mut found = Vec::new();
        ground_terms(f, arena, &mut found);
        for t in found {
            if self.term_set.insert(t) {
                self.terms.push(t);
            }
        }
    }
}

enum Step {
    Closed,
    Continue,
}

impl<'a> Tableau<'a> {
    pub fn new(
        arena: &'a mut Arena,
        theory: &'a BackgroundTheory,
        gamma_limit: u32,
        node_limit: u64,
        nodes: u64,
    ) -> Self {
        Tableau {
            arena,
            theory,
            gamma_limit,
            node_limit,
            nodes,
            budget_hit: false,
        }
    }

    fn tick(&mut self) -> Result<(), Exhaustion> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            Err(Exhaustion::NodeLimit)
        } else {
            Ok(())
        }
    }

    pub fn run(&mut self, branch: Branch) -> Result<Search, Exhaustion> {
        self.budget_hit = false;
        let result = self.expand(branch)?;
        Ok(match result {
            Search::Open { .. } => Search::Open {
                budget_hit: self.budget_hit,
            },
            closed => closed,
        })
    }

    fn expand(&mut self, mut b: Branch) -> Result<Search, Exhaustion> {
        loop {
            if let Step::Closed = self.drain(&mut b)? {
                return Ok(Search::Closed { branches: 1 });
            }
            match self.simplify_betas(&mut b) {
                Some(Step::Closed) => return Ok(Search::Closed { branches: 1 }),
                Some(Step::Continue) => continue,
                None => {}
            }
            if !b.betas.is_empty() {
                let beta = b.betas.remove(0);
                self.tick()?;
                let mut branches = 0;
                for d in beta {
                    let mut child = b.clone();
                    child.todo.push_back(d);
                    match self.expand(child)? {
                        Search::Closed { branches: k } => branches += k,
                        open => return Ok(open),
                    }
                }
                return Ok(Search::Closed { branches });
            }
            if !self.gamma_round(&mut b)? {
                return Ok(Search::Open { budget_hit: false });
            }
        }
    }

    /// Processes pending literals, α- and δ-formulas; queues β and γ.
    fn drain(&mut self, b: &mut Branch) -> Result<Step, Exhaustion> {
        while let Some(f) = b.todo.pop_front() {
            self.tick()?;
            b.register_terms(&f, self.arena);
            match &*f {
                NfNode::Lit(l) => {
                    if b.literal_set.contains(l) {
                        continue;
                    }
                    b.literals.push(*l);
                    b.literal_set.insert(*l);
                    if inconsistent(self.arena, &b.literals, self.theory) {
                        return Ok(Step::Closed);
                    }
                }
                _ => {
                    let key = alpha_key(&f, false, self.arena);
                    if b.keys.contains(&alpha_key(&f, true, self.arena)) {
                        return Ok(Step::Closed);
                    }
                    if !b.keys.insert(key) {
                        continue;
                    }
                    match &*f {
                        NfNode::And(x, y) => {
                            b.todo.push_back(x.clone());
                            b.todo.push_back(y.clone());
                        }
                        NfNode::Or(..) => {
                            let mut ds = Vec::new();
                            disjuncts(&f, &mut ds);
                            b.betas.push(ds);
                        }
                        NfNode::Exists(v, body) => {
                            let c = self.arena.fresh();
                            if b.term_set.insert(c) {
                                b.terms.push(c);
                            }
                            let inst = subst(body, *v, c, self.arena);
                            b.todo.push_back(inst);
                        }
                        NfNode::Forall(v, body) => b.gammas.push(Gamma {
                            var: *v,
                            body: body.clone(),
                            used: Vec::new(),
                        }),
                        NfNode::Lit(_) => unreachable!(),
                    }
                }
            }
        }
        Ok(Step::Continue)
    }

    fn literal_true(&self, b: &Branch, l: &Lit) -> bool {
        b.literal_set.contains(l) || (l.pos && l.rel == Rel::Eq && l.a == l.b)
    }

    fn disjunct_dead(&self, b: &Branch, d: &Nf) -> bool {
        match &**d {
            NfNode::Lit(l) => {
                if b.literal_set.contains(&l.negated()) {
                    return true;
                }
                let mut lits = b.literals.clone();
                lits.push(*l);
                inconsistent(self.arena, &lits, self.theory)
            }
            _ => b.keys.contains(&alpha_key(d, true, self.arena)),
        }
    }

    fn disjunct_true(&self, b: &Branch, d: &Nf) -> bool {
        match &**d {
            NfNode::Lit(l) => self.literal_true(b, l),
            _ => b.keys.contains(&alpha_key(d, false, self.arena)),
        }
    }

    /// Drops satisfied β-formulas and dead disjuncts. Returns `None` when
    /// nothing changed.
    fn simplify_betas(&mut self, b: &mut Branch) -> Option<Step> {
        let mut changed = false;
        let mut kept = Vec::with_capacity(b.betas.len());
        let betas = std::mem::take(&mut b.betas);
        for beta in betas {
            if beta.iter().any(|d| self.disjunct_true(b, d)) {
                changed = true;
                continue;
            }
            let alive: Vec<Nf> = beta
                .iter()
                .filter(|d| !self.disjunct_dead(b, d))
                .cloned()
                .collect();
            if alive.len() != beta.len() {
                changed = true;
            }
            match alive.len() {
                0 => return Some(Step::Closed),
                1 => b
                    .todo
                    .push_back(alive.into_iter().next().expect("one disjunct")),
                _ => kept.push(alive),
            }
        }
        b.betas = kept;
        changed.then_some(Step::Continue)
    }

    /// One instantiation per universal occurrence that still has budget and
    /// an unused branch term. Returns false when nothing was instantiated.
    fn gamma_round(&mut self, b: &mut Branch) -> Result<bool, Exhaustion> {
        if b.terms.is_empty() && !b.gammas.is_empty() {
            let c = self.arena.fresh();
            b.term_set.insert(c);
            b.terms.push(c);
        }
        let mut any = false;
        for i in 0..b.gammas.len() {
            if b.gammas[i].used.len() as u32 >= self.gamma_limit {
                self.budget_hit = true;
                continue;
            }
            let next = b
                .terms
                .iter()
                .copied()
                .find(|t| !b.gammas[i].used.contains(t));
            let Some(t) = next else { continue };
            self.tick()?;
            let g = &mut b.gammas[i];
            g.used.push(t);
            let inst = subst(&g.body, g.var, t, self.arena);
            b.todo.push_back(inst);
            any = true;
        }
        Ok(any)
    }
}
