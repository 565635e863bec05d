//! Ground consistency check for branch literals modulo the background
//! order and equality theory.
//!
//! With every flag enabled this is a decision procedure: congruence closure
//! for `=`, then strongly connected components of the `<`/`<=` graph
//! (negated `<` contributes a `<=` edge by totality). A strict edge inside a
//! component is a contradiction; a component without one collapses into a
//! single equivalence class, and the two steps repeat until stable.

use std::collections::HashMap;

use crate::prover::nnf::{Arena, Lit, Node, Rel, TermId};
use crate::prover::BackgroundTheory;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller index wins so representatives are deterministic.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

struct Universe {
    ids: Vec<TermId>,
    local: HashMap<TermId, usize>,
}

impl Universe {
    fn add(&mut self, arena: &Arena, id: TermId) -> usize {
        if let Some(&i) = self.local.get(&id) {
            return i;
        }
        if let Node::App(h, a) = arena.node(id) {
            self.add(arena, h);
            self.add(arena, a);
        }
        let i = self.ids.len();
        self.ids.push(id);
        self.local.insert(id, i);
        i
    }
}

/// Returns true when the literal set has no model of the theory.
pub(crate) fn inconsistent(arena: &Arena, lits: &[Lit], theory: &BackgroundTheory) -> bool {
    let mut uni = Universe {
        ids: Vec::new(),
        local: HashMap::new(),
    };
    let locals: Vec<(Lit, usize, usize)> = lits
        .iter()
        .map(|l| (*l, uni.add(arena, l.a), uni.add(arena, l.b)))
        .collect();
    let n = uni.ids.len();
    let mut uf = UnionFind::new(n);

    if !theory.equality {
        return inconsistent_without_equality(arena, &uni, &locals, theory);
    }

    for (l, a, b) in &locals {
        if l.pos && l.rel == Rel::Eq {
            uf.union(*a, *b);
        }
    }

    let apps: Vec<(usize, TermId, usize)> = (0..n)
        .filter_map(|i| match arena.node(uni.ids[i]) {
            Node::App(h, a) => Some((i, h, uni.local[&a])),
            _ => None,
        })
        .collect();
    let numerals = numerals(arena, &uni);
    let collapse = theory.irreflexive && theory.transitive && theory.total;

    loop {
        congruence(&mut uf, &apps);

        let mut edges: Vec<(usize, usize, bool)> = Vec::new();
        for (l, a, b) in &locals {
            if l.rel != Rel::Lt {
                continue;
            }
            let (ra, rb) = (uf.find(*a), uf.find(*b));
            if l.pos {
                edges.push((ra, rb, true));
            } else if theory.total {
                edges.push((rb, ra, false));
            }
        }
        numeral_edges(&numerals, &mut uf, theory.transitive, &mut edges);

        if strict_contradiction(n, &edges, &locals, &mut uf, theory) {
            return true;
        }

        if !collapse {
            break;
        }
        let comp = components(n, &edges);
        let mut merged = false;
        for i in 0..n {
            let root = uf.find(i);
            if root == i {
                let c = comp[i];
                for (j, cj) in comp.iter().enumerate().skip(i + 1) {
                    if uf.find(j) == j && *cj == c {
                        merged |= uf.union(i, j);
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }

    locals
        .iter()
        .any(|(l, a, b)| !l.pos && l.rel == Rel::Eq && uf.find(*a) == uf.find(*b))
}

fn congruence(uf: &mut UnionFind, apps: &[(usize, TermId, usize)]) {
    loop {
        let mut changed = false;
        let mut table: HashMap<(TermId, usize), usize> = HashMap::new();
        for &(i, head, arg) in apps {
            let key = (head, uf.find(arg));
            match table.get(&key) {
                Some(&j) => changed |= uf.union(i, j),
                None => {
                    table.insert(key, i);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn numerals(arena: &Arena, uni: &Universe) -> Vec<(u64, usize)> {
    let mut nums: Vec<(u64, usize)> = (0..uni.ids.len())
        .filter_map(|i| match arena.node(uni.ids[i]) {
            Node::Num(k) => Some((k, i)),
            _ => None,
        })
        .collect();
    nums.sort_unstable();
    nums
}

/// Distinct numerals `k < m` contribute the ground fact `k < m`.
fn numeral_edges(
    nums: &[(u64, usize)],
    uf: &mut UnionFind,
    transitive: bool,
    edges: &mut Vec<(usize, usize, bool)>,
) {
    if transitive {
        for w in nums.windows(2) {
            edges.push((uf.find(w[0].1), uf.find(w[1].1), true));
        }
    } else {
        for (i, (_, a)) in nums.iter().enumerate() {
            for (_, b) in &nums[i + 1..] {
                edges.push((uf.find(*a), uf.find(*b), true));
            }
        }
    }
}

fn strict_contradiction(
    n: usize,
    edges: &[(usize, usize, bool)],
    locals: &[(Lit, usize, usize)],
    uf: &mut UnionFind,
    theory: &BackgroundTheory,
) -> bool {
    if !theory.transitive {
        if theory.irreflexive && edges.iter().any(|(a, b, s)| *s && a == b) {
            return true;
        }
        return locals.iter().any(|(l, a, b)| {
            if l.pos || l.rel != Rel::Lt {
                return false;
            }
            let (ra, rb) = (uf.find(*a), uf.find(*b));
            edges.contains(&(ra, rb, true))
        });
    }

    if theory.irreflexive {
        let comp = components(n, edges);
        if edges.iter().any(|(a, b, s)| *s && comp[*a] == comp[*b]) {
            return true;
        }
        if theory.total {
            // A strict path a→b closes against ¬(a<b) through the b≤a edge,
            // which the component test above has already seen.
            return false;
        }
    }
    locals.iter().any(|(l, a, b)| {
        !l.pos && l.rel == Rel::Lt && strict_path(n, edges, uf.find(*a), uf.find(*b))
    })
}

fn strict_path(n: usize, edges: &[(usize, usize, bool)], from: usize, to: usize) -> bool {
    // States: (node, seen a strict edge).
    let mut seen = vec![[false; 2]; n];
    let mut stack = vec![(from, false)];
    seen[from][0] = true;
    while let Some((u, strict)) = stack.pop() {
        for &(a, b, s) in edges {
            if a != u {
                continue;
            }
            let st = strict || s;
            if b == to && st {
                return true;
            }
            if !seen[b][st as usize] {
                seen[b][st as usize] = true;
                stack.push((b, st));
            }
        }
    }
    false
}

/// Strongly connected component index per node (Tarjan).
fn components(n: usize, edges: &[(usize, usize, bool)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in edges {
        adj[a].push(b);
    }
    struct State {
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        ncomp: usize,
    }
    fn visit(v: usize, adj: &[Vec<usize>], st: &mut State) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &adj[v] {
            match st.index[w] {
                None => {
                    visit(w, adj, st);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                _ => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            loop {
                let w = st.stack.pop().expect("tarjan stack");
                st.on_stack[w] = false;
                st.comp[w] = st.ncomp;
                if w == v {
                    break;
                }
            }
            st.ncomp += 1;
        }
    }
    let mut st = State {
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(v, &adj, &mut st);
        }
    }
    st.comp
}

/// `=` is treated as an uninterpreted relation, so totality yields nothing
/// usable and only strict `<` reasoning applies.
fn inconsistent_without_equality(
    arena: &Arena,
    uni: &Universe,
    locals: &[(Lit, usize, usize)],
    theory: &BackgroundTheory,
) -> bool {
    let complementary = locals.iter().any(|(l, ..)| {
        !l.pos
            && locals
                .iter()
                .any(|(m, ..)| m.pos && m.rel == l.rel && m.a == l.a && m.b == l.b)
    });
    if complementary {
        return true;
    }
    let n = uni.ids.len();
    let mut uf = UnionFind::new(n);
    let mut edges: Vec<(usize, usize, bool)> = locals
        .iter()
        .filter(|(l, ..)| l.pos && l.rel == Rel::Lt)
        .map(|(_, a, b)| (*a, *b, true))
        .collect();
    numeral_edges(
        &numerals(arena, uni),
        &mut uf,
        theory.transitive,
        &mut edges,
    );
    let strict_only = BackgroundTheory {
        total: false,
        ..theory.clone()
    };
    strict_contradiction(n, &edges, locals, &mut uf, &strict_only)
}
