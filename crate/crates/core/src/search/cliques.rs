//! Maximal-clique enumeration: Bron–Kerbosch with Tomita pivoting on bitsets.

use crate::bitset::{BitGraph, BitSet};
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

/// Raised when a deadline passes mid-enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expired;

struct Walker<'a, F> {
    g: &'a BitGraph,
    floor: usize,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
    nodes: u64,
    visit: F,
}

impl<F: FnMut(&[usize])> Walker<'_, F> {
    fn check(&mut self) -> Result<(), Expired> {
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if self.expired.load(Ordering::Relaxed) {
                return Err(Expired);
            }
            if self.deadline.is_some_and(|d| Instant::now() > d) {
                self.expired.store(true, Ordering::Relaxed);
                return Err(Expired);
            }
        }
        Ok(())
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) -> Result<(), Expired> {
        self.check()?;
        if p.is_empty() {
            if x.is_empty() && r.len() >= self.floor {
                (self.visit)(r);
            }
            return Ok(());
        }
        if r.len() + p.len() < self.floor {
            return Ok(());
        }
        let pivot = pivot(self.g, &p, &x);
        let mut branch = p.clone();
        branch.and_not_with(self.g.row(pivot));
        for v in branch.iter() {
            r.push(v);
            let row = self.g.row(v);
            self.expand(r, p.intersection(row), x.intersection(row))?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        Ok(())
    }
}

/// Vertex of `P ∪ X` with the most neighbours in `P`.
fn pivot(g: &BitGraph, p: &BitSet, x: &BitSet) -> usize {
    let mut best = (0, usize::MAX);
    for u in p.iter().chain(x.iter()) {
        let c = p.intersection_len(g.row(u));
        if best.1 == usize::MAX || c > best.0 {
            best = (c, u);
        }
    }
    best.1
}

/// Calls `visit` on every maximal clique of `g` with at least `floor` vertices,
/// sequentially and in a fixed order.
pub fn for_each_maximal_clique(
    g: &BitGraph,
    floor: usize,
    deadline: Option<Instant>,
    visit: impl FnMut(&[usize]),
) -> Result<(), Expired> {
    let expired = AtomicBool::new(false);
    let mut w = Walker { g, floor, deadline, expired: &expired, nodes: 0, visit };
    w.expand(&mut Vec::new(), BitSet::full(g.n()), BitSet::new(g.n()))
}

/// Parallel enumeration: the top-level branches are distributed over the
/// rayon pool; each branch folds its cliques into an accumulator created by
/// `init`, and accumulators are combined with `merge` in branch order.
pub fn fold_maximal_cliques<A, I, V, M>(
    g: &BitGraph,
    floor: usize,
    deadline: Option<Instant>,
    init: I,
    visit: V,
    merge: M,
) -> Result<A, Expired>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[usize]) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let n = g.n();
    let p = BitSet::full(n);
    if n == 0 {
        let mut acc = init();
        if floor == 0 {
            visit(&mut acc, &[]);
        }
        return Ok(acc);
    }
    let piv = pivot(g, &p, &BitSet::new(n));
    let mut branch = p.clone();
    branch.and_not_with(g.row(piv));
    // Branch i sees P \ {v_0..v_{i-1}} and X = {v_0..v_{i-1}}, restricted to N(v_i).
    let mut tasks = Vec::new();
    let mut p_rest = p;
    let mut x_rest = BitSet::new(n);
    for v in branch.iter() {
        let row = g.row(v);
        tasks.push((v, p_rest.intersection(row), x_rest.intersection(row)));
        p_rest.remove(v);
        x_rest.insert(v);
    }
    let expired = AtomicBool::new(false);
    let results: Vec<Result<A, Expired>> = tasks
        .into_par_iter()
        .map(|(v, p, x)| {
            let mut acc = init();
            let mut w = Walker {
                g,
                floor,
                deadline,
                expired: &expired,
                nodes: 0,
                visit: |c: &[usize]| visit(&mut acc, c),
            };
            w.expand(&mut vec![v], p, x)?;
            Ok(acc)
        })
        .collect();
    let mut out = init();
    for r in results {
        out = merge(out, r?);
    }
    Ok(out)
}

/// Reference enumeration by checking every vertex subset; for tiny graphs only.
pub fn brute_force_maximal_cliques(g: &BitGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 24, "brute force is limited to 24 vertices");
    let is_clique = |mask: u32| {
        (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| {
            (i + 1..n).filter(|&j| mask >> j & 1 == 1).all(|j| g.has_edge(i, j))
        })
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if !is_clique(mask) {
            continue;
        }
        let maximal = (0..n).filter(|&v| mask >> v & 1 == 0).all(|v| !is_clique(mask | 1 << v));
        if maximal {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}
