//! Automorphism group order of a graph by individualization–refinement.
//!
//! Partitions are refined to equitable ones by neighbour counting; the target
//! cell is always the first largest non-singleton cell. The first path down
//! the search tree fixes a reference leaf. Levels are then revisited bottom-up:
//! for every vertex of the target cell not yet known to lie in the orbit of the
//! first choice, its subtree is searched (pruned by refinement traces) for a
//! leaf that differs from the reference leaf by an automorphism. The group order
//! is the product of the orbit lengths found at each level.

use super::SymmetryError;
use crate::bitset::{BitGraph, BitSet};
use crate::igraph::IntegralGraph;
use std::collections::VecDeque;
use std::time::Instant;

/// Largest `q` accepted by [`graph_aut_order`] unless the caller raises it.
pub const DEFAULT_IR_MAX_Q: u32 = 13;

#[derive(Clone, Debug)]
pub struct AutResult {
    pub order: u128,
    /// Automorphisms found, as vertex permutations.
    pub generators: Vec<Vec<u32>>,
    /// Orbit length of the individualized vertex at each level, top first.
    pub orbit_lengths: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<u32>,
    /// Start of the cell containing each vertex.
    cell_of: Vec<u32>,
    /// For each cell start, one past its last position.
    cell_end: Vec<u32>,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(17)
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        if n > 0 {
            cell_end[0] = n as u32;
        }
        Partition { lab: (0..n as u32).collect(), cell_of: vec![0; n], cell_end }
    }

    fn is_discrete(&self) -> bool {
        let mut pos = 0;
        while pos < self.lab.len() {
            let end = self.cell_end[pos] as usize;
            if end - pos > 1 {
                return false;
            }
            pos = end;
        }
        true
    }

    fn target_cell(&self) -> Option<usize> {
        let (mut best, mut best_len) = (None, 1);
        let mut pos = 0;
        while pos < self.lab.len() {
            let end = self.cell_end[pos] as usize;
            if end - pos > best_len {
                best = Some(pos);
                best_len = end - pos;
            }
            pos = end;
        }
        best
    }

    fn cell(&self, start: usize) -> &[u32] {
        &self.lab[start..self.cell_end[start] as usize]
    }

    /// Refines to the coarsest equitable partition below the current one,
    /// starting from the given splitter cells. Returns a trace hash that is
    /// invariant under relabelling.
    fn refine(&mut self, g: &BitGraph, splitters: &[usize], mut hash: u64) -> u64 {
        let n = self.lab.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in splitters {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut counts = vec![0u32; n];
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            let e = self.cell_end[s] as usize;
            let mut wset = BitSet::new(n);
            for &v in &self.lab[s..e] {
                wset.insert(v as usize);
            }
            hash = mix(hash, (s as u64) << 32 | e as u64);
            let mut pos = 0;
            while pos < n {
                let end = self.cell_end[pos] as usize;
                if end - pos == 1 {
                    let v = self.lab[pos] as usize;
                    hash = mix(hash, wset.intersection_len(g.row(v)) as u64);
                    pos = end;
                    continue;
                }
                let mut uniform = true;
                for i in pos..end {
                    let v = self.lab[i] as usize;
                    counts[v] = wset.intersection_len(g.row(v)) as u32;
                    uniform &= counts[v] == counts[self.lab[pos] as usize];
                }
                if uniform {
                    hash = mix(hash, counts[self.lab[pos] as usize] as u64);
                    pos = end;
                    continue;
                }
                self.lab[pos..end].sort_by_key(|&v| counts[v as usize]);
                let mut frags = Vec::new();
                let mut fs = pos;
                for i in pos + 1..=end {
                    if i == end || counts[self.lab[i] as usize] != counts[self.lab[fs] as usize] {
                        frags.push((fs, i));
                        hash = mix(hash, (counts[self.lab[fs] as usize] as u64) << 32 | (i - fs) as u64);
                        fs = i;
                    }
                }
                for &(a, b) in &frags {
                    self.cell_end[a] = b as u32;
                    for i in a..b {
                        self.cell_of[self.lab[i] as usize] = a as u32;
                    }
                }
                if queued[pos] {
                    for &(a, _) in &frags[1..] {
                        queued[a] = true;
                        queue.push_back(a);
                    }
                } else {
                    let largest = frags
                        .iter()
                        .enumerate()
                        .max_by_key(|(i, (a, b))| (b - a, std::cmp::Reverse(*i)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(a, _)) in frags.iter().enumerate() {
                        if i != largest {
                            queued[a] = true;
                            queue.push_back(a);
                        }
                    }
                }
                pos = end;
            }
        }
        hash
    }

    /// Splits `v` off the front of its cell and refines.
    fn individualize(&mut self, g: &BitGraph, v: u32) -> u64 {
        let s = self.cell_of[v as usize] as usize;
        let e = self.cell_end[s] as usize;
        let at = s + self.lab[s..e].iter().position(|&x| x == v).expect("vertex in its cell");
        self.lab.swap(s, at);
        self.cell_end[s] = (s + 1) as u32;
        self.cell_end[s + 1] = e as u32;
        for i in s + 1..e {
            self.cell_of[self.lab[i] as usize] = (s + 1) as u32;
        }
        self.refine(g, &[s], mix(0, s as u64))
    }
}

struct Level {
    part: Partition,
    target: usize,
    trace: u64,
}

struct Search<'a> {
    g: &'a BitGraph,
    path: Vec<Level>,
    leaf: Vec<u32>,
    deadline: Option<Instant>,
    ticks: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), SymmetryError> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(64) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(SymmetryError::Timeout);
                }
            }
        }
        Ok(())
    }

    /// Looks below `part` (at depth `level`) for a leaf equivalent to the reference leaf.
    fn find(&mut self, part: Partition, level: usize) -> Result<Option<Vec<u32>>, SymmetryError> {
        self.tick()?;
        if level == self.path.len() {
            if !part.is_discrete() {
                return Ok(None);
            }
            let mut gamma = vec![0u32; self.leaf.len()];
            for (i, &v) in self.leaf.iter().enumerate() {
                gamma[v as usize] = part.lab[i];
            }
            return Ok(self.g.is_automorphism(&gamma).then_some(gamma));
        }
        let target = self.path[level].target;
        if part.target_cell() != Some(target) {
            return Ok(None);
        }
        for &w in part.cell(target).to_vec().iter() {
            let mut child = part.clone();
            if child.individualize(self.g, w) != self.path[level].trace {
                continue;
            }
            if let Some(gamma) = self.find(child, level + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }
}

fn find_root(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn add_to_orbits(parent: &mut [u32], gamma: &[u32]) {
    for (x, &y) in gamma.iter().enumerate() {
        let (a, b) = (find_root(parent, x as u32), find_root(parent, y));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
}

/// Order and generators of the automorphism group of `g`.
pub fn automorphism_group(g: &BitGraph, deadline: Option<Instant>) -> Result<AutResult, SymmetryError> {
    let n = g.n();
    let mut root = Partition::unit(n);
    if n > 0 {
        root.refine(g, &[0], 0);
    }
    let mut path = Vec::new();
    let mut part = root;
    while let Some(target) = part.target_cell() {
        let v = part.lab[target];
        let mut child = part.clone();
        let trace = child.individualize(g, v);
        path.push(Level { part, target, trace });
        part = child;
    }
    let leaf = part.lab;
    let mut search = Search { g, path, leaf, deadline, ticks: 0 };

    let mut generators: Vec<Vec<u32>> = Vec::new();
    let mut orbits: Vec<u32> = (0..n as u32).collect();
    let mut orbit_lengths = vec![0; search.path.len()];
    for level in (0..search.path.len()).rev() {
        let cell = search.path[level].part.cell(search.path[level].target).to_vec();
        let v = cell[0];
        let mut failed: Vec<u32> = Vec::new();
        for &w in &cell[1..] {
            if find_root(&mut orbits, w) == find_root(&mut orbits, v) {
                continue;
            }
            if failed.iter().any(|&f| find_root(&mut orbits, f) == find_root(&mut orbits, w)) {
                continue;
            }
            let mut child = search.path[level].part.clone();
            let found = if child.individualize(g, w) == search.path[level].trace {
                search.find(child, level + 1)?
            } else {
                None
            };
            match found {
                Some(gamma) => {
                    add_to_orbits(&mut orbits, &gamma);
                    generators.push(gamma);
                }
                None => failed.push(w),
            }
        }
        let rv = find_root(&mut orbits, v);
        orbit_lengths[level] = cell.iter().filter(|&&w| find_root(&mut orbits, w) == rv).count();
    }
    let order = orbit_lengths.iter().map(|&l| l as u128).product();
    Ok(AutResult { order, generators, orbit_lengths })
}

/// `|Aut|` of the integral-distance graph, refusing `q` above `max_q`.
pub fn graph_aut_order(g: &IntegralGraph, max_q: u32, deadline: Option<Instant>) -> Result<AutResult, SymmetryError> {
    if g.q() > max_q {
        return Err(SymmetryError::TooLarge { q: g.q(), bound: max_q });
    }
    automorphism_group(g.graph(), deadline)
}
