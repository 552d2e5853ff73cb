//! Closure of generating sets into explicit groups acting on `F_q²`.
//!
//! Every group handled here contains all translations, so it factors as
//! `G = G₀ · T` with `G₀` the stabilizer of the origin. Only `G₀` is stored
//! explicitly; `|G| = q² · |G₀|`.

use super::affine::AffMap;
use super::SymmetryError;
use crate::field::FieldCtx;
use crate::plane::{point_add, point_sub, Point};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

/// A group of affine-semilinear maps, stored as its orbit of the origin and
/// the explicit list of origin-fixing elements.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    q: u32,
    orbit_len: usize,
    linear: Vec<AffMap>,
    index: HashSet<AffMap>,
    stab_gens: Vec<AffMap>,
}

impl AffineGroup {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.orbit_len as u64 * self.linear.len() as u64
    }

    /// Size of the orbit of the origin (the translation part when transitive).
    pub fn orbit_len(&self) -> usize {
        self.orbit_len
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_len == (self.q * self.q) as usize
    }

    /// Origin-fixing elements, identity first.
    pub fn linear_parts(&self) -> &[AffMap] {
        &self.linear
    }

    /// Generators of the origin stabilizer that were needed during closure.
    pub fn stabilizer_generators(&self) -> &[AffMap] {
        &self.stab_gens
    }

    /// Membership, assuming the group is transitive (so only the linear part matters).
    pub fn contains(&self, map: &AffMap) -> bool {
        self.index.contains(&map.linear_part())
    }
}

/// Closes `gens` into an [`AffineGroup`] via Schreier generators over the
/// orbit of the origin. Fails if the order would exceed `cap`.
pub fn close_group(ctx: &FieldCtx, gens: &[AffMap], cap: u64) -> Result<AffineGroup, SymmetryError> {
    let q = ctx.q();
    // Orbit of the origin with a transversal u_x (u_x(0) = x).
    let mut transversal: HashMap<u32, AffMap> = HashMap::new();
    transversal.insert(0, AffMap::IDENTITY);
    let mut order_seen = vec![0u32];
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let ux = transversal[&x];
        for g in gens {
            let y = g.apply(ctx, Point::from_code(x, q)).code(q);
            if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(y) {
                e.insert(g.compose(ctx, &ux));
                order_seen.push(y);
                queue.push_back(y);
            }
        }
    }
    let inverses: HashMap<u32, AffMap> = transversal
        .iter()
        .map(|(&x, u)| (x, u.inverse(ctx).expect("generators are invertible")))
        .collect();

    let mut schreier: Vec<AffMap> = Vec::new();
    let mut seen = HashSet::new();
    for &x in &order_seen {
        let ux = transversal[&x];
        for g in gens {
            let y = g.apply(ctx, Point::from_code(x, q)).code(q);
            let s = inverses[&y].compose(ctx, &g.compose(ctx, &ux));
            debug_assert!(s.fixes_origin());
            if s != AffMap::IDENTITY && seen.insert(s) {
                schreier.push(s);
            }
        }
    }

    let orbit_len = order_seen.len();
    let mut group = AffineGroup {
        q,
        orbit_len,
        linear: vec![AffMap::IDENTITY],
        index: HashSet::from([AffMap::IDENTITY]),
        stab_gens: Vec::new(),
    };
    for s in schreier {
        if group.index.contains(&s) {
            continue;
        }
        group.stab_gens.push(s);
        // Re-close: every element times every accepted generator.
        let mut i = 0;
        while i < group.linear.len() {
            let e = group.linear[i];
            for g in &group.stab_gens {
                let h = g.compose(ctx, &e);
                if group.index.insert(h) {
                    group.linear.push(h);
                }
            }
            i += 1;
            if orbit_len as u64 * group.linear.len() as u64 > cap {
                return Err(SymmetryError::CapExceeded { cap });
            }
        }
    }
    Ok(group)
}

/// Breadth-first closure of arbitrary permutations into their full element list.
///
/// Exponential in nothing but the group order; intended for small groups.
pub fn close_perms(gens: &[Vec<u32>], cap: u64) -> Result<Vec<Vec<u32>>, SymmetryError> {
    let n = gens.first().map_or(0, |g| g.len());
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut elems = vec![identity.clone()];
    let mut index = HashSet::from([identity]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = compose(g, &elems[i]);
            if index.insert(h.clone()) {
                elems.push(h);
                if elems.len() as u64 > cap {
                    return Err(SymmetryError::CapExceeded { cap });
                }
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// `(a ∘ b)[x] = a[b[x]]`.
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

/// A transitive group on `F_q²` containing all translations, stored as the
/// explicit list of its origin-fixing permutations.
#[derive(Clone, Debug)]
pub struct PlaneGroup {
    q: u32,
    n: usize,
    /// `stab.len() / n` permutations, identity first.
    stab: Vec<u32>,
    gens: Vec<Vec<u32>>,
    movers: OnceLock<Movers>,
}

/// For each point `d`: the least code `min[d]` in its `G₀`-orbit and the
/// stabilizer indices `i` with `g_i(d) = min[d]`.
#[derive(Clone, Debug)]
pub(crate) struct Movers {
    pub(crate) min: Vec<u32>,
    offsets: Vec<usize>,
    indices: Vec<u32>,
}

impl Movers {
    fn new(group: &PlaneGroup) -> Self {
        let n = group.n;
        let mut min = vec![u32::MAX; n];
        for g in group.stabilizer_elements() {
            for (m, &x) in min.iter_mut().zip(g) {
                *m = (*m).min(x);
            }
        }
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, g) in group.stabilizer_elements().enumerate() {
            for d in 0..n {
                if g[d] == min[d] {
                    buckets[d].push(i as u32);
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for b in &buckets {
            offsets.push(offsets.last().unwrap() + b.len());
        }
        Movers { min, offsets, indices: buckets.concat() }
    }

    /// Stabilizer indices sending `d` to `min[d]`.
    #[inline]
    pub(crate) fn of(&self, d: u32) -> &[u32] {
        &self.indices[self.offsets[d as usize]..self.offsets[d as usize + 1]]
    }
}

impl PlaneGroup {
    pub fn from_affine(ctx: &FieldCtx, group: &AffineGroup) -> Result<Self, SymmetryError> {
        if !group.is_transitive() {
            return Err(SymmetryError::NotTransitive);
        }
        let q = ctx.q();
        let n = (q * q) as usize;
        let mut stab = Vec::with_capacity(n * group.linear_parts().len());
        for m in group.linear_parts() {
            stab.extend(m.to_perm(ctx));
        }
        let gens = group.stabilizer_generators().iter().map(|m| m.to_perm(ctx)).collect();
        Ok(PlaneGroup { q, n, stab, gens, movers: OnceLock::new() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizer_len(&self) -> usize {
        self.stab.len() / self.n
    }

    pub fn order(&self) -> u64 {
        self.n as u64 * self.stabilizer_len() as u64
    }

    #[inline]
    pub fn stabilizer_element(&self, i: usize) -> &[u32] {
        &self.stab[i * self.n..(i + 1) * self.n]
    }

    pub fn stabilizer_elements(&self) -> impl Iterator<Item = &[u32]> {
        self.stab.chunks_exact(self.n)
    }

    pub fn stabilizer_generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub(crate) fn movers(&self) -> &Movers {
        self.movers.get_or_init(|| Movers::new(self))
    }

    /// The group element `x ↦ g₀(x − anchor)` as a permutation.
    pub fn element(&self, ctx: &FieldCtx, stab_index: usize, anchor: u32) -> Vec<u32> {
        let g = self.stabilizer_element(stab_index);
        let a = Point::from_code(anchor, self.q);
        (0..self.n as u32)
            .map(|c| g[point_sub(ctx, Point::from_code(c, self.q), a).code(self.q) as usize])
            .collect()
    }

    /// Adds further automorphisms (not necessarily affine) and recomputes the
    /// origin stabilizer from Schreier generators over the translation transversal.
    pub fn augment(&mut self, ctx: &FieldCtx, extra: &[Vec<u32>], cap: u64) -> Result<(), SymmetryError> {
        let (q, n) = (self.q, self.n);
        let mut elems: Vec<Vec<u32>> = self.stabilizer_elements().map(<[u32]>::to_vec).collect();
        let mut index: HashSet<Vec<u32>> = elems.iter().cloned().collect();
        let mut accepted = self.gens.clone();

        let sources: Vec<Vec<u32>> = self.gens.iter().chain(extra).cloned().collect();
        for s in &sources {
            for v in 0..n as u32 {
                let vp = Point::from_code(v, q);
                let sv = Point::from_code(s[v as usize], q);
                // x ↦ s(x + v) − s(v)
                let sg: Vec<u32> = (0..n as u32)
                    .map(|x| {
                        let shifted = point_add(ctx, Point::from_code(x, q), vp).code(q);
                        point_sub(ctx, Point::from_code(s[shifted as usize], q), sv).code(q)
                    })
                    .collect();
                if index.contains(&sg) {
                    continue;
                }
                accepted.push(sg);
                let mut i = 0;
                while i < elems.len() {
                    for g in &accepted {
                        let h = compose(g, &elems[i]);
                        if index.insert(h.clone()) {
                            elems.push(h);
                        }
                    }
                    i += 1;
                    if n as u64 * elems.len() as u64 > cap {
                        return Err(SymmetryError::CapExceeded { cap });
                    }
                }
            }
        }
        self.stab = elems.concat();
        self.gens = accepted;
        self.movers = OnceLock::new();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::affine::{h_generators, semilinear_stabilizer};
    use super::*;

    fn h_order(q: u32) -> u64 {
        let ctx = FieldCtx::from_order(q).unwrap();
        close_group(&ctx, &h_generators(&ctx).unwrap(), u64::MAX).unwrap().order()
    }

    #[test]
    fn h_orders() {
        assert_eq!(h_order(7), 2352);
        assert_eq!(h_order(13), 24336);
        assert_eq!(h_order(5), 800);
        assert_eq!(h_order(9), 31104);
    }

    #[test]
    fn product_closure_matches_naive_closure() {
        for q in [3, 5, 7, 9] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let gens = h_generators(&ctx).unwrap();
            let perms: Vec<Vec<u32>> = gens.iter().map(|g| g.to_perm(&ctx)).collect();
            let naive = close_perms(&perms, 1 << 20).unwrap();
            assert_eq!(naive.len() as u64, h_order(q), "q = {q}");
        }
    }

    #[test]
    fn h_equals_semilinear_stabilizer_times_translations() {
        for q in [3, 5, 7, 9, 11, 13] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let brute = semilinear_stabilizer(&ctx).len() as u64 * (q * q) as u64;
            assert_eq!(brute, h_order(q), "q = {q}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let gens = h_generators(&ctx).unwrap();
        assert_eq!(
            close_group(&ctx, &gens, 1000).unwrap_err(),
            SymmetryError::CapExceeded { cap: 1000 }
        );
    }

    #[test]
    fn plane_group_elements_preserve_adjacency() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let g = crate::igraph::build_graph(&ctx).unwrap();
        let group = close_group(&ctx, &h_generators(&ctx).unwrap(), u64::MAX).unwrap();
        let pg = PlaneGroup::from_affine(&ctx, &group).unwrap();
        assert_eq!(pg.order(), 2352);
        for i in 0..pg.stabilizer_len() {
            for anchor in [0, 10, 48] {
                assert!(g.graph().is_automorphism(&pg.element(&ctx, i, anchor)));
            }
        }
    }
}
