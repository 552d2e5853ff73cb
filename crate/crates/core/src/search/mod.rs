//! Maximality tests, maximal-clique enumeration and the isomorph-free
//! classification of inclusion-maximal integral point sets.
//!
//! Sets with fewer than two points never matter for odd `q ≥ 3`: the empty
//! set extends by any point and a single point by any integral neighbour. Every
//! larger set contains a pair that the group moves to `{(0,0), (1,0)}`, or, if
//! all its distances vanish, to `{(0,0), (1,ω)}`. Classification therefore
//! enumerates the maximal cliques of the common neighbourhood of each of these
//! seed pairs and keeps one canonical form per orbit.

pub mod cliques;
pub mod orderly;

use crate::bitset::BitSet;
use crate::field::{FieldCtx, FieldError};
use crate::igraph::{build_graph, neighborhood_graph, GraphError, IntegralGraph, LocalGraph};
use crate::plane::{PlaneError, PointSet};
use crate::symmetry::canon::{canonize_with, Differ};
use crate::symmetry::{classification_group, CanonicalForm, GroupInfo, PlaneGroup, SymmetryError};
use cliques::{fold_maximal_cliques, for_each_maximal_clique, Expired};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;
use thiserror::Error;

/// Largest `q` classified unless the caller raises the bound.
pub const DEFAULT_MAX_CLASSIFY_Q: u32 = 19;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("point set is not integral")]
    NotIntegral,
    #[error("q = {0} is even; every point set is integral")]
    EvenOrder(u32),
    #[error("q = {0} is odd")]
    OddOrder(u32),
    #[error("q = {q} exceeds the configured bound {bound}")]
    TooLarge { q: u32, bound: u32 },
    #[error("time budget exhausted")]
    Timeout,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

impl From<Expired> for SearchError {
    fn from(_: Expired) -> Self {
        SearchError::Timeout
    }
}

/// `A_{q,s}`: number of classes of inclusion-maximal integral sets per size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub q: u32,
    pub rows: BTreeMap<usize, u64>,
}

impl SpectrumTable {
    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    pub fn count(&self, size: usize) -> u64 {
        self.rows.get(&size).copied().unwrap_or(0)
    }

    /// `l_q`, the smallest size of a maximal set.
    pub fn min_size(&self) -> Option<usize> {
        self.rows.keys().next().copied()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.rows.keys().next_back().copied()
    }

    /// Cells as `size:count`, separated by spaces.
    pub fn cells(&self) -> String {
        self.rows.iter().map(|(s, c)| format!("{s}:{c}")).collect::<Vec<_>>().join(" ")
    }
}

/// One isomorphism class of inclusion-maximal integral sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub size: usize,
    pub form: CanonicalForm,
    pub stab_order: u64,
    /// `|G| / stab_order`.
    pub orbit_len: u64,
}

impl ClassRecord {
    pub fn representative(&self, q: u32) -> PointSet {
        self.form.to_pointset(q)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub q: u32,
    pub group: GroupInfo,
    pub table: SpectrumTable,
    pub records: Vec<ClassRecord>,
}

/// Everything the searches need for one field: the graph, the classification
/// group and a difference table.
pub struct SearchContext {
    ctx: FieldCtx,
    graph: IntegralGraph,
    group: PlaneGroup,
    info: GroupInfo,
    differ: Differ,
}

impl SearchContext {
    pub fn new(ctx: FieldCtx, deadline: Option<Instant>) -> Result<Self, SearchError> {
        if !ctx.is_odd() {
            return Err(SearchError::EvenOrder(ctx.q()));
        }
        let graph = build_graph(&ctx)?;
        let (group, info) = classification_group(&ctx, deadline)?;
        let differ = Differ::new(&ctx);
        Ok(SearchContext { ctx, graph, group, info, differ })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn graph(&self) -> &IntegralGraph {
        &self.graph
    }

    pub fn group(&self) -> &PlaneGroup {
        &self.group
    }

    pub fn group_info(&self) -> &GroupInfo {
        &self.info
    }

    pub fn canonize(&self, set: &PointSet) -> crate::symmetry::Canonized {
        canonize_with(&self.differ, &self.group, set.codes())
    }

    pub(crate) fn differ(&self) -> &Differ {
        &self.differ
    }

    /// The seed pairs every class of size ≥ 2 can be moved onto.
    pub fn seeds(&self) -> Vec<[u32; 2]> {
        let q = self.q();
        let mut seeds = vec![[0, q]];
        if let Some(w) = self.ctx.omega() {
            seeds.push([0, q + w.0]);
        }
        seeds
    }

    fn record(&self, codes: &[u32]) -> ClassRecord {
        let c = canonize_with(&self.differ, &self.group, codes);
        ClassRecord {
            size: codes.len(),
            form: c.form,
            stab_order: c.stabilizer_order,
            orbit_len: self.group.order() / c.stabilizer_order,
        }
    }
}

fn common_neighbours(graph: &IntegralGraph, set: &PointSet) -> Result<BitSet, SearchError> {
    let n = graph.n();
    if set.q() != graph.q() {
        return Err(PlaneError::FieldMismatch { expected: graph.q(), found: set.q() }.into());
    }
    let mut common = BitSet::full(n);
    for &c in set.codes() {
        // Earlier points have already cut `common` down to their neighbours.
        if !common.contains(c as usize) {
            return Err(SearchError::NotIntegral);
        }
        common.and_with(graph.row(c));
    }
    Ok(common)
}

/// Points outside `set` at integral distance from all of it.
pub fn extension_candidates(graph: &IntegralGraph, set: &PointSet) -> Result<PointSet, SearchError> {
    let common = common_neighbours(graph, set)?;
    Ok(PointSet::from_sorted_codes(graph.q(), common.iter().map(|c| c as u32).collect()))
}

pub fn is_maximal(graph: &IntegralGraph, set: &PointSet) -> Result<bool, SearchError> {
    Ok(common_neighbours(graph, set)?.is_empty())
}

/// Streams every inclusion-maximal integral set containing the anchors of
/// `local` with at least `size_floor` points (anchors included).
pub fn enum_maximal_cliques(
    local: &LocalGraph,
    size_floor: usize,
    deadline: Option<Instant>,
    mut visit: impl FnMut(PointSet),
) -> Result<(), SearchError> {
    let floor = size_floor.saturating_sub(local.anchors().len());
    for_each_maximal_clique(local.graph(), floor, deadline, |c| {
        let codes = c.iter().map(|&i| local.vertices()[i]).chain(local.anchors().iter().copied());
        visit(PointSet::from_codes(local.q(), codes).expect("codes are in range"));
    })?;
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub max_q: u32,
    /// Classes smaller than this are skipped (the table is then partial).
    pub size_floor: usize,
    pub deadline: Option<Instant>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_q: DEFAULT_MAX_CLASSIFY_Q, size_floor: 0, deadline: None }
    }
}

/// Classifies inclusion-maximal integral point sets of `F_q²` (odd `q`) up to
/// the automorphisms of `𝔊`. Output is sorted by size, then canonical form,
/// and does not depend on the number of threads.
pub fn classify(sc: &SearchContext, opts: &ClassifyOptions) -> Result<Classification, SearchError> {
    let q = sc.q();
    if q > opts.max_q {
        return Err(SearchError::TooLarge { q, bound: opts.max_q });
    }
    let mut classes: BTreeMap<(usize, CanonicalForm), ClassRecord> = BTreeMap::new();
    for seed in sc.seeds() {
        let local = neighborhood_graph(sc.graph(), &seed);
        let floor = opts.size_floor.saturating_sub(seed.len());
        let found = fold_maximal_cliques(
            local.graph(),
            floor,
            opts.deadline,
            HashMap::new,
            |acc: &mut HashMap<CanonicalForm, ClassRecord>, c| {
                let mut codes: Vec<u32> = c.iter().map(|&i| local.vertices()[i]).chain(seed).collect();
                codes.sort_unstable();
                let rec = sc.record(&codes);
                acc.entry(rec.form.clone()).or_insert(rec);
            },
            |mut a, b| {
                for (k, v) in b {
                    a.entry(k).or_insert(v);
                }
                a
            },
        )?;
        for (form, rec) in found {
            classes.entry((rec.size, form)).or_insert(rec);
        }
    }
    let records: Vec<ClassRecord> = classes.into_values().collect();
    let mut table = SpectrumTable { q, rows: BTreeMap::new() };
    for r in &records {
        *table.rows.entry(r.size).or_default() += 1;
    }
    Ok(Classification { q, group: sc.group_info().clone(), table, records })
}

/// For even `q` every pair is integral, so the whole plane is the only maximal set.
pub fn classify_even(ctx: &FieldCtx) -> Result<SpectrumTable, SearchError> {
    let q = ctx.q();
    if ctx.is_odd() {
        return Err(SearchError::OddOrder(q));
    }
    Ok(SpectrumTable { q, rows: BTreeMap::from([((q * q) as usize, 1)]) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SecondLargest {
    /// The largest size below `q` attained by a maximal set.
    Exact { size: usize },
    /// Every maximal set has `q` points.
    Absent,
    /// The budget ran out: some maximal set has `lower` points (if known) and
    /// none has more than `upper` points below `q`.
    Bounds { lower: Option<usize>, upper: usize },
}

/// Largest size `< q` of an inclusion-maximal set, searching with a size
/// floor of `(q+3)/2` and lowering it one step at a time if nothing is found.
pub fn second_largest_size(sc: &SearchContext, deadline: Option<Instant>) -> Result<SecondLargest, SearchError> {
    let q = sc.q() as usize;
    let mut upper = q - 1;
    let mut floor = (q + 3) / 2;
    let locals: Vec<LocalGraph> = sc.seeds().iter().map(|s| neighborhood_graph(sc.graph(), s)).collect();
    loop {
        floor = floor.min(upper);
        let mut best: Option<usize> = None;
        for local in &locals {
            let res = fold_maximal_cliques(
                local.graph(),
                floor.saturating_sub(2),
                deadline,
                || None,
                |acc: &mut Option<usize>, c| {
                    let size = c.len() + 2;
                    if size < q {
                        *acc = (*acc).max(Some(size));
                    }
                },
                |a, b| a.max(b),
            );
            match res {
                Ok(found) => best = best.max(found),
                Err(Expired) => return Ok(SecondLargest::Bounds { lower: best, upper }),
            }
        }
        if let Some(size) = best {
            return Ok(SecondLargest::Exact { size });
        }
        if floor <= 2 {
            return Ok(SecondLargest::Absent);
        }
        upper = floor - 1;
        floor -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::igraph::local_graph;

    fn sc(q: u32) -> SearchContext {
        SearchContext::new(FieldCtx::from_order(q).unwrap(), None).unwrap()
    }

    fn classify_q(q: u32) -> Classification {
        classify(&sc(q), &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn candidates_and_maximality() {
        let s = sc(7);
        let g = s.graph();
        assert_eq!(extension_candidates(g, &PointSet::empty(7)).unwrap().len(), 49);
        let axis = PointSet::from_codes(7, (0..7).map(|x| x * 7)).unwrap();
        assert!(extension_candidates(g, &axis).unwrap().is_empty());
        assert!(is_maximal(g, &axis).unwrap());
        let single = PointSet::from_codes(7, [0]).unwrap();
        assert!(!is_maximal(g, &single).unwrap());
        let bad = PointSet::from_coords(7, &[(0, 0), (1, 2)]).unwrap();
        assert_eq!(is_maximal(g, &bad).unwrap_err(), SearchError::NotIntegral);
    }

    #[test]
    fn small_tables() {
        let rows = |q| classify_q(q).table.rows;
        assert_eq!(rows(3), BTreeMap::from([(3, 1)]));
        assert_eq!(rows(5), BTreeMap::from([(5, 1)]));
        assert_eq!(rows(7), BTreeMap::from([(5, 1), (7, 1)]));
        assert_eq!(rows(9), BTreeMap::from([(6, 2), (9, 2)]));
        assert_eq!(rows(11), BTreeMap::from([(7, 3), (11, 1)]));
    }

    #[test]
    fn q13_table() {
        let c = classify_q(13);
        assert_eq!(c.table.total(), 30);
        assert_eq!(c.table.rows, BTreeMap::from([(6, 2), (7, 11), (8, 8), (9, 5), (10, 1), (13, 3)]));
        assert_eq!(c.table.min_size(), Some(6));
    }

    #[test]
    fn q7_sets_have_sizes_five_or_seven() {
        let s = sc(7);
        let local = neighborhood_graph(s.graph(), &[0]);
        let mut sizes = std::collections::BTreeSet::new();
        enum_maximal_cliques(&local, 0, None, |p| {
            assert!(is_maximal(s.graph(), &p).unwrap());
            sizes.insert(p.len());
        })
        .unwrap();
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![5, 7]);
    }

    #[test]
    fn double_counting() {
        for q in [3, 5, 7, 9, 11] {
            let s = sc(q);
            let c = classify(&s, &ClassifyOptions::default()).unwrap();
            let through_origin: u64 = c.records.iter().map(|r| r.orbit_len * r.size as u64).sum::<u64>() / (q * q) as u64;
            let mut cliques = 0u64;
            enum_maximal_cliques(&local_graph(s.graph()), 0, None, |_| cliques += 1).unwrap();
            assert_eq!(through_origin, cliques, "q = {q}");
        }
    }

    #[test]
    fn records_are_maximal_and_distinct() {
        let s = sc(11);
        let c = classify(&s, &ClassifyOptions::default()).unwrap();
        let mut forms = std::collections::HashSet::new();
        for r in &c.records {
            let p = r.representative(11);
            assert!(crate::plane::integral_set(s.ctx(), &p).unwrap());
            assert!(is_maximal(s.graph(), &p).unwrap());
            assert!(forms.insert(r.form.clone()));
            assert_eq!(r.orbit_len * r.stab_order, s.group().order());
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let s = sc(11);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| classify(&s, &ClassifyOptions::default()).unwrap());
        let b = four.install(|| classify(&s, &ClassifyOptions::default()).unwrap());
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn bounds_are_enforced() {
        let s = sc(13);
        let opts = ClassifyOptions { max_q: 11, ..Default::default() };
        assert_eq!(classify(&s, &opts).unwrap_err(), SearchError::TooLarge { q: 13, bound: 11 });
        let past = ClassifyOptions { deadline: Some(Instant::now()), ..Default::default() };
        assert_eq!(classify(&s, &past).unwrap_err(), SearchError::Timeout);
    }

    #[test]
    fn even_tables() {
        for (q, s) in [(2, 4), (4, 16), (8, 64)] {
            let t = classify_even(&FieldCtx::from_order(q).unwrap()).unwrap();
            assert_eq!(t.rows, BTreeMap::from([(s, 1)]));
        }
        assert!(classify_even(&FieldCtx::from_order(3).unwrap()).is_err());
    }

    #[test]
    fn second_largest_examples() {
        assert_eq!(second_largest_size(&sc(11), None).unwrap(), SecondLargest::Exact { size: 7 });
        assert_eq!(second_largest_size(&sc(13), None).unwrap(), SecondLargest::Exact { size: 10 });
        assert_eq!(second_largest_size(&sc(5), None).unwrap(), SecondLargest::Absent);
    }
}
