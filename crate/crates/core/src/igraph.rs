//! The graph of integral distances on `F_q²` and the localized search graphs.
//!
//! Vertex `v` of an [`IntegralGraph`] is the point with canonical code `v`.

use crate::bitset::{words_for, BitGraph};
use crate::field::{FieldCtx, FieldError, Gauss};
use crate::plane::Point;
use rayon::prelude::*;
use serde::Serialize;
use std::io::{self, Write};
use thiserror::Error;

/// Largest `q` for which the full `q² × q²` adjacency matrix is built.
pub const MAX_GRAPH_Q: u32 = 167;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("q = {q} exceeds the graph bound {bound}")]
    TooLarge { q: u32, bound: u32 },
    #[error("graph is not strongly regular: {0}")]
    NotStronglyRegular(String),
    #[error("operation requires q ≡ {required} (mod 4), got q = {q}")]
    Congruence { q: u32, required: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// `k(k−λ−1) = (v−k−1)μ`.
    pub fn satisfies_identity(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

/// The graph `𝔊` on all `q²` points.
#[derive(Clone, Debug)]
pub struct IntegralGraph {
    q: u32,
    graph: BitGraph,
}

impl IntegralGraph {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.graph.has_edge(u as usize, v as usize)
    }

    #[inline]
    pub fn row(&self, u: u32) -> &[u64] {
        self.graph.row(u as usize)
    }

    /// Dumps the edge list as `u v` lines with vertex codes, `u < v`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (u, v) in self.graph.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

/// An induced subgraph of `𝔊` on a common neighbourhood, with point labels.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    q: u32,
    anchors: Vec<u32>,
    vertices: Vec<u32>,
    graph: BitGraph,
}

impl LocalGraph {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// The points whose common neighbourhood this graph spans.
    pub fn anchors(&self) -> &[u32] {
        &self.anchors
    }

    /// Point code of each local vertex, increasing.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Builds `𝔊`: `v ~ w` iff `v ≠ w` and `d²(v, w) ∈ □_q`.
pub fn build_graph(ctx: &FieldCtx) -> Result<IntegralGraph, GraphError> {
    let q = ctx.q();
    if q > MAX_GRAPH_Q {
        return Err(GraphError::TooLarge { q, bound: MAX_GRAPH_Q });
    }
    let n = (q * q) as usize;
    let words = words_for(n);
    // Integrality depends only on the difference vector.
    let integral_diff: Vec<bool> = (0..n as u32)
        .map(|c| ctx.is_square(ctx.gnorm(ctx.gauss_from_code(c))))
        .collect();
    let mut rows = vec![0u64; n * words];
    rows.par_chunks_mut(words).enumerate().for_each(|(u, row)| {
        let pu = Point::from_code(u as u32, q);
        for v in 0..n {
            if v == u {
                continue;
            }
            let pv = Point::from_code(v as u32, q);
            let d = Point::new(ctx.sub(pu.x, pv.x), ctx.sub(pu.y, pv.y));
            if integral_diff[d.code(q) as usize] {
                row[v >> 6] |= 1 << (v & 63);
            }
        }
    });
    Ok(IntegralGraph { q, graph: BitGraph::from_rows(n, rows) })
}

/// Exhaustive `(v, k, λ, μ)` of a graph, or an error naming the offending pair.
pub fn srg_params_of(g: &BitGraph) -> Result<SrgParams, GraphError> {
    let n = g.n();
    let k = g.degree(0);
    if let Some(u) = (0..n).find(|&u| g.degree(u) != k) {
        return Err(GraphError::NotStronglyRegular(format!(
            "vertex {u} has degree {} but vertex 0 has {k}",
            g.degree(u)
        )));
    }
    // Per-vertex (λ, μ) observations over pairs (u, v > u).
    let per_vertex: Vec<Result<(Option<usize>, Option<usize>), String>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let (mut lambda, mut mu) = (None, None);
            for v in (u + 1)..n {
                let c = g.common_neighbors(u, v);
                let (slot, what) =
                    if g.has_edge(u, v) { (&mut lambda, "adjacent") } else { (&mut mu, "non-adjacent") };
                match *slot {
                    None => *slot = Some(c),
                    Some(prev) if prev != c => {
                        return Err(format!("{what} pairs at vertex {u} have {prev} and {c} common neighbours"))
                    }
                    _ => {}
                }
            }
            Ok((lambda, mu))
        })
        .collect();
    let (mut lambda, mut mu) = (None, None);
    for obs in per_vertex {
        let (l, m) = obs.map_err(GraphError::NotStronglyRegular)?;
        for (slot, val, what) in [(&mut lambda, l, "adjacent"), (&mut mu, m, "non-adjacent")] {
            match (*slot, val) {
                (None, v) => *slot = v,
                (Some(prev), Some(v)) if prev != v => {
                    return Err(GraphError::NotStronglyRegular(format!(
                        "{what} pairs have {prev} and {v} common neighbours"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(SrgParams {
        v: n as u64,
        k: k as u64,
        lambda: lambda.unwrap_or(0) as u64,
        mu: mu.unwrap_or(0) as u64,
    })
}

pub fn srg_params(g: &IntegralGraph) -> Result<SrgParams, GraphError> {
    srg_params_of(g.graph())
}

/// Parameters of the complement of `𝔊`, counted exhaustively (`q ≡ 1 mod 4`).
pub fn complement_params(g: &IntegralGraph) -> Result<SrgParams, GraphError> {
    if g.q() % 4 != 1 {
        return Err(GraphError::Congruence { q: g.q(), required: 1 });
    }
    srg_params_of(&g.graph().complement())
}

/// Closed-form parameters of `𝔊` for odd `q`.
pub fn expected_srg(q: u64) -> SrgParams {
    if q % 4 == 3 {
        let m = (q * q - 1) / 4;
        SrgParams { v: q * q, k: (q * q - 1) / 2, lambda: m - 1, mu: m }
    } else {
        let m = (q + 1) * (q + 3) / 4;
        SrgParams { v: q * q, k: (q - 1) * (q + 3) / 2, lambda: m - 3, mu: m }
    }
}

/// Closed-form parameters of the complement of `𝔊` for `q ≡ 1 (mod 4)`.
pub fn expected_complement(q: u64) -> SrgParams {
    let m = (q - 1) * (q - 3) / 4;
    SrgParams { v: q * q, k: (q - 1) * (q - 1) / 2, lambda: m + 1, mu: m }
}

/// Checks pointwise that `x² + y² ∈ □_q ⇔ x + yi ∈ □_{q²}` for `q ≡ 3 (mod 4)`.
///
/// Under the identity map `F_q² → F_q[i] = F_{q²}` this makes `𝔊` equal to
/// `Paley(q²)`, since both adjacencies depend only on the difference.
pub fn verify_paley_iso(ctx: &FieldCtx) -> Result<bool, GraphError> {
    let q = ctx.q();
    if q % 4 != 3 {
        return Err(GraphError::Congruence { q, required: 3 });
    }
    let n = (q * q) as usize;
    let mut big_square = vec![false; n];
    for z in ctx.gauss_elements() {
        big_square[ctx.gcode(ctx.gmul(z, z)) as usize] = true;
    }
    Ok((0..n as u32).all(|c| {
        let z: Gauss = ctx.gauss_from_code(c);
        ctx.is_square(ctx.gnorm(z)) == big_square[c as usize]
    }))
}

/// Subgraph of `𝔊` induced on the common neighbourhood of `anchors`.
pub fn neighborhood_graph(g: &IntegralGraph, anchors: &[u32]) -> LocalGraph {
    let mut common = crate::bitset::BitSet::full(g.n());
    for &a in anchors {
        common.and_with(g.row(a));
    }
    let vertices: Vec<usize> = common.iter().collect();
    LocalGraph {
        q: g.q(),
        anchors: anchors.to_vec(),
        vertices: vertices.iter().map(|&v| v as u32).collect(),
        graph: g.graph().induced(&vertices),
    }
}

/// `𝒢_q`: the integral neighbours of the origin and their mutual adjacencies.
pub fn local_graph(g: &IntegralGraph) -> LocalGraph {
    neighborhood_graph(g, &[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(q: u32) -> IntegralGraph {
        build_graph(&FieldCtx::from_order(q).unwrap()).unwrap()
    }

    #[test]
    fn degrees() {
        let g3 = graph(3);
        assert_eq!(g3.n(), 9);
        assert!((0..9).all(|u| g3.graph().degree(u) == 4));
        let g5 = graph(5);
        assert!((0..25).all(|u| g5.graph().degree(u) == 16));
    }

    #[test]
    fn even_q_is_complete() {
        let g4 = graph(4);
        assert_eq!(g4.graph().edge_count(), 16 * 15 / 2);
        assert_eq!(srg_params(&g4).unwrap(), SrgParams { v: 16, k: 15, lambda: 14, mu: 0 });
    }

    #[test]
    fn srg_examples() {
        assert_eq!(srg_params(&graph(7)).unwrap(), SrgParams { v: 49, k: 24, lambda: 11, mu: 12 });
        assert_eq!(srg_params(&graph(13)).unwrap(), SrgParams { v: 169, k: 96, lambda: 53, mu: 56 });
        assert_eq!(srg_params(&graph(5)).unwrap(), SrgParams { v: 25, k: 16, lambda: 9, mu: 12 });
        for q in [7, 13, 5] {
            assert_eq!(srg_params(&graph(q)).unwrap(), expected_srg(q as u64));
        }
    }

    #[test]
    fn complement_examples() {
        let g5 = graph(5);
        assert_eq!(complement_params(&g5).unwrap(), SrgParams { v: 25, k: 8, lambda: 3, mu: 2 });
        assert_eq!(
            complement_params(&graph(13)).unwrap(),
            SrgParams { v: 169, k: 72, lambda: 31, mu: 30 }
        );
        assert_eq!(expected_complement(13), SrgParams { v: 169, k: 72, lambda: 31, mu: 30 });
        assert_eq!(g5.graph().complement().complement(), *g5.graph());
        assert!(matches!(complement_params(&graph(7)), Err(GraphError::Congruence { .. })));
    }

    #[test]
    fn non_srg_is_reported() {
        let mut path = BitGraph::new(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        assert!(matches!(srg_params_of(&path), Err(GraphError::NotStronglyRegular(_))));
    }

    #[test]
    fn paley_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(verify_paley_iso(&f3).unwrap());
        let f7 = FieldCtx::new(7, 1).unwrap();
        // (1,2): 1 + 4 = 5 ∉ □_7, and 1 + 2i is not a square in F_49.
        let z = Gauss::new(crate::field::Fe(1), crate::field::Fe(2));
        assert!(!f7.is_square(f7.gnorm(z)));
        assert!(!f7.gauss_elements().any(|w| f7.gmul(w, w) == z));
        assert!(verify_paley_iso(&FieldCtx::new(11, 1).unwrap()).unwrap());
        assert!(verify_paley_iso(&FieldCtx::new(5, 1).unwrap()).is_err());
    }

    #[test]
    fn local_graph_sizes() {
        assert_eq!(local_graph(&graph(7)).len(), 24);
        assert_eq!(local_graph(&graph(13)).len(), 96);
        assert_eq!(local_graph(&graph(3)).len(), 4);
    }

    #[test]
    fn translation_invariance() {
        for q in [3, 5, 7, 9, 11] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let g = build_graph(&ctx).unwrap();
            let n = q * q;
            for t in 0..n {
                let tp = Point::from_code(t, q);
                let shift = |c: u32| crate::plane::point_add(&ctx, Point::from_code(c, q), tp).code(q);
                let perm: Vec<u32> = (0..n).map(shift).collect();
                assert!(g.graph().is_automorphism(&perm));
            }
        }
    }

    #[test]
    fn edge_list_dump() {
        let g = graph(3);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 18);
        assert!(text.starts_with("0 1\n"));
    }
}
