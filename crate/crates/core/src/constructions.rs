//! Explicit maximal integral point sets: the circle and line constructions,
//! five sporadic sets, and the completion of a half-populated vanishing line.

use crate::field::{Fe, FieldCtx, FieldError, Gauss};
use crate::igraph::IntegralGraph;
use crate::plane::{PlaneError, Point, PointSet};
use crate::search::{extension_candidates, SearchError, SpectrumTable};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("q = {0} is even")]
    EvenOrder(u32),
    #[error("no sporadic set {index} is known for q = {q}")]
    Unsupported { q: u32, index: u32 },
    #[error("q = {0} has no vanishing directions (q ≢ 1 mod 4)")]
    NoVanishingLine(u32),
    #[error("unknown construction {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedConstruction {
    pub name: String,
    pub points: PointSet,
    pub expected_size: usize,
}

fn require_odd(ctx: &FieldCtx) -> Result<(), ConstructionError> {
    if ctx.is_odd() {
        Ok(())
    } else {
        Err(ConstructionError::EvenOrder(ctx.q()))
    }
}

/// `P_W`: the origin together with the even powers of the unit-circle generator.
pub fn circle_set(ctx: &FieldCtx) -> Result<NamedConstruction, ConstructionError> {
    require_odd(ctx)?;
    let q = ctx.q() as usize;
    let circle = ctx.unit_circle()?;
    let points = std::iter::once(Point::ORIGIN)
        .chain(circle.powers().iter().step_by(2).map(|&z| Point::from_gauss(z)));
    let expected_size = if q % 4 == 1 { q.div_ceil(2) } else { (q + 3) / 2 };
    Ok(NamedConstruction { name: "circle".into(), points: PointSet::from_points(ctx.q(), points)?, expected_size })
}

/// `P_L`: the points `(u, 0)` with `u² + 1` a square, plus `(0, ±1)`.
pub fn line_set(ctx: &FieldCtx) -> Result<NamedConstruction, ConstructionError> {
    require_odd(ctx)?;
    let q = ctx.q() as usize;
    let on_axis = ctx
        .elements()
        .filter(|&u| ctx.is_square(ctx.add(ctx.square(u), Fe::ONE)))
        .map(|u| Point::new(u, Fe::ZERO));
    let mirror = [Point::new(Fe::ZERO, Fe::ONE), Point::new(Fe::ZERO, ctx.neg(Fe::ONE))];
    let expected_size = if q % 4 == 1 { (q + 5) / 2 } else { (q + 3) / 2 };
    Ok(NamedConstruction {
        name: "line".into(),
        points: PointSet::from_points(ctx.q(), on_axis.chain(mirror))?,
        expected_size,
    })
}

/// `{0} ∪ ⋃ c·z^e·⟨z^k⟩` over the given `(c, e)` cosets of the circle subgroup `⟨z^k⟩`.
fn circle_cosets(ctx: &FieldCtx, k: usize, cosets: &[(i64, i64)]) -> Result<Vec<Point>, ConstructionError> {
    let circle = ctx.unit_circle()?;
    let sub = circle.order() / k;
    let mut pts = vec![Point::ORIGIN];
    for &(c, e) in cosets {
        let scale = ctx.from_int(c);
        for j in 0..sub as i64 {
            let z: Gauss = circle.power(e + j * k as i64);
            pts.push(Point::from_gauss(ctx.gscale(scale, z)));
        }
    }
    Ok(pts)
}

/// Coordinates of the sporadic sets as drawn in the published figures.
pub fn sporadic_figure(index: u32) -> Option<(u32, &'static [(u32, u32)])> {
    const P1: &[(u32, u32)] = &[
        (0, 0), (0, 22), (22, 0), (0, 1), (1, 0), (4, 19), (19, 19),
        (19, 4), (4, 4), (0, 14), (14, 0), (0, 9), (9, 0),
    ];
    const P2: &[(u32, u32)] = &[
        (0, 0), (11, 15), (11, 8), (1, 0), (1, 7), (21, 0), (1, 16),
        (3, 21), (17, 0), (3, 2), (19, 5), (19, 18), (8, 0),
    ];
    const P3: &[(u32, u32)] = &[
        (0, 0), (7, 3), (2, 4), (2, 15), (7, 16), (1, 0), (2, 9),
        (6, 12), (6, 7), (2, 10), (3, 0),
    ];
    const P4: &[(u32, u32)] = &[
        (0, 0), (0, 1), (0, 18), (4, 0), (4, 2), (4, 17), (5, 0),
        (14, 0), (15, 0), (15, 2), (15, 17),
    ];
    const P5: &[(u32, u32)] = &[(0, 0), (0, 1), (0, 10), (2, 0), (3, 5), (3, 6), (6, 0)];
    match index {
        1 => Some((23, P1)),
        2 => Some((23, P2)),
        3 => Some((19, P3)),
        4 => Some((19, P4)),
        5 => Some((11, P5)),
        _ => None,
    }
}

/// The sporadic maximal sets of size `(q+3)/2`: sets 1–3 from their unit-circle
/// descriptions, sets 4 and 5 from figure coordinates.
pub fn sporadic(ctx: &FieldCtx, index: u32) -> Result<NamedConstruction, ConstructionError> {
    let q = ctx.q();
    let unsupported = ConstructionError::Unsupported { q, index };
    let (fig_q, coords) = sporadic_figure(index).ok_or(unsupported.clone())?;
    if fig_q != q {
        return Err(unsupported);
    }
    let points = match index {
        // The 3-coset is rotated by z³; without it the set is not integral.
        1 => PointSet::from_points(q, circle_cosets(ctx, 6, &[(1, 0), (3, 3), (9, 0)])?)?,
        2 => PointSet::from_points(q, circle_cosets(ctx, 8, &[(1, 0), (2, 4), (6, 4), (8, 0)])?)?,
        3 => PointSet::from_points(q, circle_cosets(ctx, 4, &[(1, 0), (3, 0)])?)?,
        _ => PointSet::from_coords(q, coords)?,
    };
    Ok(NamedConstruction { name: format!("sporadic-{index}"), points, expected_size: (q as usize + 3) / 2 })
}

/// Dispatches on `circle`, `line` or `sporadic-N`.
pub fn by_name(ctx: &FieldCtx, kind: &str) -> Result<NamedConstruction, ConstructionError> {
    match kind {
        "circle" => circle_set(ctx),
        "line" => line_set(ctx),
        _ => match kind.strip_prefix("sporadic-").and_then(|i| i.parse().ok()) {
            Some(i) => sporadic(ctx, i),
            None => Err(ConstructionError::UnknownKind(kind.to_string())),
        },
    }
}

/// Number of classes of size `(q+3)/2` in a classification table.
pub fn count_second_largest_classes(table: &SpectrumTable) -> u64 {
    table.count((table.q as usize + 3) / 2)
}

/// Starts from the squares on the vanishing line `(1, ω)·□_q` plus the point
/// `(1, −ω)`, then adds the smallest-code extension candidate until none is left.
pub fn vanishing_line_completion(ctx: &FieldCtx, graph: &IntegralGraph) -> Result<PointSet, ConstructionError> {
    require_odd(ctx)?;
    let w = ctx.omega().ok_or(ConstructionError::NoVanishingLine(ctx.q()))?;
    let q = ctx.q();
    let start = ctx
        .squares()
        .map(|s| Point::new(s, ctx.mul(w, s)))
        .chain([Point::new(Fe::ONE, ctx.neg(w))]);
    let mut set = PointSet::from_points(q, start)?;
    loop {
        let cand = extension_candidates(graph, &set)?;
        match cand.codes().first() {
            Some(&c) => set = set.with_code(c),
            None => return Ok(set),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::igraph::build_graph;
    use crate::plane::{integral_set, max_collinear, sqdist};
    use crate::search::{is_maximal, SearchContext};

    fn ctx(q: u32) -> FieldCtx {
        FieldCtx::from_order(q).unwrap()
    }

    #[test]
    fn circle_sizes_and_maximality() {
        for q in [5u32, 7, 9, 11, 13, 19] {
            let c = ctx(q);
            let g = build_graph(&c).unwrap();
            let p = circle_set(&c).unwrap();
            assert_eq!(p.points.len(), p.expected_size, "q = {q}");
            assert!(integral_set(&c, &p.points).unwrap());
            assert_eq!(is_maximal(&g, &p.points).unwrap(), !matches!(q, 5 | 9), "q = {q}");
        }
        assert!(circle_set(&ctx(4)).is_err());
    }

    #[test]
    fn even_circle_powers_are_pairwise_integral() {
        for q in [7u32, 11, 13, 17, 23, 25, 27] {
            let c = ctx(q);
            let circle = c.unit_circle().unwrap();
            let even: Vec<Point> = circle.powers().iter().step_by(2).map(|&z| Point::from_gauss(z)).collect();
            for &u in &even {
                for &v in &even {
                    assert!(c.is_square(sqdist(&c, u, v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn circle_has_no_three_collinear_points() {
        for q in [7u32, 11, 13, 17, 19] {
            let c = ctx(q);
            let p = circle_set(&c).unwrap().points;
            let without_origin = PointSet::from_codes(q, p.codes().iter().copied().filter(|&x| x != 0)).unwrap();
            assert_eq!(max_collinear(&c, &without_origin).unwrap(), 2, "q = {q}");
        }
    }

    #[test]
    fn line_sizes_and_maximality() {
        for (q, size, maximal) in [(11u32, 7, true), (13, 9, true), (7, 5, true), (19, 11, true)] {
            let c = ctx(q);
            let g = build_graph(&c).unwrap();
            let p = line_set(&c).unwrap();
            assert_eq!(p.points.len(), size);
            assert_eq!(p.expected_size, size);
            assert!(integral_set(&c, &p.points).unwrap());
            assert_eq!(is_maximal(&g, &p.points).unwrap(), maximal, "q = {q}");
        }
        assert_eq!(line_set(&ctx(9)).unwrap().points.len(), 7);
    }

    #[test]
    fn sporadic_sets() {
        for idx in 1..=5 {
            let (q, coords) = sporadic_figure(idx).unwrap();
            let c = ctx(q);
            let g = build_graph(&c).unwrap();
            let s = sporadic(&c, idx).unwrap();
            assert_eq!(s.points.len(), (q as usize + 3) / 2, "set {idx}");
            assert!(integral_set(&c, &s.points).unwrap(), "set {idx}");
            assert!(is_maximal(&g, &s.points).unwrap(), "set {idx}");
            assert_eq!(PointSet::from_coords(q, coords).unwrap().len(), s.points.len());
        }
        assert_eq!(sporadic(&ctx(13), 1).unwrap_err(), ConstructionError::Unsupported { q: 13, index: 1 });
        assert_eq!(sporadic(&ctx(23), 6).unwrap_err(), ConstructionError::Unsupported { q: 23, index: 6 });
    }

    #[test]
    fn formulas_match_figures_up_to_isomorphism() {
        for idx in [3u32, 1, 2] {
            let (q, coords) = sporadic_figure(idx).unwrap();
            let sc = SearchContext::new(ctx(q), None).unwrap();
            let formula = sporadic(sc.ctx(), idx).unwrap().points;
            let figure = PointSet::from_coords(q, coords).unwrap();
            assert_eq!(sc.canonize(&formula).form, sc.canonize(&figure).form, "set {idx}");
        }
    }

    #[test]
    fn unrotated_cosets_of_set_one_are_not_integral() {
        let c = ctx(23);
        let plain = PointSet::from_points(23, circle_cosets(&c, 6, &[(1, 0), (3, 0), (9, 0)]).unwrap()).unwrap();
        assert!(!integral_set(&c, &plain).unwrap());
    }

    #[test]
    fn by_name_dispatch() {
        let c = ctx(11);
        assert_eq!(by_name(&c, "circle").unwrap().name, "circle");
        assert_eq!(by_name(&c, "sporadic-5").unwrap().points.len(), 7);
        assert!(matches!(by_name(&c, "square"), Err(ConstructionError::UnknownKind(_))));
    }

    #[test]
    fn vanishing_line_completes_to_q_points() {
        for q in [13u32, 17] {
            let sc = SearchContext::new(ctx(q), None).unwrap();
            let c = sc.ctx();
            let done = vanishing_line_completion(c, sc.graph()).unwrap();
            assert_eq!(done.len(), q as usize);
            let w = c.omega().unwrap();
            let two_lines = PointSet::from_points(
                q,
                c.squares().flat_map(|s| [Point::new(s, c.mul(w, s)), Point::new(s, c.neg(c.mul(w, s)))]),
            )
            .unwrap();
            assert_eq!(sc.canonize(&done).form, sc.canonize(&two_lines).form, "q = {q}");
        }
        assert_eq!(
            vanishing_line_completion(&ctx(7), &build_graph(&ctx(7)).unwrap()).unwrap_err(),
            ConstructionError::NoVanishingLine(7)
        );
    }
}
