//! Canonical forms under a transitive group `G = G₀ · T`.
//!
//! The form of `P` is the lexicographically least sorted code sequence in its
//! orbit. Any `g` with `0 ∈ g(P)` factors uniquely as `x ↦ g₀(x − t)` with
//! `t = g⁻¹(0) ∈ P`, so it suffices to range over anchors `t ∈ P` and the
//! explicit stabilizer `G₀`. The minimum always starts with the origin.

use super::affine::AffMap;
use super::group::{AffineGroup, PlaneGroup};
use super::SymmetryError;
use crate::field::FieldCtx;
use crate::plane::{integral_pair, point_sub, Point, PointSet};
use serde::Serialize;

/// Sorted point codes of the least image of a set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm(pub Vec<u32>);

impl CanonicalForm {
    pub fn codes(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_pointset(&self, q: u32) -> PointSet {
        PointSet::from_sorted_codes(q, self.0.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Canonized {
    pub form: CanonicalForm,
    /// Order of the setwise stabilizer of the input.
    pub stabilizer_order: u64,
    /// `(stabilizer index, anchor)`: `x ↦ g₀(x − anchor)` maps the input onto `form`.
    pub witness: (usize, u32),
}

/// Coordinate-wise differences `c − t` of point codes, via a field table.
pub(crate) struct Differ {
    q: u32,
    sub: Vec<u32>,
}

impl Differ {
    pub(crate) fn new(ctx: &FieldCtx) -> Self {
        let q = ctx.q();
        let mut sub = vec![0; (q * q) as usize];
        for a in ctx.elements() {
            for b in ctx.elements() {
                sub[(a.0 * q + b.0) as usize] = ctx.sub(a, b).0;
            }
        }
        Differ { q, sub }
    }

    #[inline]
    pub(crate) fn diff(&self, c: u32, t: u32) -> u32 {
        let q = self.q;
        let (cx, cy, tx, ty) = (c / q, c % q, t / q, t % q);
        self.sub[(cx * q + tx) as usize] * q + self.sub[(cy * q + ty) as usize]
    }
}

/// Least image of `codes` with its tie count and first witness; `None` as soon
/// as an image falls below `abort_below`.
///
/// The second entry of every least image is the smallest orbit minimum
/// `min[u − t]` over ordered pairs of the set, so only pairs attaining it and
/// the stabilizer elements taking `u − t` to that minimum are tried. Each
/// `(t, g₀)` with a least image arises from exactly one such `u`, so ties are
/// still counted exactly.
fn least_image(
    differ: &Differ,
    group: &PlaneGroup,
    codes: &[u32],
    abort_below: Option<&[u32]>,
) -> Option<(Vec<u32>, u64, (usize, u32))> {
    let m = codes.len();
    if m < 2 {
        return least_image_exhaustive(differ, group, codes, abort_below);
    }
    let movers = group.movers();
    let mut second = u32::MAX;
    for &t in codes {
        for &u in codes {
            if u != t {
                second = second.min(movers.min[differ.diff(u, t) as usize]);
            }
        }
    }
    let mut best: Vec<u32> = Vec::new();
    let mut ties = 0u64;
    let mut witness = (0, 0);
    let mut shifted = vec![0u32; m];
    let mut image = vec![0u32; m];
    for &t in codes {
        for (s, &c) in shifted.iter_mut().zip(codes) {
            *s = differ.diff(c, t);
        }
        for &d in &shifted {
            if d == 0 || movers.min[d as usize] != second {
                continue;
            }
            for &gi in movers.of(d) {
                let g = group.stabilizer_element(gi as usize);
                for (dst, &s) in image.iter_mut().zip(&shifted) {
                    *dst = g[s as usize];
                }
                image.sort_unstable();
                if let Some(bound) = abort_below {
                    if image.as_slice() < bound {
                        return None;
                    }
                }
                if best.is_empty() || image < best {
                    best.clone_from(&image);
                    ties = 1;
                    witness = (gi as usize, t);
                } else if image == best {
                    ties += 1;
                }
            }
        }
    }
    Some((best, ties, witness))
}

/// Reference version of [`least_image`] over every anchor and every `g₀`.
fn least_image_exhaustive(
    differ: &Differ,
    group: &PlaneGroup,
    codes: &[u32],
    abort_below: Option<&[u32]>,
) -> Option<(Vec<u32>, u64, (usize, u32))> {
    let m = codes.len();
    if m == 0 {
        return Some((Vec::new(), group.order(), (0, 0)));
    }
    let mut best: Vec<u32> = Vec::new();
    let mut ties = 0u64;
    let mut witness = (0, 0);
    let mut shifted = vec![0u32; m];
    let mut image = vec![0u32; m];
    for &t in codes {
        for (s, &c) in shifted.iter_mut().zip(codes) {
            *s = differ.diff(c, t);
        }
        for (gi, g) in group.stabilizer_elements().enumerate() {
            for (dst, &s) in image.iter_mut().zip(&shifted) {
                *dst = g[s as usize];
            }
            image.sort_unstable();
            if let Some(bound) = abort_below {
                if image.as_slice() < bound {
                    return None;
                }
            }
            if best.is_empty() || image < best {
                best.clone_from(&image);
                ties = 1;
                witness = (gi, t);
            } else if image == best {
                ties += 1;
            }
        }
    }
    Some((best, ties, witness))
}

pub fn canonize(ctx: &FieldCtx, group: &PlaneGroup, set: &PointSet) -> Canonized {
    let differ = Differ::new(ctx);
    canonize_with(&differ, group, set.codes())
}

pub(crate) fn canonize_with(differ: &Differ, group: &PlaneGroup, codes: &[u32]) -> Canonized {
    let (form, ties, witness) = least_image(differ, group, codes, None).expect("no abort bound");
    Canonized { form: CanonicalForm(form), stabilizer_order: ties, witness }
}

pub fn canonical_form(ctx: &FieldCtx, group: &PlaneGroup, set: &PointSet) -> CanonicalForm {
    canonize(ctx, group, set).form
}

/// True iff `set` is already its own canonical form; stops at the first smaller image.
pub fn is_canonical(ctx: &FieldCtx, group: &PlaneGroup, set: &PointSet) -> bool {
    is_canonical_with(&Differ::new(ctx), group, set.codes())
}

pub(crate) fn is_canonical_with(differ: &Differ, group: &PlaneGroup, codes: &[u32]) -> bool {
    least_image(differ, group, codes, Some(codes)).is_some_and(|(best, _, _)| best == codes)
}

pub fn aut_order_of_set(ctx: &FieldCtx, group: &PlaneGroup, set: &PointSet) -> u64 {
    canonize(ctx, group, set).stabilizer_order
}

/// An element of `group` sending `p1` to the origin and `p2` to `(1, 0)`, or
/// to `(1, ω)` when the pair has squared distance zero.
pub fn normalize_pair(ctx: &FieldCtx, group: &AffineGroup, p1: Point, p2: Point) -> Result<AffMap, SymmetryError> {
    if p1 == p2 {
        return Err(SymmetryError::SamePoint);
    }
    if !integral_pair(ctx, p1, p2)? {
        return Err(SymmetryError::NotIntegralPair);
    }
    let d = point_sub(ctx, p2, p1);
    let target = if ctx.gnorm(d.to_gauss()).is_zero() {
        Point::new(crate::field::Fe::ONE, ctx.omega().ok_or(SymmetryError::NoNormalizer)?)
    } else {
        Point::new(crate::field::Fe::ONE, crate::field::Fe::ZERO)
    };
    let to_origin = AffMap::translation(Point::new(ctx.neg(p1.x), ctx.neg(p1.y)));
    group
        .linear_parts()
        .iter()
        .find(|l| l.apply(ctx, d) == target)
        .map(|l| l.compose(ctx, &to_origin))
        .ok_or(SymmetryError::NoNormalizer)
}

#[cfg(test)]
mod tests {
    use super::super::affine::h_generators;
    use super::super::group::{close_group, compose, invert};
    use super::*;
    use crate::plane::point_add;
    use rand::{Rng, SeedableRng};

    fn setup(q: u32) -> (FieldCtx, AffineGroup, PlaneGroup) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let h = close_group(&ctx, &h_generators(&ctx).unwrap(), u64::MAX).unwrap();
        let pg = PlaneGroup::from_affine(&ctx, &h).unwrap();
        (ctx, h, pg)
    }

    fn image(set: &PointSet, perm: &[u32]) -> PointSet {
        PointSet::from_codes(set.q(), set.codes().iter().map(|&c| perm[c as usize])).unwrap()
    }

    #[test]
    fn form_is_orbit_invariant_and_witnessed() {
        let (ctx, _, pg) = setup(11);
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let set = PointSet::from_coords(11, &[(0, 0), (0, 1), (0, 10), (2, 0), (3, 5), (3, 6), (6, 0)]).unwrap();
        let base = canonize(&ctx, &pg, &set);
        let back = pg.element(&ctx, base.witness.0, base.witness.1);
        assert_eq!(image(&set, &back).codes(), base.form.codes());
        for _ in 0..100 {
            let g = pg.element(&ctx, rng.gen_range(0..pg.stabilizer_len()), rng.gen_range(0..121));
            let moved = image(&set, &g);
            let c = canonize(&ctx, &pg, &moved);
            assert_eq!(c.form, base.form);
            assert_eq!(c.stabilizer_order, base.stabilizer_order);
            // Recover an element mapping `set` onto `moved`.
            let a = pg.element(&ctx, base.witness.0, base.witness.1);
            let b = pg.element(&ctx, c.witness.0, c.witness.1);
            assert_eq!(image(&set, &compose(&invert(&b), &a)), moved);
        }
    }

    #[test]
    fn pruned_search_agrees_with_exhaustion() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for q in [5u32, 7, 9, 13] {
            let (ctx, _, pg) = setup(q);
            let differ = Differ::new(&ctx);
            for _ in 0..60 {
                let k = rng.gen_range(0..8);
                let set = PointSet::from_codes(q, (0..k).map(|_| rng.gen_range(0..q * q))).unwrap();
                let fast = least_image(&differ, &pg, set.codes(), None).unwrap();
                let slow = least_image_exhaustive(&differ, &pg, set.codes(), None).unwrap();
                assert_eq!((&fast.0, fast.1), (&slow.0, slow.1), "q = {q}, {:?}", set.codes());
                let back = pg.element(&ctx, fast.2 .0, fast.2 .1);
                assert_eq!(image(&set, &back).codes(), fast.0.as_slice());
                let form = fast.0.clone();
                assert!(least_image(&differ, &pg, &form, Some(&form)).is_some());
            }
        }
    }

    #[test]
    fn translations_do_not_change_the_form() {
        let (ctx, _, pg) = setup(7);
        let set = PointSet::from_coords(7, &[(0, 0), (1, 0), (3, 2)]).unwrap();
        let form = canonical_form(&ctx, &pg, &set);
        for c in 0..49 {
            let t = Point::from_code(c, 7);
            let moved = PointSet::from_points(7, set.points().map(|p| point_add(&ctx, p, t))).unwrap();
            assert_eq!(canonical_form(&ctx, &pg, &moved), form);
        }
    }

    #[test]
    fn full_plane_stabilizer_is_the_group() {
        let (ctx, _, pg) = setup(5);
        let all = PointSet::from_codes(5, 0..25).unwrap();
        assert_eq!(aut_order_of_set(&ctx, &pg, &all), pg.order());
    }

    #[test]
    fn canonical_sets_are_recognized() {
        let (ctx, _, pg) = setup(7);
        let set = PointSet::from_coords(7, &[(2, 3), (4, 1), (5, 5)]).unwrap();
        let form = canonical_form(&ctx, &pg, &set).to_pointset(7);
        assert!(is_canonical(&ctx, &pg, &form));
        assert_eq!(is_canonical(&ctx, &pg, &set), set == form);
        // Prefixes of canonical sets stay canonical.
        let prefix = PointSet::from_codes(7, form.codes()[..2].iter().copied()).unwrap();
        assert!(is_canonical(&ctx, &pg, &prefix));
    }

    #[test]
    fn normalizes_pairs() {
        let (ctx, h, _) = setup(11);
        let o = Point::ORIGIN;
        let e1 = Point::from_ints(1, 0);
        assert!(normalize_pair(&ctx, &h, o, o).is_err());
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut done = 0;
        while done < 20 {
            let p1 = Point::from_code(rng.gen_range(0..121), 11);
            let p2 = Point::from_code(rng.gen_range(0..121), 11);
            if p1 == p2 || !integral_pair(&ctx, p1, p2).unwrap() {
                continue;
            }
            let phi = normalize_pair(&ctx, &h, p1, p2).unwrap();
            assert_eq!(phi.apply(&ctx, p1), o);
            assert_eq!(phi.apply(&ctx, p2), e1);
            done += 1;
        }

        let (ctx, h, _) = setup(13);
        let p2 = Point::from_ints(1, 5);
        let phi = normalize_pair(&ctx, &h, Point::ORIGIN, p2).unwrap();
        assert_eq!(phi.apply(&ctx, p2), Point::from_ints(1, 5));
        assert_eq!(
            normalize_pair(&ctx, &h, Point::ORIGIN, Point::from_ints(1, 1)).unwrap_err(),
            SymmetryError::NotIntegralPair
        );
    }
}
