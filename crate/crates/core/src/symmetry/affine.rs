//! Affine-semilinear maps `x ↦ M·φᵏ(x) + s` of `F_q²` and the generators of `H`.

use super::SymmetryError;
use crate::field::{Fe, FieldCtx, FieldError};
use crate::plane::Point;
use serde::Serialize;
use std::collections::HashSet;

/// `x ↦ linear · (x^(p^frob)) + shift`, with the Frobenius applied coordinatewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffMap {
    pub frob: u32,
    pub linear: [[Fe; 2]; 2],
    pub shift: Point,
}

const IDENTITY_MATRIX: [[Fe; 2]; 2] = [[Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ONE]];

impl AffMap {
    pub const IDENTITY: AffMap = AffMap { frob: 0, linear: IDENTITY_MATRIX, shift: Point::ORIGIN };

    pub fn translation(v: Point) -> Self {
        AffMap { shift: v, ..Self::IDENTITY }
    }

    pub fn linear(m: [[Fe; 2]; 2]) -> Self {
        AffMap { linear: m, ..Self::IDENTITY }
    }

    pub fn frobenius(k: u32) -> Self {
        AffMap { frob: k, ..Self::IDENTITY }
    }

    pub fn is_translation(&self) -> bool {
        self.frob == 0 && self.linear == IDENTITY_MATRIX
    }

    pub fn fixes_origin(&self) -> bool {
        self.shift == Point::ORIGIN
    }

    /// The same map with the translation part removed.
    pub fn linear_part(&self) -> Self {
        AffMap { shift: Point::ORIGIN, ..*self }
    }

    pub fn apply(&self, ctx: &FieldCtx, p: Point) -> Point {
        let x = ctx.frob(p.x, self.frob);
        let y = ctx.frob(p.y, self.frob);
        let m = &self.linear;
        Point::new(
            ctx.add(ctx.add(ctx.mul(m[0][0], x), ctx.mul(m[0][1], y)), self.shift.x),
            ctx.add(ctx.add(ctx.mul(m[1][0], x), ctx.mul(m[1][1], y)), self.shift.y),
        )
    }

    fn frob_matrix(ctx: &FieldCtx, m: &[[Fe; 2]; 2], k: u32) -> [[Fe; 2]; 2] {
        m.map(|row| row.map(|a| ctx.frob(a, k)))
    }

    fn mat_mul(ctx: &FieldCtx, a: &[[Fe; 2]; 2], b: &[[Fe; 2]; 2]) -> [[Fe; 2]; 2] {
        let mut out = [[Fe::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = ctx.add(ctx.mul(a[i][0], b[0][j]), ctx.mul(a[i][1], b[1][j]));
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, ctx: &FieldCtx, other: &AffMap) -> AffMap {
        let r = ctx.r();
        let inner = Self::frob_matrix(ctx, &other.linear, self.frob);
        let linear = Self::mat_mul(ctx, &self.linear, &inner);
        let shift = self.apply(ctx, other.shift);
        AffMap { frob: (self.frob + other.frob) % r, linear, shift }
    }

    pub fn determinant(&self, ctx: &FieldCtx) -> Fe {
        let m = &self.linear;
        ctx.sub(ctx.mul(m[0][0], m[1][1]), ctx.mul(m[0][1], m[1][0]))
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<AffMap> {
        let r = ctx.r();
        let det_inv = ctx.inv(self.determinant(ctx))?;
        let m = &self.linear;
        let inv = [
            [ctx.mul(m[1][1], det_inv), ctx.neg(ctx.mul(m[0][1], det_inv))],
            [ctx.neg(ctx.mul(m[1][0], det_inv)), ctx.mul(m[0][0], det_inv)],
        ];
        let back = (r - self.frob) % r;
        let linear = Self::frob_matrix(ctx, &inv, back);
        let lin_map = AffMap { frob: back, linear, shift: Point::ORIGIN };
        let s = lin_map.apply(ctx, self.shift);
        Some(AffMap { shift: Point::new(ctx.neg(s.x), ctx.neg(s.y)), ..lin_map })
    }

    /// The permutation of point codes induced by this map.
    pub fn to_perm(&self, ctx: &FieldCtx) -> Vec<u32> {
        let q = ctx.q();
        (0..q * q).map(|c| self.apply(ctx, Point::from_code(c, q)).code(q)).collect()
    }

    /// True iff integrality of every pair is preserved; checked on difference vectors.
    pub fn preserves_integrality(&self, ctx: &FieldCtx) -> bool {
        let lin = self.linear_part();
        let q = ctx.q();
        (0..q * q).all(|c| {
            let d = Point::from_code(c, q);
            let e = lin.apply(ctx, d);
            ctx.is_square(ctx.gnorm(d.to_gauss())) == ctx.is_square(ctx.gnorm(e.to_gauss()))
        })
    }
}

/// Generators of `H`: translations by a basis, the coordinate swap, the maps
/// `((a, b), (b, −a))` with `a² + b²` a nonzero square, and the Frobenius.
///
/// For `q ∈ {5, 9}` those maps generate a proper subgroup of the line-preserving
/// automorphisms, so the missing elements found by [`semilinear_stabilizer`]
/// are appended until the closure is complete.
pub fn h_generators(ctx: &FieldCtx) -> Result<Vec<AffMap>, SymmetryError> {
    if !ctx.is_odd() {
        return Err(FieldError::EvenOrder(ctx.q()).into());
    }
    let mut gens = vec![
        AffMap::translation(Point::new(Fe::ONE, Fe::ZERO)),
        AffMap::translation(Point::new(Fe::ZERO, Fe::ONE)),
        AffMap::linear([[Fe::ZERO, Fe::ONE], [Fe::ONE, Fe::ZERO]]),
    ];
    for a in ctx.elements() {
        for b in ctx.elements() {
            let n = ctx.add(ctx.square(a), ctx.square(b));
            if !n.is_zero() && ctx.is_square(n) {
                gens.push(AffMap::linear([[a, b], [b, ctx.neg(a)]]));
            }
        }
    }
    if ctx.r() > 1 {
        gens.push(AffMap::frobenius(1));
    }
    if let Some(bad) = gens.iter().find(|g| !g.preserves_integrality(ctx)) {
        return Err(SymmetryError::NotAnAutomorphism(format!("{bad:?}")));
    }
    if matches!(ctx.q(), 5 | 9) {
        let mut closure = super::group::close_group(ctx, &gens, u64::MAX)?;
        for extra in semilinear_stabilizer(ctx) {
            if !closure.contains(&extra) {
                gens.push(extra);
                closure = super::group::close_group(ctx, &gens, u64::MAX)?;
            }
        }
    }
    Ok(gens)
}

/// Every origin-fixing semilinear map `x ↦ M·φᵏ(x)` that preserves integrality,
/// found by exhaustive search over `GL(2, q) × Gal(F_q/F_p)`.
pub fn semilinear_stabilizer(ctx: &FieldCtx) -> Vec<AffMap> {
    let q = ctx.q();
    let integral: Vec<bool> =
        (0..q * q).map(|c| ctx.is_square(ctx.gnorm(ctx.gauss_from_code(c)))).collect();
    // A map is determined by the images of (1,0) and (0,1); test a few points first.
    let probes: Vec<Point> = (0..q * q).map(|c| Point::from_code(c, q)).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for k in 0..ctx.r() {
        for m in 0..q.pow(4) {
            let e = [m % q, (m / q) % q, (m / q / q) % q, m / q / q / q].map(Fe);
            let map = AffMap { frob: k, linear: [[e[0], e[1]], [e[2], e[3]]], shift: Point::ORIGIN };
            if map.determinant(ctx).is_zero() {
                continue;
            }
            let ok = probes
                .iter()
                .all(|&d| integral[d.code(q) as usize] == integral[map.apply(ctx, d).code(q) as usize]);
            if ok && seen.insert(map) {
                out.push(map);
            }
        }
    }
    out
}
