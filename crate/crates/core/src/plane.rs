//! Points of `F_q²`, squared distances, directions and Pythagorean triples.

use crate::field::{Fe, FieldCtx, FieldError, Gauss};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("point set belongs to F_{found}², expected F_{expected}²")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("coordinate out of range for F_{q}")]
    OutOfField { q: u32 },
    #[error("direction of a point with itself is undefined")]
    SamePoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point `(x, y)` of `F_q²`, identified with `x + yi ∈ F_q[i]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Fe,
    pub y: Fe,
}

impl Point {
    pub const ORIGIN: Point = Point { x: Fe::ZERO, y: Fe::ZERO };

    pub fn new(x: Fe, y: Fe) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: u32, y: u32) -> Self {
        Point { x: Fe(x), y: Fe(y) }
    }

    /// Canonical code `code(x)·q + code(y)`.
    #[inline]
    pub fn code(self, q: u32) -> u32 {
        self.x.0 * q + self.y.0
    }

    #[inline]
    pub fn from_code(code: u32, q: u32) -> Self {
        Point { x: Fe(code / q), y: Fe(code % q) }
    }

    pub fn to_gauss(self) -> Gauss {
        Gauss::new(self.x, self.y)
    }

    pub fn from_gauss(z: Gauss) -> Self {
        Point { x: z.re, y: z.im }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite subset of `F_q²`, kept as a strictly increasing list of point codes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    q: u32,
    codes: Vec<u32>,
}

/// Serialized as `{"q": q, "points": [[x, y], ...]}` with element codes.
impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            q: u32,
            points: Vec<[u32; 2]>,
        }
        Repr { q: self.q, points: self.coords() }.serialize(s)
    }
}

impl PointSet {
    pub fn empty(q: u32) -> Self {
        PointSet { q, codes: Vec::new() }
    }

    /// Builds a set from arbitrary codes; duplicates are dropped.
    pub fn from_codes(q: u32, codes: impl IntoIterator<Item = u32>) -> Result<Self, PlaneError> {
        let mut codes: Vec<u32> = codes.into_iter().collect();
        if codes.iter().any(|&c| c >= q * q) {
            return Err(PlaneError::OutOfField { q });
        }
        codes.sort_unstable();
        codes.dedup();
        Ok(PointSet { q, codes })
    }

    /// Wraps codes that are already strictly increasing and in range.
    pub(crate) fn from_sorted_codes(q: u32, codes: Vec<u32>) -> Self {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        PointSet { q, codes }
    }

    pub fn from_points(q: u32, points: impl IntoIterator<Item = Point>) -> Result<Self, PlaneError> {
        let points: Vec<Point> = points.into_iter().collect();
        if points.iter().any(|p| p.x.0 >= q || p.y.0 >= q) {
            return Err(PlaneError::OutOfField { q });
        }
        Self::from_codes(q, points.into_iter().map(|p| p.code(q)))
    }

    pub fn from_coords(q: u32, coords: &[(u32, u32)]) -> Result<Self, PlaneError> {
        Self::from_points(q, coords.iter().map(|&(x, y)| Point::from_ints(x, y)))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.codes.iter().map(move |&c| Point::from_code(c, self.q))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.codes.binary_search(&p.code(self.q)).is_ok()
    }

    pub fn contains_code(&self, code: u32) -> bool {
        self.codes.binary_search(&code).is_ok()
    }

    pub fn with_code(&self, code: u32) -> Self {
        let mut codes = self.codes.clone();
        if let Err(pos) = codes.binary_search(&code) {
            codes.insert(pos, code);
        }
        PointSet { q: self.q, codes }
    }

    pub fn coords(&self) -> Vec<[u32; 2]> {
        self.points().map(|p| [p.x.0, p.y.0]).collect()
    }

    pub(crate) fn check_field(&self, ctx: &FieldCtx) -> Result<(), PlaneError> {
        if self.q != ctx.q() {
            return Err(PlaneError::FieldMismatch { expected: ctx.q(), found: self.q });
        }
        Ok(())
    }
}

/// A slope in `F_q ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Slope(Fe),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DirectionClass {
    /// `1 + d² = 0`: the squared length vanishes along the line.
    Vanishing,
    Integral,
    NonIntegral,
}

/// A triple `(a, b, c)` with `a² + b² = c²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PythTriple {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
}

pub fn point_sub(ctx: &FieldCtx, u: Point, v: Point) -> Point {
    Point::new(ctx.sub(u.x, v.x), ctx.sub(u.y, v.y))
}

pub fn point_add(ctx: &FieldCtx, u: Point, v: Point) -> Point {
    Point::new(ctx.add(u.x, v.x), ctx.add(u.y, v.y))
}

fn check_point(ctx: &FieldCtx, u: Point) -> Result<(), PlaneError> {
    if ctx.contains(u.x) && ctx.contains(u.y) {
        Ok(())
    } else {
        Err(PlaneError::OutOfField { q: ctx.q() })
    }
}

/// `(u₁−v₁)² + (u₂−v₂)²`.
pub fn sqdist(ctx: &FieldCtx, u: Point, v: Point) -> Result<Fe, PlaneError> {
    check_point(ctx, u)?;
    check_point(ctx, v)?;
    Ok(ctx.gnorm(point_sub(ctx, u, v).to_gauss()))
}

pub fn integral_pair(ctx: &FieldCtx, u: Point, v: Point) -> Result<bool, PlaneError> {
    Ok(ctx.is_square(sqdist(ctx, u, v)?))
}

/// True iff every unordered pair of `set` is at integral distance.
pub fn integral_set(ctx: &FieldCtx, set: &PointSet) -> Result<bool, PlaneError> {
    set.check_field(ctx)?;
    let pts: Vec<Point> = set.points().collect();
    for (i, &u) in pts.iter().enumerate() {
        for &v in &pts[i + 1..] {
            if !integral_pair(ctx, u, v)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn direction(ctx: &FieldCtx, u: Point, v: Point) -> Result<Direction, PlaneError> {
    check_point(ctx, u)?;
    check_point(ctx, v)?;
    if u == v {
        return Err(PlaneError::SamePoint);
    }
    let dx = ctx.sub(u.x, v.x);
    let dy = ctx.sub(u.y, v.y);
    Ok(match ctx.div(dy, dx) {
        Some(d) => Direction::Slope(d),
        None => Direction::Infinite,
    })
}

pub fn classify_direction(ctx: &FieldCtx, d: Direction) -> DirectionClass {
    match d {
        Direction::Infinite => DirectionClass::Integral,
        Direction::Slope(d) => {
            let n = ctx.add(Fe::ONE, ctx.square(d));
            if n.is_zero() {
                DirectionClass::Vanishing
            } else if ctx.is_square(n) {
                DirectionClass::Integral
            } else {
                DirectionClass::NonIntegral
            }
        }
    }
}

/// All directions determined by pairs of points of `set`.
pub fn directions_of(ctx: &FieldCtx, set: &PointSet) -> Result<BTreeSet<Direction>, PlaneError> {
    set.check_field(ctx)?;
    let pts: Vec<Point> = set.points().collect();
    let mut out = BTreeSet::new();
    for (i, &u) in pts.iter().enumerate() {
        for &v in &pts[i + 1..] {
            out.insert(direction(ctx, u, v)?);
        }
    }
    Ok(out)
}

/// Upper bound on the number of directions of an integral set (odd `q`).
pub fn direction_bound(ctx: &FieldCtx) -> usize {
    let q = ctx.q() as usize;
    if ctx.q_mod4() == 1 {
        (q + 3) / 2
    } else {
        q.div_ceil(2)
    }
}

/// Upper bound on the points of a non-collinear integral set on one line (odd `q`).
pub fn collinear_bound(ctx: &FieldCtx) -> usize {
    let q = ctx.q() as usize;
    if ctx.q_mod4() == 3 {
        (q - 1) / 2
    } else {
        q.div_ceil(2)
    }
}

/// Largest number of points of `set` on a single affine line.
pub fn max_collinear(ctx: &FieldCtx, set: &PointSet) -> Result<usize, PlaneError> {
    set.check_field(ctx)?;
    if set.len() <= 2 {
        return Ok(set.len());
    }
    let pts: Vec<Point> = set.points().collect();
    let mut best = 2;
    for (i, &u) in pts.iter().enumerate() {
        let mut by_dir: HashMap<Direction, usize> = HashMap::new();
        for &v in &pts[i + 1..] {
            *by_dir.entry(direction(ctx, u, v)?).or_default() += 1;
        }
        if let Some(&m) = by_dir.values().max() {
            best = best.max(m + 1);
        }
    }
    Ok(best)
}

/// Pythagorean triples with hypotenuse `c`, from the parametric description.
///
/// For `c ≠ 0` the solutions are `(±c, 0, c)` together with
/// `((t²−1)/(t²+1)·c, 2t/(t²+1)·c, c)` for `t ∈ F_q*` with `t² ≠ −1`.
/// For `c = 0` they are `(t, ±tω, 0)` for all `t ∈ F_q` when `ω` exists,
/// otherwise only `(0, 0, 0)`.
pub fn pyth_triples(ctx: &FieldCtx, c: Fe) -> Result<Vec<PythTriple>, PlaneError> {
    if !ctx.is_odd() {
        return Err(FieldError::EvenOrder(ctx.q()).into());
    }
    let mut out = Vec::new();
    if c.is_zero() {
        out.push(PythTriple { a: Fe::ZERO, b: Fe::ZERO, c });
        if let Some(w) = ctx.omega() {
            for t in ctx.nonzero() {
                let b = ctx.mul(t, w);
                out.push(PythTriple { a: t, b, c });
                out.push(PythTriple { a: t, b: ctx.neg(b), c });
            }
        }
    } else {
        out.push(PythTriple { a: c, b: Fe::ZERO, c });
        out.push(PythTriple { a: ctx.neg(c), b: Fe::ZERO, c });
        for t in ctx.nonzero() {
            let t2 = ctx.square(t);
            let Some(denom) = ctx.inv(ctx.add(t2, Fe::ONE)) else {
                continue;
            };
            let a = ctx.mul(ctx.mul(ctx.sub(t2, Fe::ONE), denom), c);
            let b = ctx.mul(ctx.mul(ctx.add(t, t), denom), c);
            out.push(PythTriple { a, b, c });
        }
    }
    out.sort();
    Ok(out)
}

/// Every `(a, b)` with `a² + b² = c²`, by exhaustion; sorted like [`pyth_triples`].
pub fn pyth_triples_brute(ctx: &FieldCtx, c: Fe) -> Vec<PythTriple> {
    let c2 = ctx.square(c);
    let mut out: Vec<PythTriple> = ctx
        .elements()
        .flat_map(|a| ctx.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| ctx.add(ctx.square(a), ctx.square(b)) == c2)
        .map(|(a, b)| PythTriple { a, b, c })
        .collect();
    out.sort();
    out
}

/// Expected `|P_c|`.
pub fn pyth_count(ctx: &FieldCtx, c: Fe) -> usize {
    let q = ctx.q() as usize;
    match (c.is_zero(), ctx.q_mod4()) {
        (true, 1) => 2 * q - 1,
        (true, _) => 1,
        (false, 1) => q - 1,
        (false, _) => q + 1,
    }
}
