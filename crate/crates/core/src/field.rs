//! Exact arithmetic in `F_q = F_p[X]/(f)` and in the ring `F_q[i]` with `i² = −1`.
//!
//! Elements are stored as their canonical integer code `Σ cᵢ pⁱ ∈ [0, q)`, where
//! `cᵢ` are the coefficients of the residue polynomial. The defining polynomial
//! `f` is the monic irreducible of degree `r` with the smallest code, so every
//! code (and everything derived from codes, such as canonical forms) is stable
//! across runs and machines.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the bound {bound}")]
    TooLarge { p: u32, r: u32, bound: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("operation requires odd q, got q = {0}")]
    EvenOrder(u32),
    #[error("operation requires q ≡ 1 (mod 4), got q = {0}")]
    NoSqrtMinusOne(u32),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("unit circle of F_{q}[i] is not cyclic")]
    NotCyclic { q: u32 },
}

/// An element of `F_q`, identified by its canonical code.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The element `re + im·i` of `F_q[i]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gauss {
    pub re: Fe,
    pub im: Fe,
}

impl Gauss {
    pub const ZERO: Gauss = Gauss { re: Fe::ZERO, im: Fe::ZERO };
    pub const ONE: Gauss = Gauss { re: Fe::ONE, im: Fe::ZERO };

    pub fn new(re: Fe, im: Fe) -> Self {
        Gauss { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// A finite field `F_q`, `q = p^r`, together with its square table and `ω_q`.
///
/// Immutable after construction; all methods are pure.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    r: u32,
    q: u32,
    /// Non-leading coefficients `c₀ … c_{r−1}` of the monic defining polynomial.
    irreducible: Vec<u32>,
    primitive: Fe,
    /// `exp[k] = g^k` for `k ∈ [0, 2(q−1))`, so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    squares: Vec<bool>,
    omega: Option<Fe>,
}

impl FieldCtx {
    /// Builds `F_{p^r}` with the default order bound.
    pub fn new(p: u32, r: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, r, DEFAULT_MAX_ORDER)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, r)
    }

    pub fn with_bound(p: u32, r: u32, bound: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(r)
            .filter(|&q| q <= bound as u64)
            .ok_or(FieldError::TooLarge { p, r, bound })? as u32;

        let irreducible = smallest_irreducible(p, r);
        let poly = PolyRing { p, r, modulus: &irreducible };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| poly.pow(g, order / l) != 1 || order == 1)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for k in 0..(q - 1) {
            exp.push(x);
            log[x as usize] = k;
            x = poly.mul(x, primitive);
        }
        debug_assert_eq!(x, 1);
        exp.extend_from_within(..);

        let neg = (0..q).map(|a| poly.neg(a)).collect();

        let mut ctx = FieldCtx {
            p,
            r,
            q,
            irreducible,
            primitive: Fe(primitive),
            exp,
            log,
            neg,
            squares: Vec::new(),
            omega: None,
        };
        ctx.squares = (0..q)
            .map(|a| a == 0 || p == 2 || ctx.log[a as usize].is_multiple_of(2))
            .collect();
        if q % 4 == 1 {
            let minus_one = ctx.neg(Fe::ONE);
            ctx.omega = ctx.elements().find(|&w| ctx.mul(w, w) == minus_one);
        }
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// `q mod 4`, the congruence class that drives most case splits.
    pub fn q_mod4(&self) -> u32 {
        self.q % 4
    }

    /// Coefficients `c₀ … c_{r−1}` of the monic defining polynomial.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    /// Canonical code of the defining polynomial (leading coefficient dropped).
    pub fn irreducible_code(&self) -> u32 {
        self.irreducible.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    /// The element `n·1`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.r == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let l = self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1));
        Fe(self.exp[(l % (self.q as u64 - 1)) as usize])
    }

    /// The Frobenius power `a ↦ a^(p^k)`.
    pub fn frob(&self, a: Fe, k: u32) -> Fe {
        self.pow(a, (self.p as u64).pow(k % self.r))
    }

    /// Membership in `□_q` (zero counts as a square).
    #[inline]
    pub fn is_square(&self, a: Fe) -> bool {
        self.squares[a.0 as usize]
    }

    pub fn squares(&self) -> impl Iterator<Item = Fe> + '_ {
        self.elements().filter(|&a| self.is_square(a))
    }

    /// The smallest element with `ω² = −1`; present iff `q ≡ 1 (mod 4)`.
    pub fn omega(&self) -> Option<Fe> {
        self.omega
    }

    // ---- F_q[i] ------------------------------------------------------------

    pub fn gadd(&self, z: Gauss, w: Gauss) -> Gauss {
        Gauss::new(self.add(z.re, w.re), self.add(z.im, w.im))
    }

    pub fn gsub(&self, z: Gauss, w: Gauss) -> Gauss {
        Gauss::new(self.sub(z.re, w.re), self.sub(z.im, w.im))
    }

    pub fn gmul(&self, z: Gauss, w: Gauss) -> Gauss {
        let re = self.sub(self.mul(z.re, w.re), self.mul(z.im, w.im));
        let im = self.add(self.mul(z.re, w.im), self.mul(z.im, w.re));
        Gauss::new(re, im)
    }

    pub fn gscale(&self, a: Fe, z: Gauss) -> Gauss {
        Gauss::new(self.mul(a, z.re), self.mul(a, z.im))
    }

    pub fn gconj(&self, z: Gauss) -> Gauss {
        Gauss::new(z.re, self.neg(z.im))
    }

    pub fn gpow(&self, z: Gauss, mut e: u64) -> Gauss {
        let (mut base, mut acc) = (z, Gauss::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.gmul(acc, base);
            }
            base = self.gmul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `N(x + yi) = x² + y²`, multiplicative on `F_q[i]`.
    pub fn gnorm(&self, z: Gauss) -> Fe {
        self.add(self.square(z.re), self.square(z.im))
    }

    /// True iff `z ≠ 0` and `N(z) = 0`.
    pub fn is_zero_divisor(&self, z: Gauss) -> bool {
        !z.is_zero() && self.gnorm(z).is_zero()
    }

    /// Canonical code of a Gauss element, `code(re)·q + code(im)`.
    pub fn gcode(&self, z: Gauss) -> u32 {
        z.re.0 * self.q + z.im.0
    }

    pub fn gauss_from_code(&self, code: u32) -> Gauss {
        Gauss::new(Fe(code / self.q), Fe(code % self.q))
    }

    pub fn gauss_elements(&self) -> impl Iterator<Item = Gauss> + '_ {
        (0..self.q * self.q).map(|c| self.gauss_from_code(c))
    }

    /// The cyclic group `N⁻¹(1)` listed as successive powers of its generator.
    pub fn unit_circle(&self) -> Result<UnitCircle, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenOrder(self.q));
        }
        let members: Vec<Gauss> = self
            .gauss_elements()
            .filter(|&z| self.gnorm(z) == Fe::ONE)
            .collect();
        let order = members.len() as u64;
        let factors = prime_factors(order);
        let generator = members
            .iter()
            .copied()
            .find(|&z| factors.iter().all(|&l| self.gpow(z, order / l) != Gauss::ONE))
            .ok_or(FieldError::NotCyclic { q: self.q })?;
        let mut powers = Vec::with_capacity(members.len());
        let mut z = Gauss::ONE;
        for _ in 0..order {
            powers.push(z);
            z = self.gmul(z, generator);
        }
        Ok(UnitCircle { generator, powers })
    }

    /// `ρ(t) = (1+t²)/(2t) + ω·(1−t²)/(2t)·i`, a group isomorphism `F_q* → N⁻¹(1)`.
    pub fn rho(&self, t: Fe) -> Result<Gauss, FieldError> {
        let omega = self.omega.ok_or(FieldError::NoSqrtMinusOne(self.q))?;
        if t.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let t2 = self.square(t);
        let denom = self.inv(self.add(t, t)).expect("odd characteristic");
        let re = self.mul(self.add(Fe::ONE, t2), denom);
        let im = self.mul(omega, self.mul(self.sub(Fe::ONE, t2), denom));
        Ok(Gauss::new(re, im))
    }
}

/// `N⁻¹(1) ⊂ F_q[i]` with a fixed generator.
#[derive(Clone, Debug)]
pub struct UnitCircle {
    generator: Gauss,
    /// `powers[k] = generator^k`.
    powers: Vec<Gauss>,
}

impl UnitCircle {
    /// Smallest-code element of full order.
    pub fn generator(&self) -> Gauss {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.powers.len()
    }

    pub fn powers(&self) -> &[Gauss] {
        &self.powers
    }

    pub fn power(&self, k: i64) -> Gauss {
        self.powers[k.rem_euclid(self.powers.len() as i64) as usize]
    }

    pub fn contains(&self, z: Gauss) -> bool {
        self.powers.contains(&z)
    }
}

// ---- helpers ----------------------------------------------------------------

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decomposes `q = p^r`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q as u64);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0] as u32;
    let (mut r, mut m) = (0, q);
    while m > 1 {
        m /= p;
        r += 1;
    }
    Some((p, r))
}

/// Polynomials over `F_p` of degree `< r`, reduced modulo a monic `f`.
struct PolyRing<'a> {
    p: u32,
    r: u32,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.r)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (p, r) = (self.p as u64, self.r as usize);
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for deg in (r..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &fi) in self.modulus.iter().enumerate() {
                let k = deg - r + i;
                prod[k] = (prod[k] + (p - c) * fi as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..r].iter().map(|&c| c as u32).collect();
        self.encode(&digits)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// The monic irreducible polynomial of degree `r` over `F_p` with the smallest code.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = p.pow(r);
    (0..count)
        .map(|code| {
            let mut c = code;
            (0..r)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect::<Vec<u32>>()
        })
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division of `X^r + Σ fᵢ Xⁱ` by every monic polynomial of degree ≤ r/2.
fn is_irreducible(p: u32, lower: &[u32]) -> bool {
    let r = lower.len();
    if r == 1 {
        return true;
    }
    let mut f: Vec<u32> = lower.to_vec();
    f.push(1);
    for d in 1..=r / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem_is_zero(p, &f, &g) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for deg in (dg..rem.len()).rev() {
        let c = rem[deg];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let k = deg - dg + i;
            rem[k] = (rem[k] + (p - c) * gi as u64) % p;
        }
    }
    rem[..dg].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_squares(ctx: &FieldCtx) -> Vec<Fe> {
        let mut s: Vec<Fe> = ctx.elements().map(|x| ctx.square(x)).collect();
        s.sort();
        s.dedup();
        s
    }

    #[test]
    fn f7_squares() {
        let f = FieldCtx::new(7, 1).unwrap();
        let expected: Vec<Fe> = [0, 1, 2, 4].into_iter().map(Fe).collect();
        assert_eq!(f.squares().collect::<Vec<_>>(), expected);
        assert_eq!(brute_squares(&f), expected);
        assert!(f.is_square(Fe(2)));
        assert!(!f.is_square(Fe(3)));
    }

    #[test]
    fn f2_everything_is_square() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert!(f.is_square(Fe(0)) && f.is_square(Fe(1)));
        assert_eq!(f.omega(), None);
    }

    #[test]
    fn f9_has_five_squares() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.squares().count(), 5);
        assert_eq!(brute_squares(&f).len(), 5);
        // X² + 1 is the smallest irreducible quadratic over F_3 (code 1 = c₀).
        assert_eq!(f.irreducible(), &[1, 0]);
    }

    #[test]
    fn omega_smallest_witness() {
        assert_eq!(FieldCtx::new(13, 1).unwrap().omega(), Some(Fe(5)));
        assert_eq!(FieldCtx::new(5, 1).unwrap().omega(), Some(Fe(2)));
        assert_eq!(FieldCtx::new(7, 1).unwrap().omega(), None);
        let f9 = FieldCtx::new(3, 2).unwrap();
        let w = f9.omega().unwrap();
        assert_eq!(f9.square(w), f9.neg(Fe::ONE));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            FieldCtx::new(3, 11),
            Err(FieldError::TooLarge { .. })
        ));
        assert_eq!(FieldCtx::from_order(12).unwrap_err(), FieldError::NotPrimePower(12));
    }

    #[test]
    fn extension_field_axioms_exhaustive() {
        for (p, r) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = FieldCtx::new(p, r).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [Fe(1), Fe(f.q() - 1), Fe(f.q() / 2)] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs, "distributivity in F_{}", f.q());
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FieldCtx::new(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
            }
            assert_eq!(f.frob(a, 3), a);
        }
    }

    #[test]
    fn gnorm_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.gnorm(Gauss::new(Fe(1), Fe(2))), Fe(5));
        let f13 = FieldCtx::new(13, 1).unwrap();
        assert_eq!(f13.gnorm(Gauss::new(Fe(1), Fe(5))), Fe(0));
        assert!(f13.is_zero_divisor(Gauss::new(Fe(1), Fe(5))));
        assert!(!f13.is_zero_divisor(Gauss::ZERO));
    }

    #[test]
    fn gnorm_multiplicative_exhaustive_small() {
        for q in [3, 5, 7, 9, 11, 13] {
            let f = FieldCtx::from_order(q).unwrap();
            let all: Vec<Gauss> = f.gauss_elements().collect();
            for &z in &all {
                for &w in &all {
                    assert_eq!(f.gnorm(f.gmul(z, w)), f.mul(f.gnorm(z), f.gnorm(w)));
                }
            }
        }
    }

    #[test]
    fn zero_divisor_counts() {
        let f13 = FieldCtx::new(13, 1).unwrap();
        let zd: Vec<Gauss> = f13.gauss_elements().filter(|&z| f13.is_zero_divisor(z)).collect();
        assert_eq!(zd.len(), 24);
        // Together with zero they are exactly the two ideals F_q(ω ± i).
        let w = f13.omega().unwrap();
        let mut ideals: Vec<Gauss> = Vec::new();
        for gen in [Gauss::new(w, Fe::ONE), Gauss::new(w, f13.neg(Fe::ONE))] {
            for t in f13.nonzero() {
                ideals.push(f13.gscale(t, gen));
            }
        }
        ideals.sort();
        let mut zd_sorted = zd.clone();
        zd_sorted.sort();
        assert_eq!(ideals, zd_sorted);

        let f7 = FieldCtx::new(7, 1).unwrap();
        assert!(f7.gauss_elements().all(|z| !f7.is_zero_divisor(z)));
    }

    #[test]
    fn unit_circle_orders() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let c7 = f7.unit_circle().unwrap();
        assert_eq!(c7.order(), 8);
        let f13 = FieldCtx::new(13, 1).unwrap();
        let c13 = f13.unit_circle().unwrap();
        assert_eq!(c13.order(), 12);
        assert!(c13.contains(Gauss::ONE));
        assert_eq!(c13.power(0), Gauss::ONE);
        assert_eq!(
            FieldCtx::new(2, 2).unwrap().unit_circle().unwrap_err(),
            FieldError::EvenOrder(4)
        );
    }

    #[test]
    fn rho_examples() {
        let f13 = FieldCtx::new(13, 1).unwrap();
        assert_eq!(f13.rho(Fe::ONE).unwrap(), Gauss::ONE);
        let z = f13.rho(Fe(2)).unwrap();
        assert_eq!(f13.gnorm(z), Fe::ONE);
        for s in f13.nonzero() {
            for t in f13.nonzero() {
                let lhs = f13.rho(f13.mul(s, t)).unwrap();
                let rhs = f13.gmul(f13.rho(s).unwrap(), f13.rho(t).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(f13.rho(Fe::ZERO).unwrap_err(), FieldError::ZeroArgument);
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.rho(Fe::ONE).unwrap_err(), FieldError::NoSqrtMinusOne(7));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(15), None);
    }
}
