use ips_core::field::{FieldCtx, Fe, Gauss};
use ips_core::plane::{collinear_bound, direction_bound, directions_of, integral_set, max_collinear, PointSet};
use ips_core::search::{is_maximal, SearchContext};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::sync::OnceLock;

const ORDERS: [u32; 6] = [7, 9, 11, 13, 17, 19];

fn contexts() -> &'static Vec<SearchContext> {
    static CELL: OnceLock<Vec<SearchContext>> = OnceLock::new();
    CELL.get_or_init(|| ORDERS.iter().map(|&q| SearchContext::new(FieldCtx::from_order(q).unwrap(), None).unwrap()).collect())
}

/// A maximal integral set grown greedily over a shuffled point order.
fn greedy_maximal(sc: &SearchContext, seed: u64) -> PointSet {
    let n = sc.graph().n() as u32;
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    let mut chosen: Vec<u32> = Vec::new();
    for c in order {
        if chosen.iter().all(|&d| sc.graph().adjacent(c, d)) {
            chosen.push(c);
        }
    }
    PointSet::from_codes(sc.q(), chosen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(q in prop::sample::select(vec![3u32, 5, 7, 9, 25, 27, 49, 121, 125]), a in any::<u32>(), b in any::<u32>()) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let n = q * q;
        let (z, w): (Gauss, Gauss) = (ctx.gauss_from_code(a % n), ctx.gauss_from_code(b % n));
        prop_assert_eq!(ctx.gnorm(ctx.gmul(z, w)), ctx.mul(ctx.gnorm(z), ctx.gnorm(w)));
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(k in 0usize..ORDERS.len(), seed in any::<u64>(), g in any::<usize>(), anchor in any::<u32>()) {
        let sc = &contexts()[k];
        let set = greedy_maximal(sc, seed);
        let perm = sc.group().element(sc.ctx(), g % sc.group().stabilizer_len(), anchor % sc.graph().n() as u32);
        let image = PointSet::from_codes(sc.q(), set.codes().iter().map(|&c| perm[c as usize])).unwrap();
        let (a, b) = (sc.canonize(&set), sc.canonize(&image));
        prop_assert_eq!(&a.form, &b.form);
        prop_assert_eq!(a.stabilizer_order, b.stabilizer_order);
        prop_assert!(is_maximal(sc.graph(), &image).unwrap());
    }

    #[test]
    fn integral_sets_respect_direction_and_collinearity_bounds(k in 0usize..ORDERS.len(), seed in any::<u64>()) {
        let sc = &contexts()[k];
        let ctx = sc.ctx();
        let set = greedy_maximal(sc, seed);
        prop_assert!(integral_set(ctx, &set).unwrap());
        prop_assert!(set.len() >= 5);
        let dirs = directions_of(ctx, &set).unwrap().len();
        prop_assert!(dirs <= direction_bound(ctx), "q = {}: {} directions", sc.q(), dirs);
        if dirs > 1 {
            let m = max_collinear(ctx, &set).unwrap();
            prop_assert!(m <= collinear_bound(ctx), "q = {}: {} collinear", sc.q(), m);
        }
    }

    #[test]
    fn squares_are_closed_under_products(q in prop::sample::select(vec![5u32, 7, 9, 11, 27, 49]), a in any::<u32>(), b in any::<u32>()) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let (x, y) = (Fe(a % q), Fe(b % q));
        let (sx, sy) = (ctx.square(x), ctx.square(y));
        prop_assert!(ctx.is_square(ctx.mul(sx, sy)));
    }
}
