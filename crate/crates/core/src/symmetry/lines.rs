//! Orbits of a group of affine maps on flags `(line, point off the line)`,
//! split by the class of the line's direction.

use super::affine::AffMap;
use crate::field::FieldCtx;
use crate::plane::{classify_direction, direction, point_add, DirectionClass, Point};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagOrbits {
    pub class: String,
    pub lines: usize,
    pub flags: usize,
    pub orbits: usize,
}

fn class_name(c: DirectionClass) -> &'static str {
    match c {
        DirectionClass::Integral => "integral",
        DirectionClass::NonIntegral => "non-integral",
        DirectionClass::Vanishing => "vanishing",
    }
}

/// Number of orbits of `⟨gens⟩` on pairs `(ℓ, p)` with `p ∉ ℓ`, per line class.
/// One orbit per class means the group is transitive on such pairs.
pub fn flag_orbits(ctx: &FieldCtx, gens: &[AffMap]) -> Vec<FlagOrbits> {
    let q = ctx.q();
    let n = (q * q) as usize;
    // Every line as its sorted point codes.
    let mut lines: Vec<Vec<u32>> = Vec::new();
    let mut line_index: HashMap<Vec<u32>, usize> = HashMap::new();
    let steps: Vec<Point> = std::iter::once(Point::from_ints(0, 1))
        .chain(ctx.elements().map(|m| Point::new(crate::field::Fe::ONE, m)))
        .collect();
    for &step in &steps {
        for base in 0..n as u32 {
            let p = Point::from_code(base, q);
            let mut pts: Vec<u32> = ctx
                .elements()
                .map(|t| point_add(ctx, p, Point::new(ctx.mul(t, step.x), ctx.mul(t, step.y))).code(q))
                .collect();
            pts.sort_unstable();
            if !line_index.contains_key(&pts) {
                line_index.insert(pts.clone(), lines.len());
                lines.push(pts);
            }
        }
    }
    let class_of = |l: &[u32]| {
        let d = direction(ctx, Point::from_code(l[0], q), Point::from_code(l[1], q)).expect("distinct points");
        classify_direction(ctx, d)
    };
    let perms: Vec<Vec<u32>> = gens.iter().map(|g| g.to_perm(ctx)).collect();
    let line_perms: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| {
            lines
                .iter()
                .map(|l| {
                    let mut img: Vec<u32> = l.iter().map(|&c| perm[c as usize]).collect();
                    img.sort_unstable();
                    line_index[&img]
                })
                .collect()
        })
        .collect();

    let flag = |l: usize, p: usize| l * n + p;
    let mut parent: Vec<usize> = (0..lines.len() * n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (perm, lperm) in perms.iter().zip(&line_perms) {
        for (l, line) in lines.iter().enumerate() {
            for p in 0..n {
                if line.binary_search(&(p as u32)).is_ok() {
                    continue;
                }
                let (a, b) = (root(&mut parent, flag(l, p)), root(&mut parent, flag(lperm[l], perm[p] as usize)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut out = Vec::new();
    for class in [DirectionClass::Integral, DirectionClass::NonIntegral, DirectionClass::Vanishing] {
        let members: Vec<usize> = (0..lines.len()).filter(|&l| class_of(&lines[l]) == class).collect();
        if members.is_empty() {
            continue;
        }
        let mut roots = std::collections::HashSet::new();
        let mut flags = 0;
        for &l in &members {
            for p in 0..n {
                if lines[l].binary_search(&(p as u32)).is_err() {
                    flags += 1;
                    roots.insert(root(&mut parent, flag(l, p)));
                }
            }
        }
        out.push(FlagOrbits { class: class_name(class).to_string(), lines: members.len(), flags, orbits: roots.len() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::affine::h_generators;
    use super::*;

    #[test]
    fn transitive_on_flags_of_each_class() {
        for q in [3u32, 5, 7, 9, 11] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let res = flag_orbits(&ctx, &h_generators(&ctx).unwrap());
            let total: usize = res.iter().map(|r| r.lines).sum();
            assert_eq!(total, (q * q + q) as usize);
            let expected_classes = if q % 4 == 1 { 3 } else { 2 };
            assert_eq!(res.len(), expected_classes, "q = {q}");
            for r in &res {
                assert_eq!(r.orbits, 1, "q = {q}, class {}", r.class);
                assert_eq!(r.flags, r.lines * (q * q - q) as usize);
            }
        }
    }
}
