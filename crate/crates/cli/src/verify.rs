//! One-shot verification battery for a single `q`.

use crate::{field, Outcome, Run};
use ips_core::igraph::{build_graph, complement_params, expected_complement, expected_srg, srg_params, verify_paley_iso, SrgParams};
use ips_core::plane::{collinear_bound, direction_bound, directions_of, max_collinear, pyth_triples, pyth_triples_brute};
use ips_core::report::{Comparison, Verdict};
use ips_core::search::{classify, ClassifyOptions, SearchContext};
use ips_core::symmetry::{close_group, expected_g_order, expected_h_order, graph_aut_order, h_generators};
use serde::Serialize;

fn tuple(s: SrgParams) -> String {
    format!("({}, {}, {}, {})", s.v, s.k, s.lambda, s.mu)
}

fn at_most(item: &str, source: &str, bound: usize, computed: usize) -> Comparison {
    Comparison {
        item: item.into(),
        source: source.into(),
        expected: format!("<= {bound}"),
        computed: computed.to_string(),
        verdict: if computed <= bound { Verdict::Match } else { Verdict::Mismatch },
    }
}

pub fn run(run: &Run, q: u32, ir_max_q: u32, max_q: u32) -> Outcome {
    let ctx = field(q)?;
    let graph = build_graph(&ctx)?;
    let mut cmps = Vec::new();
    if !ctx.is_odd() {
        let n = graph.n();
        let min_degree = (0..n as u32).map(|u| (0..n as u32).filter(|&v| graph.adjacent(u, v)).count()).min().unwrap_or(0);
        cmps.push(Comparison::exact("min-degree", "even q: complete graph", n - 1, min_degree));
        return run.report("verify", q, (), cmps);
    }
    let qq = q as u64;
    cmps.push(Comparison::exact("srg", "closed-form parameters of the integral-distance graph", tuple(expected_srg(qq)), tuple(srg_params(&graph)?)));
    if q % 4 == 1 {
        cmps.push(Comparison::exact("complement-srg", "closed-form parameters of the complement", tuple(expected_complement(qq)), tuple(complement_params(&graph)?)));
    } else {
        cmps.push(Comparison::exact("paley-iso", "identity map onto Paley(q²)", true, verify_paley_iso(&ctx)?));
    }

    let mut agree = 0;
    let mut total = 0;
    for c in ctx.elements() {
        let brute = pyth_triples_brute(&ctx, c);
        total += brute.len();
        agree += usize::from(pyth_triples(&ctx, c)? == brute);
    }
    cmps.push(Comparison::exact("pyth-parametric", "parametric triples equal exhaustive ones for every c", q, agree));
    cmps.push(Comparison::exact("pyth-total", "q² Pythagorean triples", qq * qq, total));

    let h = close_group(&ctx, &h_generators(&ctx)?, u64::MAX)?;
    cmps.push(Comparison::exact("|H|", "published |H| formula", expected_h_order(q, ctx.r()), h.order()));
    if q <= ir_max_q {
        let aut = graph_aut_order(&graph, ir_max_q, run.deadline)?;
        cmps.push(Comparison::exact("|G|", "published |G| formula", expected_g_order(q, ctx.r()), aut.order));
    }

    let mut classes = 0;
    if q <= max_q {
        let sc = SearchContext::new(ctx.clone(), run.deadline)?;
        let c = classify(&sc, &ClassifyOptions { max_q, size_floor: 0, deadline: run.deadline })?;
        classes = c.records.len();
        let (mut most_dirs, mut most_collinear) = (0, 0);
        for r in &c.records {
            let set = r.representative(q);
            let dirs = directions_of(&ctx, &set)?.len();
            most_dirs = most_dirs.max(dirs);
            if dirs > 1 {
                most_collinear = most_collinear.max(max_collinear(&ctx, &set)?);
            }
        }
        cmps.push(at_most("directions", "direction bound for integral sets", direction_bound(&ctx), most_dirs));
        cmps.push(at_most("collinear", "points on a line of a non-collinear integral set", collinear_bound(&ctx), most_collinear));
        if q >= 5 {
            let l = c.table.min_size().unwrap_or(0);
            cmps.push(Comparison {
                item: "l_q".into(),
                source: "maximal sets have at least 5 points".into(),
                expected: ">= 5".into(),
                computed: l.to_string(),
                verdict: if l >= 5 { Verdict::Match } else { Verdict::Mismatch },
            });
        }
    }
    #[derive(Serialize)]
    struct Summary {
        classes_checked: usize,
    }
    run.report("verify", q, Summary { classes_checked: classes }, cmps)
}
