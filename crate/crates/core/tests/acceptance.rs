//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use basicity::decompose::{decompose_exact, incidence_rank, is_basic, ExactOutcome, LsqOptions};
use basicity::decomposition::{evaluate, first_mismatch};
use basicity::embed::{
    discretize, generate_rn_embedding, svg_for_complex, underlying_graph,
    validate_projection_constraints, SvgOptions,
};
use basicity::graphs::canon::{forests_isomorphic, free_trees};
use basicity::graphs::checker::{
    check_cross, check_cycle, check_embedding, check_pentode, RnLabels,
};
use basicity::graphs::{
    build_fn, build_rn, defect, embed_into_rn, embeds_in_book, forbidden_check,
    is_basically_embeddable, named, suppress_degree2, Multigraph,
};
use basicity::lightning::{
    collapse, e_iterate, find_closed_lightning, max_lightning_length, BipartiteView,
    LightningLength, Strip,
};
use basicity::rational::{abs, int};
use basicity::{decompose_lsq, Point, PointSet, Rational, Valuation};
use common::*;
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1_oracles() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut basic = 0;
    for case in 0..2000 {
        let k = grid_set(&mut r, 12, 6);
        let empties = e_iterate(&k).unwrap().index.is_some();
        let no_closed = find_closed_lightning(&k).unwrap().is_none();
        let forest = BipartiteView::new(&k).unwrap().is_forest();
        let full_rank = incidence_rank(&k) == k.len();
        ensure(
            empties == no_closed && no_closed == forest && forest == full_rank,
            || format!("case {case}: {empties} {no_closed} {forest} {full_rank}"),
        )?;
        basic += usize::from(empties);
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "2000 sets agree ({basic} basic) in {:?}",
        start.elapsed()
    ))
}

fn c2_sandwich() -> Outcome {
    let mut r = rng(2);
    for case in 0..500 {
        let k = acyclic_set(&mut r, 12, 6);
        let n = e_iterate(&k)
            .unwrap()
            .index
            .ok_or(format!("case {case} not emptied"))?;
        let LightningLength::Finite(l) = max_lightning_length(&k).unwrap() else {
            return Err(format!("case {case} infinite"));
        };
        ensure(2 * n - 1 <= l && l <= 2 * n, || {
            format!("case {case}: index {n}, length {l}")
        })?;
    }
    Ok("500 acyclic sets satisfy 2n-1 <= L <= 2n".into())
}

fn c3_staircase() -> Outcome {
    for i in 1..=7u32 {
        let got = max_lightning_length(&staircase_level(i)).unwrap();
        ensure(got == LightningLength::Finite(1 << i), || {
            format!("level {i}: {got:?}")
        })?;
    }
    Ok("levels 1..7 have maximal lightning 2^i".into())
}

fn c4_example_11b() -> Outcome {
    let order: Vec<Point> = [[0, 0, 0], [1, 1, 0], [0, 1, 1], [1, 0, 1]]
        .iter()
        .map(|p| Point::from_ints(p))
        .collect();
    let k = PointSet::new(3, order.clone()).unwrap();
    ensure(is_basic(&k).basic, || "not basic".into())?;
    ensure(e_iterate(&k).unwrap().index.is_none(), || {
        "E empties it".into()
    })?;
    let mut r = rng(4);
    for case in 0..20 {
        let vals: Vec<Rational> = (0..4).map(|_| random_rational(&mut r)).collect();
        let f = valuation_in_order(&k, &order, &vals);
        let [f000, f110, f011, f101] = [&vals[0], &vals[1], &vals[2], &vals[3]];
        let ExactOutcome::Decomposed(d) = decompose_exact(&k, &f).unwrap() else {
            return Err(format!("case {case} infeasible"));
        };
        let at = |axis: usize, c: i64| d.per_axis[axis].table[&int(c)].clone();
        let two = int(2);
        ensure(
            at(0, 0) == *f000 && at(1, 0).is_zero() && at(2, 0).is_zero(),
            || format!("case {case}: gauge"),
        )?;
        ensure(&two * at(0, 1) == f000 + f110 + f101 - f011, || {
            format!("case {case}: g(1)")
        })?;
        ensure(&two * at(1, 1) == -f000 + f110 - f101 + f011, || {
            format!("case {case}: h(1)")
        })?;
        ensure(&two * at(2, 1) == -f000 - f110 + f101 + f011, || {
            format!("case {case}: l(1)")
        })?;
        ensure(first_mismatch(&d, &k, &f).unwrap().is_none(), || {
            format!("case {case}: evaluate")
        })?;
    }
    Ok("20 valuations match 2g(1), 2h(1), 2l(1); basic, E never empties".into())
}

fn c5_lemma() -> Outcome {
    for m in 4..=40usize {
        let (order, k) = lemma_staircase(2 * m + 5);
        let vals: Vec<Rational> = (1..=order.len())
            .map(|i| if i % 2 == 0 { int(1) } else { int(-1) })
            .collect();
        let f = valuation_in_order(&k, &order, &vals);
        let ExactOutcome::Decomposed(d) = decompose_exact(&k, &f).unwrap() else {
            return Err(format!("m={m}: infeasible"));
        };
        let g = &d.per_axis[0];
        let gmax = order.iter().map(|p| abs(&g.table[p.x()])).max().unwrap();
        ensure(gmax > int(m as i64), || format!("m={m}: max |g| = {gmax}"))?;
        // g is fixed up to a constant, so every decomposition has
        // max |g| >= (max g - min g) / 2
        let hi = g.table.values().max().unwrap();
        let lo = g.table.values().min().unwrap();
        ensure((hi - lo) / int(2) > int(m as i64), || {
            format!("m={m}: spread")
        })?;
    }
    Ok("m = 4..40: max |g| > m for every decomposition".into())
}

fn c6_graphs() -> Outcome {
    let mut checked = 0;
    let mut embeddable = 0;
    let mut check = |k: &Multigraph| -> Result<(), String> {
        let m = k.non_leaf_count();
        let s = is_basically_embeddable(k);
        let u = embed_into_rn(k, m);
        ensure(s == u.is_some(), || {
            format!("(S)={s} but (U)={} for\n{}", u.is_some(), k.to_text())
        })?;
        if let Some(w) = u {
            check_embedding(k, &w, &RnLabels { n: m })
                .map_err(|e| format!("checker: {e}\n{}", k.to_text()))?;
            embeddable += 1;
        }
        checked += 1;
        Ok(())
    };
    for n in 1..=12 {
        for t in free_trees(n) {
            check(&t)?;
        }
    }
    let mut r = rng(6);
    for _ in 0..500 {
        check(&random_tree(&mut r, 30))?;
    }
    let t5 = named::star(5);
    let rep = forbidden_check(&t5);
    check_pentode(&t5, rep.pentode.as_ref().ok_or("T5 not flagged")?)?;
    let c = named::branched_cross();
    let rep = forbidden_check(&c);
    check_cross(&c, rep.cross.as_ref().ok_or("C not flagged")?)?;
    for g in [
        named::cycle(3),
        named::cycle(6),
        Multigraph::parse("a a").unwrap(),
    ] {
        let rep = forbidden_check(&g);
        check_cycle(&g, rep.cycle.as_ref().ok_or("cycle not flagged")?)?;
        ensure(!is_basically_embeddable(&g), || {
            "cyclic graph accepted".into()
        })?;
    }
    Ok(format!(
        "{checked} trees agree ({embeddable} embeddable, all witnesses checked)"
    ))
}

fn c7_book() -> Outcome {
    let t6 = named::star(6);
    ensure(defect(&t6) == 4, || "delta(T6)".into())?;
    ensure(defect(&named::star(4)) == 0, || "delta(T4)".into())?;
    ensure(defect(&build_fn(2)) == 0, || "delta(F2)".into())?;
    ensure(embeds_in_book(&t6, 4) && !embeds_in_book(&t6, 3), || {
        "T6 book".into()
    })?;
    Ok("delta(T6)=4, delta(T4)=0, delta(F2)=0; T6 in book 4 not 3".into())
}

fn c8_embedding() -> Outcome {
    let start = Instant::now();
    let mut r = rng(8);
    let mut indices = Vec::new();
    for n in 0..=3 {
        let sc = generate_rn_embedding(n);
        let v = validate_projection_constraints(&sc);
        ensure(v.passed(), || format!("n={n}: {:?}", v.violation))?;
        let g = suppress_degree2(&underlying_graph(&sc));
        ensure(forests_isomorphic(&g, &build_rn(n)), || {
            format!("n={n}: graph")
        })?;
        let svg = svg_for_complex(&sc, None, SvgOptions::default());
        roxmltree::Document::parse(&svg).map_err(|e| format!("n={n}: svg {e}"))?;
        for k in 2..=8 {
            let pts = discretize(&sc, k).unwrap();
            ensure(find_closed_lightning(&pts).unwrap().is_none(), || {
                format!("n={n} k={k}: closed lightning")
            })?;
            let idx = e_iterate(&pts)
                .unwrap()
                .index
                .ok_or(format!("n={n} k={k}: E stalls"))?;
            indices.push(format!("{n}/{k}:{idx}"));
            for _ in 0..10 {
                let f = small_int_valuation(&mut r, pts.len());
                let ExactOutcome::Decomposed(d) = decompose_exact(&pts, &f).unwrap() else {
                    return Err(format!("n={n} k={k}: infeasible"));
                };
                for (i, p) in pts.iter().enumerate() {
                    ensure(evaluate(&d, p).unwrap() == f[i], || format!("n={n} k={k}"))?;
                }
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "n<=3, k<=8 pass in {:?}; indices n/k:index {}",
        start.elapsed(),
        indices.join(" ")
    ))
}

fn c9_lsq() -> Outcome {
    let sq = PointSet::new(
        2,
        [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| Point::from_ints(p))
            .collect(),
    )
    .unwrap();
    let f = Valuation::from_ints(&[1, 2, 3, 5]);
    let rep = decompose_lsq(&sq, &f, LsqOptions::default()).unwrap();
    let res = rep.final_residual();
    ensure(
        (res - 0.25).abs() <= 1e-9 && rep.residuals.len() <= 500,
        || format!("square residual {res} after {} sweeps", rep.residuals.len()),
    )?;
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for case in 0..50 {
        let k = acyclic_set(&mut r, 12, 6);
        let f = small_int_valuation(&mut r, k.len());
        let exact = decompose_exact(&k, &f).unwrap();
        ensure(exact.decomposition().is_some(), || {
            format!("case {case}: exact failed")
        })?;
        let rep = decompose_lsq(&k, &f, LsqOptions::default()).unwrap();
        // compare the approximate sums with the exact values f = sum of g
        for (i, p) in k.iter().enumerate() {
            let approx: f64 = (0..2)
                .map(|a| rep.decomposition.per_axis[a][&p.coords()[a]])
                .sum();
            let want = basicity::rational::to_f64(&f[i]);
            worst = worst.max((approx - want).abs());
        }
    }
    ensure(worst < 1e-9, || format!("worst residual {worst}"))?;
    Ok(format!(
        "square -> {res}; 50 basic instances, worst residual {worst:e}"
    ))
}

fn c10_collapse() -> Outcome {
    let mut r = rng(10);
    let mut done = 0;
    let mut tries = 0;
    while done < 500 {
        tries += 1;
        if tries > 100_000 {
            return Err(format!("only {done} instances generated"));
        }
        let base = acyclic_set(&mut r, 10, 8);
        let (mut a, mut b) = (r.gen_range(0..8i64), r.gen_range(0..8i64));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let c = r.gen_range(0..8i64);
        // the segment [a;b] x c must belong to K: add its sample points
        let mut pts: Vec<Point> = base.points().to_vec();
        let mut xs: Vec<i64> = (a..=b).collect();
        xs.retain(|x| base.iter().any(|p| p.x() == &int(*x)) || *x == a || *x == b);
        pts.extend(xs.iter().map(|&x| Point::from_ints(&[x, c])));
        let k = PointSet::from_points_dedup(2, pts).unwrap();
        if find_closed_lightning(&k).unwrap().is_some() {
            continue;
        }
        let strip = Strip::new(int(a), int(b), int(c)).unwrap();
        let q = collapse(&k, &strip).unwrap();
        ensure(find_closed_lightning(&q).unwrap().is_none(), || {
            format!("collapse created a closed lightning: {k:?} {strip:?}")
        })?;
        ensure(strip.collision_off_segment(&k).is_none(), || {
            format!("not injective off the segment: {k:?} {strip:?}")
        })?;
        let (LightningLength::Finite(lk), LightningLength::Finite(lq)) = (
            max_lightning_length(&k).unwrap(),
            max_lightning_length(&q).unwrap(),
        ) else {
            return Err("infinite length on acyclic set".into());
        };
        ensure(lk >= lq, || format!("length dropped {lk} < {lq}"))?;
        done += 1;
    }
    Ok(format!(
        "500 acyclic sets with random strips ({tries} drawn)"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 oracle equivalence", c1_oracles),
        ("2 problem-10 sandwich", c2_sandwich),
        ("3 staircase counts", c3_staircase),
        ("4 example 11b", c4_example_11b),
        ("5 norm blow-up lemma", c5_lemma),
        ("6 graph criterion", c6_graphs),
        ("7 book defect", c7_book),
        ("8 embedding generator", c8_embedding),
        ("9 approximate decomposer", c9_lsq),
        ("10 collapse lemma", c10_collapse),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
