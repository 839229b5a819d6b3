mod common;

use std::collections::BTreeMap;

use basicity::decompose::{
    decompose_by_elimination, decompose_exact, incidence_rank, is_basic, is_basic_by_rank,
    BasicWitness, ExactOutcome,
};
use basicity::decomposition::first_mismatch;
use basicity::graphs::canon::free_trees;
use basicity::graphs::{
    build_rn, embed_into_tree, embeds_in_book, forbidden_check, is_basically_embeddable, named,
    suppress_degree2, Multigraph,
};
use basicity::lightning::{
    e_iterate, find_closed_lightning, max_lightning_length, BipartiteView, LightningLength,
};
use basicity::rational::int;
use basicity::witness::{basic_certificate, verify_points, PointsCertificate};
use basicity::{Point, PointSet, Valuation};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn basicness_predicates_agree(seed in seeds()) {
        let k = grid_set(&mut rng(seed), 12, 6);
        let a = e_iterate(&k).unwrap().index.is_some();
        let b = find_closed_lightning(&k).unwrap().is_none();
        let c = BipartiteView::new(&k).unwrap().is_forest();
        let d = incidence_rank(&k) == k.len();
        prop_assert!(a == b && b == c && c == d);
        prop_assert_eq!(is_basic(&k).basic, is_basic_by_rank(&k).basic);
    }

    #[test]
    fn closed_lightning_is_valid(seed in seeds()) {
        let k = grid_set(&mut rng(seed), 12, 4);
        if let Some(c) = find_closed_lightning(&k).unwrap() {
            prop_assert!(c.is_valid_in(&k));
            prop_assert_eq!(max_lightning_length(&k).unwrap(), LightningLength::Infinite);
        }
    }

    #[test]
    fn longest_path_matches_brute_force(seed in seeds()) {
        let k = grid_set(&mut rng(seed), 8, 4);
        let brute = brute_force_longest(&k, 2 * k.len() + 2);
        match max_lightning_length(&k).unwrap() {
            LightningLength::Finite(l) => prop_assert_eq!(brute, Some(l)),
            LightningLength::Infinite => prop_assert_eq!(brute, None),
        }
    }

    #[test]
    fn sandwich(seed in seeds()) {
        let k = acyclic_set(&mut rng(seed), 14, 7);
        let n = e_iterate(&k).unwrap().index.unwrap();
        let LightningLength::Finite(l) = max_lightning_length(&k).unwrap() else { panic!() };
        prop_assert!(2 * n - 1 <= l && l <= 2 * n);
    }

    #[test]
    fn point_order_is_canonical(seed in seeds()) {
        let mut r = rng(seed);
        let k = grid_set(&mut r, 12, 6);
        let mut pts = k.points().to_vec();
        pts.shuffle(&mut r);
        prop_assert_eq!(&PointSet::new(2, pts).unwrap(), &k);
        prop_assert_eq!(&basicity::parse_point_set(&k.to_text()).unwrap(), &k);
    }

    #[test]
    fn exact_decomposition_is_sound(seed in seeds()) {
        let mut r = rng(seed);
        let k = grid_set(&mut r, 10, 4);
        let f = random_valuation(&mut r, k.len());
        match decompose_exact(&k, &f).unwrap() {
            ExactOutcome::Decomposed(d) => {
                prop_assert!(first_mismatch(&d, &k, &f).unwrap().is_none());
            }
            ExactOutcome::Infeasible(c) => {
                prop_assert!(c.is_valid_for(&k, &f));
                prop_assert!(!is_basic(&k).basic);
            }
        }
        // the planar route and the elimination route agree on feasibility
        let elim = decompose_by_elimination(&k, &f).unwrap();
        prop_assert_eq!(
            elim.decomposition().is_some(),
            decompose_exact(&k, &f).unwrap().decomposition().is_some()
        );
    }

    #[test]
    fn decomposition_is_linear(seed in seeds()) {
        let mut r = rng(seed);
        let k = acyclic_set(&mut r, 10, 6);
        let (f1, f2) = (random_valuation(&mut r, k.len()), random_valuation(&mut r, k.len()));
        let (a, b) = (random_rational(&mut r), random_rational(&mut r));
        let d1 = decompose_exact(&k, &f1).unwrap().decomposition().unwrap().clone();
        let d2 = decompose_exact(&k, &f2).unwrap().decomposition().unwrap().clone();
        let combo = d1.combine(&a, &d2, &b);
        let f = Valuation::new(
            f1.values().iter().zip(f2.values()).map(|(x, y)| &a * x + &b * y).collect(),
        );
        prop_assert!(first_mismatch(&combo, &k, &f).unwrap().is_none());
    }

    #[test]
    fn gauge_is_deterministic(seed in seeds()) {
        let mut r = rng(seed);
        let k = acyclic_set(&mut r, 10, 6);
        let f = random_valuation(&mut r, k.len());
        let d = decompose_exact(&k, &f).unwrap();
        prop_assert_eq!(&d, &decompose_exact(&k, &f).unwrap());
        let d = d.decomposition().unwrap();
        for class in &d.gauge {
            let p = k.get(class.root);
            prop_assert_eq!(&d.per_axis[0].table[p.x()], &f[class.root]);
            prop_assert_eq!(&d.per_axis[1].table[p.y()], &int(0));
        }
    }

    #[test]
    fn three_dim_e_iteration_is_sufficient(seed in seeds()) {
        let mut r = rng(seed);
        let k = random_set_3d(&mut r, 10, 3);
        if e_iterate(&k).unwrap().index.is_some() {
            prop_assert!(is_basic(&k).basic);
        }
        let v = is_basic(&k);
        let f = random_valuation(&mut r, k.len());
        let out = decompose_exact(&k, &f).unwrap();
        if v.basic {
            prop_assert!(first_mismatch(out.decomposition().unwrap(), &k, &f).unwrap().is_none());
        } else {
            let Some(BasicWitness::Dependency(w)) = v.witness else { panic!() };
            prop_assert!(basicity::decompose::is_dependency(&k, &w));
            if let Some(c) = out.certificate() {
                prop_assert!(c.is_valid_for(&k, &f));
            }
        }
    }

    #[test]
    fn certificates_verify(seed in seeds()) {
        let mut r = rng(seed);
        let k = if r.gen_bool(0.5) { grid_set(&mut r, 10, 4) } else { random_set_3d(&mut r, 9, 3) };
        let v = is_basic(&k);
        let cert = match &v.witness {
            Some(w) => PointsCertificate::from_witness(w),
            None => basic_certificate(&k).unwrap(),
        };
        prop_assert_eq!(cert.is_positive(), v.basic);
        let back = PointsCertificate::parse(&cert.to_text(), k.dim()).unwrap();
        prop_assert!(verify_points(&k, None, &back).is_ok());
    }

    #[test]
    fn suppression_keeps_flags(seed in seeds()) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, 16);
        // subdivide a few edges
        let mut edges: Vec<(String, String)> = t
            .edges()
            .iter()
            .map(|&(a, b)| (t.label(a).to_string(), t.label(b).to_string()))
            .collect();
        for i in 0..r.gen_range(0..4) {
            let j = r.gen_range(0..edges.len());
            let (a, b) = edges.swap_remove(j);
            let mid = format!("s{i}");
            edges.push((a, mid.clone()));
            edges.push((mid, b));
        }
        let g = Multigraph::from_edges(&[] as &[String], &edges);
        let (x, y) = (forbidden_check(&g), forbidden_check(&suppress_degree2(&g)));
        prop_assert_eq!(
            (x.has_cycle(), x.has_t5(), x.has_c()),
            (y.has_cycle(), y.has_t5(), y.has_c())
        );
        prop_assert_eq!(x.any(), forbidden_check(&t).any());
    }

    #[test]
    fn book_is_monotone(seed in seeds(), n in 0usize..8) {
        let t = random_tree(&mut rng(seed), 14);
        if embeds_in_book(&t, n) {
            prop_assert!(embeds_in_book(&t, n + 1));
        }
    }

    #[test]
    fn plane_criterion_bounds_degree(seed in seeds()) {
        let t = random_tree(&mut rng(seed), 20);
        if is_basically_embeddable(&t) {
            prop_assert!(t.is_forest());
            prop_assert!(t.degrees().into_iter().all(|d| d <= 4));
        }
    }
}

#[test]
fn forbidden_flags_match_containment() {
    let t5 = named::star(5);
    let c = named::branched_cross();
    for n in 1..=11 {
        for t in free_trees(n) {
            let rep = forbidden_check(&t);
            assert_eq!(
                rep.has_t5(),
                embed_into_tree(&t5, &t).is_some(),
                "{}",
                t.to_text()
            );
            assert_eq!(
                rep.has_c(),
                embed_into_tree(&c, &t).is_some(),
                "{}",
                t.to_text()
            );
        }
    }
}

#[test]
fn disconnected_forests_by_component() {
    let g = Multigraph::parse("a b\nb c\nb d\nx y\nz").unwrap();
    assert!(is_basically_embeddable(&g));
    let w = basicity::embed_into_rn(&g, 2).unwrap();
    basicity::graphs::checker::check_embedding(
        &g,
        &w,
        &basicity::graphs::checker::RnLabels { n: 2 },
    )
    .unwrap();
    let mut bad = g.to_text();
    bad += &named::star(5).to_text();
    assert!(!is_basically_embeddable(&Multigraph::parse(&bad).unwrap()));
}

#[test]
fn collapse_injective_off_segment_on_acyclic_sets() {
    use basicity::lightning::Strip;
    let mut r = rng(77);
    let mut checked = 0;
    while checked < 300 {
        let base = acyclic_set(&mut r, 10, 8);
        let (a, b, c) = (
            r.gen_range(0..4i64),
            r.gen_range(4..8i64),
            r.gen_range(0..8i64),
        );
        let mut pts = base.points().to_vec();
        pts.extend((a..=b).map(|x| Point::from_ints(&[x, c])));
        let k = PointSet::from_points_dedup(2, pts).unwrap();
        if find_closed_lightning(&k).unwrap().is_some() {
            continue;
        }
        let strip = Strip::new(int(a), int(b), int(c)).unwrap();
        assert!(strip.collision_off_segment(&k).is_none());
        checked += 1;
    }
}

#[test]
fn rn_containment_is_monotone() {
    let k = build_rn(2);
    let hits: BTreeMap<usize, bool> = (1..=4)
        .map(|n| (n, basicity::embed_into_rn(&k, n).is_some()))
        .collect();
    assert_eq!(
        hits.values().copied().collect::<Vec<_>>(),
        vec![false, true, true, true]
    );
}
