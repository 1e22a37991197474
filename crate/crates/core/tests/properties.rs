use std::cmp::Ordering;

use monopath::exactgeom::io::{parse_hrep, write_hrep};
use monopath::exactgeom::{build_edge_graph, level_profile, matrix_metrics};
use monopath::oracles::{brute_force_optimum, monotone_diameter_estimate, shortest_monotone_distance, DiameterMode};
use monopath::pivot::{
    build_x_sigma, coherent_path, coherent_sweep, distinct_value_bound, identity_weights, lex_compare, sigma_flag, Domain,
};
use monopath::rational::{dot, int, point};
use monopath::{Objective, Point, Polytope, Rational, SignedPermutation};
use proptest::prelude::*;

fn lattice_points(n: usize, k: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=k, n), 3..10)
}

/// A random `(0,k)` hull with at least two vertices.
fn lattice_polytope() -> impl Strategy<Value = (Polytope, u64)> {
    (2usize..=3, 1i64..=3)
        .prop_flat_map(|(n, k)| lattice_points(n, k).prop_map(move |pts| (pts, k)))
        .prop_filter_map("degenerate hull", |(pts, k)| {
            let pts: Vec<Point> = pts.iter().map(|p| point(p)).collect();
            let p = Polytope::from_points(&pts).ok()?;
            (p.n_vertices() >= 2).then_some((p, k as u64))
        })
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        |(levels, signs)| {
            let s = levels.iter().zip(&signs).map(|(&l, &neg)| if neg { -l } else { l }).collect();
            SignedPermutation::new(s).unwrap()
        },
    )
}

fn objective(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, n).prop_filter("zero objective", |c| c.iter().any(|&x| x != 0))
}

/// The `c`-best vertex among the `d`-minimisers.
fn coherent_start(p: &Polytope, c: &Objective, d: &[Rational]) -> usize {
    let min = p.vertices().iter().map(|v| dot(d, v)).min().unwrap();
    (0..p.n_vertices())
        .filter(|&v| dot(d, p.vertex(v)) == min)
        .max_by(|&a, &b| c.compare(p.vertex(a), p.vertex(b)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_round_trips((p, _) in lattice_polytope()) {
        let q = Polytope::from_hrep(p.hrep()).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
        let h = parse_hrep(&write_hrep(p.hrep()).unwrap()).unwrap();
        let r = Polytope::from_hrep(&h).unwrap();
        prop_assert_eq!(r.vertices(), p.vertices());
        prop_assert!(p.validate().is_ok());
    }

    #[test]
    fn graph_invariants((p, _) in lattice_polytope()) {
        let g = build_edge_graph(&p);
        prop_assert!(g.is_symmetric());
        prop_assert!(g.is_connected());
        for v in 0..p.n_vertices() {
            prop_assert!(g.degree(v) >= p.dim());
        }
        // every edge has a supporting face containing exactly its two ends
        for (u, v) in g.edges() {
            let mut common = p.tight_rows(u).clone();
            common.intersect_with(p.tight_rows(v));
            for w in (0..p.n_vertices()).filter(|&w| w != u && w != v) {
                prop_assert!(!common.is_subset(p.tight_rows(w)));
            }
        }
    }

    #[test]
    fn level_is_bounded_by_matrix_data((p, k) in lattice_polytope()) {
        let m = matrix_metrics(p.hrep());
        let level = level_profile(&p).level as i64;
        prop_assert!(level <= m.max_support as i64 * k as i64 * m.norm_inf + 1);
    }

    #[test]
    fn lex_order_matches_weights(
        s in (1usize..=4).prop_flat_map(signed_perm),
        k in 1i64..=4,
        seed in any::<u64>(),
    ) {
        let n = s.len();
        let mut r = monopath::polygen::rng::Rng::new(seed);
        let w = build_x_sigma(&s, n, k as u64, 2 * k + 1).unwrap();
        for _ in 0..50 {
            let x: Vec<i64> = (0..n).map(|_| r.range(-k, k)).collect();
            let y: Vec<i64> = (0..n).map(|_| r.range(-k, k)).collect();
            let (vx, vy) = (dot(&w, &point(&x)), dot(&w, &point(&y)));
            prop_assert_eq!(vx.cmp(&vy), lex_compare(&s, &x, &y));
        }
        prop_assert!(build_x_sigma(&s, n, k as u64, 2 * k).is_err());
    }

    #[test]
    fn coherent_path_reaches_the_optimum((p, _) in lattice_polytope(), cs in objective(3), ds in objective(3)) {
        let n = p.ambient_dim();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&cs[..n]));
        let d = Objective::from_ints(&ds[..n]);
        let start = coherent_start(&p, &c, &d.primary);
        let t = coherent_path(&p, &g, &c, &d, start).unwrap();
        let best = brute_force_optimum(p.vertices(), &c).unique().unwrap();
        prop_assert_eq!(t.end(), best);
        prop_assert!(t.is_walk(&g));
        prop_assert!(t.is_strictly_increasing(&c.values_on(&p)));
        prop_assert!(t.len() <= distinct_value_bound(&p, &Domain::full(&p), &d.primary));
        let sweep = coherent_sweep(&p, &g, &c, &d, start).unwrap();
        prop_assert!(sweep.len() <= distinct_value_bound(&p, &Domain::full(&p), &d.primary));
        prop_assert!(sweep.is_strictly_increasing(&d.values_on(&p)));
    }

    #[test]
    fn coherent_path_ignores_scaling_of_d(
        (p, _) in lattice_polytope(),
        cs in objective(3),
        ds in objective(3),
        (num, den) in (1i64..50, 1i64..50),
    ) {
        let n = p.ambient_dim();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&cs[..n]));
        let d = Objective::from_ints(&ds[..n]);
        let start = coherent_start(&p, &c, &d.primary);
        let scaled = d.scaled_primary(&Rational::new(num.into(), den.into()));
        let a = coherent_sweep(&p, &g, &c, &d, start).unwrap();
        let b = coherent_sweep(&p, &g, &c, &scaled, start).unwrap();
        prop_assert_eq!(a.vertex_indices, b.vertex_indices);
    }

    #[test]
    fn coherent_path_commutes_with_dilation(
        (p, _) in lattice_polytope(),
        cs in objective(3),
        ds in objective(3),
        t in 2i64..=4,
    ) {
        let n = p.ambient_dim();
        let tp = Polytope::from_points(
            &p.vertices().iter().map(|v| v.iter().map(|x| x * int(t)).collect()).collect::<Vec<Point>>(),
        )
        .unwrap();
        // the same perturbation on both keeps tie-breaking identical
        let c = Objective::new(point(&cs[..n])).with_perturbation(identity_weights(n, tp.genericity_alpha()));
        let d = Objective::from_ints(&ds[..n]);
        let (g, tg) = (build_edge_graph(&p), build_edge_graph(&tp));
        let a = coherent_sweep(&p, &g, &c, &d, coherent_start(&p, &c, &d.primary)).unwrap();
        let b = coherent_sweep(&tp, &tg, &c, &d, coherent_start(&tp, &c, &d.primary)).unwrap();
        let scaled: Vec<Point> = a
            .vertex_indices
            .iter()
            .map(|&v| p.vertex(v).iter().map(|x| x * int(t)).collect())
            .collect();
        let walked: Vec<Point> = b.vertex_indices.iter().map(|&v| tp.vertex(v).clone()).collect();
        prop_assert_eq!(scaled, walked);
    }

    #[test]
    fn flag_bottom_is_the_weight_maximum((p, k) in lattice_polytope(), seed in any::<u64>()) {
        let n = p.ambient_dim();
        let mut r = monopath::polygen::rng::Rng::new(seed);
        let s = monopath::polygen::random_signed_permutation(n, &mut r);
        let w = build_x_sigma(&s, n, k, 2 * k as i64 + 1).unwrap();
        let f = sigma_flag(&p, &s).unwrap();
        let o = Objective::new(w);
        prop_assert_eq!(brute_force_optimum(p.vertices(), &o).unique(), Some(f.vertex));
        for i in 1..f.faces.len() {
            prop_assert!(f.faces[i - 1].iter().all(|v| f.faces[i].contains(v)));
        }
    }

    #[test]
    fn monotone_distance_is_bounded_by_graph_diameter((p, _) in lattice_polytope(), cs in objective(3)) {
        let n = p.ambient_dim();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&cs[..n]));
        let sink = brute_force_optimum(p.vertices(), &c).unique().unwrap();
        prop_assert_eq!(shortest_monotone_distance(&p, &g, &c, sink).unwrap(), 0);
        for v in 0..p.n_vertices() {
            let d = shortest_monotone_distance(&p, &g, &c, v).unwrap();
            prop_assert!(d <= g.diameter());
            prop_assert!(d >= g.bfs(v)[sink]);
        }
    }

    #[test]
    fn sampled_diameter_grows_with_count((p, _) in lattice_polytope(), seed in any::<u64>()) {
        let g = build_edge_graph(&p);
        let est = |count| monotone_diameter_estimate(&p, &g, DiameterMode::Sampled { count, seed }).unwrap().value;
        let (a, b, c) = (est(1), est(4), est(16));
        prop_assert!(a <= b && b <= c);
        if p.ambient_dim() <= 3 && p.n_vertices() <= 12 {
            let exact = monotone_diameter_estimate(&p, &g, DiameterMode::ExactTiny).unwrap().value;
            prop_assert!(c <= exact);
        }
    }
}

#[test]
fn lex_compare_reads_the_top_level_first() {
    // level 2 sits at coordinate 0 with a minus sign
    let s = SignedPermutation::new(vec![-2, 1]).unwrap();
    assert_eq!(lex_compare(&s, &[0, 1], &[1, 0]), Ordering::Greater);
    assert_eq!(lex_compare(&s, &[1, 0], &[1, 1]), Ordering::Less);
    assert_eq!(lex_compare(&s, &[1, 0], &[1, 0]), Ordering::Equal);
}
