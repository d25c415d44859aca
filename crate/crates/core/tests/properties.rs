//! Property tests for the invariants of each module.

use diskscale_core::gadgets::heavy::heavy_p3_instance;
use diskscale_core::gadgets::Role;
use diskscale_core::geom::{
    build_disk_graph, build_unit_disk_graph, dist, int, rat, to_f64, verify_solution, GraphClass, Instance, Point,
    RadiusAssignment, Rational,
};
use diskscale_core::graph::{
    components, find_induced_p3, max_bipartite_matching, maximal_p3_packing, recognize, AdjacencyGraph,
};
use diskscale_core::io::{format_rational, parse_rational, InstanceFile, SolutionFile};
use diskscale_core::lp::{ConscalContext, DEFAULT_LP_SEED};
use diskscale_core::oracle::{brute_force_solve, OracleBudget};
use diskscale_core::solver::{solve_complete, solve_xp};
use proptest::prelude::*;

fn points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0i64..16, 0i64..16), 1..=max)
        .prop_map(|c| c.into_iter().enumerate().map(|(i, (x, y))| Point::new(i, rat(x, 2), rat(y, 2))).collect())
}

fn interval() -> impl Strategy<Value = (Rational, Rational)> {
    prop::sample::select(vec![(rat(1, 2), int(1)), (int(1), int(1)), (int(1), int(2)), (rat(1, 2), rat(5, 2))])
}

fn instance(max_n: usize, max_k: usize) -> impl Strategy<Value = Instance> {
    (points(max_n), interval(), 0..=max_k).prop_map(|(p, (lo, hi), k)| Instance::new(p, lo, hi, k).unwrap())
}

fn graph(max_n: usize) -> impl Strategy<Value = AdjacencyGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, bits.iter().copied()))
    })
}

fn graph_from_bits(n: usize, mut bits: impl Iterator<Item = bool>) -> AdjacencyGraph {
    let mut g = AdjacencyGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if bits.next().unwrap_or(false) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Independent cluster test: every component is a clique.
fn components_are_cliques(g: &AdjacencyGraph) -> bool {
    components(g).iter().all(|c| c.iter().all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v))))
}

#[test]
fn cluster_recognition_exhaustive_to_seven_vertices() {
    for n in 1..=7usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0u64..1 << pairs {
            let g = graph_from_bits(n, (0..pairs).map(|b| mask >> b & 1 == 1));
            let cluster = recognize(&g, GraphClass::Cluster);
            assert_eq!(cluster, find_induced_p3(&g).is_none());
            assert_eq!(cluster, components_are_cliques(&g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn unit_graph_is_all_ones_graph(pts in points(10)) {
        prop_assert_eq!(build_unit_disk_graph(&pts), build_disk_graph(&pts, &RadiusAssignment::ones(pts.len())));
    }

    #[test]
    fn adjacency_symmetric_irreflexive(pts in points(10), radii in prop::collection::vec(0.25f64..3.0, 10)) {
        let r = RadiusAssignment::new(radii[..pts.len()].to_vec()).unwrap();
        let g = build_disk_graph(&pts, &r);
        for u in 0..pts.len() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..pts.len() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                if u != v && pts[u].x == pts[v].x && pts[u].y == pts[v].y {
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn verification_monotone_in_budget(inst in instance(8, 3), scaled in prop::collection::vec(0.5f64..=1.0, 8)) {
        let r = RadiusAssignment::new(scaled[..inst.n()].to_vec()).unwrap();
        for cls in GraphClass::ALL {
            if verify_solution(&inst, &r, cls).unwrap().accepted() {
                let more = inst.clone().with_k(inst.k() + 1);
                prop_assert!(verify_solution(&more, &r, cls).unwrap().accepted());
            }
        }
    }

    #[test]
    fn cluster_recognition_on_eight_vertices(g in graph(8)) {
        let cluster = recognize(&g, GraphClass::Cluster);
        prop_assert_eq!(cluster, find_induced_p3(&g).is_none());
        prop_assert_eq!(cluster, components_are_cliques(&g));
    }

    #[test]
    fn packing_leaves_cluster_graph(g in graph(10)) {
        let packing = maximal_p3_packing(&g);
        let rest: Vec<usize> = (0..g.n()).filter(|v| !packing.covered.contains(v)).collect();
        prop_assert!(find_induced_p3(&g.induced(&rest)).is_none());
        for &(a, b, c) in &packing.triples {
            prop_assert!(g.has_edge(a, b) && g.has_edge(b, c) && !g.has_edge(a, c));
        }
    }

    #[test]
    fn konig_equality(left in 1usize..6, right in 1usize..6, bits in prop::collection::vec(any::<bool>(), 25)) {
        let edges: Vec<(usize, usize)> =
            (0..left).flat_map(|l| (0..right).map(move |r| (l, r))).filter(|&(l, r)| bits[l * 5 + r]).collect();
        let m = max_bipartite_matching(left, right, &edges);
        prop_assert_eq!(m.cover_left.len() + m.cover_right.len(), m.size());
        for &(l, r) in &edges {
            prop_assert!(m.cover_left.contains(&l) || m.cover_right.contains(&r));
        }
        // brute-force minimum vertex cover
        let total = left + right;
        let best = (0u32..1 << total)
            .filter(|s| edges.iter().all(|&(l, r)| s >> l & 1 == 1 || s >> (left + r) & 1 == 1))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap();
        prop_assert_eq!(m.size(), best);
    }

    #[test]
    fn conscal_realizes_target_with_slack(
        pts in points(7),
        radii in prop::collection::vec(prop::sample::select(vec![0.5, 1.0, 1.5, 2.0]), 7),
    ) {
        let n = pts.len();
        let r = RadiusAssignment::new(radii[..n].to_vec()).unwrap();
        let target = build_disk_graph(&pts, &r);
        let scaled = r.scaled();
        let ctx = ConscalContext::new(&pts);
        let (lo, hi) = (rat(1, 2), int(2));
        if let Some(out) = ctx.solve(&scaled, &target, &lo, &hi, DEFAULT_LP_SEED).unwrap() {
            prop_assert_eq!(&build_disk_graph(&pts, &out), &target);
            let margin = ctx.eps_min() / 2.0;
            for u in 0..n {
                for v in u + 1..n {
                    if !target.has_edge(u, v) {
                        prop_assert!(out.radius(u) + out.radius(v) + margin < dist(&pts[u], &pts[v]));
                    }
                }
            }
            let wide = ctx.solve(&scaled, &target, &rat(1, 4), &int(3), DEFAULT_LP_SEED).unwrap();
            prop_assert!(wide.is_some());
        }
    }

    #[test]
    fn single_scaled_disk_matches_interval(
        pts in points(7),
        pick in 0usize..7,
        bits in prop::collection::vec(any::<bool>(), 7),
        (lo, hi) in interval(),
    ) {
        let n = pts.len();
        let p = pick % n;
        let mut target = build_unit_disk_graph(&pts);
        let (mut lower, mut upper) = (to_f64(&lo), to_f64(&hi));
        let ctx = ConscalContext::new(&pts);
        for u in (0..n).filter(|&u| u != p) {
            let d = dist(&pts[p], &pts[u]);
            target.set_edge(p, u, bits[u]);
            if bits[u] {
                lower = lower.max(d - 1.0);
            } else {
                upper = upper.min(d - 1.0 - ctx.eps_min());
            }
        }
        prop_assume!((upper - lower).abs() > 1e-6);
        let got = ctx.solve(&[p], &target, &lo, &hi, DEFAULT_LP_SEED).unwrap();
        prop_assert_eq!(got.is_some(), lower <= upper);
    }

    #[test]
    fn solver_budget_monotone(inst in instance(7, 2)) {
        for cls in GraphClass::ALL {
            if solve_xp(&inst, cls).unwrap().is_yes() {
                let more = inst.clone().with_k(inst.k() + 1);
                prop_assert!(solve_xp(&more, cls).unwrap().is_yes());
            }
        }
        if solve_complete(&inst).unwrap().is_yes() {
            prop_assert!(solve_complete(&inst.clone().with_k(inst.k() + 1)).unwrap().is_yes());
        }
    }

    #[test]
    fn connected_monotone_in_r_max(inst in instance(7, 2)) {
        if solve_xp(&inst, GraphClass::Connected).unwrap().is_yes() {
            let wider = inst.clone().with_interval(inst.r_min().clone(), inst.r_max() + int(1)).unwrap();
            prop_assert!(solve_xp(&wider, GraphClass::Connected).unwrap().is_yes());
        }
    }

    #[test]
    fn complete_agrees_with_xp(inst in instance(8, 3)) {
        prop_assert_eq!(solve_complete(&inst).unwrap().answer, solve_xp(&inst, GraphClass::Complete).unwrap().answer);
    }

    #[test]
    fn rational_text_round_trip(num in -100_000i64..100_000, den in prop::sample::select(vec![1i64, 2, 3, 4, 7, 8, 10, 25, 40, 625, 1000])) {
        let r = rat(num, den);
        let text = format_rational(&r);
        prop_assert_eq!(parse_rational(&text).unwrap(), r.clone());
        prop_assert_eq!(format_rational(&parse_rational(&text).unwrap()), text);
    }

    #[test]
    fn instance_file_round_trip(inst in instance(8, 3)) {
        let file = InstanceFile::from_instance(&inst, Some(GraphClass::Connected), None);
        let back = InstanceFile::from_json(&file.to_json()).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_instance().unwrap(), inst);
    }

    #[test]
    fn solution_file_round_trip(radii in prop::collection::vec(prop_oneof![Just(1.0f64), 0.1f64..10.0], 1..10)) {
        let r = RadiusAssignment::new(radii).unwrap();
        let file = SolutionFile::from_assignment(&r);
        let back = SolutionFile::from_json(&file.to_json()).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_assignment(Some(r.len())).unwrap(), r);
    }
}

/// A heavy P3 with θ = k + 1 can only be fixed by scaling a whole end group.
#[test]
fn heavy_p3_forces_an_end_group() {
    for delta in 1..=2 {
        for theta in 1..=3 {
            let art = heavy_p3_instance(delta, theta, &rat(7, 4), rat(1, 2), int(1)).unwrap();
            art.check_partition().unwrap();
            let out = brute_force_solve(&art.instance, GraphClass::Cluster, &OracleBudget::default()).unwrap();
            assert_eq!(out.is_yes(), delta < theta, "δ = {delta}, θ = {theta}");
            let Some(w) = out.witness else { continue };
            assert!(w.scaled_count() >= delta);
            let end_scaled = [0, 2].iter().any(|&part| {
                let g = art.group(Role::HeavyPart { part }).unwrap();
                g.ids().all(|i| w.radius(i) != 1.0)
            });
            assert!(end_scaled, "δ = {delta}, θ = {theta}: {:?}", w.radii());
        }
    }
}
