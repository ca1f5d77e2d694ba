mod common;

use mrplan::graph::io::{map_from_json, map_to_json, read_plan, scenario_from_json, scenario_to_json, write_plan};
use mrplan::graph::{
    composite_distance, dijkstra_distances, validate_move, validate_plan, Assignment, Configuration,
    MoveViolation, Plan, Point, Roadmap,
};
use mrplan::mapgen::{self, Connectivity, GridSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid8(n: usize) -> Roadmap<f64> {
    mapgen::grid(&GridSpec::new(n, Connectivity::Eight))
}

fn configs(n_vertices: usize, k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n_vertices).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| v[..k].to_vec())
}

proptest! {
    #[test]
    fn composite_distance_is_a_metric(
        a in configs(25, 4),
        b in configs(25, 4),
        c in configs(25, 4),
    ) {
        let map = grid8(5);
        let d = |x: &[usize], y: &[usize]| composite_distance(x, y, &map).unwrap();
        prop_assert_eq!(d(&a, &a), 0.0);
        prop_assert!(d(&a, &b) >= 0.0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
    }

    #[test]
    fn dijkstra_matches_bellman_ford(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = common::random_map(&mut rng, 6);
        let source = seed as usize % map.vertex_count();
        let dist = dijkstra_distances(source, &map).unwrap();
        let reference = common::bellman_ford(&map, source);
        for (d, r) in dist.iter().zip(&reference) {
            prop_assert!((d - r).abs() < 1e-9);
        }
        for &(u, v) in map.edges() {
            let w = map.euclidean_distance(u, v).unwrap();
            prop_assert!(dist[v] <= dist[u] + w + 1e-9);
            prop_assert!(dist[u] <= dist[v] + w + 1e-9);
        }
    }

    #[test]
    fn swap_detection_is_symmetric(before in configs(16, 3), pick in 0usize..3, nbr in 0usize..8) {
        let map = grid8(4);
        // move agent `pick` onto a neighbour; if another agent sits there, move it back
        let here = before[pick];
        let nbrs = map.neighbors(here);
        let target = nbrs[nbr % nbrs.len()];
        let mut after = before.clone();
        after[pick] = target;
        if let Some(j) = before.iter().position(|&v| v == target) {
            after[j] = here;
            let forward = validate_move(&before, &after, &map);
            let backward = validate_move(&after, &before, &map);
            let is_swap = |r: &Result<(), MoveViolation>| matches!(r, Err(MoveViolation::Swap { .. }));
            prop_assert!(is_swap(&forward));
            prop_assert!(is_swap(&backward));
        } else {
            prop_assert_eq!(validate_move(&before, &after, &map), Ok(()));
            prop_assert_eq!(validate_move(&after, &before, &map), Ok(()));
        }
    }

    #[test]
    fn reversed_plans_stay_valid(seed in 0u64..10_000, k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = grid8(5);
        let assignment = mapgen::random_assignment(&map, k, &mut rng).unwrap();
        let sol = mrplan::carp::plan_all(
            &assignment,
            &map,
            &mrplan::carp::CarpParams { max_shuffles: 10, start_time: 0, seed },
        );
        if let Ok(sol) = sol {
            prop_assert_eq!(validate_plan(&sol.plan, &assignment, &map), Ok(()));
            prop_assert_eq!(
                validate_plan(&sol.plan.reversed(), &assignment.reversed(), &map),
                Ok(())
            );
        }
    }

    #[test]
    fn plan_csv_round_trip(steps in proptest::collection::vec(configs(30, 3), 1..12)) {
        let plan = Plan::new(steps.into_iter().map(|c| Configuration::new(c).unwrap()).collect());
        let mut buf = Vec::new();
        write_plan(&plan, &mut buf).unwrap();
        prop_assert_eq!(read_plan(buf.as_slice()).unwrap(), plan);
    }

    #[test]
    fn map_json_round_trip(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = common::random_map(&mut rng, 5);
        let back: Roadmap<f64> = map_from_json(&map_to_json(&map)).unwrap();
        prop_assert_eq!(back.points(), map.points());
        prop_assert_eq!(back.edges(), map.edges());
    }
}

#[test]
fn scenario_round_trip() {
    let a = Assignment::new(vec![3, 0, 7], vec![1, 7, 0]).unwrap();
    assert_eq!(scenario_from_json(&scenario_to_json(&a)).unwrap(), a);
}

#[test]
fn plan_validation_reports_first_violation() {
    let map = Roadmap::new(
        (0..3).map(|i| Point::new(i as f64, 0.0)).collect(),
        [(0, 1), (1, 2)],
    )
    .unwrap();
    let a = Assignment::new(vec![0, 2], vec![1, 2]).unwrap();
    let c = |v: Vec<usize>| Configuration::new(v).unwrap();
    let good = Plan::new(vec![c(vec![0, 2]), c(vec![1, 2])]);
    assert_eq!(validate_plan(&good, &a, &map), Ok(()));
    let jump = Plan::new(vec![c(vec![0, 2]), c(vec![2, 1]), c(vec![1, 2])]);
    assert!(validate_plan(&jump, &a, &map).is_err());
    // following along the corridor is fine
    let follow = Assignment::new(vec![1, 0], vec![2, 1]).unwrap();
    let plan = Plan::new(vec![c(vec![1, 0]), c(vec![2, 1])]);
    assert_eq!(validate_plan(&plan, &follow, &map), Ok(()));
}

#[test]
fn grid_counts_match_closed_forms() {
    for n in [2usize, 5, 20] {
        let full = grid8(n);
        assert_eq!(full.edge_count(), 2 * n * (n - 1) + 2 * (n - 1) * (n - 1));
        let four: Roadmap<f64> = mapgen::grid(&GridSpec::new(n, Connectivity::Four));
        assert_eq!(four.edge_count(), 2 * n * (n - 1));
    }
}
