mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use vortex_core::complex::{check_cw_conditions, BridgeEdge};
use vortex_core::geometry::Coord;
use vortex_core::svg::render_svg;
use vortex_core::{build_vortex, Quantum};

fn bfs_distances(n: usize, edges: &[(usize, usize)], source: usize) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[test]
fn figure_a_builds() {
    let v = build_vortex(&fig1a()).unwrap();
    assert_eq!(v.len(), 20);
    assert_eq!(v.cycles().len(), 2);
    assert_eq!(v.bridges().len(), 1);
    assert_eq!(v.union_edges().len(), 21);
    assert!(v.check_cw_conditions().passed());
    assert!(!v.has_hole());
    let path = v.path_between(5, 15).unwrap();
    assert_eq!(path, vec![5, 15]);
}

#[test]
fn figure_b_builds() {
    let v = build_vortex(&fig1b()).unwrap();
    assert_eq!(v.len(), 17);
    assert_eq!(v.cycles().len(), 2);
    assert!(v.bridges().is_empty());
    assert_eq!(v.union_edges().len(), 20);
    assert!(v.check_cw_conditions().passed());
}

#[test]
fn figure_a_without_bridge_is_disconnected() {
    let mut draft = fig1a();
    draft.bridges.clear();
    assert_eq!(build_vortex(&draft).unwrap_err().tag(), "DISCONNECTED");
}

#[test]
fn figure_a_with_protruding_inner_vertex_is_not_nested() {
    let mut draft = fig1a();
    let q = Quantum::default();
    draft.vertices[13].position = Coord::new(q.parse("3.5").unwrap(), q.parse("0.5").unwrap());
    assert_eq!(build_vortex(&draft).unwrap_err().tag(), "NOT_NESTED");
}

#[test]
fn figure_a_with_repeated_ring_vertex_is_not_simple() {
    let mut draft = fig1a();
    let mut ring = draft.cycles[1].ring().to_vec();
    ring[3] = ring[1];
    draft.cycles[1] = vortex_core::complex::Cycle::new(ring);
    assert_eq!(build_vortex(&draft).unwrap_err().tag(), "NOT_SIMPLE");
}

#[test]
fn figure_a_with_bridge_inside_one_cycle_is_invalid() {
    let mut draft = fig1a();
    draft.bridges.push(BridgeEdge::new(0, 1));
    assert_eq!(build_vortex(&draft).unwrap_err().tag(), "INVALID_BRIDGE");
}

#[test]
fn figure_a_with_crossing_bridge_fails_cw() {
    let mut draft = fig1a();
    draft.bridges.push(BridgeEdge::new(0, 17));
    let report = check_cw_conditions(&draft);
    assert!(!report.passed());
    assert_eq!(build_vortex(&draft).unwrap_err().tag(), "CW_VIOLATION");
}

#[test]
fn figure_svgs_are_deterministic() {
    let q = Quantum::default();
    for draft in [fig1a(), fig1b()] {
        let v = build_vortex(&draft).unwrap();
        let first = render_svg(&v, q);
        assert_eq!(first, render_svg(&build_vortex(&draft).unwrap(), q));
        assert_eq!(first.matches("<circle").count(), v.len());
        assert_eq!(first.matches("<polygon").count(), 2);
        assert_eq!(first.matches("<line").count(), v.bridges().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_vortexes_are_connected(seed in any::<u64>(), k in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vortex(&mut rng, k, (3, 9));
        let edges = v.union_edges();
        let ring_total: usize = v.cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(edges.len(), ring_total + v.bridges().len());
        let oracle = bfs_distances(v.len(), &edges, 0);
        prop_assert!(oracle.iter().all(Option::is_some));
        prop_assert_eq!(v.distances_from(0), oracle);
        prop_assert!(v.check_cw_conditions().passed());
        let space = v.to_space(None).unwrap();
        for (a, b) in edges {
            prop_assert!(space.near_points(a, b));
        }
    }

    #[test]
    fn rebuilding_a_vortex_is_stable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vortex(&mut rng, 3, (3, 7));
        let again = build_vortex(&v.draft()).unwrap();
        prop_assert_eq!(again.draft(), v.draft());
    }

    #[test]
    fn paths_follow_union_edges(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vortex(&mut rng, 2, (3, 8));
        let last = v.vertex_at(v.len() - 1);
        let path = v.path_between(v.vertex_at(0), last).unwrap();
        let edges = v.union_edges();
        let oracle = bfs_distances(v.len(), &edges, 0);
        prop_assert_eq!(path.len() - 1, oracle[v.len() - 1].unwrap());
        for w in path.windows(2) {
            let (a, b) = (v.point_of(w[0]).unwrap(), v.point_of(w[1]).unwrap());
            prop_assert!(edges.contains(&(a.min(b), a.max(b))));
        }
    }
}
