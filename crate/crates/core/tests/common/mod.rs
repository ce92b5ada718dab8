#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use vortex_core::complex::{BridgeEdge, ComplexDraft, Cycle, Vertex};
use vortex_core::geometry::Coord;
use vortex_core::{build_vortex, PlanarVortex, ProbeMap, ProximitySpace, Quantum, Subset};

pub fn s(points: &[usize]) -> Subset {
    Subset::from_points(points.iter().copied())
}

fn coord(x: &str, y: &str) -> Coord {
    let q = Quantum::default();
    Coord::new(q.parse(x).unwrap(), q.parse(y).unwrap())
}

pub const OUTER: [(&str, &str); 10] = [
    ("0", "0"),
    ("1", "0.5"),
    ("2", "0"),
    ("3", "0.5"),
    ("3", "1.5"),
    ("2", "2"),
    ("1", "1.5"),
    ("0", "2"),
    ("-1", "1.5"),
    ("-1", "0.5"),
];

const INNER_A: [(&str, &str); 10] = [
    ("0", "0.25"),
    ("1", "0.75"),
    ("2", "0.25"),
    ("2.5", "0.5"),
    ("2.5", "0.75"),
    ("2", "1.35"),
    ("1", "1.25"),
    ("0", "1.5"),
    ("-0.55", "1.25"),
    ("-0.55", "0.75"),
];

/// Two nested 10-cycles joined by one bridge, ids 0..20.
pub fn fig1a() -> ComplexDraft {
    let vertices = OUTER
        .iter()
        .chain(INNER_A.iter())
        .enumerate()
        .map(|(i, (x, y))| Vertex {
            id: i as u32,
            position: coord(x, y),
        })
        .collect();
    ComplexDraft {
        vertices,
        cycles: vec![
            Cycle::new((0..10).collect()),
            Cycle::new((10..20).collect()),
        ],
        bridges: vec![BridgeEdge::new(5, 15)],
    }
}

/// Two 10-cycles sharing vertices 1, 5 and 8; 17 vertices, no bridges.
pub fn fig1b() -> ComplexDraft {
    let inner_only = [
        (10, "0", "0.25"),
        (11, "2", "0.25"),
        (12, "2.5", "0.5"),
        (13, "2.5", "0.75"),
        (14, "1", "1.25"),
        (15, "0", "1.5"),
        (16, "-0.55", "1.25"),
    ];
    let mut vertices: Vec<Vertex> = OUTER
        .iter()
        .enumerate()
        .map(|(i, (x, y))| Vertex {
            id: i as u32,
            position: coord(x, y),
        })
        .collect();
    vertices.extend(inner_only.iter().map(|&(id, x, y)| Vertex {
        id,
        position: coord(x, y),
    }));
    ComplexDraft {
        vertices,
        cycles: vec![
            Cycle::new((0..10).collect()),
            Cycle::new(vec![10, 1, 11, 12, 13, 5, 14, 15, 16, 8]),
        ],
        bridges: vec![],
    }
}

pub fn random_space(rng: &mut impl Rng, n: usize, p: f64) -> ProximitySpace {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    ProximitySpace::new(n, edges).unwrap()
}

pub fn random_labels(rng: &mut impl Rng, n: usize, classes: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..classes)).collect()
}

pub fn random_probed(rng: &mut impl Rng, n: usize) -> ProximitySpace {
    let labels = random_labels(rng, n, (n as i64).max(2));
    random_space(rng, n, 0.4)
        .with_probe(ProbeMap::from_labels(&labels))
        .unwrap()
}

pub fn random_map(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Concentric regular polygons with bridges between consecutive cycles.
/// Radii shrink fast enough that every polygon lies inside the incircle of
/// the one around it.
pub fn random_vortex(rng: &mut impl Rng, cycles: usize, lengths: (usize, usize)) -> PlanarVortex {
    const RADII: [f64; 4] = [100_000.0, 40_000.0, 15_000.0, 6_000.0];
    loop {
        let mut vertices = Vec::new();
        let mut rings = Vec::new();
        let mut angles = Vec::new();
        let mut next_id = 0u32;
        for &radius in RADII.iter().take(cycles) {
            let len = rng.gen_range(lengths.0..=lengths.1);
            let offset = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut ring = Vec::new();
            let mut ring_angles = Vec::new();
            for k in 0..len {
                let t = offset + std::f64::consts::TAU * k as f64 / len as f64;
                vertices.push(Vertex {
                    id: next_id,
                    position: Coord::new(
                        (radius * t.cos()).round() as i64,
                        (radius * t.sin()).round() as i64,
                    ),
                });
                ring.push(next_id);
                ring_angles.push(t);
                next_id += 1;
            }
            rings.push(ring);
            angles.push(ring_angles);
        }
        let mut bridges = Vec::new();
        for c in 1..cycles {
            let k = rng.gen_range(0..rings[c].len());
            let t = angles[c][k];
            let closest = (0..rings[c - 1].len())
                .min_by(|&i, &j| {
                    let di = angle_gap(angles[c - 1][i], t);
                    let dj = angle_gap(angles[c - 1][j], t);
                    di.partial_cmp(&dj).unwrap()
                })
                .unwrap();
            bridges.push(BridgeEdge::new(rings[c][k], rings[c - 1][closest]));
        }
        let draft = ComplexDraft {
            vertices,
            cycles: rings.into_iter().map(Cycle::new).collect(),
            bridges,
        };
        if let Ok(v) = build_vortex(&draft) {
            return v;
        }
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Two concentric regular `k`-gons joined by a radial bridge at every vertex.
/// Outer ids are `0..k`, inner ids `k..2k`; rotating both rings is an automorphism.
pub fn radial_polygons(k: usize) -> PlanarVortex {
    let mut vertices = Vec::new();
    for (ring, radius) in [(0u32, 100_000.0), (1, 40_000.0)] {
        for i in 0..k {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            vertices.push(Vertex {
                id: ring * k as u32 + i as u32,
                position: Coord::new(
                    (radius * t.cos()).round() as i64,
                    (radius * t.sin()).round() as i64,
                ),
            });
        }
    }
    let k32 = k as u32;
    let draft = ComplexDraft {
        vertices,
        cycles: vec![
            Cycle::new((0..k32).collect()),
            Cycle::new((k32..2 * k32).collect()),
        ],
        bridges: (0..k32).map(|i| BridgeEdge::new(i, i + k32)).collect(),
    };
    build_vortex(&draft).expect("radial polygons are a vortex")
}

/// Point table rotating both rings of [`radial_polygons`] by one step.
pub fn rotation_table(v: &PlanarVortex, k: usize) -> Vec<usize> {
    (0..v.len())
        .map(|p| {
            let id = v.vertex_at(p) as usize;
            let (ring, i) = (id / k, id % k);
            v.point_of((ring * k + (i + 1) % k) as u32).unwrap()
        })
        .collect()
}

/// Sends each point one step along a shortest path toward `sink`, choosing
/// the neighbour with the smallest point index among those one step closer.
pub fn step_to_sink(v: &PlanarVortex, sink: usize) -> Vec<usize> {
    let dist = v.distances_from(sink);
    let edges = v.union_edges();
    (0..v.len())
        .map(|p| {
            if p == sink {
                return p;
            }
            let d = dist[p].unwrap();
            edges
                .iter()
                .filter_map(|&(a, b)| match (a == p, b == p) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .filter(|&w| dist[w] == Some(d - 1))
                .min()
                .unwrap()
        })
        .collect()
}
