//! Planar vortex cell complexes.
//!
//! A vortex is a stack of filled 1-cycles, outermost first. Each adjacent pair
//! is either strictly nested (the inner closed polygon lies in the open
//! interior of the outer one) and joined by at least one bridge edge, or the
//! two cycles share a vertex and the inner one lies in the closed outer region.
//! Validation is exact: all geometry runs on grid coordinates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::feature::ProbeMap;
use crate::geometry::{
    self, all_collinear, double, doubled_midpoint, locate, on_segment, overlap_beyond_shared,
    segments_intersect, signed_area2, Coord, Location,
};
use crate::space::ProximitySpace;
use crate::subset::MAX_POINTS;

pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub id: VertexId,
    pub position: Coord,
}

/// A closed ring of vertex ids. `filled == false` marks a planar hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    ring: Vec<VertexId>,
    filled: bool,
}

impl Cycle {
    pub fn new(ring: Vec<VertexId>) -> Self {
        Cycle { ring, filled: true }
    }

    pub fn with_filled(ring: Vec<VertexId>, filled: bool) -> Self {
        Cycle { ring, filled }
    }

    pub fn ring(&self) -> &[VertexId] {
        &self.ring
    }

    pub fn filled(&self) -> bool {
        self.filled
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.ring.contains(&id)
    }

    /// Consecutive pairs, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.ring.len();
        (0..n).map(move |i| (self.ring[i], self.ring[(i + 1) % n]))
    }

    fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.ring.iter().copied().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BridgeEdge {
    pub a: VertexId,
    pub b: VertexId,
}

impl BridgeEdge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        BridgeEdge { a, b }
    }
}

/// Unvalidated input to [`build_vortex`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplexDraft {
    pub vertices: Vec<Vertex>,
    pub cycles: Vec<Cycle>,
    pub bridges: Vec<BridgeEdge>,
}

/// Why a draft is not a planar vortex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VortexError {
    #[error("cycle {cycle} is not a simple ring")]
    NotSimple { cycle: usize },

    #[error("cycle {cycle} has no interior")]
    Degenerate { cycle: usize },

    #[error("cycle {inner} is not nested inside cycle {outer}")]
    NotNested { outer: usize, inner: usize },

    #[error("complex is disconnected: {0}")]
    Disconnected(String),

    #[error("a vortex needs at least 2 cycles, got {0}")]
    TooFewCycles(usize),

    #[error("vertex id {0} is declared twice")]
    DuplicateVertex(VertexId),

    #[error("vertices {0} and {1} share a position")]
    DuplicatePosition(VertexId, VertexId),

    #[error("{context} references undeclared vertex {id}")]
    UnknownVertex { id: VertexId, context: String },

    #[error("bridge {a}-{b} is invalid: {reason}")]
    InvalidBridge {
        a: VertexId,
        b: VertexId,
        reason: &'static str,
    },

    #[error("cycle {0} is unfilled but only the innermost cycle may carry a hole")]
    HoleNotInnermost(usize),

    #[error("CW condition violated: {0}")]
    CwViolation(String),
}

impl VortexError {
    /// Stable machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            VortexError::NotSimple { .. } => "NOT_SIMPLE",
            VortexError::Degenerate { .. } => "DEGENERATE",
            VortexError::NotNested { .. } => "NOT_NESTED",
            VortexError::Disconnected(_) => "DISCONNECTED",
            VortexError::TooFewCycles(_) => "TOO_FEW_CYCLES",
            VortexError::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            VortexError::DuplicatePosition(..) => "DUPLICATE_POSITION",
            VortexError::UnknownVertex { .. } => "UNKNOWN_VERTEX",
            VortexError::InvalidBridge { .. } => "INVALID_BRIDGE",
            VortexError::HoleNotInnermost(_) => "HOLE_NOT_INNERMOST",
            VortexError::CwViolation(_) => "CW_VIOLATION",
        }
    }
}

/// A validated planar vortex.
///
/// Vertices are sorted by id; the point index of a vertex in
/// [`PlanarVortex::to_space`] is its position in that order. Cycles are stored
/// counterclockwise starting from their smallest vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarVortex {
    vertices: Vec<Vertex>,
    cycles: Vec<Cycle>,
    bridges: Vec<BridgeEdge>,
    index: BTreeMap<VertexId, usize>,
}

pub fn build_vortex(draft: &ComplexDraft) -> Result<PlanarVortex, VortexError> {
    PlanarVortex::build(draft)
}

impl PlanarVortex {
    pub fn build(draft: &ComplexDraft) -> Result<PlanarVortex, VortexError> {
        let mut vertices = draft.vertices.clone();
        vertices.sort_by_key(|v| v.id);
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(VortexError::DuplicateVertex(w[0].id));
            }
        }
        let mut by_pos: BTreeMap<Coord, VertexId> = BTreeMap::new();
        for v in &vertices {
            if let Some(&other) = by_pos.get(&v.position) {
                return Err(VortexError::DuplicatePosition(other, v.id));
            }
            by_pos.insert(v.position, v.id);
        }
        let index: BTreeMap<VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
        let pos = |id: VertexId| vertices[index[&id]].position;

        if draft.cycles.len() < 2 {
            return Err(VortexError::TooFewCycles(draft.cycles.len()));
        }

        let mut cycles = Vec::with_capacity(draft.cycles.len());
        for (ci, cycle) in draft.cycles.iter().enumerate() {
            for &id in &cycle.ring {
                if !index.contains_key(&id) {
                    return Err(VortexError::UnknownVertex {
                        id,
                        context: format!("cycle {ci}"),
                    });
                }
            }
            if cycle.ring.len() < 3 {
                return Err(VortexError::Degenerate { cycle: ci });
            }
            if cycle.vertex_set().len() != cycle.ring.len() {
                return Err(VortexError::NotSimple { cycle: ci });
            }
            let coords: Vec<Coord> = cycle.ring.iter().map(|&id| pos(id)).collect();
            if all_collinear(&coords) {
                return Err(VortexError::Degenerate { cycle: ci });
            }
            if !geometry::is_simple(&coords) {
                return Err(VortexError::NotSimple { cycle: ci });
            }
            if !cycle.filled && ci + 1 != draft.cycles.len() {
                return Err(VortexError::HoleNotInnermost(ci));
            }
            cycles.push(canonical_cycle(cycle, &coords));
        }

        let sets: Vec<BTreeSet<VertexId>> = cycles.iter().map(Cycle::vertex_set).collect();
        for bridge in &draft.bridges {
            for id in [bridge.a, bridge.b] {
                if !index.contains_key(&id) {
                    return Err(VortexError::UnknownVertex {
                        id,
                        context: format!("bridge {}-{}", bridge.a, bridge.b),
                    });
                }
            }
            if !bridge_spans_disjoint_cycles(&sets, bridge) {
                return Err(VortexError::InvalidBridge {
                    a: bridge.a,
                    b: bridge.b,
                    reason: "endpoints must lie on two distinct non-intersecting cycles",
                });
            }
        }

        for outer in 0..cycles.len() - 1 {
            let inner = outer + 1;
            let outer_ring: Vec<Coord> = cycles[outer].ring.iter().map(|&id| pos(id)).collect();
            let inner_ring: Vec<Coord> = cycles[inner].ring.iter().map(|&id| pos(id)).collect();
            if !sets[outer].is_disjoint(&sets[inner]) {
                if !closed_containment(&outer_ring, &inner_ring) {
                    return Err(VortexError::NotNested { outer, inner });
                }
                continue;
            }
            if !is_nested(&outer_ring, &inner_ring)? {
                return Err(VortexError::NotNested { outer, inner });
            }
            let bridged = draft.bridges.iter().any(|b| {
                (sets[outer].contains(&b.a) && sets[inner].contains(&b.b))
                    || (sets[outer].contains(&b.b) && sets[inner].contains(&b.a))
            });
            if !bridged {
                return Err(VortexError::Disconnected(format!(
                    "no bridge joins adjacent cycles {outer} and {inner}"
                )));
            }
        }

        let vortex = PlanarVortex {
            vertices,
            cycles,
            bridges: draft.bridges.clone(),
            index,
        };
        let cw = vortex.check_cw_conditions();
        if let Some(first) = cw.first_violation() {
            return Err(VortexError::CwViolation(first));
        }
        if let Some(isolated) = vortex.unreachable_from_first() {
            return Err(VortexError::Disconnected(format!(
                "vertex {isolated} is not path-connected to vertex {}",
                vortex.vertices[0].id
            )));
        }
        Ok(vortex)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn bridges(&self) -> &[BridgeEdge] {
        &self.bridges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Point index of a vertex id.
    pub fn point_of(&self, id: VertexId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn vertex_at(&self, point: usize) -> VertexId {
        self.vertices[point].id
    }

    pub fn position(&self, id: VertexId) -> Option<Coord> {
        self.point_of(id).map(|i| self.vertices[i].position)
    }

    pub fn ring_coords(&self, cycle: usize) -> Vec<Coord> {
        self.cycles[cycle]
            .ring
            .iter()
            .map(|&id| self.vertices[self.index[&id]].position)
            .collect()
    }

    /// True when the innermost cycle is marked unfilled.
    pub fn has_hole(&self) -> bool {
        self.cycles.last().is_some_and(|c| !c.filled)
    }

    pub fn draft(&self) -> ComplexDraft {
        ComplexDraft {
            vertices: self.vertices.clone(),
            cycles: self.cycles.clone(),
            bridges: self.bridges.clone(),
        }
    }

    /// Cycle edges and bridges as deduplicated point-index pairs `a < b`.
    pub fn union_edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        let edges = self
            .cycles
            .iter()
            .flat_map(|c| c.edges())
            .chain(self.bridges.iter().map(|b| (b.a, b.b)));
        for (a, b) in edges {
            let (pa, pb) = (self.index[&a], self.index[&b]);
            set.insert((pa.min(pb), pa.max(pb)));
        }
        set.into_iter().collect()
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.union_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Shortest vertex path in the union graph (cycle edges plus bridges).
    pub fn path_between(&self, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
        let (s, t) = (self.point_of(from)?, self.point_of(to)?);
        let adj = self.adjacency_lists();
        let mut parent = vec![usize::MAX; self.vertices.len()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &w in &adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![self.vertices[t].id];
        let mut cur = t;
        while cur != s {
            cur = parent[cur];
            path.push(self.vertices[cur].id);
        }
        path.reverse();
        Some(path)
    }

    /// Breadth-first distances in the union graph from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency_lists();
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn unreachable_from_first(&self) -> Option<VertexId> {
        let dist = self.distances_from(0);
        dist.iter()
            .position(Option::is_none)
            .map(|p| self.vertices[p].id)
    }

    pub fn check_cw_conditions(&self) -> CwReport {
        check_cw_conditions(&self.draft())
    }

    /// Ground set = vertices in id order; two distinct points are near iff
    /// they span a cycle edge or a bridge.
    pub fn to_space(&self, probe: Option<ProbeMap>) -> Result<ProximitySpace> {
        if self.vertices.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(self.vertices.len()));
        }
        let space = ProximitySpace::new(self.vertices.len(), self.union_edges())?;
        match probe {
            Some(p) => space.with_probe(p),
            None => Ok(space),
        }
    }
}

pub fn vortex_to_space(v: &PlanarVortex, probe: Option<ProbeMap>) -> Result<ProximitySpace> {
    v.to_space(probe)
}

pub fn has_hole(v: &PlanarVortex) -> bool {
    v.has_hole()
}

fn canonical_cycle(cycle: &Cycle, coords: &[Coord]) -> Cycle {
    let mut ring = cycle.ring.clone();
    if signed_area2(coords) < 0 {
        ring.reverse();
    }
    let start = ring
        .iter()
        .enumerate()
        .min_by_key(|(_, id)| **id)
        .map_or(0, |(i, _)| i);
    ring.rotate_left(start);
    Cycle {
        ring,
        filled: cycle.filled,
    }
}

fn bridge_spans_disjoint_cycles(sets: &[BTreeSet<VertexId>], bridge: &BridgeEdge) -> bool {
    if bridge.a == bridge.b {
        return false;
    }
    for (i, si) in sets.iter().enumerate() {
        for (j, sj) in sets.iter().enumerate() {
            if i != j && si.contains(&bridge.a) && sj.contains(&bridge.b) && si.is_disjoint(sj) {
                return true;
            }
        }
    }
    false
}

/// Strict nesting: every inner vertex lies in the open interior of `outer`
/// and no inner edge touches an outer edge. Boundary contact is not nesting.
pub fn is_nested(outer: &[Coord], inner: &[Coord]) -> Result<bool, VortexError> {
    if outer.len() < 3 || all_collinear(outer) {
        return Err(VortexError::Degenerate { cycle: 0 });
    }
    if inner.len() < 3 || all_collinear(inner) {
        return Err(VortexError::Degenerate { cycle: 1 });
    }
    if !inner.iter().all(|&p| locate(p, outer) == Location::Inside) {
        return Ok(false);
    }
    let (k, m) = (inner.len(), outer.len());
    for i in 0..k {
        let (a, b) = (inner[i], inner[(i + 1) % k]);
        for j in 0..m {
            let (c, d) = (outer[j], outer[(j + 1) % m]);
            if segments_intersect(a, b, c, d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed containment for cycles that share vertices: every inner vertex and
/// every inner edge midpoint lies inside or on the outer polygon.
fn closed_containment(outer: &[Coord], inner: &[Coord]) -> bool {
    let outer2 = double(outer);
    let n = inner.len();
    (0..n).all(|i| {
        let a = inner[i];
        let b = inner[(i + 1) % n];
        let mid = doubled_midpoint(a, b);
        locate(doubled_midpoint(a, a), &outer2) != Location::Outside
            && locate(mid, &outer2) != Location::Outside
    })
}

/// A CW-condition failure found by [`check_cw_conditions`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CwViolation {
    /// An edge has an endpoint that is not a declared vertex.
    Closure {
        edge: (VertexId, VertexId),
        missing: VertexId,
    },
    /// Two edges meet somewhere other than a common endpoint.
    EdgeCrossing {
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// A vertex lies in the interior of an edge it is not an endpoint of.
    VertexOnEdge {
        vertex: VertexId,
        edge: (VertexId, VertexId),
    },
    /// Two distinct vertices occupy the same point.
    CoincidentVertices { first: VertexId, second: VertexId },
}

impl std::fmt::Display for CwViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CwViolation::Closure { edge, missing } => write!(
                f,
                "edge {}-{} references undeclared vertex {missing}",
                edge.0, edge.1
            ),
            CwViolation::EdgeCrossing { first, second } => write!(
                f,
                "edges {}-{} and {}-{} meet away from a common vertex",
                first.0, first.1, second.0, second.1
            ),
            CwViolation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {}-{}", edge.0, edge.1)
            }
            CwViolation::CoincidentVertices { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CwReport {
    pub closure: Vec<CwViolation>,
    pub intersection: Vec<CwViolation>,
}

impl CwReport {
    pub fn passed(&self) -> bool {
        self.closure.is_empty() && self.intersection.is_empty()
    }

    pub fn first_violation(&self) -> Option<String> {
        self.closure
            .iter()
            .chain(&self.intersection)
            .next()
            .map(ToString::to_string)
    }
}

/// Checks closure finiteness (edges only reference declared vertices) and
/// that any two cells of the 1-skeleton meet in a common face or not at all.
pub fn check_cw_conditions(draft: &ComplexDraft) -> CwReport {
    let mut report = CwReport::default();
    let positions: BTreeMap<VertexId, Coord> =
        draft.vertices.iter().map(|v| (v.id, v.position)).collect();

    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let raw = draft
        .cycles
        .iter()
        .flat_map(|c| c.edges())
        .chain(draft.bridges.iter().map(|b| (b.a, b.b)));
    for (a, b) in raw {
        let mut complete = true;
        for id in [a, b] {
            if !positions.contains_key(&id) {
                report.closure.push(CwViolation::Closure {
                    edge: (a, b),
                    missing: id,
                });
                complete = false;
            }
        }
        if complete && a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }

    let verts: Vec<(VertexId, Coord)> = positions.iter().map(|(&k, &v)| (k, v)).collect();
    for (i, &(a, pa)) in verts.iter().enumerate() {
        for &(b, pb) in &verts[i + 1..] {
            if pa == pb {
                report.intersection.push(CwViolation::CoincidentVertices {
                    first: a,
                    second: b,
                });
            }
        }
    }

    let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
    for &(a, b) in &edges {
        let (pa, pb) = (positions[&a], positions[&b]);
        for &(v, pv) in &verts {
            if v != a && v != b && pv != pa && pv != pb && on_segment(pa, pb, pv) {
                report.intersection.push(CwViolation::VertexOnEdge {
                    vertex: v,
                    edge: (a, b),
                });
            }
        }
    }
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if edges_conflict(&positions, e, f) {
                report.intersection.push(CwViolation::EdgeCrossing {
                    first: e,
                    second: f,
                });
            }
        }
    }
    report
}

fn edges_conflict(
    positions: &BTreeMap<VertexId, Coord>,
    e: (VertexId, VertexId),
    f: (VertexId, VertexId),
) -> bool {
    let p = |id: VertexId| positions[&id];
    let shared: Vec<VertexId> = [e.0, e.1]
        .into_iter()
        .filter(|v| *v == f.0 || *v == f.1)
        .collect();
    match shared.as_slice() {
        [] => segments_intersect(p(e.0), p(e.1), p(f.0), p(f.1)),
        [s] => {
            let other_e = if e.0 == *s { e.1 } else { e.0 };
            let other_f = if f.0 == *s { f.1 } else { f.0 };
            overlap_beyond_shared(p(*s), p(other_e), p(other_f))
        }
        _ => false,
    }
}
