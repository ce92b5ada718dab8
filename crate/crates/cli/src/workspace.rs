//! Workspace files: named spaces, probes, complexes, maps and group bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use vortex_core::complex::{BridgeEdge, ComplexDraft, Cycle, Vertex, VertexId};
use vortex_core::geometry::Coord;
use vortex_core::{
    FeatureVector, PlanarVortex, PointMap, ProbeMap, ProximitySpace, Quantum, VortexError,
};

/// Where a workspace went wrong: a JSON position or a path into the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub path: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            line: None,
            column: None,
            path: Some(path.into()),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l}, column {c}: ")?;
        }
        if let Some(p) = &self.path {
            write!(f, "{p}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a workspace object")]
struct RawWorkspace {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quantum: Option<u32>,
    #[serde(default)]
    spaces: Vec<RawSpace>,
    #[serde(default)]
    probes: Vec<RawProbe>,
    #[serde(default)]
    complexes: Vec<RawComplex>,
    #[serde(default)]
    maps: Vec<RawMap>,
    #[serde(default)]
    groups: Vec<RawGroup>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a space object")]
struct RawSpace {
    name: String,
    points: Vec<u32>,
    #[serde(default)]
    edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probe: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a probe object")]
struct RawProbe {
    name: String,
    dimension: usize,
    features: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a vertex object")]
struct RawVertex {
    id: VertexId,
    pos: [String; 2],
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a cycle object")]
struct RawCycle {
    ring: Vec<VertexId>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    filled: bool,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a complex object")]
struct RawComplex {
    name: String,
    vertices: Vec<RawVertex>,
    cycles: Vec<RawCycle>,
    #[serde(default)]
    bridges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probe: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a map object")]
struct RawMap {
    name: String,
    domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    codomain: Option<String>,
    table: Vec<u32>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, expecting = "a group object")]
struct RawGroup {
    name: String,
    complex: String,
    basis: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    homes: Option<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDef {
    pub name: String,
    pub points: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub probe: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeDef {
    pub name: String,
    pub dimension: usize,
    pub features: Vec<FeatureVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDef {
    pub name: String,
    pub draft: ComplexDraft,
    pub probe: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDef {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub table: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDef {
    pub name: String,
    pub complex: String,
    pub basis: Vec<VertexId>,
    pub homes: Option<Vec<Option<usize>>>,
}

/// A parsed and cross-checked workspace. Complex geometry is validated
/// separately by [`Workspace::vortex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub quantum: Quantum,
    pub spaces: Vec<SpaceDef>,
    pub probes: Vec<ProbeDef>,
    pub complexes: Vec<ComplexDef>,
    pub maps: Vec<MapDef>,
    pub groups: Vec<GroupDef>,
}

/// A named ground set: its point ids in index order and, for complexes,
/// the built vortex.
#[derive(Debug, Clone)]
pub struct Ground {
    pub name: String,
    pub ids: Vec<u32>,
    pub space: ProximitySpace,
    pub vortex: Option<PlanarVortex>,
}

impl Ground {
    pub fn ids_of(&self, set: vortex_core::Subset) -> Vec<u32> {
        set.points().map(|p| self.ids[p]).collect()
    }
}

/// Failure to materialize a named object of a parsed workspace.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("no space or complex named {0:?}")]
    UnknownGround(String),
    #[error("no map named {0:?}")]
    UnknownMap(String),
    #[error("no complex named {0:?}")]
    UnknownComplex(String),
    #[error("complex {name:?} is invalid: {error}")]
    InvalidComplex { name: String, error: VortexError },
    #[error(transparent)]
    Core(#[from] vortex_core::Error),
}

pub fn parse_workspace(text: &str) -> Result<Workspace, Diagnostic> {
    let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        Diagnostic {
            line: Some(e.line()),
            column: Some(e.column()),
            path: None,
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    validate(raw)
}

fn validate(raw: RawWorkspace) -> Result<Workspace, Diagnostic> {
    let quantum = match raw.quantum {
        Some(e) => Quantum::new(e).map_err(|err| Diagnostic::at("quantum", err.to_string()))?,
        None => Quantum::default(),
    };

    let mut probes = Vec::new();
    let mut probe_names = BTreeSet::new();
    for (i, p) in raw.probes.iter().enumerate() {
        let path = format!("probes[{i}]");
        if !probe_names.insert(p.name.clone()) {
            return Err(Diagnostic::at(
                path,
                format!("duplicate probe name {:?}", p.name),
            ));
        }
        let mut features = Vec::new();
        for (k, row) in p.features.iter().enumerate() {
            let fv = FeatureVector::parse(quantum, row)
                .map_err(|e| Diagnostic::at(format!("{path}.features[{k}]"), e.to_string()))?;
            features.push(fv);
        }
        ProbeMap::new(p.dimension, quantum, features.clone())
            .map_err(|e| Diagnostic::at(&path, e.to_string()))?;
        probes.push(ProbeDef {
            name: p.name.clone(),
            dimension: p.dimension,
            features,
        });
    }
    let probe_len = |name: &str| {
        probes
            .iter()
            .find(|p| p.name == name)
            .map(|p| p.features.len())
    };
    let check_probe = |path: &str, probe: &Option<String>, n: usize| -> Result<(), Diagnostic> {
        if let Some(name) = probe {
            match probe_len(name) {
                None => Err(Diagnostic::at(
                    format!("{path}.probe"),
                    format!("dangling reference to probe {name:?}"),
                )),
                Some(len) if len != n => Err(Diagnostic::at(
                    format!("{path}.probe"),
                    format!("probe {name:?} has {len} features but the ground set has {n} points"),
                )),
                Some(_) => Ok(()),
            }
        } else {
            Ok(())
        }
    };

    let mut grounds: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    let mut spaces = Vec::new();
    for (i, s) in raw.spaces.iter().enumerate() {
        let path = format!("spaces[{i}]");
        if grounds.contains_key(&s.name) {
            return Err(Diagnostic::at(
                path,
                format!("duplicate space or complex name {:?}", s.name),
            ));
        }
        let index = id_index(&s.points).map_err(|id| {
            Diagnostic::at(format!("{path}.points"), format!("duplicate point id {id}"))
        })?;
        for (k, e) in s.edges.iter().enumerate() {
            for id in e {
                if !index.contains_key(id) {
                    return Err(Diagnostic::at(
                        format!("{path}.edges[{k}]"),
                        format!("unknown point id {id}"),
                    ));
                }
            }
        }
        check_probe(&path, &s.probe, s.points.len())?;
        let def = SpaceDef {
            name: s.name.clone(),
            points: s.points.clone(),
            edges: s.edges.iter().map(|e| (e[0], e[1])).collect(),
            probe: s.probe.clone(),
        };
        build_space(&def, None).map_err(|e| Diagnostic::at(&path, e.to_string()))?;
        grounds.insert(s.name.clone(), s.points.clone());
        spaces.push(def);
    }

    let mut complexes = Vec::new();
    for (i, c) in raw.complexes.iter().enumerate() {
        let path = format!("complexes[{i}]");
        if grounds.contains_key(&c.name) {
            return Err(Diagnostic::at(
                path,
                format!("duplicate space or complex name {:?}", c.name),
            ));
        }
        let mut vertices = Vec::new();
        for (k, v) in c.vertices.iter().enumerate() {
            let parse = |s: &str| {
                quantum
                    .parse(s)
                    .map_err(|e| Diagnostic::at(format!("{path}.vertices[{k}].pos"), e.to_string()))
            };
            vertices.push(Vertex {
                id: v.id,
                position: Coord::new(parse(&v.pos[0])?, parse(&v.pos[1])?),
            });
        }
        let mut ids: Vec<u32> = vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Diagnostic::at(
                format!("{path}.vertices"),
                format!("duplicate vertex id {}", w[0]),
            ));
        }
        check_probe(&path, &c.probe, ids.len())?;
        let draft = ComplexDraft {
            vertices,
            cycles: c
                .cycles
                .iter()
                .map(|r| Cycle::with_filled(r.ring.clone(), r.filled))
                .collect(),
            bridges: c
                .bridges
                .iter()
                .map(|b| BridgeEdge::new(b[0], b[1]))
                .collect(),
        };
        grounds.insert(c.name.clone(), ids);
        complexes.push(ComplexDef {
            name: c.name.clone(),
            draft,
            probe: c.probe.clone(),
        });
    }

    let mut maps = Vec::new();
    let mut map_names = BTreeSet::new();
    for (i, m) in raw.maps.iter().enumerate() {
        let path = format!("maps[{i}]");
        if !map_names.insert(m.name.clone()) {
            return Err(Diagnostic::at(
                path,
                format!("duplicate map name {:?}", m.name),
            ));
        }
        let codomain = m.codomain.clone().unwrap_or_else(|| m.domain.clone());
        let dom = grounds.get(&m.domain).ok_or_else(|| {
            Diagnostic::at(
                format!("{path}.domain"),
                format!("dangling reference to {:?}", m.domain),
            )
        })?;
        let cod = grounds.get(&codomain).ok_or_else(|| {
            Diagnostic::at(
                format!("{path}.codomain"),
                format!("dangling reference to {codomain:?}"),
            )
        })?;
        if m.table.len() != dom.len() {
            return Err(Diagnostic::at(
                format!("{path}.table"),
                format!(
                    "table has {} entries but the domain has {} points",
                    m.table.len(),
                    dom.len()
                ),
            ));
        }
        if let Some((k, id)) = m.table.iter().enumerate().find(|(_, id)| !cod.contains(id)) {
            return Err(Diagnostic::at(
                format!("{path}.table[{k}]"),
                format!("{id} is not a point of {codomain:?}"),
            ));
        }
        maps.push(MapDef {
            name: m.name.clone(),
            domain: m.domain.clone(),
            codomain,
            table: m.table.clone(),
        });
    }

    let mut groups = Vec::new();
    let mut group_names = BTreeSet::new();
    for (i, g) in raw.groups.iter().enumerate() {
        let path = format!("groups[{i}]");
        if !group_names.insert(g.name.clone()) {
            return Err(Diagnostic::at(
                path,
                format!("duplicate group name {:?}", g.name),
            ));
        }
        let Some(c) = complexes.iter().find(|c| c.name == g.complex) else {
            return Err(Diagnostic::at(
                format!("{path}.complex"),
                format!("dangling reference to complex {:?}", g.complex),
            ));
        };
        if g.basis.is_empty() {
            return Err(Diagnostic::at(format!("{path}.basis"), "basis is empty"));
        }
        if let Some(id) = g
            .basis
            .iter()
            .find(|id| !c.draft.vertices.iter().any(|v| v.id == **id))
        {
            return Err(Diagnostic::at(
                format!("{path}.basis"),
                format!("{id} is not a vertex of {:?}", g.complex),
            ));
        }
        if let Some(h) = &g.homes {
            if h.len() != g.basis.len() {
                return Err(Diagnostic::at(
                    format!("{path}.homes"),
                    "homes and basis differ in length",
                ));
            }
        }
        groups.push(GroupDef {
            name: g.name.clone(),
            complex: g.complex.clone(),
            basis: g.basis.clone(),
            homes: g.homes.clone(),
        });
    }

    Ok(Workspace {
        quantum,
        spaces,
        probes,
        complexes,
        maps,
        groups,
    })
}

fn id_index(ids: &[u32]) -> Result<BTreeMap<u32, usize>, u32> {
    let mut index = BTreeMap::new();
    for (i, &id) in ids.iter().enumerate() {
        if index.insert(id, i).is_some() {
            return Err(id);
        }
    }
    Ok(index)
}

fn build_space(def: &SpaceDef, probe: Option<ProbeMap>) -> vortex_core::Result<ProximitySpace> {
    let index = id_index(&def.points).expect("validated ids");
    let edges = def.edges.iter().map(|(a, b)| (index[a], index[b]));
    let space = ProximitySpace::new(def.points.len(), edges)?;
    match probe {
        Some(p) => space.with_probe(p),
        None => Ok(space),
    }
}

impl Workspace {
    pub fn to_json(&self) -> String {
        let q = self.quantum;
        let raw = RawWorkspace {
            quantum: (q != Quantum::default()).then(|| q.exponent()),
            spaces: self
                .spaces
                .iter()
                .map(|s| RawSpace {
                    name: s.name.clone(),
                    points: s.points.clone(),
                    edges: s.edges.iter().map(|&(a, b)| [a, b]).collect(),
                    probe: s.probe.clone(),
                })
                .collect(),
            probes: self
                .probes
                .iter()
                .map(|p| RawProbe {
                    name: p.name.clone(),
                    dimension: p.dimension,
                    features: p
                        .features
                        .iter()
                        .map(|f| f.components().iter().map(|&c| q.format(c)).collect())
                        .collect(),
                })
                .collect(),
            complexes: self
                .complexes
                .iter()
                .map(|c| RawComplex {
                    name: c.name.clone(),
                    vertices: c
                        .draft
                        .vertices
                        .iter()
                        .map(|v| RawVertex {
                            id: v.id,
                            pos: [q.format(v.position.x), q.format(v.position.y)],
                        })
                        .collect(),
                    cycles: c
                        .draft
                        .cycles
                        .iter()
                        .map(|r| RawCycle {
                            ring: r.ring().to_vec(),
                            filled: r.filled(),
                        })
                        .collect(),
                    bridges: c.draft.bridges.iter().map(|b| [b.a, b.b]).collect(),
                    probe: c.probe.clone(),
                })
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|m| RawMap {
                    name: m.name.clone(),
                    domain: m.domain.clone(),
                    codomain: (m.codomain != m.domain).then(|| m.codomain.clone()),
                    table: m.table.clone(),
                })
                .collect(),
            groups: self
                .groups
                .iter()
                .map(|g| RawGroup {
                    name: g.name.clone(),
                    complex: g.complex.clone(),
                    basis: g.basis.clone(),
                    homes: g.homes.clone(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("workspace serializes");
        out.push('\n');
        out
    }

    fn probe(&self, name: &Option<String>) -> vortex_core::Result<Option<ProbeMap>> {
        name.as_ref()
            .map(|n| {
                let p = self
                    .probes
                    .iter()
                    .find(|p| &p.name == n)
                    .expect("validated probe reference");
                ProbeMap::new(p.dimension, self.quantum, p.features.clone())
            })
            .transpose()
    }

    pub fn complex(&self, name: &str) -> Result<&ComplexDef, LookupError> {
        self.complexes
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LookupError::UnknownComplex(name.to_string()))
    }

    /// Builds the named complex.
    pub fn vortex(&self, name: &str) -> Result<PlanarVortex, LookupError> {
        let c = self.complex(name)?;
        vortex_core::build_vortex(&c.draft).map_err(|error| LookupError::InvalidComplex {
            name: name.to_string(),
            error,
        })
    }

    /// Resolves a space or complex name to its proximity space.
    pub fn ground(&self, name: &str) -> Result<Ground, LookupError> {
        if let Some(s) = self.spaces.iter().find(|s| s.name == name) {
            return Ok(Ground {
                name: name.to_string(),
                ids: s.points.clone(),
                space: build_space(s, self.probe(&s.probe)?)?,
                vortex: None,
            });
        }
        if let Some(c) = self.complexes.iter().find(|c| c.name == name) {
            let v = self.vortex(name)?;
            let space = v.to_space(self.probe(&c.probe)?)?;
            return Ok(Ground {
                name: name.to_string(),
                ids: v.vertices().iter().map(|x| x.id).collect(),
                space,
                vortex: Some(v),
            });
        }
        Err(LookupError::UnknownGround(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&MapDef, LookupError> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| LookupError::UnknownMap(name.to_string()))
    }

    /// The named map with its domain and codomain, in point-index form.
    pub fn point_map(&self, name: &str) -> Result<(PointMap, Ground, Ground), LookupError> {
        let def = self.map(name)?;
        let dom = self.ground(&def.domain)?;
        let cod = self.ground(&def.codomain)?;
        let index = id_index(&cod.ids).expect("distinct ids");
        let table = def.table.iter().map(|id| index[id]).collect();
        let f = PointMap::new(cod.ids.len(), table)?;
        Ok((f, dom, cod))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "spaces": [{"name": "S", "points": [0, 1, 2], "edges": [[0, 1]], "probe": "P"}],
        "probes": [{"name": "P", "dimension": 1, "features": [["0.5"], ["0.5"], ["1"]]}],
        "maps": [{"name": "f", "domain": "S", "table": [1, 0, 2]}]
    }"#;

    #[test]
    fn minimal_space() {
        let w = parse_workspace(MINIMAL).unwrap();
        let g = w.ground("S").unwrap();
        assert_eq!(g.space.len(), 3);
        let near: usize = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| g.space.near_points(a, b))
            .count();
        assert_eq!(near, 3 + 2);
    }

    #[test]
    fn dangling_probe() {
        let text = MINIMAL.replace(r#""probe": "P""#, r#""probe": "Q""#);
        let d = parse_workspace(&text).unwrap_err();
        assert_eq!(d.path.as_deref(), Some("spaces[0].probe"));
        assert!(d.message.contains("dangling"));
    }

    #[test]
    fn syntax_error_has_position() {
        let d = parse_workspace("{\n  \"spaces\": [,]\n}").unwrap_err();
        assert_eq!(d.line, Some(2));
        assert!(d.column.is_some());
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(parse_workspace(r#"{"spaces": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = r#"{"spaces": [{"name": "S", "points": [0]}, {"name": "S", "points": [1]}]}"#;
        assert!(parse_workspace(text)
            .unwrap_err()
            .message
            .contains("duplicate"));
    }

    #[test]
    fn overflowing_feature_rejected() {
        let text = MINIMAL.replace(r#"["1"]"#, r#"["99999999999999999999"]"#);
        let d = parse_workspace(&text).unwrap_err();
        assert_eq!(d.path.as_deref(), Some("probes[0].features[2]"));
    }

    #[test]
    fn map_table_must_hit_codomain() {
        let text = MINIMAL.replace("[1, 0, 2]", "[1, 0, 7]");
        assert_eq!(
            parse_workspace(&text).unwrap_err().path.as_deref(),
            Some("maps[0].table[2]")
        );
    }

    #[test]
    fn round_trip() {
        let w = parse_workspace(MINIMAL).unwrap();
        let again = parse_workspace(&w.to_json()).unwrap();
        assert_eq!(w, again);
        assert_eq!(w.to_json(), again.to_json());
    }
}
