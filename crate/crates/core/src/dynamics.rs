//! Subset dynamics of self-maps: iterates, orbits and fixed-subset
//! classification.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{PlanarVortex, VertexId};
use crate::error::Result;
use crate::maps::{check_proximal_continuity, ContinuityReport, PointMap};
use crate::space::ProximitySpace;
use crate::subset::{EnumerationCap, Subset, SubsetDomain};

/// `fⁿ(A)`.
pub fn iterate(f: &PointMap, a: Subset, n: usize) -> Subset {
    (0..n).fold(a, |acc, _| f.image(acc))
}

/// The subset orbit `A, f(A), f²(A), …` up to its first repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub seed: Subset,
    pub preperiod: usize,
    pub period: usize,
    /// `trajectory[i] = fⁱ(A)` for `i < preperiod + period`.
    pub trajectory: Vec<Subset>,
}

impl OrbitRecord {
    /// `fⁿ(A)` for any `n`, read off the closed orbit.
    pub fn at(&self, n: usize) -> Subset {
        if n < self.trajectory.len() {
            self.trajectory[n]
        } else {
            self.trajectory[self.preperiod + (n - self.preperiod) % self.period]
        }
    }
}

/// Simulates until a subset repeats. Self-map on at most `cap` points.
pub fn orbit(f: &PointMap, a: Subset, cap: EnumerationCap) -> Result<OrbitRecord> {
    cap.check(f.domain_len())?;
    a.check(f.domain_len())?;
    Ok(orbit_unchecked(f, a))
}

fn orbit_unchecked(f: &PointMap, a: Subset) -> OrbitRecord {
    let mut seen: HashMap<Subset, usize> = HashMap::new();
    let mut trajectory = Vec::new();
    let mut cur = a;
    loop {
        if let Some(&first) = seen.get(&cur) {
            return OrbitRecord {
                seed: a,
                preperiod: first,
                period: trajectory.len() - first,
                trajectory,
            };
        }
        seen.insert(cur, trajectory.len());
        trajectory.push(cur);
        cur = f.image(cur);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FixedTag {
    /// `Φ(f(A)) = Φ(A)`.
    FixedDesc,
    /// Not fixed, but `Φ(fⁿ(A)) = Φ(A)` for some `n > 1`.
    EventuallyFixedDesc,
    /// Neither, but `A δ_Φ f(A)`.
    AlmostFixedDesc,
    None,
}

impl FixedTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedTag::FixedDesc => "FIXED_DESC",
            FixedTag::EventuallyFixedDesc => "EVENTUALLY_FIXED_DESC",
            FixedTag::AlmostFixedDesc => "ALMOST_FIXED_DESC",
            FixedTag::None => "NONE",
        }
    }

    pub fn parse(s: &str) -> Option<FixedTag> {
        match s.to_ascii_uppercase().as_str() {
            "FIXED_DESC" => Some(FixedTag::FixedDesc),
            "EVENTUALLY_FIXED_DESC" => Some(FixedTag::EventuallyFixedDesc),
            "ALMOST_FIXED_DESC" => Some(FixedTag::AlmostFixedDesc),
            "NONE" => Some(FixedTag::None),
            _ => None,
        }
    }
}

/// Strongest applicable tag for one subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FixedClass {
    pub subset: Subset,
    pub tag: FixedTag,
    /// `1` for fixed subsets, the least `n` for eventually fixed ones.
    pub witness_n: Option<usize>,
    /// Least `a ∈ A` with `f(a) = a`.
    pub point_witness: Option<usize>,
}

impl FixedClass {
    pub fn point_fixed(&self) -> bool {
        self.point_witness.is_some()
    }
}

/// Classifies `A` under `f` against the space's probe. `∅` is always `NONE`.
pub fn classify_fixed(f: &PointMap, space: &ProximitySpace, a: Subset) -> Result<FixedClass> {
    f.check_fits(space, space)?;
    space.require_probe()?;
    a.check(space.len())?;
    Ok(classify_unchecked(f, space, a))
}

fn classify_unchecked(f: &PointMap, space: &ProximitySpace, a: Subset) -> FixedClass {
    let probe = space.probe().expect("probe checked by caller");
    let point_witness = a.points().find(|&p| f.apply(p) == p);
    let none = FixedClass {
        subset: a,
        tag: FixedTag::None,
        witness_n: None,
        point_witness,
    };
    if a.is_empty() {
        return none;
    }
    let desc = probe.description_mask(a);
    let image = f.image(a);
    let image_desc = probe.description_mask(image);
    if image_desc == desc {
        return FixedClass {
            tag: FixedTag::FixedDesc,
            witness_n: Some(1),
            ..none
        };
    }
    let orbit = orbit_unchecked(f, a);
    let bound = orbit.preperiod + orbit.period;
    if let Some(n) = (2..=bound).find(|&n| probe.description_mask(orbit.at(n)) == desc) {
        return FixedClass {
            tag: FixedTag::EventuallyFixedDesc,
            witness_n: Some(n),
            ..none
        };
    }
    if desc & image_desc != 0 {
        return FixedClass {
            tag: FixedTag::AlmostFixedDesc,
            ..none
        };
    }
    none
}

/// Classifies every nonempty subset, in ascending bitmask order, keeping
/// only tags in `filter` when given.
pub fn scan_fixed_subsets(
    f: &PointMap,
    space: &ProximitySpace,
    filter: Option<&[FixedTag]>,
    cap: EnumerationCap,
) -> Result<Vec<FixedClass>> {
    f.check_fits(space, space)?;
    space.require_probe()?;
    cap.check(space.len())?;
    let all: Vec<Subset> = Subset::nonempty(space.len()).collect();
    Ok(all
        .into_par_iter()
        .map(|a| classify_unchecked(f, space, a))
        .filter(|c| filter.is_none_or(|tags| tags.contains(&c.tag)))
        .collect())
}

/// Per-tag counts of a scan, in tag order.
pub fn tag_counts(classes: &[FixedClass]) -> Vec<(FixedTag, usize)> {
    let tags = [
        FixedTag::FixedDesc,
        FixedTag::EventuallyFixedDesc,
        FixedTag::AlmostFixedDesc,
        FixedTag::None,
    ];
    tags.iter()
        .map(|&t| (t, classes.iter().filter(|c| c.tag == t).count()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedPointOutcome {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "COUNTEREXAMPLE-AT-COMBINATORIAL-LEVEL")]
    CombinatorialCounterexample,
    #[serde(rename = "INAPPLICABLE")]
    Inapplicable,
}

impl FixedPointOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedPointOutcome::Consistent => "CONSISTENT",
            FixedPointOutcome::CombinatorialCounterexample => {
                "COUNTEREXAMPLE-AT-COMBINATORIAL-LEVEL"
            }
            FixedPointOutcome::Inapplicable => "INAPPLICABLE",
        }
    }
}

const COMBINATORIAL_NOTE: &str = "f is proximally continuous on the vortex but fixes no vertex; \
a fixed point of the realized map would have to come from an affine extension over the \
filled cells, which the combinatorial space does not determine";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub outcome: FixedPointOutcome,
    pub continuity: ContinuityReport,
    /// Vertex ids with `f(x) = x`.
    pub fixed_vertices: Vec<VertexId>,
    /// `f(X) = X`.
    pub whole_space_fixed: bool,
    /// Nonempty `A` with `f(A) = A` among the scanned subsets.
    pub fixed_subsets: usize,
    pub first_fixed_subset: Option<Subset>,
    /// Nonempty `A` with `Φ(f(A)) = Φ(A)`, when the space is probed.
    pub desc_fixed_subsets: Option<usize>,
    pub scanned_subsets: usize,
    pub exhaustive: bool,
    pub note: Option<&'static str>,
}

/// Looks for fixed vertices and fixed subsets of a continuous self-map of a
/// vortex space. Above the enumeration cap subsets are sampled with `seed`.
pub fn vortex_fixed_point_check(
    v: &PlanarVortex,
    space: &ProximitySpace,
    f: &PointMap,
    cap: EnumerationCap,
    seed: u64,
) -> Result<FixedPointReport> {
    f.check_fits(space, space)?;
    let continuity = check_proximal_continuity(f, space, space, cap)?;
    let n = space.len();
    let fixed_vertices: Vec<VertexId> = (0..n)
        .filter(|&x| f.apply(x) == x)
        .map(|x| v.vertex_at(x))
        .collect();
    let whole_space_fixed = f.image(space.full()) == space.full();
    if !continuity.passed() {
        return Ok(FixedPointReport {
            outcome: FixedPointOutcome::Inapplicable,
            continuity,
            fixed_vertices,
            whole_space_fixed,
            fixed_subsets: 0,
            first_fixed_subset: None,
            desc_fixed_subsets: None,
            scanned_subsets: 0,
            exhaustive: false,
            note: None,
        });
    }
    let domain = SubsetDomain::new(n, cap, seed)?;
    let subsets: Vec<Subset> = domain.iter().filter(|a| !a.is_empty()).collect();
    let fixed: Vec<Subset> = subsets
        .par_iter()
        .copied()
        .filter(|&a| f.image(a) == a)
        .collect();
    let desc_fixed_subsets = space.probe().map(|p| {
        subsets
            .par_iter()
            .filter(|&&a| p.description_mask(f.image(a)) == p.description_mask(a))
            .count()
    });
    let (outcome, note) = if fixed_vertices.is_empty() {
        (
            FixedPointOutcome::CombinatorialCounterexample,
            Some(COMBINATORIAL_NOTE),
        )
    } else {
        (FixedPointOutcome::Consistent, None)
    };
    Ok(FixedPointReport {
        outcome,
        continuity,
        fixed_vertices,
        whole_space_fixed,
        fixed_subsets: fixed.len(),
        first_fixed_subset: fixed.first().copied(),
        desc_fixed_subsets,
        scanned_subsets: subsets.len(),
        exhaustive: domain.is_exhaustive(),
        note,
    })
}
