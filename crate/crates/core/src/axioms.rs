//! Exhaustive checks of the Čech axioms (P.0)–(P.3) and their descriptive
//! forms (dP.0)–(dP.3) over every pair or triple of subsets.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feature::ProbeMap;
use crate::space::ProximitySpace;
use crate::subset::{EnumerationCap, Subset};

/// Where a set-level relation came from; reported alongside axiom verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationSource {
    /// Lift of a point relation.
    Lifted,
    /// Overlap of feature images.
    Descriptive,
    /// Explicit truth table.
    Extensional,
}

/// A relation on `2^X × 2^X` for a ground set of `ground_size()` points.
pub trait SetRelation: Sync {
    fn ground_size(&self) -> usize;
    fn related(&self, a: Subset, b: Subset) -> bool;
    fn source(&self) -> RelationSource;
}

/// Lifted nearness of a [`ProximitySpace`].
pub struct Lifted<'a>(pub &'a ProximitySpace);

impl SetRelation for Lifted<'_> {
    fn ground_size(&self) -> usize {
        self.0.len()
    }
    fn related(&self, a: Subset, b: Subset) -> bool {
        self.0.set_near_unchecked(a, b)
    }
    fn source(&self) -> RelationSource {
        RelationSource::Lifted
    }
}

/// Descriptive nearness of a probed [`ProximitySpace`].
pub struct Descriptive<'a> {
    probe: &'a ProbeMap,
}

impl<'a> Descriptive<'a> {
    pub fn new(space: &'a ProximitySpace) -> Result<Self> {
        Ok(Descriptive {
            probe: space.require_probe()?,
        })
    }
}

impl SetRelation for Descriptive<'_> {
    fn ground_size(&self) -> usize {
        self.probe.len()
    }
    fn related(&self, a: Subset, b: Subset) -> bool {
        self.probe.description_mask(a) & self.probe.description_mask(b) != 0
    }
    fn source(&self) -> RelationSource {
        RelationSource::Descriptive
    }
}

/// Explicit truth table over all subset pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    n: usize,
    bits: Vec<u64>,
}

impl RelationTable {
    /// Tables hold `4^n` bits; larger ground sets are refused.
    pub const LIMIT: usize = 12;

    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::LIMIT {
            return Err(Error::CapExceeded {
                n,
                cap: Self::LIMIT,
            });
        }
        let entries = 1usize << (2 * n);
        Ok(RelationTable {
            n,
            bits: vec![0; entries.div_ceil(64)],
        })
    }

    pub fn from_fn(n: usize, mut related: impl FnMut(Subset, Subset) -> bool) -> Result<Self> {
        let mut table = Self::empty(n)?;
        for a in Subset::all(n) {
            for b in Subset::all(n) {
                if related(a, b) {
                    table.set(a, b, true);
                }
            }
        }
        Ok(table)
    }

    /// Tabulates any other relation.
    pub fn tabulate(rel: &dyn SetRelation) -> Result<Self> {
        Self::from_fn(rel.ground_size(), |a, b| rel.related(a, b))
    }

    fn index(&self, a: Subset, b: Subset) -> usize {
        ((a.bits() as usize) << self.n) | b.bits() as usize
    }

    pub fn set(&mut self, a: Subset, b: Subset, value: bool) {
        let i = self.index(a, b);
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }
}

impl SetRelation for RelationTable {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn related(&self, a: Subset, b: Subset) -> bool {
        let i = self.index(a, b);
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }
    fn source(&self) -> RelationSource {
        RelationSource::Extensional
    }
}

/// Which axiom family to check. The descriptive family evaluates (dP.2)
/// against the descriptive intersection of the given probe.
#[derive(Debug, Clone, Copy)]
pub enum AxiomFamily<'a> {
    Cech,
    Descriptive(&'a ProbeMap),
}

/// A counterexample: the subsets the failing axiom was instantiated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub a: Subset,
    pub b: Subset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub witness: Option<AxiomWitness>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub source: RelationSource,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

/// Checks all four axioms of `family` on `rel` by exhaustive enumeration.
///
/// Witnesses are the lexicographically least failing `(A, B[, C])` in bitmask
/// order, independent of how the scan is partitioned.
pub fn check_axioms(
    rel: &dyn SetRelation,
    family: AxiomFamily<'_>,
    cap: EnumerationCap,
) -> Result<AxiomReport> {
    let n = rel.ground_size();
    cap.check(n)?;
    if let AxiomFamily::Descriptive(probe) = family {
        if probe.len() != n {
            return Err(Error::ProbeSizeMismatch {
                expected: n,
                found: probe.len(),
            });
        }
    }
    let names: [&'static str; 4] = match family {
        AxiomFamily::Cech => ["P.0", "P.1", "P.2", "P.3"],
        AxiomFamily::Descriptive(_) => ["dP.0", "dP.1", "dP.2", "dP.3"],
    };
    let size = 1u64 << n;

    let p0 = first_pair(size, |a, b| {
        b.is_empty() && (rel.related(a, b) || rel.related(b, a))
    });
    let p1 = first_pair(size, |a, b| rel.related(a, b) && !rel.related(b, a));
    let p2 = match family {
        AxiomFamily::Cech => first_pair(size, |a, b| {
            !a.intersection(b).is_empty() && !rel.related(a, b)
        }),
        AxiomFamily::Descriptive(probe) => first_pair(size, |a, b| {
            let shared = probe.description_mask(a) & probe.description_mask(b);
            let meet = a.union(b).intersection(probe.members_of(shared));
            !meet.is_empty() && !rel.related(a, b)
        }),
    };
    let p3 = (0..size).into_par_iter().find_map_first(|a| {
        let a = Subset(a);
        for b in 0..size {
            let b = Subset(b);
            let ab = rel.related(a, b);
            for c in 0..size {
                let c = Subset(c);
                if rel.related(a, b.union(c)) && !ab && !rel.related(a, c) {
                    return Some(AxiomWitness { a, b, c: Some(c) });
                }
            }
        }
        None
    });

    let results = names
        .iter()
        .zip([p0, p1, p2, p3])
        .map(|(&axiom, witness)| AxiomResult { axiom, witness })
        .collect();
    Ok(AxiomReport {
        n,
        source: rel.source(),
        results,
    })
}

fn first_pair(size: u64, fails: impl Fn(Subset, Subset) -> bool + Sync) -> Option<AxiomWitness> {
    (0..size).into_par_iter().find_map_first(|a| {
        let a = Subset(a);
        (0..size)
            .map(Subset)
            .find(|&b| fails(a, b))
            .map(|b| AxiomWitness { a, b, c: None })
    })
}
