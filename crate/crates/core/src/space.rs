//! Finite Čech and descriptive proximity spaces.
//!
//! Set-level nearness is the lift of a reflexive, symmetric point relation:
//! `A δ B` iff some `a ∈ A` is near some `b ∈ B`. Descriptive nearness
//! `A δ_Φ B` holds iff the feature images `Φ(A)` and `Φ(B)` overlap.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::feature::{FeatureVector, ProbeMap};
use crate::subset::{Subset, MAX_POINTS};

/// A finite proximity space with an optional probe map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximitySpace {
    n: usize,
    /// `adjacency[a]` holds every `b` with `near(a, b)`, including `a`.
    adjacency: Vec<Subset>,
    probe: Option<ProbeMap>,
}

impl ProximitySpace {
    /// Builds the reflexive, symmetric closure of `edges` on `n` points.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        let mut adjacency: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for (a, b) in edges {
            for p in [a, b] {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Ok(ProximitySpace {
            n,
            adjacency,
            probe: None,
        })
    }

    /// The space where each point is near only itself.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// Takes an explicit adjacency table; it must already be reflexive and symmetric.
    pub fn from_adjacency(adjacency: Vec<Subset>) -> Result<Self> {
        let n = adjacency.len();
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        for (a, row) in adjacency.iter().enumerate() {
            row.check(n)?;
            if !row.contains(a) {
                return Err(Error::InvalidRelation("reflexive"));
            }
            if row.points().any(|b| !adjacency[b].contains(a)) {
                return Err(Error::InvalidRelation("symmetric"));
            }
        }
        Ok(ProximitySpace {
            n,
            adjacency,
            probe: None,
        })
    }

    pub fn with_probe(mut self, probe: ProbeMap) -> Result<Self> {
        if probe.len() != self.n {
            return Err(Error::ProbeSizeMismatch {
                expected: self.n,
                found: probe.len(),
            });
        }
        self.probe = Some(probe);
        Ok(self)
    }

    pub fn without_probe(mut self) -> Self {
        self.probe = None;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn probe(&self) -> Option<&ProbeMap> {
        self.probe.as_ref()
    }

    pub fn require_probe(&self) -> Result<&ProbeMap> {
        self.probe.as_ref().ok_or(Error::NoProbe)
    }

    pub fn neighbourhood(&self, point: usize) -> Subset {
        self.adjacency[point]
    }

    pub fn adjacency(&self) -> &[Subset] {
        &self.adjacency
    }

    #[inline]
    pub fn near_points(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    /// Unordered near pairs `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                self.adjacency[a]
                    .points()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Relabels points: `perm[x]` is the new index of `x`. Relation and probe follow.
    pub fn relabel(&self, perm: &[usize]) -> Result<ProximitySpace> {
        if perm.len() != self.n {
            return Err(Error::SpaceMismatch(format!(
                "permutation of length {} for a {}-point space",
                perm.len(),
                self.n
            )));
        }
        let edges = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b]));
        let space = ProximitySpace::new(self.n, edges)?;
        match &self.probe {
            Some(p) => space.with_probe(p.relabel(perm)?),
            None => Ok(space),
        }
    }

    /// Union of the neighbourhoods of every member of `set`.
    #[inline]
    pub fn neighbourhood_of(&self, set: Subset) -> Subset {
        set.points()
            .fold(Subset::EMPTY, |acc, p| acc.union(self.adjacency[p]))
    }

    /// `A δ B` for the lifted relation.
    pub fn set_near(&self, a: Subset, b: Subset) -> Result<bool> {
        a.check(self.n)?;
        b.check(self.n)?;
        Ok(self.set_near_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn set_near_unchecked(&self, a: Subset, b: Subset) -> bool {
        !b.is_empty()
            && a.points()
                .any(|p| !self.adjacency[p].intersection(b).is_empty())
    }

    /// `A δ_Φ B`: the descriptions overlap. False when either set is empty.
    pub fn desc_near(&self, a: Subset, b: Subset) -> Result<bool> {
        let probe = self.require_probe()?;
        a.check(self.n)?;
        b.check(self.n)?;
        Ok(probe.description_mask(a) & probe.description_mask(b) != 0)
    }

    /// `A ∩_Φ B = { x ∈ A ∪ B : Φ(x) ∈ Φ(A) ∩ Φ(B) }`.
    pub fn desc_intersection(&self, a: Subset, b: Subset) -> Result<Subset> {
        let probe = self.require_probe()?;
        a.check(self.n)?;
        b.check(self.n)?;
        let shared = probe.description_mask(a) & probe.description_mask(b);
        Ok(a.union(b).intersection(probe.members_of(shared)))
    }

    /// `cl_Φ A = { x ∈ X : Φ(x) ∈ Φ(A) }`.
    pub fn desc_closure(&self, a: Subset) -> Result<Subset> {
        let probe = self.require_probe()?;
        a.check(self.n)?;
        Ok(probe.members_of(probe.description_mask(a)))
    }

    /// Checks one instance of `A δ_Φ B ⇒ A ∩_Φ B ≠ ∅`.
    pub fn desc_near_implies_desc_intersection(&self, a: Subset, b: Subset) -> Result<bool> {
        let near = self.desc_near(a, b)?;
        let meet = self.desc_intersection(a, b)?;
        Ok(!near || !meet.is_empty())
    }

    /// `Φ(A)` as an ordered set of feature vectors.
    pub fn description(&self, a: Subset) -> Result<BTreeSet<&FeatureVector>> {
        let probe = self.require_probe()?;
        a.check(self.n)?;
        Ok(probe.description(a))
    }

    /// `Φ(A) = Φ(B)`.
    pub fn desc_equal(&self, a: Subset, b: Subset) -> Result<bool> {
        let probe = self.require_probe()?;
        a.check(self.n)?;
        b.check(self.n)?;
        Ok(probe.description_mask(a) == probe.description_mask(b))
    }
}
