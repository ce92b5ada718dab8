//! Point maps between finite spaces: proximal and descriptive continuity,
//! isomorphisms, and descriptively invariant sets.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::ProximitySpace;
use crate::subset::{EnumerationCap, Subset};

/// A total function between ground sets, extended elementwise to subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointMap {
    codomain_n: usize,
    table: Vec<usize>,
}

impl PointMap {
    pub fn new(codomain_n: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(&y) = table.iter().find(|&&y| y >= codomain_n) {
            return Err(Error::PointOutOfRange {
                point: y,
                n: codomain_n,
            });
        }
        Ok(PointMap { codomain_n, table })
    }

    /// A self-map of an `n`-point set with `n = table.len()`.
    pub fn self_map(table: Vec<usize>) -> Result<Self> {
        Self::new(table.len(), table)
    }

    pub fn identity(n: usize) -> Self {
        PointMap {
            codomain_n: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, p: usize) -> Result<Self> {
        Self::self_map(vec![p; n])
    }

    pub fn domain_len(&self) -> usize {
        self.table.len()
    }

    pub fn codomain_len(&self) -> usize {
        self.codomain_n
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_self_map(&self) -> bool {
        self.table.len() == self.codomain_n
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `f(A) = { f(a) : a ∈ A }`.
    #[inline]
    pub fn image(&self, set: Subset) -> Subset {
        set.points().fold(Subset::EMPTY, |acc, p| {
            acc.union(Subset::singleton(self.table[p]))
        })
    }

    pub fn preimage(&self, set: Subset) -> Subset {
        (0..self.table.len())
            .filter(|&x| set.contains(self.table[x]))
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.table.len() == self.codomain_n
            && self.image(Subset::full(self.codomain_n)) == Subset::full(self.codomain_n)
    }

    pub fn inverse(&self) -> Option<PointMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.codomain_n];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(PointMap {
            codomain_n: self.table.len(),
            table,
        })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PointMap) -> Result<PointMap> {
        if then.domain_len() != self.codomain_n {
            return Err(Error::SpaceMismatch(format!(
                "cannot compose: codomain has {} points, next domain has {}",
                self.codomain_n,
                then.domain_len()
            )));
        }
        PointMap::new(
            then.codomain_n,
            self.table.iter().map(|&y| then.table[y]).collect(),
        )
    }

    /// Checks that the map fits `domain → codomain`.
    pub fn check_fits(&self, domain: &ProximitySpace, codomain: &ProximitySpace) -> Result<()> {
        if self.table.len() != domain.len() || self.codomain_n != codomain.len() {
            return Err(Error::SpaceMismatch(format!(
                "map is {} → {} points but the spaces have {} and {}",
                self.table.len(),
                self.codomain_n,
                domain.len(),
                codomain.len()
            )));
        }
        Ok(())
    }
}

/// Ground sets larger than this skip the subset-pair oracle (it visits `4^n` pairs).
pub const PAIR_ORACLE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityMode {
    Proximal,
    Descriptive,
}

/// A pair that is near in the domain but whose images are far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub a: Subset,
    pub b: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub mode: ContinuityMode,
    /// Point-level verdict: first near pair of points with far images.
    pub pointwise: Option<(usize, usize)>,
    /// Subset-pair oracle verdict; `None` when the oracle did not run.
    pub exhaustive: Option<Option<PairWitness>>,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.pointwise.is_none() && !matches!(self.exhaustive, Some(Some(_)))
    }

    pub fn oracle_ran(&self) -> bool {
        self.exhaustive.is_some()
    }

    /// True when the point-level check and the oracle (if run) agree.
    pub fn consistent(&self) -> bool {
        match self.exhaustive {
            None => true,
            Some(w) => w.is_none() == self.pointwise.is_none(),
        }
    }
}

fn oracle_size(n: usize, cap: EnumerationCap) -> bool {
    cap.allows(n) && n <= PAIR_ORACLE_LIMIT
}

/// `A δ₁ B ⇒ f(A) δ₂ f(B)`, decided at the point level and, for small
/// ground sets, by an exhaustive scan of subset pairs.
pub fn check_proximal_continuity(
    f: &PointMap,
    domain: &ProximitySpace,
    codomain: &ProximitySpace,
    cap: EnumerationCap,
) -> Result<ContinuityReport> {
    f.check_fits(domain, codomain)?;
    let n = domain.len();
    let pointwise = domain
        .edges()
        .into_iter()
        .find(|&(a, b)| !codomain.near_points(f.apply(a), f.apply(b)));
    let exhaustive = oracle_size(n, cap).then(|| {
        let images: Vec<Subset> = Subset::all(n).map(|s| f.image(s)).collect();
        first_failing_pair(n, |a, b| {
            domain.set_near_unchecked(a, b)
                && !codomain
                    .set_near_unchecked(images[a.bits() as usize], images[b.bits() as usize])
        })
    });
    Ok(ContinuityReport {
        mode: ContinuityMode::Proximal,
        pointwise,
        exhaustive,
    })
}

/// `A δ_Φ₁ B ⇒ f(A) δ_Φ₂ f(B)`. The spatial relations are ignored.
pub fn check_descriptive_continuity(
    f: &PointMap,
    domain: &ProximitySpace,
    codomain: &ProximitySpace,
    cap: EnumerationCap,
) -> Result<ContinuityReport> {
    f.check_fits(domain, codomain)?;
    let p1 = domain.require_probe()?;
    let p2 = codomain.require_probe()?;
    let n = domain.len();
    let pointwise = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| {
            p1.class_of(a) == p1.class_of(b) && p2.class_of(f.apply(a)) != p2.class_of(f.apply(b))
        });
    let exhaustive = oracle_size(n, cap).then(|| {
        let desc: Vec<u64> = Subset::all(n).map(|s| p1.description_mask(s)).collect();
        let image_desc: Vec<u64> = Subset::all(n)
            .map(|s| p2.description_mask(f.image(s)))
            .collect();
        first_failing_pair(n, |a, b| {
            let (a, b) = (a.bits() as usize, b.bits() as usize);
            desc[a] & desc[b] != 0 && image_desc[a] & image_desc[b] == 0
        })
    });
    Ok(ContinuityReport {
        mode: ContinuityMode::Descriptive,
        pointwise,
        exhaustive,
    })
}

pub fn check_continuity(
    f: &PointMap,
    domain: &ProximitySpace,
    codomain: &ProximitySpace,
    mode: ContinuityMode,
    cap: EnumerationCap,
) -> Result<ContinuityReport> {
    match mode {
        ContinuityMode::Proximal => check_proximal_continuity(f, domain, codomain, cap),
        ContinuityMode::Descriptive => check_descriptive_continuity(f, domain, codomain, cap),
    }
}

fn first_failing_pair(
    n: usize,
    fails: impl Fn(Subset, Subset) -> bool + Sync,
) -> Option<PairWitness> {
    let size = 1u64 << n;
    (0..size).into_par_iter().find_map_first(|a| {
        let a = Subset(a);
        (0..size)
            .map(Subset)
            .find(|&b| fails(a, b))
            .map(|b| PairWitness { a, b })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IsoStatus {
    Pass,
    NotBijective,
    ForwardFails,
    InverseFails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub mode: ContinuityMode,
    pub status: IsoStatus,
    pub forward: Option<ContinuityReport>,
    pub inverse: Option<ContinuityReport>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.status == IsoStatus::Pass
    }
}

/// A bijection that is continuous with a continuous inverse, in `mode`.
pub fn check_isomorphism(
    h: &PointMap,
    domain: &ProximitySpace,
    codomain: &ProximitySpace,
    mode: ContinuityMode,
    cap: EnumerationCap,
) -> Result<IsomorphismReport> {
    h.check_fits(domain, codomain)?;
    let Some(inv) = h.inverse() else {
        return Ok(IsomorphismReport {
            mode,
            status: IsoStatus::NotBijective,
            forward: None,
            inverse: None,
        });
    };
    let forward = check_continuity(h, domain, codomain, mode, cap)?;
    let inverse = check_continuity(&inv, codomain, domain, mode, cap)?;
    let status = if !forward.passed() {
        IsoStatus::ForwardFails
    } else if !inverse.passed() {
        IsoStatus::InverseFails
    } else {
        IsoStatus::Pass
    };
    Ok(IsomorphismReport {
        mode,
        status,
        forward: Some(forward),
        inverse: Some(inverse),
    })
}

fn check_self_map(f: &PointMap, space: &ProximitySpace) -> Result<()> {
    f.check_fits(space, space)
}

/// `Φ(f(A)) ⊆ Φ(A)`.
pub fn is_desc_invariant(f: &PointMap, space: &ProximitySpace, a: Subset) -> Result<bool> {
    check_self_map(f, space)?;
    let probe = space.require_probe()?;
    a.check(space.len())?;
    let image = probe.description_mask(f.image(a));
    Ok(image & !probe.description_mask(a) == 0)
}

/// Every nonempty descriptively invariant subset, in ascending bitmask order.
pub fn invariant_subsets(
    f: &PointMap,
    space: &ProximitySpace,
    cap: EnumerationCap,
) -> Result<Vec<Subset>> {
    check_self_map(f, space)?;
    let probe = space.require_probe()?;
    cap.check(space.len())?;
    Ok(Subset::nonempty(space.len())
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&a| probe.description_mask(f.image(a)) & !probe.description_mask(a) == 0)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// Outcome of one closure property over a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub verdict: Verdict,
    /// Sets built and tested.
    pub checked: usize,
    /// Members combined to build the first non-invariant set, and that set.
    pub witness: Option<(Vec<Subset>, Subset)>,
}

impl PropertyCheck {
    fn from_failures(checked: usize, witness: Option<(Vec<Subset>, Subset)>) -> Self {
        PropertyCheck {
            verdict: if witness.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            checked,
            witness,
        }
    }

    fn inapplicable() -> Self {
        PropertyCheck {
            verdict: Verdict::Inapplicable,
            checked: 0,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub verdict: Verdict,
    /// First family member that is not itself invariant.
    pub non_invariant_member: Option<Subset>,
    /// Whether `f` is descriptively continuous on the space.
    pub descriptively_continuous: bool,
    pub pairwise_union: PropertyCheck,
    pub pairwise_intersection: PropertyCheck,
    pub family_union: PropertyCheck,
    pub family_intersection: PropertyCheck,
    pub closure: PropertyCheck,
    /// `A ∩_Φ B` for member pairs; reported only, not part of the verdict.
    pub pairwise_desc_intersection: PropertyCheck,
}

/// Checks that unions, intersections and descriptive closures of the
/// invariant sets in `family` are invariant.
pub fn invariance_closure_properties(
    f: &PointMap,
    space: &ProximitySpace,
    family: &[Subset],
) -> Result<ClosureReport> {
    check_self_map(f, space)?;
    let probe = space.require_probe()?;
    for a in family {
        a.check(space.len())?;
    }
    let invariant =
        |a: Subset| probe.description_mask(f.image(a)) & !probe.description_mask(a) == 0;
    let desc_continuous = (0..space.len()).all(|a| {
        (a + 1..space.len()).all(|b| {
            probe.class_of(a) != probe.class_of(b)
                || probe.class_of(f.apply(a)) == probe.class_of(f.apply(b))
        })
    });

    if let Some(&bad) = family.iter().find(|&&a| !invariant(a)) {
        return Ok(ClosureReport {
            verdict: Verdict::Inapplicable,
            non_invariant_member: Some(bad),
            descriptively_continuous: desc_continuous,
            pairwise_union: PropertyCheck::inapplicable(),
            pairwise_intersection: PropertyCheck::inapplicable(),
            family_union: PropertyCheck::inapplicable(),
            family_intersection: PropertyCheck::inapplicable(),
            closure: PropertyCheck::inapplicable(),
            pairwise_desc_intersection: PropertyCheck::inapplicable(),
        });
    }

    let pairwise = |combine: &(dyn Fn(Subset, Subset) -> Subset + Sync)| {
        let witness = (0..family.len()).into_par_iter().find_map_first(|i| {
            (i + 1..family.len()).find_map(|j| {
                let c = combine(family[i], family[j]);
                (!invariant(c)).then(|| (vec![family[i], family[j]], c))
            })
        });
        let pairs = family.len() * family.len().saturating_sub(1) / 2;
        PropertyCheck::from_failures(pairs, witness)
    };
    let pairwise_union = pairwise(&|a, b| a.union(b));
    let pairwise_intersection = pairwise(&|a, b| a.intersection(b));
    let pairwise_desc_intersection = pairwise(&|a, b| {
        let shared = probe.description_mask(a) & probe.description_mask(b);
        a.union(b).intersection(probe.members_of(shared))
    });

    let whole = |set: Subset| {
        PropertyCheck::from_failures(1, (!invariant(set)).then(|| (family.to_vec(), set)))
    };
    let family_union = whole(family.iter().fold(Subset::EMPTY, |acc, &a| acc.union(a)));
    let family_intersection = if family.is_empty() {
        PropertyCheck::from_failures(0, None)
    } else {
        whole(
            family
                .iter()
                .fold(space.full(), |acc, &a| acc.intersection(a)),
        )
    };
    let closure_witness = family.iter().find_map(|&a| {
        let cl = probe.members_of(probe.description_mask(a));
        (!invariant(cl)).then(|| (vec![a], cl))
    });
    let closure = PropertyCheck::from_failures(family.len(), closure_witness);

    let all_pass = [
        &pairwise_union,
        &pairwise_intersection,
        &family_union,
        &family_intersection,
        &closure,
    ]
    .iter()
    .all(|c| c.verdict == Verdict::Pass);
    Ok(ClosureReport {
        verdict: if all_pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        non_invariant_member: None,
        descriptively_continuous: desc_continuous,
        pairwise_union,
        pairwise_intersection,
        family_union,
        family_intersection,
        closure,
        pairwise_desc_intersection,
    })
}
