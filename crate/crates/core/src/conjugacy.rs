//! Exact, descriptive and weak conjugacy of proximal dynamical systems.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{scan_fixed_subsets, tag_counts, FixedClass, FixedTag};
use crate::error::{Error, Result};
use crate::maps::{
    check_continuity, check_isomorphism, ContinuityMode, IsoStatus, PointMap, Verdict,
};
use crate::space::ProximitySpace;
use crate::subset::{EnumerationCap, Subset, SubsetDomain};

/// Largest ground set [`search_conjugacy`] will enumerate bijections of.
pub const SEARCH_LIMIT: usize = 8;

/// A self-map of a proximity space.
#[derive(Debug, Clone, Copy)]
pub struct DynamicalSystem<'a> {
    pub space: &'a ProximitySpace,
    pub map: &'a PointMap,
}

impl<'a> DynamicalSystem<'a> {
    pub fn new(space: &'a ProximitySpace, map: &'a PointMap) -> Result<Self> {
        map.check_fits(space, space)?;
        Ok(DynamicalSystem { space, map })
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjugacyMode {
    /// `g∘h = h∘f`.
    Exact,
    /// `Φ₂(g∘h(A)) = Φ₂(h∘f(A))`.
    Descriptive,
    /// `g∘h(A) δ₂ h∘f(A)`.
    Weak,
    /// `g∘h(A) δ_Φ₂ h∘f(A)`.
    WeakDescriptive,
}

impl ConjugacyMode {
    pub const ALL: [ConjugacyMode; 4] = [
        ConjugacyMode::Exact,
        ConjugacyMode::Descriptive,
        ConjugacyMode::Weak,
        ConjugacyMode::WeakDescriptive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConjugacyMode::Exact => "EXACT",
            ConjugacyMode::Descriptive => "DESCRIPTIVE",
            ConjugacyMode::Weak => "WEAK",
            ConjugacyMode::WeakDescriptive => "WEAK_DESCRIPTIVE",
        }
    }

    pub fn parse(s: &str) -> Option<ConjugacyMode> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "EXACT" => Some(ConjugacyMode::Exact),
            "DESCRIPTIVE" => Some(ConjugacyMode::Descriptive),
            "WEAK" => Some(ConjugacyMode::Weak),
            "WEAK_DESCRIPTIVE" => Some(ConjugacyMode::WeakDescriptive),
            _ => None,
        }
    }

    /// Continuity notion for `h`, `f` and `g` in this mode.
    pub fn continuity(self) -> ContinuityMode {
        match self {
            ConjugacyMode::Exact | ConjugacyMode::Weak => ContinuityMode::Proximal,
            ConjugacyMode::Descriptive | ConjugacyMode::WeakDescriptive => {
                ContinuityMode::Descriptive
            }
        }
    }

    pub fn is_descriptive(self) -> bool {
        self.continuity() == ContinuityMode::Descriptive
    }

    pub fn is_weak(self) -> bool {
        matches!(self, ConjugacyMode::Weak | ConjugacyMode::WeakDescriptive)
    }

    /// Whether `left` and `right` (subsets of `space`) are related in this mode.
    fn relates(self, space: &ProximitySpace, left: Subset, right: Subset) -> bool {
        match self {
            ConjugacyMode::Exact => left == right,
            ConjugacyMode::Descriptive => {
                let p = space.probe().expect("probe checked");
                p.description_mask(left) == p.description_mask(right)
            }
            ConjugacyMode::Weak => space.set_near_unchecked(left, right),
            ConjugacyMode::WeakDescriptive => {
                let p = space.probe().expect("probe checked");
                p.description_mask(left) & p.description_mask(right) != 0
            }
        }
    }

    /// Weak relations are false on `∅`, so weak modes quantify over nonempty sets.
    fn skips_empty(self) -> bool {
        self.is_weak()
    }
}

/// `Φ₁(f(A)) = Φ₁(h⁻¹gh(A))` over `X` and `Φ₂(g(C)) = Φ₂(hfh⁻¹(C))` over `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub domain_witness: Option<Subset>,
    pub codomain_witness: Option<Subset>,
}

impl DiagramCheck {
    pub fn passed(&self) -> bool {
        self.domain_witness.is_none() && self.codomain_witness.is_none()
    }
}

/// The condition with `X` and `Y` swapped: `f∘h⁻¹(C)` related to `h⁻¹∘g(C)` in `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseCheck {
    pub passed: bool,
    pub witness: Option<Subset>,
}

/// How often `g∘h(A) ∩_Φ h∘f(A)` is nonempty over the checked sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescIntersectionCheck {
    pub nonempty: usize,
    pub first_empty: Option<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyCertificate {
    pub mode: ConjugacyMode,
    pub h: Vec<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub isomorphism: IsoStatus,
    pub f_continuous: bool,
    pub g_continuous: bool,
    /// Iteration depth verified; `1` for the defining identity.
    pub checked_n: usize,
    pub checked_subsets: usize,
    pub exhaustive: bool,
    /// First `A` violating the mode's condition.
    pub witness: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<InverseCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub desc_intersection: Option<DescIntersectionCheck>,
}

impl ConjugacyCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn require_probes(mode: ConjugacyMode, x: &ProximitySpace, y: &ProximitySpace) -> Result<()> {
    if mode.is_descriptive() {
        x.require_probe()?;
        y.require_probe()?;
    }
    Ok(())
}

fn check_sizes(x: &DynamicalSystem<'_>, y: &DynamicalSystem<'_>, h: &PointMap) -> Result<()> {
    h.check_fits(x.space, y.space)
}

/// Verifies `h` as a conjugacy from `(X, f)` to `(Y, g)` in `mode`.
///
/// Preconditions, checked in the mode's continuity sense: `h` is an
/// isomorphism and `f`, `g` are continuous. If any fails the verdict is
/// `INAPPLICABLE`. Above the enumeration cap the subset domain is sampled
/// with `seed`.
pub fn verify_conjugacy(
    x: DynamicalSystem<'_>,
    y: DynamicalSystem<'_>,
    h: &PointMap,
    mode: ConjugacyMode,
    cap: EnumerationCap,
    seed: u64,
) -> Result<ConjugacyCertificate> {
    check_sizes(&x, &y, h)?;
    require_probes(mode, x.space, y.space)?;
    let cm = mode.continuity();
    let iso = check_isomorphism(h, x.space, y.space, cm, cap)?;
    let f_continuous = check_continuity(x.map, x.space, x.space, cm, cap)?.passed();
    let g_continuous = check_continuity(y.map, y.space, y.space, cm, cap)?.passed();
    let domain = SubsetDomain::new(x.len(), cap, seed)?;
    let mut cert = ConjugacyCertificate {
        mode,
        h: h.table().to_vec(),
        verdict: Verdict::Inapplicable,
        reason: None,
        isomorphism: iso.status,
        f_continuous,
        g_continuous,
        checked_n: 1,
        checked_subsets: 0,
        exhaustive: domain.is_exhaustive(),
        witness: None,
        diagram: None,
        inverse: None,
        desc_intersection: None,
    };
    let reason = if !iso.passed() {
        Some(format!("h is not an isomorphism ({:?})", iso.status))
    } else if !f_continuous {
        Some("f is not continuous".to_string())
    } else if !g_continuous {
        Some("g is not continuous".to_string())
    } else {
        None
    };
    if reason.is_some() {
        cert.reason = reason;
        return Ok(cert);
    }
    let h_inv = h.inverse().expect("isomorphisms are bijective");

    let subsets: Vec<Subset> = domain
        .iter()
        .filter(|a| !(mode.skips_empty() && a.is_empty()))
        .collect();
    cert.checked_subsets = subsets.len();
    cert.witness = if mode == ConjugacyMode::Exact {
        (0..x.len())
            .find(|&p| y.map.apply(h.apply(p)) != h.apply(x.map.apply(p)))
            .map(Subset::singleton)
    } else {
        first_failure(&subsets, |a| {
            mode.relates(y.space, y.map.image(h.image(a)), h.image(x.map.image(a)))
        })
    };
    cert.verdict = if cert.witness.is_none() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    if mode == ConjugacyMode::Descriptive {
        let (p1, p2) = (
            x.space.probe().expect("probed"),
            y.space.probe().expect("probed"),
        );
        let y_domain = SubsetDomain::new(y.len(), cap, seed)?.to_vec();
        cert.diagram = Some(DiagramCheck {
            domain_witness: first_failure(&subsets, |a| {
                p1.description_mask(x.map.image(a))
                    == p1.description_mask(h_inv.image(y.map.image(h.image(a))))
            }),
            codomain_witness: first_failure(&y_domain, |c| {
                p2.description_mask(y.map.image(c))
                    == p2.description_mask(h.image(x.map.image(h_inv.image(c))))
            }),
        });
    }
    if mode.is_weak() {
        let y_domain: Vec<Subset> = SubsetDomain::new(y.len(), cap, seed)?
            .iter()
            .filter(|c| !c.is_empty())
            .collect();
        let witness = first_failure(&y_domain, |c| {
            mode.relates(
                x.space,
                x.map.image(h_inv.image(c)),
                h_inv.image(y.map.image(c)),
            )
        });
        cert.inverse = Some(InverseCheck {
            passed: witness.is_none(),
            witness,
        });
        if let Some(p2) = y.space.probe() {
            let meets = |a: Subset| {
                p2.description_mask(y.map.image(h.image(a)))
                    & p2.description_mask(h.image(x.map.image(a)))
                    != 0
            };
            cert.desc_intersection = Some(DescIntersectionCheck {
                nonempty: subsets.par_iter().filter(|&&a| meets(a)).count(),
                first_empty: first_failure(&subsets, meets),
            });
        }
    }
    Ok(cert)
}

fn first_failure(subsets: &[Subset], holds: impl Fn(Subset) -> bool + Sync) -> Option<Subset> {
    subsets.par_iter().copied().find_first(|&a| !holds(a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub mode: ConjugacyMode,
    pub verdict: Verdict,
    pub max_n: usize,
    pub checked_subsets: usize,
    pub exhaustive: bool,
    /// First `(A, n)` where the iterate identity fails.
    pub witness: Option<(Subset, usize)>,
}

/// Checks the mode's identity between `h(fⁿ(A))` and `gⁿ(h(A))` for every
/// checked `A` and `1 ≤ n ≤ max_n`. Inapplicable unless `h` verifies.
pub fn transfer_iterates(
    x: DynamicalSystem<'_>,
    y: DynamicalSystem<'_>,
    h: &PointMap,
    mode: ConjugacyMode,
    max_n: usize,
    cap: EnumerationCap,
    seed: u64,
) -> Result<TransferReport> {
    let cert = verify_conjugacy(x, y, h, mode, cap, seed)?;
    let domain = SubsetDomain::new(x.len(), cap, seed)?;
    let mut report = TransferReport {
        mode,
        verdict: Verdict::Inapplicable,
        max_n,
        checked_subsets: 0,
        exhaustive: domain.is_exhaustive(),
        witness: None,
    };
    if !cert.passed() {
        return Ok(report);
    }
    let subsets: Vec<Subset> = domain
        .iter()
        .filter(|a| !(mode.skips_empty() && a.is_empty()))
        .collect();
    report.checked_subsets = subsets.len();
    report.witness = subsets.par_iter().find_map_first(|&a| {
        let (mut fa, mut ga) = (a, h.image(a));
        (1..=max_n).find_map(|n| {
            fa = x.map.image(fa);
            ga = y.map.image(ga);
            (!mode.relates(y.space, h.image(fa), ga)).then_some((a, n))
        })
    });
    report.verdict = if report.witness.is_none() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// A subset whose tag differs from the tag of its image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TagMismatch {
    pub source: FixedClass,
    pub image: FixedClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedTransferReport {
    pub verdict: Verdict,
    pub checked_subsets: usize,
    pub mismatch: Option<TagMismatch>,
    pub domain_counts: Vec<(FixedTag, usize)>,
    pub codomain_counts: Vec<(FixedTag, usize)>,
    /// `A ↦ h(A)` maps each tagged family of `f` onto that of `g`.
    pub families_bijective: bool,
}

/// Checks that `h(A)` carries the tag (and iterate witness) of `A` for every
/// nonempty `A`, and that `h` matches the tagged families. Requires a
/// verified descriptive conjugacy.
pub fn transfer_fixed_subsets(
    x: DynamicalSystem<'_>,
    y: DynamicalSystem<'_>,
    h: &PointMap,
    cap: EnumerationCap,
) -> Result<FixedTransferReport> {
    let cert = verify_conjugacy(x, y, h, ConjugacyMode::Descriptive, cap, 0)?;
    if !cert.passed() {
        return Ok(FixedTransferReport {
            verdict: Verdict::Inapplicable,
            checked_subsets: 0,
            mismatch: None,
            domain_counts: Vec::new(),
            codomain_counts: Vec::new(),
            families_bijective: false,
        });
    }
    let fx = scan_fixed_subsets(x.map, x.space, None, cap)?;
    let gy = scan_fixed_subsets(y.map, y.space, None, cap)?;
    // scans are in bitmask order over nonempty sets: C sits at index C - 1
    let class_of = |c: Subset| &gy[c.bits() as usize - 1];
    let mismatch = fx.iter().find_map(|a| {
        let image = class_of(h.image(a.subset));
        (image.tag != a.tag || image.witness_n != a.witness_n).then_some(TagMismatch {
            source: *a,
            image: *image,
        })
    });
    let families_bijective = [
        FixedTag::FixedDesc,
        FixedTag::EventuallyFixedDesc,
        FixedTag::AlmostFixedDesc,
        FixedTag::None,
    ]
    .iter()
    .all(|&t| {
        let mapped: BTreeSet<Subset> = fx
            .iter()
            .filter(|c| c.tag == t)
            .map(|c| h.image(c.subset))
            .collect();
        let target: BTreeSet<Subset> = gy.iter().filter(|c| c.tag == t).map(|c| c.subset).collect();
        mapped == target
    });
    let domain_counts = tag_counts(&fx);
    let codomain_counts = tag_counts(&gy);
    let ok = mismatch.is_none() && families_bijective && domain_counts == codomain_counts;
    Ok(FixedTransferReport {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        checked_subsets: fx.len(),
        mismatch,
        domain_counts,
        codomain_counts,
        families_bijective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub mode: ConjugacyMode,
    pub certificate: Option<ConjugacyCertificate>,
    /// Bijections examined before stopping.
    pub tried: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Rearranges `perm` into the next permutation in lexicographic order.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| perm[j] > perm[i])
        .expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Returns the lexicographically first bijection `h` verifying as a
/// conjugacy in `mode`, if any.
pub fn search_conjugacy(
    x: DynamicalSystem<'_>,
    y: DynamicalSystem<'_>,
    mode: ConjugacyMode,
    cap: EnumerationCap,
    seed: u64,
) -> Result<SearchResult> {
    let n = x.len();
    if n.max(y.len()) > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { n: n.max(y.len()) });
    }
    require_probes(mode, x.space, y.space)?;
    let none = |tried, reason: &str| SearchResult {
        mode,
        certificate: None,
        tried,
        reason: Some(reason.to_string()),
    };
    if n != y.len() {
        return Ok(none(0, "ground sets differ in size"));
    }
    let cm = mode.continuity();
    if !check_continuity(x.map, x.space, x.space, cm, cap)?.passed() {
        return Ok(none(0, "f is not continuous"));
    }
    if !check_continuity(y.map, y.space, y.space, cm, cap)?.passed() {
        return Ok(none(0, "g is not continuous"));
    }
    let subsets: Vec<Subset> = SubsetDomain::new(n, cap, seed)?
        .iter()
        .filter(|a| !(mode.skips_empty() && a.is_empty()))
        .collect();
    // cheap necessary conditions; survivors get the full verification
    let plausible = |h: &PointMap, inv: &PointMap| {
        preserves_pointwise(h, x.space, y.space, cm)
            && preserves_pointwise(inv, y.space, x.space, cm)
            && subsets
                .iter()
                .all(|&a| mode.relates(y.space, y.map.image(h.image(a)), h.image(x.map.image(a))))
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        let h = PointMap::new(n, perm.clone())?;
        let inv = h.inverse().expect("permutations are bijective");
        if !plausible(&h, &inv) {
            if !next_permutation(&mut perm) {
                return Ok(none(tried, "no bijection verifies"));
            }
            continue;
        }
        let cert = verify_conjugacy(x, y, &h, mode, cap, seed)?;
        if cert.passed() {
            return Ok(SearchResult {
                mode,
                certificate: Some(cert),
                tried,
                reason: None,
            });
        }
        if !next_permutation(&mut perm) {
            return Ok(none(tried, "no bijection verifies"));
        }
    }
}

/// Point-level continuity of `h` in the sense of `mode`.
fn preserves_pointwise(
    h: &PointMap,
    domain: &ProximitySpace,
    codomain: &ProximitySpace,
    mode: ContinuityMode,
) -> bool {
    match mode {
        ContinuityMode::Proximal => domain
            .edges()
            .iter()
            .all(|&(a, b)| codomain.near_points(h.apply(a), h.apply(b))),
        ContinuityMode::Descriptive => {
            let (p1, p2) = (
                domain.probe().expect("probed"),
                codomain.probe().expect("probed"),
            );
            (0..domain.len()).all(|a| {
                (a + 1..domain.len()).all(|b| {
                    p1.class_of(a) != p1.class_of(b)
                        || p2.class_of(h.apply(a)) == p2.class_of(h.apply(b))
                })
            })
        }
    }
}
