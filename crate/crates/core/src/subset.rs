//! Bitmask subsets of a finite ground set and the enumeration policy shared by
//! every exhaustive check.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set representable by a [`Subset`].
pub const MAX_POINTS: usize = 64;

/// A subset of a ground set `{0, .., n-1}`; bit `i` set means point `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(point: usize) -> Subset {
        Subset(1u64 << point)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Subset {
        Subset(points.into_iter().fold(0, |m, p| m | (1u64 << p)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, point: usize) -> bool {
        point < MAX_POINTS && self.0 & (1u64 << point) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn insert(&mut self, point: usize) {
        self.0 |= 1u64 << point;
    }

    /// Members in ascending order.
    pub fn points(self) -> Points {
        Points(self.0)
    }

    /// True when every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub fn check(self, n: usize) -> Result<Subset> {
        if self.fits(n) {
            Ok(self)
        } else {
            Err(Error::MalformedSubset { mask: self.0, n })
        }
    }

    /// All `2^n` subsets in ascending bitmask order. Requires `n < 64`.
    pub fn all(n: usize) -> impl DoubleEndedIterator<Item = Subset> + Clone {
        assert!(n < MAX_POINTS, "cannot enumerate 2^{n} subsets");
        (0..1u64 << n).map(Subset)
    }

    /// All nonempty subsets in ascending bitmask order.
    pub fn nonempty(n: usize) -> impl DoubleEndedIterator<Item = Subset> + Clone {
        assert!(n < MAX_POINTS, "cannot enumerate 2^{n} subsets");
        (1..1u64 << n).map(Subset)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points())
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_points(iter)
    }
}

/// Iterator over the members of a [`Subset`].
#[derive(Clone)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

/// Upper bound on ground-set size for operations that quantify over `2^X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(usize);

impl EnumerationCap {
    pub const DEFAULT: usize = 16;
    pub const HARD_LIMIT: usize = 20;

    pub fn new(cap: usize) -> Result<Self> {
        if cap > Self::HARD_LIMIT {
            Err(Error::CapTooLarge(cap))
        } else {
            Ok(EnumerationCap(cap))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn allows(self, n: usize) -> bool {
        n <= self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if self.allows(n) {
            Ok(())
        } else {
            Err(Error::CapExceeded { n, cap: self.0 })
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(Self::DEFAULT)
    }
}

/// Number of random subsets drawn when a ground set is above the cap.
pub const SAMPLE_SIZE: usize = 4096;

/// Subsets a universally quantified check ranges over.
///
/// Within the cap this is every subset. Above it, the domain is the empty set,
/// the full set, every singleton, and [`SAMPLE_SIZE`] subsets drawn uniformly
/// from a ChaCha8 stream seeded with `seed`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetDomain {
    Exhaustive(usize),
    Sampled(Vec<Subset>),
}

impl SubsetDomain {
    pub fn new(n: usize, cap: EnumerationCap, seed: u64) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        if cap.allows(n) {
            return Ok(SubsetDomain::Exhaustive(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = Subset::full(n);
        let mut sample: Vec<Subset> = Vec::with_capacity(SAMPLE_SIZE + n + 2);
        sample.push(Subset::EMPTY);
        sample.push(full);
        sample.extend((0..n).map(Subset::singleton));
        sample.extend((0..SAMPLE_SIZE).map(|_| Subset(rng.gen::<u64>() & full.0)));
        sample.sort_unstable();
        sample.dedup();
        Ok(SubsetDomain::Sampled(sample))
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, SubsetDomain::Exhaustive(_))
    }

    pub fn len(&self) -> usize {
        match self {
            SubsetDomain::Exhaustive(n) => 1usize << n,
            SubsetDomain::Sampled(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in ascending bitmask order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Subset> + '_> {
        match self {
            SubsetDomain::Exhaustive(n) => Box::new(Subset::all(*n)),
            SubsetDomain::Sampled(v) => Box::new(v.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<Subset> {
        self.iter().collect()
    }
}
