//! Quantized feature vectors and probe maps.
//!
//! Feature values live on a fixed decimal grid `10^-e`, stored as integer
//! numerators, so descriptive equality is exact integer equality and is
//! transitive.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_POINTS};

/// Decimal grid `10^-exponent` shared by all features and coordinates of a workspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quantum {
    exponent: u32,
}

impl Quantum {
    pub const DEFAULT_EXPONENT: u32 = 6;
    pub const MAX_EXPONENT: u32 = 12;

    pub fn new(exponent: u32) -> Result<Self> {
        if exponent > Self::MAX_EXPONENT {
            return Err(Error::InvalidQuantum(exponent));
        }
        Ok(Quantum { exponent })
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    /// Number of grid steps per unit.
    pub fn scale(self) -> i64 {
        10i64.pow(self.exponent)
    }

    /// Parses a decimal literal (`-12`, `0.25`, `+3.`) onto the grid.
    ///
    /// Digits beyond the grid are rounded half away from zero.
    pub fn parse(self, text: &str) -> Result<i64> {
        let invalid = || Error::InvalidDecimal(text.to_string());
        let overflow = || Error::QuantizationOverflow(text.to_string());

        let s = text.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(invalid());
        }

        let e = self.exponent as usize;
        let mut value: i128 = 0;
        for b in int_part.bytes() {
            value = value * 10 + i128::from(b - b'0');
            if value > i128::from(i64::MAX) {
                return Err(overflow());
            }
        }
        let frac = frac_part.as_bytes();
        for i in 0..e {
            let digit = frac.get(i).map_or(0, |b| i128::from(b - b'0'));
            value = value * 10 + digit;
            if value > i128::from(i64::MAX) {
                return Err(overflow());
            }
        }
        if frac.get(e).is_some_and(|&b| b >= b'5') {
            value += 1;
        }
        if negative {
            value = -value;
        }
        i64::try_from(value).map_err(|_| overflow())
    }

    /// Snaps a float onto the grid.
    pub fn quantize_f64(self, x: f64) -> Result<i64> {
        let scaled = (x * self.scale() as f64).round();
        if !scaled.is_finite() || scaled.abs() >= i64::MAX as f64 {
            return Err(Error::QuantizationOverflow(x.to_string()));
        }
        Ok(scaled as i64)
    }

    /// Shortest decimal literal for a grid value; `parse(format(v)) == v`.
    pub fn format(self, value: i64) -> String {
        let scale = self.scale().unsigned_abs();
        let abs = value.unsigned_abs();
        let int = abs / scale;
        let frac = abs % scale;
        let sign = if value < 0 { "-" } else { "" };
        if frac == 0 {
            return format!("{sign}{int}");
        }
        let digits = format!("{frac:0width$}", width = self.exponent as usize);
        format!("{sign}{int}.{}", digits.trim_end_matches('0'))
    }

    pub fn to_f64(self, value: i64) -> f64 {
        value as f64 / self.scale() as f64
    }
}

impl Default for Quantum {
    fn default() -> Self {
        Quantum {
            exponent: Self::DEFAULT_EXPONENT,
        }
    }
}

/// A description `Φ(x)`: fixed-length tuple of grid values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureVector(Box<[i64]>);

impl FeatureVector {
    pub fn new(components: impl Into<Box<[i64]>>) -> Self {
        FeatureVector(components.into())
    }

    pub fn parse<S: AsRef<str>>(quantum: Quantum, components: &[S]) -> Result<Self> {
        components
            .iter()
            .map(|c| quantum.parse(c.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(FeatureVector::new)
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for FeatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FeatureVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// A total probe `Φ: X → Z^d` (grid numerators), with its equivalence classes.
///
/// Classes are numbered by first appearance in point order. A set's
/// description `Φ(A)` is carried internally as a bitmask over class ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeMap {
    dimension: usize,
    quantum: Quantum,
    table: Vec<FeatureVector>,
    class: Vec<u8>,
    members: Vec<Subset>,
}

impl ProbeMap {
    pub fn new(dimension: usize, quantum: Quantum, table: Vec<FeatureVector>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if table.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(table.len()));
        }
        if let Some(v) = table.iter().find(|v| v.dimension() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: v.dimension(),
            });
        }
        let mut reps: Vec<&FeatureVector> = Vec::new();
        let mut class = Vec::with_capacity(table.len());
        let mut members: Vec<Subset> = Vec::new();
        for (p, v) in table.iter().enumerate() {
            let id = match reps.iter().position(|r| *r == v) {
                Some(id) => id,
                None => {
                    reps.push(v);
                    members.push(Subset::EMPTY);
                    reps.len() - 1
                }
            };
            members[id].insert(p);
            class.push(id as u8);
        }
        Ok(ProbeMap {
            dimension,
            quantum,
            table,
            class,
            members,
        })
    }

    /// Builds a one-dimensional probe from integer labels on the default grid.
    pub fn from_labels(labels: &[i64]) -> Self {
        let q = Quantum::default();
        let table = labels
            .iter()
            .map(|&l| FeatureVector::new(vec![l * q.scale()]))
            .collect();
        ProbeMap::new(1, q, table).expect("labels form a valid probe")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn quantum(&self) -> Quantum {
        self.quantum
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn feature(&self, point: usize) -> &FeatureVector {
        &self.table[point]
    }

    pub fn features(&self) -> &[FeatureVector] {
        &self.table
    }

    pub fn class_of(&self, point: usize) -> usize {
        usize::from(self.class[point])
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    /// `Φ(A)` as a bitmask over class ids.
    #[inline]
    pub fn description_mask(&self, set: Subset) -> u64 {
        set.points().fold(0u64, |m, p| m | (1u64 << self.class[p]))
    }

    /// All points whose class bit is in `mask`.
    #[inline]
    pub fn members_of(&self, mask: u64) -> Subset {
        let mut out = Subset::EMPTY;
        let mut m = mask;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            out = out.union(self.members[c]);
        }
        out
    }

    /// `Φ(A)` as an ordered set of feature vectors.
    pub fn description(&self, set: Subset) -> BTreeSet<&FeatureVector> {
        set.points().map(|p| &self.table[p]).collect()
    }

    /// Probe on a relabeled ground set: point `perm[x]` receives `Φ(x)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ProbeMap> {
        let mut table = vec![FeatureVector::new(Vec::new()); self.len()];
        for (x, &y) in perm.iter().enumerate() {
            table[y] = self.table[x].clone();
        }
        ProbeMap::new(self.dimension, self.quantum, table)
    }
}
