//! Finite descriptive proximity spaces, planar vortex complexes, free group
//! representations with invariant means, and proximal conjugacy checks.

pub mod axioms;
pub mod complex;
pub mod conjugacy;
pub mod dynamics;
pub mod error;
pub mod feature;
pub mod freegroup;
pub mod geometry;
pub mod maps;
pub mod mean;
pub mod space;
pub mod subset;
pub mod svg;

pub use complex::{build_vortex, ComplexDraft, PlanarVortex, VortexError};
pub use conjugacy::{ConjugacyMode, DynamicalSystem};
pub use error::{Error, Result};
pub use feature::{FeatureVector, ProbeMap, Quantum};
pub use maps::PointMap;
pub use space::ProximitySpace;
pub use subset::{EnumerationCap, Subset, SubsetDomain};
