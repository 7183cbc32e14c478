//! Generating-function families: fiberwise critical sets, generated
//! Legendrians, Reeb chords via difference functions, time-derivative
//! bounds, and Cerf (singular Legendrian) diagrams.

pub mod field;
pub mod critical;

pub use critical::{fiberwise_critical_set, full_critical_points, CriticalPoint};
pub use field::{Axis, FamilyFn, GeneratingFunctionFamily, ScalarField, Tail};
