//! osclab-core: a numerical laboratory for quantitative contact topology.
//!
//! The crate is organized around a handful of explicit model spaces:
//!
//! * [`grid`], [`spline`] — quadrature, differencing, interpolation;
//! * [`space`], [`isotopy`] — model contact forms and sampled Legendrian
//!   isotopies;
//! * [`energy`] — contact Hamiltonians, length/oscillation energies, and the
//!   Lagrangian flux-primitive picture for planar loop families;
//! * [`genfun`] — generating-function families, critical sets, Reeb chords
//!   via difference functions, Cerf diagrams;
//! * [`persistence`] — relative sublevel barcodes over ℤ/2, value-ordered
//!   pairings, longest-bar tracking and the disjoinment energy bound;
//! * [`planar`] — immersed loops, Legendrian lifts, chord detection, the
//!   small-energy disjoinment family, and the annulus framing count;
//! * [`lifting`] — Lagrangian tetragons, product-contactization lifts,
//!   strict lifted flows and rescaling conjugation;
//! * [`scenario`] — the JSON scenario runner behind the CLI.

pub mod error;
pub mod grid;
pub mod spline;
pub mod space;
pub mod isotopy;
pub mod energy;
pub mod planar;
pub mod genfun;

pub use error::{Error, Result};
