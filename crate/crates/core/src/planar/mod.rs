//! Planar laboratory: immersed loops, areas, Legendrian lifts into the
//! contactization, Reeb-chord detection, the small-energy disjoinment
//! family, and the annulus framing computation.

pub mod loops;
pub mod lift;

pub use lift::{legendrian_lift, LegendrianLift, LiftTarget};
pub use loops::{cross, liouville, ImmersedLoop, LoopFamily};
