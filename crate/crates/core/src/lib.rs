//! Cut-and-project model sets, Meyer sets, and arithmetic progressions,
//! built on exact quadratic arithmetic.
//!
//! The golden scheme (`Z(1,1) + Z(tau, tau')` with the Galois star map)
//! is fully exact: enumeration, window membership, and progression
//! checks never consult floating point. Numeric schemes over rational
//! lattice bases are exact relative to their stored data, with a guard
//! band flagging points near window boundaries.

pub mod cps;
pub mod density;
pub mod error;
pub mod export;
mod fixed;
pub mod golden;
pub mod meyer;
pub mod point_set;
pub mod progressions;
pub mod vdw;
pub mod window;

pub use cps::{enumerate_model_set, is_member, star, CpsDescriptor, NumericCps};
pub use error::{Error, Result};
pub use golden::{GoldenInt, GoldenRat, Rat};
pub use point_set::{
    Membership,
    covering_radius_estimate, min_gap, Coords, LatticeCoords, PointEntry, PointSet, Provenance,
};
pub use window::{Region, Window};
