//! Exact-arithmetic engine for deciding displaceability of Lagrangian toric
//! fibers over rational moment polygons.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in a certification path. The crate is organized
//! around certificates: a verdict stronger than `UNKNOWN` always carries a
//! witness object (a probe, a deflected probe, or a unit-point critical
//! system) that re-verifies independently of how it was found.

pub mod affine;
pub mod classify;
pub mod lp;
pub mod polygon;
pub mod probes;
pub mod qw;
pub mod rat;
pub mod render;
pub mod resolutions;

pub use affine::{AffineReflection, IVec2, RVec2};
pub use polygon::{Closure, HalfSpace, Polygon};
pub use rat::{Dist, Rat};
