//! Families of G-constellations on toric resolutions of `C^n / G`.
//!
//! For a finite abelian group `G` acting diagonally on `C^n` and a fan of
//! basic cones resolving the quotient, this crate computes G-Weil divisor
//! data on the rays of the fan and classifies every deformation of the
//! generic orbit through its normalized reductor set. All arithmetic is
//! exact.
//!
//! ```
//! use reductor_core::{exact::rat, family, GroupData, Fan};
//!
//! let g = GroupData::cyclic(3, &[1, 2]).unwrap();
//! let rays = vec![
//!     vec![rat(1, 1), rat(0, 1)],
//!     vec![rat(0, 1), rat(1, 1)],
//!     vec![rat(1, 3), rat(2, 3)],
//!     vec![rat(2, 3), rat(1, 3)],
//! ];
//! let fan = Fan::new(g, rays, vec![vec![0, 3], vec![3, 2], vec![2, 1]]).unwrap();
//! let canonical = family::canonical_family(&fan);
//! assert!(family::check_reductor(&fan, &canonical).passed());
//! ```

pub mod catalog;
pub mod error;
pub mod exact;
pub mod family;
pub mod gdivisor;
pub mod group;
pub mod json;
pub mod toric;

pub use error::{DivisorError, ExactError, FamilyError, GroupError, ToricError};
pub use exact::{frac, IntVector, RatMatrix, RatVector, Rational};
pub use family::{PerRayTable, QuiverRep, ReductorPiece, ReductorSet};
pub use gdivisor::{GCartierDivisor, GWeilDivisor};
pub use group::{Character, GroupData};
pub use toric::{Cone, Fan, FanReport, Lattice, Ray};
