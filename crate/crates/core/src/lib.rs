//! Exact-arithmetic laboratory for compatibility and orthogonal apartments
//! in Grassmannians of a finite-dimensional complex Hilbert space.
//!
//! Scalars are Gaussian rationals, so every check is decided exactly.

pub mod apartment;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod logic;
pub mod scalar;
pub mod transform;

pub use apartment::{coordinatize, GeometricApartment};
pub use combinatorics::{ApartmentShape, IndexMember, PairDescriptor};
pub use error::{Error, Result};
pub use linalg::{hermitian_inner, CVector, Matrix, Subspace};
pub use logic::{analyze_compatible_family, extend_pair_to_orthogonal_base, is_compatible, minimal_intersections};
pub use scalar::GaussianRational;
pub use transform::{ExactUnitary, MapFixture};
