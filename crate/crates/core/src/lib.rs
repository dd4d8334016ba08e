//! Exact structure-constant computer algebra for nilpotent commutative
//! algebras and the hypersurfaces attached to Gorenstein ones.
//!
//! Everything is computed over the rationals with no rounding anywhere: a
//! finite-dimensional nilpotent algebra `m` arrives as a symmetric structure
//! table, and the crate derives its annihilator, duality data, hypersurface
//! graph polynomial, and explicit automorphism certificates from there.

pub mod affine;
pub mod algebra;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod homogeneity;
pub mod hypersurface;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod transport;

pub use affine::AffineMap;
pub use algebra::{Algebra, Element, GenElement, PolyElement, Subspace, ValidationReport};
pub use error::{Error, Result};
pub use hypersurface::{GraphPoly, Projection};
pub use matrix::{subspace_equal, LinearSolution, MatrixQ};
pub use poly::{Monomial, MultiPoly};
pub use scalar::Scalar;
