//! Combinatorial and numerical toolkit for symplectic trisections.
//!
//! The crate is organized by engine:
//!
//! - [`braid`]: Artin braid words, the free-group action used for braid
//!   equality, full-twist factorizations, trace closures and transverse
//!   self-linking.
//! - [`group`]: free-group words, Wirtinger presentations of tangles,
//!   longitude normal forms, the half-twist relation table and branched-cover
//!   monodromy.
//! - [`homology`]: planar diagrams, the Kauffman bracket, Khovanov homology,
//!   Lee homology and the Rasmussen `s`-invariant.
//! - [`trisect`]: torus diagrams, bridge-trisection records, homological
//!   formulas, homotopy normalization and adjunction verdicts.
//! - [`graft`]: grid-sampled differential forms and contact-positivity checks.
//! - [`toolcli`]: text formats, the command surface and corpus fixtures.
//!
//! Geometry and linear algebra are generic over the scalar type through
//! `num-traits`; the aliases below pin the instantiations used by the
//! command-line tool.

pub mod braid;
pub mod graft;
pub mod group;
pub mod homology;
pub mod scalar;
pub mod toolcli;
pub mod trisect;
pub mod verdict;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use verdict::{Provenance, Quantity, Status, Verdict};

/// Exact rational scalar used for torus-diagram coordinates.
pub type Rational = BigRational;

/// Torus diagram with exact rational coordinates.
pub type TorusDiagramQ = trisect::TorusDiagram<Rational>;
/// Torus diagram with floating-point coordinates.
pub type TorusDiagramF64 = trisect::TorusDiagram<f64>;

/// Differential forms on grid charts in double precision.
pub type FormField64 = graft::FormField<f64>;
/// Differential forms on grid charts in single precision.
pub type FormField32 = graft::FormField<f32>;

/// Bigraded Khovanov ranks over the rationals.
pub type RationalCoefficients = num_bigint::BigInt;
/// Coefficients in the two-element field.
pub type F2 = homology::Gf2;
