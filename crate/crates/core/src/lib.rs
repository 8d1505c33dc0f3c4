//! Exact exterior calculus on Darboux charts of multiphase space, and the
//! classification of hamiltonian vector fields for the multisymplectic form
//! `ω` on extended multiphase space and the polysymplectic form `ω̂` on
//! ordinary multiphase space.
//!
//! All types are generic over a coefficient [`Scalar`]; the aliases below fix
//! it to exact rationals, which is what the classifiers are meant for.

pub mod chart;
pub mod error;
pub mod field;
pub mod form;
pub mod homotopy;
pub mod linalg;
pub mod multisymplectic;
pub mod poly;
pub mod polysymplectic;
pub mod random;
pub mod scalar;
pub mod vvform;

pub use chart::{Chart, ChartKind, ChartRef, Coordinate, Point, Role};
pub use error::{Error, Result};
pub use field::VectorField;
pub use form::{DifferentialForm, MultiIndex, Witness};
pub use poly::{Monomial, Polynomial};
pub use scalar::Scalar;
pub use vvform::VectorValuedForm;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

pub type RationalPoly = Polynomial<Rational>;
pub type RationalForm = DifferentialForm<Rational>;
pub type RationalField = VectorField<Rational>;
pub type RationalVvForm = VectorValuedForm<Rational>;
pub type RationalPoint = Point<Rational>;

pub type F64Poly = Polynomial<f64>;
pub type F64Form = DifferentialForm<f64>;
pub type F64Field = VectorField<f64>;
