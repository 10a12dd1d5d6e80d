//! Multilinear identities, operad dimensions and Koszul duals for
//! nonassociative algebras with one or two bilinear operations, with exact
//! arithmetic over `Q` and `Q(d)`.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod operad;
pub mod scalar;
pub mod term;
pub mod variety;

pub use scalar::{Rational, RationalFunction, Scalar};

/// Identity with coefficients in `Q(d)`, as parsed from text.
pub type Identity = term::Element<RationalFunction>;
/// Identity with rational coefficients.
pub type RationalIdentity = term::Element<Rational>;
/// Consequence space over `Q`, for a specialized parameter.
pub type RationalSpace = variety::ConsequenceSpace<Rational>;
/// Consequence space over `Q(d)`.
pub type GenericSpace = variety::ConsequenceSpace<RationalFunction>;
pub type RationalPresentation = operad::QuadraticPresentation<Rational>;
pub type GenericPresentation = operad::QuadraticPresentation<RationalFunction>;
