//! Milnor and Tjurina invariants of isolated hypersurface singularities,
//! computed exactly over the rationals.

pub mod error;
pub mod hull;
pub mod linalg;
pub mod milnor;
pub mod newton;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod report;
pub mod sectional;
pub mod stdbasis;

pub use error::{GermError, Result};
pub use poly::{Exponent, MonomialOrder, Polynomial, Rational, Term};
