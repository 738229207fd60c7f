//! Partial elimination ideals, Koszul-homology Betti tables and inner
//! projections of projective varieties over prime fields.

pub mod error;
pub mod corpus;
pub mod field;
pub mod geometry;
pub mod grading;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod linear_change;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod pei;
pub mod poly;
pub mod tor;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use field::{PrimeField, DEFAULT_CHAR};
pub use linear_change::LinearChange;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{Polynomial, Ring};
