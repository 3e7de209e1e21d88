//! Arithmetical meadows: terms over the inversive and divisive meadow
//! signatures (with and without `0` and `-`), their equational theories,
//! canonical forms, decision procedures for derivability, exact rational
//! semantics and partial variants.
//!
//! ```
//! use meadow::{decide, syntax::parse_term};
//!
//! let lhs = parse_term("(x * y)^-1").unwrap();
//! let rhs = parse_term("x^-1 * y^-1").unwrap();
//! assert!(decide::decide_iamd(&lhs, &rhs).unwrap().verdict);
//! ```

pub mod decide;
pub mod error;
pub mod eval;
pub mod gen;
pub mod normalize;
pub mod partial;
pub mod poly;
pub mod serial;
pub mod syntax;
pub mod term;
pub mod theory;
pub mod translate;

pub use error::{Error, Result};
pub use term::{SignatureId, Term};
pub use theory::TheoryId;
