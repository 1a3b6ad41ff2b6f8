//! Exact computation with birings, plethories and their actions over the
//! rationals and small finite fields.

pub mod algebra;
pub mod biring;
pub mod compose;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod field;
pub mod idempotent;
pub mod linalg;
pub mod poly;
pub mod structure;

pub use algebra::{Algebra, AlgebraMap, AlgebraPres, FinAlgebra, Rule};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::{Monomial, Poly, PolyRing};
