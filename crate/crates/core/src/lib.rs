//! Permutation octics over odd finite fields: table-based field arithmetic,
//! sparse multivariate polynomials, Hermite-criterion systems, a Buchberger
//! Gröbner engine, exhaustive classification searches and nonexistence
//! certificates.

pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hermite;
pub mod mpoly;
pub mod nonexistence;
pub mod ppsearch;

pub use error::{Error, Result};
pub use field::{make_field, Felt, FieldCtx};
pub use mpoly::{MPoly, Monomial, MonomialOrder, PolyRing};
pub use ppsearch::{NormalizedPoly, OrbitClass, SearchMode};
