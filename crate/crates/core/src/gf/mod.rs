//! Finite-field arithmetic and linear algebra over it.

mod ext;
mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use ext::ExtField;
pub use field::{is_prime, prime_power, Field, MAX_ORDER};
pub use matrix::{Mat, Rref};
pub use poly::{is_irreducible, smallest_irreducible};
pub use subspace::Subspace;
