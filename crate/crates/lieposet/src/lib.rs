//! Lie poset algebras in the classical types: construction, certified index
//! computation, the height ≤ 2 Frobenius classification, order-complex
//! homology with discrete Morse certificates, and principal-element spectra.

pub mod algebra;
pub mod atlas;
pub mod error;
pub mod frobenius;
pub mod index;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod spectrum;
pub mod topology;

pub use algebra::{LiePosetAlgebra, Variant};
pub use error::{Error, Result};
pub use poset::{Poset, SignedPoset};
