//! Exact computations deciding which prime orders occur in the plane Cremona
//! group over a perfect field, together with the lattice, torus and
//! birational-map arithmetic that backs each answer.

pub mod arith;
pub mod birmap;
pub mod bounds;
pub mod error;
pub mod field;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod selftest;
pub mod toric;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{cyclotomic_invariants, CyclotomicInvariants, FieldDescriptor};
