//! Finite fields GF(p^s), their automorphisms, and exact linear algebra.

mod field;
mod gl;
mod matrix;

pub use field::{is_prime, Automorphism, Elem, Field, MAX_FIELD_ORDER};
pub use gl::{enumerate_invertible, gl_order, InvertibleMatrices};
pub use matrix::{Echelon, FieldMatrix};

/// Hamming weight of a vector.
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}
