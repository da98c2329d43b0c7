//! Polynomials and polynomial matrices over a finite field.

mod matrix;
mod poly;
mod popov;
mod smith;

pub use matrix::{combinations, PolyMatrix};
pub use poly::{gcd, Poly};
pub use popov::{code_equal, forney_indices, is_popov, pivot_column, popov_form, popov_with_transform, weak_popov};
pub use smith::{is_basic, right_inverse, smith_form, SmithForm};
