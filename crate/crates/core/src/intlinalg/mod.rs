//! Exact integer and Laurent-polynomial linear algebra.

mod laurent;
mod matrix;
mod snf;

pub use laurent::{det_laurent, exact_divide, LaurentMatrix, LaurentPoly};
pub use matrix::{big_to_json, IntMatrix};
pub use snf::{cokernel, hermite_normal_form, integer_kernel, smith_normal_form, AbelianGroup};
