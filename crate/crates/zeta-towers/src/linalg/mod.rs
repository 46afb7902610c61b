//! Exact integer linear algebra: matrices, determinants, Smith normal
//! form, and characteristic polynomials. No floating point anywhere;
//! everything is `BigInt`/`BigRational` based and bit-for-bit
//! reproducible.

mod matrix;
mod poly;
mod snf;

pub use matrix::IntMatrix;
pub use poly::{
    char_poly, faddeev_leverrier, resultant, root_multiplicity_at_one, FlScalar, IntPoly,
};
pub use snf::{smith_normal_form, SnfResult};
