//! Exact coefficients: Laurent polynomials and rational functions over ℚ in the
//! commuting quantization parameters `p_ij`, `q` and the auxiliary `lambda`.

mod monomial;
mod poly;
mod rational;
mod var;

pub use monomial::Monomial;
pub use poly::{CanonicalFactor, Poly};
pub use rational::Scalar;
pub use var::Var;
