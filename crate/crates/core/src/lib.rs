//! Exact computation in character Hopf algebras.
//!
//! Coefficients are Laurent polynomials over the rationals in the quantum parameters
//! `p_ij` (and `q`, `lambda`), with factored denominators. On top of that sit
//!
//! - Gauss polynomials and q-factorials ([`qcalc`]),
//! - the skew group algebra `G⟨X⟩`, skew brackets and q-Serre polynomials ([`freealg`]),
//! - the coproduct, its braided form and the closed coproduct displays ([`hopf`]),
//! - quantum shuffles and the map `Ω` ([`shuffle`]),
//! - the G2 specialization and its checks ([`g2`]),
//! - a small expression language ([`expr`]) and text / LaTeX / JSON output ([`render`]).
//!
//! [`suite`] collects the named identity checks used by the `qhopf verify` command.
//!
//! ```
//! use qhopf::{Engine, render::tensor_text};
//!
//! let e = Engine::free(2);
//! let u = e.serre_left(1, 2, 1).unwrap();
//! assert_eq!(
//!     tensor_text(&e.coproduct_free(&u)),
//!     "x1x2 (x) 1 - p12*x2x1 (x) 1 + (1 - p12*p21)*g1*x2 (x) x1 + g1g2 (x) x1x2 - p12*g1g2 (x) x2x1"
//! );
//! ```

pub mod chargroup;
pub mod error;
pub mod expr;
pub mod freealg;
pub mod g2;
pub mod hopf;
pub mod linear;
pub mod qcalc;
pub mod render;
pub mod scalar;
pub mod shuffle;
pub mod suite;

pub use chargroup::{grading, GroupElement, Mode, Params, Word};
pub use error::{Error, Result};
pub use freealg::{Engine, FreeElement, GroupWord, SkewElement};
pub use hopf::{BraidedTensor, ClosedKind, TensorElement};
pub use linear::Linear;
pub use scalar::{Monomial, Poly, Scalar, Var};
pub use shuffle::ShuffleElement;
