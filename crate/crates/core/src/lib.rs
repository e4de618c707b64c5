//! Arbitrary-precision kernels for two-term Machin-like formulas for pi.
//!
//! The crate is `no_std` (it needs `alloc`). Module map:
//!
//! - [`numeric`]: exact integers/rationals, Gaussian rationals, precision
//!   contexts, binary reals with directed rounding and intervals.
//! - [`radical`]: nested radicals `a_k` and the certified coefficients
//!   `alpha_k = floor(a_k / sqrt(2 - a_(k-1)))`.
//! - [`alpha`]: the binary digits of `1/pi` and the doubling rule that turns
//!   them into `alpha_k`.
//! - [`beta`]: the rational constant `beta_k` that closes the two-term
//!   formula, with an exact complex-power oracle.
//! - [`formula`]: Machin-like formula construction, multi-term expansion and
//!   numerical verification.
//! - [`trig`]: tangent/arctangent series and iterations.
//! - [`engine`]: the quadratically convergent digit-doubling driver.
#![no_std]

extern crate alloc;

pub mod alpha;
pub mod beta;
pub mod engine;
pub mod error;
pub mod formula;
pub mod numeric;
pub mod radical;
pub mod trig;

pub use error::{Error, Result};
