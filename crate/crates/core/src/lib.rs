//! Exact decision procedures for quaternionic multiplication on abelian
//! varieties over finite fields.

pub mod brauer;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod honda_tate;
pub mod nf;
pub mod places;
pub mod qm;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use exact::Poly;

pub type Rat = BigRational;
pub type RatPoly = Poly<Rat>;
pub type IntPoly = Poly<BigInt>;
pub type FloatPoly = Poly<f64>;
