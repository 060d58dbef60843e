//! Exact polynomial arithmetic over Q and Z.

pub mod arith;
pub mod factor;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod resultant;
pub mod sturm;

pub use poly::{FieldScalar, OrderedField, Poly, Scalar};
pub use resultant::resultant;
pub use sturm::{real_roots, sturm_count, Bound, RealRoot};
