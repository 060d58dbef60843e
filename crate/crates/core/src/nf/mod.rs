//! Number fields `Q[x]/(f)`, polynomials over them, embeddings and
//! relative extensions.

mod extension;
mod factor;
mod field;

pub use factor::{cmp_nf_poly, embeddings, factor_over_nf, nf_minpoly, norm_poly, Embedding};
pub use field::{NfElem, NfPoly, NumberField};
pub use extension::{quadratic_extension, relative_extension, RelativeExtension};
