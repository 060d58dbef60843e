//! Archimedean and finite places of number fields, and valuations.

mod arch;
mod finite;
mod label;
mod order;

pub use arch::{arch_places, eval_interval, locate_real_image, real_places, ArchKind, ArchPlace};
pub use finite::{default_cap, disc_valuation, places_above_p, places_above_p_with_cap, FinitePlace};
pub use label::PlaceLabel;
