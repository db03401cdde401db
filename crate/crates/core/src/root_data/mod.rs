//! Cartan data, integral weights and the two orders used on them.
//!
//! Weights are stored as `Σ fund_i ω_i − Σ root_j α_j`. Keeping explicit root
//! coordinates means affine data (where the coroot pairings of `δ` vanish) is
//! still represented faithfully.

mod cartan;
mod order;
mod weight;

pub use cartan::{validate_cartan, CartanData, CartanKind};
pub use order::{dominance_leq, inverse_dominance_compare, root_difference, weights_equal, Dominance, TupleOrder};
pub use weight::{Weight, WeightPoint, WeightTuple};
