//! Highest-weight crystals `B(ν)` realised by piecewise-linear paths.
//!
//! A path starts as the straight line `t ↦ tν` and is modified by the root
//! operators `e_i`, `f_i`. Every point on a generated path has the form
//! `tν − Σ c_j α_j` with rational `c_j`, so a path is stored as a list of
//! rational breakpoints `(t, c)`.

mod graph;
mod path;

pub use graph::{generate_complete, generate_crystal, CrystalGraph, CrystalJson, NodeJson, WeightJson, SCHEMA_VERSION};
pub use path::{straight_path, Breakpoint, PlPath};

use crate::root_data::{CartanData, Weight};
use crate::Result;

/// The crystal interface shared by single crystals and tensor products.
///
/// Operators return `Ok(None)` for the zero element and `Err` only when the
/// answer lies outside a truncated graph.
pub trait Crystal {
    type Elem: Clone + Eq + std::hash::Hash + std::fmt::Debug;

    fn cartan(&self) -> &CartanData;
    fn e(&self, b: &Self::Elem, i: usize) -> Result<Option<Self::Elem>>;
    fn f(&self, b: &Self::Elem, i: usize) -> Result<Option<Self::Elem>>;
    fn eps(&self, b: &Self::Elem, i: usize) -> Result<u32>;
    fn phi(&self, b: &Self::Elem, i: usize) -> Result<u32>;
    fn weight(&self, b: &Self::Elem) -> Weight;

    fn rank(&self) -> usize {
        self.cartan().rank()
    }

    fn is_highest_weight(&self, b: &Self::Elem) -> Result<bool> {
        for i in 0..self.rank() {
            if self.eps(b, i)? > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
