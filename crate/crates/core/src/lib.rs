//! Exact-arithmetic combinatorics of Kac-Moody crystals.
//!
//! The crate is organised bottom-up:
//!
//! * [`root_data`]: Cartan data, integral weights, dominance and the inverse
//!   dominance order on weight tuples.
//! * [`path_crystal`]: highest-weight crystals `B(ν)` generated from
//!   piecewise-linear paths with rational breakpoints.
//! * [`tensor_crystal`]: ordered tensor products, the `i`-signature rule,
//!   `h`-statistics, string parametrizations and decompositions.
//! * [`characters`]: characters, the Weyl dimension formula and local axiom
//!   checks used as independent oracles.
//! * [`typea`]: residue condensation of partitions and parabolic label sets.
//!
//! No floating point is used anywhere; every rational is a [`num::BigRational`].

pub mod characters;
mod error;
mod linalg;
pub mod path_crystal;
pub mod root_data;
pub mod tensor_crystal;
pub mod typea;

pub use error::{Error, Result};

pub use characters::{
    character_of_graph, character_of_tensor, cyclotomic_dot_dimension, positive_roots, verify_crystal_axioms,
    verify_stembridge, weyl_dimension, AxiomReport, Character, StembridgeReport,
};
pub use path_crystal::{generate_complete, generate_crystal, straight_path, Crystal, CrystalGraph, PlPath};
pub use root_data::{
    dominance_leq, inverse_dominance_compare, validate_cartan, CartanData, CartanKind, Dominance, TupleOrder, Weight,
    WeightPoint, WeightTuple,
};
pub use tensor_crystal::{
    compare_exponent_sequences, compare_lexicographic, reduce_signature, string_parametrization, ReducedSignature,
    Sign, Signature, StringParam, StringWord, TensorCrystal, TensorLabel,
};
pub use typea::{parabolic_labels, residue_condense, CondensationProfile, ParabolicLabels, Partition, WedgeFactor};
