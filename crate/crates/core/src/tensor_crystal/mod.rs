//! Ordered tensor products of crystals and the `i`-signature rule.
//!
//! The `i`-signature of a label `(b_1, …, b_n)` concatenates, for each factor
//! in order, `ε_i(b_j)` plus signs followed by `φ_i(b_j)` minus signs. Adjacent
//! `−+` pairs are cancelled until every remaining `+` sits left of every
//! remaining `−`. `ẽ_i` acts in the factor holding the rightmost uncrossed `+`,
//! `f̃_i` in the factor holding the leftmost uncrossed `−`.

mod signature;
mod string;
mod tensor;

pub use signature::{reduce_signature, ReducedSignature, Sign, Signature};
pub use string::{
    compare_exponent_sequences, compare_lexicographic, reconstruct_from_string, string_parametrization, StringParam,
    StringWord, STEP_BUDGET,
};
pub use tensor::{Component, ComponentJson, Decomposition, DecompositionJson, TensorCrystal, TensorLabel, TensorPair};
