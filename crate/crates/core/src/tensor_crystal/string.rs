use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::path_crystal::Crystal;
use crate::{Error, Result};

/// Maximum number of word positions scanned before giving up.
pub const STEP_BUDGET: usize = 1 << 20;

/// An infinite word `i_1, i_2, …` given as a finite prefix followed by a
/// repeating cycle that contains every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringWord {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl StringWord {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>, rank: usize) -> Result<Self> {
        for &i in prefix.iter().chain(&cycle) {
            if i >= rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
        }
        if (0..rank).any(|i| !cycle.contains(&i)) {
            return Err(Error::WordSupportIncomplete);
        }
        Ok(StringWord { prefix, cycle })
    }

    /// `0, 1, …, rank−1` repeated.
    pub fn cyclic(rank: usize) -> Self {
        StringWord { prefix: Vec::new(), cycle: (0..rank).collect() }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The `k`-th letter (0-based).
    pub fn at(&self, k: usize) -> usize {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }
}

/// Exponents `(a_1, a_2, …)` along a word, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringParam {
    pub word: StringWord,
    pub exponents: Vec<u32>,
}

impl StringParam {
    pub fn new(word: StringWord, mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        StringParam { word, exponents }
    }

    pub fn total(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64).sum()
    }
}

/// Greedy exhaustion: `a_k` is the largest power of `ẽ_{i_k}` applicable
/// after the previous steps. Stops once the highest weight element is reached.
pub fn string_parametrization<C: Crystal>(crystal: &C, b: &C::Elem, word: &StringWord) -> Result<StringParam> {
    let mut current = b.clone();
    let mut exponents = Vec::new();
    let mut k = 0;
    while !crystal.is_highest_weight(&current)? {
        if k >= STEP_BUDGET {
            return Err(Error::NonTerminating(STEP_BUDGET));
        }
        let i = word.at(k);
        let mut a = 0u32;
        while let Some(up) = crystal.e(&current, i)? {
            current = up;
            a += 1;
        }
        exponents.push(a);
        k += 1;
    }
    Ok(StringParam::new(word.clone(), exponents))
}

/// Rebuilds `f̃_{i_1}^{a_1} f̃_{i_2}^{a_2} ⋯ hw`, applying the last factor first.
/// Returns `None` if some lowering step is zero.
pub fn reconstruct_from_string<C: Crystal>(crystal: &C, hw: &C::Elem, param: &StringParam) -> Result<Option<C::Elem>> {
    let mut current = hw.clone();
    for (k, &a) in param.exponents.iter().enumerate().rev() {
        let i = param.word.at(k);
        for _ in 0..a {
            match crystal.f(&current, i)? {
                Some(down) => current = down,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(current))
}

fn padded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or(0).cmp(&b.get(k).copied().unwrap_or(0)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Plain lexicographic order on zero-padded exponent sequences.
pub fn compare_lexicographic(a: &StringParam, b: &StringParam) -> Result<Ordering> {
    if a.word != b.word {
        return Err(Error::WordMismatch);
    }
    Ok(padded_lex(&a.exponents, &b.exponents))
}

/// The sum-then-lexicographic order: a smaller total is *greater*; equal
/// totals fall back to lexicographic order.
pub fn compare_exponent_sequences(a: &StringParam, b: &StringParam) -> Result<Ordering> {
    if a.word != b.word {
        return Err(Error::WordMismatch);
    }
    Ok(b.total().cmp(&a.total()).then_with(|| padded_lex(&a.exponents, &b.exponents)))
}
