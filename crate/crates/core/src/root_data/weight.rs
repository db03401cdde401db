use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use super::CartanData;
use crate::linalg::{q, Q};

/// An integral weight `Σ fund_i ω_i − Σ root_j α_j`.
///
/// The representation is not unique in finite type (fundamental weights lie
/// in the rational span of the roots); use [`super::weights_equal`] to compare
/// weights as elements of `𝔥*`. Derived `Eq`/`Ord` compare representations,
/// which is what characters keyed by a fixed highest weight need.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub fund: Vec<i64>,
    pub root: Vec<i64>,
}

impl Weight {
    pub fn new(fund: Vec<i64>, root: Vec<i64>) -> Self {
        debug_assert_eq!(fund.len(), root.len());
        Weight { fund, root }
    }

    /// The weight with the given coroot pairings and no root part.
    pub fn from_pairings(pairings: &[i64]) -> Self {
        Weight { fund: pairings.to_vec(), root: vec![0; pairings.len()] }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { fund: vec![0; rank], root: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.fund.len()
    }

    /// `⟨wt, α_i^∨⟩ = fund_i − Σ_j root_j a_ij`.
    pub fn pairing(&self, cartan: &CartanData, i: usize) -> i64 {
        self.fund[i] - self.root.iter().enumerate().map(|(j, &c)| c * cartan.entry(i, j)).sum::<i64>()
    }

    pub fn pairings(&self, cartan: &CartanData) -> Vec<i64> {
        (0..self.rank()).map(|i| self.pairing(cartan, i)).collect()
    }

    /// Subtracts `count` copies of `α_i`.
    pub fn lowered(&self, i: usize, count: i64) -> Self {
        let mut w = self.clone();
        w.root[i] += count;
        w
    }

    /// The simple reflection `s_i(μ) = μ − ⟨μ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, cartan: &CartanData, i: usize) -> Self {
        self.lowered(i, self.pairing(cartan, i))
    }

    /// Height of the root part, i.e. the depth below the fundamental part.
    pub fn depth(&self) -> i64 {
        self.root.iter().sum()
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&rhs.fund).map(|(a, b)| a + b).collect(),
            root: self.root.iter().zip(&rhs.root).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&rhs.fund).map(|(a, b)| a - b).collect(),
            root: self.root.iter().zip(&rhs.root).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{:?} − α{:?}", self.fund, self.root)
    }
}

/// An ordered tuple of weights, one per tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightTuple(pub Vec<Weight>);

impl WeightTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ_{i<k} μ_i`, or the zero weight for `k = 0`.
    pub fn partial_sum(&self, k: usize) -> Weight {
        let rank = self.0.first().map_or(0, Weight::rank);
        self.0[..k].iter().fold(Weight::zero(rank), |acc, w| &acc + w)
    }

    pub fn total(&self) -> Weight {
        self.partial_sum(self.0.len())
    }
}

/// A rational point `hw_scale·ν − Σ root_coeffs_j α_j` of the weight space,
/// relative to a fixed dominant weight `ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightPoint {
    pub hw_scale: Q,
    pub root_coeffs: Vec<Q>,
}

impl WeightPoint {
    pub fn origin(rank: usize) -> Self {
        WeightPoint { hw_scale: q(0), root_coeffs: vec![q(0); rank] }
    }

    /// `hw_scale·⟨ν, α_i^∨⟩ − Σ_j root_coeffs_j a_ij`, where `hw` holds the
    /// pairings of `ν`.
    pub fn pairing(&self, cartan: &CartanData, hw: &[i64], i: usize) -> Q {
        let mut acc = &self.hw_scale * q(hw[i]);
        for (j, c) in self.root_coeffs.iter().enumerate() {
            let a = cartan.entry(i, j);
            if a != 0 {
                acc -= c * q(a);
            }
        }
        acc
    }
}
