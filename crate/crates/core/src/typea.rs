//! Type A combinatorics: residue condensation of partitions and parabolic
//! label sets for tensor products of wedge powers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::path_crystal::{generate_complete, CrystalGraph};
use crate::root_data::CartanData;
use crate::tensor_crystal::{TensorCrystal, TensorLabel};
use crate::{Error, Result};

/// A partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Length of the first row.
    pub fn cols(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Whether the box in 0-based `row`, `col` belongs to the diagram.
    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.0.get(row).is_some_and(|&len| col < len)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition part {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A tensor factor `⋀^m 𝕂^p`; `m = 0` and `m = p` are one-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeFactor {
    pub m: usize,
    pub trivial: bool,
}

/// Marked boxes `(x_k, y_k)` listed left to right, and `m_k = y_k − y_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationProfile {
    pub p: usize,
    pub r: usize,
    pub boxes: Vec<(usize, usize)>,
    pub m: Vec<usize>,
    pub factors: Vec<WedgeFactor>,
}

impl CondensationProfile {
    /// Exponents of the factors that are not one-dimensional, in order.
    pub fn nontrivial_exponents(&self) -> Vec<usize> {
        self.factors.iter().filter(|f| !f.trivial).map(|f| f.m).collect()
    }

    /// `⋀^2 𝕂^3 ⊗ ⋀^1 𝕂^3 ⊗ …` over the nontrivial factors.
    pub fn factor_string(&self) -> String {
        let parts: Vec<String> = self.nontrivial_exponents().iter().map(|m| format!("⋀^{m} K^{}", self.p)).collect();
        if parts.is_empty() {
            "K".into()
        } else {
            parts.join(" ⊗ ")
        }
    }
}

/// Coordinates of the rightmost box on the diagonal of content `c`.
///
/// The box in 0-based row `i`, column `j` has content `j − i` and is drawn as
/// its upper corner `(j + 1, i + 1)`. A diagonal that misses the diagram is
/// represented by the box just outside it, on the row `−1` or column `−1`.
fn diagonal_box(lambda: &Partition, c: i64) -> (usize, usize) {
    let last_row = (0..lambda.rows()).rev().find(|&i| i as i64 + c >= 0 && lambda.parts()[i] as i64 > i as i64 + c);
    match last_row {
        Some(i) => ((i as i64 + c + 1) as usize, i + 1),
        None if c >= 0 => (c as usize, 0),
        None => (0, (-c) as usize),
    }
}

/// The residue-`r` diagonals of `λ` modulo `p`, with one empty diagonal
/// included on each side.
pub fn residue_condense(lambda: &Partition, p: usize, r: usize) -> Result<CondensationProfile> {
    if p < 2 || r >= p {
        return Err(Error::BadResidue { p, r });
    }
    let (pi, ri) = (p as i64, r as i64);
    let rows = lambda.rows() as i64;
    let cols = lambda.cols() as i64;
    // Largest content ≡ r that is ≤ −rows, smallest that is ≥ cols.
    let left = -rows - (-rows - ri).rem_euclid(pi);
    let right = cols + (ri - cols).rem_euclid(pi);
    let boxes: Vec<(usize, usize)> = (0..=(right - left) / pi).map(|k| diagonal_box(lambda, left + k * pi)).collect();
    let m: Vec<usize> = boxes.windows(2).map(|w| w[0].1 - w[1].1).collect();
    let factors = m.iter().map(|&m| WedgeFactor { m, trivial: m == 0 || m == p }).collect();
    Ok(CondensationProfile { p, r, boxes, m, factors })
}

/// Tuples of strictly decreasing blocks with entries in `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicLabels {
    pub m: usize,
    pub block_sizes: Vec<usize>,
    pub labels: Vec<Vec<Vec<usize>>>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Strictly decreasing sequences of length `k` from `1..=m`, in
/// lexicographic order.
fn decreasing_blocks(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(max: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for top in k..=max {
            prefix.push(top);
            rec(top - 1, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, &mut Vec::new(), &mut out);
    out
}

impl ParabolicLabels {
    /// `Π_k C(m, m_k)`.
    pub fn expected_count(&self) -> u128 {
        self.block_sizes.iter().map(|&k| binomial(self.m, k)).product()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The `sl_m` tensor product `B(ω_{m_1}) ⊗ ⋯ ⊗ B(ω_{m_n})`, with
    /// `ω_0 = ω_m = 0`.
    pub fn tensor_crystal(&self) -> Result<TensorCrystal> {
        if self.m < 2 {
            return Err(Error::UnknownCartan(format!("sl_{}", self.m)));
        }
        let cartan = CartanData::from_name(&format!("A{}", self.m - 1))?;
        let factors = self
            .block_sizes
            .iter()
            .map(|&k| {
                let mut hw = vec![0; self.m - 1];
                if (1..self.m).contains(&k) {
                    hw[k - 1] = 1;
                }
                generate_complete(&cartan, &hw)
            })
            .collect::<Result<Vec<CrystalGraph>>>()?;
        TensorCrystal::new(factors)
    }

    /// The weight `Σ_{s ∈ block} ε_s` as coroot pairings
    /// `⟨ε_s, α_i^∨⟩ = [s = i] − [s = i + 1]`.
    pub fn block_pairings(&self, block: &[usize]) -> Vec<i64> {
        (1..self.m).map(|i| i64::from(block.contains(&i)) - i64::from(block.contains(&(i + 1)))).collect()
    }

    /// The tensor label whose factor `k` is the unique element of
    /// `B(ω_{m_k})` with the weight of block `k`.
    pub fn to_tensor_label(&self, tensor: &TensorCrystal, label: &[Vec<usize>]) -> Result<TensorLabel> {
        if label.len() != tensor.num_factors() {
            return Err(Error::LengthMismatch(label.len(), tensor.num_factors()));
        }
        let mut out = Vec::with_capacity(label.len());
        for (block, g) in label.iter().zip(tensor.factors()) {
            let pairings = self.block_pairings(block);
            match g.nodes_with_pairings(&pairings).as_slice() {
                [b] => out.push(*b),
                [] => return Err(Error::NoSuchElement(format!("block {block:?}"))),
                _ => return Err(Error::AmbiguousElement(format!("block {block:?}"))),
            }
        }
        Ok(TensorLabel(out))
    }
}

/// All labels `(λ_1 > ⋯ > λ_{m_1}, λ_{m_1+1} > ⋯, …)` with entries in `1..=m`.
pub fn parabolic_labels(m: usize, block_sizes: &[usize]) -> Result<ParabolicLabels> {
    if let Some(&block) = block_sizes.iter().find(|&&k| k > m) {
        return Err(Error::BlockTooLarge { block, m });
    }
    let mut labels: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &k in block_sizes {
        let blocks = decreasing_blocks(m, k);
        labels = labels
            .into_iter()
            .flat_map(|prefix| {
                blocks.iter().map(move |b| {
                    let mut l = prefix.clone();
                    l.push(b.clone());
                    l
                })
            })
            .collect();
    }
    Ok(ParabolicLabels { m, block_sizes: block_sizes.to_vec(), labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Partition {
        "7,5,1,1,1,1,1".parse().unwrap()
    }

    #[test]
    fn partition_parsing() {
        assert_eq!(fig1().size(), 17);
        assert_eq!("".parse::<Partition>().unwrap().rows(), 0);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn figure_example() {
        let prof = residue_condense(&fig1(), 3, 0).unwrap();
        assert_eq!(prof.boxes, vec![(0, 9), (1, 7), (1, 4), (2, 2), (5, 2), (7, 1), (9, 0)]);
        assert_eq!(prof.m, vec![2, 3, 2, 0, 1, 1]);
        assert_eq!(prof.nontrivial_exponents(), vec![2, 2, 1, 1]);
        assert_eq!(prof.factor_string(), "⋀^2 K^3 ⊗ ⋀^2 K^3 ⊗ ⋀^1 K^3 ⊗ ⋀^1 K^3");
    }

    #[test]
    fn empty_partition() {
        let empty = Partition::default();
        let prof = residue_condense(&empty, 3, 0).unwrap();
        assert_eq!(prof.boxes, vec![(0, 0)]);
        assert!(prof.m.is_empty());
        let prof = residue_condense(&empty, 3, 1).unwrap();
        assert_eq!(prof.boxes, vec![(0, 2), (1, 0)]);
        assert_eq!(prof.m, vec![2]);
    }

    #[test]
    fn bad_residue() {
        assert!(matches!(residue_condense(&fig1(), 3, 3), Err(Error::BadResidue { p: 3, r: 3 })));
        assert!(matches!(residue_condense(&fig1(), 1, 0), Err(Error::BadResidue { .. })));
    }

    #[test]
    fn parabolic_counts() {
        assert_eq!(parabolic_labels(2, &[1, 1]).unwrap().len(), 4);
        let l = parabolic_labels(3, &[2, 2, 1, 1]).unwrap();
        assert_eq!(l.len(), 81);
        assert_eq!(l.expected_count(), 81);
        assert_eq!(parabolic_labels(3, &[3]).unwrap().labels, vec![vec![vec![3, 2, 1]]]);
        assert!(matches!(parabolic_labels(3, &[4]), Err(Error::BlockTooLarge { block: 4, m: 3 })));
    }

    #[test]
    fn bijection_preserves_weights() {
        let l = parabolic_labels(3, &[2, 1]).unwrap();
        let t = l.tensor_crystal().unwrap();
        assert_eq!(t.size(), l.len());
        let mut images: Vec<TensorLabel> = l.labels.iter().map(|x| l.to_tensor_label(&t, x).unwrap()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), l.len());
    }
}
