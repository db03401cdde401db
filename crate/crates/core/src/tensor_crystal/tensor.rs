use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::{reduce_signature, ReducedSignature, Signature};
use crate::path_crystal::{Crystal, CrystalGraph};
use crate::root_data::{CartanData, Weight, WeightTuple};
use crate::{Error, Result};

/// A label `(b_1, …, b_n)`: one node index per factor, in factor order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorLabel(pub Vec<usize>);

impl fmt::Display for TensorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The tensor product `B(ν_1) ⊗ ⋯ ⊗ B(ν_n)` with the signature rule.
#[derive(Debug, Clone)]
pub struct TensorCrystal {
    factors: Vec<CrystalGraph>,
}

impl TensorCrystal {
    pub fn new(factors: Vec<CrystalGraph>) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyFactorList)?;
        if factors.iter().any(|g| g.cartan_data() != first.cartan_data()) {
            return Err(Error::MixedCartanData);
        }
        Ok(TensorCrystal { factors })
    }

    pub fn factors(&self) -> &[CrystalGraph] {
        &self.factors
    }

    /// Number of tensor factors `n`.
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Number of labels, i.e. the product of the factor sizes.
    pub fn size(&self) -> usize {
        self.factors.iter().map(CrystalGraph::len).product()
    }

    pub fn is_truncated(&self) -> bool {
        self.factors.iter().any(CrystalGraph::truncated)
    }

    /// The tuple of highest weight elements `𝕍`.
    pub fn highest_weight_label(&self) -> TensorLabel {
        TensorLabel(self.factors.iter().map(CrystalGraph::hw_node).collect())
    }

    /// All labels in mixed-radix order (last factor varies fastest).
    pub fn labels(&self) -> impl Iterator<Item = TensorLabel> + '_ {
        (0..self.size()).map(|k| self.label_at(k))
    }

    fn label_at(&self, mut k: usize) -> TensorLabel {
        let mut out = vec![0; self.factors.len()];
        for (slot, g) in out.iter_mut().zip(&self.factors).rev() {
            *slot = k % g.len();
            k /= g.len();
        }
        TensorLabel(out)
    }

    fn label_index(&self, label: &TensorLabel) -> usize {
        label.0.iter().zip(&self.factors).fold(0, |acc, (&b, g)| acc * g.len() + b)
    }

    pub fn check_label(&self, label: &TensorLabel) -> Result<()> {
        if label.0.len() != self.factors.len() {
            return Err(Error::LengthMismatch(label.0.len(), self.factors.len()));
        }
        for (j, (&b, g)) in label.0.iter().zip(&self.factors).enumerate() {
            if b >= g.len() {
                return Err(Error::NoSuchElement(format!("node {b} in factor {j}")));
            }
        }
        Ok(())
    }

    /// `ϱ(λ) = (wt b_1, …, wt b_n)`.
    pub fn weight_tuple(&self, label: &TensorLabel) -> WeightTuple {
        WeightTuple(label.0.iter().zip(&self.factors).map(|(&b, g)| g.node_weight(b).clone()).collect())
    }

    pub fn total_weight(&self, label: &TensorLabel) -> Weight {
        self.weight_tuple(label).total()
    }

    /// Labels grouped by total weight.
    pub fn labels_by_weight(&self) -> BTreeMap<Weight, Vec<TensorLabel>> {
        let mut out: BTreeMap<Weight, Vec<TensorLabel>> = BTreeMap::new();
        for l in self.labels() {
            out.entry(self.total_weight(&l)).or_default().push(l);
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        self.factors[0].cartan_data().check_index(i)
    }

    pub fn i_signature(&self, label: &TensorLabel, i: usize) -> Result<Signature> {
        self.check_label(label)?;
        self.check_index(i)?;
        Ok(Signature::from_groups(
            label.0.iter().zip(&self.factors).map(|(&b, g)| (g.node_eps(b)[i], g.node_phi(b)[i])).collect(),
        ))
    }

    pub fn reduced_signature(&self, label: &TensorLabel, i: usize) -> Result<ReducedSignature> {
        Ok(reduce_signature(&self.i_signature(label, i)?))
    }

    fn act_in_factor(&self, label: &TensorLabel, j: usize, i: usize, raise: bool) -> Result<TensorLabel> {
        let g = &self.factors[j];
        let b = label.0[j];
        let moved = if raise { g.e(&b, i) } else { g.f(&b, i) };
        let target = moved
            .map_err(|_| Error::TruncatedStatistics { factor: j, node: b })?
            .expect("signature symbol guarantees the factor operator is defined");
        let mut out = label.clone();
        out.0[j] = target;
        Ok(out)
    }

    /// `ẽ_i`: acts in the factor holding the rightmost uncrossed `+`.
    pub fn tensor_e(&self, label: &TensorLabel, i: usize) -> Result<Option<TensorLabel>> {
        match self.reduced_signature(label, i)?.e_factor() {
            Some(j) => self.act_in_factor(label, j, i, true).map(Some),
            None => Ok(None),
        }
    }

    /// `f̃_i`: acts in the factor holding the leftmost uncrossed `−`.
    pub fn tensor_f(&self, label: &TensorLabel, i: usize) -> Result<Option<TensorLabel>> {
        match self.reduced_signature(label, i)?.f_factor() {
            Some(j) => self.act_in_factor(label, j, i, false).map(Some),
            None => Ok(None),
        }
    }

    /// `(h_+, h_-)`: uncrossed `+` and `−` counts of the reduced signature.
    pub fn h_stats(&self, label: &TensorLabel, i: usize) -> Result<(u32, u32)> {
        let r = self.reduced_signature(label, i)?;
        Ok((r.h_plus(), r.h_minus()))
    }

    /// `h_{−,k}`: uncrossed `−` in the independently reduced signature of
    /// factors `k..n` (0-based). `k = n` gives 0.
    pub fn h_minus_from(&self, label: &TensorLabel, i: usize, k: usize) -> Result<u32> {
        let n = self.factors.len();
        if k > n {
            return Err(Error::FactorIndexOutOfRange { index: k, len: n });
        }
        let sig = self.i_signature(label, i)?;
        Ok(reduce_signature(&sig.suffix(k)).h_minus())
    }

    /// `α_{ℓ,m}(λ, μ)` for 0-based factor `ℓ`: 1 iff
    /// `φ_i(μ_ℓ) ≥ φ_i(λ_ℓ) = m` and `h_{−,ℓ}(μ) > h_{−,ℓ+1}(μ)`.
    pub fn alpha_indicator(&self, lambda: &TensorLabel, mu: &TensorLabel, ell: usize, m: u32, i: usize) -> Result<u8> {
        let n = self.factors.len();
        if ell >= n {
            return Err(Error::FactorIndexOutOfRange { index: ell, len: n });
        }
        self.check_label(lambda)?;
        self.check_label(mu)?;
        self.check_index(i)?;
        let g = &self.factors[ell];
        let phi_lambda = g.node_phi(lambda.0[ell])[i];
        let phi_mu = g.node_phi(mu.0[ell])[i];
        let first = phi_lambda == m && phi_mu >= m;
        let second = self.h_minus_from(mu, i, ell)? > self.h_minus_from(mu, i, ell + 1)?;
        Ok(u8::from(first && second))
    }

    /// Labels killed by every `ẽ_i`, sorted by total weight then label.
    ///
    /// With truncated factors a weight filter is required, and its depth must
    /// not exceed the depth reached by any truncated factor.
    pub fn highest_weight_labels(&self, weight_filter: Option<&Weight>) -> Result<Vec<TensorLabel>> {
        if self.is_truncated() {
            let Some(w) = weight_filter else {
                return Err(Error::TruncatedRange);
            };
            let depth = usize::try_from(w.depth()).map_err(|_| Error::TruncatedRange)?;
            if self.factors.iter().any(|g| g.truncated() && g.depth_used() < depth) {
                return Err(Error::TruncatedRange);
            }
        }
        let rank = self.factors[0].cartan_data().rank();
        let mut out = Vec::new();
        for l in self.labels() {
            if let Some(w) = weight_filter {
                if self.total_weight(&l) != *w {
                    continue;
                }
            }
            let mut is_hw = true;
            for i in 0..rank {
                if self.tensor_e(&l, i)?.is_some() {
                    is_hw = false;
                    break;
                }
            }
            if is_hw {
                out.push(l);
            }
        }
        out.sort_by_key(|l| (self.total_weight(l), l.clone()));
        Ok(out)
    }

    /// Connected components of the colored graph, each with its unique
    /// highest weight label.
    pub fn decompose(&self) -> Result<Decomposition> {
        if self.is_truncated() {
            return Err(Error::TruncatedRange);
        }
        let size = self.size();
        let rank = self.factors[0].cartan_data().rank();
        let mut parent: Vec<usize> = (0..size).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for k in 0..size {
            let l = self.label_at(k);
            for i in 0..rank {
                if let Some(t) = self.tensor_f(&l, i)? {
                    let (a, b) = (root(&mut parent, k), root(&mut parent, self.label_index(&t)));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for k in 0..size {
            *sizes.entry(root(&mut parent, k)).or_default() += 1;
        }
        let cartan_root = root(&mut parent, self.label_index(&self.highest_weight_label()));
        let mut components = Vec::new();
        let mut seen_roots = Vec::new();
        for hw in self.highest_weight_labels(None)? {
            let r = root(&mut parent, self.label_index(&hw));
            if seen_roots.contains(&r) {
                return Err(Error::AmbiguousElement(format!("component {r} has two highest weight labels")));
            }
            seen_roots.push(r);
            let hw_weight = self.total_weight(&hw);
            components.push(Component {
                pairings: hw_weight.pairings(self.factors[0].cartan_data()),
                hw_weight,
                hw_label: hw,
                size: sizes[&r],
                is_cartan: r == cartan_root,
            });
        }
        if seen_roots.len() != sizes.len() {
            return Err(Error::NoSuchElement("component without highest weight label".into()));
        }
        Ok(Decomposition { components })
    }

    fn cartan_ref(&self) -> &CartanData {
        self.factors[0].cartan_data()
    }
}

impl Crystal for TensorCrystal {
    type Elem = TensorLabel;

    fn cartan(&self) -> &CartanData {
        self.cartan_ref()
    }

    fn e(&self, b: &TensorLabel, i: usize) -> Result<Option<TensorLabel>> {
        self.tensor_e(b, i)
    }

    fn f(&self, b: &TensorLabel, i: usize) -> Result<Option<TensorLabel>> {
        self.tensor_f(b, i)
    }

    fn eps(&self, b: &TensorLabel, i: usize) -> Result<u32> {
        Ok(self.h_stats(b, i)?.0)
    }

    fn phi(&self, b: &TensorLabel, i: usize) -> Result<u32> {
        Ok(self.h_stats(b, i)?.1)
    }

    fn weight(&self, b: &TensorLabel) -> Weight {
        self.total_weight(b)
    }
}

/// `A ⊗ B` for arbitrary crystals, using the same signature rule with two
/// groups. Nesting pairs gives the bracketings `(A ⊗ B) ⊗ C`, `A ⊗ (B ⊗ C)`.
#[derive(Debug, Clone, Copy)]
pub struct TensorPair<'a, A, B> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<'a, A: Crystal, B: Crystal> TensorPair<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        TensorPair { left, right }
    }

    fn reduced(&self, b: &(A::Elem, B::Elem), i: usize) -> Result<ReducedSignature> {
        Ok(reduce_signature(&Signature::from_groups(vec![
            (self.left.eps(&b.0, i)?, self.left.phi(&b.0, i)?),
            (self.right.eps(&b.1, i)?, self.right.phi(&b.1, i)?),
        ])))
    }
}

impl<A: Crystal, B: Crystal> Crystal for TensorPair<'_, A, B> {
    type Elem = (A::Elem, B::Elem);

    fn cartan(&self) -> &CartanData {
        self.left.cartan()
    }

    fn e(&self, b: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        Ok(match self.reduced(b, i)?.e_factor() {
            Some(0) => self.left.e(&b.0, i)?.map(|x| (x, b.1.clone())),
            Some(_) => self.right.e(&b.1, i)?.map(|y| (b.0.clone(), y)),
            None => None,
        })
    }

    fn f(&self, b: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        Ok(match self.reduced(b, i)?.f_factor() {
            Some(0) => self.left.f(&b.0, i)?.map(|x| (x, b.1.clone())),
            Some(_) => self.right.f(&b.1, i)?.map(|y| (b.0.clone(), y)),
            None => None,
        })
    }

    fn eps(&self, b: &Self::Elem, i: usize) -> Result<u32> {
        Ok(self.reduced(b, i)?.h_plus())
    }

    fn phi(&self, b: &Self::Elem, i: usize) -> Result<u32> {
        Ok(self.reduced(b, i)?.h_minus())
    }

    fn weight(&self, b: &Self::Elem) -> Weight {
        &self.left.weight(&b.0) + &self.right.weight(&b.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub hw_label: TensorLabel,
    pub hw_weight: Weight,
    /// Coroot pairings of the highest weight.
    pub pairings: Vec<i64>,
    pub size: usize,
    pub is_cartan: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub hw_weight: Vec<i64>,
    pub hw_root: Vec<i64>,
    pub size: usize,
    pub is_cartan: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub schema_version: u32,
    pub components: Vec<ComponentJson>,
}

impl Decomposition {
    /// Highest weight (as coroot pairings) ↦ multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            *out.entry(c.pairings.clone()).or_default() += 1;
        }
        out
    }

    pub fn total_size(&self) -> usize {
        self.components.iter().map(|c| c.size).sum()
    }

    pub fn cartan_component(&self) -> Option<&Component> {
        self.components.iter().find(|c| c.is_cartan)
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            schema_version: crate::path_crystal::SCHEMA_VERSION,
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    hw_weight: c.pairings.clone(),
                    hw_root: c.hw_weight.root.clone(),
                    size: c.size,
                    is_cartan: c.is_cartan,
                })
                .collect(),
        }
    }
}
