//! Characters, the Weyl dimension formula and local axiom checks.
//!
//! Everything here is an oracle for the crystal code: the Weyl dimension
//! formula works from root data alone, and the axiom checkers only use the
//! [`Crystal`] interface.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{q, Q};
use crate::path_crystal::{generate_crystal, Crystal, CrystalGraph, SCHEMA_VERSION};
use crate::root_data::{weights_equal, CartanData, Weight};
use crate::tensor_crystal::{TensorCrystal, TensorLabel};
use crate::{Error, Result};

/// Upper bound on the number of positive roots explored before giving up.
const ROOT_BUDGET: usize = 100_000;

/// A weight multiset. `partial` marks characters of truncated crystals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    weights: BTreeMap<Weight, u64>,
    partial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub weight: Weight,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub schema_version: u32,
    pub partial: bool,
    pub entries: Vec<CharacterEntry>,
}

impl Character {
    pub fn from_weights<I: IntoIterator<Item = Weight>>(weights: I, partial: bool) -> Self {
        let mut ch = Character { weights: BTreeMap::new(), partial };
        for w in weights {
            ch.add(w, 1);
        }
        ch
    }

    pub fn add(&mut self, w: Weight, count: u64) {
        if count > 0 {
            *self.weights.entry(w).or_default() += count;
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<Weight, u64> {
        &self.weights
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// Total size `Σ multiplicities`.
    pub fn size(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Pointwise product of two characters.
    pub fn convolve(&self, other: &Character) -> Character {
        let mut out = Character { weights: BTreeMap::new(), partial: self.partial || other.partial };
        for (a, &x) in &self.weights {
            for (b, &y) in &other.weights {
                out.add(a + b, x * y);
            }
        }
        out
    }

    /// Sum of two characters.
    pub fn merge(&mut self, other: &Character) {
        self.partial |= other.partial;
        for (w, &c) in &other.weights {
            self.add(w.clone(), c);
        }
    }

    /// Equality that refuses to compare a partial with a complete character.
    pub fn try_eq(&self, other: &Character) -> Result<bool> {
        if self.partial != other.partial {
            return Err(Error::PartialComparison);
        }
        Ok(self.weights == other.weights)
    }

    /// Invariance under every simple reflection.
    pub fn is_weyl_invariant(&self, cartan: &CartanData) -> bool {
        (0..cartan.rank()).all(|i| self.weights.iter().all(|(w, &c)| self.multiplicity(&w.reflect(cartan, i)) == c))
    }

    /// Entries sorted by root coordinates, then fundamental part.
    pub fn to_json(&self) -> CharacterJson {
        let mut entries: Vec<CharacterEntry> =
            self.weights.iter().map(|(w, &m)| CharacterEntry { weight: w.clone(), multiplicity: m }).collect();
        entries.sort_by(|a, b| (&a.weight.root, &a.weight.fund).cmp(&(&b.weight.root, &b.weight.fund)));
        CharacterJson { schema_version: SCHEMA_VERSION, partial: self.partial, entries }
    }
}

/// Character of a crystal graph. Truncated graphs need `allow_partial`.
pub fn character_of_graph(graph: &CrystalGraph, allow_partial: bool) -> Result<Character> {
    if graph.truncated() && !allow_partial {
        return Err(Error::TruncatedWithoutFlag);
    }
    Ok(Character::from_weights(graph.nodes().map(|b| graph.node_weight(b).clone()), graph.truncated()))
}

/// Character of a tensor product, counted label by label.
pub fn character_of_tensor(tensor: &TensorCrystal, allow_partial: bool) -> Result<Character> {
    if tensor.is_truncated() && !allow_partial {
        return Err(Error::TruncatedWithoutFlag);
    }
    Ok(Character::from_weights(tensor.labels().map(|l| tensor.total_weight(&l)), tensor.is_truncated()))
}

fn coroot_pairing(cartan: &CartanData, root: &[i64], i: usize) -> i64 {
    root.iter().enumerate().map(|(j, &k)| k * cartan.entry(i, j)).sum()
}

/// Positive roots in simple-root coordinates, by closing the simple roots
/// under simple reflections. Sorted by height, then lexicographically.
pub fn positive_roots(cartan: &CartanData) -> Result<Vec<Vec<i64>>> {
    if !cartan.is_finite() {
        return Err(Error::NotFiniteType);
    }
    let n = cartan.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let mut r = beta.clone();
            r[i] -= coroot_pairing(cartan, &beta, i);
            if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && seen.insert(r.clone()) {
                if seen.len() > ROOT_BUDGET {
                    return Err(Error::NotFiniteType);
                }
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Ok(roots)
}

/// `dim V(ν) = Π_{α>0} ⟨ν+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`, evaluated exactly.
///
/// For `α = Σ k_j α_j` the coroot is proportional to `Σ k_j d_j α_j^∨`, so each
/// factor is `Σ k_j d_j (ν_j + 1) / Σ k_j d_j`.
pub fn weyl_dimension(cartan: &CartanData, nu: &[i64]) -> Result<u128> {
    cartan.check_dominant(nu)?;
    let d = cartan.symmetrizer();
    let mut dim = Q::one();
    for alpha in positive_roots(cartan)? {
        let num: i64 = alpha.iter().zip(d).zip(nu).map(|((k, dj), v)| k * dj * (v + 1)).sum();
        let den: i64 = alpha.iter().zip(d).map(|(k, dj)| k * dj).sum();
        dim *= q(num) / q(den);
    }
    debug_assert!(dim.is_integer());
    dim.to_integer().to_u128().ok_or(Error::NotFiniteType)
}

/// `α_i^∨(ν) = Σ_j ⟨ν_j, α_i^∨⟩`, cross-checked against `φ_i` of the tuple of
/// highest weight elements computed from the signature rule.
pub fn cyclotomic_dot_dimension(cartan: &CartanData, nus: &[Vec<i64>], i: usize) -> Result<u64> {
    cartan.check_index(i)?;
    if nus.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let mut expected = 0u64;
    for nu in nus {
        cartan.check_dominant(nu)?;
        expected += nu[i] as u64;
    }
    let factors = nus.iter().map(|nu| generate_crystal(cartan, nu, 0)).collect::<Result<Vec<_>>>()?;
    let tensor = TensorCrystal::new(factors)?;
    let found = u64::from(tensor.h_stats(&tensor.highest_weight_label(), i)?.1);
    if found != expected {
        return Err(Error::DimensionMismatch { what: "cyclotomic quotient", expected, found });
    }
    Ok(expected)
}

/// One failed check, located at an element and colour(s).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub element: String,
    pub colors: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} colors {:?}: {}", self.axiom, self.element, self.colors, self.detail)
    }
}

/// Result of [`verify_crystal_axioms`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub elements_checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of [`verify_stembridge`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct StembridgeReport {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl StembridgeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(axiom: &str, element: impl fmt::Debug, colors: Vec<usize>, detail: impl Into<String>) -> Violation {
    Violation { axiom: axiom.into(), element: format!("{element:?}"), colors, detail: detail.into() }
}

/// Length of the `i`-string from `b` under `step`, or `None` on error or
/// when the budget is exhausted.
fn string_length<C: Crystal>(
    c: &C,
    b: &C::Elem,
    i: usize,
    step: impl Fn(&C, &C::Elem, usize) -> Result<Option<C::Elem>>,
) -> Option<u32> {
    let mut cur = b.clone();
    for k in 0..=4096u32 {
        match step(c, &cur, i) {
            Ok(Some(next)) => cur = next,
            Ok(None) => return Some(k),
            Err(_) => return None,
        }
    }
    None
}

fn check_element<C: Crystal>(c: &C, b: &C::Elem) -> Vec<Violation> {
    let cartan = c.cartan();
    let wt = c.weight(b);
    let mut out = Vec::new();
    for i in 0..c.rank() {
        let (eps, phi) = match (c.eps(b, i), c.phi(b, i)) {
            (Ok(e), Ok(p)) => (e, p),
            _ => {
                out.push(violation("statistics", b, vec![i], "ε/φ unavailable"));
                continue;
            }
        };
        if i64::from(phi) - i64::from(eps) != wt.pairing(cartan, i) {
            out.push(violation(
                "pairing",
                b,
                vec![i],
                format!("φ−ε = {} but ⟨wt, α^∨⟩ = {}", i64::from(phi) - i64::from(eps), wt.pairing(cartan, i)),
            ));
        }
        match c.f(b, i) {
            Ok(Some(t)) => {
                if !weights_equal(cartan, &c.weight(&t), &wt.lowered(i, 1)).unwrap_or(false) {
                    out.push(violation("weight step", b, vec![i], "wt f(b) ≠ wt b − α"));
                }
                if c.e(&t, i).ok().flatten().as_ref() != Some(b) {
                    out.push(violation("edge symmetry", b, vec![i], "e(f(b)) ≠ b"));
                }
            }
            Ok(None) => {}
            Err(_) => out.push(violation("operator", b, vec![i], "f undefined")),
        }
        match c.e(b, i) {
            Ok(Some(s)) => {
                if c.f(&s, i).ok().flatten().as_ref() != Some(b) {
                    out.push(violation("edge symmetry", b, vec![i], "f(e(b)) ≠ b"));
                }
            }
            Ok(None) => {}
            Err(_) => out.push(violation("operator", b, vec![i], "e undefined")),
        }
        if string_length(c, b, i, |c, x, i| c.e(x, i)) != Some(eps) {
            out.push(violation("ε string", b, vec![i], format!("ε = {eps} is not the e-string length")));
        }
        if string_length(c, b, i, |c, x, i| c.f(x, i)) != Some(phi) {
            out.push(violation("φ string", b, vec![i], format!("φ = {phi} is not the f-string length")));
        }
    }
    out
}

/// Checks edge symmetry, the weight step, `φ_i − ε_i = ⟨wt, α_i^∨⟩` and that
/// `ε_i`/`φ_i` are the lengths of the `e_i`/`f_i` strings, at every element.
pub fn verify_crystal_axioms<C>(crystal: &C, elements: &[C::Elem]) -> AxiomReport
where
    C: Crystal + Sync,
    C::Elem: Send + Sync,
{
    let violations = elements.par_iter().flat_map_iter(|b| check_element(crystal, b)).collect();
    AxiomReport { elements_checked: elements.len(), violations }
}

/// All nodes of a graph.
pub fn graph_elements(graph: &CrystalGraph) -> Vec<usize> {
    graph.nodes().collect()
}

/// All labels of a tensor product.
pub fn tensor_elements(tensor: &TensorCrystal) -> Vec<TensorLabel> {
    tensor.labels().collect()
}

/// Local statistics read from the edges, so that a missing edge shows up.
struct EdgeView<'a> {
    g: &'a CrystalGraph,
}

impl EdgeView<'_> {
    fn e(&self, x: usize, i: usize) -> Option<usize> {
        self.g.e_edge(x, i)
    }

    fn f(&self, x: usize, i: usize) -> Option<usize> {
        self.g.f_edge(x, i)
    }

    fn eps(&self, x: usize, i: usize) -> i64 {
        let (mut k, mut cur) = (0, x);
        while let Some(n) = self.e(cur, i) {
            k += 1;
            cur = n;
        }
        k
    }

    fn phi(&self, x: usize, i: usize) -> i64 {
        let (mut k, mut cur) = (0, x);
        while let Some(n) = self.f(cur, i) {
            k += 1;
            cur = n;
        }
        k
    }

    fn chain(&self, x: usize, ops: &[(bool, usize)]) -> Option<usize> {
        ops.iter().try_fold(x, |cur, &(raise, i)| if raise { self.e(cur, i) } else { self.f(cur, i) })
    }
}

/// The Stembridge local axioms for simply-laced crystals, with statistics
/// recomputed from the edges. For each node `x` and colours `i ≠ j`:
///
/// * if `e_i x ≠ 0`: `Δφ_j − Δε_j = a_ji`, `Δε_j ∈ {0, 1}`, `Δφ_j ≤ 0`,
///   where `Δ` is the change from `x` to `e_i x`;
/// * if `e_i x, e_j x ≠ 0` and `ε_j(e_i x) = ε_j(x)`: `e_i e_j x = e_j e_i x`
///   and `φ_i(y) = φ_i(f_j y)` for that common `y`;
/// * if `ε_j(e_i x) = ε_j(x) + 1` and `ε_i(e_j x) = ε_i(x) + 1`:
///   `y = e_i e_j² e_i x = e_j e_i² e_j x ≠ 0` with
///   `φ_j(y) − φ_j(f_i y) = φ_i(y) − φ_i(f_j y) = −1`;
///
/// together with the same three statements with `e ↔ f` and `ε ↔ φ`.
pub fn verify_stembridge(graph: &CrystalGraph) -> Result<StembridgeReport> {
    let cartan = graph.cartan_data();
    if !cartan.is_simply_laced() {
        return Err(Error::NotSimplyLaced);
    }
    if graph.truncated() {
        return Err(Error::TruncatedRange);
    }
    let v = EdgeView { g: graph };
    let n = cartan.rank();
    let pairs: Vec<(usize, usize, usize)> = graph
        .nodes()
        .flat_map(|x| (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (x, i, j))))
        .collect();
    let violations = pairs
        .par_iter()
        .flat_map_iter(|&(x, i, j)| {
            let mut out = Vec::new();
            for raise in [true, false] {
                check_stembridge_side(&v, cartan, x, i, j, raise, &mut out);
            }
            out
        })
        .collect();
    Ok(StembridgeReport { pairs_checked: pairs.len(), violations })
}

/// One side of the axioms. With `raise = false` every `e` becomes `f` and
/// every `ε` becomes `φ`.
fn check_stembridge_side(
    v: &EdgeView<'_>,
    cartan: &CartanData,
    x: usize,
    i: usize,
    j: usize,
    raise: bool,
    out: &mut Vec<Violation>,
) {
    let tag = if raise { "" } else { "'" };
    let up = |y: usize, k: usize| if raise { v.eps(y, k) } else { v.phi(y, k) };
    let down = |y: usize, k: usize| if raise { v.phi(y, k) } else { v.eps(y, k) };
    let step = |y: usize, k: usize| if raise { v.e(y, k) } else { v.f(y, k) };
    let back = |y: usize, k: usize| if raise { v.f(y, k) } else { v.e(y, k) };
    let name = |p: &str| format!("{p}{tag}");

    let Some(xi) = step(x, i) else { return };
    let d_up = up(xi, j) - up(x, j);
    let d_down = down(xi, j) - down(x, j);
    if d_down - d_up != cartan.entry(j, i) {
        out.push(violation(&name("P3"), x, vec![i, j], format!("Δ = ({d_up}, {d_down})")));
    }
    if !(0..=1).contains(&d_up) || d_down > 0 {
        out.push(violation(&name("P4"), x, vec![i, j], format!("Δ = ({d_up}, {d_down})")));
    }
    let Some(xj) = step(x, j) else { return };
    let d_up_ji = up(xj, i) - up(x, i);
    if d_up == 0 {
        match (step(xj, i), step(xi, j)) {
            (Some(a), Some(b)) if a == b => {
                if back(a, j).map(|z| down(a, i) - down(z, i)) != Some(0) {
                    out.push(violation(&name("P5"), x, vec![i, j], "∇ ≠ 0"));
                }
            }
            _ => out.push(violation(&name("P5"), x, vec![i, j], "operators do not commute")),
        }
    }
    if d_up == 1 && d_up_ji == 1 {
        let dir = raise;
        let a = v.chain(x, &[(dir, i), (dir, j), (dir, j), (dir, i)]);
        let b = v.chain(x, &[(dir, j), (dir, i), (dir, i), (dir, j)]);
        match (a, b) {
            (Some(a), Some(b)) if a == b => {
                let nab_i = back(a, i).map(|z| down(a, j) - down(z, j));
                let nab_j = back(a, j).map(|z| down(a, i) - down(z, i));
                if nab_i != Some(-1) || nab_j != Some(-1) {
                    out.push(violation(&name("P6"), x, vec![i, j], "∇ ≠ −1"));
                }
            }
            _ => out.push(violation(&name("P6"), x, vec![i, j], "braid relation fails")),
        }
    }
}
