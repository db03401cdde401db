//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use kmcrystal::{generate_complete, CartanData, Crystal, CrystalGraph, Signature, TensorCrystal, TensorLabel};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn cartan(name: &str) -> CartanData {
    CartanData::from_name(name).unwrap()
}

pub fn crystal(name: &str, hw: &[i64]) -> CrystalGraph {
    generate_complete(&cartan(name), hw).unwrap()
}

pub fn tensor(name: &str, hws: &[&[i64]]) -> TensorCrystal {
    TensorCrystal::new(hws.iter().map(|hw| crystal(name, hw)).collect()).unwrap()
}

/// Dominant weights with `Σ ν_i ≤ max_height`, in lexicographic order.
pub fn dominant_weights(rank: usize, max_height: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                let used: i64 = w.iter().sum();
                (0..=max_height - used).map(move |k| {
                    let mut v = w.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// The single-crystal desk: types A1, A2, B2, G2 with height at most 6.
pub fn desk_weights() -> Vec<(&'static str, Vec<i64>)> {
    let mut out = Vec::new();
    for (name, rank) in [("A1", 1), ("A2", 2), ("B2", 2), ("G2", 2)] {
        for nu in dominant_weights(rank, 6) {
            out.push((name, nu));
        }
    }
    out
}

/// Small tensor products used across the property suites.
pub fn desk_tensors() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![
        ("A1", vec![vec![1], vec![1]]),
        ("A1", vec![vec![2], vec![2]]),
        ("A1", vec![vec![1], vec![1], vec![1]]),
        ("A1", vec![vec![3], vec![3], vec![3]]),
        ("A1", vec![vec![2], vec![1], vec![3]]),
        ("A2", vec![vec![1, 0], vec![1, 0]]),
        ("A2", vec![vec![1, 0], vec![0, 1]]),
        ("A2", vec![vec![1, 1], vec![1, 0]]),
        ("A2", vec![vec![0, 1], vec![1, 0], vec![1, 0]]),
        ("B2", vec![vec![1, 0], vec![0, 1]]),
        ("G2", vec![vec![0, 1], vec![0, 1]]),
    ]
}

pub fn build_tensor(name: &str, hws: &[Vec<i64>]) -> TensorCrystal {
    TensorCrystal::new(hws.iter().map(|hw| crystal(name, hw)).collect()).unwrap()
}

/// The sl₂ label whose factors have the given weights (unique in sl₂).
pub fn sl2_label(t: &TensorCrystal, weights: &[i64]) -> TensorLabel {
    TensorLabel(weights.iter().zip(t.factors()).map(|(&w, g)| g.nodes_with_pairings(&[w])[0]).collect())
}

/// Weyl dimension from hard-coded positive roots (in simple-root
/// coordinates) and symmetrizers, for the desk types only.
pub fn weyl_dimension_oracle(name: &str, nu: &[i64]) -> u128 {
    let (roots, d): (Vec<Vec<i64>>, Vec<i64>) = match name {
        "A1" => (vec![vec![1]], vec![1]),
        "A2" => (vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![1, 1]),
        // Node 0 long, node 1 short.
        "B2" => (vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]], vec![2, 1]),
        "G2" => (vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 3]], vec![3, 1]),
        _ => panic!("no oracle for {name}"),
    };
    let (mut num, mut den) = (1u128, 1u128);
    for r in roots {
        num *= r.iter().zip(&d).zip(nu).map(|((k, dj), v)| k * dj * (v + 1)).sum::<i64>() as u128;
        den *= r.iter().zip(&d).map(|(k, dj)| k * dj).sum::<i64>() as u128;
    }
    assert_eq!(num % den, 0);
    num / den
}

/// Flattened signs of a signature: `true` for `+`.
pub fn flat_signs(sig: &Signature) -> Vec<bool> {
    sig.groups()
        .iter()
        .flat_map(|&(p, m)| std::iter::repeat_n(true, p as usize).chain(std::iter::repeat_n(false, m as usize)))
        .collect()
}

/// Cancels adjacent (ignoring crossed symbols) `−+` pairs in random order
/// until none remain. Returns the crossed mask.
pub fn naive_reduce<R: Rng>(signs: &[bool], rng: &mut R) -> Vec<bool> {
    let mut crossed = vec![false; signs.len()];
    loop {
        let live: Vec<usize> = (0..signs.len()).filter(|&p| !crossed[p]).collect();
        let candidates: Vec<(usize, usize)> =
            live.windows(2).filter(|w| !signs[w[0]] && signs[w[1]]).map(|w| (w[0], w[1])).collect();
        match candidates.choose(rng) {
            Some(&(a, b)) => {
                crossed[a] = true;
                crossed[b] = true;
            }
            None => return crossed,
        }
    }
}

/// The two-factor rule: `e` acts on the right factor iff `ε(b₂) > φ(b₁)`,
/// `f` acts on the left factor iff `φ(b₁) > ε(b₂)`.
pub struct TwoFactor<'a> {
    pub left: &'a CrystalGraph,
    pub right: &'a CrystalGraph,
}

impl TwoFactor<'_> {
    pub fn eps(&self, (a, b): (usize, usize), i: usize) -> u32 {
        let (e1, p1, e2) = (self.left.node_eps(a)[i], self.left.node_phi(a)[i], self.right.node_eps(b)[i]);
        e1 + e2.saturating_sub(p1)
    }

    pub fn phi(&self, (a, b): (usize, usize), i: usize) -> u32 {
        let (p1, e2, p2) = (self.left.node_phi(a)[i], self.right.node_eps(b)[i], self.right.node_phi(b)[i]);
        p2 + p1.saturating_sub(e2)
    }

    pub fn e(&self, (a, b): (usize, usize), i: usize) -> Option<(usize, usize)> {
        if self.right.node_eps(b)[i] > self.left.node_phi(a)[i] {
            self.right.e_edge(b, i).map(|y| (a, y))
        } else {
            self.left.e_edge(a, i).map(|x| (x, b))
        }
    }

    pub fn f(&self, (a, b): (usize, usize), i: usize) -> Option<(usize, usize)> {
        if self.left.node_phi(a)[i] > self.right.node_eps(b)[i] {
            self.left.f_edge(a, i).map(|x| (x, b))
        } else {
            self.right.f_edge(b, i).map(|y| (a, y))
        }
    }
}

/// `φ_i` by applying `f_i` until it vanishes.
pub fn count_f<C: Crystal>(c: &C, b: &C::Elem, i: usize) -> u32 {
    let mut cur = b.clone();
    let mut k = 0;
    while let Some(n) = c.f(&cur, i).unwrap() {
        cur = n;
        k += 1;
    }
    k
}

/// `ε_i` by applying `e_i` until it vanishes.
pub fn count_e<C: Crystal>(c: &C, b: &C::Elem, i: usize) -> u32 {
    let mut cur = b.clone();
    let mut k = 0;
    while let Some(n) = c.e(&cur, i).unwrap() {
        cur = n;
        k += 1;
    }
    k
}

/// Raising check result: number of instances exercised per case and the
/// violations found.
#[derive(Debug, Default)]
pub struct RaiseTally {
    pub case1: usize,
    pub case2: usize,
    pub case3: usize,
    pub violations: Vec<String>,
}

/// For every label `λ`, colour `i` and factor `ℓ` with
/// `h_{−,ℓ}(λ) > h_{−,ℓ+1}(λ)`, lower factor `ℓ` by `f_i` to get `μ̄` and raise
/// any single factor `j` of `μ̄` by `e_i` to get `μ′`. Then
/// (1) `j < ℓ` gives `h_{−,ℓ}(μ′) = h_{−,ℓ}(λ) − 1`,
/// (2) `j = ℓ` and `μ′ ≠ λ` gives `h_{−,ℓ}(μ′) > h_{−,ℓ}(λ)`,
/// (3) `j > ℓ` gives `h_{−,ℓ}(μ′) > h_{−,ℓ}(λ)`.
pub fn check_h_minus_raising(t: &TensorCrystal) -> RaiseTally {
    let mut tally = RaiseTally::default();
    let n = t.num_factors();
    let rank = t.factors()[0].cartan_data().rank();
    for lambda in t.labels() {
        for i in 0..rank {
            for ell in 0..n {
                let h = t.h_minus_from(&lambda, i, ell).unwrap();
                if h <= t.h_minus_from(&lambda, i, ell + 1).unwrap() {
                    continue;
                }
                let Some(lowered) = t.factors()[ell].f_edge(lambda.0[ell], i) else {
                    tally.violations.push(format!("{lambda}: factor {ell} cannot be lowered"));
                    continue;
                };
                let mut mu_bar = lambda.clone();
                mu_bar.0[ell] = lowered;
                for j in 0..n {
                    let Some(raised) = t.factors()[j].e_edge(mu_bar.0[j], i) else { continue };
                    let mut mu = mu_bar.clone();
                    mu.0[j] = raised;
                    let hm = t.h_minus_from(&mu, i, ell).unwrap();
                    let ok = match j.cmp(&ell) {
                        std::cmp::Ordering::Less => {
                            tally.case1 += 1;
                            hm + 1 == h
                        }
                        std::cmp::Ordering::Equal => {
                            if mu == lambda {
                                continue;
                            }
                            tally.case2 += 1;
                            hm > h
                        }
                        std::cmp::Ordering::Greater => {
                            tally.case3 += 1;
                            hm > h
                        }
                    };
                    if !ok {
                        tally.violations.push(format!("λ={lambda} i={i} ℓ={ell} j={j}: h={h}, h(μ′)={hm}"));
                    }
                }
            }
        }
    }
    tally
}
