use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, One, ToPrimitive, Zero};

use crate::linalg::{q, Q};
use crate::root_data::{CartanData, Weight, WeightPoint};
use crate::{Error, Result};

/// A breakpoint `(t, c)` standing for the point `tν − Σ c_j α_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Breakpoint {
    pub t: Q,
    pub coeffs: Vec<Q>,
}

impl Breakpoint {
    pub fn point(&self) -> WeightPoint {
        WeightPoint { hw_scale: self.t.clone(), root_coeffs: self.coeffs.clone() }
    }
}

/// A normalized piecewise-linear path from the origin.
///
/// Invariants: `t` strictly increasing from 0 to 1, first point at the origin,
/// no interior breakpoint where the velocity is unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlPath {
    hw: Vec<i64>,
    breakpoints: Vec<Breakpoint>,
}

/// The dominant path `t ↦ tν`, the highest weight element of `B(ν)`.
pub fn straight_path(cartan: &CartanData, hw: &[i64]) -> Result<PlPath> {
    cartan.check_dominant(hw)?;
    let n = cartan.rank();
    Ok(PlPath {
        hw: hw.to_vec(),
        breakpoints: vec![Breakpoint { t: q(0), coeffs: vec![q(0); n] }, Breakpoint { t: q(1), coeffs: vec![q(0); n] }],
    })
}

impl PlPath {
    pub fn highest_weight(&self) -> &[i64] {
        &self.hw
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// `h_i` at each breakpoint.
    fn heights(&self, cartan: &CartanData, i: usize) -> Vec<Q> {
        let nu_i = q(self.hw[i]);
        let row = &cartan.matrix()[i];
        self.breakpoints
            .iter()
            .map(|bp| {
                let mut h = &bp.t * &nu_i;
                for (c, &a) in bp.coeffs.iter().zip(row) {
                    if a != 0 && !c.is_zero() {
                        h -= c * q(a);
                    }
                }
                h
            })
            .collect()
    }

    /// The endpoint, which is the weight of the element.
    pub fn endpoint(&self) -> Weight {
        let last = self.breakpoints.last().expect("path has breakpoints");
        Weight::new(
            self.hw.clone(),
            last.coeffs
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer(), "non-integral endpoint");
                    c.to_integer().to_i64().expect("endpoint coordinate overflows i64")
                })
                .collect(),
        )
    }

    fn min_height(heights: &[Q]) -> Q {
        heights.iter().min().cloned().expect("nonempty")
    }

    /// `ε_i = −min_t h_i(t)`.
    pub fn eps(&self, cartan: &CartanData, i: usize) -> u32 {
        let h = self.heights(cartan, i);
        let m = Self::min_height(&h);
        debug_assert!(m.is_integer());
        (-m).to_integer().to_u32().expect("ε out of range")
    }

    /// `φ_i = h_i(1) − min_t h_i(t)`.
    pub fn phi(&self, cartan: &CartanData, i: usize) -> u32 {
        let h = self.heights(cartan, i);
        let m = Self::min_height(&h);
        (h.last().unwrap() - m).to_integer().to_u32().expect("φ out of range")
    }

    /// Point on the segment between breakpoints `k` and `k+1` where `h_i`
    /// takes the value `target`, strictly inside or at the right end.
    fn interpolate(&self, k: usize, hk: &Q, hk1: &Q, target: &Q) -> Breakpoint {
        let a = &self.breakpoints[k];
        let b = &self.breakpoints[k + 1];
        let s = (target - hk) / (hk1 - hk);
        Breakpoint {
            t: &a.t + &s * (&b.t - &a.t),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + &s * (y - x)).collect(),
        }
    }

    /// The lowering root operator `f_i`.
    ///
    /// Let `m` be the minimum of `h_i` and `p` the last time it is attained.
    /// The piece between `p` and the first later time `x` with `h_i(x) = m+1`
    /// is reflected by `s_i`, and the remainder is translated by `−α_i`.
    pub fn f(&self, cartan: &CartanData, i: usize) -> Option<PlPath> {
        let h = self.heights(cartan, i);
        let m = Self::min_height(&h);
        let top = &m + Q::one();
        if *h.last().unwrap() < top {
            return None;
        }
        let p = h.iter().rposition(|x| *x == m).unwrap();
        // First segment after p reaching m+1.
        let k = (p..h.len() - 1).find(|&k| h[k + 1] >= top).unwrap();
        let mut pts: Vec<Breakpoint> = Vec::with_capacity(self.breakpoints.len() + 1);
        let mut hts: Vec<Q> = Vec::with_capacity(self.breakpoints.len() + 1);
        pts.extend_from_slice(&self.breakpoints[..=k]);
        hts.extend_from_slice(&h[..=k]);
        let x_index;
        if h[k + 1] == top {
            pts.push(self.breakpoints[k + 1].clone());
            hts.push(h[k + 1].clone());
            x_index = k + 1;
            pts.extend_from_slice(&self.breakpoints[k + 2..]);
            hts.extend_from_slice(&h[k + 2..]);
        } else {
            pts.push(self.interpolate(k, &h[k], &h[k + 1], &top));
            hts.push(top.clone());
            x_index = k + 1;
            pts.extend_from_slice(&self.breakpoints[k + 1..]);
            hts.extend_from_slice(&h[k + 1..]);
        }
        for (idx, (bp, ht)) in pts.iter_mut().zip(&hts).enumerate() {
            if idx <= p {
                continue;
            }
            if idx <= x_index {
                bp.coeffs[i] += ht - &m;
            } else {
                bp.coeffs[i] += Q::one();
            }
        }
        Some(self.with_breakpoints(pts))
    }

    /// The raising root operator `e_i`.
    ///
    /// Let `m` be the minimum of `h_i` and `q` the first time it is attained.
    /// The piece between the last earlier time `y` with `h_i(y) = m+1` and `q`
    /// is reflected by `s_i`, and the remainder is translated by `+α_i`.
    pub fn e(&self, cartan: &CartanData, i: usize) -> Option<PlPath> {
        let h = self.heights(cartan, i);
        let m = Self::min_height(&h);
        let top = &m + Q::one();
        if top > Q::zero() {
            return None;
        }
        let qi = h.iter().position(|x| *x == m).unwrap();
        // Last segment before qi starting at height ≥ m+1.
        let k = (0..qi).rev().find(|&k| h[k] >= top).unwrap();
        let mut pts: Vec<Breakpoint> = Vec::with_capacity(self.breakpoints.len() + 1);
        let mut hts: Vec<Q> = Vec::with_capacity(self.breakpoints.len() + 1);
        pts.extend_from_slice(&self.breakpoints[..=k]);
        hts.extend_from_slice(&h[..=k]);
        let y_index = if h[k] == top {
            k
        } else {
            pts.push(self.interpolate(k, &h[k], &h[k + 1], &top));
            hts.push(top.clone());
            k + 1
        };
        let q_index = pts.len() + (qi - (k + 1));
        pts.extend_from_slice(&self.breakpoints[k + 1..]);
        hts.extend_from_slice(&h[k + 1..]);
        for (idx, (bp, ht)) in pts.iter_mut().zip(&hts).enumerate() {
            if idx <= y_index {
                continue;
            }
            if idx <= q_index {
                bp.coeffs[i] += ht - &top;
            } else {
                bp.coeffs[i] -= Q::one();
            }
        }
        Some(self.with_breakpoints(pts))
    }

    fn with_breakpoints(&self, pts: Vec<Breakpoint>) -> PlPath {
        let mut path = PlPath { hw: self.hw.clone(), breakpoints: pts };
        path.normalize();
        path
    }

    /// Drops interior breakpoints where the velocity does not change.
    pub fn normalize(&mut self) {
        let mut out: Vec<Breakpoint> = Vec::with_capacity(self.breakpoints.len());
        for bp in self.breakpoints.drain(..) {
            if let Some(last) = out.last() {
                if last.t == bp.t {
                    continue;
                }
            }
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                let dt1 = &b.t - &a.t;
                let dt2 = &bp.t - &b.t;
                let collinear =
                    a.coeffs.iter().zip(&b.coeffs).zip(&bp.coeffs).all(|((x, y), z)| (y - x) * &dt2 == (z - y) * &dt1);
                if collinear {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(bp);
        }
        self.breakpoints = out;
    }

    /// Canonical text key: `t:c_0,c_1|t:c_0,c_1|…` with reduced fractions.
    pub fn key(&self) -> String {
        let mut s = String::new();
        for (k, bp) in self.breakpoints.iter().enumerate() {
            if k > 0 {
                s.push('|');
            }
            write!(s, "{}:", bp.t).unwrap();
            for (j, c) in bp.coeffs.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                write!(s, "{c}").unwrap();
            }
        }
        s
    }

    /// Parses a key produced by [`PlPath::key`].
    pub fn from_key(hw: &[i64], key: &str) -> Result<PlPath> {
        let bad = || Error::Parse(format!("bad path key {key:?}"));
        let parse_q = |s: &str| -> Result<Q> {
            match s.split_once('/') {
                Some((n, d)) => {
                    let n = BigInt::from_str(n).map_err(|_| bad())?;
                    let d = BigInt::from_str(d).map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Q::new(n, d))
                }
                None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
            }
        };
        let mut breakpoints = Vec::new();
        for part in key.split('|') {
            let (t, cs) = part.split_once(':').ok_or_else(bad)?;
            let coeffs = cs.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
            if coeffs.len() != hw.len() {
                return Err(bad());
            }
            breakpoints.push(Breakpoint { t: parse_q(t)?, coeffs });
        }
        let first_ok = breakpoints.first().is_some_and(|b| b.t.is_zero() && b.coeffs.iter().all(Zero::is_zero));
        let last_ok = breakpoints.last().is_some_and(|b| b.t.is_one());
        let increasing = breakpoints.windows(2).all(|w| w[0].t < w[1].t);
        if breakpoints.len() < 2 || !first_ok || !last_ok || !increasing {
            return Err(bad());
        }
        let mut path = PlPath { hw: hw.to_vec(), breakpoints };
        path.normalize();
        Ok(path)
    }
}
