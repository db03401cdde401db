use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{CartanData, Weight, WeightTuple};
use crate::linalg::{q, solve_unique, to_q_matrix, Q};
use crate::{Error, Result};

/// Outcome of a dominance test `β₁ ≤ β₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Leq,
    NotLeq,
    /// `β₂ − β₁` is not in the root lattice, so the weights are incomparable.
    NotInRootLattice,
}

impl Dominance {
    pub fn holds(self) -> bool {
        self == Dominance::Leq
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TupleOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

fn check_rank(cartan: &CartanData, w: &Weight) -> Result<()> {
    if w.fund.len() != cartan.rank() || w.root.len() != cartan.rank() {
        return Err(Error::MixedCartanData);
    }
    Ok(())
}

/// Rational coordinates `x` with `hi − lo = Σ x_j α_j`, or `None` if the
/// difference is not in the rational span of the simple roots.
pub fn root_difference(cartan: &CartanData, lo: &Weight, hi: &Weight) -> Result<Option<Vec<Q>>> {
    check_rank(cartan, lo)?;
    check_rank(cartan, hi)?;
    let n = cartan.rank();
    let delta_fund: Vec<i64> = hi.fund.iter().zip(&lo.fund).map(|(a, b)| a - b).collect();
    let from_fund = if delta_fund.iter().all(|&x| x == 0) {
        vec![Q::zero(); n]
    } else {
        // Σ x_j α_j = Σ Δf_i ω_i  ⇔  A x = Δf and ⟨Σ x_j α_j, d_k⟩ = x_k = 0.
        let mut rows = to_q_matrix(cartan.matrix());
        let mut rhs: Vec<Q> = delta_fund.iter().map(|&x| q(x)).collect();
        for &k in cartan.extension_nodes() {
            let mut unit = vec![Q::zero(); n];
            unit[k] = q(1);
            rows.push(unit);
            rhs.push(Q::zero());
        }
        match solve_unique(&rows, &rhs) {
            Some(x) => x,
            None => return Ok(None),
        }
    };
    // hi − lo = Σ Δf ω − Σ (hi.root − lo.root) α
    Ok(Some(from_fund.into_iter().zip(hi.root.iter().zip(&lo.root)).map(|(x, (h, l))| x - q(h - l)).collect()))
}

/// Whether two weights are equal as elements of the weight space.
pub fn weights_equal(cartan: &CartanData, a: &Weight, b: &Weight) -> Result<bool> {
    Ok(root_difference(cartan, a, b)?.is_some_and(|x| x.iter().all(Zero::is_zero)))
}

/// `β₁ ≤ β₂` iff `β₂ − β₁` is a non-negative integer combination of simple roots.
pub fn dominance_leq(cartan: &CartanData, b1: &Weight, b2: &Weight) -> Result<Dominance> {
    let Some(diff) = root_difference(cartan, b1, b2)? else {
        return Ok(Dominance::NotInRootLattice);
    };
    if diff.iter().any(|x| !x.is_integer()) {
        return Ok(Dominance::NotInRootLattice);
    }
    if diff.iter().all(|x| !x.is_negative()) {
        Ok(Dominance::Leq)
    } else {
        Ok(Dominance::NotLeq)
    }
}

/// The inverse dominance order on tuples with equal totals:
/// `μ ≥ μ'` iff `Σ_{i≤j} μ_i ≤ Σ_{i≤j} μ'_i` for every `j`.
pub fn inverse_dominance_compare(cartan: &CartanData, a: &WeightTuple, b: &WeightTuple) -> Result<TupleOrder> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    for w in a.0.iter().chain(&b.0) {
        check_rank(cartan, w)?;
    }
    let mut identical = true;
    for (x, y) in a.0.iter().zip(&b.0) {
        if !weights_equal(cartan, x, y)? {
            identical = false;
            break;
        }
    }
    if identical {
        return Ok(TupleOrder::Equal);
    }
    if !weights_equal(cartan, &a.total(), &b.total())? {
        return Ok(TupleOrder::Incomparable);
    }
    let n = a.len();
    let mut a_geq = true;
    let mut a_leq = true;
    for j in 1..n {
        let sa = a.partial_sum(j);
        let sb = b.partial_sum(j);
        if a_geq && !dominance_leq(cartan, &sa, &sb)?.holds() {
            a_geq = false;
        }
        if a_leq && !dominance_leq(cartan, &sb, &sa)?.holds() {
            a_leq = false;
        }
    }
    Ok(match (a_geq, a_leq) {
        (true, false) => TupleOrder::Greater,
        (false, true) => TupleOrder::Less,
        // Both would force every partial sum, hence every entry, to agree.
        (true, true) => TupleOrder::Equal,
        (false, false) => TupleOrder::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> CartanData {
        CartanData::from_name("A1").unwrap()
    }

    fn sl2_weight(n: i64) -> Weight {
        Weight::from_pairings(&[n])
    }

    #[test]
    fn sl2_single_root() {
        let c = sl2();
        assert_eq!(dominance_leq(&c, &sl2_weight(1), &sl2_weight(3)).unwrap(), Dominance::Leq);
        assert_eq!(dominance_leq(&c, &sl2_weight(3), &sl2_weight(1)).unwrap(), Dominance::NotLeq);
        assert_eq!(dominance_leq(&c, &sl2_weight(3), &sl2_weight(3)).unwrap(), Dominance::Leq);
        assert_eq!(dominance_leq(&c, &sl2_weight(0), &sl2_weight(1)).unwrap(), Dominance::NotInRootLattice);
    }

    #[test]
    fn sl3_non_integral_difference() {
        // 2ω₂ = (2/3)α₁ + (4/3)α₂
        let c = CartanData::from_name("A2").unwrap();
        let b1 = Weight::from_pairings(&[1, -1]);
        let b2 = Weight::from_pairings(&[1, 1]);
        let diff = root_difference(&c, &b1, &b2).unwrap().unwrap();
        assert_eq!(diff, vec![Q::new(2.into(), 3.into()), Q::new(4.into(), 3.into())]);
        assert_eq!(dominance_leq(&c, &b1, &b2).unwrap(), Dominance::NotInRootLattice);
        assert!(!dominance_leq(&c, &b1, &b2).unwrap().holds());
    }

    #[test]
    fn affine_uses_root_coordinates() {
        let c = CartanData::from_name("A1^(1)").unwrap();
        let lam0 = Weight::from_pairings(&[1, 0]);
        let delta_below = lam0.lowered(0, 1).lowered(1, 1);
        // Same pairings, but Λ₀ − δ < Λ₀.
        assert_eq!(delta_below.pairings(&c), lam0.pairings(&c));
        assert_eq!(dominance_leq(&c, &delta_below, &lam0).unwrap(), Dominance::Leq);
        assert_eq!(dominance_leq(&c, &lam0, &delta_below).unwrap(), Dominance::NotLeq);
        // 2Λ₁ − 2Λ₀ = α₁ in the standard realization.
        let a = Weight::from_pairings(&[2, 0]);
        let b = Weight::from_pairings(&[0, 2]);
        assert_eq!(root_difference(&c, &a, &b).unwrap(), Some(vec![q(0), q(1)]));
        assert_eq!(dominance_leq(&c, &a, &b).unwrap(), Dominance::Leq);
    }

    #[test]
    fn tuple_examples() {
        let c = sl2();
        let t = |v: &[i64]| WeightTuple(v.iter().map(|&x| sl2_weight(x)).collect());
        assert_eq!(inverse_dominance_compare(&c, &t(&[1, 1]), &t(&[1, 1])).unwrap(), TupleOrder::Equal);
        assert_eq!(inverse_dominance_compare(&c, &t(&[1, 1]), &t(&[3, -1])).unwrap(), TupleOrder::Greater);
        assert_eq!(inverse_dominance_compare(&c, &t(&[1, 3]), &t(&[3, 1])).unwrap(), TupleOrder::Greater);
        assert_eq!(inverse_dominance_compare(&c, &t(&[3, 1]), &t(&[1, 3])).unwrap(), TupleOrder::Less);
        assert_eq!(inverse_dominance_compare(&c, &t(&[1, 3]), &t(&[3, 3])).unwrap(), TupleOrder::Incomparable);
        assert_eq!(inverse_dominance_compare(&c, &t(&[1]), &t(&[1, 1])), Err(Error::LengthMismatch(1, 2)));
        let bad = WeightTuple(vec![Weight::from_pairings(&[1, 0])]);
        assert_eq!(inverse_dominance_compare(&c, &t(&[1]), &bad), Err(Error::MixedCartanData));
    }
}
