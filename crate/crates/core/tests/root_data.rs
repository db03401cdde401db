mod common;

use std::collections::HashSet;

use common::cartan;
use kmcrystal::{dominance_leq, inverse_dominance_compare, CartanData, Dominance, TupleOrder, Weight, WeightTuple};
use proptest::prelude::*;

/// Coroot pairings of `Σ c_j α_j`.
fn root_pairings(c: &CartanData, coeffs: &[i64]) -> Vec<i64> {
    (0..c.rank()).map(|i| (0..c.rank()).map(|j| coeffs[j] * c.entry(i, j)).sum()).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All coefficient vectors with entries in `lo..=hi` and `Σ|c_j| ≤ height`.
fn coefficient_box(rank: usize, lo: i64, hi: i64, height: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).filter_map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    (w.iter().map(|x| x.abs()).sum::<i64>() <= height).then_some(w)
                })
            })
            .collect();
    }
    out
}

#[test]
fn dominance_agrees_with_brute_force_up_to_height_ten() {
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let c = cartan(name);
        let rank = c.rank();
        let cone: HashSet<Vec<i64>> = coefficient_box(rank, 0, 10, 10).iter().map(|k| root_pairings(&c, k)).collect();
        let base: Vec<i64> = (0..rank as i64).map(|i| i - 1).collect();
        let b1 = Weight::from_pairings(&base);
        for coeffs in coefficient_box(rank, -4, 10, 10) {
            let shift = root_pairings(&c, &coeffs);
            let b2 = Weight::from_pairings(&add(&base, &shift));
            let expected = if cone.contains(&shift) { Dominance::Leq } else { Dominance::NotLeq };
            assert_eq!(dominance_leq(&c, &b1, &b2).unwrap(), expected, "{name} {coeffs:?}");
        }
    }
}

#[test]
fn non_lattice_differences_are_flagged() {
    let c = cartan("A2");
    let w1 = Weight::from_pairings(&[1, -1]);
    let w2 = Weight::from_pairings(&[1, 1]);
    assert_eq!(dominance_leq(&c, &w1, &w2).unwrap(), Dominance::NotInRootLattice);
    assert_eq!(
        dominance_leq(&c, &Weight::zero(2), &Weight::from_pairings(&[1, 0])).unwrap(),
        Dominance::NotInRootLattice
    );
    let c = cartan("A1");
    assert_eq!(dominance_leq(&c, &Weight::zero(1), &Weight::from_pairings(&[1])).unwrap(), Dominance::NotInRootLattice);
}

fn tuple(ws: &[Vec<i64>]) -> WeightTuple {
    WeightTuple(ws.iter().map(|w| Weight::from_pairings(w)).collect())
}

/// Moves `k α_j` from position `p` to position `p + 1`, keeping the total.
fn shift_tuple(c: &CartanData, t: &[Vec<i64>], moves: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut t = t.to_vec();
    let n = t.len();
    for &(p, j, k) in moves {
        let p = p % (n - 1);
        let mut coeffs = vec![0; c.rank()];
        coeffs[j % c.rank()] = k;
        let s = root_pairings(c, &coeffs);
        t[p] = add(&t[p], &s);
        t[p + 1] = t[p + 1].iter().zip(&s).map(|(x, y)| x - y).collect();
    }
    t
}

fn geq(o: TupleOrder) -> bool {
    matches!(o, TupleOrder::Greater | TupleOrder::Equal)
}

/// `(position, colour, multiple)` moves applied by [`shift_tuple`].
type Moves = Vec<(usize, usize, i64)>;

fn order_case() -> impl Strategy<Value = (&'static str, Vec<Vec<i64>>, [Moves; 2])> {
    let moves = || proptest::collection::vec((0usize..3, 0usize..2, -2i64..=2), 0..4);
    (
        prop_oneof![Just("A1"), Just("A2")],
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 2..=4),
        moves(),
        moves(),
    )
        .prop_map(|(name, t, m1, m2)| {
            let rank = if name == "A1" { 1 } else { 2 };
            let t = t.into_iter().map(|w| w[..rank].to_vec()).collect();
            (name, t, [m1, m2])
        })
}

proptest! {
    #[test]
    fn inverse_dominance_is_a_partial_order((name, a, moves) in order_case()) {
        let c = cartan(name);
        let b = shift_tuple(&c, &a, &moves[0]);
        let d = shift_tuple(&c, &b, &moves[1]);
        let (ta, tb, td) = (tuple(&a), tuple(&b), tuple(&d));
        prop_assert_eq!(inverse_dominance_compare(&c, &ta, &ta).unwrap(), TupleOrder::Equal);
        let ab = inverse_dominance_compare(&c, &ta, &tb).unwrap();
        let ba = inverse_dominance_compare(&c, &tb, &ta).unwrap();
        let expected = match ab {
            TupleOrder::Greater => TupleOrder::Less,
            TupleOrder::Less => TupleOrder::Greater,
            other => other,
        };
        prop_assert_eq!(ba, expected);
        prop_assert_eq!(ab == TupleOrder::Equal, a == b);
        let bd = inverse_dominance_compare(&c, &tb, &td).unwrap();
        if geq(ab) && geq(bd) {
            prop_assert!(geq(inverse_dominance_compare(&c, &ta, &td).unwrap()));
        }
    }

    #[test]
    fn unequal_totals_are_incomparable(a in proptest::collection::vec(-3i64..=3, 2), b in proptest::collection::vec(-3i64..=3, 2), s in 1i64..=3) {
        let c = cartan("A1");
        let ta = tuple(&[vec![a[0]], vec![a[1]]]);
        let tb = tuple(&[vec![b[0]], vec![a[0] + a[1] - b[0] + 2 * s]]);
        prop_assert_eq!(inverse_dominance_compare(&c, &ta, &tb).unwrap(), TupleOrder::Incomparable);
    }
}

#[test]
fn sl2_examples_match_hand_checks() {
    let c = cartan("A1");
    let cmp = |a: &[i64], b: &[i64]| {
        inverse_dominance_compare(&c, &tuple(&[vec![a[0]], vec![a[1]]]), &tuple(&[vec![b[0]], vec![b[1]]])).unwrap()
    };
    assert_eq!(cmp(&[1, 1], &[3, -1]), TupleOrder::Greater);
    assert_eq!(cmp(&[1, 3], &[3, 1]), TupleOrder::Greater);
    assert_eq!(cmp(&[3, 1], &[1, 3]), TupleOrder::Less);
    // Antisymmetry by brute force over all pairs with entries in [-3, 3].
    for a0 in -3..=3 {
        for a1 in -3..=3 {
            for b0 in -3..=3 {
                for b1 in -3..=3 {
                    let (x, y) = (cmp(&[a0, a1], &[b0, b1]), cmp(&[b0, b1], &[a0, a1]));
                    if x == TupleOrder::Greater {
                        assert_eq!(y, TupleOrder::Less);
                    }
                    if (a0, a1) != (b0, b1) {
                        assert_ne!(x, TupleOrder::Equal);
                    }
                }
            }
        }
    }
}

/// All tuples whose entries are weights of the given factors.
fn all_tuples(supports: &[Vec<Vec<i64>>]) -> Vec<Vec<Vec<i64>>> {
    let mut tuples: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for s in supports {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                s.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    tuples
}

/// Distinct weights of a crystal, as coroot pairings.
fn support(name: &str, nu: &[i64]) -> Vec<Vec<i64>> {
    let g = common::crystal(name, nu);
    let c = g.cartan_data().clone();
    let mut out: Vec<Vec<i64>> = g.nodes().map(|b| g.node_weight(b).pairings(&c)).collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn sets_above_a_tuple_are_finite_and_nested() {
    for (name, nus) in [("A1", vec![vec![2], vec![2], vec![1]]), ("A2", vec![vec![1, 0], vec![0, 1], vec![1, 0]])] {
        let c = cartan(name);
        let supports: Vec<_> = nus.iter().map(|nu| support(name, nu)).collect();
        let tuples = all_tuples(&supports);
        let wt: Vec<WeightTuple> = tuples.iter().map(|t| tuple(t)).collect();
        let n = tuples.len();
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            for y in 0..n {
                if inverse_dominance_compare(&c, &wt[y], &wt[x]).unwrap() == TupleOrder::Greater {
                    above[x].push(y);
                }
            }
        }
        for x in 0..n {
            // Strictly nested upper sets make every descending chain finite.
            for &y in &above[x] {
                assert!(above[y].len() < above[x].len(), "{name}: {:?} above {:?}", tuples[y], tuples[x]);
                assert!(above[y].iter().all(|z| above[x].contains(z)));
            }
        }
        // The highest-weight tuple is the minimum of its total.
        let top = tuples.iter().position(|t| *t == nus).unwrap();
        let same_total = tuples.iter().filter(|t| wt_total(t) == wt_total(&nus)).count();
        assert_eq!(above[top].len(), same_total - 1, "{name}");
        assert!(above.iter().any(Vec::is_empty));
    }
}

fn wt_total(t: &[Vec<i64>]) -> Vec<i64> {
    t.iter().fold(vec![0; t[0].len()], |acc, w| add(&acc, w))
}
