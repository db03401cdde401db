//! Small dense exact linear algebra over `BigRational`.

use num::{BigInt, BigRational, One, Signed, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn to_q_matrix(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

/// Row-reduces `m` in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let factor = m[k][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(m: &[Vec<Q>]) -> usize {
    let mut m = m.to_vec();
    row_reduce(&mut m).len()
}

pub(crate) fn determinant(m: &[Vec<i64>]) -> Q {
    let n = m.len();
    let mut a = to_q_matrix(m);
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for k in c + 1..n {
            if !a[k][c].is_zero() {
                let factor = &a[k][c] / &a[c][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[k].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &factor * y;
                }
            }
        }
    }
    det
}

/// Whether the symmetric matrix `m` is positive definite (Sylvester's criterion).
pub(crate) fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

/// Solves `a x = b` when the solution is unique. Returns `None` if the system
/// is inconsistent or underdetermined.
pub(crate) fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    Some((0..cols).map(|c| aug[c][cols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_of_small_cartan_matrices() {
        assert_eq!(determinant(&[vec![2]]), q(2));
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), q(3));
        assert_eq!(determinant(&[vec![2, -2], vec![-2, 2]]), q(0));
        assert_eq!(determinant(&[vec![2, -1], vec![-3, 2]]), q(1));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = to_q_matrix(&[vec![1, 1], vec![2, 2]]);
        assert!(solve_unique(&a, &[q(1), q(3)]).is_none());
        let a = to_q_matrix(&[vec![2, -1], vec![-1, 2]]);
        let x = solve_unique(&a, &[q(0), q(2)]).unwrap();
        assert_eq!(x, vec![Q::new(2.into(), 3.into()), Q::new(4.into(), 3.into())]);
    }
}
