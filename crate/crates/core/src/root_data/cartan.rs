use std::fmt;

use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{determinant, is_positive_definite, q, rank, to_q_matrix, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanKind {
    Finite,
    Affine,
    General,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanKind::Finite => "finite",
            CartanKind::Affine => "affine",
            CartanKind::General => "general",
        })
    }
}

/// A validated symmetrizable generalized Cartan matrix.
///
/// `matrix[i][j] = ⟨α_j, α_i^∨⟩`, so row `i` holds the pairings of all simple
/// roots with the coroot `α_i^∨`. Node indices are `0..rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanData {
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    kind: CartanKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    /// Nodes whose extra coweights `d_k` complete the realization
    /// (`⟨α_j, d_k⟩ = δ_jk`). Empty for invertible matrices.
    #[serde(skip)]
    extension_nodes: Vec<usize>,
}

/// Validates a generalized Cartan matrix and computes its symmetrizer.
///
/// When `symmetrizer` is `None` the minimal positive integer symmetrizer is
/// computed per connected component of the Dynkin diagram.
pub fn validate_cartan(matrix: Vec<Vec<i64>>, symmetrizer: Option<Vec<i64>>) -> Result<CartanData> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::NotGcm("empty matrix".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotGcm(format!("row {i} has length {}, expected {n}", row.len())));
        }
        if row[i] != 2 {
            return Err(Error::NotGcm(format!("diagonal entry ({i},{i}) is {}", row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if row[j] > 0 {
                return Err(Error::NotGcm(format!("positive off-diagonal entry ({i},{j})")));
            }
            if (row[j] == 0) != (matrix[j][i] == 0) {
                return Err(Error::NotGcm(format!("zero pattern asymmetric at ({i},{j})")));
            }
        }
    }
    let symmetrizer = match symmetrizer {
        Some(d) => {
            if d.len() != n || d.iter().any(|&x| x <= 0) {
                return Err(Error::NotSymmetrizable);
            }
            d
        }
        None => minimal_symmetrizer(&matrix)?,
    };
    for i in 0..n {
        for j in 0..n {
            if symmetrizer[i] * matrix[i][j] != symmetrizer[j] * matrix[j][i] {
                return Err(Error::NotSymmetrizable);
            }
        }
    }
    let kind = detect_kind(&matrix, &symmetrizer);
    let extension_nodes = extension_nodes(&matrix);
    Ok(CartanData { matrix, symmetrizer, kind, name: None, extension_nodes })
}

fn minimal_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_j a_ji = d_i a_ij
                let dj = d[i].clone().unwrap() * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
        let lcm = component.iter().fold(num::BigInt::one(), |acc, &k| acc.lcm(d[k].as_ref().unwrap().denom()));
        let ints: Vec<num::BigInt> =
            component.iter().map(|&k| (d[k].clone().unwrap() * Q::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(num::BigInt::zero(), |acc, x| acc.gcd(x));
        for (&k, v) in component.iter().zip(ints) {
            out[k] = (v / &g).to_i64().ok_or(Error::NotSymmetrizable)?;
        }
    }
    Ok(out)
}

fn components(a: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for &s in nodes {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for &j in nodes {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn symmetrized(a: &[Vec<i64>], d: &[i64], nodes: &[usize]) -> Vec<Vec<i64>> {
    nodes.iter().map(|&i| nodes.iter().map(|&j| d[i] * a[i][j]).collect()).collect()
}

fn detect_kind(a: &[Vec<i64>], d: &[i64]) -> CartanKind {
    let all: Vec<usize> = (0..a.len()).collect();
    if is_positive_definite(&symmetrized(a, d, &all)) {
        return CartanKind::Finite;
    }
    // Indecomposable, singular, and every proper principal submatrix finite.
    if components(a, &all).len() == 1 && determinant(a).is_zero() {
        let proper_finite = (0..a.len()).all(|skip| {
            let rest: Vec<usize> = all.iter().copied().filter(|&k| k != skip).collect();
            rest.is_empty() || is_positive_definite(&symmetrized(a, d, &rest))
        });
        if proper_finite {
            return CartanKind::Affine;
        }
    }
    CartanKind::General
}

/// Greedily picks nodes `J` so that the stacked matrix `[A; e_J]` has full
/// column rank, i.e. the simple roots are linearly independent in the
/// realization with extra coweights indexed by `J`.
fn extension_nodes(a: &[Vec<i64>]) -> Vec<usize> {
    let n = a.len();
    let mut rows = to_q_matrix(a);
    let mut current = rank(&rows);
    let mut out = Vec::new();
    for j in 0..n {
        if current == n {
            break;
        }
        let mut unit = vec![Q::zero(); n];
        unit[j] = Q::one();
        rows.push(unit);
        let r = rank(&rows);
        if r > current {
            current = r;
            out.push(j);
        } else {
            rows.pop();
        }
    }
    out
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `a_ij = ⟨α_j, α_i^∨⟩`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.kind == CartanKind::Finite
    }

    pub fn is_simply_laced(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| i == j || x == 0 || x == -1))
    }

    pub(crate) fn extension_nodes(&self) -> &[usize] {
        &self.extension_nodes
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Looks up a built-in Cartan type by name.
    ///
    /// Accepted spellings: `A3`, `A_3`, `E8`, `G2`, and for untwisted affine
    /// type A: `A1^(1)`, `A_1^(1)`, `A1(1)` or `A1~`. Node 0 is the affine node.
    pub fn from_name(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownCartan(name.to_string());
        let cleaned: String = name.chars().filter(|c| !matches!(c, '_' | ' ')).collect();
        let (base, affine) = if let Some(b) = cleaned.strip_suffix("^(1)") {
            (b, true)
        } else if let Some(b) = cleaned.strip_suffix("(1)") {
            (b, true)
        } else if let Some(b) = cleaned.strip_suffix('~') {
            (b, true)
        } else {
            (cleaned.as_str(), false)
        };
        let mut chars = base.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let matrix = match (family, affine) {
            ('A', false) if n >= 1 => type_a(n),
            ('A', true) if n >= 1 => type_a_affine(n),
            ('B', false) if n >= 2 => {
                let mut m = type_a(n);
                m[n - 1][n - 2] = -2;
                m
            }
            ('C', false) if n >= 2 => {
                let mut m = type_a(n);
                m[n - 2][n - 1] = -2;
                m
            }
            ('D', false) if n >= 3 => {
                let mut m = type_a(n);
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
                m
            }
            ('E', false) if (6..=8).contains(&n) => {
                // Bourbaki labelling 1-3-4-5-6-7-8 with 2 attached to 4.
                let mut m = vec![vec![0; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 2;
                }
                let mut edges = vec![(0, 2), (1, 3), (2, 3), (3, 4)];
                for k in 4..n - 1 {
                    edges.push((k, k + 1));
                }
                for (i, j) in edges {
                    m[i][j] = -1;
                    m[j][i] = -1;
                }
                m
            }
            ('F', false) if n == 4 => {
                vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]]
            }
            ('G', false) if n == 2 => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(unknown()),
        };
        let mut data = validate_cartan(matrix, None)?;
        data.name = Some(if affine { format!("{family}{n}^(1)") } else { format!("{family}{n}") });
        Ok(data)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Rebuilds derived data after deserialization.
    pub fn revalidate(self) -> Result<Self> {
        let name = self.name.clone();
        let mut data = validate_cartan(self.matrix, Some(self.symmetrizer))?;
        data.name = name;
        Ok(data)
    }

    /// Whether `pairings` (coroot pairings `⟨ν, α_i^∨⟩`) is dominant.
    pub fn check_dominant(&self, pairings: &[i64]) -> Result<()> {
        if pairings.len() != self.rank() {
            return Err(Error::LengthMismatch(pairings.len(), self.rank()));
        }
        if pairings.iter().any(|x| x.is_negative()) {
            return Err(Error::NotDominant(pairings.to_vec()));
        }
        Ok(())
    }
}

fn type_a(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

fn type_a_affine(n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![2, -2], vec![-2, 2]];
    }
    let size = n + 1;
    let mut m = type_a(size);
    m[0][size - 1] = -1;
    m[size - 1][0] = -1;
    m
}
