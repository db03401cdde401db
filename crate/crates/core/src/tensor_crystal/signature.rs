use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '−',
        }
    }
}

/// An `i`-signature, kept grouped by tensor factor.
///
/// Group `j` is `(plus, minus)` = `(ε_i(b_j), φ_i(b_j))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    groups: Vec<(u32, u32)>,
}

impl Signature {
    pub fn from_groups(groups: Vec<(u32, u32)>) -> Self {
        Signature { groups }
    }

    pub fn groups(&self) -> &[(u32, u32)] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|&(p, m)| (p + m) as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat symbol list with the group each symbol belongs to.
    pub fn symbols(&self) -> Vec<(usize, Sign)> {
        let mut out = Vec::with_capacity(self.len());
        for (j, &(plus, minus)) in self.groups.iter().enumerate() {
            out.extend(std::iter::repeat_n((j, Sign::Plus), plus as usize));
            out.extend(std::iter::repeat_n((j, Sign::Minus), minus as usize));
        }
        out
    }

    /// The signature of groups `k..n` only.
    pub fn suffix(&self, k: usize) -> Signature {
        Signature { groups: self.groups[k.min(self.groups.len())..].to_vec() }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (_, s) in self.symbols() {
            write!(f, "{}", s.symbol())?;
        }
        f.write_str(")")
    }
}

/// A signature annotated with its `−+` cancellations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSignature {
    signature: Signature,
    symbols: Vec<(usize, Sign)>,
    partner: Vec<Option<usize>>,
}

/// Cancels `−+` pairs to a fixpoint.
///
/// Treating `−` as an opening and `+` as a closing bracket, the crossed
/// symbols are exactly the matched brackets, so one left-to-right pass with a
/// stack of open `−` positions suffices.
pub fn reduce_signature(sig: &Signature) -> ReducedSignature {
    let symbols = sig.symbols();
    let mut partner = vec![None; symbols.len()];
    let mut open: Vec<usize> = Vec::new();
    for (pos, &(_, s)) in symbols.iter().enumerate() {
        match s {
            Sign::Minus => open.push(pos),
            Sign::Plus => {
                if let Some(m) = open.pop() {
                    partner[m] = Some(pos);
                    partner[pos] = Some(m);
                }
            }
        }
    }
    ReducedSignature { signature: sig.clone(), symbols, partner }
}

impl ReducedSignature {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn symbols(&self) -> &[(usize, Sign)] {
        &self.symbols
    }

    pub fn is_crossed(&self, pos: usize) -> bool {
        self.partner[pos].is_some()
    }

    /// Partner of a crossed symbol.
    pub fn partner(&self, pos: usize) -> Option<usize> {
        self.partner[pos]
    }

    /// Crossed positions, 0-based and increasing.
    pub fn crossed_positions(&self) -> Vec<usize> {
        (0..self.symbols.len()).filter(|&p| self.is_crossed(p)).collect()
    }

    /// Crossed `(−, +)` pairs as `(minus position, plus position)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.symbols.len())
            .filter(|&p| self.symbols[p].1 == Sign::Minus)
            .filter_map(|p| self.partner[p].map(|q| (p, q)))
            .collect()
    }

    fn uncrossed(&self, sign: Sign) -> impl DoubleEndedIterator<Item = usize> + '_ {
        (0..self.symbols.len()).filter(move |&p| self.symbols[p].1 == sign && !self.is_crossed(p))
    }

    pub fn rightmost_plus(&self) -> Option<usize> {
        self.uncrossed(Sign::Plus).next_back()
    }

    pub fn leftmost_minus(&self) -> Option<usize> {
        self.uncrossed(Sign::Minus).next()
    }

    /// Number of uncrossed `+`.
    pub fn h_plus(&self) -> u32 {
        self.uncrossed(Sign::Plus).count() as u32
    }

    /// Number of uncrossed `−`.
    pub fn h_minus(&self) -> u32 {
        self.uncrossed(Sign::Minus).count() as u32
    }

    /// Factor on which `ẽ_i` acts.
    pub fn e_factor(&self) -> Option<usize> {
        self.rightmost_plus().map(|p| self.symbols[p].0)
    }

    /// Factor on which `f̃_i` acts.
    pub fn f_factor(&self) -> Option<usize> {
        self.leftmost_minus().map(|p| self.symbols[p].0)
    }

    /// Uncrossed symbols only, e.g. `(++−−−)`.
    pub fn reduced_form(&self) -> String {
        let mut s = String::from("(");
        for (p, &(_, sign)) in self.symbols.iter().enumerate() {
            if !self.is_crossed(p) {
                s.push(sign.symbol());
            }
        }
        s.push(')');
        s
    }

    /// The full signature with crossed symbols struck through
    /// (U+0336 combining overlay).
    pub fn render_struck(&self) -> String {
        let mut s = String::from("(");
        for (p, &(_, sign)) in self.symbols.iter().enumerate() {
            s.push(sign.symbol());
            if self.is_crossed(p) {
                s.push('\u{0336}');
            }
        }
        s.push(')');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let sig = Signature::from_groups(vec![(2, 1), (1, 2), (1, 2)]);
        assert_eq!(sig.to_string(), "(++−+−−+−−)");
        let r = reduce_signature(&sig);
        let one_based: Vec<usize> = r.crossed_positions().iter().map(|p| p + 1).collect();
        assert_eq!(one_based, vec![3, 4, 6, 7]);
        assert_eq!(r.reduced_form(), "(++−−−)");
        assert_eq!(r.rightmost_plus(), Some(1));
        assert_eq!(r.leftmost_minus(), Some(4));
        assert_eq!((r.h_plus(), r.h_minus()), (2, 3));
        assert_eq!((r.e_factor(), r.f_factor()), (Some(0), Some(1)));
        assert_eq!(r.pairs(), vec![(2, 3), (5, 6)]);
    }

    #[test]
    fn all_minus_is_untouched() {
        let r = reduce_signature(&Signature::from_groups(vec![(0, 2), (0, 1)]));
        assert!(r.crossed_positions().is_empty());
        assert_eq!(r.h_minus(), 3);
        assert_eq!(r.e_factor(), None);
        assert_eq!(r.f_factor(), Some(0));
    }

    #[test]
    fn single_cancellation() {
        let r = reduce_signature(&Signature::from_groups(vec![(0, 1), (1, 0)]));
        assert_eq!(r.crossed_positions(), vec![0, 1]);
        assert_eq!((r.h_plus(), r.h_minus()), (0, 0));
        assert_eq!(r.render_struck(), "(−\u{336}+\u{336})");
    }

    #[test]
    fn nested_matching() {
        // − − + + : inner pair (1,2), outer pair (0,3)
        let r = reduce_signature(&Signature::from_groups(vec![(0, 2), (2, 0)]));
        assert_eq!(r.pairs(), vec![(0, 3), (1, 2)]);
    }
}
