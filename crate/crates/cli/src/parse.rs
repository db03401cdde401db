//! Parsers for the compact command-line syntaxes.
//!
//! * integer lists: `3,-1,0`
//! * matrices: rows separated by `;`, e.g. `2,-1;-1,2`
//! * factor lists (highest weights, labels, weight tuples): factors separated
//!   by `;`; in rank 1 a plain comma list `3,3,3` also means three factors
//! * label factors: pairings optionally followed by `@` and string exponents
//!   along the default word, e.g. `0,0@1,1`
//! * words: `cycle` or `prefix/cycle`, e.g. `0,1` or `1/0,1`

use crate::config::{FactorSpec, WordSpec};
use crate::error::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| usage(format!("invalid {what} entry {:?} in {s:?}", x.trim()))))
        .collect()
}

pub fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';').map(|row| parse_ints(row, "matrix")).collect()
}

fn split_factors(s: &str, rank: usize) -> Vec<&str> {
    if s.contains(';') || (rank != 1 || s.contains('@')) {
        s.split(';').map(str::trim).collect()
    } else {
        s.split(',').map(str::trim).collect()
    }
}

fn check_rank(v: &[i64], rank: usize, what: &str) -> Result<(), CliError> {
    if v.len() != rank {
        return Err(usage(format!("{what} {v:?} has {} entries, expected rank {rank}", v.len())));
    }
    Ok(())
}

/// Weights given by their coroot pairings, one per factor.
pub fn parse_weight_list(s: &str, rank: usize, what: &str) -> Result<Vec<Vec<i64>>, CliError> {
    if s.trim().is_empty() {
        return Err(usage(format!("empty {what}")));
    }
    split_factors(s, rank)
        .into_iter()
        .map(|f| {
            let v = parse_ints::<i64>(f, what)?;
            check_rank(&v, rank, what)?;
            Ok(v)
        })
        .collect()
}

pub fn parse_label(s: &str, rank: usize) -> Result<Vec<FactorSpec>, CliError> {
    if s.trim().is_empty() {
        return Err(usage("empty label"));
    }
    split_factors(s, rank)
        .into_iter()
        .map(|f| {
            let (weight, string) = match f.split_once('@') {
                Some((w, st)) => (w, Some(parse_ints::<u32>(st, "string exponent")?)),
                None => (f, None),
            };
            let pairings = parse_ints::<i64>(weight, "label")?;
            check_rank(&pairings, rank, "label factor")?;
            Ok(FactorSpec { pairings, string })
        })
        .collect()
}

pub fn parse_word(s: &str) -> Result<WordSpec, CliError> {
    let (prefix, cycle) = match s.split_once('/') {
        Some((p, c)) => (parse_ints(p, "word")?, parse_ints(c, "word")?),
        None => (Vec::new(), parse_ints(s, "word")?),
    };
    if cycle.is_empty() {
        return Err(usage("word cycle must be nonempty"));
    }
    Ok(WordSpec { prefix, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_lists() {
        assert_eq!(parse_weight_list("3,3,3", 1, "hw").unwrap(), vec![vec![3], vec![3], vec![3]]);
        assert_eq!(parse_weight_list("1,0;0,1", 2, "hw").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(parse_weight_list("1,1", 2, "hw").unwrap(), vec![vec![1, 1]]);
        assert!(parse_weight_list("1,0,0", 2, "hw").is_err());
        assert!(parse_weight_list("", 2, "hw").is_err());
    }

    #[test]
    fn labels_with_strings() {
        let l = parse_label("-1,1,1", 1).unwrap();
        assert_eq!(l.len(), 3);
        let l = parse_label("0,0@1,1;1,0", 2).unwrap();
        assert_eq!(l[0].string, Some(vec![1, 1]));
        assert_eq!(l[1].string, None);
        assert!(parse_label("x", 1).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("0,1").unwrap(), WordSpec { prefix: vec![], cycle: vec![0, 1] });
        assert_eq!(parse_word("1/0,1").unwrap(), WordSpec { prefix: vec![1], cycle: vec![0, 1] });
        assert!(parse_word("1/").is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("2,-1;-1,2").unwrap(), vec![vec![2, -1], vec![-1, 2]]);
    }
}
