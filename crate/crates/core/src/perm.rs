//! Permutations of `[n]` in one-line notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `pi(1) pi(2) ... pi(n)`, values 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!("{values:?} is not a permutation of [{n}]")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `pi(i)` for 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Permutation(inv)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.at(i)).collect())
    }

    /// Next permutation in lexicographic order, if any.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut v = self.0.clone();
        let i = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1])?;
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        Some(Permutation(v))
    }
}

/// All of `S_n` in lexicographic order; `S_0` has the single empty permutation.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    std::iter::successors(Some(Permutation::identity(n)), Permutation::next_lex)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            let s: String = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{s}")
        } else {
            let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// Accepts `645123` (single digits) or `6,4,5,1,2,3`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad permutation {s:?}"));
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = permutations(3).map(|p| p.to_string()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(permutations(0).count(), 1);
        assert_eq!(permutations(5).count(), 120);
    }

    #[test]
    fn inverse_and_parse() {
        let p: Permutation = "645123".parse().unwrap();
        assert_eq!(p.at(1), 6);
        assert_eq!(p.inverse().compose(&p), Permutation::identity(6));
        assert!("112".parse::<Permutation>().is_err());
        assert!("10,2,3".parse::<Permutation>().is_err());
    }
}
