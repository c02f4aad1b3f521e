//! Partial Dyck paths, their Dyck graphs and restriction maps.
//!
//! A path in `P_{n,r}` starts at `(0, r)`, ends at `(n+r, n+r)` and never
//! goes below `y = x`. Diagonal square `k` has corners `(k-1, k-1)` and
//! `(k, k)`; the square `s(p, q)` sits in column `p` and row `q`, so it lies
//! below the path exactly when the east step in column `p` happens at height
//! `>= q`. Columns left of the start behave as if the path came in along
//! `y = r` from `-∞`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    E,
    N,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialDyckPath {
    n: usize,
    r: usize,
    steps: Vec<Step>,
}

impl PartialDyckPath {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn word(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::E => 'E',
                Step::N => 'N',
            })
            .collect()
    }

    /// `"<word>@n,r"`.
    pub fn literal(&self) -> String {
        format!("{}@{},{}", self.word(), self.n, self.r)
    }

    /// Height of the east step in column `p` (between `x = p-1` and `x = p`).
    pub fn column_height(&self, p: i64) -> i64 {
        if p <= 0 {
            return self.r as i64;
        }
        let (mut x, mut y) = (0i64, self.r as i64);
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => {
                    x += 1;
                    if x == p {
                        return y;
                    }
                }
            }
        }
        // beyond the end the path is at its final height
        y
    }

    fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n + self.r);
        let mut y = self.r as i64;
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => out.push(y),
            }
        }
        out
    }

    /// Whether `s(p, q)` lies below the path.
    pub fn square_below(&self, p: i64, q: i64) -> bool {
        self.column_height(p) >= q
    }
}

/// Validates a step word read from `(0, r)`.
pub fn parse_path(word: &str, n: usize, r: usize) -> Result<PartialDyckPath> {
    let steps: Vec<Step> = word
        .chars()
        .map(|c| match c {
            'N' | 'n' => Ok(Step::N),
            'E' | 'e' => Ok(Step::E),
            other => Err(Error::InvalidPath(format!("stray character {other:?} in {word:?}"))),
        })
        .collect::<Result<_>>()?;
    let norths = steps.iter().filter(|&&s| s == Step::N).count();
    let easts = steps.len() - norths;
    if norths != n || easts != n + r {
        return Err(Error::InvalidPath(format!(
            "{word:?} has {norths} N and {easts} E steps; P_{{{n},{r}}} needs {n} and {}",
            n + r
        )));
    }
    let (mut x, mut y) = (0i64, r as i64);
    for (k, s) in steps.iter().enumerate() {
        match s {
            Step::N => y += 1,
            Step::E => x += 1,
        }
        if y < x {
            return Err(Error::InvalidPath(format!(
                "{word:?} goes below the diagonal after step {}",
                k + 1
            )));
        }
    }
    Ok(PartialDyckPath { n, r, steps })
}

/// Parses `"<word>@n,r"`. The word may be empty (`"@0,0"`).
pub fn parse_literal(literal: &str) -> Result<PartialDyckPath> {
    let bad = || Error::Parse(format!("path literal {literal:?} is not of the form WORD@n,r"));
    let (word, nr) = literal.trim().split_once('@').ok_or_else(bad)?;
    let (n, r) = nr.split_once(',').ok_or_else(bad)?;
    let n = n.trim().parse().map_err(|_| bad())?;
    let r = r.trim().parse().map_err(|_| bad())?;
    parse_path(word, n, r)
}

impl FromStr for PartialDyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_literal(s)
    }
}

impl fmt::Display for PartialDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    n: usize,
    r: usize,
    steps: String,
}

impl Serialize for PartialDyckPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            n: self.n,
            r: self.r,
            steps: self.word(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialDyckPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PathJson::deserialize(d)?;
        parse_path(&raw.steps, raw.n, raw.r).map_err(serde::de::Error::custom)
    }
}

/// Simple graph on `[n]` with the interval property.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl DyckGraph {
    /// Builds a graph from 1-based edges and checks the interval property.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges_unchecked(n, edges)?;
        if let Some((i, j)) = g.interval_violation() {
            return Err(Error::Structure(format!(
                "edge set is not a Dyck graph: {{{i},{j}}} is missing"
            )));
        }
        Ok(g)
    }

    /// Graph without the interval check (for testing the poset constructions
    /// on non-Dyck inputs).
    pub fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Domain(format!("bad edge {{{i},{j}}} on [{n}]")));
            }
            adj[i - 1][j - 1] = true;
            adj[j - 1][i - 1] = true;
        }
        Ok(DyckGraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based adjacency.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i - 1][j - 1]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// A missing pair `{i', j'}` nested inside an edge, if any.
    pub fn interval_violation(&self) -> Option<(usize, usize)> {
        for (i, j) in self.edges() {
            for a in i..j {
                for b in a + 1..=j {
                    if !self.has_edge(a, b) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// DOT rendering; vertices are annotated with their color bound when a
    /// restriction map is given.
    pub fn to_dot(&self, rho: Option<&RestrictionMap>) -> String {
        let mut s = String::from("graph G {\n");
        for v in 1..=self.n {
            match rho {
                Some(rho) => s.push_str(&format!("  {v} [xlabel=\"≤{}\"];\n", rho.get(v))),
                None => s.push_str(&format!("  {v};\n")),
            }
        }
        for (i, j) in self.edges() {
            s.push_str(&format!("  {i} -- {j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Per-vertex upper bound on colors, `values[i-1] = ρ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictionMap(pub Vec<i64>);

impl RestrictionMap {
    pub fn get(&self, v: usize) -> i64 {
        self.0[v - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `0 <= ρ(1) <= ... <= ρ(n) <= r`, the shape of maps read off paths.
    pub fn is_path_shaped(&self, r: i64) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1]) && self.0.iter().all(|&v| 0 <= v && v <= r)
    }
}

/// `{i, j}` is an edge iff `i < j` and `s(i+r, j+r)` lies below the path.
pub fn dyck_graph(path: &PartialDyckPath) -> DyckGraph {
    let heights = path.heights();
    let r = path.r;
    let n = path.n;
    let mut adj = vec![vec![false; n]; n];
    for i in 1..=n {
        let h = heights[i + r - 1];
        for j in i + 1..=n {
            if h >= (j + r) as i64 {
                adj[i - 1][j - 1] = true;
                adj[j - 1][i - 1] = true;
            }
        }
    }
    DyckGraph { n, adj }
}

/// `ρ(i)` is the largest `j <= r` such that `s(j, i+r)` lies above the path.
pub fn restriction_map(path: &PartialDyckPath) -> RestrictionMap {
    let heights = path.heights();
    let r = path.r as i64;
    let values = (1..=path.n as i64)
        .map(|i| {
            (1..=r)
                .rev()
                .find(|&j| heights[(j - 1) as usize] < i + r)
                .unwrap_or(0)
        })
        .collect();
    RestrictionMap(values)
}

/// Every path in `P_{n,r}` once, lexicographic in the step word with `E < N`.
pub fn enumerate_paths(n: usize, r: usize) -> impl Iterator<Item = PartialDyckPath> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n + r);
    extend_paths(n, r, 0, r as i64, 0, &mut word, &mut out);
    out.into_iter()
}

fn extend_paths(
    n: usize,
    r: usize,
    x: i64,
    y: i64,
    norths: usize,
    word: &mut Vec<Step>,
    out: &mut Vec<PartialDyckPath>,
) {
    let easts = word.len() - norths;
    if norths == n && easts == n + r {
        out.push(PartialDyckPath {
            n,
            r,
            steps: word.clone(),
        });
        return;
    }
    if easts < n + r && y > x {
        word.push(Step::E);
        extend_paths(n, r, x + 1, y, norths, word, out);
        word.pop();
    }
    if norths < n {
        word.push(Step::N);
        extend_paths(n, r, x, y + 1, norths + 1, word, out);
        word.pop();
    }
}
