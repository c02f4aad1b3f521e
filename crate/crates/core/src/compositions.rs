//! Weak and strong compositions, refinement, dominance and slide supports.
//!
//! A [`WeakComposition`] is a finitely supported sequence of nonnegative
//! integers indexed by all of `Z`. Nonpositive indices are needed for the
//! stable (backstable) regime, where colors and variables may be `<= 0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrongComposition(Vec<u32>);

impl StrongComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "strong composition has a zero part: {parts:?}"
            )));
        }
        Ok(StrongComposition(parts))
    }

    pub fn empty() -> Self {
        StrongComposition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True iff `coarser` is obtained from `self` by merging adjacent parts.
    pub fn refines(&self, coarser: &StrongComposition) -> bool {
        let mut target = coarser.0.iter();
        let mut want = match target.next() {
            Some(&w) => w,
            None => return self.0.is_empty(),
        };
        let mut acc = 0;
        for &p in &self.0 {
            acc += p;
            match acc.cmp(&want) {
                Ordering::Less => {}
                Ordering::Equal => {
                    acc = 0;
                    want = match target.next() {
                        Some(&w) => w,
                        None => 0,
                    };
                }
                Ordering::Greater => return false,
            }
        }
        acc == 0 && want == 0
    }

    /// Partial sums `p_1 < p_1+p_2 < ...` excluding the total.
    pub fn descent_set(&self) -> BTreeSet<u32> {
        let mut acc = 0;
        let mut set = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            set.insert(acc);
        }
        set
    }

    /// Reflection of the ribbon diagram: `comp(S)^t = comp([n-1] \ S)`.
    pub fn transpose(&self) -> StrongComposition {
        let n = self.weight();
        let des = self.descent_set();
        let complement: BTreeSet<u32> = (1..n).filter(|i| !des.contains(i)).collect();
        comp_of_subset(&complement, n).expect("complement lies in [n-1]")
    }

    /// Concatenation `self . other`.
    pub fn concat(&self, other: &StrongComposition) -> StrongComposition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        StrongComposition(parts)
    }

    /// Near-concatenation: the last part of `self` is merged with the first
    /// part of `other`. Degenerates to concatenation if either side is empty.
    pub fn near_concat(&self, other: &StrongComposition) -> StrongComposition {
        match (self.0.split_last(), other.0.split_first()) {
            (Some((last, init)), Some((first, tail))) => {
                let mut parts = init.to_vec();
                parts.push(last + first);
                parts.extend_from_slice(tail);
                StrongComposition(parts)
            }
            _ => self.concat(other),
        }
    }
}

impl fmt::Display for StrongComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Maps `S ⊆ [n-1]` to the composition of consecutive differences of
/// `0 < s_1 < ... < s_k < n`.
pub fn comp_of_subset(set: &BTreeSet<u32>, n: u32) -> Result<StrongComposition> {
    if n == 0 {
        if set.is_empty() {
            return Ok(StrongComposition::empty());
        }
        return Err(Error::Domain("nonempty subset of [-1]".into()));
    }
    let mut parts = Vec::with_capacity(set.len() + 1);
    let mut prev = 0;
    for &s in set {
        if s == 0 || s >= n {
            return Err(Error::Domain(format!("{s} is not in [{}]", n - 1)));
        }
        parts.push(s - prev);
        prev = s;
    }
    parts.push(n - prev);
    Ok(StrongComposition(parts))
}

/// Closed integer interval of variable (or color) indices.
///
/// `hi = lo - 1` is allowed and denotes the empty alphabet, e.g. `x_0` for a
/// path with `r = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi + 1 {
            return Err(Error::Domain(format!("window [{lo},{hi}] has lo > hi + 1")));
        }
        Ok(Window { lo, hi })
    }

    /// The window `[1, r]` of the alphabet `x_1, ..., x_r`.
    pub fn positive(r: i64) -> Self {
        Window { lo: 1, hi: r.max(0) }
    }

    /// `[1 - m, r]`: positive alphabet widened by `m` nonpositive variables.
    pub fn backstable(m: i64, r: i64) -> Self {
        Window {
            lo: 1 - m,
            hi: r.max(-m),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Window {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// A finitely supported nonnegative sequence indexed by `Z`.
///
/// Stored in canonical form: the first and last stored entries are nonzero,
/// and the zero composition has no entries (and `lo = 1`). Derived equality
/// and hashing are therefore equality of logical values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakComposition {
    lo: i64,
    entries: Vec<u32>,
}

impl WeakComposition {
    /// Composition whose value at index `lo + k` is `entries[k]`.
    pub fn new(lo: i64, entries: Vec<u32>) -> Self {
        let first = entries.iter().position(|&e| e != 0);
        match first {
            None => Self::zero(),
            Some(start) => {
                let end = entries.iter().rposition(|&e| e != 0).unwrap() + 1;
                WeakComposition {
                    lo: lo + start as i64,
                    entries: entries[start..end].to_vec(),
                }
            }
        }
    }

    /// Composition with `entries[k]` at index `k + 1`.
    pub fn from_positive(entries: &[u32]) -> Self {
        Self::new(1, entries.to_vec())
    }

    pub fn zero() -> Self {
        WeakComposition {
            lo: 1,
            entries: Vec::new(),
        }
    }

    /// Single part `value` at index `i`.
    pub fn unit(i: i64, value: u32) -> Self {
        Self::new(i, vec![value])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: i64) -> u32 {
        if i < self.lo {
            return 0;
        }
        self.entries.get((i - self.lo) as usize).copied().unwrap_or(0)
    }

    /// Index of the first stored (nonzero) entry.
    pub fn stored_lo(&self) -> i64 {
        self.lo
    }

    /// Canonical stored entries, first and last nonzero.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Smallest index in the support.
    pub fn min_index(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Largest index in the support.
    pub fn max_index(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.entries.len() as i64 - 1)
    }

    /// `(index, value)` for every index in the support, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (self.lo + k as i64, v))
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Whether the support lies inside `w`.
    pub fn is_within(&self, w: &Window) -> bool {
        match (self.min_index(), self.max_index()) {
            (Some(a), Some(b)) => w.lo <= a && b <= w.hi,
            _ => true,
        }
    }

    /// Positive entries in index order.
    pub fn flatten(&self) -> StrongComposition {
        StrongComposition(self.entries.iter().copied().filter(|&e| e != 0).collect())
    }

    /// Prefix-sum dominance: `sum_{i<=k} self_i >= sum_{i<=k} other_i` for all `k`.
    pub fn dominates(&self, other: &WeakComposition) -> bool {
        let (Some(lo_a), Some(hi_a)) = (self.min_index(), self.max_index()) else {
            return other.is_zero();
        };
        let (lo, hi) = match (other.min_index(), other.max_index()) {
            (Some(l), Some(h)) => (lo_a.min(l), hi_a.max(h)),
            _ => (lo_a, hi_a),
        };
        let (mut mine, mut theirs) = (0u64, 0u64);
        for i in lo..=hi {
            mine += u64::from(self.get(i));
            theirs += u64::from(other.get(i));
            if mine < theirs {
                return false;
            }
        }
        true
    }

    /// Index-wise sum (exponent vector of a product of monomials).
    pub fn add(&self, other: &WeakComposition) -> WeakComposition {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.max_index().unwrap().max(other.max_index().unwrap());
        let entries = (lo..=hi).map(|i| self.get(i) + other.get(i)).collect();
        WeakComposition::new(lo, entries)
    }

    /// Copy with the value at index `i` replaced.
    pub fn with(&self, i: i64, value: u32) -> WeakComposition {
        let lo = self.min_index().map_or(i, |l| l.min(i));
        let hi = self.max_index().map_or(i, |h| h.max(i));
        let entries = (lo..=hi)
            .map(|k| if k == i { value } else { self.get(k) })
            .collect();
        WeakComposition::new(lo, entries)
    }

    /// Copy with the values at `i` and `i+1` exchanged.
    pub fn swap_adjacent(&self, i: i64) -> WeakComposition {
        let (a, b) = (self.get(i), self.get(i + 1));
        self.with(i, b).with(i + 1, a)
    }

    /// Entries `(a_lo, ..., a_hi)` of the window, zero-padded.
    pub fn window_values(&self, w: &Window) -> Vec<u32> {
        w.indices().map(|i| self.get(i)).collect()
    }

    /// The part supported in positive indices, `(a_1, a_2, ...)`.
    pub fn positive_part(&self) -> WeakComposition {
        match self.max_index() {
            Some(hi) if hi >= 1 => {
                WeakComposition::new(1, (1..=hi).map(|i| self.get(i)).collect())
            }
            _ => WeakComposition::zero(),
        }
    }

    /// The part supported in nonpositive indices, `(..., a_{-1}, a_0)`.
    pub fn nonpositive_part(&self) -> WeakComposition {
        match self.min_index() {
            Some(lo) if lo <= 0 => {
                WeakComposition::new(lo, (lo..=0).map(|i| self.get(i)).collect())
            }
            _ => WeakComposition::zero(),
        }
    }

    /// Nonzero entries at nonpositive indices form a run ending at index 0.
    pub fn is_tail_strong(&self) -> bool {
        match self.min_index() {
            Some(lo) if lo <= 0 => (lo..=0).all(|i| self.get(i) > 0),
            _ => true,
        }
    }
}

impl Default for WeakComposition {
    fn default() -> Self {
        Self::zero()
    }
}

/// Lexicographic comparison of the logical sequences read from the lowest index.
impl Ord for WeakComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        let lo = match (self.min_index(), other.min_index()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return Ordering::Equal,
        };
        let hi = self
            .max_index()
            .into_iter()
            .chain(other.max_index())
            .max()
            .unwrap();
        (lo..=hi)
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for WeakComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(values: impl Iterator<Item = u32>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Bar notation: leading/trailing zeros suppressed, `|` between indices 0
/// and 1. Compositions supported in positive indices print from index 1
/// without a bar. The zero composition prints as `0`.
impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Some(lo), Some(hi)) = (self.min_index(), self.max_index()) else {
            return write!(f, "0");
        };
        if lo >= 1 {
            return write!(f, "{}", join((1..=hi).map(|i| self.get(i))));
        }
        let left = join((lo..=0).map(|i| self.get(i)));
        if hi >= 1 {
            write!(f, "{left}|{}", join((1..=hi).map(|i| self.get(i))))
        } else {
            write!(f, "{left}|")
        }
    }
}

fn parse_entries(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |_| Error::Parse(format!("bad composition entries {s:?}"));
    if s.contains(',') {
        s.split(',').map(|t| t.trim().parse::<u32>().map_err(bad)).collect()
    } else if s.chars().all(|c| c.is_ascii_digit()) {
        // compact form, one digit per entry: "0201"
        Ok(s.chars().map(|c| c.to_digit(10).unwrap()).collect())
    } else {
        Err(Error::Parse(format!("bad composition entries {s:?}")))
    }
}

/// Accepts `0,2,0,1`, `0201`, `1,1|1`, `1|0,2,0,1`, with optional parentheses.
impl FromStr for WeakComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_start_matches('(').trim_end_matches(')');
        if s == "∅" || s.is_empty() {
            return Ok(WeakComposition::zero());
        }
        match s.split_once('|') {
            Some((left, right)) => {
                let left = parse_entries(left)?;
                let right = parse_entries(right)?;
                let lo = 1 - left.len() as i64;
                let mut entries = left;
                entries.extend(right);
                Ok(WeakComposition::new(lo, entries))
            }
            None => Ok(WeakComposition::new(1, parse_entries(s)?)),
        }
    }
}

/// `b` lies in the slide support of `a`: `flatten(b)` refines `flatten(a)`
/// and `b` dominates `a`.
pub fn slide_related(b: &WeakComposition, a: &WeakComposition) -> bool {
    b.weight() == a.weight() && b.flatten().refines(&a.flatten()) && b.dominates(a)
}

/// All `b` supported in `w` with `flatten(b)` refining `flatten(a)` and `b`
/// dominating `a`.
pub fn slide_set(a: &WeakComposition, w: &Window) -> BTreeSet<WeakComposition> {
    let mut out = BTreeSet::new();
    let weight = a.weight();
    if weight == 0 {
        out.insert(WeakComposition::zero());
        return out;
    }
    // Prefix sums of a below the window must vanish, since b has none there.
    if w.is_empty() || a.min_index().unwrap() < w.lo {
        return out;
    }
    let a_prefix: Vec<u32> = w
        .indices()
        .scan(0, |acc, i| {
            *acc += a.get(i);
            Some(*acc)
        })
        .collect();
    let target = a.flatten();
    let mut current = vec![0u32; w.len()];
    fill_dominating(&a_prefix, weight, 0, 0, &mut current, &mut |values| {
        let b = WeakComposition::new(w.lo, values.to_vec());
        if b.flatten().refines(&target) {
            out.insert(b);
        }
    });
    out
}

/// Enumerates nonnegative vectors of the given total whose prefix sums stay
/// weakly above `floor`.
fn fill_dominating(
    floor: &[u32],
    total: u32,
    pos: usize,
    sum: u32,
    current: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if pos == current.len() {
        if sum == total {
            emit(current);
        }
        return;
    }
    let need = floor[pos].saturating_sub(sum);
    for v in need..=(total - sum) {
        current[pos] = v;
        fill_dominating(floor, total, pos + 1, sum + v, current, emit);
    }
    current[pos] = 0;
}

/// All weak compositions of `weight` supported in `w`, in increasing
/// lexicographic order.
pub fn compositions_in_window(weight: u32, w: &Window) -> Vec<WeakComposition> {
    let mut out = Vec::new();
    if w.is_empty() {
        if weight == 0 {
            out.push(WeakComposition::zero());
        }
        return out;
    }
    let floor = vec![0u32; w.len()];
    let mut current = vec![0u32; w.len()];
    fill_dominating(&floor, weight, 0, 0, &mut current, &mut |values| {
        out.push(WeakComposition::new(w.lo, values.to_vec()));
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wc(s: &str) -> WeakComposition {
        s.parse().unwrap()
    }

    fn sc(parts: &[u32]) -> StrongComposition {
        StrongComposition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(wc("0,2,0,2").flatten(), sc(&[2, 2]));
        assert_eq!(WeakComposition::zero().flatten(), StrongComposition::empty());
        assert_eq!(wc("1,2|0,2,0,1").flatten(), sc(&[1, 2, 2, 1]));
    }

    #[test]
    fn refines_examples() {
        assert!(sc(&[2, 1, 1, 2, 1]).refines(&sc(&[3, 4])));
        assert!(sc(&[2, 1]).refines(&sc(&[2, 1])));
        assert!(!sc(&[1, 2]).refines(&sc(&[2, 1])));
        assert!(!sc(&[1, 2]).refines(&sc(&[4])));
        assert!(StrongComposition::empty().refines(&StrongComposition::empty()));
        assert!(!StrongComposition::empty().refines(&sc(&[1])));
    }

    #[test]
    fn dominance_examples() {
        assert!(wc("2,0,0,2").dominates(&wc("0,2,0,2")));
        assert!(wc("0,2,0,2").dominates(&wc("0,2,0,2")));
        assert!(!wc("0,0,2,2").dominates(&wc("0,2,0,2")));
    }

    #[test]
    fn slide_set_of_0202_has_the_listed_elements_and_one_more() {
        let set = slide_set(&wc("0,2,0,2"), &Window::positive(4));
        let listed = [
            "0202", "2002", "2020", "2200", "1102", "1120", "1111", "0211", "2011", "2101",
            "2110",
        ];
        for s in listed {
            assert!(set.contains(&wc(s)), "{s} missing");
        }
        assert!(set.contains(&wc("0220")));
        assert_eq!(set.len(), 12);
    }

    #[test]
    fn slide_set_edge_cases() {
        let zero = slide_set(&WeakComposition::zero(), &Window::positive(3));
        assert_eq!(zero.into_iter().collect::<Vec<_>>(), vec![WeakComposition::zero()]);
        assert!(slide_set(&wc("1|0,2,0,1"), &Window::positive(4)).is_empty());
        // a itself is a member iff it fits the window; the rest may still fit
        assert!(slide_set(&wc("0,2,0,2"), &Window::positive(4)).contains(&wc("0202")));
        let short = slide_set(&wc("0,2,0,2"), &Window::positive(3));
        assert!(!short.contains(&wc("0202")));
        assert!(short.contains(&wc("0,2,2")) && short.contains(&wc("2,2")));
    }

    #[test]
    fn comp_of_subset_examples() {
        let s = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        assert_eq!(comp_of_subset(&s(&[2]), 3).unwrap(), sc(&[2, 1]));
        assert_eq!(comp_of_subset(&s(&[]), 3).unwrap(), sc(&[3]));
        assert_eq!(comp_of_subset(&s(&[1, 2]), 3).unwrap(), sc(&[1, 1, 1]));
        assert_eq!(comp_of_subset(&s(&[]), 0).unwrap(), StrongComposition::empty());
        assert!(matches!(comp_of_subset(&s(&[3]), 3), Err(Error::Domain(_))));
        assert!(matches!(comp_of_subset(&s(&[0]), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(sc(&[3]).transpose(), sc(&[1, 1, 1]));
        assert_eq!(sc(&[1, 1, 1]).transpose(), sc(&[3]));
        assert_eq!(StrongComposition::empty().transpose(), StrongComposition::empty());
        assert_eq!(sc(&[2, 1]).transpose(), sc(&[1, 2]));
    }

    #[test]
    fn bar_notation_round_trips() {
        for s in ["1,1|1", "0,2,0,1", "1|0,2,0,1", "1,2|", "2,0|1"] {
            let a = wc(s);
            assert_eq!(a.to_string(), s);
            assert_eq!(wc(&a.to_string()), a);
        }
        assert_eq!(wc("1|2").get(0), 1);
        assert_eq!(wc("1|2").get(1), 2);
        assert_eq!(wc("(1,2 | 0,2,0,1)"), wc("1,2|0,2,0,1"));
        assert_eq!(wc("0201"), WeakComposition::from_positive(&[0, 2, 0, 1]));
        assert_eq!(WeakComposition::zero().to_string(), "0");
        assert!("1,x".parse::<WeakComposition>().is_err());
    }

    #[test]
    fn equality_is_on_logical_values() {
        assert_eq!(
            WeakComposition::new(-3, vec![0, 0, 0, 0, 2, 0]),
            WeakComposition::from_positive(&[2])
        );
        assert_eq!(WeakComposition::new(5, vec![0, 0]), WeakComposition::zero());
    }

    #[test]
    fn tail_strong() {
        assert!(wc("1,2|0,2,0,1").is_tail_strong());
        assert!(wc("0,2,1").is_tail_strong());
        assert!(!WeakComposition::new(-1, vec![1, 0, 3]).is_tail_strong());
    }

    #[test]
    fn lexicographic_order_reads_from_lowest_index() {
        assert!(wc("0,2,0,1") < wc("1,1,0,1"));
        assert!(wc("2") < wc("1|"));
        assert!(WeakComposition::zero() < wc("1"));
    }

    #[test]
    fn windows() {
        assert!(Window::new(2, 0).is_err());
        assert!(Window::new(1, 0).unwrap().is_empty());
        assert_eq!(Window::backstable(2, 3), Window { lo: -1, hi: 3 });
        assert_eq!(
            Window::positive(3).hull(&Window::new(-1, 1).unwrap()),
            Window { lo: -1, hi: 3 }
        );
    }
}
