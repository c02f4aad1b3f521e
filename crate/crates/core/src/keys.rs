//! Key (Demazure) polynomials, expansion in the key basis, and the search for
//! chromatic nonsymmetric polynomials that are not key-positive.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::chromatic_theorem;
use crate::compositions::{compositions_in_window, WeakComposition, Window};
use crate::dyck::{enumerate_paths, parse_literal, PartialDyckPath};
use crate::error::{Error, Result};
use crate::polynomial::{TCoefficient, TPolynomial};

/// Isobaric divided difference `π_i f = (x_i f - s_i(x_i f)) / (x_i - x_{i+1})`,
/// applied monomial by monomial.
pub fn demazure_operator(f: &TPolynomial, i: i64) -> TPolynomial {
    let mut out = TPolynomial::zero(f.window());
    for (e, c) in f.terms() {
        let p = e.get(i);
        let q = e.get(i + 1);
        let at = |a: u32, b: u32| e.with(i, a).with(i + 1, b);
        if p >= q {
            for k in 0..=p - q {
                out.add_term(at(p - k, q + k), c);
            }
        } else if p + 1 < q {
            let neg = -c;
            for k in 1..q - p {
                out.add_term(at(p + k, q - k), &neg);
            }
        }
    }
    out
}

type KeyCacheKey = (WeakComposition, i64);

fn key_cache() -> &'static RwLock<HashMap<KeyCacheKey, Arc<TPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<KeyCacheKey, Arc<TPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `κ_a` in `x_1, ..., x_r`: `x^a` for weakly decreasing `a`, otherwise
/// `π_i κ_{s_i a}` for the smallest ascent `i`.
pub fn key_polynomial(a: &WeakComposition, r: i64) -> Result<TPolynomial> {
    let w = Window::positive(r);
    if !a.is_within(&w) {
        return Err(Error::Domain(format!("{a} is not supported in [1,{r}]")));
    }
    Ok((*cached_key(a, r)).clone())
}

fn cached_key(a: &WeakComposition, r: i64) -> Arc<TPolynomial> {
    let key = (a.clone(), r);
    if let Some(k) = key_cache().read().expect("key cache poisoned").get(&key) {
        return Arc::clone(k);
    }
    let w = Window::positive(r);
    let k = match (1..r).find(|&i| a.get(i) < a.get(i + 1)) {
        None => TPolynomial::term(w, a.clone(), TCoefficient::one()),
        Some(i) => demazure_operator(&cached_key(&a.swap_adjacent(i), r), i),
    };
    let k = Arc::new(k);
    key_cache()
        .write()
        .expect("key cache poisoned")
        .entry(key)
        .or_insert(k)
        .clone()
}

/// `sum_a c_a(t) κ_a`, indices supported in `[1, r]`, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyExpansion(BTreeMap<WeakComposition, TCoefficient>);

impl KeyExpansion {
    pub fn add_term(&mut self, a: WeakComposition, c: &TCoefficient) {
        let entry = self.0.entry(a.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&a);
        }
    }

    pub fn get(&self, a: &WeakComposition) -> TCoefficient {
        self.0.get(a).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeakComposition, &TCoefficient)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_a c_a κ_a` in `x_1, ..., x_r`.
    pub fn assemble(&self, r: i64) -> TPolynomial {
        let mut p = TPolynomial::zero(Window::positive(r));
        for (a, c) in &self.0 {
            p.add_scaled(&cached_key(a, r), c);
        }
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(a, c)| {
                    serde_json::json!({
                        "index": a.to_string(),
                        "t": crate::polynomial::coefficient_to_json(c),
                    })
                })
                .collect(),
        )
    }
}

impl FromIterator<(WeakComposition, TCoefficient)> for KeyExpansion {
    fn from_iter<I: IntoIterator<Item = (WeakComposition, TCoefficient)>>(iter: I) -> Self {
        let mut e = KeyExpansion::default();
        for (a, c) in iter {
            e.add_term(a, &c);
        }
        e
    }
}

pub fn is_key_positive(e: &KeyExpansion) -> bool {
    e.iter().all(|(_, c)| c.is_nonnegative())
}

fn check_support(p: &TPolynomial, r: i64) -> Result<()> {
    let w = Window::positive(r);
    match p.terms().find(|(e, _)| !e.is_within(&w)) {
        Some((e, _)) => Err(Error::Domain(format!("exponent {e} is not supported in [1,{r}]"))),
        None => Ok(()),
    }
}

/// Unique `c_a(t)` with `p = sum_a c_a κ_a`, by an exact linear solve over
/// the monomial basis of each `(t-degree, x-degree)` slice.
pub fn expand_in_keys(p: &TPolynomial, r: i64) -> Result<KeyExpansion> {
    check_support(p, r)?;
    let w = Window::positive(r);
    // slices[(x-degree)][t-degree] = {exponent: integer}
    let mut slices: BTreeMap<u32, BTreeMap<usize, BTreeMap<WeakComposition, BigInt>>> =
        BTreeMap::new();
    for (e, c) in p.terms() {
        for (deg, v) in c.terms() {
            slices
                .entry(e.weight())
                .or_default()
                .entry(deg)
                .or_default()
                .insert(e.clone(), v.clone());
        }
    }
    let mut out = KeyExpansion::default();
    for (weight, by_t) in slices {
        let basis = compositions_in_window(weight, &w);
        let index: HashMap<&WeakComposition, usize> =
            basis.iter().enumerate().map(|(k, a)| (a, k)).collect();
        let columns: Vec<Vec<(usize, BigInt)>> = basis
            .iter()
            .map(|a| {
                cached_key(a, r)
                    .terms()
                    .map(|(e, c)| (index[e], c.get(0)))
                    .collect()
            })
            .collect();
        let rhs: Vec<(usize, Vec<BigInt>)> = by_t
            .into_iter()
            .map(|(deg, terms)| {
                let mut v = vec![BigInt::zero(); basis.len()];
                for (e, c) in terms {
                    v[index[&e]] = c;
                }
                (deg, v)
            })
            .collect();
        let rhs_vectors: Vec<Vec<BigInt>> = rhs.iter().map(|(_, v)| v.clone()).collect();
        let solutions = solve_exact(basis.len(), &columns, &rhs_vectors)?;
        for ((deg, _), x) in rhs.iter().zip(solutions) {
            for (k, v) in x.into_iter().enumerate() {
                if !v.is_zero() {
                    out.add_term(basis[k].clone(), &TCoefficient::monomial(*deg, v));
                }
            }
        }
    }
    Ok(out)
}

/// Solves `M x = b` for every `b`, where `M` is square of size `dim` given by
/// sparse columns. Gaussian elimination over the rationals on sparse rows;
/// solutions must be integral.
fn solve_exact(
    dim: usize,
    columns: &[Vec<(usize, BigInt)>],
    rhs: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>> {
    // row-major sparse augmented matrix [M | b_1 ... b_k]
    let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); dim];
    for (col, entries) in columns.iter().enumerate() {
        for (row, v) in entries {
            if !v.is_zero() {
                rows[*row].insert(col, BigRational::from_integer(v.clone()));
            }
        }
    }
    for (k, b) in rhs.iter().enumerate() {
        for (row, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[row].insert(dim + k, BigRational::from_integer(v.clone()));
            }
        }
    }
    let mut pivot_row_of = vec![usize::MAX; dim];
    let mut used = vec![false; dim];
    for col in 0..dim {
        let pivot = (0..dim)
            .filter(|&i| !used[i] && rows[i].contains_key(&col))
            .min_by_key(|&i| rows[i].len())
            .ok_or_else(|| Error::Internal("key basis matrix is singular".into()))?;
        used[pivot] = true;
        pivot_row_of[col] = pivot;
        let inv = rows[pivot][&col].recip();
        let prow: Vec<(usize, BigRational)> =
            rows[pivot].iter().map(|(&c, v)| (c, v * &inv)).collect();
        rows[pivot] = prow.iter().cloned().collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot {
                continue;
            }
            let Some(factor) = row.get(&col).cloned() else {
                continue;
            };
            for (c, v) in &prow {
                let entry = row.entry(*c).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
    }
    let mut out = vec![vec![BigInt::zero(); dim]; rhs.len()];
    for col in 0..dim {
        let row = &rows[pivot_row_of[col]];
        for (k, x) in out.iter_mut().enumerate() {
            if let Some(v) = row.get(&(dim + k)) {
                if !v.is_integer() {
                    return Err(Error::Internal(format!("non-integral key coefficient {v}")));
                }
                x[col] = v.to_integer();
            }
        }
    }
    Ok(out)
}

/// Prefix sums `(a_1, a_1 + a_2, ...)` on `[1, r]`.
fn prefix_sums(a: &WeakComposition, r: i64) -> Vec<u32> {
    (1..=r)
        .scan(0, |s, i| {
            *s += a.get(i);
            Some(*s)
        })
        .collect()
}

/// Same result as [`expand_in_keys`] by triangular peeling: the remaining
/// exponent with lexicographically smallest prefix sums is dominance-minimal,
/// hence the leading term of a unique key. The result is checked by
/// reassembly.
pub fn expand_in_keys_peel(p: &TPolynomial, r: i64) -> Result<KeyExpansion> {
    check_support(p, r)?;
    let mut remaining = p.clone();
    let mut out = KeyExpansion::default();
    let guard = p.len() * 64 + 16;
    let mut steps = 0;
    while let Some(a) = remaining
        .terms()
        .map(|(e, _)| e)
        .min_by(|x, y| {
            (x.weight(), prefix_sums(x, r)).cmp(&(y.weight(), prefix_sums(y, r)))
        })
        .cloned()
    {
        steps += 1;
        if steps > guard {
            return Err(Error::Internal("key peel did not terminate".into()));
        }
        let k = cached_key(&a, r);
        if k.coefficient(&a) != TCoefficient::one() {
            return Err(Error::Internal(format!("{a} is not the leading term of its key")));
        }
        let c = remaining.coefficient(&a);
        remaining.add_scaled(&k, &-&c);
        out.add_term(a, &c);
    }
    if out.assemble(r) != *p {
        return Err(Error::Internal("key peel failed to reassemble".into()));
    }
    Ok(out)
}

/// A negative key coefficient of `𝒳_D(x_r; t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    #[serde(with = "path_literal")]
    pub path: PartialDyckPath,
    #[serde(with = "bar_notation")]
    pub composition: WeakComposition,
    pub coefficient: TCoefficient,
}

impl CounterexampleRecord {
    /// `t`-degrees at which the coefficient is negative.
    pub fn negative_degrees(&self) -> Vec<usize> {
        self.coefficient.negative_degrees()
    }
}

mod path_literal {
    use super::*;

    pub fn serialize<S: serde::Serializer>(p: &PartialDyckPath, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&p.literal())
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<PartialDyckPath, D::Error> {
        let s = String::deserialize(d)?;
        parse_literal(&s).map_err(serde::de::Error::custom)
    }
}

mod bar_notation {
    use super::*;

    pub fn serialize<S: serde::Serializer>(a: &WeakComposition, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&a.to_string())
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<WeakComposition, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Key expansion of `𝒳_D(x_r; t)`, `r` taken from the path.
pub fn chromatic_key_expansion(d: &PartialDyckPath) -> Result<KeyExpansion> {
    let r = d.r() as i64;
    let (p, _) = chromatic_theorem(d, &Window::positive(r));
    expand_in_keys_peel(&p, r)
}

fn records_for(d: &PartialDyckPath) -> Result<Vec<CounterexampleRecord>> {
    let e = chromatic_key_expansion(d)?;
    Ok(e.iter()
        .filter(|(_, c)| !c.is_nonnegative())
        .map(|(a, c)| CounterexampleRecord {
            path: d.clone(),
            composition: a.clone(),
            coefficient: c.clone(),
        })
        .collect())
}

/// Every negative key coefficient over `P_{n,r}`; paths in enumeration order,
/// compositions in lexicographic order.
pub fn search_counterexamples_at(n: usize, r: usize) -> Result<Vec<CounterexampleRecord>> {
    let paths: Vec<PartialDyckPath> = enumerate_paths(n, r).collect();
    let per_path: Vec<Vec<CounterexampleRecord>> =
        paths.par_iter().map(records_for).collect::<Result<_>>()?;
    Ok(per_path.into_iter().flatten().collect())
}

/// [`search_counterexamples_at`] for `r = 1, ..., r_max`.
pub fn search_counterexamples(n: usize, r_max: usize) -> Result<Vec<CounterexampleRecord>> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        out.extend(search_counterexamples_at(n, r)?);
    }
    Ok(out)
}

/// Stops at the first `r` that yields a record.
pub fn first_counterexamples(n: usize, r_max: usize) -> Result<Option<(usize, Vec<CounterexampleRecord>)>> {
    for r in 1..=r_max {
        let found = search_counterexamples_at(n, r)?;
        if !found.is_empty() {
            return Ok(Some((r, found)));
        }
    }
    Ok(None)
}

pub const FIXTURE_FILE: &str = "key_counterexamples.json";

/// `$SLIDECHROM_FIXTURES`, falling back to the crate's `fixtures/` directory.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("SLIDECHROM_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

pub fn load_fixtures(dir: &Path) -> Result<Vec<CounterexampleRecord>> {
    let text = std::fs::read_to_string(dir.join(FIXTURE_FILE))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_fixtures(dir: &Path, records: &[CounterexampleRecord]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(records)?;
    std::fs::write(dir.join(FIXTURE_FILE), text + "\n")?;
    Ok(())
}

/// Recomputes each record's coefficient; `Ok(false)` on any disagreement.
pub fn replay_fixtures(records: &[CounterexampleRecord]) -> Result<bool> {
    for rec in records {
        let e = chromatic_key_expansion(&rec.path)?;
        if e.get(&rec.composition) != rec.coefficient || rec.coefficient.is_nonnegative() {
            return Ok(false);
        }
    }
    Ok(true)
}
