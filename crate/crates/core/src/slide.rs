//! Fundamental slide polynomials and fundamental quasisymmetric polynomials.
//!
//! Two independent constructions of `Ŝ_a` over a window are provided:
//! [`slide_poly`] sums `x^b` over the set-theoretic support
//! ([`crate::compositions::slide_set`]), while [`slide_poly_chain_oracle`]
//! counts fillings of the flagged chain attached to `a` (blocks of sizes the
//! parts of `a`, each bounded by its index, weakly increasing inside a block
//! and strictly increasing between blocks).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::compositions::{slide_set, StrongComposition, WeakComposition, Window};
use crate::error::{Error, Result};
use crate::polynomial::{coefficient_to_json, TCoefficient, TPolynomial};

/// A finite linear combination `sum_a c_a(t) Ŝ_a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlideExpansion(BTreeMap<WeakComposition, TCoefficient>);

impl SlideExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: WeakComposition, c: &TCoefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(a).or_default();
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove the cancelled entry
            self.0.retain(|_, v| !v.is_zero());
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

    /// Every coefficient lies in `N[t]`.
    pub fn is_positive(&self) -> bool {
        self.0.values().all(TCoefficient::is_nonnegative)
    }

    /// `sum_a c_a Ŝ_a(x_w)`.
    pub fn assemble(&self, w: &Window) -> TPolynomial {
        let mut p = TPolynomial::zero(*w);
        for (a, c) in &self.0 {
            p.add_scaled(&cached_slide_poly(a, w), c);
        }
        p
    }

    /// Drops the indices whose slide polynomial vanishes on `w`.
    pub fn nonvanishing_on(&self, w: &Window) -> SlideExpansion {
        SlideExpansion(
            self.0
                .iter()
                .filter(|(a, _)| !cached_slide_poly(a, w).is_zero())
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        )
    }

    /// `[{"index": "<bar notation>", "exp": {...}, "t": [...]}, ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(a, c)| {
                    serde_json::json!({
                        "index": a.to_string(),
                        "exp": serde_json::to_value(a).expect("serializable"),
                        "t": coefficient_to_json(c),
                    })
                })
                .collect(),
        )
    }
}

impl FromIterator<(WeakComposition, TCoefficient)> for SlideExpansion {
    fn from_iter<I: IntoIterator<Item = (WeakComposition, TCoefficient)>>(iter: I) -> Self {
        let mut e = SlideExpansion::new();
        for (a, c) in iter {
            e.add_term(a, &c);
        }
        e
    }
}

/// `Ŝ_a(x_w) = sum of x^b over b in slide_set(a, w)`.
pub fn slide_poly(a: &WeakComposition, w: &Window) -> TPolynomial {
    let mut p = TPolynomial::zero(*w);
    for b in slide_set(a, w) {
        p.add_term(b, &TCoefficient::one());
    }
    p
}

/// The same polynomial as [`slide_poly`]; the truncation of the stable
/// slide series to the window `w`.
pub fn backstable_slide_truncated(a: &WeakComposition, w: &Window) -> TPolynomial {
    slide_poly(a, w)
}

type SlideKey = (WeakComposition, Window);

fn slide_cache() -> &'static RwLock<HashMap<SlideKey, Arc<TPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<SlideKey, Arc<TPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`slide_poly`]. Racing inserts store equal values.
pub fn cached_slide_poly(a: &WeakComposition, w: &Window) -> Arc<TPolynomial> {
    let key = (a.clone(), *w);
    if let Some(p) = slide_cache().read().expect("slide cache poisoned").get(&key) {
        return Arc::clone(p);
    }
    let p = Arc::new(slide_poly(a, w));
    slide_cache()
        .write()
        .expect("slide cache poisoned")
        .entry(key)
        .or_insert(p)
        .clone()
}

/// Generating function of chains split into blocks `(bound, size)`: values
/// in `w`, weakly increasing inside a block, strictly increasing from one
/// block to the next, every value of a block at most its bound.
fn chain_gf(blocks: &[(i64, u32)], w: &Window) -> TPolynomial {
    let mut out = TPolynomial::zero(*w);
    let total: u32 = blocks.iter().map(|b| b.1).sum();
    let mut values = Vec::with_capacity(total as usize);
    fill_chain(blocks, 0, 0, w.lo, w, &mut values, &mut out);
    out
}

fn fill_chain(
    blocks: &[(i64, u32)],
    block: usize,
    used: u32,
    min_value: i64,
    w: &Window,
    values: &mut Vec<i64>,
    out: &mut TPolynomial,
) {
    if block == blocks.len() {
        out.add_term(crate::partitions::monomial_of(values), &TCoefficient::one());
        return;
    }
    let (bound, size) = blocks[block];
    let hi = bound.min(w.hi);
    if used == size {
        // next block starts strictly above the last value
        let next_min = values.last().map_or(w.lo, |&v| v + 1);
        fill_chain(blocks, block + 1, 0, next_min, w, values, out);
        return;
    }
    for v in min_value..=hi {
        values.push(v);
        fill_chain(blocks, block, used + 1, v, w, values, out);
        values.pop();
    }
}

/// `Ŝ_a(x_w)` through the flagged chain of `a`.
pub fn slide_poly_chain_oracle(a: &WeakComposition, w: &Window) -> TPolynomial {
    let blocks: Vec<(i64, u32)> = a.support().collect();
    chain_gf(&blocks, w)
}

/// Order in which tied dominance-minimal exponents are peeled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelOrder {
    /// Lexicographically smallest first (read from the lowest index).
    Lex,
    /// Lexicographically largest first.
    ReverseLex,
}

/// Unique `c_a` with `p = sum_a c_a Ŝ_a(x_w)`, indices supported in `w`.
pub fn expand_in_slides(p: &TPolynomial, w: &Window) -> Result<SlideExpansion> {
    expand_in_slides_ordered(p, w, PeelOrder::Lex)
}

/// [`expand_in_slides`] with an explicit tie-break among minimal exponents.
pub fn expand_in_slides_ordered(
    p: &TPolynomial,
    w: &Window,
    order: PeelOrder,
) -> Result<SlideExpansion> {
    if let Some((e, _)) = p.terms().find(|(e, _)| !e.is_within(w)) {
        return Err(Error::Domain(format!("exponent {e} lies outside window {w}")));
    }
    let max_weight = p.terms().map(|(e, _)| e.weight()).max().unwrap_or(0) as usize;
    let guard = p.len() * (max_weight + 1) + 1;
    let mut remaining = p.clone();
    let mut out = SlideExpansion::new();
    let mut steps = 0;
    while !remaining.is_zero() {
        steps += 1;
        if steps > guard {
            return Err(Error::Internal(format!(
                "slide peel did not terminate after {guard} steps"
            )));
        }
        let exps: Vec<&WeakComposition> = remaining.terms().map(|(e, _)| e).collect();
        let minimal = exps.iter().filter(|&&e| {
            !exps
                .iter()
                .any(|&f| f != e && f.weight() == e.weight() && e.dominates(f))
        });
        let chosen = match order {
            PeelOrder::Lex => minimal.min(),
            PeelOrder::ReverseLex => minimal.max(),
        }
        .map(|&e| e.clone())
        .ok_or_else(|| Error::Internal("no dominance-minimal exponent".into()))?;
        let c = remaining.coefficient(&chosen);
        let slide = cached_slide_poly(&chosen, w);
        if slide.coefficient(&chosen) != TCoefficient::one() {
            return Err(Error::Internal(format!(
                "slide polynomial of {chosen} does not contain its own monomial"
            )));
        }
        remaining.add_scaled(&slide, &(-&c));
        out.add_term(chosen, &c);
    }
    Ok(out)
}

/// Fundamental quasisymmetric polynomial `F_alpha(x_1, ..., x_m)`.
pub fn fundamental_qsym(alpha: &StrongComposition, m: i64) -> TPolynomial {
    fundamental_qsym_on(alpha, &Window::positive(m))
}

/// `F_alpha` in the variables of `w` (in increasing index order): weakly
/// increasing index words, strictly increasing between consecutive parts.
pub fn fundamental_qsym_on(alpha: &StrongComposition, w: &Window) -> TPolynomial {
    let blocks: Vec<(i64, u32)> = alpha.parts().iter().map(|&s| (w.hi, s)).collect();
    chain_gf(&blocks, w)
}

pub fn is_tail_strong(a: &WeakComposition) -> bool {
    a.is_tail_strong()
}

/// Pairs `(alpha·gamma, a_+^delta)` over all splittings of `flatten(a_+)`
/// into a prefix `gamma` and suffix `delta` (cutting inside a part gives
/// near-concatenation, at a boundary plain concatenation), ordered by
/// `|gamma|`.
pub fn backstable_decompose(
    a: &WeakComposition,
    r: i64,
) -> Result<Vec<(StrongComposition, WeakComposition)>> {
    if !a.is_tail_strong() {
        return Err(Error::Domain(format!("{a} is not tail-strong")));
    }
    if a.max_index().is_some_and(|hi| hi > r) {
        return Err(Error::Domain(format!("{a} is supported beyond index {r}")));
    }
    let alpha = a.nonpositive_part().flatten();
    let plus = a.positive_part();
    let total = plus.weight();
    let mut out = Vec::with_capacity(total as usize + 1);
    for cut in 0..=total {
        let mut gamma = Vec::new();
        let mut delta = Vec::new();
        let mut left = cut;
        for i in 1..=r.max(0) {
            let v = plus.get(i);
            let taken = v.min(left);
            left -= taken;
            if taken > 0 {
                gamma.push(taken);
            }
            delta.push(v - taken);
        }
        let gamma = StrongComposition::new(gamma).expect("positive parts");
        out.push((alpha.concat(&gamma), WeakComposition::new(1, delta)));
    }
    Ok(out)
}

/// `η_0(Ŝ̄_a) = F_{flatten(a)}(x_-)` for tail-strong `a`; returns the index.
pub fn eta0_of_backstable_slide(a: &WeakComposition) -> Result<StrongComposition> {
    if !a.is_tail_strong() {
        return Err(Error::Domain(format!("{a} is not tail-strong")));
    }
    Ok(a.flatten())
}
