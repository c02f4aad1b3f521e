//! Exact sparse polynomials in windowed variables with coefficients in `Z[t]`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compositions::{WeakComposition, Window};
use crate::error::{Error, Result};

/// A polynomial in `t` with integer coefficients; `coeffs[d]` multiplies `t^d`.
///
/// Canonical: no trailing zero coefficients, so zero is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TCoefficient {
    coeffs: Vec<BigInt>,
}

impl TCoefficient {
    pub fn zero() -> Self {
        TCoefficient { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    /// `c * t^deg`.
    pub fn monomial(deg: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// `t^deg`.
    pub fn t_power(deg: usize) -> Self {
        Self::monomial(deg, BigInt::one())
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TCoefficient { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn get(&self, deg: usize) -> BigInt {
        self.coeffs.get(deg).cloned().unwrap_or_default()
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TCoefficient { coeffs }
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Every integer coefficient is `>= 0` (membership in `N[t]`).
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Degrees carrying a negative coefficient.
    pub fn negative_degrees(&self) -> Vec<usize> {
        self.terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(d, _)| d)
            .collect()
    }

    fn add_in_place(&mut self, other: &TCoefficient) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add for &TCoefficient {
    type Output = TCoefficient;
    fn add(self, rhs: &TCoefficient) -> TCoefficient {
        let mut out = self.clone();
        out.add_in_place(rhs);
        out
    }
}

impl AddAssign<&TCoefficient> for TCoefficient {
    fn add_assign(&mut self, rhs: &TCoefficient) {
        self.add_in_place(rhs);
    }
}

impl Neg for &TCoefficient {
    type Output = TCoefficient;
    fn neg(self) -> TCoefficient {
        TCoefficient {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &TCoefficient {
    type Output = TCoefficient;
    fn sub(self, rhs: &TCoefficient) -> TCoefficient {
        self + &(-rhs)
    }
}

impl Mul for &TCoefficient {
    type Output = TCoefficient;
    fn mul(self, rhs: &TCoefficient) -> TCoefficient {
        if self.is_zero() || rhs.is_zero() {
            return TCoefficient::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] += a * b;
            }
        }
        TCoefficient::from_coeffs(coeffs)
    }
}

impl fmt::Display for TCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let mag = c.abs();
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            if d == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `x_lo..x_hi` with `Z[t]` coefficients.
///
/// The window is metadata recording the alphabet; every stored exponent is
/// supported inside it. Arithmetic never drops terms: truncation to a smaller
/// window is the explicit [`TPolynomial::restrict`]. Equality compares terms
/// only.
#[derive(Clone, Debug)]
pub struct TPolynomial {
    window: Window,
    terms: BTreeMap<WeakComposition, TCoefficient>,
}

impl PartialEq for TPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for TPolynomial {}

impl TPolynomial {
    pub fn zero(window: Window) -> Self {
        TPolynomial {
            window,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(window: Window) -> Self {
        let mut p = Self::zero(window);
        p.add_term(WeakComposition::zero(), &TCoefficient::one());
        p
    }

    /// `coef * x^exp`; the window is widened to hold `exp` if necessary.
    pub fn term(window: Window, exp: WeakComposition, coef: TCoefficient) -> Self {
        let mut p = Self::zero(window);
        p.add_term(exp, &coef);
        p
    }

    /// The variable `x_i`.
    pub fn variable(window: Window, i: i64) -> Self {
        Self::term(window, WeakComposition::unit(i, 1), TCoefficient::one())
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeakComposition, &TCoefficient)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<WeakComposition, TCoefficient> {
        self.terms
    }

    /// Adds `coef * x^exp` in place, pruning a cancelled term.
    pub fn add_term(&mut self, exp: WeakComposition, coef: &TCoefficient) {
        if coef.is_zero() {
            return;
        }
        if let (Some(lo), Some(hi)) = (exp.min_index(), exp.max_index()) {
            if !exp.is_within(&self.window) {
                self.window = self.window.hull(&Window { lo, hi });
            }
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += coef * other`.
    pub fn add_scaled(&mut self, other: &TPolynomial, coef: &TCoefficient) {
        if coef.is_zero() {
            return;
        }
        self.window = self.window.hull(&other.window);
        let unit = *coef == TCoefficient::one();
        for (e, c) in &other.terms {
            if unit {
                self.add_term(e.clone(), c);
            } else {
                self.add_term(e.clone(), &(c * coef));
            }
        }
    }

    pub fn coefficient(&self, exp: &WeakComposition) -> TCoefficient {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Multiplies every coefficient by `t^k`.
    pub fn scale_t(&self, k: usize) -> TPolynomial {
        TPolynomial {
            window: self.window,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shift(k))).collect(),
        }
    }

    pub fn scale(&self, coef: &TCoefficient) -> TPolynomial {
        let mut out = TPolynomial::zero(self.window);
        out.add_scaled(self, coef);
        out
    }

    /// Substitutes `x_i = 1` for every variable.
    pub fn evaluate_all_ones(&self) -> TCoefficient {
        let mut acc = TCoefficient::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Keeps only the terms supported in `w` and relabels the window as `w`.
    pub fn restrict(&self, w: &Window) -> TPolynomial {
        TPolynomial {
            window: *w,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.is_within(w))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms, window replaced by `w`; fails if a term lies outside `w`.
    pub fn with_window(&self, w: Window) -> Result<TPolynomial> {
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| !e.is_within(&w)) {
            return Err(Error::Domain(format!("exponent {e} lies outside window {w}")));
        }
        Ok(TPolynomial {
            window: w,
            terms: self.terms.clone(),
        })
    }

    /// Coefficient of `t^deg` as a polynomial with constant coefficients.
    pub fn t_slice(&self, deg: usize) -> TPolynomial {
        TPolynomial {
            window: self.window,
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let v = c.get(deg);
                    (!v.is_zero()).then(|| (e.clone(), TCoefficient::monomial(0, v)))
                })
                .collect(),
        }
    }

    /// Largest `t`-degree among coefficients.
    pub fn t_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(TCoefficient::degree).max()
    }

    /// Terms whose exponents differ between `self` and `other`, with
    /// coefficient `self - other`.
    pub fn difference_terms(&self, other: &TPolynomial) -> Vec<(WeakComposition, TCoefficient)> {
        let diff = self - other;
        diff.terms.into_iter().collect()
    }

    /// Applies `f` to every exponent (used for variable substitutions).
    pub fn map_exponents(
        &self,
        window: Window,
        mut f: impl FnMut(&WeakComposition) -> WeakComposition,
    ) -> TPolynomial {
        let mut out = TPolynomial::zero(window);
        for (e, c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TPolynomial> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

impl Add for &TPolynomial {
    type Output = TPolynomial;
    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &TCoefficient::one());
        out
    }
}

impl Sub for &TPolynomial {
    type Output = TPolynomial;
    fn sub(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &TCoefficient::constant(-1));
        out
    }
}

impl Neg for &TPolynomial {
    type Output = TPolynomial;
    fn neg(self) -> TPolynomial {
        self.scale(&TCoefficient::constant(-1))
    }
}

impl Mul for &TPolynomial {
    type Output = TPolynomial;
    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero(self.window.hull(&rhs.window));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), &(c1 * c2));
            }
        }
        out
    }
}

impl AddAssign<&TPolynomial> for TPolynomial {
    fn add_assign(&mut self, rhs: &TPolynomial) {
        self.add_scaled(rhs, &TCoefficient::one());
    }
}

impl<'a> Sum<&'a TPolynomial> for Option<TPolynomial> {
    fn sum<I: Iterator<Item = &'a TPolynomial>>(iter: I) -> Self {
        iter.fold(None, |acc, p| match acc {
            None => Some(p.clone()),
            Some(mut a) => {
                a += p;
                Some(a)
            }
        })
    }
}

fn variable_name(i: i64) -> String {
    if i >= 0 {
        format!("x{i}")
    } else {
        format!("x({i})")
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: String = e
                .support()
                .map(|(i, v)| {
                    if v == 1 {
                        variable_name(i)
                    } else {
                        format!("{}^{v}", variable_name(i))
                    }
                })
                .collect();
            let coef = c.to_string();
            match (mono.is_empty(), coef.as_str()) {
                (true, _) => write!(f, "{coef}")?,
                (false, "1") => write!(f, "{mono}")?,
                (false, _) if c.terms().count() == 1 && !coef.starts_with('-') => {
                    write!(f, "{coef}·{mono}")?
                }
                (false, _) => write!(f, "({coef})·{mono}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExpJson {
    lo: i64,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TTermJson {
    deg: usize,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: ExpJson,
    t: Vec<TTermJson>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    window: [i64; 2],
    terms: Vec<TermJson>,
}

pub(crate) fn coefficient_to_json(c: &TCoefficient) -> serde_json::Value {
    serde_json::to_value(coefficient_terms(c)).expect("serializable")
}

fn coefficient_terms(c: &TCoefficient) -> Vec<TTermJson> {
    c.terms()
        .map(|(deg, v)| TTermJson {
            deg,
            coef: v.to_string(),
        })
        .collect()
}

fn coefficient_from_terms(ts: Vec<TTermJson>) -> std::result::Result<TCoefficient, String> {
    let mut acc = TCoefficient::zero();
    for t in ts {
        let v: BigInt = t
            .coef
            .parse()
            .map_err(|_| format!("bad coefficient {:?}", t.coef))?;
        acc += &TCoefficient::monomial(t.deg, v);
    }
    Ok(acc)
}

impl Serialize for TCoefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        coefficient_terms(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TCoefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        coefficient_from_terms(Vec::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for WeakComposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpJson {
            lo: self.stored_lo(),
            entries: self.entries().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeakComposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = ExpJson::deserialize(d)?;
        Ok(WeakComposition::new(e.lo, e.entries))
    }
}

impl Serialize for TPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            window: [self.window.lo, self.window.hi],
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: ExpJson {
                        lo: e.stored_lo(),
                        entries: e.entries().to_vec(),
                    },
                    t: coefficient_terms(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let window = Window::new(raw.window[0], raw.window[1]).map_err(D::Error::custom)?;
        let mut p = TPolynomial::zero(window);
        for term in raw.terms {
            let exp = WeakComposition::new(term.exp.lo, term.exp.entries);
            if !exp.is_within(&window) {
                return Err(D::Error::custom(format!(
                    "exponent {exp} lies outside window {window}"
                )));
            }
            let coef = coefficient_from_terms(term.t).map_err(D::Error::custom)?;
            p.add_term(exp, &coef);
        }
        Ok(p)
    }
}
