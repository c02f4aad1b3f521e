//! The chromatic nonsymmetric polynomial `𝒳_D(x_w; t)`: by direct coloring
//! enumeration, by the slide expansion over `S_n`, and through `P`-partitions
//! of acyclic orientations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::compositions::{comp_of_subset, StrongComposition, WeakComposition, Window};
use crate::dyck::{dyck_graph, restriction_map, DyckGraph, PartialDyckPath, RestrictionMap};
use crate::partitions::{
    acyclic_orientations, incomparability_poset, inv_g, monomial_of, omega_labeling,
    p_descents, partition_gf, poset_of_orientation, rdes, LabeledPoset,
};
use crate::perm::{permutations, Permutation};
use crate::polynomial::{TCoefficient, TPolynomial};
use crate::slide::{fundamental_qsym_on, SlideExpansion};

/// `sum_f t^{des(f)} x_f` over proper colorings with `f(i)` in
/// `[w.lo, min(ρ(i), w.hi)]`.
pub fn chromatic_brute(d: &PartialDyckPath, w: &Window) -> TPolynomial {
    let g = dyck_graph(d);
    let rho = restriction_map(d);
    let mut out = TPolynomial::zero(*w);
    let mut f = Vec::with_capacity(d.n());
    color(&g, &rho, w, &mut f, 0, &mut out);
    out
}

fn color(
    g: &DyckGraph,
    rho: &RestrictionMap,
    w: &Window,
    f: &mut Vec<i64>,
    descents: usize,
    out: &mut TPolynomial,
) {
    let v = f.len() + 1;
    if v > g.n() {
        out.add_term(monomial_of(f), &TCoefficient::t_power(descents));
        return;
    }
    let hi = rho.get(v).min(w.hi);
    'colors: for c in w.lo..=hi {
        let mut extra = 0;
        for u in 1..v {
            if g.has_edge(u, v) {
                let fu = f[u - 1];
                if fu == c {
                    continue 'colors;
                }
                if fu > c {
                    extra += 1;
                }
            }
        }
        f.push(c);
        color(g, rho, w, f, descents + extra, out);
        f.pop();
    }
}

/// `t`-weight of the linear order `pi` of `P_D`: the edges `{u, v}`, `u < v`,
/// with `u` placed after `v`, i.e. the descents of every coloring that
/// increases along `pi`.
fn order_weight(g: &DyckGraph, pi: &Permutation) -> usize {
    inv_g(g, &pi.inverse())
}

/// `sum_{pi in S_n} t^{inv} Ŝ_{rdes(pi)}` as a coefficient map; identical
/// indices are merged.
pub fn theorem_expansion(d: &PartialDyckPath) -> SlideExpansion {
    let g = dyck_graph(d);
    let rho = restriction_map(d);
    let p = incomparability_poset(&g).expect("Dyck graphs have an incomparability poset");
    let mut coeffs: BTreeMap<WeakComposition, TCoefficient> = BTreeMap::new();
    for pi in permutations(d.n()) {
        let a = rdes(&pi, &rho, &p);
        *coeffs.entry(a).or_default() += &TCoefficient::t_power(order_weight(&g, &pi));
    }
    coeffs.into_iter().collect()
}

/// The slide-expansion side evaluated on `w`, with its coefficient map.
pub fn chromatic_theorem(d: &PartialDyckPath, w: &Window) -> (TPolynomial, SlideExpansion) {
    let e = theorem_expansion(d);
    (e.assemble(w), e)
}

/// `sum_o t^{asc(o)} 𝓕_{(P_o, ω_o, ρ)}` over acyclic orientations of `G_D`.
pub fn chromatic_by_orientations(d: &PartialDyckPath, w: &Window) -> TPolynomial {
    let g = dyck_graph(d);
    let rho = restriction_map(d);
    let mut out = TPolynomial::zero(*w);
    for o in acyclic_orientations(&g) {
        let lp = LabeledPoset::new(poset_of_orientation(&o), omega_labeling(&o), rho.clone())
            .expect("orientation data is consistent");
        out.add_scaled(&partition_gf(&lp, w), &TCoefficient::t_power(o.ascending_arcs()));
    }
    out
}

/// Brute force against the slide expansion on one window.
#[derive(Clone, Debug, Serialize)]
pub struct ChromaticReport {
    pub path: PartialDyckPath,
    pub window: Window,
    #[serde(skip)]
    pub brute: TPolynomial,
    #[serde(skip)]
    pub theorem: TPolynomial,
    pub equal: bool,
    pub slide_positive: bool,
    #[serde(skip)]
    pub slide_expansion: SlideExpansion,
    #[serde(skip)]
    pub mismatch_terms: Vec<(WeakComposition, TCoefficient)>,
}

impl ChromaticReport {
    pub fn passed(&self) -> bool {
        self.equal && self.slide_positive
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "path": self.path.literal(),
            "window": [self.window.lo, self.window.hi],
            "equal": self.equal,
            "slide_positive": self.slide_positive,
            "brute": self.brute.to_json(),
            "theorem": self.theorem.to_json(),
            "expansion": self.slide_expansion.to_json(),
            "mismatch": self
                .mismatch_terms
                .iter()
                .map(|(e, c)| serde_json::json!({"exp": e.to_string(), "diff": c.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn verify_theorem(d: &PartialDyckPath, w: &Window) -> ChromaticReport {
    let brute = chromatic_brute(d, w);
    let (theorem, slide_expansion) = chromatic_theorem(d, w);
    let mismatch_terms = brute.difference_terms(&theorem);
    ChromaticReport {
        path: d.clone(),
        window: *w,
        equal: mismatch_terms.is_empty(),
        slide_positive: slide_expansion.is_positive(),
        brute,
        theorem,
        slide_expansion,
        mismatch_terms,
    }
}

/// Coefficients in the fundamental basis of the quasisymmetric limit:
/// `pi` contributes `t^{inv}` to `F` indexed by the transpose of
/// `comp(Des_{P_D}(pi))`.
pub fn chromatic_qsym_fundamental(d: &PartialDyckPath) -> BTreeMap<StrongComposition, TCoefficient> {
    let g = dyck_graph(d);
    let p = incomparability_poset(&g).expect("Dyck graphs have an incomparability poset");
    let n = d.n() as u32;
    let mut out: BTreeMap<StrongComposition, TCoefficient> = BTreeMap::new();
    for pi in permutations(d.n()) {
        let alpha = comp_of_subset(&p_descents(&p, &pi), n)
            .expect("descent positions lie in [n-1]")
            .transpose();
        *out.entry(alpha).or_default() += &TCoefficient::t_power(order_weight(&g, &pi));
    }
    out
}

/// Colors in `[1-m, 0]` against the fundamental expansion on the same
/// `m` variables.
pub fn verify_corollary(d: &PartialDyckPath, m: i64) -> bool {
    let w = Window::new(1 - m, 0).expect("m >= 0");
    let lhs = chromatic_brute(d, &w);
    let mut rhs = TPolynomial::zero(w);
    for (alpha, c) in chromatic_qsym_fundamental(d) {
        rhs.add_scaled(&fundamental_qsym_on(&alpha, &w), &c);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_PATH: &str = "ENEENENEE@3,3";
    const SIX_VERTEX: &str = "ENEEENENEENNEENEE@6,5";

    fn path(s: &str) -> PartialDyckPath {
        s.parse().unwrap()
    }

    fn wc(s: &str) -> WeakComposition {
        s.parse().unwrap()
    }

    #[test]
    fn three_path_brute() {
        let w = Window::positive(3);
        let got = chromatic_brute(&path(THREE_PATH), &w);
        let mut expected = TPolynomial::zero(w);
        expected.add_term(wc("1,1,1"), &TCoefficient::from_i64s(&[1, 1]));
        expected.add_term(wc("2,1"), &TCoefficient::t_power(1));
        expected.add_term(wc("2,0,1"), &TCoefficient::t_power(1));
        assert_eq!(got, expected);
        assert_eq!(got.evaluate_all_ones(), TCoefficient::from_i64s(&[1, 3]));
    }

    #[test]
    fn three_path_expansion() {
        let w = Window::positive(3);
        let (poly, e) = chromatic_theorem(&path(THREE_PATH), &w);
        let expected: SlideExpansion = [
            (wc("1,1,1"), TCoefficient::from_i64s(&[1, 1])),
            (wc("2,0,1"), TCoefficient::t_power(1)),
            (wc("1|2"), TCoefficient::t_power(1)),
            (wc("1|1,0,1"), TCoefficient::t_power(1)),
            (wc("1,1|1"), TCoefficient::t_power(2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(e, expected);
        assert_eq!(poly, chromatic_brute(&path(THREE_PATH), &w));
        assert!(verify_theorem(&path(THREE_PATH), &Window::new(0, 3).unwrap()).passed());
    }

    #[test]
    fn small_conventions() {
        let empty = path("@0,0");
        let w = Window::positive(2);
        assert_eq!(chromatic_brute(&empty, &w), TPolynomial::one(w));
        assert_eq!(chromatic_theorem(&empty, &w).0, TPolynomial::one(w));
        let single = path("ENE@1,1");
        let one = Window::positive(1);
        assert_eq!(
            chromatic_brute(&single, &one),
            TPolynomial::variable(one, 1)
        );
        let r0 = crate::dyck::enumerate_paths(2, 0).next().unwrap();
        assert!(chromatic_brute(&r0, &Window::positive(3)).is_zero());
        assert!(chromatic_theorem(&r0, &Window::positive(3)).0.is_zero());
    }

    #[test]
    fn six_vertex_full_window() {
        assert!(verify_theorem(&path(SIX_VERTEX), &Window::positive(5)).passed());
    }

    #[test]
    fn orientation_sum() {
        for d in crate::dyck::enumerate_paths(3, 2) {
            let w = Window::new(0, 2).unwrap();
            assert_eq!(chromatic_by_orientations(&d, &w), chromatic_brute(&d, &w), "{d}");
        }
    }

    #[test]
    fn three_path_fundamentals() {
        let d = path(THREE_PATH);
        let f = chromatic_qsym_fundamental(&d);
        let ones = StrongComposition::new(vec![1, 1, 1]).unwrap();
        assert!(f[&ones].get(2) >= 1.into());
        assert!(verify_corollary(&d, 3));
    }
}
