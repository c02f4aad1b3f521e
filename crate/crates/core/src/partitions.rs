//! Posets, labelings, acyclic orientations and restricted `(P, ω)`-partitions.
//!
//! Vertices and poset elements are 1-based throughout the public API. A
//! labeling `ω` is stored as the vector `(ω(1), ..., ω(n))`.

use std::collections::BTreeSet;

use crate::compositions::{WeakComposition, Window};
use crate::dyck::{DyckGraph, RestrictionMap};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::polynomial::{TCoefficient, TPolynomial};

/// Strict partial order on `[n]`, stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Transitive closure of the given relations `a ≺ b`; fails on cycles.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Domain(format!("relation {a} ≺ {b} outside [{n}]")));
            }
            less[a - 1][b - 1] = true;
        }
        for k in 0..n {
            let through = less[k].clone();
            for row in less.iter_mut() {
                if row[k] {
                    for (cell, &kj) in row.iter_mut().zip(&through) {
                        *cell |= kj;
                    }
                }
            }
        }
        if (0..n).any(|i| less[i][i]) {
            return Err(Error::Structure("relations contain a cycle".into()));
        }
        Ok(Poset { n, less })
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            less: vec![vec![false; n]; n],
        }
    }

    /// The linear order `pi(1) ≺ pi(2) ≺ ... ≺ pi(n)`.
    pub fn linear_order(pi: &Permutation) -> Self {
        let n = pi.len();
        let mut less = vec![vec![false; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                less[pi.values()[a] - 1][pi.values()[b] - 1] = true;
            }
        }
        Poset { n, less }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a ≺ b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a - 1][b - 1]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    /// All strict relations `(a, b)` with `a ≺ b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in 1..=self.n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relations `a ⋖ b`: `a ≺ b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !(1..=self.n).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// `i < j` in positions never has `pi(j) ≺ pi(i)`.
    pub fn is_linear_extension(&self, pi: &Permutation) -> bool {
        let v = pi.values();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !self.lt(v[j], v[i])))
    }

    /// The incomparability graph (no interval check).
    pub fn incomparability_graph(&self) -> DyckGraph {
        let mut edges = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if !self.comparable(a, b) {
                    edges.push((a, b));
                }
            }
        }
        DyckGraph::from_edges_unchecked(self.n, &edges).expect("edges inside [n]")
    }
}

/// A poset with a labeling `ω` and restriction `ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    pub poset: Poset,
    pub omega: Vec<usize>,
    pub rho: RestrictionMap,
}

impl LabeledPoset {
    pub fn new(poset: Poset, omega: Vec<usize>, rho: RestrictionMap) -> Result<Self> {
        let n = poset.n();
        Permutation::new(omega.clone())
            .map_err(|_| Error::Domain(format!("labeling {omega:?} is not a bijection of [{n}]")))?;
        if omega.len() != n || rho.len() != n {
            return Err(Error::Domain("labeling/restriction length mismatch".into()));
        }
        Ok(LabeledPoset { poset, omega, rho })
    }

    /// The linear order `pi(1) ≺ ... ≺ pi(n)` carrying `ω` and `ρ`.
    pub fn linear(pi: &Permutation, omega: Vec<usize>, rho: RestrictionMap) -> Result<Self> {
        Self::new(Poset::linear_order(pi), omega, rho)
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn omega(&self, v: usize) -> usize {
        self.omega[v - 1]
    }

    /// Hasse diagram in DOT: node text is `ω`, the annotation is `ρ`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph P {\n  rankdir=BT;\n");
        for v in 1..=self.n() {
            s.push_str(&format!(
                "  {v} [label=\"{}\", xlabel=\"≤{}\"];\n",
                self.omega(v),
                self.rho.get(v)
            ));
        }
        for (a, b) in self.poset.covers() {
            s.push_str(&format!("  {a} -> {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// `i ≺ j` iff `i < j` and `{i, j}` is not an edge.
pub fn incomparability_poset(g: &DyckGraph) -> Result<Poset> {
    let n = g.n();
    let mut less = vec![vec![false; n]; n];
    for i in 1..=n {
        for j in i + 1..=n {
            less[i - 1][j - 1] = !g.has_edge(i, j);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if less[i][j] && less[j][k] && !less[i][k] {
                    return Err(Error::Structure(format!(
                        "non-edges are not transitive: {} ≺ {} ≺ {} but {{{},{}}} is an edge",
                        i + 1,
                        j + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(Poset { n, less })
}

/// An acyclic orientation: every edge appears once as `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        let o = Orientation { n, arcs };
        if !o.is_acyclic() {
            return Err(Error::Structure("orientation has a directed cycle".into()));
        }
        Ok(o)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, t) in &self.arcs {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arcs {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == self.n
    }

    /// Arcs `i -> j` with `i < j`; each is a descent of every compatible coloring.
    pub fn ascending_arcs(&self) -> usize {
        self.arcs.iter().filter(|(s, t)| s < t).count()
    }

    /// Compatible colorings decrease along every arc.
    pub fn is_compatible(&self, f: &[i64]) -> bool {
        self.arcs.iter().all(|&(s, t)| f[s - 1] > f[t - 1])
    }
}

/// Directs `{pi(i), pi(j)}`, `i < j`, from `pi(j)` to `pi(i)`.
pub fn orientation_from_perm(g: &DyckGraph, pi: &Permutation) -> Orientation {
    let pos = pi.inverse();
    let arcs = g
        .edges()
        .into_iter()
        .map(|(a, b)| if pos.at(a) < pos.at(b) { (b, a) } else { (a, b) })
        .collect();
    Orientation::new(g.n(), arcs).expect("orientations induced by a linear order are acyclic")
}

/// All acyclic orientations of `g`, in a fixed order.
pub fn acyclic_orientations(g: &DyckGraph) -> Vec<Orientation> {
    let edges = g.edges();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << edges.len()) {
        let arcs = edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        if let Ok(o) = Orientation::new(g.n(), arcs) {
            out.push(o);
        }
    }
    out
}

/// Labels maximal elements first: repeatedly take the largest remaining
/// vertex of indegree 0 and give it the next counter value.
pub fn omega_labeling(o: &Orientation) -> Vec<usize> {
    let n = o.n();
    let mut removed = vec![false; n + 1];
    let mut omega = vec![0; n];
    for ctr in 1..=n {
        let v = (1..=n)
            .rev()
            .find(|&v| {
                !removed[v]
                    && !o
                        .arcs()
                        .iter()
                        .any(|&(s, t)| t == v && !removed[s])
            })
            .expect("acyclic orientation always has a source");
        omega[v - 1] = ctr;
        removed[v] = true;
    }
    omega
}

/// `j ≺ i` iff there is a directed path `i -> ... -> j`.
pub fn poset_of_orientation(o: &Orientation) -> Poset {
    let relations: Vec<(usize, usize)> = o.arcs().iter().map(|&(s, t)| (t, s)).collect();
    Poset::from_relations(o.n(), &relations).expect("acyclic")
}

/// Number of edges `{i, j}`, `i < j`, with `pi(i) > pi(j)`.
pub fn inv_g(g: &DyckGraph, pi: &Permutation) -> usize {
    g.edges()
        .into_iter()
        .filter(|&(i, j)| pi.at(i) > pi.at(j))
        .count()
}

/// Positions `i in [n-1]` with `pi(i+1) ≺_P pi(i)`.
pub fn p_descents(p: &Poset, pi: &Permutation) -> BTreeSet<u32> {
    (1..pi.len())
        .filter(|&i| p.lt(pi.at(i + 1), pi.at(i)))
        .map(|i| i as u32)
        .collect()
}

/// Top-down tightening of `ρ` along `pi(1) ≺ ... ≺ pi(n)`, where `steady(i)`
/// says the step from `pi(i)` to `pi(i+1)` keeps the bound (otherwise the
/// bound drops by one).
fn tighten(pi: &Permutation, rho: &RestrictionMap, steady: impl Fn(usize) -> bool) -> RestrictionMap {
    let n = pi.len();
    let mut out = vec![0i64; n];
    if n == 0 {
        return RestrictionMap(out);
    }
    out[pi.at(n) - 1] = rho.get(pi.at(n));
    for i in (1..n).rev() {
        let above = out[pi.at(i + 1) - 1];
        let cap = if steady(i) { above } else { above - 1 };
        out[pi.at(i) - 1] = cap.min(rho.get(pi.at(i)));
    }
    RestrictionMap(out)
}

/// `barrho` from the poset: the bound is kept across `pi(i) ≻_P pi(i+1)`.
/// Indexed by vertex.
pub fn barrho(pi: &Permutation, rho: &RestrictionMap, p: &Poset) -> RestrictionMap {
    tighten(pi, rho, |i| p.lt(pi.at(i + 1), pi.at(i)))
}

/// `barrho` from a labeling: the bound is kept across ascents of `ω∘pi`.
pub fn barrho_labeled(pi: &Permutation, rho: &RestrictionMap, omega: &[usize]) -> RestrictionMap {
    tighten(pi, rho, |i| omega[pi.at(i) - 1] < omega[pi.at(i + 1) - 1])
}

/// Splits `pi` into maximal runs joined by steady steps and places each run's
/// size at the tightened bound of its bottom element.
fn chains_to_composition(
    pi: &Permutation,
    bounds: &RestrictionMap,
    steady: impl Fn(usize) -> bool,
) -> WeakComposition {
    let n = pi.len();
    let mut blocks: Vec<(i64, u32)> = Vec::new();
    let mut start = 1;
    for i in 1..=n {
        if i == n || !steady(i) {
            blocks.push((bounds.get(pi.at(start)), (i - start + 1) as u32));
            start = i + 1;
        }
    }
    let Some(&(lo, _)) = blocks.first() else {
        return WeakComposition::zero();
    };
    debug_assert!(blocks.windows(2).all(|w| w[0].0 < w[1].0));
    let hi = blocks.last().unwrap().0;
    let mut entries = vec![0u32; (hi - lo + 1) as usize];
    for (idx, size) in blocks {
        entries[(idx - lo) as usize] = size;
    }
    WeakComposition::new(lo, entries)
}

/// Reduced weak descent composition, chains split at non-`P`-descents.
pub fn rdes(pi: &Permutation, rho: &RestrictionMap, p: &Poset) -> WeakComposition {
    let bounds = barrho(pi, rho, p);
    chains_to_composition(pi, &bounds, |i| p.lt(pi.at(i + 1), pi.at(i)))
}

/// Reduced weak descent composition of a labeled linear order, chains split
/// at descents of `ω∘pi`.
pub fn rdes_labeled(pi: &Permutation, rho: &RestrictionMap, omega: &[usize]) -> WeakComposition {
    let bounds = barrho_labeled(pi, rho, omega);
    chains_to_composition(pi, &bounds, |i| omega[pi.at(i) - 1] < omega[pi.at(i + 1) - 1])
}

/// Every `ρ`-restricted `(P, ω)`-partition with values in `w`, as the vector
/// `(f(1), ..., f(n))`.
pub fn enumerate_restricted_partitions(lp: &LabeledPoset, w: &Window) -> Vec<Vec<i64>> {
    let n = lp.n();
    let covers = lp.poset.covers();
    // assign vertices bottom-up along a linear extension so each cover is
    // checked once both ends are set
    let order = linear_extensions(&lp.poset)
        .into_iter()
        .next()
        .expect("every finite poset has a linear extension");
    let mut below: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n + 1];
    for &(a, b) in &covers {
        let strict = lp.omega(a) > lp.omega(b);
        below[b].push((a, strict));
    }
    let mut f = vec![0i64; n];
    let mut out = Vec::new();
    assign(lp, w, order.values(), 0, &below, &mut f, &mut out);
    out.sort();
    out
}

fn assign(
    lp: &LabeledPoset,
    w: &Window,
    order: &[usize],
    k: usize,
    below: &[Vec<(usize, bool)>],
    f: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if k == order.len() {
        out.push(f.clone());
        return;
    }
    let v = order[k];
    let lo = below[v]
        .iter()
        .map(|&(a, strict)| f[a - 1] + i64::from(strict))
        .fold(w.lo, i64::max);
    let hi = lp.rho.get(v).min(w.hi);
    for c in lo..=hi {
        f[v - 1] = c;
        assign(lp, w, order, k + 1, below, f, out);
    }
}

/// `sum_f x_{f(1)} ... x_{f(n)}` over restricted partitions in `w`.
pub fn partition_gf(lp: &LabeledPoset, w: &Window) -> TPolynomial {
    let mut p = TPolynomial::zero(*w);
    for f in enumerate_restricted_partitions(lp, w) {
        p.add_term(monomial_of(&f), &TCoefficient::one());
    }
    p
}

/// Exponent vector of `x_{f(1)} ... x_{f(n)}`.
pub fn monomial_of(colors: &[i64]) -> WeakComposition {
    let (Some(&lo), Some(&hi)) = (colors.iter().min(), colors.iter().max()) else {
        return WeakComposition::zero();
    };
    let mut entries = vec![0u32; (hi - lo + 1) as usize];
    for &c in colors {
        entries[(c - lo) as usize] += 1;
    }
    WeakComposition::new(lo, entries)
}

/// All linear extensions in lexicographic order.
pub fn linear_extensions(p: &Poset) -> Vec<Permutation> {
    let n = p.n();
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut prefix = Vec::with_capacity(n);
    extend(p, &mut used, &mut prefix, &mut out);
    out
}

fn extend(p: &Poset, used: &mut Vec<bool>, prefix: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    let n = p.n();
    if prefix.len() == n {
        out.push(Permutation::new(prefix.clone()).expect("bijection"));
        return;
    }
    for v in 1..=n {
        if used[v] || (1..=n).any(|u| !used[u] && p.lt(u, v)) {
            continue;
        }
        used[v] = true;
        prefix.push(v);
        extend(p, used, prefix, out);
        prefix.pop();
        used[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::{dyck_graph, parse_literal, restriction_map};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn three_path() -> (DyckGraph, RestrictionMap, Poset) {
        let d = parse_literal("ENEENENEE@3,3").unwrap();
        let g = dyck_graph(&d);
        let p = incomparability_poset(&g).unwrap();
        (g, restriction_map(&d), p)
    }

    #[test]
    fn incomparability_poset_examples() {
        let (_, _, p) = three_path();
        assert_eq!(p.relations(), vec![(1, 3)]);
        let k3 = DyckGraph::from_edges(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(incomparability_poset(&k3).unwrap().relations().is_empty());
        let empty = DyckGraph::from_edges(3, &[]).unwrap();
        assert_eq!(
            incomparability_poset(&empty).unwrap().relations(),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        // {1,3} without {1,2}: 1 ≺ 2 ≺ 3 but 1, 3 adjacent
        let bad = DyckGraph::from_edges_unchecked(3, &[(1, 3)]).unwrap();
        assert!(matches!(incomparability_poset(&bad), Err(Error::Structure(_))));
    }

    #[test]
    fn orientation_examples() {
        let (g, _, _) = three_path();
        let id = orientation_from_perm(&g, &Permutation::identity(3));
        assert_eq!(id.arcs(), &[(2, 1), (3, 2)]);
        let o = orientation_from_perm(&g, &perm("321"));
        assert_eq!(o.arcs(), &[(1, 2), (2, 3)]);
    }

    #[test]
    fn omega_labeling_worked_example() {
        let d = parse_literal("ENEEENENEENNEENEE@6,5").unwrap();
        let g = dyck_graph(&d);
        let o = orientation_from_perm(&g, &perm("645123"));
        assert_eq!(omega_labeling(&o), vec![6, 5, 1, 4, 2, 3]);
        let po = poset_of_orientation(&o);
        let covers = po.covers();
        // chain 1 ⋖ 2 ⋖ 3 on one side; 4 and 6 below 5, which sits below 3
        for c in [(1, 2), (2, 3), (5, 3), (4, 5), (6, 5)] {
            assert!(covers.contains(&c), "{c:?} not a cover in {covers:?}");
        }
        assert_eq!(covers.len(), 5);
    }

    #[test]
    fn omega_labeling_small_cases() {
        let edgeless = Orientation::new(4, vec![]).unwrap();
        assert_eq!(omega_labeling(&edgeless), vec![4, 3, 2, 1]);
        // arc 1 -> 2: vertex 1 is the only source
        let o = Orientation::new(2, vec![(1, 2)]).unwrap();
        let omega = omega_labeling(&o);
        assert_eq!(omega, vec![1, 2]);
        assert!(omega[0] < omega[1]);
    }

    #[test]
    fn poset_of_orientation_examples() {
        assert!(poset_of_orientation(&Orientation::new(3, vec![]).unwrap())
            .relations()
            .is_empty());
        let path = Orientation::new(3, vec![(3, 2), (2, 1)]).unwrap();
        assert_eq!(poset_of_orientation(&path).relations(), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(Orientation::new(2, vec![(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn inv_and_descents() {
        let (g, _, p) = three_path();
        assert_eq!(inv_g(&g, &Permutation::identity(3)), 0);
        assert_eq!(inv_g(&g, &perm("321")), 2);
        assert_eq!(inv_g(&g, &perm("312")), 1);
        assert!(p_descents(&Poset::antichain(3), &perm("312")).is_empty());
        assert_eq!(p_descents(&p, &perm("312")), BTreeSet::from([1]));
        assert!(p_descents(&p, &perm("321")).is_empty());
    }

    #[test]
    fn labeled_chain_worked_example() {
        let id = Permutation::identity(5);
        let omega = vec![2, 3, 1, 5, 4];
        let rho = RestrictionMap(vec![1, 4, 5, 6, 4]);
        assert_eq!(barrho_labeled(&id, &rho, &omega).0, vec![1, 2, 3, 3, 4]);
        assert_eq!(rdes_labeled(&id, &rho, &omega), WeakComposition::from_positive(&[2, 0, 2, 1]));
    }

    #[test]
    fn poset_barrho_and_rdes_on_three_path() {
        let (_, rho, p) = three_path();
        let pi = perm("312");
        let b = barrho(&pi, &rho, &p);
        // bottom-to-top along 3, 1, 2
        assert_eq!((b.get(3), b.get(1), b.get(2)), (1, 1, 3));
        assert_eq!(rdes(&pi, &rho, &p), WeakComposition::from_positive(&[2, 0, 1]));
        assert_eq!(rdes(&perm("321"), &rho, &p), "1,1|1".parse().unwrap());
        assert_eq!(
            rdes(&Permutation::identity(3), &rho, &p),
            WeakComposition::from_positive(&[1, 1, 1])
        );
        let chain = Poset::from_relations(3, &[(3, 2), (2, 1)]).unwrap();
        let constant = RestrictionMap(vec![2, 2, 2]);
        assert_eq!(barrho(&perm("123"), &constant, &chain).0, vec![2, 2, 2]);
    }

    fn forked_poset() -> LabeledPoset {
        // elements labeled by ω = identity; 3 ⋖ 2 and 1 ⋖ 2
        let p = Poset::from_relations(3, &[(3, 2), (1, 2)]).unwrap();
        LabeledPoset::new(p, vec![1, 2, 3], RestrictionMap(vec![2, 3, 2])).unwrap()
    }

    #[test]
    fn forked_poset_partitions() {
        let lp = forked_poset();
        let w = Window::positive(3);
        assert_eq!(enumerate_restricted_partitions(&lp, &w).len(), 6);
        let gf = partition_gf(&lp, &w);
        let m = |e: &[u32]| WeakComposition::from_positive(e);
        let mut expected = TPolynomial::zero(w);
        for (e, c) in [
            (m(&[1, 2]), 1),
            (m(&[1, 1, 1]), 2),
            (m(&[0, 2, 1]), 1),
            (m(&[2, 0, 1]), 1),
            (m(&[2, 1]), 1),
        ] {
            expected.add_term(e, &TCoefficient::constant(c));
        }
        assert_eq!(gf, expected);
        assert_eq!(linear_extensions(&lp.poset).len(), 2);
    }

    #[test]
    fn partition_edge_cases() {
        let lp = LabeledPoset::new(Poset::antichain(1), vec![1], RestrictionMap(vec![2])).unwrap();
        assert_eq!(enumerate_restricted_partitions(&lp, &Window::positive(3)), vec![vec![1], vec![2]]);
        let nonpos = LabeledPoset::new(
            Poset::antichain(2),
            vec![1, 2],
            RestrictionMap(vec![0, 3]),
        )
        .unwrap();
        assert!(partition_gf(&nonpos, &Window::positive(3)).is_zero());
    }

    #[test]
    fn linear_extension_counts() {
        assert_eq!(linear_extensions(&Poset::antichain(3)).len(), 6);
        assert_eq!(linear_extensions(&Poset::linear_order(&perm("231"))).len(), 1);
    }

    #[test]
    fn dot_output_mentions_labels_and_bounds() {
        let dot = forked_poset().to_dot();
        assert!(dot.contains("label=\"2\", xlabel=\"≤3\""));
        assert!(dot.contains("3 -> 2"));
    }
}
