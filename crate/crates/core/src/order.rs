//! Bruhat-Chevalley order on `R_n`, orbit posets, intervals and their
//! Möbius function.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::renner::{orbit, standard_form, PartialPerm, RankIdempotent};
use crate::report::{Report, Timer};
use crate::weyl::{bruhat_leq_unchecked, Permutation, Side};

type ProductKey = (usize, usize, usize);

static SET_PRODUCTS: OnceLock<RwLock<HashMap<ProductKey, Arc<Vec<Permutation>>>>> = OnceLock::new();

/// The set product `W(f) · W_e` for `e = e_j`, `f = e_k`, deduplicated.
fn centralizer_stabilizer_product(n: usize, j: usize, k: usize) -> Arc<Vec<Permutation>> {
    let cache = SET_PRODUCTS.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&(n, j, k)) {
        return v.clone();
    }
    let cen = RankIdempotent::new(n, k).unwrap().parabolics().0.subgroup();
    let stab = RankIdempotent::new(n, j).unwrap().parabolics().1.subgroup();
    let set: BTreeSet<Permutation> =
        cen.iter().flat_map(|a| stab.iter().map(move |b| a.compose_unchecked(b))).collect();
    let v = Arc::new(set.into_iter().collect::<Vec<_>>());
    cache.write().unwrap().insert((n, j, k), v.clone());
    v
}

/// `θ ≤ σ` in the Bruhat-Chevalley order of `R_n`.
///
/// With `θ = u e v⁻¹` and `σ = x f y⁻¹` in standard form, `θ ≤ σ` iff
/// `e ≤ f` and `u ≤ xw`, `yw ≤ v` for some `w ∈ W(f) W_e`.
pub fn leq(theta: &PartialPerm, sigma: &PartialPerm) -> Result<bool> {
    if theta.n() != sigma.n() {
        return Err(Error::RankMismatch(theta.n(), sigma.n()));
    }
    Ok(leq_unchecked(theta, sigma))
}

pub(crate) fn leq_unchecked(theta: &PartialPerm, sigma: &PartialPerm) -> bool {
    let lo = standard_form(theta);
    let hi = standard_form(sigma);
    if lo.e.k() > hi.e.k() {
        return false;
    }
    let ws = centralizer_stabilizer_product(theta.n(), lo.e.k(), hi.e.k());
    ws.iter().any(|w| {
        bruhat_leq_unchecked(&lo.x, &hi.x.compose_unchecked(w))
            && bruhat_leq_unchecked(&hi.y.compose_unchecked(w), &lo.y)
    })
}

/// Rank-matrix dominance on partial permutation matrices, used only to
/// cross-check [`leq`]: `θ ≤ σ` iff for every `i, j` the submatrix on rows
/// `i..n` and columns `1..j` has rank in `θ` at most its rank in `σ`.
pub fn rank_dominance_leq(theta: &PartialPerm, sigma: &PartialPerm) -> Result<bool> {
    if theta.n() != sigma.n() {
        return Err(Error::RankMismatch(theta.n(), sigma.n()));
    }
    let n = theta.n();
    let r = |p: &PartialPerm, i: usize, j: usize| p.word()[..j].iter().filter(|&&a| a as usize >= i).count();
    Ok((1..=n).all(|i| (1..=n).all(|j| r(theta, i, j) <= r(sigma, i, j))))
}

/// The orbit `W e W` with its order fully materialized.
///
/// Elements are indexed in `(ℓ, one-line word)` order, so index order is a
/// linear extension of the Bruhat-Chevalley order.
#[derive(Debug)]
pub struct OrbitPoset {
    idempotent: RankIdempotent,
    elements: Vec<PartialPerm>,
    lengths: Vec<usize>,
    index: HashMap<PartialPerm, usize>,
    leq: Vec<bool>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl OrbitPoset {
    pub fn new(e: RankIdempotent) -> Self {
        let elements = orbit(&e);
        let lengths: Vec<usize> = elements.iter().map(PartialPerm::length).collect();
        let index: HashMap<PartialPerm, usize> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let size = elements.len();
        let mut leq = vec![false; size * size];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                leq[a * size + b] = leq_unchecked(pa, pb);
            }
        }
        let n = e.n();
        let table = |side: Side| -> Vec<Vec<usize>> {
            elements.iter().map(|p| (1..n).map(|s| index[&p.act_simple(side, s)]).collect()).collect()
        };
        let left = table(Side::Left);
        let right = table(Side::Right);
        OrbitPoset { idempotent: e, elements, lengths, index, leq, left, right }
    }

    pub fn idempotent(&self) -> RankIdempotent {
        self.idempotent
    }

    pub fn n(&self) -> usize {
        self.idempotent.n()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialPerm {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, p: &PartialPerm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub(crate) fn require(&self, p: &PartialPerm) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::NotInOrbit { element: p.to_string(), rank: self.idempotent.k() })
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Index of `s_i · σ` (left) or `σ · s_i` (right).
    pub fn act(&self, side: Side, a: usize, i: usize) -> usize {
        match side {
            Side::Left => self.left[a][i - 1],
            Side::Right => self.right[a][i - 1],
        }
    }

    /// The unique element of length 0.
    pub fn minimum(&self) -> usize {
        0
    }

    pub fn maximum(&self) -> usize {
        self.len() - 1
    }

    /// Indices of `[a, b]` in index order (empty when `a ≰ b`).
    pub fn interval_indices(&self, a: usize, b: usize) -> Vec<usize> {
        if !self.leq(a, b) {
            return Vec::new();
        }
        (a..=b).filter(|&c| self.leq(a, c) && self.leq(c, b)).collect()
    }

    pub fn interval(&self, theta: &PartialPerm, sigma: &PartialPerm) -> Result<IntervalPoset> {
        let a = self.require(theta)?;
        let b = self.require(sigma)?;
        if !self.leq(a, b) {
            return Err(Error::Incomparable(theta.to_string(), sigma.to_string()));
        }
        let idx = self.interval_indices(a, b);
        let elements: Vec<PartialPerm> = idx.iter().map(|&c| self.elements[c].clone()).collect();
        let lengths: Vec<usize> = idx.iter().map(|&c| self.lengths[c]).collect();
        let mut covers = Vec::new();
        for (i, &c) in idx.iter().enumerate() {
            for (j, &d) in idx.iter().enumerate() {
                if lengths[j] == lengths[i] + 1 && self.leq(c, d) {
                    covers.push((i, j));
                }
            }
        }
        Ok(IntervalPoset { elements, lengths, covers })
    }

    /// `μ(a, c)` for every `c`, by the defining recursion over index order.
    pub fn mobius_row(&self, a: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        mu[a] = 1;
        for c in a + 1..self.len() {
            if self.leq(a, c) {
                mu[c] = -(a..c).filter(|&b| self.leq(b, c)).map(|b| mu[b]).sum::<i64>();
            }
        }
        mu
    }

    /// Cover relations by generic transitive reduction, independent of `ℓ`.
    pub fn covers_by_reduction(&self) -> Vec<(usize, usize)> {
        let size = self.len();
        let mut out = Vec::new();
        for a in 0..size {
            for b in a + 1..size {
                if self.lt(a, b) && !(a + 1..b).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let covers: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.lengths[b] == self.lengths[a] + 1 && self.leq(a, b))
            .collect();
        write_dot(&self.elements, &self.lengths, &covers)
    }
}

/// A closed interval `[θ, σ]` inside one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalPoset {
    /// Sorted by `(ℓ, one-line word)`; the first is the bottom, the last the top.
    pub elements: Vec<PartialPerm>,
    pub lengths: Vec<usize>,
    /// Pairs of positions in `elements`, lower element first.
    pub covers: Vec<(usize, usize)>,
}

impl IntervalPoset {
    pub fn bottom(&self) -> &PartialPerm {
        &self.elements[0]
    }

    pub fn top(&self) -> &PartialPerm {
        self.elements.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `ℓ(top) - ℓ(bottom)`.
    pub fn length(&self) -> usize {
        self.lengths.last().unwrap() - self.lengths[0]
    }

    /// Totally ordered.
    pub fn is_chain(&self) -> bool {
        self.len() == self.length() + 1
    }

    fn below(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        // reachability along covers; positions are sorted by length
        let mut reach = vec![false; self.len()];
        reach[a] = true;
        for &(c, d) in &self.covers {
            if reach[c] {
                reach[d] = true;
            }
        }
        reach[b]
    }

    /// `μ(bottom, top)`.
    pub fn mobius(&self) -> i64 {
        let mut mu = vec![0i64; self.len()];
        mu[0] = 1;
        for c in 1..self.len() {
            mu[c] = -(0..c).filter(|&b| self.below(b, c)).map(|b| mu[b]).sum::<i64>();
        }
        *mu.last().unwrap()
    }

    pub fn to_dot(&self) -> String {
        write_dot(&self.elements, &self.lengths, &self.covers)
    }
}

fn write_dot(elements: &[PartialPerm], lengths: &[usize], covers: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph hasse {\n");
    for (p, l) in elements.iter().zip(lengths) {
        writeln!(out, "  \"{p}\" [label=\"{p}\", len={l}];").unwrap();
    }
    let mut covers = covers.to_vec();
    covers.sort();
    for (a, b) in covers {
        writeln!(out, "  \"{}\" -> \"{}\";", elements[a], elements[b]).unwrap();
    }
    out.push_str("}\n");
    out
}

fn same_orbit(theta: &PartialPerm, sigma: &PartialPerm) -> Result<RankIdempotent> {
    if theta.n() != sigma.n() {
        return Err(Error::RankMismatch(theta.n(), sigma.n()));
    }
    if theta.rank() != sigma.rank() {
        return Err(Error::DifferentOrbits(theta.to_string(), sigma.to_string()));
    }
    RankIdempotent::new(theta.n(), theta.rank())
}

/// The interval `[θ, σ]` of a single orbit, with covers read off from
/// length gaps of one.
pub fn interval(theta: &PartialPerm, sigma: &PartialPerm) -> Result<IntervalPoset> {
    let e = same_orbit(theta, sigma)?;
    if !leq_unchecked(theta, sigma) {
        return Err(Error::Incomparable(theta.to_string(), sigma.to_string()));
    }
    let (lo, hi) = (theta.length(), sigma.length());
    let members: Vec<(usize, PartialPerm)> = orbit(&e)
        .into_iter()
        .map(|p| (p.length(), p))
        .filter(|(l, p)| (lo..=hi).contains(l) && leq_unchecked(theta, p) && leq_unchecked(p, sigma))
        .collect();
    let lengths: Vec<usize> = members.iter().map(|(l, _)| *l).collect();
    let elements: Vec<PartialPerm> = members.into_iter().map(|(_, p)| p).collect();
    let mut covers = Vec::new();
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            if lengths[j] == lengths[i] + 1 && leq_unchecked(&elements[i], &elements[j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(IntervalPoset { elements, lengths, covers })
}

/// Möbius function of the orbit poset; `0` when `θ ≰ σ`.
pub fn mobius_direct(theta: &PartialPerm, sigma: &PartialPerm) -> Result<i64> {
    same_orbit(theta, sigma)?;
    if !leq_unchecked(theta, sigma) {
        return Ok(0);
    }
    Ok(interval(theta, sigma)?.mobius())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GradedViolation {
    /// A cover relation whose lengths do not differ by one.
    Cover { lower: PartialPerm, upper: PartialPerm, gap: i64 },
    /// `ℓ` disagrees with the height above the minimum.
    Height { element: PartialPerm, length: usize, height: usize },
    /// The orbit does not have exactly one minimum of length 0.
    Minimum { found: Vec<PartialPerm> },
    /// The orbit does not have exactly one maximal element.
    Maximum { found: Vec<PartialPerm> },
}

/// Checks that `ℓ` is the rank function of the orbit poset: every cover
/// (by transitive reduction) raises `ℓ` by exactly one, and `ℓ` equals the
/// height above the unique minimum.
pub fn check_graded(poset: &OrbitPoset) -> Report<GradedViolation> {
    let timer = Timer::start();
    let size = poset.len();
    let mut violations = Vec::new();
    let covers = poset.covers_by_reduction();
    for &(a, b) in &covers {
        let gap = poset.length(b) as i64 - poset.length(a) as i64;
        if gap != 1 {
            violations.push(GradedViolation::Cover {
                lower: poset.element(a).clone(),
                upper: poset.element(b).clone(),
                gap,
            });
        }
    }
    let minima: Vec<usize> = (0..size).filter(|&b| !(0..size).any(|a| poset.lt(a, b))).collect();
    let maxima: Vec<usize> = (0..size).filter(|&a| !(0..size).any(|b| poset.lt(a, b))).collect();
    if minima.len() != 1 || poset.length(minima[0]) != 0 {
        violations.push(GradedViolation::Minimum { found: minima.iter().map(|&i| poset.element(i).clone()).collect() });
    }
    if maxima.len() != 1 {
        violations.push(GradedViolation::Maximum { found: maxima.iter().map(|&i| poset.element(i).clone()).collect() });
    }
    // longest chain from the bottom, along covers in index order
    let mut height = vec![0usize; size];
    for &(a, b) in &covers {
        height[b] = height[b].max(height[a] + 1);
    }
    for (i, &h) in height.iter().enumerate() {
        if h != poset.length(i) {
            violations.push(GradedViolation::Height {
                element: poset.element(i).clone(),
                length: poset.length(i),
                height: h,
            });
        }
    }
    timer.finish(size + covers.len(), violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renner::cross_section_lattice;

    fn pp(s: &str) -> PartialPerm {
        s.parse().unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&pp("0420"), &pp("0420")).unwrap());
        assert!(leq(&pp("0001"), &pp("0003")).unwrap());
        assert!(leq(&pp("01"), &pp("20")).unwrap());
        assert!(!leq(&pp("10"), &pp("02")).unwrap());
        assert!(!leq(&pp("02"), &pp("10")).unwrap());
        assert!(leq(&pp("01"), &pp("010")).is_err());
    }

    #[test]
    fn rank_dominance_matches_criterion_on_r3_and_r4() {
        for n in 1..=4 {
            let all = PartialPerm::all(n);
            for a in &all {
                for b in &all {
                    assert_eq!(leq_unchecked(a, b), rank_dominance_leq(a, b).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn leq_is_a_partial_order() {
        let all = PartialPerm::all(3);
        for a in &all {
            assert!(leq_unchecked(a, a));
            for b in &all {
                if a != b && leq_unchecked(a, b) {
                    assert!(!leq_unchecked(b, a));
                }
                for c in &all {
                    if leq_unchecked(a, b) && leq_unchecked(b, c) {
                        assert!(leq_unchecked(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_order_is_partial_order_and_length_monotone() {
        for idem in cross_section_lattice(4) {
            let p = OrbitPoset::new(idem);
            for a in 0..p.len() {
                assert!(p.leq(a, a));
                for b in 0..p.len() {
                    if p.lt(a, b) {
                        assert!(!p.leq(b, a));
                        assert!(p.length(a) < p.length(b));
                        for c in 0..p.len() {
                            if p.leq(b, c) {
                                assert!(p.leq(a, c));
                            }
                        }
                    }
                }
            }
            assert!((0..p.len()).all(|b| p.leq(p.minimum(), b) && p.leq(b, p.maximum())));
        }
    }

    #[test]
    fn restricted_to_permutations_is_classical_bruhat() {
        let p = OrbitPoset::new(RankIdempotent::new(4, 4).unwrap());
        for a in 0..p.len() {
            for b in 0..p.len() {
                let (u, v) = (p.element(a).as_permutation().unwrap(), p.element(b).as_permutation().unwrap());
                assert_eq!(p.leq(a, b), bruhat_leq_unchecked(&u, &v));
            }
        }
    }

    #[test]
    fn interval_examples() {
        let lin = interval(&pp("0001"), &pp("0003")).unwrap();
        assert_eq!(lin.len(), 3);
        assert!(lin.is_chain());
        assert_eq!(lin.covers.len(), 2);
        let dia = interval(&pp("0012"), &pp("0023")).unwrap();
        assert_eq!(dia.len(), 4);
        assert_eq!(dia.covers.len(), 4);
        assert!(!dia.is_chain());
        let pt = interval(&pp("0420"), &pp("0420")).unwrap();
        assert_eq!((pt.len(), pt.covers.len()), (1, 0));
        assert!(matches!(interval(&pp("10"), &pp("02")), Err(Error::Incomparable(..))));
        assert!(matches!(interval(&pp("10"), &pp("12")), Err(Error::DifferentOrbits(..))));
    }

    #[test]
    fn orbit_interval_matches_free_interval() {
        let p = OrbitPoset::new(RankIdempotent::new(3, 2).unwrap());
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.leq(a, b) {
                    let i1 = p.interval(p.element(a), p.element(b)).unwrap();
                    let i2 = interval(p.element(a), p.element(b)).unwrap();
                    assert_eq!(i1, i2);
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_direct(&pp("0420"), &pp("0420")).unwrap(), 1);
        assert_eq!(mobius_direct(&pp("0001"), &pp("0003")).unwrap(), 0);
        assert_eq!(mobius_direct(&pp("0012"), &pp("0023")).unwrap(), 1);
        assert_eq!(mobius_direct(&pp("10"), &pp("02")).unwrap(), 0);
    }

    #[test]
    fn mobius_rows_match_interval_mobius() {
        for idem in cross_section_lattice(3) {
            let p = OrbitPoset::new(idem);
            for a in 0..p.len() {
                let row = p.mobius_row(a);
                for (b, &mu) in row.iter().enumerate() {
                    let direct = mobius_direct(p.element(a), p.element(b)).unwrap();
                    assert_eq!(mu, direct);
                }
            }
        }
    }

    #[test]
    fn length_covers_agree_with_transitive_reduction() {
        for n in 1..=3 {
            for idem in cross_section_lattice(n) {
                let p = OrbitPoset::new(idem);
                let mut by_len: Vec<(usize, usize)> = (0..p.len())
                    .flat_map(|a| (0..p.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| p.length(b) == p.length(a) + 1 && p.leq(a, b))
                    .collect();
                by_len.sort();
                assert_eq!(by_len, p.covers_by_reduction());
            }
        }
    }

    #[test]
    fn orbits_are_graded_by_length() {
        for n in 1..=4 {
            for idem in cross_section_lattice(n) {
                let r = check_graded(&OrbitPoset::new(idem));
                assert!(r.passed(), "n={n} k={}: {:?}", idem.k(), r.violations);
            }
        }
    }

    #[test]
    fn dot_export() {
        let dot = interval(&pp("0001"), &pp("0003")).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("\"0001\" [label=\"0001\", len=0];"));
        let dot = interval(&pp("0012"), &pp("0023")).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("label=").count(), 4);
    }
}
