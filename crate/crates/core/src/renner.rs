//! The rook monoid `R_n`: `n × n` partial permutation matrices.
//!
//! An element is written in one-line notation `a₁ … a_n` where `a_j = i` if
//! the 1 in column `j` sits in row `i`, and `a_j = 0` for an empty column.
//! Read as a partial map column → row, the product applies the right factor
//! first: `(f·g)(j) = f(g(j))`. With this convention
//! `(1324)·(1200)·(3412) = (0013)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{format_one_line, longest_element, parse_one_line, ParabolicSubset, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartialPermRepr", into = "PartialPermRepr")]
pub struct PartialPerm {
    word: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct PartialPermRepr {
    n: usize,
    one_line: Vec<u8>,
}

impl TryFrom<PartialPermRepr> for PartialPerm {
    type Error = Error;

    fn try_from(r: PartialPermRepr) -> Result<Self> {
        if r.n != r.one_line.len() {
            return Err(Error::RankMismatch(r.n, r.one_line.len()));
        }
        PartialPerm::new(r.one_line)
    }
}

impl From<PartialPerm> for PartialPermRepr {
    fn from(p: PartialPerm) -> Self {
        PartialPermRepr { n: p.n(), one_line: p.word }
    }
}

impl PartialPerm {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Parse(String::new(), "empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &a in &word {
            let a = a as usize;
            if a > n || (a != 0 && seen[a]) {
                return Err(Error::Parse(
                    format_one_line(&word),
                    format!("entries must be distinct values in 1..{n} or 0"),
                ));
            }
            seen[a] = true;
        }
        Ok(PartialPerm { word })
    }

    pub fn identity(n: usize) -> Self {
        PartialPerm { word: (1..=n as u8).collect() }
    }

    pub fn zero(n: usize) -> Self {
        PartialPerm { word: vec![0; n] }
    }

    /// Every element of `R_n`, sorted by one-line word.
    pub fn all(n: usize) -> Vec<PartialPerm> {
        let mut out = Vec::new();
        let mut word = vec![0u8; n];
        let mut used = vec![false; n + 1];
        fn rec(j: usize, word: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<PartialPerm>) {
            let n = word.len();
            if j == n {
                out.push(PartialPerm { word: word.clone() });
                return;
            }
            for a in 0..=n {
                if a != 0 && used[a] {
                    continue;
                }
                word[j] = a as u8;
                used[a] = a != 0;
                rec(j + 1, word, used, out);
                used[a] = false;
            }
        }
        rec(0, &mut word, &mut used, &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Number of nonzero entries.
    pub fn rank(&self) -> usize {
        self.word.iter().filter(|&&a| a != 0).count()
    }

    pub fn as_permutation(&self) -> Option<Permutation> {
        Permutation::new(self.word.clone()).ok()
    }

    pub fn multiply(&self, other: &PartialPerm) -> Result<PartialPerm> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(self.compose(other))
    }

    pub(crate) fn compose(&self, other: &PartialPerm) -> PartialPerm {
        let word = other.word.iter().map(|&j| if j == 0 { 0 } else { self.word[j as usize - 1] }).collect();
        PartialPerm { word }
    }

    /// `w · self`: relabels the rows.
    pub fn left_act(&self, w: &Permutation) -> PartialPerm {
        let word = self.word.iter().map(|&a| if a == 0 { 0 } else { w.apply(a as usize) as u8 }).collect();
        PartialPerm { word }
    }

    /// `self · w`: permutes the columns.
    pub fn right_act(&self, w: &Permutation) -> PartialPerm {
        PartialPerm { word: w.word().iter().map(|&j| self.word[j as usize - 1]).collect() }
    }

    /// `s_i · self` swaps the row labels `i, i+1`.
    pub fn left_simple(&self, i: usize) -> PartialPerm {
        let (a, b) = (i as u8, i as u8 + 1);
        let word = self
            .word
            .iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect();
        PartialPerm { word }
    }

    /// `self · s_i` swaps the columns `i, i+1`.
    pub fn right_simple(&self, i: usize) -> PartialPerm {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        PartialPerm { word }
    }

    pub fn act_simple(&self, side: crate::weyl::Side, i: usize) -> PartialPerm {
        match side {
            crate::weyl::Side::Left => self.left_simple(i),
            crate::weyl::Side::Right => self.right_simple(i),
        }
    }

    /// The Weyl-group length `ℓ(x) + ℓ(e) - ℓ(y)` of the standard form.
    pub fn length(&self) -> usize {
        standard_form(self).length()
    }
}

impl From<&Permutation> for PartialPerm {
    fn from(w: &Permutation) -> Self {
        PartialPerm { word: w.word().to_vec() }
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_one_line(&self.word))
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for PartialPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartialPerm::new(parse_one_line(s)?)
    }
}

/// The rank-`k` idempotent `e_k = (1 2 … k 0 … 0)` of the cross-section
/// lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankIdempotent {
    n: usize,
    k: usize,
}

impl RankIdempotent {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k > n || n == 0 {
            return Err(Error::RankMismatch(k, n));
        }
        Ok(RankIdempotent { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_partial_perm(&self) -> PartialPerm {
        let word = (1..=self.n).map(|j| if j <= self.k { j as u8 } else { 0 }).collect();
        PartialPerm { word }
    }

    /// Generators of `W(e)` (centralizer) and `W_e` (left stabilizer).
    pub fn parabolics(&self) -> (ParabolicSubset, ParabolicSubset) {
        let centralizer = ParabolicSubset::new(self.n, (1..self.n).filter(|&i| i != self.k)).unwrap();
        let stabilizer = ParabolicSubset::new(self.n, self.k + 1..self.n).unwrap();
        (centralizer, stabilizer)
    }

    /// `ℓ(e) = ℓ(w₀) - ℓ(v₀)` with `v₀` the longest element of `W(e)`.
    pub fn length(&self) -> usize {
        let w0 = Permutation::longest(self.n).length();
        let v0 = longest_element(&self.parabolics().0).length();
        w0 - v0
    }
}

impl fmt::Display for RankIdempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_partial_perm())
    }
}

/// `e₀ < e₁ < … < e_n`.
pub fn cross_section_lattice(n: usize) -> Vec<RankIdempotent> {
    (0..=n).map(|k| RankIdempotent { n, k }).collect()
}

/// `e ≤ f` iff `ef = e = fe`.
pub fn idempotent_leq(e: &RankIdempotent, f: &RankIdempotent) -> Result<bool> {
    if e.n != f.n {
        return Err(Error::RankMismatch(e.n, f.n));
    }
    let (pe, pf) = (e.as_partial_perm(), f.as_partial_perm());
    Ok(pe.compose(&pf) == pe && pf.compose(&pe) == pe)
}

/// `W(e) = {x : xe = ex}` and `W_e = {x : xe = e}`, found by filtering all of
/// `S_n` and reading off the simple reflections they contain.
///
/// The returned subsets generate exactly the filtered subgroups; the
/// closed-form [`RankIdempotent::parabolics`] is checked against this.
pub fn parabolics_of(e: &RankIdempotent) -> (ParabolicSubset, ParabolicSubset) {
    let pe = e.as_partial_perm();
    let n = e.n;
    let reflections: Vec<(usize, Permutation)> =
        (1..n).map(|i| (i, Permutation::simple_reflection(n, i).unwrap())).collect();
    let centralizes = |x: &Permutation| pe.left_act(x) == pe.right_act(x);
    let stabilizes = |x: &Permutation| pe.left_act(x) == pe;
    let cen = reflections.iter().filter(|(_, s)| centralizes(s)).map(|(i, _)| *i);
    let stab = reflections.iter().filter(|(_, s)| stabilizes(s)).map(|(i, _)| *i);
    (ParabolicSubset::new(n, cen).unwrap(), ParabolicSubset::new(n, stab).unwrap())
}

/// The unique factorization `σ = x e y⁻¹` with `x ∈ D_e`, `y ∈ D(e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardForm {
    pub x: Permutation,
    pub e: RankIdempotent,
    pub y: Permutation,
}

impl StandardForm {
    pub fn assemble(&self) -> PartialPerm {
        self.e.as_partial_perm().right_act(&self.y.inverse()).left_act(&self.x)
    }

    pub fn length(&self) -> usize {
        self.x.length() + self.e.length() - self.y.length()
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})e({})", self.x, self.y.inverse())
    }
}

/// Computes the standard form directly: `y` lists the nonzero columns then
/// the empty ones (each increasing), `x` lists the values in that column
/// order followed by the unused rows in increasing order.
pub fn standard_form(sigma: &PartialPerm) -> StandardForm {
    let n = sigma.n();
    let k = sigma.rank();
    let word = sigma.word();
    let filled: Vec<u8> = (1..=n as u8).filter(|&j| word[j as usize - 1] != 0).collect();
    let empty = (1..=n as u8).filter(|&j| word[j as usize - 1] == 0);
    let y: Vec<u8> = filled.iter().copied().chain(empty).collect();
    let used: BTreeSet<u8> = word.iter().copied().filter(|&a| a != 0).collect();
    let x: Vec<u8> =
        filled.iter().map(|&j| word[j as usize - 1]).chain((1..=n as u8).filter(|a| !used.contains(a))).collect();
    StandardForm {
        x: Permutation::from_word_unchecked(x),
        e: RankIdempotent { n, k },
        y: Permutation::from_word_unchecked(y),
    }
}

/// The orbit `W e W`, enumerated through standard forms `D_e × D(e)` and
/// sorted by `(ℓ, one-line word)`.
pub fn orbit(e: &RankIdempotent) -> Vec<PartialPerm> {
    let (cen, stab) = e.parabolics();
    let xs = crate::weyl::coset_minima(&stab);
    let ys = crate::weyl::coset_minima(&cen);
    let mut out: Vec<(usize, PartialPerm)> = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let f = StandardForm { x: x.clone(), e: *e, y: y.clone() };
            out.push((f.length(), f.assemble()));
        }
    }
    out.sort();
    out.into_iter().map(|(_, p)| p).collect()
}
