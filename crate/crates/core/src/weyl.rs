//! The symmetric group `S_n` as a Coxeter group on the simple reflections
//! `s_1, …, s_{n-1}`.
//!
//! Permutations are stored in one-line notation `w(1) … w(n)`. Products are
//! composition of functions: `(u·w)(j) = u(w(j))`. Consequently
//! `w·s_i` swaps the *positions* `i, i+1` of the word and `s_i·w` swaps the
//! *values* `i, i+1`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Which side a simple reflection acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Parses either the compact digit form (`3412`, `0420`) or the bracketed
/// form (`[3,4,1,2]`). Values are not validated beyond being integers.
pub(crate) fn parse_one_line(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    let err = |why: &str| Error::Parse(s.to_string(), why.to_string());
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| err("missing `]`"))?;
        if inner.trim().is_empty() {
            return Err(err("empty word"));
        }
        inner.split(',').map(|t| t.trim().parse::<u8>().map_err(|_| err("entries must be small integers"))).collect()
    } else {
        // accept the parenthesised compact form as well
        let s2 = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s2.is_empty() {
            return Err(err("empty word"));
        }
        s2.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| err("compact form is digits only"))).collect()
    }
}

pub(crate) fn format_one_line(word: &[u8]) -> String {
    if word.len() <= 9 {
        word.iter().map(|&a| char::from(b'0' + a)).collect()
    } else {
        let parts: Vec<String> = word.iter().map(u8::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

/// An element of `S_n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &a in &word {
            let a = a as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Parse(format_one_line(&word), format!("not a permutation of 1..{n}")));
            }
            seen[a] = true;
        }
        if n == 0 {
            return Err(Error::Parse(String::new(), "empty word".into()));
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u8).collect() }
    }

    /// The longest element `w₀ = (n … 2 1)`.
    pub fn longest(n: usize) -> Self {
        Permutation { word: (1..=n as u8).rev().collect() }
    }

    /// The adjacent transposition `s_i`, `1 ≤ i < n`.
    pub fn simple_reflection(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::NoSuchReflection { index: i, n });
        }
        let mut w = Self::identity(n);
        w.word.swap(i - 1, i);
        Ok(w)
    }

    /// Every element of `S_n` in lexicographic order of one-line words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation { word: cur.clone() }];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation { word: cur.clone() });
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// `w(j)` for `1 ≤ j ≤ n`.
    pub fn apply(&self, j: usize) -> usize {
        self.word[j - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (j, &a) in self.word.iter().enumerate() {
            inv[a as usize - 1] = j as u8 + 1;
        }
        Permutation { word: inv }
    }

    /// `self · other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { word: other.word.iter().map(|&j| self.word[j as usize - 1]).collect() }
    }

    /// `s_i · self`: swaps the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
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
        Permutation { word }
    }

    /// `self · s_i`: swaps the positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    pub fn mul_simple(&self, side: Side, i: usize) -> Permutation {
        match side {
            Side::Left => self.left_mul_simple(i),
            Side::Right => self.right_mul_simple(i),
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Indices `i` with `ℓ(w s_i) < ℓ(w)` (right) or `ℓ(s_i w) < ℓ(w)` (left).
    pub fn descents(&self, side: Side) -> BTreeSet<usize> {
        (1..self.n()).filter(|&i| self.has_descent(side, i)).collect()
    }

    pub fn has_descent(&self, side: Side, i: usize) -> bool {
        match side {
            Side::Right => self.word[i - 1] > self.word[i],
            // value i+1 appears before value i
            Side::Left => {
                let pos = |v: u8| self.word.iter().position(|&x| x == v).unwrap();
                pos(i as u8 + 1) < pos(i as u8)
            }
        }
    }

    /// A reduced word `[i₁, …, i_r]` with `w = s_{i₁} ⋯ s_{i_r}`, obtained by
    /// repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(self.length());
        while let Some(&i) = w.descents(Side::Left).first() {
            out.push(i);
            w = w.left_mul_simple(i);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_one_line(&self.word))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_one_line(s)?)
    }
}

/// Bruhat order on `S_n` by the tableau criterion: `u ≤ v` iff for every
/// `k`, the sorted prefix `u(1..k)` is entrywise at most the sorted prefix
/// `v(1..k)`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::RankMismatch(u.n(), v.n()));
    }
    Ok(bruhat_leq_unchecked(u, v))
}

pub(crate) fn bruhat_leq_unchecked(u: &Permutation, v: &Permutation) -> bool {
    let n = u.n();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        insert_sorted(&mut a, u.word[k]);
        insert_sorted(&mut b, v.word[k]);
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

fn insert_sorted(v: &mut Vec<u8>, x: u8) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

/// A set `I` of simple reflections of `S_n`, stored as a bitmask over
/// indices `1..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset {
    n: usize,
    mask: u64,
}

impl ParabolicSubset {
    pub fn new(n: usize, generators: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0;
        for i in generators {
            if i == 0 || i >= n {
                return Err(Error::NoSuchReflection { index: i, n });
            }
            mask |= 1 << i;
        }
        Ok(ParabolicSubset { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        ParabolicSubset { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        Self::new(n, 1..n).unwrap()
    }

    /// All `2^(n-1)` subsets.
    pub fn all(n: usize) -> Vec<ParabolicSubset> {
        let m = n.saturating_sub(1);
        (0..1u64 << m).map(|bits| ParabolicSubset { n, mask: bits << 1 }).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask & (1 << i) != 0
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(|&i| self.contains(i))
    }

    /// The subgroup `W_I`, by closure under right multiplication by the
    /// generators, in lexicographic order.
    pub fn subgroup(&self) -> Vec<Permutation> {
        let gens: Vec<usize> = self.generators().collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([Permutation::identity(self.n)]);
        seen.insert(Permutation::identity(self.n));
        while let Some(w) = queue.pop_front() {
            for &i in &gens {
                let x = w.right_mul_simple(i);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Whether `w` lies in `W_I`, i.e. preserves every block of consecutive
    /// positions joined by generators of `I`.
    pub fn contains_element(&self, w: &Permutation) -> bool {
        let mut start = 1;
        for end in 1..=self.n {
            if end == self.n || !self.contains(end) {
                if (start..=end).any(|j| !(start..=end).contains(&w.apply(j))) {
                    return false;
                }
                start = end + 1;
            }
        }
        true
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators().map(|i| format!("s{i}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The unique shortest element of the left coset `w W_I`.
pub fn min_coset_rep(w: &Permutation, parabolic: &ParabolicSubset) -> Permutation {
    let mut w = w.clone();
    while let Some(i) = parabolic.generators().find(|&i| w.has_descent(Side::Right, i)) {
        w = w.right_mul_simple(i);
    }
    w
}

/// `D_I`: the minimal-length representatives of `W / W_I`, by filtering `S_n`.
pub fn coset_minima(parabolic: &ParabolicSubset) -> Vec<Permutation> {
    Permutation::all(parabolic.n())
        .into_iter()
        .filter(|w| parabolic.generators().all(|i| !w.has_descent(Side::Right, i)))
        .collect()
}

/// The longest element of `W_I`: reverses each block of positions.
pub fn longest_element(parabolic: &ParabolicSubset) -> Permutation {
    let n = parabolic.n();
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut start = 0;
    for end in 1..=n {
        if end == n || !parabolic.contains(end) {
            word[start..end].reverse();
            start = end;
        }
    }
    Permutation { word }
}

/// Classical R-polynomial `R_{u,v}` of `S_n`.
///
/// Uses the recurrence on the smallest left descent `s` of `v`:
/// `R_{u,v} = R_{su,sv}` if `su < u`, else `(q-1) R_{u,sv} + q R_{su,sv}`.
pub fn classical_rpoly(u: &Permutation, v: &Permutation) -> Result<IntPolynomial> {
    if u.n() != v.n() {
        return Err(Error::RankMismatch(u.n(), v.n()));
    }
    let mut memo = HashMap::new();
    Ok(classical_rec(u, v, &mut memo))
}

fn classical_rec(
    u: &Permutation,
    v: &Permutation,
    memo: &mut HashMap<(Permutation, Permutation), IntPolynomial>,
) -> IntPolynomial {
    if u == v {
        return IntPolynomial::one();
    }
    if !bruhat_leq_unchecked(u, v) {
        return IntPolynomial::zero();
    }
    let key = (u.clone(), v.clone());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    // u < v forces ℓ(v) > 0, so a left descent exists
    let s = *v.descents(Side::Left).first().expect("non-identity has a left descent");
    let sv = v.left_mul_simple(s);
    let su = u.left_mul_simple(s);
    let r = if u.has_descent(Side::Left, s) {
        classical_rec(&su, &sv, memo)
    } else {
        let a = classical_rec(u, &sv, memo);
        let b = classical_rec(&su, &sv, memo);
        &(&IntPolynomial::q_minus_one() * &a) + &b.shift(1)
    };
    memo.insert(key, r.clone());
    r
}
