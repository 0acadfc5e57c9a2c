//! The generic Hecke algebra of `R_n` restricted to one orbit `W e W` plus
//! the Hecke algebra of `W`, with its bar involution.
//!
//! Basis elements `A_σ` multiply by
//!
//! ```text
//! A_s A_σ = A_σ                          if ℓ(sσ) = ℓ(σ)
//!         = A_{sσ}                       if ℓ(sσ) = ℓ(σ) + 1
//!         = q⁻¹ A_{sσ} + (1 - q⁻¹) A_σ   if ℓ(sσ) = ℓ(σ) - 1
//! ```
//!
//! and symmetrically on the right. Products falling into an orbit of lower
//! rank than `e` are dropped, which realizes the quotient by the ideal of
//! lower orbits without ever storing it.
//!
//! The bar involution on the orbit part follows the expansion
//! `Ā_σ = q^{-ℓ(t)} Ā_x Σ_{z ∈ W(e), y ∈ D(e)} R̄_{tz,y} A_{z e y⁻¹}`
//! for `σ = x e t⁻¹` in standard form, with `R` the classical R-polynomials
//! of `S_n`.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, LaurentPolynomial};
use crate::renner::{standard_form, PartialPerm, RankIdempotent};
use crate::weyl::{classical_rpoly, coset_minima, Permutation, Side};

/// A finite combination `Σ c_σ A_σ` with Laurent coefficients, keyed by
/// elements of `W e W ∪ W`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    floor: usize,
    terms: BTreeMap<PartialPerm, LaurentPolynomial>,
}

impl HeckeElement {
    /// The zero element of the augmented algebra for `e`.
    pub fn zero(e: &RankIdempotent) -> Self {
        HeckeElement { n: e.n(), floor: e.k(), terms: BTreeMap::new() }
    }

    /// `A_σ` for `σ ∈ W e W ∪ W`.
    pub fn basis(e: &RankIdempotent, sigma: &PartialPerm) -> Result<Self> {
        let mut h = Self::zero(e);
        if sigma.n() != e.n() {
            return Err(Error::RankMismatch(sigma.n(), e.n()));
        }
        if sigma.rank() != e.k() && sigma.rank() != e.n() {
            return Err(Error::NotInOrbit { element: sigma.to_string(), rank: e.k() });
        }
        h.terms.insert(sigma.clone(), LaurentPolynomial::one());
        Ok(h)
    }

    /// `A_w` for `w ∈ W`.
    pub fn weyl(e: &RankIdempotent, w: &Permutation) -> Self {
        Self::basis(e, &PartialPerm::from(w)).expect("permutations always lie in the augmented algebra")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<PartialPerm, LaurentPolynomial> {
        &self.terms
    }

    pub fn coeff(&self, sigma: &PartialPerm) -> LaurentPolynomial {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, sigma: PartialPerm, c: &LaurentPolynomial) {
        if sigma.rank() < self.floor || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(sigma).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&LaurentPolynomial::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> HeckeElement {
        let mut out = HeckeElement { n: self.n, floor: self.floor, terms: BTreeMap::new() };
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    fn with_terms(&self, terms: BTreeMap<PartialPerm, LaurentPolynomial>) -> HeckeElement {
        HeckeElement { n: self.n, floor: self.floor, terms }
    }

    /// Terms sorted by `(ℓ, one-line word)`.
    pub fn sorted_terms(&self) -> Vec<(&PartialPerm, &LaurentPolynomial)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (k.length(), k, c)).collect();
        v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        v.into_iter().map(|(_, k, c)| (k, c)).collect()
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    element: &'a PartialPerm,
    laurent: &'a LaurentPolynomial,
}

impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (element, laurent) in terms {
            seq.serialize_element(&TermRepr { element, laurent })?;
        }
        seq.end()
    }
}

fn q_inv() -> LaurentPolynomial {
    LaurentPolynomial::q_pow(-1)
}

fn one_minus_q_inv() -> LaurentPolynomial {
    &LaurentPolynomial::one() - &q_inv()
}

fn mult_simple(side: Side, s: usize, h: &HeckeElement) -> HeckeElement {
    let mut out = h.with_terms(BTreeMap::new());
    for (sigma, c) in &h.terms {
        let moved = sigma.act_simple(side, s);
        let (l0, l1) = (sigma.length(), moved.length());
        if l1 == l0 {
            out.add_term(sigma.clone(), c);
        } else if l1 == l0 + 1 {
            out.add_term(moved, c);
        } else {
            out.add_term(moved, &(c * &q_inv()));
            out.add_term(sigma.clone(), &(c * &one_minus_q_inv()));
        }
    }
    out
}

/// `A_s · h`.
pub fn mult_as_left(s: usize, h: &HeckeElement) -> HeckeElement {
    mult_simple(Side::Left, s, h)
}

/// `h · A_s`.
pub fn mult_as_right(h: &HeckeElement, s: usize) -> HeckeElement {
    mult_simple(Side::Right, s, h)
}

/// `A_ν · h` for `ℓ(ν) = 0`, where `A_ν A_σ = A_{νσ}`.
pub fn mult_nu_left(nu: &PartialPerm, h: &HeckeElement) -> Result<HeckeElement> {
    if nu.length() != 0 {
        return Err(Error::Invariant(format!("{nu} has positive length")));
    }
    let mut out = h.with_terms(BTreeMap::new());
    for (sigma, c) in &h.terms {
        out.add_term(nu.multiply(sigma)?, c);
    }
    Ok(out)
}

/// `A_w · h`, through a reduced word of `w`.
pub fn mult_weyl_left(w: &Permutation, h: &HeckeElement) -> HeckeElement {
    w.reduced_word().iter().rev().fold(h.clone(), |acc, &s| mult_as_left(s, &acc))
}

/// `a · h` for `a` supported on `W`.
pub fn mul_weyl_element(a: &HeckeElement, h: &HeckeElement) -> Result<HeckeElement> {
    let mut out = h.with_terms(BTreeMap::new());
    for (key, c) in &a.terms {
        let w = key.as_permutation().ok_or_else(|| Error::Invariant(format!("{key} is not in the Weyl group")))?;
        out = out.add(&mult_weyl_left(&w, h).scale(c));
    }
    Ok(out)
}

/// `Ā_s · h = A_s⁻¹ · h`, where the quadratic relation
/// `A_s² = q⁻¹ + (1 - q⁻¹) A_s` gives `A_s⁻¹ = q A_s - (q - 1)`.
fn mult_bar_as_left(s: usize, h: &HeckeElement) -> HeckeElement {
    let q = LaurentPolynomial::q_pow(1);
    let q_minus_one = &q - &LaurentPolynomial::one();
    mult_as_left(s, h).scale(&q).sub(&h.scale(&q_minus_one))
}

fn bar_on_w_along(e: &RankIdempotent, word: &[usize]) -> HeckeElement {
    let id = HeckeElement::weyl(e, &Permutation::identity(e.n()));
    word.iter().rev().fold(id, |acc, &s| mult_bar_as_left(s, &acc))
}

/// `Ā_w = Ā_{s₁} ⋯ Ā_{s_r}` over a reduced word of `w`, in the augmented
/// algebra of `e`.
pub fn bar_on_w_in(e: &RankIdempotent, w: &Permutation) -> HeckeElement {
    bar_on_w_along(e, &w.reduced_word())
}

/// `Ā_w` in the Hecke algebra of `W` alone.
pub fn bar_on_w(w: &Permutation) -> HeckeElement {
    let e = RankIdempotent::new(w.n(), w.n()).unwrap();
    bar_on_w_in(&e, w)
}

fn barred_classical(u: &Permutation, v: &Permutation) -> LaurentPolynomial {
    LaurentPolynomial::from(classical_rpoly(u, v).unwrap()).bar()
}

/// `Σ_{z ∈ W(e), y ∈ D(e)} R̄_{tz,y} A_{z e y⁻¹}`.
fn orbit_sum(e: &RankIdempotent, t: &Permutation) -> HeckeElement {
    let (cen, _) = e.parabolics();
    let pe = e.as_partial_perm();
    let mut out = HeckeElement::zero(e);
    let zs = cen.subgroup();
    for y in coset_minima(&cen) {
        let ey = pe.right_act(&y.inverse());
        for z in &zs {
            let c = barred_classical(&t.compose_unchecked(z), &y);
            out.add_term(ey.left_act(z), &c);
        }
    }
    out
}

/// `Ā_e`.
pub fn bar_ae(e: &RankIdempotent) -> HeckeElement {
    orbit_sum(e, &Permutation::identity(e.n()))
}

/// `Ā_σ` for `σ ∈ W e W`.
pub fn bar_asigma(sigma: &PartialPerm) -> Result<HeckeElement> {
    let form = standard_form(sigma);
    let e = form.e;
    // σ = x e t⁻¹
    let (x, t) = (&form.x, &form.y);
    let inner = orbit_sum(&e, t);
    let lead = bar_on_w_in(&e, x);
    let prefactor = LaurentPolynomial::q_pow(-(t.length() as i64));
    Ok(mul_weyl_element(&lead, &inner)?.scale(&prefactor))
}

/// The bar involution applied to an arbitrary element of the augmented
/// algebra: coefficients are barred and each `A_σ` replaced by `Ā_σ`.
pub fn bar(h: &HeckeElement) -> Result<HeckeElement> {
    let e = RankIdempotent::new(h.n, h.floor)?;
    let mut out = HeckeElement::zero(&e);
    for (key, c) in &h.terms {
        let image = match key.as_permutation() {
            Some(w) => bar_on_w_in(&e, &w),
            None => bar_asigma(key)?,
        };
        out = out.add(&image.scale(&c.bar()));
    }
    Ok(out)
}

/// `{θ ↦ R_{θ,σ}}` read off from `Ā_σ = q^{ℓ(σ)-ℓ(e)} Σ_θ R̄_{θ,σ} A_θ`.
/// Only nonzero entries are returned.
pub fn rpoly_via_bar(sigma: &PartialPerm) -> Result<BTreeMap<PartialPerm, IntPolynomial>> {
    let form = standard_form(sigma);
    let shift = sigma.length() as i64 - form.e.length() as i64;
    let image = bar_asigma(sigma)?;
    let unshift = LaurentPolynomial::q_pow(-shift);
    let mut out = BTreeMap::new();
    for (theta, c) in image.terms() {
        if theta.rank() != form.e.k() {
            return Err(Error::NotInOrbit { element: theta.to_string(), rank: form.e.k() });
        }
        let r_bar = c * &unshift;
        let r = r_bar
            .bar()
            .to_int_poly()
            .ok_or_else(|| Error::NonIntegral { element: theta.to_string(), coefficient: r_bar.bar().to_string() })?;
        out.insert(theta.clone(), r);
    }
    Ok(out)
}
