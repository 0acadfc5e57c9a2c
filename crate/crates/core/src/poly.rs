//! Exact integer polynomials in `q` and Laurent polynomials in `v` (`v² = q`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A polynomial in `q` with integer coefficients, stored in ascending powers.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: String,
    coeffs: Vec<i64>,
}

impl TryFrom<PolyRepr> for IntPolynomial {
    type Error = String;

    fn try_from(r: PolyRepr) -> Result<Self, String> {
        if r.var != "q" {
            return Err(format!("expected var \"q\", found {:?}", r.var));
        }
        Ok(IntPolynomial::from_coeffs(r.coeffs))
    }
}

impl From<IntPolynomial> for PolyRepr {
    fn from(p: IntPolynomial) -> Self {
        PolyRepr { var: "q".into(), coeffs: p.coeffs }
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        IntPolynomial { coeffs: vec![0, 1] }
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        IntPolynomial { coeffs: vec![-1, 1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn coeff(&self, power: usize) -> i64 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division by `q - 1`, if it divides.
    fn div_q_minus_one(&self) -> Option<Self> {
        // synthetic division at q = 1, from the top
        let d = self.degree()?;
        let mut quot = vec![0; d];
        let mut carry = 0;
        for i in (1..=d).rev() {
            carry += self.coeffs[i];
            quot[i - 1] = carry;
        }
        if carry + self.coeffs[0] != 0 {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Splits off the largest factor `q^a (q-1)^b`, returning `(a, b, rest)`.
    pub fn split_q_factors(&self) -> (usize, usize, IntPolynomial) {
        if self.is_zero() {
            return (0, 0, Self::zero());
        }
        let a = self.coeffs.iter().take_while(|&&c| c == 0).count();
        let mut rest = IntPolynomial { coeffs: self.coeffs[a..].to_vec() };
        let mut b = 0;
        while rest.degree().unwrap_or(0) > 0 {
            match rest.div_q_minus_one() {
                Some(r) => {
                    rest = r;
                    b += 1;
                }
                None => break,
            }
        }
        (a, b, rest)
    }

    /// Renders the polynomial as a product like `q(q-1)` or `(q-1)^2` when it
    /// factors completely over `q` and `q - 1`; otherwise falls back to the
    /// expanded form.
    pub fn display_factored(&self) -> String {
        let (a, b, rest) = self.split_q_factors();
        if rest.degree() != Some(0) || (a == 0 && b == 0) {
            return self.to_string();
        }
        let mut out = String::new();
        match rest.constant_term() {
            1 => {}
            -1 => out.push('-'),
            c => out.push_str(&c.to_string()),
        }
        match a {
            0 => {}
            1 => out.push('q'),
            _ => out.push_str(&format!("q^{a}")),
        }
        match b {
            0 => {}
            1 => out.push_str("(q-1)"),
            _ => out.push_str(&format!("(q-1)^{b}")),
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers, e.g. `q^2 - 2q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if mag != 1 || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(IntPolynomial, Add add, Sub sub, Mul mul);

/// A Laurent polynomial in `v` with integer coefficients, where `v² = q`.
///
/// `coeffs[i]` is the coefficient of `v^(min_exp + i)`. Canonical form has no
/// zero at either end of `coeffs`; the zero polynomial has `min_exp = 0` and
/// no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LaurentRepr", into = "LaurentRepr")]
pub struct LaurentPolynomial {
    min_exp: i64,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    var: String,
    min_exp: i64,
    coeffs: Vec<i64>,
}

impl TryFrom<LaurentRepr> for LaurentPolynomial {
    type Error = String;

    fn try_from(r: LaurentRepr) -> Result<Self, String> {
        if r.var != "v" {
            return Err(format!("expected var \"v\", found {:?}", r.var));
        }
        Ok(LaurentPolynomial::new(r.min_exp, r.coeffs))
    }
}

impl From<LaurentPolynomial> for LaurentRepr {
    fn from(p: LaurentPolynomial) -> Self {
        LaurentRepr { var: "v".into(), min_exp: p.min_exp, coeffs: p.coeffs }
    }
}

impl LaurentPolynomial {
    pub fn new(min_exp: i64, mut coeffs: Vec<i64>) -> Self {
        trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPolynomial { min_exp: min_exp + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPolynomial { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(0, vec![c])
    }

    /// `c · v^exp`.
    pub fn monomial(exp: i64, c: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(2 * k, 1)
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `v^exp`.
    pub fn coeff(&self, exp: i64) -> i64 {
        let i = exp - self.min_exp;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    /// The ring involution `v ↦ v⁻¹` (so `q ↦ q⁻¹`), fixing integers.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(max) => {
                let coeffs = self.coeffs.iter().rev().copied().collect();
                LaurentPolynomial { min_exp: -max, coeffs }
            }
        }
    }

    /// Returns the polynomial in `q` if every exponent of `v` is even and
    /// nonnegative.
    pub fn to_int_poly(&self) -> Option<IntPolynomial> {
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.min_exp < 0 {
            return None;
        }
        let max = self.max_exp().unwrap();
        let mut out = vec![0; (max / 2 + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + i as i64;
            if c != 0 {
                if e % 2 != 0 {
                    return None;
                }
                out[(e / 2) as usize] = c;
            }
        }
        Some(IntPolynomial::from_coeffs(out))
    }
}

impl From<&IntPolynomial> for LaurentPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        let mut coeffs = Vec::with_capacity(2 * p.coeffs.len());
        for (i, &c) in p.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.push(0);
            }
            coeffs.push(c);
        }
        LaurentPolynomial::new(0, coeffs)
    }
}

impl From<IntPolynomial> for LaurentPolynomial {
    fn from(p: IntPolynomial) -> Self {
        LaurentPolynomial::from(&p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.min_exp + i as i64;
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if mag != 1 || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPolynomial::new(lo, coeffs)
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        *self = &*self + rhs;
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.min_exp + rhs.min_exp, out)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

forward_owned!(LaurentPolynomial, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c.to_vec())
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        assert_eq!(p(&[1, 0, 0]).coeffs(), &[1]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn display_matches_expanded_form() {
        assert_eq!(p(&[0, -1, 1]).to_string(), "q^2 - q");
        assert_eq!(p(&[1, -2, 1]).to_string(), "q^2 - 2q + 1");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(p(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(p(&[0, 0, -3]).to_string(), "-3q^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn factored_display() {
        assert_eq!(p(&[0, -1, 1]).display_factored(), "q(q-1)");
        assert_eq!(p(&[1, -2, 1]).display_factored(), "(q-1)^2");
        assert_eq!(p(&[-1, 1]).display_factored(), "(q-1)");
        assert_eq!(p(&[1]).to_string(), "1");
        // q^2 + 1 does not factor over q and q - 1
        assert_eq!(p(&[1, 0, 1]).display_factored(), "q^2 + 1");
    }

    #[test]
    fn products_of_q_minus_one() {
        let qm1 = IntPolynomial::q_minus_one();
        assert_eq!(&qm1 * &qm1, p(&[1, -2, 1]));
        assert_eq!(&IntPolynomial::q() * &qm1, p(&[0, -1, 1]));
        assert_eq!(p(&[1, -2, 1]).split_q_factors(), (0, 2, IntPolynomial::one()));
    }

    #[test]
    fn bar_of_q_minus_one() {
        let l = LaurentPolynomial::from(IntPolynomial::q_minus_one());
        // q^-1 - 1
        assert_eq!(l.bar(), LaurentPolynomial::new(-2, vec![1, 0, -1]));
        assert_eq!(LaurentPolynomial::q_pow(4).bar(), LaurentPolynomial::q_pow(-4));
        assert_eq!(LaurentPolynomial::constant(7).bar(), LaurentPolynomial::constant(7));
    }

    #[test]
    fn down_conversion_rejects_odd_or_negative_exponents() {
        assert_eq!(LaurentPolynomial::monomial(1, 1).to_int_poly(), None);
        assert_eq!(LaurentPolynomial::monomial(-2, 1).to_int_poly(), None);
        assert_eq!(LaurentPolynomial::q_pow(2).to_int_poly(), Some(p(&[0, 0, 1])));
    }

    #[test]
    fn json_schemas() {
        let s = serde_json::to_string(&IntPolynomial::q_minus_one()).unwrap();
        assert_eq!(s, r#"{"var":"q","coeffs":[-1,1]}"#);
        let l = LaurentPolynomial::from(IntPolynomial::q_minus_one()).bar();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"var":"v","min_exp":-2,"coeffs":[1,0,-1]}"#);
        assert!(serde_json::from_str::<IntPolynomial>(r#"{"var":"x","coeffs":[1]}"#).is_err());
    }

    fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
        (-6i64..6, prop::collection::vec(-5i64..5, 0..6)).prop_map(|(m, c)| LaurentPolynomial::new(m, c))
    }

    proptest! {
        #[test]
        fn bar_is_an_involutive_ring_map(a in laurent(), b in laurent()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn json_round_trip(a in laurent(), c in prop::collection::vec(-9i64..9, 0..6)) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPolynomial>(&s).unwrap(), a);
            let p = IntPolynomial::from_coeffs(c);
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), p.clone());
            prop_assert_eq!(LaurentPolynomial::from(&p).to_int_poly(), Some(p));
        }
    }
}
