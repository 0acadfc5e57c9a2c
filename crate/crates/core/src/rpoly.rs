//! R-polynomials of intervals inside a single orbit `W e W`.
//!
//! `R_{θ,σ}` is computed by descent recursion. For `s` a left descent of `σ`:
//!
//! ```text
//! R_{θ,σ} = R_{sθ,sσ}                      if sθ < θ
//!         = q R_{θ,sσ}                     if sθ = θ
//!         = (q-1) R_{θ,sσ} + q R_{sθ,sσ}   if sθ > θ
//! ```
//!
//! and symmetrically on the right when `σ` has no left descent. The smallest
//! left descent is used first, then the smallest right descent. Base cases
//! are `R_{θ,θ} = 1` and `R_{θ,σ} = 0` for `θ ≰ σ`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::order::{self, OrbitPoset};
use crate::renner::{PartialPerm, RankIdempotent};
use crate::weyl::Side;

pub use crate::poly::{IntPolynomial, LaurentPolynomial};

/// `v ↦ v⁻¹`.
pub fn bar(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.bar()
}

/// Memoized R-polynomials for one orbit.
///
/// With a materialized [`OrbitPoset`] the order and actions are table
/// lookups; otherwise they are computed on demand, which keeps single
/// queries cheap for orbits too large to materialize.
#[derive(Debug)]
pub struct RPolyTable {
    idempotent: RankIdempotent,
    poset: Option<Arc<OrbitPoset>>,
    memo: RwLock<HashMap<(PartialPerm, PartialPerm), IntPolynomial>>,
}

impl RPolyTable {
    pub fn new(e: RankIdempotent) -> Self {
        RPolyTable { idempotent: e, poset: None, memo: RwLock::new(HashMap::new()) }
    }

    pub fn with_poset(poset: Arc<OrbitPoset>) -> Self {
        RPolyTable { idempotent: poset.idempotent(), poset: Some(poset), memo: RwLock::new(HashMap::new()) }
    }

    pub fn idempotent(&self) -> RankIdempotent {
        self.idempotent
    }

    pub fn poset(&self) -> Option<&Arc<OrbitPoset>> {
        self.poset.as_ref()
    }

    fn check(&self, p: &PartialPerm) -> Result<()> {
        if p.n() != self.idempotent.n() || p.rank() != self.idempotent.k() {
            return Err(Error::NotInOrbit { element: p.to_string(), rank: self.idempotent.k() });
        }
        Ok(())
    }

    fn leq(&self, a: &PartialPerm, b: &PartialPerm) -> bool {
        match &self.poset {
            Some(p) => p.leq(p.index_of(a).unwrap(), p.index_of(b).unwrap()),
            None => order::leq_unchecked(a, b),
        }
    }

    fn length(&self, a: &PartialPerm) -> usize {
        match &self.poset {
            Some(p) => p.length(p.index_of(a).unwrap()),
            None => a.length(),
        }
    }

    /// `R_{θ,σ}`.
    pub fn rpoly(&self, theta: &PartialPerm, sigma: &PartialPerm) -> Result<IntPolynomial> {
        self.check(theta)?;
        self.check(sigma)?;
        Ok(self.compute(theta, sigma))
    }

    /// `R_{θ,σ}` with the first recursion step forced to use `s` on `side`,
    /// which must be a descent of `σ` on that side.
    pub fn rpoly_via(&self, theta: &PartialPerm, sigma: &PartialPerm, side: Side, s: usize) -> Result<IntPolynomial> {
        self.check(theta)?;
        self.check(sigma)?;
        if self.length(&sigma.act_simple(side, s)) >= self.length(sigma) {
            return Err(Error::Invariant(format!("s{s} is not a {side:?} descent of {sigma}")));
        }
        if theta == sigma {
            return Ok(IntPolynomial::one());
        }
        if !self.leq(theta, sigma) {
            return Ok(IntPolynomial::zero());
        }
        Ok(self.step(theta, sigma, side, s))
    }

    /// `μ_{θ,σ} = R_{θ,σ}(0)`.
    pub fn mobius(&self, theta: &PartialPerm, sigma: &PartialPerm) -> Result<i64> {
        Ok(self.rpoly(theta, sigma)?.constant_term())
    }

    /// The descent used by the recursion: smallest left, else smallest right.
    pub fn chosen_descent(&self, sigma: &PartialPerm) -> Option<(Side, usize)> {
        let n = sigma.n();
        let l = self.length(sigma);
        [Side::Left, Side::Right]
            .into_iter()
            .find_map(|side| (1..n).find(|&s| self.length(&sigma.act_simple(side, s)) < l).map(|s| (side, s)))
    }

    fn compute(&self, theta: &PartialPerm, sigma: &PartialPerm) -> IntPolynomial {
        if theta == sigma {
            return IntPolynomial::one();
        }
        if !self.leq(theta, sigma) {
            return IntPolynomial::zero();
        }
        let key = (theta.clone(), sigma.clone());
        if let Some(r) = self.memo.read().unwrap().get(&key) {
            return r.clone();
        }
        // θ < σ, so ℓ(σ) > 0 and σ has a descent on some side
        let (side, s) = self.chosen_descent(sigma).expect("element of positive length has a descent");
        let r = self.step(theta, sigma, side, s);
        self.memo.write().unwrap().insert(key, r.clone());
        r
    }

    fn step(&self, theta: &PartialPerm, sigma: &PartialPerm, side: Side, s: usize) -> IntPolynomial {
        let s_sigma = sigma.act_simple(side, s);
        let s_theta = theta.act_simple(side, s);
        if &s_theta == theta {
            self.compute(theta, &s_sigma).shift(1)
        } else if self.length(&s_theta) < self.length(theta) {
            self.compute(&s_theta, &s_sigma)
        } else {
            let a = self.compute(theta, &s_sigma);
            let b = self.compute(&s_theta, &s_sigma);
            &(&IntPolynomial::q_minus_one() * &a) + &b.shift(1)
        }
    }

    /// `Σ_{θ ≤ ν ≤ σ} R_{θ,ν} q^{ℓ(σ)-ℓ(ν)} R̄_{ν,σ}` as a Laurent polynomial.
    pub fn delta_sum(&self, theta: &PartialPerm, sigma: &PartialPerm) -> Result<LaurentPolynomial> {
        self.check(theta)?;
        self.check(sigma)?;
        if !self.leq(theta, sigma) {
            return Ok(LaurentPolynomial::zero());
        }
        let between: Vec<PartialPerm> = match &self.poset {
            Some(p) => {
                let (a, b) = (p.require(theta)?, p.require(sigma)?);
                p.interval_indices(a, b).into_iter().map(|c| p.element(c).clone()).collect()
            }
            None => order::interval(theta, sigma)?.elements,
        };
        let top = self.length(sigma) as i64;
        let mut sum = LaurentPolynomial::zero();
        for nu in &between {
            let left = LaurentPolynomial::from(self.compute(theta, nu));
            let right = LaurentPolynomial::from(self.compute(nu, sigma)).bar();
            let weight = LaurentPolynomial::q_pow(top - self.length(nu) as i64);
            sum += &(&(&left * &weight) * &right);
        }
        Ok(sum)
    }

    pub fn verify_delta_identity(&self, theta: &PartialPerm, sigma: &PartialPerm) -> Result<bool> {
        let expected = if theta == sigma { LaurentPolynomial::one() } else { LaurentPolynomial::zero() };
        Ok(self.delta_sum(theta, sigma)? == expected)
    }
}

fn orbit_of(theta: &PartialPerm, sigma: &PartialPerm) -> Result<RankIdempotent> {
    if theta.n() != sigma.n() {
        return Err(Error::RankMismatch(theta.n(), sigma.n()));
    }
    if theta.rank() != sigma.rank() {
        return Err(Error::DifferentOrbits(theta.to_string(), sigma.to_string()));
    }
    RankIdempotent::new(theta.n(), theta.rank())
}

/// `R_{θ,σ}` for two elements of the same orbit.
pub fn rpoly(theta: &PartialPerm, sigma: &PartialPerm) -> Result<IntPolynomial> {
    RPolyTable::new(orbit_of(theta, sigma)?).rpoly(theta, sigma)
}

/// `R_{θ,σ}(0)`, which equals the Möbius function of `[θ, σ]`.
pub fn mobius_via_r(theta: &PartialPerm, sigma: &PartialPerm) -> Result<i64> {
    Ok(rpoly(theta, sigma)?.constant_term())
}

pub fn verify_delta_identity(theta: &PartialPerm, sigma: &PartialPerm) -> Result<bool> {
    RPolyTable::new(orbit_of(theta, sigma)?).verify_delta_identity(theta, sigma)
}
