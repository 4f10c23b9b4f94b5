//! Independent component failures, either symbolic in a single `p` or with
//! explicit rational probabilities per component.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poly::UniPoly;

/// Exact values a probability can take: rationals, or polynomials in `p`.
pub trait Value:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl Value for UniPoly {}
impl Value for BigRational {}

pub trait ProbModel: Sync {
    type Value: Value;

    /// Rejects ideals the model cannot evaluate.
    fn check(&self, ideal: &MonomialIdeal) -> Result<()>;

    fn int(&self, c: &BigInt) -> Self::Value;

    /// Probability that every component in `supp μ` has failed.
    fn monomial(&self, mu: &Monomial) -> Self::Value;

    /// Entry `z` is the probability that every component in `supp μ` has
    /// failed and exactly `z` components have failed in total.
    fn size_profile(&self, mu: &Monomial) -> Vec<Self::Value>;
}

/// I.i.d. failures with a formal parameter `p`; values are polynomials in `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Symbolic;

impl ProbModel for Symbolic {
    type Value = UniPoly;

    fn check(&self, _ideal: &MonomialIdeal) -> Result<()> {
        Ok(())
    }

    fn int(&self, c: &BigInt) -> UniPoly {
        UniPoly::term(c.clone(), 0)
    }

    fn monomial(&self, mu: &Monomial) -> UniPoly {
        UniPoly::term(1, mu.support().count())
    }

    fn size_profile(&self, mu: &Monomial) -> Vec<UniPoly> {
        let m = mu.nvars();
        let s = mu.support().count();
        let q = UniPoly::from_coeffs([1, -1]);
        (0..=m)
            .map(|z| {
                if z < s {
                    return UniPoly::zero();
                }
                let c = binomial((m - s) as u64, (z - s) as u64);
                &UniPoly::term(BigInt::from(c), z) * &q.pow((m - z) as u32)
            })
            .collect()
    }
}

/// Independent failures with exact per-component probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bernoulli {
    probs: Vec<BigRational>,
}

impl Bernoulli {
    pub fn new(probs: Vec<BigRational>) -> Result<Self> {
        for p in &probs {
            if p < &BigRational::zero() || p > &BigRational::one() {
                return Err(Error::ProbabilityRange(p.to_string()));
            }
        }
        Ok(Bernoulli { probs })
    }

    /// The same probability `p` for all `m` components.
    pub fn iid(p: BigRational, m: usize) -> Result<Self> {
        Bernoulli::new(vec![p; m])
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    /// The common value when all components share one probability.
    pub fn common(&self) -> Option<&BigRational> {
        let first = self.probs.first()?;
        self.probs.iter().all(|p| p == first).then_some(first)
    }
}

impl ProbModel for Bernoulli {
    type Value = BigRational;

    fn check(&self, ideal: &MonomialIdeal) -> Result<()> {
        if ideal.nvars() != self.probs.len() {
            return Err(Error::Dimension {
                expected: ideal.nvars(),
                got: self.probs.len(),
            });
        }
        Ok(())
    }

    fn int(&self, c: &BigInt) -> BigRational {
        BigRational::from_integer(c.clone())
    }

    fn monomial(&self, mu: &Monomial) -> BigRational {
        mu.support()
            .fold(BigRational::one(), |acc, j| acc * &self.probs[j])
    }

    fn size_profile(&self, mu: &Monomial) -> Vec<BigRational> {
        let m = mu.nvars();
        let mut profile = vec![BigRational::zero(); m + 1];
        let s = mu.support().count();
        profile[s] = self.monomial(mu);
        let mut len = s + 1;
        for (j, p) in self.probs.iter().enumerate() {
            if mu.exponents()[j] > 0 {
                continue;
            }
            let q = BigRational::one() - p;
            for z in (s..=len).rev() {
                let stay = if z < len { &profile[z] * &q } else { BigRational::zero() };
                let grow = if z > s { &profile[z - 1] * p } else { BigRational::zero() };
                profile[z] = stay + grow;
            }
            len += 1;
        }
        profile
    }
}
