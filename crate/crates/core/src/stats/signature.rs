//! Degree slices and signatures.
//!
//! The slice `Ĩ_i` of `I` is generated by the degree-`i` members of the
//! lcm-lattice of `I`; `Q_i` is its failure probability and
//! `q_i = Q_i - Q_{i+1}`. The signature entry `s_i` is the conditional
//! probability that exactly `i` components have failed given failure.

use num_rational::BigRational;
use num_traits::Zero;

use super::model::{Bernoulli, ProbModel};
use super::reliability::expectation;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::monomial::{minimalize, MonomialIdeal};
use crate::resolution::{ideal_kpolynomial, lcm_lattice};

/// Ideal generated by the degree-`i` elements of the lcm-lattice of `I`.
pub fn degree_slice(ideal: &MonomialIdeal, i: usize) -> Result<MonomialIdeal> {
    ideal.require_squarefree()?;
    let members = lcm_lattice(ideal)
        .into_iter()
        .filter(|m| m.degree() as usize == i);
    minimalize(ideal.vars(), members)
}

/// `Q_0, ..., Q_m` for the slices of `I`.
pub fn slice_probabilities<M: ProbModel>(ideal: &MonomialIdeal, model: &M) -> Result<Vec<M::Value>> {
    ideal.require_squarefree()?;
    model.check(ideal)?;
    let lattice = lcm_lattice(ideal);
    (0..=ideal.nvars())
        .map(|i| {
            let slice = minimalize(
                ideal.vars(),
                lattice.iter().filter(|m| m.degree() as usize == i).cloned(),
            )?;
            Ok(expectation(&ideal_kpolynomial(&slice), model))
        })
        .collect()
}

/// `q_i = Q_i - Q_{i+1}` with `Q_{m+1} = 0`.
pub fn slice_differences<V: super::model::Value>(big_q: &[V]) -> Vec<V> {
    (0..big_q.len())
        .map(|i| big_q[i].clone() - big_q.get(i + 1).cloned().unwrap_or_else(V::zero))
        .collect()
}

/// Entry `z` is `P(X ∈ I and exactly z components failed)`.
pub fn failure_size_distribution<M: ProbModel>(
    ideal: &MonomialIdeal,
    model: &M,
) -> Result<Vec<M::Value>> {
    ideal.require_squarefree()?;
    model.check(ideal)?;
    let k = ideal_kpolynomial(ideal);
    let mut out = vec![M::Value::zero(); ideal.nvars() + 1];
    for (mu, c) in k.terms() {
        let w = model.int(c);
        for (z, v) in model.size_profile(mu).into_iter().enumerate() {
            out[z] = out[z].clone() + w.clone() * v;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureRow {
    pub i: usize,
    /// Slice probability `Q_i`.
    pub slice: BigRational,
    /// `q_i = Q_i - Q_{i+1}`.
    pub slice_diff: BigRational,
    /// `q_i / P`.
    pub slice_ratio: BigRational,
    /// `s_i = P(exactly i failed | failure)`.
    pub s: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureTable {
    /// Level of the filtration the table conditions on (1 for the classical one).
    pub k: usize,
    /// Failure probability `P_k` used as the normaliser.
    pub threshold: BigRational,
    /// Rows `i = 1..=m`.
    pub rows: Vec<SignatureRow>,
}

impl SignatureTable {
    pub fn total(&self) -> BigRational {
        self.rows.iter().map(|r| r.s.clone()).sum()
    }

    pub fn s(&self, i: usize) -> BigRational {
        self.rows
            .iter()
            .find(|r| r.i == i)
            .map(|r| r.s.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

fn table(level: &MonomialIdeal, k: usize, model: &Bernoulli) -> Result<SignatureTable> {
    level.require_squarefree()?;
    model.check(level)?;
    if level.is_zero() {
        return Err(Error::UndefinedSignature);
    }
    let threshold = expectation(&ideal_kpolynomial(level), model);
    if threshold.is_zero() {
        return Err(Error::UndefinedSignature);
    }
    let big_q = slice_probabilities(level, model)?;
    let small_q = slice_differences(&big_q);
    let sizes = failure_size_distribution(level, model)?;
    let rows = (1..=level.nvars())
        .map(|i| SignatureRow {
            i,
            slice: big_q[i].clone(),
            slice_diff: small_q[i].clone(),
            slice_ratio: &small_q[i] / &threshold,
            s: &sizes[i] / &threshold,
        })
        .collect();
    Ok(SignatureTable { k, threshold, rows })
}

/// Classical signature of `I` at the given component probabilities.
pub fn signature(ideal: &MonomialIdeal, model: &Bernoulli) -> Result<SignatureTable> {
    table(ideal, 1, model)
}

/// Signature conditioned on at least `k` failed minimal cuts, normalised by `P_k`.
pub fn k_fold_signature(f: &Filtration, k: usize, model: &Bernoulli) -> Result<SignatureTable> {
    if k == 0 || k > f.len() {
        return Err(Error::LevelOutOfRange { k, r: f.len() });
    }
    table(f.level(k), k, model)
}
