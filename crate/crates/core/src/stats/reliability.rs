//! Failure probabilities, tail probabilities `P_k = P(Y ≥ k)`, the law of
//! the number `Y` of failed minimal cuts, moments, and truncation bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::model::{Bernoulli, ProbModel};
use crate::combinat::{binomial, for_each_subset, stirling2};
use crate::error::{Error, Result};
use crate::filtration::{Filtration, Guard};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolution::{ideal_kpolynomial, KPolynomial, Resolution};

/// `E[K(X)] = Σ_μ c_μ P(supp μ failed)`.
pub fn expectation<M: ProbModel>(k: &KPolynomial, model: &M) -> M::Value {
    k.terms()
        .iter()
        .fold(M::Value::zero(), |acc, (mu, c)| acc + model.int(c) * model.monomial(mu))
}

fn prepare<M: ProbModel>(ideal: &MonomialIdeal, model: &M) -> Result<()> {
    ideal.require_squarefree()?;
    model.check(ideal)
}

/// Probability that the system has failed, i.e. that the failure state lies in `I`.
pub fn failure_probability<M: ProbModel>(ideal: &MonomialIdeal, model: &M) -> Result<M::Value> {
    prepare(ideal, model)?;
    Ok(expectation(&ideal_kpolynomial(ideal), model))
}

/// `P_1, ..., P_r` with `P_k = P(Y ≥ k)`, the failure probability of `I_k`.
pub fn tail_probabilities<M: ProbModel>(f: &Filtration, model: &M) -> Result<Vec<M::Value>> {
    prepare(f.base(), model)?;
    Ok(f.levels()
        .iter()
        .map(|level| expectation(&ideal_kpolynomial(level), model))
        .collect())
}

/// `p_0, ..., p_r` with `p_k = P(Y = k)`.
pub fn failure_count_distribution<M: ProbModel>(
    f: &Filtration,
    model: &M,
) -> Result<Vec<M::Value>> {
    let tails = tail_probabilities(f, model)?;
    Ok(masses_from_tails(&tails))
}

pub fn masses_from_tails<V: super::model::Value>(tails: &[V]) -> Vec<V> {
    let mut out = Vec::with_capacity(tails.len() + 1);
    out.push(V::one() - tails.first().cloned().unwrap_or_else(V::zero));
    for k in 0..tails.len() {
        let next = tails.get(k + 1).cloned().unwrap_or_else(V::zero);
        out.push(tails[k].clone() - next);
    }
    out
}

/// `E[Y] = Σ_j P(m_j failed)` over the minimal generators.
pub fn mean_failures<M: ProbModel>(ideal: &MonomialIdeal, model: &M) -> Result<M::Value> {
    prepare(ideal, model)?;
    Ok(ideal
        .gens()
        .iter()
        .fold(M::Value::zero(), |acc, g| acc + model.monomial(g)))
}

/// `E[Y^order] = Σ_j j!·S(order, j)·Σ_{|σ|=j} P(m_σ failed)`, the inner sum
/// running over all `j`-subsets of generators with multiplicity.
pub fn moment<M: ProbModel>(
    ideal: &MonomialIdeal,
    order: u32,
    model: &M,
    guard: Guard,
) -> Result<M::Value> {
    if order == 0 {
        return Err(Error::InvalidParameters("moment order must be at least 1".into()));
    }
    prepare(ideal, model)?;
    let r = ideal.len();
    let gens = ideal.gens();
    let mut acc = M::Value::zero();
    for j in 1..=(order as usize).min(r) {
        guard.check(&format!("C({r},{j}) subsets for moment {order}"), binomial(r as u64, j as u64))?;
        let falling: u128 = (1..=j as u128).product();
        let weight = BigInt::from(falling) * BigInt::from(stirling2(order as usize, j));
        let mut inner = M::Value::zero();
        for_each_subset(r, j, |s| {
            let mut l = Monomial::one(ideal.nvars());
            for &i in s {
                l.lcm_assign(&gens[i]);
            }
            inner = inner.clone() + model.monomial(&l);
        });
        acc = acc + model.int(&weight) * inner;
    }
    Ok(acc)
}

/// Alternating partial sums `S_t = Σ_{i ≤ t} (-1)^i Σ_μ γ_{i,μ} P(μ failed)`.
pub fn partial_sums<M: ProbModel>(res: &Resolution, model: &M) -> Vec<M::Value> {
    let mut acc = M::Value::zero();
    res.strata()
        .iter()
        .enumerate()
        .map(|(i, stratum)| {
            let level = stratum.iter().fold(M::Value::zero(), |a, s| {
                a + model.int(&BigInt::from(s.rank)) * model.monomial(&s.multidegree)
            });
            acc = if i % 2 == 0 { acc.clone() + level } else { acc.clone() - level };
            acc.clone()
        })
        .collect()
}

/// `(lower, upper)` bounds on the failure probability from the strata up to
/// `depth`, clamped to `[0, 1]`. Even depths give an upper bound, odd depths a
/// lower bound; the other side is the previous partial sum.
pub fn truncation_bounds(
    res: &Resolution,
    depth: usize,
    model: &Bernoulli,
) -> Result<(BigRational, BigRational)> {
    prepare(res.ideal(), model)?;
    let sums = partial_sums(res, model);
    let exact = sums.last().cloned().unwrap_or_else(BigRational::zero);
    let at = |t: Option<usize>| match t {
        None => BigRational::zero(),
        Some(t) if t < sums.len() => sums[t].clone(),
        Some(_) => exact.clone(),
    };
    let (lower, upper) = if depth + 1 >= sums.len() {
        (exact.clone(), exact)
    } else {
        let cur = at(Some(depth));
        let prev = at(depth.checked_sub(1));
        if depth % 2 == 0 {
            (prev, cur)
        } else {
            (cur, prev)
        }
    };
    let clamp = |x: BigRational| x.max(BigRational::zero()).min(BigRational::one());
    Ok((clamp(lower), clamp(upper)))
}

/// Number of minimal generators of each level per total degree:
/// `(k, degree) → count`.
pub fn generator_degree_histogram(f: &Filtration) -> BTreeMap<(usize, u32), usize> {
    let mut out = BTreeMap::new();
    for (i, level) in f.levels().iter().enumerate() {
        for g in level.gens() {
            *out.entry((i + 1, g.degree())).or_insert(0) += 1;
        }
    }
    out
}
