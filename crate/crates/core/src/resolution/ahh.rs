//! The minimal resolution of the k-out-of-r ideal `I_{k,r}` on pairs `[σ, τ]`,
//! and its degeneration onto the k-fold lcm-ideal `I_k` through
//! `σ ↦ m_σ = lcm{m_j : j ∈ σ}`.
//!
//! Stratum `i` is spanned by `[σ, τ]` with `|σ| = k`, `|τ| = i`, `σ ∩ τ = ∅` and
//! `max σ > max τ`; stratum 0 is `[σ, ∅]`, one element per generator. With
//! `sgn(j, τ) = #{t ∈ τ : t < j}` and `M = max σ`,
//!
//! ```text
//! ∂[σ,τ] = Σ_{j∈τ} (-1)^sgn(j,τ) ( -c(j) [σ, τ-j] + c(M) [σ-M+j, τ-j] )
//! ```
//!
//! where the second term is dropped whenever `[σ-M+j, τ-j]` violates
//! `max σ' > max τ'`, and `c(j)` is the multidegree ratio of source and target.

use std::collections::HashMap;

use super::{DiffEntry, Kind, Label, Resolution, Summand};
use crate::combinat::{binomial, for_each_subset};
use crate::error::{Error, Result};
use crate::filtration::{k_fold_raw, Guard};
use crate::monomial::{minimalize, Monomial, MonomialIdeal};
use crate::systems::k_out_of_n_ideal;

/// Closed form `C(r, k+i) * C(k+i-1, i)` for the rank of stratum `i`.
pub fn ahh_rank(k: usize, r: usize, i: usize) -> u128 {
    binomial(r as u64, (k + i) as u64) * binomial((k + i - 1) as u64, i as u64)
}

fn check_kr(k: usize, r: usize) -> Result<()> {
    if k == 0 || k > r {
        return Err(Error::LevelOutOfRange { k, r });
    }
    Ok(())
}

fn pair_basis(k: usize, r: usize) -> Vec<Vec<(Vec<usize>, Vec<usize>)>> {
    let mut strata = vec![Vec::new(); r - k + 1];
    for_each_subset(r, k, |sigma| {
        let top = *sigma.last().expect("k >= 1");
        let free: Vec<usize> = (0..top).filter(|j| !sigma.contains(j)).collect();
        for (i, stratum) in strata.iter_mut().enumerate() {
            for_each_subset(free.len(), i, |t| {
                let tau: Vec<usize> = t.iter().map(|&x| free[x]).collect();
                stratum.push((sigma.to_vec(), tau));
            });
        }
    });
    for stratum in &mut strata {
        stratum.sort();
    }
    strata
}

fn union(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = sigma.iter().chain(tau).copied().collect();
    s.sort_unstable();
    s
}

fn build(
    ideal: MonomialIdeal,
    kind: Kind,
    k: usize,
    r: usize,
    multidegree: impl Fn(&[usize]) -> Monomial,
) -> Resolution {
    let basis = pair_basis(k, r);
    let strata: Vec<Vec<Summand>> = basis
        .iter()
        .map(|stratum| {
            stratum
                .iter()
                .map(|(sigma, tau)| Summand {
                    label: Some(Label::Pair {
                        sigma: sigma.clone(),
                        tau: tau.clone(),
                    }),
                    multidegree: multidegree(&union(sigma, tau)),
                    rank: 1,
                })
                .collect()
        })
        .collect();
    let index: Vec<HashMap<(Vec<usize>, Vec<usize>), usize>> = basis
        .iter()
        .map(|stratum| {
            stratum
                .iter()
                .enumerate()
                .map(|(n, pair)| (pair.clone(), n))
                .collect()
        })
        .collect();

    let mut diffs = Vec::with_capacity(basis.len().saturating_sub(1));
    for i in 1..basis.len() {
        let mut entries = Vec::new();
        for (col, (sigma, tau)) in basis[i].iter().enumerate() {
            let source = &strata[i][col].multidegree;
            let rest: Vec<usize> = sigma[..k - 1].to_vec();
            for (rank_in_tau, &j) in tau.iter().enumerate() {
                let parity: i8 = if rank_in_tau % 2 == 0 { 1 } else { -1 };
                let mut tau_j = tau.clone();
                tau_j.remove(rank_in_tau);

                let row = index[i - 1][&(sigma.clone(), tau_j.clone())];
                entries.push(DiffEntry {
                    row,
                    col,
                    sign: -parity,
                    coeff: ratio(source, &strata[i - 1][row].multidegree),
                });

                let mut swapped = rest.clone();
                swapped.push(j);
                swapped.sort_unstable();
                let valid = tau_j.last().map_or(true, |t| t < swapped.last().expect("nonempty"));
                if valid {
                    let row = index[i - 1][&(swapped, tau_j)];
                    entries.push(DiffEntry {
                        row,
                        col,
                        sign: parity,
                        coeff: ratio(source, &strata[i - 1][row].multidegree),
                    });
                }
            }
        }
        diffs.push(entries);
    }
    Resolution::new(ideal, kind, strata, Some(diffs))
}

fn ratio(source: &Monomial, target: &Monomial) -> Monomial {
    source
        .quotient(target)
        .expect("target multidegree divides source multidegree")
}

/// The minimal free resolution of the k-out-of-r ideal in `x1..xr`.
pub fn ahh_kofr(k: usize, r: usize) -> Result<Resolution> {
    check_kr(k, r)?;
    let ideal = k_out_of_n_ideal(k, r)?;
    Ok(build(ideal, Kind::AhhKofR, k, r, |s| {
        Monomial::from_support(r, s.iter().copied())
    }))
}

/// The degenerated resolution `𝐈_k` of the k-fold lcm-ideal of `ideal`:
/// same labelled basis as for `I_{k,r}`, multidegree of `[σ,τ]` equal to
/// `m_{σ∪τ}`.
pub fn degenerate(ideal: &MonomialIdeal, k: usize, guard: Guard) -> Result<Resolution> {
    let r = ideal.len();
    check_kr(k, r)?;
    let total: u128 = (0..=r - k).map(|i| ahh_rank(k, r, i)).sum();
    guard.check(&format!("degenerated resolution of level {k}"), total)?;
    let gens = ideal.gens();
    let nvars = ideal.nvars();
    let target = minimalize(ideal.vars(), k_fold_raw(ideal, k, guard)?)?;
    Ok(build(target, Kind::Degenerated, k, r, |s| {
        let mut acc = Monomial::one(nvars);
        for &j in s {
            acc.lcm_assign(&gens[j]);
        }
        acc
    }))
}
