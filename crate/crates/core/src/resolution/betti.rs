//! Minimal multigraded Betti numbers of squarefree monomial ideals.
//!
//! `β_{i,μ}(I) = dim H̃_{i-1}(K^μ; Q)` where
//! `K^μ = {T ⊆ supp μ : x^μ / x^T ∈ I}` is the upper Koszul simplicial complex.
//! Only `μ` in the lcm-lattice of `I` can carry nonzero Betti numbers.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{Kind, Resolution, Summand};
use crate::error::Result;
use crate::linalg::{rank, SparseRow};
use crate::monomial::{Monomial, MonomialIdeal};

/// All lcms of nonempty subsets of the minimal generators, sorted.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let gens = ideal.gens();
    let mut seen: BTreeSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                if g.divides_unchecked(m) {
                    continue;
                }
                let l = m.lcm_unchecked(g);
                if seen.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// `[β_{0,μ}, β_{1,μ}, ...]` for one squarefree multidegree `μ`.
pub fn upper_koszul_betti(ideal: &MonomialIdeal, mu: &Monomial) -> Vec<u64> {
    let support: Vec<usize> = mu.support().collect();
    let s = support.len();
    assert!(s < 31, "support too large for the Koszul complex");
    // Generators below μ as bitmasks over the local support positions.
    let below: Vec<u32> = ideal
        .gens()
        .iter()
        .filter(|g| g.divides_unchecked(mu))
        .map(|g| {
            support
                .iter()
                .enumerate()
                .filter(|(_, &v)| g.exponents()[v] > 0)
                .fold(0u32, |acc, (b, _)| acc | (1 << b))
        })
        .collect();
    if below.is_empty() {
        return Vec::new();
    }

    // faces[d] lists faces with d vertices; index_of maps a mask to its slot.
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    let mut index_of = vec![usize::MAX; 1usize << s];
    for mask in 0u32..(1u32 << s) {
        if below.iter().any(|&g| g & mask == 0) {
            let d = mask.count_ones() as usize;
            index_of[mask as usize] = faces[d].len();
            faces[d].push(mask);
        }
    }

    // ranks[d] = rank of the boundary from d-vertex faces to (d-1)-vertex faces.
    let mut ranks = vec![0usize; s + 2];
    for d in 1..=s {
        if faces[d].is_empty() {
            break;
        }
        let rows: Vec<SparseRow> = faces[d]
            .iter()
            .map(|&mask| {
                let mut row: SparseRow = Vec::with_capacity(d);
                let mut pos = 0;
                for b in 0..s {
                    if mask & (1 << b) != 0 {
                        let target = mask & !(1 << b);
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        row.push((index_of[target as usize], sign));
                        pos += 1;
                    }
                }
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        ranks[d] = rank(&rows);
    }

    // H̃_{q} uses faces with q+1 vertices; β_i = dim H̃_{i-1} uses d = i.
    let mut betti = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let dim = faces[i].len();
        let b = dim - ranks[i] - ranks[i + 1];
        betti.push(b as u64);
    }
    while betti.last() == Some(&0) {
        betti.pop();
    }
    betti
}

/// Minimal Betti numbers of a squarefree ideal as a `betti_only` resolution.
pub fn minimal_betti(ideal: &MonomialIdeal) -> Result<Resolution> {
    ideal.require_squarefree()?;
    let lattice = lcm_lattice(ideal);
    let per_mu: Vec<(Monomial, Vec<u64>)> = lattice
        .into_par_iter()
        .map(|mu| {
            let b = upper_koszul_betti(ideal, &mu);
            (mu, b)
        })
        .collect();
    let depth = per_mu.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    let mut strata: Vec<Vec<Summand>> = vec![Vec::new(); depth];
    for (mu, b) in per_mu {
        for (i, &beta) in b.iter().enumerate() {
            if beta > 0 {
                strata[i].push(Summand {
                    label: None,
                    multidegree: mu.clone(),
                    rank: beta,
                });
            }
        }
    }
    for stratum in &mut strata {
        stratum.sort_by(|a, b| a.multidegree.cmp(&b.multidegree));
    }
    Ok(Resolution::new(ideal.clone(), Kind::BettiOnly, strata, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarSet;
    use crate::systems::{consecutive_ideal, k_out_of_n_ideal};

    #[test]
    fn koszul_totals() {
        for r in 1..=5 {
            let res = minimal_betti(&k_out_of_n_ideal(1, r).unwrap()).unwrap();
            let expect: Vec<u64> = (0..r)
                .map(|i| crate::combinat::binomial(r as u64, i as u64 + 1) as u64)
                .collect();
            assert_eq!(res.ranks(), expect);
        }
    }

    #[test]
    fn lattice_of_path() {
        let lattice = lcm_lattice(&consecutive_ideal(2, 4).unwrap());
        // x1x2, x2x3, x3x4, x1x2x3, x2x3x4, x1x2x3x4
        assert_eq!(lattice.len(), 6);
    }

    #[test]
    fn rejects_non_squarefree() {
        let vars = VarSet::indexed("x", 1);
        let ideal = MonomialIdeal::parse_generators(&vars, &["x1^2"]).unwrap();
        assert!(minimal_betti(&ideal).is_err());
    }
}
