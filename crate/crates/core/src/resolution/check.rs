//! Verification of resolutions: homogeneity of the differentials, `∂∘∂ = 0`,
//! and exactness of each multigraded strand.

use std::collections::HashMap;

use super::{DiffEntry, Resolution};
use crate::linalg::{rank, SparseRow};
use crate::monomial::Monomial;

/// Checks every differential entry is `± μ(source)/μ(target)`, that the
/// augmentation kills `∂_1`, and that `∂_{i-1} ∘ ∂_i = 0`. Returns a
/// description of the first violation.
pub fn check_differentials(res: &Resolution) -> std::result::Result<(), String> {
    let Some(diffs) = res.differentials() else {
        return Err("resolution carries no differentials".into());
    };
    let strata = res.strata();
    for (d, entries) in diffs.iter().enumerate() {
        let i = d + 1;
        for e in entries {
            let src = &strata[i][e.col].multidegree;
            let dst = &strata[i - 1][e.row].multidegree;
            match dst.mul(&e.coeff) {
                Ok(m) if &m == src => {}
                _ => return Err(format!("∂_{i} entry ({}, {}) is not homogeneous", e.row, e.col)),
            }
        }
    }

    // ε ∘ ∂_1: signs in each column of ∂_1 must cancel.
    if let Some(first) = diffs.first() {
        let mut sums: HashMap<usize, i64> = HashMap::new();
        for e in first {
            *sums.entry(e.col).or_insert(0) += e.sign as i64;
        }
        if let Some((col, _)) = sums.iter().find(|(_, &v)| v != 0) {
            return Err(format!("augmentation does not vanish on ∂_1 column {col}"));
        }
    }

    for i in 2..=diffs.len() {
        let upper = &diffs[i - 1];
        let lower = &diffs[i - 2];
        let mut by_col: HashMap<usize, Vec<&DiffEntry>> = HashMap::new();
        for e in lower {
            by_col.entry(e.col).or_default().push(e);
        }
        let mut acc: HashMap<(usize, usize, Monomial), i64> = HashMap::new();
        for e in upper {
            if let Some(next) = by_col.get(&e.row) {
                for f in next {
                    let coeff = e.coeff.mul(&f.coeff).expect("same ring");
                    *acc.entry((e.col, f.row, coeff)).or_insert(0) +=
                        (e.sign as i64) * (f.sign as i64);
                }
            }
        }
        if let Some(((col, row, _), _)) = acc.iter().find(|(_, &v)| v != 0) {
            return Err(format!(
                "∂_{} ∘ ∂_{} is nonzero at ({row}, {col})",
                i - 1,
                i
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandReport {
    /// Dimension of each stratum restricted to multidegrees dividing `μ`.
    pub dims: Vec<usize>,
    /// Homology of the augmented strand, degree 0 first (augmentation included).
    pub homology: Vec<usize>,
}

impl StrandReport {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }
}

/// Homology of the degree-`μ` strand of the augmented complex
/// `... -> F_1 -> F_0 -> I -> 0` over the rationals.
pub fn strand_exactness(res: &Resolution, mu: &Monomial) -> StrandReport {
    let diffs = res
        .differentials()
        .expect("strand exactness needs differentials");
    let strata = res.strata();
    let selected: Vec<Vec<usize>> = strata
        .iter()
        .map(|s| {
            s.iter()
                .enumerate()
                .filter(|(_, e)| e.multidegree.divides_unchecked(mu))
                .map(|(n, _)| n)
                .collect()
        })
        .collect();
    let local: Vec<HashMap<usize, usize>> = selected
        .iter()
        .map(|sel| sel.iter().enumerate().map(|(l, &g)| (g, l)).collect())
        .collect();
    let dims: Vec<usize> = selected.iter().map(Vec::len).collect();

    // ranks[i] = rank of the map out of stratum i (i = 0 is the augmentation).
    let mut ranks = vec![0usize; strata.len() + 1];
    ranks[0] = usize::from(dims[0] > 0);
    for (d, entries) in diffs.iter().enumerate() {
        let i = d + 1;
        let mut rows: Vec<SparseRow> = vec![Vec::new(); dims[i]];
        for e in entries {
            if let (Some(&c), Some(&r)) = (local[i].get(&e.col), local[i - 1].get(&e.row)) {
                rows[c].push((r, e.sign as i64));
            }
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|x| x.0);
        }
        ranks[i] = rank(&rows);
    }
    let target = usize::from(res.ideal().contains(mu));
    let mut homology = vec![target - ranks[0]];
    for i in 0..strata.len() {
        homology.push(dims[i] - ranks[i] - ranks[i + 1]);
    }
    StrandReport { dims, homology }
}
