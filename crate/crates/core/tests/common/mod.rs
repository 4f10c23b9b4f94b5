#![allow(dead_code)]

use lcmrel::{minimalize, Monomial, MonomialIdeal, VarSet};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ideal_from_masks(m: usize, masks: &[u32]) -> MonomialIdeal {
    let vars = VarSet::indexed("x", m);
    let gens = masks
        .iter()
        .map(|&b| Monomial::from_support(m, (0..m).filter(|j| b & (1 << j) != 0)));
    minimalize(&vars, gens).unwrap()
}

/// Nonzero squarefree ideal with at most `max_r` minimal generators in `m` variables.
pub fn random_ideal<R: Rng>(rng: &mut R, m: usize, max_r: usize) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=max_r);
        let masks: Vec<u32> = (0..count)
            .map(|_| rng.gen_range(1u32..(1 << m)))
            .collect();
        let ideal = ideal_from_masks(m, &masks);
        if !ideal.is_zero() && ideal.len() <= max_r {
            return ideal;
        }
    }
}

pub fn squarefree_ideal(max_m: usize, max_r: usize) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_m).prop_flat_map(move |m| {
        prop::collection::vec(1u32..(1 << m), 1..=max_r)
            .prop_map(move |masks| ideal_from_masks(m, &masks))
    })
}

pub fn all_states(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..(1 << m)).map(move |s| (0..m).map(|j| s & (1 << j) != 0).collect())
}

/// Rank over the rationals by plain Gauss-Jordan on dense rows.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = BigRational::one() / &rows[rank][col];
        let prow: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let v = &rows[r][c] - &f * &prow[c];
                    rows[r][c] = v;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

