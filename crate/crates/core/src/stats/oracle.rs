//! Exhaustive enumeration of all `2^m` failure states. Used to check the
//! algebraic path; never calls into the resolution or filtration code.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::model::Bernoulli;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub const MAX_COMPONENTS: usize = 20;

pub struct Oracle {
    m: usize,
    r: usize,
    /// `Y(α)` for every state `α`, indexed by the state bitmask.
    ys: Vec<u8>,
    weights: Weights,
}

enum Weights {
    /// I.i.d.: probability of a state depends only on its size.
    BySize(Vec<BigRational>),
    PerState(Vec<BigRational>),
}

fn mask(m: &Monomial) -> u32 {
    m.support().fold(0u32, |acc, j| acc | (1 << j))
}

impl Oracle {
    pub fn new(ideal: &MonomialIdeal, model: &Bernoulli) -> Result<Self> {
        ideal.require_squarefree()?;
        let m = ideal.nvars();
        if model.probs().len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: model.probs().len(),
            });
        }
        if m > MAX_COMPONENTS {
            return Err(Error::ResourceGuard {
                what: "exhaustive state enumeration".into(),
                count: 1u128 << m,
                limit: 1u128 << MAX_COMPONENTS,
            });
        }
        if ideal.len() > u8::MAX as usize {
            return Err(Error::InvalidParameters("oracle supports at most 255 generators".into()));
        }
        let gens: Vec<u32> = ideal.gens().iter().map(mask).collect();
        let ys: Vec<u8> = (0u32..(1u32 << m))
            .into_par_iter()
            .map(|a| gens.iter().filter(|&&g| g & a == g).count() as u8)
            .collect();

        let weights = match model.common() {
            Some(p) => {
                let q = BigRational::one() - p;
                Weights::BySize(
                    (0..=m)
                        .map(|z| pow(p, z) * pow(&q, m - z))
                        .collect(),
                )
            }
            None if m == 0 => Weights::BySize(vec![BigRational::one()]),
            None => {
                // Doubling keeps bit j of the index equal to component j.
                let mut w = vec![BigRational::one()];
                for p in model.probs() {
                    let q = BigRational::one() - p;
                    let mut next: Vec<BigRational> = w.iter().map(|x| x * &q).collect();
                    next.extend(w.iter().map(|x| x * p));
                    w = next;
                }
                Weights::PerState(w)
            }
        };
        Ok(Oracle {
            m,
            r: ideal.len(),
            ys,
            weights,
        })
    }

    /// Aggregates exact probabilities of all states satisfying `keep`, keyed by `key`.
    fn aggregate<K: Ord + Send + Copy>(
        &self,
        keep: impl Fn(usize) -> bool + Sync,
        key: impl Fn(usize) -> K + Sync,
    ) -> BTreeMap<K, BigRational> {
        match &self.weights {
            Weights::BySize(by_z) => {
                let counts: BTreeMap<(K, usize), u64> = (0..self.ys.len())
                    .into_par_iter()
                    .filter(|&a| keep(a))
                    .fold(BTreeMap::new, |mut acc, a| {
                        *acc.entry((key(a), (a as u32).count_ones() as usize)).or_insert(0) += 1;
                        acc
                    })
                    .reduce(BTreeMap::new, merge_counts);
                let mut out: BTreeMap<K, BigRational> = BTreeMap::new();
                for ((k, z), c) in counts {
                    let v = &by_z[z] * BigRational::from_integer(BigInt::from(c));
                    *out.entry(k).or_insert_with(BigRational::zero) += v;
                }
                out
            }
            Weights::PerState(w) => {
                let mut out: BTreeMap<K, BigRational> = BTreeMap::new();
                for a in 0..self.ys.len() {
                    if keep(a) {
                        *out.entry(key(a)).or_insert_with(BigRational::zero) += &w[a];
                    }
                }
                out
            }
        }
    }

    /// Law of `(Y, Z)`: `Y` failed minimal cuts, `Z` failed components.
    pub fn joint(&self) -> BTreeMap<(usize, usize), BigRational> {
        self.aggregate(|_| true, |a| (self.ys[a] as usize, (a as u32).count_ones() as usize))
    }

    /// `P(Y = y)` for `y = 0..=r`.
    pub fn masses(&self) -> Vec<BigRational> {
        let by_y = self.aggregate(|_| true, |a| self.ys[a] as usize);
        (0..=self.r)
            .map(|y| by_y.get(&y).cloned().unwrap_or_else(BigRational::zero))
            .collect()
    }

    /// `P(Y ≥ k)` for `k = 1..=r`.
    pub fn tails(&self) -> Vec<BigRational> {
        let masses = self.masses();
        (1..=self.r)
            .map(|k| masses[k..].iter().cloned().sum())
            .collect()
    }

    pub fn moment(&self, order: u32) -> BigRational {
        self.masses()
            .iter()
            .enumerate()
            .map(|(y, p)| p * BigRational::from_integer(BigInt::from(y).pow(order)))
            .sum()
    }

    /// `P(Z = z | Y ≥ k)` for `z = 0..=m`.
    pub fn conditional_size(&self, k: usize) -> Result<Vec<BigRational>> {
        let by_z = self.aggregate(|a| self.ys[a] as usize >= k, |a| (a as u32).count_ones() as usize);
        let total: BigRational = by_z.values().cloned().sum();
        if total.is_zero() {
            return Err(Error::UndefinedSignature);
        }
        Ok((0..=self.m)
            .map(|z| by_z.get(&z).map_or_else(BigRational::zero, |v| v / &total))
            .collect())
    }

    /// Probability that the failed set contains some degree-`i` squarefree `β`
    /// that is the lcm of the generators of `level` dividing it.
    pub fn slice_probability(&self, level: &MonomialIdeal, i: usize) -> BigRational {
        let gens: Vec<u32> = level.gens().iter().map(mask).collect();
        let size = 1usize << self.m;
        let mut hit = vec![false; size];
        for b in 0..size {
            if (b as u32).count_ones() as usize != i {
                continue;
            }
            let lcm = gens
                .iter()
                .filter(|&&g| g & b as u32 == g)
                .fold(0u32, |acc, &g| acc | g);
            hit[b] = lcm == b as u32 && gens.iter().any(|&g| g & b as u32 == g);
        }
        // Close upward: a state is hit if any state one smaller is.
        for a in 0..size {
            if hit[a] {
                continue;
            }
            let mut bits = a;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if hit[a ^ low] {
                    hit[a] = true;
                    break;
                }
                bits ^= low;
            }
        }
        self.aggregate(|a| hit[a], |_| ()).remove(&()).unwrap_or_else(BigRational::zero)
    }
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn merge_counts<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}
