//! k-fold lcm-ideals and the descending lcm-filtration `I = I_1 ⊇ I_2 ⊇ ... ⊇ I_r`.

use rayon::prelude::*;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal};

/// Default ceiling on the number of raw k-fold lcms enumerated for one level.
pub const DEFAULT_RAW_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct Guard {
    /// `None` disables the check.
    pub raw_limit: Option<u128>,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            raw_limit: Some(DEFAULT_RAW_LIMIT),
        }
    }
}

impl Guard {
    pub fn unlimited() -> Self {
        Guard { raw_limit: None }
    }

    pub fn check(&self, what: &str, count: u128) -> Result<()> {
        match self.raw_limit {
            Some(limit) if count > limit => Err(Error::ResourceGuard {
                what: what.to_string(),
                count,
                limit,
            }),
            _ => Ok(()),
        }
    }
}

fn check_level(ideal: &MonomialIdeal, k: usize) -> Result<()> {
    let r = ideal.len();
    if k == 0 || k > r {
        return Err(Error::LevelOutOfRange { k, r });
    }
    Ok(())
}

/// lcm of every k-subset of the generators, one per subset, in lexicographic
/// subset order. Duplicates are kept.
pub fn k_fold_raw(ideal: &MonomialIdeal, k: usize, guard: Guard) -> Result<Vec<Monomial>> {
    check_level(ideal, k)?;
    let r = ideal.len();
    let count = binomial(r as u64, k as u64);
    guard.check(&format!("C({r},{k}) raw lcms"), count)?;

    let gens = ideal.gens();
    let mut out = Vec::with_capacity(count as usize);
    // prefix[d] holds the lcm of the first d chosen generators.
    let mut prefix = vec![Monomial::one(ideal.nvars()); k + 1];
    fn rec(
        gens: &[Monomial],
        start: usize,
        depth: usize,
        k: usize,
        prefix: &mut Vec<Monomial>,
        out: &mut Vec<Monomial>,
    ) {
        if depth == k {
            out.push(prefix[k].clone());
            return;
        }
        let remaining = k - depth;
        for i in start..=gens.len() - remaining {
            let next = prefix[depth].lcm_unchecked(&gens[i]);
            prefix[depth + 1] = next;
            rec(gens, i + 1, depth + 1, k, prefix, out);
        }
    }
    rec(gens, 0, 0, k, &mut prefix, &mut out);
    Ok(out)
}

/// The k-fold lcm-ideal `I_k`.
pub fn k_fold_ideal(ideal: &MonomialIdeal, k: usize, guard: Guard) -> Result<MonomialIdeal> {
    let raw = k_fold_raw(ideal, k, guard)?;
    minimalize(ideal.vars(), raw)
}

#[derive(Clone, Debug)]
pub struct Filtration {
    base: MonomialIdeal,
    levels: Vec<MonomialIdeal>,
    raw_counts: Vec<u128>,
}

impl Filtration {
    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    /// Number of levels `r`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `I_k`, 1-based.
    pub fn level(&self, k: usize) -> &MonomialIdeal {
        &self.levels[k - 1]
    }

    pub fn levels(&self) -> &[MonomialIdeal] {
        &self.levels
    }

    /// `C(r, k)` for each level, 1-based through `raw_count(k)`.
    pub fn raw_count(&self, k: usize) -> u128 {
        self.raw_counts[k - 1]
    }

    pub(crate) fn from_levels(base: MonomialIdeal, levels: Vec<MonomialIdeal>) -> Self {
        let r = base.len() as u64;
        let raw_counts = (1..=levels.len() as u64).map(|k| binomial(r, k)).collect();
        Filtration {
            base,
            levels,
            raw_counts,
        }
    }
}

/// All `r` levels, each computed independently.
pub fn full_filtration(ideal: &MonomialIdeal, guard: Guard) -> Result<Filtration> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let r = ideal.len();
    let levels = (1..=r)
        .into_par_iter()
        .map(|k| k_fold_ideal(ideal, k, guard))
        .collect::<Result<Vec<_>>>()?;
    Ok(Filtration::from_levels(ideal.clone(), levels))
}

/// A maximal run `start..=end` of equal consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub ideal: MonomialIdeal,
}

pub fn staircase(filtration: &Filtration) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for (i, level) in filtration.levels.iter().enumerate() {
        let k = i + 1;
        match runs.last_mut() {
            Some(run) if &run.ideal == level => run.end = k,
            _ => runs.push(Run {
                start: k,
                end: k,
                ideal: level.clone(),
            }),
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarSet;
    use crate::systems::{complete_graph_cut_ideal, consecutive_ideal};

    #[test]
    fn raw_lcms_of_consecutive_2_of_6() {
        let i = consecutive_ideal(2, 6).unwrap();
        let raw = k_fold_raw(&i, 2, Guard::default()).unwrap();
        let shown: Vec<String> = raw
            .iter()
            .map(|m| m.display(i.vars()).to_string())
            .collect();
        assert_eq!(
            shown,
            vec![
                "x1*x2*x3",
                "x1*x2*x3*x4",
                "x1*x2*x4*x5",
                "x1*x2*x5*x6",
                "x2*x3*x4",
                "x2*x3*x4*x5",
                "x2*x3*x5*x6",
                "x3*x4*x5",
                "x3*x4*x5*x6",
                "x4*x5*x6",
            ]
        );
        assert_eq!(k_fold_raw(&i, 1, Guard::default()).unwrap(), i.gens());
        let top = k_fold_raw(&i, 5, Guard::default()).unwrap();
        assert_eq!(top, vec![Monomial::new(vec![1; 6])]);
    }

    #[test]
    fn level_range_checked() {
        let i = consecutive_ideal(2, 4).unwrap();
        assert_eq!(
            k_fold_raw(&i, 0, Guard::default()),
            Err(Error::LevelOutOfRange { k: 0, r: 3 })
        );
        assert!(k_fold_ideal(&i, 4, Guard::default()).is_err());
        let z = MonomialIdeal::zero(VarSet::indexed("x", 3));
        assert_eq!(full_filtration(&z, Guard::default()).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn second_level_of_2_out_of_5() {
        let i = consecutive_ideal(2, 5).unwrap();
        let i2 = k_fold_ideal(&i, 2, Guard::default()).unwrap();
        assert_eq!(
            i2.format_generators(),
            vec!["x1*x2*x3", "x2*x3*x4", "x3*x4*x5", "x1*x2*x4*x5"]
        );
        assert_eq!(k_fold_ideal(&i, 1, Guard::default()).unwrap(), i);
    }

    #[test]
    fn guard_trips() {
        let i = consecutive_ideal(2, 12).unwrap();
        let tight = Guard {
            raw_limit: Some(100),
        };
        assert!(matches!(
            k_fold_raw(&i, 5, tight),
            Err(Error::ResourceGuard { count: 462, .. })
        ));
        assert!(k_fold_raw(&i, 5, Guard::unlimited()).is_ok());
    }

    #[test]
    fn staircase_runs() {
        let k4 = complete_graph_cut_ideal(4).unwrap();
        let f = full_filtration(&k4, Guard::default()).unwrap();
        let runs: Vec<(usize, usize)> = staircase(&f).iter().map(|r| (r.start, r.end)).collect();
        assert_eq!(runs, vec![(1, 1), (2, 3), (4, 7)]);

        let c = consecutive_ideal(2, 6).unwrap();
        let f = full_filtration(&c, Guard::default()).unwrap();
        assert_eq!(staircase(&f).len(), 5);

        let single = consecutive_ideal(3, 3).unwrap();
        let f = full_filtration(&single, Guard::default()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.level(1), &single);
        assert_eq!(staircase(&f).len(), 1);
    }

    #[test]
    fn filtration_is_descending() {
        let c = consecutive_ideal(2, 7).unwrap();
        let f = full_filtration(&c, Guard::default()).unwrap();
        for k in 1..f.len() {
            for g in f.level(k + 1).gens() {
                assert!(f.level(k).contains(g));
            }
            assert_eq!(f.raw_count(k), binomial(6, k as u64));
        }
        assert_eq!(f.level(f.len()).gens(), &[c.lcm_all().unwrap()]);
    }
}
