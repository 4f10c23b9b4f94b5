//! Per-level timing of the three filtration tasks: k-fold lcms, minimal
//! generators, and the minimal resolution, alongside resolution sizes.

use std::time::Instant;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::filtration::{k_fold_raw, Guard};
use crate::monomial::{minimalize, MonomialIdeal};
use crate::resolution::{ahh_size, minimal_betti, taylor_size};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Methods {
    pub taylor: bool,
    pub ahh: bool,
    pub minimal: bool,
}

impl Default for Methods {
    fn default() -> Self {
        Methods {
            taylor: true,
            ahh: true,
            minimal: true,
        }
    }
}

impl Methods {
    /// Comma-separated subset of `taylor,ahh,minimal`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Methods {
            taylor: false,
            ahh: false,
            minimal: false,
        };
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match part {
                "taylor" => m.taylor = true,
                "ahh" => m.ahh = true,
                "minimal" => m.minimal = true,
                other => {
                    return Err(Error::InvalidParameters(format!("unknown method `{other}`")))
                }
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub k: usize,
    pub size_taylor: Option<BigUint>,
    pub size_ahh: Option<u128>,
    pub size_minimal: Option<u64>,
    /// Wall-clock milliseconds.
    pub t_lcm: f64,
    pub t_minimalize: f64,
    pub t_resolve: f64,
    /// Set when a guard or another error stopped this level.
    pub error: Option<Error>,
}

impl ProfileRow {
    pub const CSV_HEADER: &'static str =
        "k,size_taylor,size_ahh,size_minimal,t_lcm,t_minimalize,t_resolve";

    pub fn csv(&self) -> String {
        fn cell<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{:.3},{:.3},{:.3}",
            self.k,
            cell(&self.size_taylor),
            cell(&self.size_ahh),
            cell(&self.size_minimal),
            self.t_lcm,
            self.t_minimalize,
            self.t_resolve
        )
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Profiles every level `k = 1..=r`. A failing level is reported in its row
/// and the remaining levels are still attempted.
pub fn profile(ideal: &MonomialIdeal, methods: Methods, guard: Guard) -> Result<Vec<ProfileRow>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let r = ideal.len();
    Ok((1..=r).map(|k| profile_level(ideal, k, r, methods, guard)).collect())
}

fn profile_level(ideal: &MonomialIdeal, k: usize, r: usize, methods: Methods, guard: Guard) -> ProfileRow {
    let mut row = ProfileRow {
        k,
        size_taylor: None,
        size_ahh: methods.ahh.then(|| ahh_size(k, r)),
        size_minimal: None,
        t_lcm: 0.0,
        t_minimalize: 0.0,
        t_resolve: 0.0,
        error: None,
    };
    let start = Instant::now();
    let raw = match k_fold_raw(ideal, k, guard) {
        Ok(raw) => raw,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    row.t_lcm = ms(start);

    let start = Instant::now();
    let level = match minimalize(ideal.vars(), raw) {
        Ok(level) => level,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    row.t_minimalize = ms(start);
    if methods.taylor {
        row.size_taylor = Some(taylor_size(level.len()));
    }

    if methods.minimal {
        let start = Instant::now();
        match minimal_betti(&level) {
            Ok(res) => row.size_minimal = Some(res.total_size()),
            Err(e) => row.error = Some(e),
        }
        row.t_resolve = ms(start);
    }
    row
}
