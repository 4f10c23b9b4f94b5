use num_bigint::BigUint;
use num_traits::One;

use super::{ahh_rank, minimal_betti};
use crate::error::Result;
use crate::filtration::Filtration;

/// Total sizes (sum of all ranks) of the three resolutions of `I_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRow {
    pub k: usize,
    /// `2^g - 1` for `g` minimal generators of `I_k`.
    pub size_taylor: BigUint,
    pub size_ahh: u128,
    pub size_minimal: u64,
}

impl SizeRow {
    pub const CSV_HEADER: &'static str = "k,size_taylor,size_ahh,size_minimal";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.k, self.size_taylor, self.size_ahh, self.size_minimal
        )
    }
}

pub fn taylor_size(g: usize) -> BigUint {
    (BigUint::one() << g) - BigUint::one()
}

pub fn ahh_size(k: usize, r: usize) -> u128 {
    (0..=r - k).map(|i| ahh_rank(k, r, i)).sum()
}

/// One row per level of the filtration.
pub fn size_report(filtration: &Filtration) -> Result<Vec<SizeRow>> {
    let r = filtration.len();
    (1..=r)
        .map(|k| {
            let level = filtration.level(k);
            Ok(SizeRow {
                k,
                size_taylor: taylor_size(level.len()),
                size_ahh: ahh_size(k, r),
                size_minimal: minimal_betti(level)?.total_size(),
            })
        })
        .collect()
}
