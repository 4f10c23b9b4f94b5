//! Exact rank of sparse integer matrices over the rationals.
//!
//! Rows are reduced into echelon form with fraction-free updates
//! `r <- a*r - b*pivot` followed by division by the row content, so entries
//! stay small on boundary matrices. The elimination runs on `i128` with
//! overflow checks and restarts on `BigInt` if any step overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sparse row: `(column, value)` sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

pub fn rank(rows: &[SparseRow]) -> usize {
    match rank_generic::<i128>(rows) {
        Some(r) => r,
        None => rank_generic::<BigInt>(rows).expect("BigInt elimination cannot overflow"),
    }
}

trait Scalar: Clone + PartialEq + Zero + Sized {
    fn from_i64(v: i64) -> Self;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn gcd_with(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        i128::checked_sub(*self, *o)
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn rank_generic<T: Scalar>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    // Short rows first: they are cheap pivots and keep fill-in low.
    let mut order: Vec<&SparseRow> = rows.iter().collect();
    order.sort_by_key(|r| r.len());
    let mut rank = 0;
    for row in order {
        let mut cur: Vec<(usize, T)> = row
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(c, v)| (c, T::from_i64(v)))
            .collect();
        loop {
            let Some((lead, lead_val)) = cur.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                Some(p) => cur = eliminate(&cur, &lead_val, p)?,
                None => {
                    pivots.insert(lead, cur);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// `a*row - b*pivot` with `a, b` chosen to cancel the shared leading entry,
/// then divided by its content.
fn eliminate<T: Scalar>(row: &[(usize, T)], lead: &T, pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let pv = &pivot[0].1;
    let g = pv.gcd_with(lead);
    let a = pv.exact_div(&g);
    let b = lead.exact_div(&g);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, val) = if take_row {
            let v = row[i].1.checked_mul(&a)?;
            i += 1;
            (row[i - 1].0, v)
        } else if take_piv {
            let v = T::zero().checked_sub(&pivot[j].1.checked_mul(&b)?)?;
            j += 1;
            (pivot[j - 1].0, v)
        } else {
            let v = row[i].1.checked_mul(&a)?.checked_sub(&pivot[j].1.checked_mul(&b)?)?;
            i += 1;
            j += 1;
            (row[i - 1].0, v)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    let content = out
        .iter()
        .fold(T::zero(), |acc, (_, v)| acc.gcd_with(v));
    if !content.is_zero() && !content.is_unit() {
        for (_, v) in out.iter_mut() {
            *v = v.exact_div(&content);
        }
    }
    Some(out)
}
