//! Failure ideals of the standard system families: consecutive k-out-of-n,
//! k-out-of-n, cut ideals of complete graphs and their partition ideals.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binomial, for_each_subset, set_partitions};
use crate::error::{Error, Result};
use crate::filtration::{k_fold_ideal, Filtration, Guard};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VarSet};
use crate::poly::UniPoly;

fn check_kn(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    Ok(())
}

/// Generators `x_i ... x_{i+k-1}` for `i = 1..=n-k+1`.
pub fn consecutive_ideal(k: usize, n: usize) -> Result<MonomialIdeal> {
    check_kn(k, n)?;
    let vars = VarSet::indexed("x", n);
    let gens = (0..=n - k).map(|i| Monomial::from_support(n, i..i + k));
    minimalize(&vars, gens)
}

/// All squarefree monomials of degree `k` in `n` variables.
pub fn k_out_of_n_ideal(k: usize, n: usize) -> Result<MonomialIdeal> {
    check_kn(k, n)?;
    let vars = VarSet::indexed("x", n);
    Ok(k_out_of_n_over(&vars, k))
}

pub(crate) fn k_out_of_n_over(vars: &VarSet, k: usize) -> MonomialIdeal {
    let n = vars.len();
    let mut gens = Vec::with_capacity(binomial(n as u64, k as u64) as usize);
    for_each_subset(n, k, |s| gens.push(Monomial::from_support(n, s.iter().copied())));
    minimalize(vars, gens).expect("dimensions agree")
}

/// Edge variables `x_ij`, `1 <= i < j <= n`, in lexicographic `(i, j)` order.
/// Names use an underscore (`x1_10`) once `n >= 10` to stay unambiguous.
pub fn complete_graph_vars(n: usize) -> VarSet {
    let sep = if n >= 10 { "_" } else { "" };
    let mut names = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            names.push(format!("x{i}{sep}{j}"));
        }
    }
    VarSet::new(names).expect("edge names are distinct")
}

fn edge_index(n: usize, i: usize, j: usize) -> usize {
    // 0-based i < j
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Monomial supported on the edges joining distinct blocks of `blocks`
/// (block label per vertex).
pub fn partition_monomial(n: usize, blocks: &[usize]) -> Monomial {
    let m = n * (n - 1) / 2;
    let mut support = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if blocks[i] != blocks[j] {
                support.push(edge_index(n, i, j));
            }
        }
    }
    Monomial::from_support(m, support)
}

/// `P_{n,k}`: one generator per partition of `[n]` into `k` blocks.
pub fn partition_ideal(n: usize, k: usize) -> Result<MonomialIdeal> {
    check_kn(k, n)?;
    let vars = complete_graph_vars(n);
    let gens = set_partitions(n, k)
        .into_iter()
        .map(|rgs| partition_monomial(n, &rgs));
    minimalize(&vars, gens)
}

/// Cut ideal of `K_n`: one generator per bipartition, i.e. `P_{n,2}`.
pub fn complete_graph_cut_ideal(n: usize) -> Result<MonomialIdeal> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2, got {n}")));
    }
    partition_ideal(n, 2)
}

/// `n` with `n(n-1)/2 == m` and matching edge names, if `ideal` is exactly the
/// cut ideal of a complete graph.
pub fn detect_complete_graph(ideal: &MonomialIdeal) -> Option<usize> {
    let m = ideal.nvars();
    let n = (1..=64).find(|n| n * (n - 1) / 2 >= m)?;
    if n * (n - 1) / 2 != m || n < 2 {
        return None;
    }
    let cut = complete_graph_cut_ideal(n).ok()?;
    (&cut == ideal).then_some(n)
}

/// Level `j` of the filtration of the `K_n` cut ideal equals `P_{n, b+1}` where
/// `b` is the bit length of `j`. Builds all levels from partition ideals
/// without enumerating lcms.
pub fn complete_graph_filtration_fast(n: usize) -> Result<Filtration> {
    let base = complete_graph_cut_ideal(n)?;
    let r = base.len();
    let mut levels = Vec::with_capacity(r);
    let mut cache: Vec<Option<MonomialIdeal>> = vec![None; n + 1];
    for j in 1..=r {
        let blocks = (usize::BITS - j.leading_zeros()) as usize + 1;
        if cache[blocks].is_none() {
            cache[blocks] = Some(partition_ideal(n, blocks)?);
        }
        levels.push(cache[blocks].clone().expect("filled above"));
    }
    Ok(Filtration::from_levels(base, levels))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseCheck {
    /// Block count `k + 1` of the expected partition ideal.
    pub blocks: usize,
    pub level: usize,
    pub passed: bool,
    pub generators: usize,
}

/// Compares `I_j` of the `K_n` cut ideal, computed from lcms, against
/// `P_{n,k+1}` for every `j` in `[2^(k-1), 2^k - 1]`, `k <= max_k`.
pub fn verify_staircase(n: usize, max_k: usize, guard: Guard) -> Result<Vec<StaircaseCheck>> {
    let base = complete_graph_cut_ideal(n)?;
    let r = base.len();
    let mut out = Vec::new();
    for k in 1..=max_k.min(n - 1) {
        let expected = partition_ideal(n, k + 1)?;
        let lo = 1usize << (k - 1);
        let hi = ((1usize << k) - 1).min(r);
        for j in lo..=hi {
            let level = k_fold_ideal(&base, j, guard)?;
            out.push(StaircaseCheck {
                blocks: k + 1,
                level: j,
                passed: level == expected,
                generators: level.len(),
            });
        }
    }
    Ok(out)
}

/// Expected number of failed cuts of `K_n` in closed form:
/// `sum_{k=1}^{floor((n-1)/2)} C(n,k) p^{k(n-k)}`, plus `C(n,n/2)/2 p^{(n/2)^2}`
/// for even `n`.
pub fn complete_graph_mean_closed_form(n: usize) -> UniPoly {
    let mut acc = UniPoly::zero();
    for k in 1..=n / 2 {
        let mut c = BigInt::from(binomial(n as u64, k as u64));
        if 2 * k == n {
            c /= 2;
        }
        acc.add_term(&c, k * (n - k));
    }
    acc
}

/// `(n - k + 1) p^k`.
pub fn consecutive_mean_closed_form(k: usize, n: usize) -> UniPoly {
    UniPoly::term((n - k + 1) as i64, k)
}
