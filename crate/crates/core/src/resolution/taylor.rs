use std::collections::HashMap;

use super::{DiffEntry, Kind, Label, Resolution, Summand};
use crate::combinat::for_each_subset;
use crate::error::{Error, Result};
use crate::filtration::Guard;
use crate::monomial::{minimalize, Monomial, VarSet};

/// Taylor resolution on the given generating list (minimal or not).
///
/// Stratum `i` holds every `(i+1)`-subset `σ` with multidegree `lcm(σ)`, and
/// `∂ e_σ = Σ_{j∈σ} (-1)^{pos(j,σ)} lcm(σ)/lcm(σ∖j) e_{σ∖j}`.
pub fn taylor(vars: &VarSet, gens: &[Monomial], guard: Guard) -> Result<Resolution> {
    if gens.is_empty() {
        return Err(Error::InvalidParameters(
            "Taylor resolution needs at least one generator".into(),
        ));
    }
    let g = gens.len();
    let total = if g >= 127 { u128::MAX } else { (1u128 << g) - 1 };
    guard.check(&format!("Taylor resolution on {g} generators"), total)?;
    let ideal = minimalize(vars, gens.to_vec())?;

    let lcm_of = |s: &[usize]| {
        let mut acc = Monomial::one(vars.len());
        for &j in s {
            acc.lcm_assign(&gens[j]);
        }
        acc
    };

    let mut strata: Vec<Vec<Summand>> = Vec::with_capacity(g);
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(g);
    for size in 1..=g {
        let mut stratum = Vec::new();
        let mut idx = HashMap::new();
        for_each_subset(g, size, |s| {
            idx.insert(s.to_vec(), stratum.len());
            stratum.push(Summand {
                label: Some(Label::Subset(s.to_vec())),
                multidegree: lcm_of(s),
                rank: 1,
            });
        });
        strata.push(stratum);
        index.push(idx);
    }

    let mut diffs = Vec::with_capacity(g.saturating_sub(1));
    for i in 1..g {
        let mut entries = Vec::new();
        for (col, summand) in strata[i].iter().enumerate() {
            let Some(Label::Subset(sigma)) = &summand.label else {
                unreachable!()
            };
            for pos in 0..sigma.len() {
                let mut face = sigma.clone();
                face.remove(pos);
                let row = index[i - 1][&face];
                let coeff = summand
                    .multidegree
                    .quotient(&strata[i - 1][row].multidegree)
                    .expect("lcm of a subset divides lcm of the superset");
                entries.push(DiffEntry {
                    row,
                    col,
                    sign: if pos % 2 == 0 { 1 } else { -1 },
                    coeff,
                });
            }
        }
        diffs.push(entries);
    }
    Ok(Resolution::new(ideal, Kind::Taylor, strata, Some(diffs)))
}
