//! Free resolutions of monomial ideals: Taylor, the explicit resolution of the
//! k-out-of-r ideal and its degeneration onto `I_k`, and minimal multigraded
//! Betti numbers.

mod ahh;
mod betti;
mod check;
mod kpoly;
mod size;
mod taylor;

use std::fmt;

use crate::monomial::{Monomial, MonomialIdeal, VarSet};

pub use ahh::{ahh_kofr, ahh_rank, degenerate};
pub use betti::{lcm_lattice, minimal_betti, upper_koszul_betti};
pub use check::{check_differentials, strand_exactness, StrandReport};
pub use kpoly::{ideal_kpolynomial, taylor_kpolynomial, KPolynomial};
pub use size::{ahh_size, size_report, taylor_size, SizeRow};
pub use taylor::taylor;

/// Basis label. Indices are 0-based positions in the generating list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Label {
    /// Taylor basis element `e_σ`.
    Subset(Vec<usize>),
    /// `[σ, τ]` with `σ ∩ τ = ∅` and `max σ > max τ`.
    Pair { sigma: Vec<usize>, tau: Vec<usize> },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[usize]| {
            let items: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        match self {
            Label::Subset(s) => f.write_str(&set(s)),
            Label::Pair { sigma, tau } => write!(f, "[{},{}]", set(sigma), set(tau)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub label: Option<Label>,
    pub multidegree: Monomial,
    pub rank: u64,
}

/// One entry of `∂_i : F_i -> F_{i-1}`: basis element `col` of `F_i` maps to
/// `sign * coeff * e_row` in `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub row: usize,
    pub col: usize,
    pub sign: i8,
    pub coeff: Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Taylor,
    AhhKofR,
    Degenerated,
    BettiOnly,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Taylor => "taylor",
            Kind::AhhKofR => "ahh_kofr",
            Kind::Degenerated => "degenerated",
            Kind::BettiOnly => "betti_only",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    ideal: MonomialIdeal,
    kind: Kind,
    strata: Vec<Vec<Summand>>,
    differentials: Option<Vec<Vec<DiffEntry>>>,
}

impl Resolution {
    pub(crate) fn new(
        ideal: MonomialIdeal,
        kind: Kind,
        strata: Vec<Vec<Summand>>,
        differentials: Option<Vec<Vec<DiffEntry>>>,
    ) -> Self {
        Resolution {
            ideal,
            kind,
            strata,
            differentials,
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn vars(&self) -> &VarSet {
        self.ideal.vars()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Strata indexed by homological degree, `strata()[0]` the generators.
    pub fn strata(&self) -> &[Vec<Summand>] {
        &self.strata
    }

    /// `∂_i` for `i >= 1` lives at index `i - 1`.
    pub fn differentials(&self) -> Option<&[Vec<DiffEntry>]> {
        self.differentials.as_deref()
    }

    pub fn ranks(&self) -> Vec<u64> {
        self.strata
            .iter()
            .map(|s| s.iter().map(|e| e.rank).sum())
            .collect()
    }

    /// Sum of all ranks.
    pub fn total_size(&self) -> u64 {
        self.ranks().iter().sum()
    }

    /// `γ_{i,μ}` aggregated by multidegree.
    pub fn graded_ranks(&self, i: usize) -> std::collections::BTreeMap<Monomial, u64> {
        let mut out = std::collections::BTreeMap::new();
        if let Some(stratum) = self.strata.get(i) {
            for s in stratum {
                *out.entry(s.multidegree.clone()).or_insert(0) += s.rank;
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let vars = self.vars();
        let strata: Vec<serde_json::Value> = self
            .strata
            .iter()
            .map(|stratum| {
                serde_json::Value::Array(
                    stratum
                        .iter()
                        .map(|s| {
                            json!({
                                "label": s.label.as_ref().map(label_json),
                                "multidegree": s.multidegree.display(vars).to_string(),
                                "rank": s.rank,
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        let mut out = json!({
            "kind": self.kind.as_str(),
            "ideal": crate::io::ideal_to_value(&self.ideal),
            "ranks": self.ranks(),
            "total_size": self.total_size(),
            "strata": strata,
        });
        if let Some(diffs) = &self.differentials {
            let ds: Vec<serde_json::Value> = diffs
                .iter()
                .map(|d| {
                    serde_json::Value::Array(
                        d.iter()
                            .map(|e| {
                                json!({
                                    "row": e.row,
                                    "col": e.col,
                                    "sign": e.sign,
                                    "coeff": e.coeff.display(vars).to_string(),
                                })
                            })
                            .collect(),
                    )
                })
                .collect();
            out["differentials"] = serde_json::Value::Array(ds);
        }
        out
    }
}

fn label_json(label: &Label) -> serde_json::Value {
    use serde_json::json;
    let one_based = |s: &[usize]| s.iter().map(|i| i + 1).collect::<Vec<_>>();
    match label {
        Label::Subset(s) => json!({ "subset": one_based(s) }),
        Label::Pair { sigma, tau } => json!({ "sigma": one_based(sigma), "tau": one_based(tau) }),
    }
}
