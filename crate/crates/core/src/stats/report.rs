//! JSON and CSV serialisation of exact distribution data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::signature::SignatureTable;
use crate::poly::UniPoly;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

impl ToJson for BigRational {
    fn to_json(&self) -> Value {
        json!({ "num": big(self.numer()), "den": big(self.denom()) })
    }
}

impl ToJson for UniPoly {
    fn to_json(&self) -> Value {
        json!({
            "coefficients": self.coeffs().iter().map(big).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

impl ToJson for SignatureTable {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "i": r.i,
                    "Q": r.slice.to_json(),
                    "q": r.slice_diff.to_json(),
                    "q_over_P": r.slice_ratio.to_json(),
                    "s": r.s.to_json(),
                })
            })
            .collect();
        json!({ "k": self.k, "P": self.threshold.to_json(), "rows": rows })
    }
}

/// Depth-indexed `(lower, upper)` bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub method: String,
    pub depth: usize,
    pub lower: BigRational,
    pub upper: BigRational,
}

/// Every field is optional; only populated sections are serialised.
#[derive(Clone, Debug)]
pub struct DistributionReport<V> {
    pub failure_probability: Option<V>,
    pub tails: Option<Vec<V>>,
    pub masses: Option<Vec<V>>,
    pub mean: Option<V>,
    pub second_moment: Option<V>,
    pub moments: Vec<(u32, V)>,
    pub bounds: Vec<BoundsRow>,
    pub signature: Option<SignatureTable>,
    pub kfold_signature: Option<SignatureTable>,
    pub joint: Option<BTreeMap<(usize, usize), BigRational>>,
    pub gen_histogram: Option<BTreeMap<(usize, u32), usize>>,
}

impl<V> Default for DistributionReport<V> {
    fn default() -> Self {
        DistributionReport {
            failure_probability: None,
            tails: None,
            masses: None,
            mean: None,
            second_moment: None,
            moments: Vec::new(),
            bounds: Vec::new(),
            signature: None,
            kfold_signature: None,
            joint: None,
            gen_histogram: None,
        }
    }
}

impl<V: ToJson> DistributionReport<V> {
    pub fn to_json(&self) -> Value {
        let list = |xs: &[V]| Value::Array(xs.iter().map(ToJson::to_json).collect());
        let mut out = Map::new();
        if let Some(v) = &self.failure_probability {
            out.insert("failure_probability".into(), v.to_json());
        }
        if let Some(v) = &self.tails {
            out.insert("tails".into(), list(v));
        }
        if let Some(v) = &self.masses {
            out.insert("masses".into(), list(v));
        }
        if let Some(v) = &self.mean {
            out.insert("mean".into(), v.to_json());
        }
        if let Some(v) = &self.second_moment {
            out.insert("second_moment".into(), v.to_json());
        }
        if !self.moments.is_empty() {
            let ms: Vec<Value> = self
                .moments
                .iter()
                .map(|(o, v)| json!({ "order": o, "value": v.to_json() }))
                .collect();
            out.insert("moments".into(), Value::Array(ms));
        }
        if !self.bounds.is_empty() {
            let bs: Vec<Value> = self
                .bounds
                .iter()
                .map(|b| {
                    json!({
                        "method": b.method,
                        "depth": b.depth,
                        "lower": b.lower.to_json(),
                        "upper": b.upper.to_json(),
                    })
                })
                .collect();
            out.insert("bounds".into(), Value::Array(bs));
        }
        if let Some(t) = &self.signature {
            out.insert("signature".into(), t.to_json());
        }
        if let Some(t) = &self.kfold_signature {
            out.insert("kfold_signature".into(), t.to_json());
        }
        if let Some(j) = &self.joint {
            let rows: Vec<Value> = j
                .iter()
                .map(|((y, z), v)| json!({ "y": y, "z": z, "value": v.to_json() }))
                .collect();
            out.insert("joint".into(), Value::Array(rows));
        }
        if let Some(h) = &self.gen_histogram {
            let rows: Vec<Value> = h
                .iter()
                .map(|((k, d), c)| json!({ "k": k, "degree": d, "count": c }))
                .collect();
            out.insert("gen_histogram".into(), Value::Array(rows));
        }
        Value::Object(out)
    }
}

pub const TABLE_CSV_HEADER: &str = "y,z,value";

/// `y,z,value` with exact rationals written as `num/den`.
pub fn joint_csv(joint: &BTreeMap<(usize, usize), BigRational>) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for ((y, z), v) in joint {
        out.push_str(&format!("{y},{z},{v}\n"));
    }
    out
}

/// Generator histogram in the same `y,z,value` layout: `y` is the level `k`,
/// `z` the generator degree.
pub fn histogram_csv(hist: &BTreeMap<(usize, u32), usize>) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for ((k, d), c) in hist {
        out.push_str(&format!("{k},{d},{c}\n"));
    }
    out
}
