//! Ideal files: `{"variables": [...], "generators": ["x1*x2", ...]}`, or
//! `"generators_exp": [[1,1,0], ...]` in place of `"generators"`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VarSet};

pub fn ideal_from_json(text: &str) -> Result<MonomialIdeal> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    ideal_from_value(&value)
}

pub fn ideal_from_value(value: &Value) -> Result<MonomialIdeal> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    let names = obj
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing \"variables\" array".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Format("variable names must be strings".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let vars = VarSet::new(names)?;

    match (obj.get("generators"), obj.get("generators_exp")) {
        (Some(_), Some(_)) => Err(Error::Format(
            "give either \"generators\" or \"generators_exp\", not both".into(),
        )),
        (Some(gens), None) => {
            let gens = gens
                .as_array()
                .ok_or_else(|| Error::Format("\"generators\" must be an array".into()))?;
            let ms = gens
                .iter()
                .map(|g| {
                    let s = g
                        .as_str()
                        .ok_or_else(|| Error::Format("generators must be strings".into()))?;
                    Monomial::parse(s, &vars)
                })
                .collect::<Result<Vec<_>>>()?;
            minimalize(&vars, ms)
        }
        (None, Some(gens)) => {
            let gens = gens
                .as_array()
                .ok_or_else(|| Error::Format("\"generators_exp\" must be an array".into()))?;
            let ms = gens
                .iter()
                .map(|g| exponent_vector(g, vars.len()))
                .collect::<Result<Vec<_>>>()?;
            minimalize(&vars, ms)
        }
        (None, None) => Err(Error::Format("missing \"generators\"".into())),
    }
}

fn exponent_vector(value: &Value, nvars: usize) -> Result<Monomial> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Format("exponent vectors must be arrays".into()))?;
    if arr.len() != nvars {
        return Err(Error::Dimension {
            expected: nvars,
            got: arr.len(),
        });
    }
    let exps = arr
        .iter()
        .map(|e| {
            e.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| Error::Parse {
                    text: e.to_string(),
                    reason: "exponent must be a non-negative integer".into(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::new(exps))
}

pub fn ideal_to_value(ideal: &MonomialIdeal) -> Value {
    json!({
        "variables": ideal.vars().names(),
        "generators": ideal.format_generators(),
    })
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string_pretty(&ideal_to_value(ideal)).expect("ideal serializes")
}
