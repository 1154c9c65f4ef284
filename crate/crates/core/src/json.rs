//! JSON forms of divisors, reductor sets and Cartier data.
//!
//! Rationals are always exact `"p/q"` strings. A divisor is
//! `{"char": [residues…], "coeffs": {"E4": "7/4", …}}`; a cyclic character
//! may also be written as a bare integer on input.

use serde_json::{json, Map, Value};

use crate::error::{DivisorError, FamilyError};
use crate::exact::{parse_rational, Integer, Rational};
use crate::family::{PerRayTable, ReductorSet};
use crate::gdivisor::{format_monomial, GCartierDivisor, GWeilDivisor};
use crate::group::{Character, GroupData};
use crate::toric::Fan;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("expected {what} at {path}")]
    Shape { path: String, what: &'static str },
    #[error("{path}: {message}")]
    Value { path: String, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

fn shape(path: &str, what: &'static str) -> JsonError {
    JsonError::Shape {
        path: path.to_string(),
        what,
    }
}

fn value_err(path: &str, message: impl ToString) -> JsonError {
    JsonError::Value {
        path: path.to_string(),
        message: message.to_string(),
    }
}

pub fn character_to_json(chi: &Character) -> Value {
    json!(chi.residues())
}

pub fn character_from_json(g: &GroupData, v: &Value, path: &str) -> Result<Character, JsonError> {
    let residues: Vec<i64> = match v {
        Value::Number(_) => vec![v.as_i64().ok_or_else(|| shape(path, "an integer"))?],
        Value::Array(items) => items
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| shape(path, "an array of integers")))
            .collect::<Result<_, _>>()?,
        Value::String(s) => return g.parse_character(s).map_err(|e| value_err(path, e)),
        _ => return Err(shape(path, "a character")),
    };
    g.character(&residues).map_err(|e| value_err(path, e))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| value_err(path, e)),
        Value::Number(_) => v
            .as_i64()
            .map(|k| Rational::from_integer(k.into()))
            .ok_or_else(|| shape(path, "an integer or a \"p/q\" string")),
        _ => Err(shape(path, "a \"p/q\" string")),
    }
}

fn coeffs_json(fan: &Fan, d: &GWeilDivisor) -> Value {
    let mut map = Map::new();
    for (r, q) in d.coeffs() {
        map.insert(fan.ray(r).name(), json!(q.to_string()));
    }
    Value::Object(map)
}

pub fn divisor_to_json(fan: &Fan, d: &GWeilDivisor) -> Value {
    json!({
        "char": character_to_json(d.character()),
        "coeffs": coeffs_json(fan, d),
    })
}

/// Parses `{"E4": "7/4", …}` into ray-indexed coefficients.
pub fn coeffs_from_json(fan: &Fan, v: &Value, path: &str) -> Result<Vec<(usize, Rational)>, JsonError> {
    let map = v.as_object().ok_or_else(|| shape(path, "an object of ray coefficients"))?;
    let mut out = Vec::with_capacity(map.len());
    for (name, q) in map {
        let p = format!("{path}.{name}");
        let r = fan
            .ray_by_name(name)
            .ok_or_else(|| value_err(&p, DivisorError::UnknownRay(name.clone())))?;
        out.push((r, rational_from_json(q, &p)?));
    }
    Ok(out)
}

pub fn divisor_from_json(fan: &Fan, v: &Value, path: &str) -> Result<GWeilDivisor, JsonError> {
    let obj = v.as_object().ok_or_else(|| shape(path, "a divisor object"))?;
    let chi = obj
        .get("char")
        .ok_or_else(|| shape(path, "a \"char\" field"))?;
    let chi = character_from_json(fan.group(), chi, &format!("{path}.char"))?;
    let coeffs = match obj.get("coeffs") {
        Some(c) => coeffs_from_json(fan, c, &format!("{path}.coeffs"))?,
        None => Vec::new(),
    };
    Ok(GWeilDivisor::new(chi, coeffs))
}

pub fn set_to_json(fan: &Fan, set: &ReductorSet) -> Value {
    let divisors: Vec<Value> = set.divisors().iter().map(|d| divisor_to_json(fan, d)).collect();
    json!({ "divisors": divisors })
}

/// Accepts `{"divisors": [...]}` or a bare array of divisors.
pub fn set_from_json(fan: &Fan, v: &Value) -> Result<ReductorSet, JsonError> {
    let items = match v {
        Value::Array(items) => items,
        Value::Object(obj) => obj
            .get("divisors")
            .and_then(Value::as_array)
            .ok_or_else(|| shape("$", "a \"divisors\" array"))?,
        _ => return Err(shape("$", "a reductor set")),
    };
    let divisors = items
        .iter()
        .enumerate()
        .map(|(i, d)| divisor_from_json(fan, d, &format!("$.divisors[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReductorSet::new(fan.group(), divisors)?)
}

fn ints(v: &[Integer]) -> Vec<Value> {
    v.iter()
        .map(|x| match i64::try_from(x) {
            Ok(s) => json!(s),
            Err(_) => json!(x.to_string()),
        })
        .collect()
}

pub fn cartier_to_json(fan: &Fan, c: &GCartierDivisor) -> Value {
    let cones: Vec<Value> = c
        .per_cone
        .iter()
        .enumerate()
        .map(|(ci, m)| {
            let rays: Vec<String> = fan.cones()[ci].rays.iter().map(|&r| fan.ray(r).name()).collect();
            json!({
                "cone": ci + 1,
                "rays": rays,
                "exponent": ints(m),
                "monomial": format_monomial(m),
            })
        })
        .collect();
    json!({
        "char": character_to_json(&c.character),
        "cones": cones,
    })
}

pub fn table_to_json(fan: &Fan, table: &PerRayTable) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| json!(row.iter().map(|q| q.to_string()).collect::<Vec<_>>()))
        .collect();
    json!({
        "ray": fan.ray(table.ray).name(),
        "rows": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::running_example;
    use crate::exact::rat;
    use crate::family::canonical_family;

    #[test]
    fn divisor_shape() {
        let fan = running_example();
        let g = fan.group();
        let d = GWeilDivisor::new(g.character(&[6]).unwrap(), [(3, rat(7, 4)), (4, rat(1, 2)), (6, rat(-1, 4))]);
        let v = divisor_to_json(&fan, &d);
        assert_eq!(v, json!({"char": [6], "coeffs": {"E4": "7/4", "E5": "1/2", "E7": "-1/4"}}));
        assert_eq!(divisor_from_json(&fan, &v, "$").unwrap(), d);
    }

    #[test]
    fn integer_character_and_coefficient() {
        let fan = running_example();
        let v = json!({"char": 4, "coeffs": {"E5": 1, "e4": "1/2", "7": "4/8"}});
        let d = divisor_from_json(&fan, &v, "$").unwrap();
        assert_eq!(d.coeff(4), rat(1, 1));
        assert_eq!(d.coeff(3), rat(1, 2));
        assert_eq!(d.coeff(6), rat(1, 2));
    }

    #[test]
    fn set_round_trip() {
        let fan = running_example();
        let set = canonical_family(&fan);
        let v = set_to_json(&fan, &set);
        assert_eq!(set_from_json(&fan, &v).unwrap(), set);
    }

    #[test]
    fn rejects_bad_input() {
        let fan = running_example();
        for bad in [
            json!({"char": [1, 2], "coeffs": {}}),
            json!({"char": [1], "coeffs": {"E9": "1"}}),
            json!({"char": [1], "coeffs": {"E4": 0.5}}),
            json!({"coeffs": {}}),
        ] {
            assert!(divisor_from_json(&fan, &bad, "$").is_err(), "{bad}");
        }
        let short = json!({"divisors": [{"char": [0]}]});
        assert!(matches!(
            set_from_json(&fan, &short),
            Err(JsonError::Family(FamilyError::DivisorCount { .. }))
        ));
    }
}
