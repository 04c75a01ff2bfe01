//! Canonical JSON and typed accessors over `serde_json::Value`.
//!
//! Canonical form: object keys sorted, two-space indentation, arrays of
//! scalars on one line, no floats. Integers that fit in `i64` are written as
//! numbers, larger ones as decimal strings; rationals are `"p/q"` strings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{Map, Value};

use crate::dimgroup::LimitElement;
use crate::linalg::matrix::{IntMatrix, IntVector};
use crate::{Error, Result};

pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, indent + 1);
                let _ = write!(out, "{}: ", Value::String((*k).clone()));
                write_value(out, &map[*k], indent + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
        scalar => {
            let _ = write!(out, "{scalar}");
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

pub fn bigint(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rational(x: &BigRational) -> Value {
    if x.denom().is_one() {
        bigint(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn int_vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| int_vector(m.row(i))).collect())
}

pub fn element(e: &LimitElement) -> Value {
    object([("stage", Value::from(e.stage)), ("vector", int_vector(&e.vector))])
}

pub fn object<const N: usize>(entries: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// A value together with its JSON path, for error messages.
#[derive(Clone, Debug)]
pub struct At<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> At<'a> {
    pub fn root(value: &'a Value) -> Self {
        At {
            value,
            path: "$".to_string(),
        }
    }

    fn err(&self, reason: impl std::fmt::Display) -> Error {
        Error::invalid(&self.path, reason)
    }

    pub fn object(&self) -> Result<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    /// Rejects keys outside `allowed`.
    pub fn only_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.object()?.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::invalid(format!("{}.{k}", self.path), "unknown field"));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Result<At<'a>> {
        self.opt(key)?
            .ok_or_else(|| Error::invalid(format!("{}.{key}", self.path), "missing required field"))
    }

    pub fn opt(&self, key: &str) -> Result<Option<At<'a>>> {
        Ok(self.object()?.get(key).map(|value| At {
            value,
            path: format!("{}.{key}", self.path),
        }))
    }

    pub fn array(&self) -> Result<Vec<At<'a>>> {
        let items = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(items
            .iter()
            .enumerate()
            .map(|(i, value)| At {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    /// Integer given as a JSON number or a decimal string.
    pub fn bigint(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) => {
                if let Some(v) = n.as_i64() {
                    Ok(BigInt::from(v))
                } else if let Some(v) = n.as_u64() {
                    Ok(BigInt::from(v))
                } else {
                    Err(self.err("expected an integer, found a float"))
                }
            }
            Value::String(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| self.err(format!("expected an integer, found {s:?}"))),
            _ => Err(self.err("expected an integer")),
        }
    }

    pub fn usize(&self) -> Result<usize> {
        self.bigint()?
            .to_usize()
            .ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn i64(&self) -> Result<i64> {
        self.bigint()?.to_i64().ok_or_else(|| self.err("integer out of range"))
    }

    pub fn int_vector(&self) -> Result<IntVector> {
        self.array()?.iter().map(At::bigint).collect()
    }

    pub fn usize_vector(&self) -> Result<Vec<usize>> {
        self.array()?.iter().map(At::usize).collect()
    }

    /// Matrix given as a list of rows; `rows`·`cols` shape is checked by the
    /// caller, ragged rows are rejected here.
    pub fn int_matrix(&self, expected_cols: Option<usize>) -> Result<IntMatrix> {
        let rows = self.array()?;
        let data: Vec<IntVector> = rows.iter().map(At::int_vector).collect::<Result<_>>()?;
        let cols = expected_cols.or_else(|| data.first().map(Vec::len)).unwrap_or(0);
        for (i, r) in data.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::invalid(
                    format!("{}[{i}]", self.path),
                    format!("row has {} entries, expected {cols}", r.len()),
                ));
            }
        }
        Ok(IntMatrix::from_rows(data, cols).expect("rows checked"))
    }

    pub fn element(&self) -> Result<LimitElement> {
        self.only_keys(&["stage", "vector"])?;
        Ok(LimitElement::new(
            self.get("stage")?.usize()?,
            self.get("vector")?.int_vector()?,
        ))
    }
}

/// Parses UTF-8 JSON bytes, mapping syntax errors to `$`.
pub fn parse_bytes(bytes: &[u8]) -> Result<Value> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::invalid("$", format!("not UTF-8: {e}")))?;
    serde_json::from_str(text).map_err(|e| Error::invalid("$", format!("malformed JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_layout() {
        let v = json!({"b": [[1, 2], [3, 4]], "a": {"z": true, "y": "s"}, "c": []});
        let s = to_canonical_string(&v);
        assert_eq!(
            s,
            "{\n  \"a\": {\n    \"y\": \"s\",\n    \"z\": true\n  },\n  \"b\": [\n    [1, 2],\n    [3, 4]\n  ],\n  \"c\": []\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn big_integers_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(bigint(&big), Value::String(big.to_string()));
        assert_eq!(bigint(&BigInt::from(-7)), json!(-7));
        let v = json!(["-99999999999999999999999", 5]);
        let root = At::root(&v);
        let xs = root.int_vector().unwrap();
        assert_eq!(xs[0].to_string(), "-99999999999999999999999");
    }

    #[test]
    fn paths_in_errors() {
        let v = json!({"m": [[1, 2], [3]]});
        let err = At::root(&v).get("m").unwrap().int_matrix(None).unwrap_err();
        assert_eq!(err.to_string(), "$.m[1]: row has 1 entries, expected 2");
        let err = At::root(&v).get("missing").unwrap_err();
        assert_eq!(err.to_string(), "$.missing: missing required field");
        let f = json!(1.5);
        assert!(At::root(&f).bigint().is_err());
    }
}
