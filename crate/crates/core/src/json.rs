//! JSON encodings for scalars, matrices, algebras, parameters and reports.
//!
//! Objects use `serde_json`'s sorted maps, so output is byte-for-byte
//! deterministic. Rational scalars are strings `"p/q"` (or `"p"`); irrational
//! values are `{"a": "p/q", "b": "r/s", "d": k}`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::classification::{RepresentativeLabel, RepresentativeTag};
use crate::derivations::{CharNilpotencyVerdict, DerivationSpace};
use crate::error::{Error, Result};
use crate::exactlinalg::{format_rational, parse_rational, Field, Matrix, Scalar};
use crate::families::{F1Params, F2Params, F3Params, FamilyParams};
use crate::isomorphism::{BasisChangeF1, BasisChangeF2, BasisChangeF3};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    if x.is_rational() {
        Value::String(format_rational(x.rational_part()))
    } else {
        json!({
            "a": format_rational(x.rational_part()),
            "b": format_rational(x.surd_part()),
            "d": x.radicand(),
        })
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| parse_err(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::Object(m) => {
            let part = |key: &str| -> Result<_> {
                match m.get(key) {
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) if n.is_i64() => parse_rational(&n.to_string()),
                    _ => Err(parse_err(format!(
                        "quadratic scalar needs string field {key:?}"
                    ))),
                }
            };
            let d = m
                .get("d")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("quadratic scalar needs integer field \"d\""))?;
            Scalar::quadratic(part("a")?, part("b")?, d)
        }
        other => Err(parse_err(format!("expected scalar, found {other}"))),
    }
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "rational"}),
        Field::Quadratic(d) => json!({"kind": "quadratic", "d": d}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::Rational),
        Some("quadratic") => {
            let d = v
                .get("d")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("quadratic field needs integer \"d\""))?;
            Field::quadratic(d)
        }
        _ => Err(parse_err(
            "field.kind must be \"rational\" or \"quadratic\"",
        )),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

pub fn algebra_to_json(l: &Algebra) -> Value {
    let table: Vec<Value> = l
        .nonzero_products()
        .map(|((i, j), coeffs)| {
            let c: Vec<Value> = coeffs
                .iter()
                .map(|(k, x)| json!([k, scalar_to_json(x)]))
                .collect();
            json!({"i": i, "j": j, "c": c})
        })
        .collect();
    json!({"dim": l.dim(), "field": field_to_json(l.field()), "table": table})
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    let dim = index(v.get("dim").unwrap_or(&Value::Null), "dim")?;
    let field = field_from_json(v.get("field").unwrap_or(&Value::Null))?;
    let table = v
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("\"table\" must be an array"))?;
    let mut entries = Vec::with_capacity(table.len());
    for row in table {
        let i = index(row.get("i").unwrap_or(&Value::Null), "i")?;
        let j = index(row.get("j").unwrap_or(&Value::Null), "j")?;
        let c = row
            .get("c")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("table entry needs array \"c\""))?;
        let mut coeffs = Vec::with_capacity(c.len());
        for pair in c {
            match pair.as_array().map(Vec::as_slice) {
                Some([k, x]) => coeffs.push((index(k, "k")?, scalar_from_json(x)?)),
                _ => return Err(parse_err("coefficient must be [k, scalar]")),
            }
        }
        entries.push(((i, j), coeffs));
    }
    Algebra::from_products(dim, field, entries)
}

pub fn load_algebra(text: &str) -> Result<Algebra> {
    algebra_from_json(&parse_text(text)?)
}

pub fn store_algebra(l: &Algebra) -> String {
    to_pretty(&algebra_to_json(l))
}

pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn indexed_map(n: usize, values: impl Fn(usize) -> Scalar) -> Value {
    let m: Map<String, Value> = (3..=n)
        .map(|k| (k.to_string(), scalar_to_json(&values(k))))
        .collect();
    Value::Object(m)
}

/// Reads `{"3": s, ..., "n": s}`; every index must be present, zeros included.
fn indexed_from_json(v: Option<&Value>, key: &str, n: usize) -> Result<Vec<Scalar>> {
    let m = v
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err(format!("\"{key}\" must be an object keyed by index")))?;
    let mut by_index = BTreeMap::new();
    for (k, x) in m {
        let idx: usize = k
            .parse()
            .map_err(|_| parse_err(format!("\"{key}\" key {k:?} is not an index")))?;
        if !(3..=n).contains(&idx) {
            return Err(Error::InvalidParams(format!(
                "\"{key}\" index {idx} outside 3..={n}"
            )));
        }
        by_index.insert(idx, scalar_from_json(x)?);
    }
    (3..=n)
        .map(|k| {
            by_index.remove(&k).ok_or_else(|| {
                Error::InvalidParams(format!(
                    "\"{key}\" is missing index {k} (zeros must be explicit)"
                ))
            })
        })
        .collect()
}

fn field_scalar(v: &Value, key: &str) -> Result<Scalar> {
    scalar_from_json(
        v.get(key)
            .ok_or_else(|| parse_err(format!("missing \"{key}\"")))?,
    )
}

pub fn params_to_json(p: &FamilyParams) -> Value {
    match p {
        FamilyParams::F1(p) => json!({
            "family": 1,
            "n": p.n(),
            "alpha": indexed_map(p.n(), |k| p.alpha(k)),
            "theta": scalar_to_json(&p.theta),
        }),
        FamilyParams::F2(p) => json!({
            "family": 2,
            "n": p.n(),
            "beta": indexed_map(p.n(), |k| p.beta(k)),
            "gamma": scalar_to_json(&p.gamma),
        }),
        FamilyParams::F3(p) => json!({
            "family": 3,
            "n": p.n(),
            "theta1": scalar_to_json(&p.theta1),
            "theta2": scalar_to_json(&p.theta2),
            "theta3": scalar_to_json(&p.theta3),
            "alpha_flag": p.alpha_flag(),
        }),
    }
}

pub fn params_from_json(v: &Value) -> Result<FamilyParams> {
    let family = v
        .get("family")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing integer \"family\""))?;
    let n = index(v.get("n").unwrap_or(&Value::Null), "n")?;
    match family {
        1 => Ok(FamilyParams::F1(F1Params::new(
            n,
            indexed_from_json(v.get("alpha"), "alpha", n)?,
            field_scalar(v, "theta")?,
        )?)),
        2 => Ok(FamilyParams::F2(F2Params::new(
            n,
            indexed_from_json(v.get("beta"), "beta", n)?,
            field_scalar(v, "gamma")?,
        )?)),
        3 => {
            let flag =
                match v.get("alpha_flag") {
                    None => 0,
                    Some(f) => f.as_u64().filter(|&f| f <= 1).ok_or_else(|| {
                        Error::InvalidParams("\"alpha_flag\" must be 0 or 1".into())
                    })? as u8,
                };
            Ok(FamilyParams::F3(F3Params::new(
                n,
                field_scalar(v, "theta1")?,
                field_scalar(v, "theta2")?,
                field_scalar(v, "theta3")?,
                flag,
            )?))
        }
        f => Err(Error::InvalidParams(format!(
            "family must be 1, 2 or 3, got {f}"
        ))),
    }
}

/// Requires `family` to match when the caller already knows it.
pub fn params_from_json_for(v: &Value, family: u8) -> Result<FamilyParams> {
    let p = params_from_json(v)?;
    if p.family() != family {
        return Err(Error::InvalidParams(format!(
            "params describe family {}, expected {family}",
            p.family()
        )));
    }
    Ok(p)
}

pub fn tag_to_json(t: &RepresentativeTag) -> Value {
    let payload = match &t.label {
        RepresentativeLabel::F1s { s } => json!({"s": s}),
        RepresentativeLabel::F2j { j } => json!({"j": j}),
        RepresentativeLabel::F2Even1 { beta_squared } => {
            json!({"beta_squared": scalar_to_json(beta_squared)})
        }
        _ => json!({}),
    };
    json!({
        "tag": t.to_string(),
        "label": t.label.name(),
        "family": t.family,
        "payload": payload,
        "char_nilpotent": t.label.is_char_nilpotent(),
    })
}

pub fn verdict_to_json(v: &CharNilpotencyVerdict) -> Value {
    json!({
        "der_dim": v.der_dim,
        "char_nilpotent": v.is_char_nilpotent,
        "witness": v.witness.as_ref().map_or(Value::Null, matrix_to_json),
        "method": v.method.as_str(),
        "witness_search_exhausted": v.witness_search_exhausted,
    })
}

pub fn derivation_space_to_json(d: &DerivationSpace) -> Value {
    json!({
        "dim": d.dim(),
        "algebra_dim": d.dim_algebra,
        "source": d.source.as_str(),
        "basis": d.basis.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

fn change_field(m: &Map<String, Value>, key: &str) -> Result<Scalar> {
    scalar_from_json(
        m.get(key)
            .ok_or_else(|| parse_err(format!("basis change needs \"{key}\"")))?,
    )
}

fn change_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err("basis change must be an object"))
}

pub fn change_f1_from_json(v: &Value) -> Result<BasisChangeF1> {
    let m = change_object(v)?;
    Ok(BasisChangeF1 {
        a: change_field(m, "A")?,
        b: change_field(m, "B")?,
    })
}

pub fn change_f2_from_json(v: &Value) -> Result<BasisChangeF2> {
    let m = change_object(v)?;
    Ok(BasisChangeF2 {
        a: change_field(m, "A")?,
        b: change_field(m, "B")?,
        d: change_field(m, "D")?,
    })
}

pub fn change_f3_from_json(v: &Value) -> Result<BasisChangeF3> {
    let m = change_object(v)?;
    Ok(BasisChangeF3 {
        a0: change_field(m, "A0")?,
        a1: change_field(m, "A1")?,
        b1: change_field(m, "B1")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_example;
    use num_rational::BigRational;

    #[test]
    fn scalar_round_trip() {
        let r = Scalar::ratio(-7, 3);
        assert_eq!(scalar_to_json(&r), json!("-7/3"));
        assert_eq!(scalar_from_json(&scalar_to_json(&r)).unwrap(), r);
        let s = Scalar::sqrt_of_rational(&BigRational::new(1.into(), 3.into())).unwrap();
        let v = scalar_to_json(&s);
        assert_eq!(v, json!({"a": "0", "b": "1/3", "d": 3}));
        assert_eq!(scalar_from_json(&v).unwrap(), s);
        assert!(scalar_from_json(&json!("1/0")).is_err());
        assert!(scalar_from_json(&json!("x")).is_err());
        assert!(scalar_from_json(&json!({"a": "1", "b": "1", "d": 4})).is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let l = build_example();
        let text = store_algebra(&l);
        let back = load_algebra(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(store_algebra(&back), text);
    }

    #[test]
    fn algebra_rejects_bad_input() {
        let zero_den =
            r#"{"dim":2,"field":{"kind":"rational"},"table":[{"i":0,"j":0,"c":[[1,"1/0"]]}]}"#;
        assert!(matches!(load_algebra(zero_den), Err(Error::Parse(_))));
        let out_of_range =
            r#"{"dim":2,"field":{"kind":"rational"},"table":[{"i":0,"j":0,"c":[[2,"1"]]}]}"#;
        assert!(matches!(load_algebra(out_of_range), Err(Error::Shape(_))));
        let wrong_field = r#"{"dim":2,"field":{"kind":"rational"},"table":[{"i":0,"j":0,"c":[[1,{"a":"0","b":"1","d":2}]]}]}"#;
        assert!(matches!(
            load_algebra(wrong_field),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn params_round_trip_and_explicit_zeros() {
        let p = FamilyParams::F1(F1Params::from_ints(5, &[1, -2, 5], 5).unwrap());
        let v = params_to_json(&p);
        assert_eq!(
            v,
            json!({"family": 1, "n": 5, "alpha": {"3": "1", "4": "-2", "5": "5"}, "theta": "5"})
        );
        assert_eq!(params_from_json(&v).unwrap(), p);
        let missing = json!({"family": 1, "n": 5, "alpha": {"3": "1", "5": "5"}, "theta": "5"});
        assert!(params_from_json(&missing).is_err());
        let f3 = FamilyParams::F3(F3Params::from_ints(5, [1, 2, 1], 1).unwrap());
        assert_eq!(params_from_json(&params_to_json(&f3)).unwrap(), f3);
        assert!(params_from_json_for(&params_to_json(&f3), 1).is_err());
    }
}
