//! JSON encodings shared by the library, the golden data files and the CLI.
//!
//! Integers and rationals are decimal strings ("-6", "1/3") so consumers
//! never lose precision; number field elements are coefficient arrays tagged
//! with their spec label; polynomials are graded-lex term lists.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hesse::FlexDatum;
use crate::matrix::{FieldMatrix, IntMatrix};
use crate::numfield::{NumberFieldElement, NumberFieldSpec};
use crate::plane::Plane;
use crate::poly::MultiPoly;
use crate::rational::{parse_rational, rational_to_string};

pub fn int_to_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn int_from_value(v: &Value) -> Result<BigInt> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::Json("expected integer string".into()))?;
    s.parse::<BigInt>()
        .map_err(|_| Error::Json(format!("not an integer: {s:?}")))
}

pub fn int_matrix_to_value(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(int_to_value).collect::<Vec<_>>(),
    })
}

pub fn int_matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Json("expected matrix object".into()))?;
    let rows = usize_field(obj, "rows")?;
    let cols = usize_field(obj, "cols")?;
    let raw = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("missing entries".into()))?;
    if raw.len() != rows * cols {
        return Err(Error::Json(format!(
            "expected {} entries, found {}",
            rows * cols,
            raw.len()
        )));
    }
    let entries = raw.iter().map(int_from_value).collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::new(rows, cols, entries))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Json(format!("missing count field {key:?}")))
}

pub fn nf_element_to_value(x: &NumberFieldElement) -> Value {
    json!({
        "spec": x.spec().label(),
        "coefficients": x
            .coefficients()
            .iter()
            .map(|c| Value::String(rational_to_string(c)))
            .collect::<Vec<_>>(),
    })
}

/// Coefficient array without the spec tag, for contexts where the spec is
/// carried once at the top level.
pub fn nf_coeffs_to_value(x: &NumberFieldElement) -> Value {
    Value::Array(
        x.coefficients()
            .iter()
            .map(|c| Value::String(rational_to_string(c)))
            .collect(),
    )
}

pub fn nf_element_from_coeffs(spec: &Arc<NumberFieldSpec>, v: &Value) -> Result<NumberFieldElement> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("expected coefficient array".into()))?;
    if arr.len() != spec.degree() {
        return Err(Error::Json(format!(
            "expected {} coefficients, found {}",
            spec.degree(),
            arr.len()
        )));
    }
    let coeffs = arr
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Json("expected rational string".into()))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NumberFieldElement::new(spec, coeffs))
}

pub fn field_matrix_to_value(m: &FieldMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "spec": m.spec().label(),
        "entries": m.entries().iter().map(nf_coeffs_to_value).collect::<Vec<_>>(),
    })
}

/// Terms in graded-lex order, each `{"exponents": [...], "coefficient": [...]}`.
pub fn poly_to_value(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "exponents": m.0.clone(),
                "coefficient": nf_coeffs_to_value(c),
            })
        })
        .collect();
    json!({
        "variables": p.nvars(),
        "spec": p.spec().label(),
        "terms": terms,
    })
}

/// A plane serializes as its canonical 3x6 solved system.
pub fn plane_to_value(p: &Plane) -> Value {
    field_matrix_to_value(p.canonical())
}

pub fn flex_to_value(f: &FlexDatum) -> Value {
    json!({
        "point": f.point.iter().map(nf_coeffs_to_value).collect::<Vec<_>>(),
        "tangentCoefficients": f.tangent.iter().map(nf_coeffs_to_value).collect::<Vec<_>>(),
    })
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldElements;

    #[test]
    fn int_matrix_round_trip() {
        let m = IntMatrix::from_i64(2, 3, &[1, -6, 0, 44, 5, -7]);
        let v = int_matrix_to_value(&m);
        let back = int_matrix_from_value(&v).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let v = json!({"rows": 2, "cols": 2, "entries": ["1", "2", "3"]});
        assert!(int_matrix_from_value(&v).is_err());
    }

    #[test]
    fn nf_round_trip_through_coeffs() {
        let spec = NumberFieldSpec::cyclotomic12();
        let x = spec.omega().unwrap() + spec.sqrt3().unwrap().scale(&crate::rational::rat_frac(1, 2));
        let v = nf_coeffs_to_value(&x);
        let back = nf_element_from_coeffs(&spec, &v).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn poly_serialization_is_graded_lex() {
        let spec = NumberFieldSpec::rationals();
        let one = NumberFieldElement::one(&spec);
        let p = crate::poly::poly_from_terms(
            &spec,
            2,
            &[
                (one.clone(), vec![2, 0]),
                (one.clone(), vec![0, 1]),
                (one, vec![1, 1]),
            ],
        );
        let v = poly_to_value(&p);
        let degs: Vec<u64> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                t["exponents"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| e.as_u64().unwrap())
                    .sum()
            })
            .collect();
        assert_eq!(degs, vec![1, 2, 2]);
    }
}
