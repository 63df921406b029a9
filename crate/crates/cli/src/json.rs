//! JSON encoding of fields, scalars, matrices, polynomials and parameter arrays.
//!
//! Scalars are strings ("3", "-7/2", or a residue for GF(p)); integers are
//! accepted on input. A field header is `{"kind":"rational"}` or
//! `{"kind":"prime","p":101}`.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use thvand::field::{BiPoly, Field, Matrix, Poly, Scalar};
use thvand::params::ParameterArray;
use thvand::report::Report;

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "rational"}),
        Field::Prime(p) => json!({"kind": "prime", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::Rational),
        Some("prime") => {
            let p = v.get("p").and_then(Value::as_u64).context("prime field needs an integer \"p\"")?;
            Ok(Field::prime(p)?)
        }
        _ => bail!("field must be {{\"kind\":\"rational\"}} or {{\"kind\":\"prime\",\"p\":…}}"),
    }
}

/// Parses a field flag: `q`, `rational`, `101` or `gf101`.
pub fn field_from_flag(s: &str) -> Result<Field> {
    let t = s.trim().to_ascii_lowercase();
    if t == "q" || t == "rational" {
        return Ok(Field::Rational);
    }
    let digits = t.trim_start_matches("gf").trim_matches(|c| c == '(' || c == ')');
    let p: u64 = digits.parse().map_err(|_| anyhow!("unknown field {s:?}"))?;
    Ok(Field::prime(p)?)
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn scalar_from_json(f: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(f.parse(s)?),
        Value::Number(n) if n.is_i64() => Ok(f.from_i64(n.as_i64().expect("checked"))),
        _ => bail!("expected a scalar string, got {v}"),
    }
}

pub fn scalars_to_json(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(scalar_to_json).collect())
}

pub fn scalars_from_json(f: Field, v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .with_context(|| format!("expected an array, got {v}"))?
        .iter()
        .map(|x| scalar_from_json(f, x))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars_to_json(r)).collect())
}

pub fn matrix_from_json(f: Field, v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .with_context(|| format!("expected an array of rows, got {v}"))?
        .iter()
        .map(|r| scalars_from_json(f, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, rows)?)
}

pub fn poly_to_json(p: &Poly) -> Value {
    scalars_to_json(p.coeffs())
}

pub fn polys_to_json(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly_to_json).collect())
}

/// Coefficient grid indexed [degree in λ][degree in μ].
pub fn bipoly_to_json(p: &BiPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|r| scalars_to_json(r)).collect())
}

pub fn pa_to_json(pa: &ParameterArray) -> Value {
    json!({
        "field": field_to_json(pa.field()),
        "d": pa.d(),
        "theta": scalars_to_json(pa.thetas()),
        "theta_star": scalars_to_json(pa.theta_stars()),
        "phi": scalars_to_json(pa.phis()),
    })
}

/// Reads the field header and the three sequences; the optional "d" must
/// agree with them.
pub fn pa_from_json(v: &Value) -> Result<ParameterArray> {
    let f = field_from_json(v.get("field").context("missing \"field\"")?)?;
    let get = |k: &str| scalars_from_json(f, v.get(k).with_context(|| format!("missing \"{k}\""))?);
    let pa = ParameterArray::new(get("theta")?, get("theta_star")?, get("phi")?)?;
    if let Some(d) = v.get("d") {
        let d = d.as_u64().context("\"d\" must be a nonnegative integer")?;
        if d as usize != pa.d() {
            bail!("\"d\" is {d} but the sequences have diameter {}", pa.d());
        }
    }
    Ok(pa)
}

pub fn report_to_json(r: &Report) -> Value {
    let checks: Vec<Value> = r
        .checks()
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), c.name.clone().into());
            m.insert("passed".into(), c.passed.into());
            if !c.detail.is_empty() {
                m.insert("detail".into(), c.detail.clone().into());
            }
            Value::Object(m)
        })
        .collect();
    json!({"passed": r.all_passed(), "checks": checks})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa_round_trip() {
        let f = Field::prime(7).unwrap();
        let pa = ParameterArray::from_i64(f, &[0, 1, 5], &[2, 3, 4], &[1, 6]).unwrap();
        assert_eq!(pa_from_json(&pa_to_json(&pa)).unwrap(), pa);
        let q = ParameterArray::new(
            vec![Field::Rational.ratio(-7, 2).unwrap(), Field::Rational.one()],
            vec![Field::Rational.zero(), Field::Rational.one()],
            vec![Field::Rational.ratio(1, 3).unwrap()],
        )
        .unwrap();
        assert_eq!(pa_from_json(&pa_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn flags() {
        assert_eq!(field_from_flag("q").unwrap(), Field::Rational);
        assert_eq!(field_from_flag("GF(101)").unwrap(), Field::Prime(101));
        assert_eq!(field_from_flag("13").unwrap(), Field::Prime(13));
        assert!(field_from_flag("12").is_err());
    }

    #[test]
    fn wrong_d_rejected() {
        let v = json!({"field": {"kind": "rational"}, "d": 2, "theta": ["0", "1"], "theta_star": [0, 1], "phi": ["1"]});
        assert!(pa_from_json(&v).is_err());
    }
}
