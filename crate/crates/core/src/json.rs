//! JSON documents exchanged by the command-line tool.
//!
//! Every document carries `"schema": "divalg/1"`. Floats are written in
//! shortest round-trip form, so reading a file back reproduces the exact
//! structure constants.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{Algebra, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::normal_form::{ClassDatum, Family};

pub const SCHEMA: &str = "divalg/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    schema: String,
    dim: usize,
    /// Flat `c[i][j][k]` at index `(i·n + j)·n + k`.
    constants: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn schema_err(e: impl std::fmt::Display) -> Error {
    Error::Schema(e.to_string())
}

fn check_schema(found: &str) -> Result<()> {
    if found != SCHEMA {
        return Err(Error::Schema(format!("expected schema {SCHEMA}, found {found}")));
    }
    Ok(())
}

pub fn algebra_to_json(a: &Algebra) -> String {
    let doc = AlgebraDoc {
        schema: SCHEMA.to_string(),
        dim: a.dim(),
        constants: a.constants().to_vec(),
        labels: a.labels().map(<[String]>::to_vec),
        tol: a.tol(),
    };
    serde_json::to_string_pretty(&doc).expect("algebra documents serialize")
}

pub fn algebra_from_json(src: &str) -> Result<Algebra> {
    let doc: AlgebraDoc = serde_json::from_str(src).map_err(schema_err)?;
    check_schema(&doc.schema)?;
    if doc.constants.len() != doc.dim.pow(3) {
        return Err(Error::Schema(format!("{} constants for dimension {}", doc.constants.len(), doc.dim)));
    }
    if doc.tol.is_nan() || doc.tol <= 0.0 {
        return Err(Error::Schema(format!("tol must be positive, got {}", doc.tol)));
    }
    let mut a = Algebra::new(doc.dim, doc.constants)?.with_tol(doc.tol);
    if let Some(labels) = doc.labels {
        a = a.with_labels(labels)?;
    }
    Ok(a)
}

/// Reads a [`ClassDatum`]; `family` fills in or must agree with the document.
pub fn class_datum_from_json(src: &str, family: Option<Family>) -> Result<ClassDatum> {
    let mut v: Map<String, Value> = serde_json::from_str(src).map_err(schema_err)?;
    if let Some(s) = v.remove("schema") {
        check_schema(s.as_str().unwrap_or_default())?;
    }
    if let Some(f) = family {
        let given = v.insert("family".into(), Value::String(f.to_string()));
        if let Some(g) = given {
            if g.as_str() != Some(&f.to_string()) {
                return Err(Error::Schema(format!("document family {g} differs from {f}")));
            }
        }
    }
    let x: ClassDatum = serde_json::from_value(Value::Object(v)).map_err(schema_err)?;
    ClassDatum::new(x.family, x.u, x.c, x.b, x.quad, x.beta)
}

/// Serializes `value` with the schema tag and a `kind` field added.
pub fn report<T: Serialize>(kind: &str, value: &T) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    map.insert("kind".into(), Value::String(kind.into()));
    match serde_json::to_value(value).expect("reports serialize") {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::hurwitz;

    #[test]
    fn algebra_round_trip_is_exact() {
        let o = hurwitz(8).unwrap().into_algebra().scaled(1.0 / 3.0);
        let back = algebra_from_json(&algebra_to_json(&o)).unwrap();
        assert_eq!(back.constants(), o.constants());
        assert_eq!(back.dim(), 8);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(algebra_from_json("{}"), Err(Error::Schema(_))));
        let wrong = r#"{"schema":"divalg/1","dim":2,"constants":[1,0,0,1,0,1]}"#;
        assert!(matches!(algebra_from_json(wrong), Err(Error::Schema(_))));
        let version = r#"{"schema":"divalg/0","dim":1,"constants":[1]}"#;
        assert!(matches!(algebra_from_json(version), Err(Error::Schema(_))));
    }

    #[test]
    fn class_datum_document() {
        let src = r#"{"c":[0,0,2],"b":[1,2,3],"B":[[1,0,0],[0,2,0],[0,0,3]],"beta":1}"#;
        let x = class_datum_from_json(src, Some(Family::B00)).unwrap();
        assert_eq!(x.c, [0.0, 0.0, 1.0]);
        assert!(class_datum_from_json(src, None).is_err());
        let tagged = r#"{"family":"B01","c":[0,0,2],"b":[1,2,3],"B":[[1,0,0],[0,2,0],[0,0,3]],"beta":1}"#;
        assert!(class_datum_from_json(tagged, Some(Family::B00)).is_err());
        assert_eq!(class_datum_from_json(tagged, None).unwrap().c, [0.0, 0.0, 2.0]);
    }
}
