//! Canonical JSON for triangulations, piecewise-linear maps and multiplicity
//! reports.
//!
//! Points are written as homogeneous integer tuples `[a1,...,an,d]`; integers
//! are JSON numbers of arbitrary length. Output is compact with object keys
//! in sorted order, so equal objects serialize to identical bytes.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::arith::{HomogeneousVector, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::{RationalSimplex, Triangulation};
use crate::mcnaughton::{AffinePiece, PwlMap};
use crate::retract::MultiplicityReport;

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn int_value(a: &BigInt) -> Value {
    Value::Number(Number::from_str(&a.to_string()).expect("integers are valid JSON numbers"))
}

fn point_value(p: &RationalPoint) -> Value {
    Value::Array(p.to_homogeneous().entries().iter().map(int_value).collect())
}

fn simplex_value(s: &RationalSimplex) -> Value {
    Value::Array(s.vertices().iter().map(point_value).collect())
}

pub fn triangulation_value(t: &Triangulation) -> Value {
    json!({
        "ambient_dim": t.ambient_dim(),
        "vertices": t.vertices().iter().map(point_value).collect::<Vec<_>>(),
        "maximal_simplexes": t.maximal_simplexes(),
    })
}

pub fn pwl_map_value(f: &PwlMap) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|rows| {
            Value::Array(
                rows.iter()
                    .map(|r| {
                        Value::Array(
                            r.coefficients()
                                .iter()
                                .chain(std::iter::once(r.constant()))
                                .map(int_value)
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "domain": triangulation_value(f.domain()),
        "codomain_dim": f.codomain_dim(),
        "pieces": pieces,
    })
}

pub fn report_value(r: &MultiplicityReport) -> Value {
    match r {
        MultiplicityReport::Finite { count, certificates } => json!({
            "verdict": "FINITE",
            "count": count,
            "certificates": certificates.iter().map(triangulation_value).collect::<Vec<_>>(),
        }),
        MultiplicityReport::Infinite { witness } => json!({
            "verdict": "INFINITE",
            "witness": simplex_value(witness),
        }),
    }
}

pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

pub fn triangulation_to_json(t: &Triangulation) -> String {
    to_canonical_string(&triangulation_value(t))
}

pub fn pwl_map_to_json(f: &PwlMap) -> String {
    to_canonical_string(&pwl_map_value(f))
}

pub fn report_to_json(r: &MultiplicityReport) -> String {
    to_canonical_string(&report_value(r))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| format_err(format!("missing field `{key}`")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| format_err("expected an object"))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| format_err("expected an array"))
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| format_err("expected a non-negative integer"))
}

fn int_of(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| format_err(format!("`{n}` is not an integer")))
        }
        _ => Err(format_err("expected an integer")),
    }
}

fn ints_of(v: &Value) -> Result<Vec<BigInt>> {
    array(v)?.iter().map(int_of).collect()
}

fn point_of(v: &Value, n: usize) -> Result<RationalPoint> {
    let h = HomogeneousVector::new(ints_of(v)?)?;
    if h.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: h.len(),
        });
    }
    Ok(h.to_point())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| format_err(e.to_string()))
}

/// The triangulation and, for each listed simplex, its sorted point set.
fn triangulation_parts(v: &Value) -> Result<(Triangulation, Vec<Vec<RationalPoint>>)> {
    let obj = object(v)?;
    let n = usize_of(field(obj, "ambient_dim")?)?;
    let vertices = array(field(obj, "vertices")?)?
        .iter()
        .map(|p| point_of(p, n))
        .collect::<Result<Vec<_>>>()?;
    let simplexes = array(field(obj, "maximal_simplexes")?)?
        .iter()
        .map(|s| array(s)?.iter().map(usize_of).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let t = Triangulation::new(n, vertices.clone(), simplexes.clone())?;
    if !t.is_proper() {
        return Err(Error::InvalidTriangulation(
            "simplexes do not meet in common faces".into(),
        ));
    }
    let sets = simplexes
        .iter()
        .map(|s| {
            let mut pts: Vec<RationalPoint> = s.iter().map(|&i| vertices[i].clone()).collect();
            pts.sort();
            pts
        })
        .collect();
    Ok((t, sets))
}

pub fn triangulation_from_value(v: &Value) -> Result<Triangulation> {
    Ok(triangulation_parts(v)?.0)
}

pub fn pwl_map_from_value(v: &Value) -> Result<PwlMap> {
    let obj = object(v)?;
    let (domain, sets) = triangulation_parts(field(obj, "domain")?)?;
    let n = domain.ambient_dim();
    let m = usize_of(field(obj, "codomain_dim")?)?;
    let pieces = array(field(obj, "pieces")?)?;
    if pieces.len() != sets.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} piece lists for {} simplexes",
            pieces.len(),
            sets.len()
        )));
    }
    let mut by_set: HashMap<&Vec<RationalPoint>, Vec<AffinePiece>> = HashMap::new();
    for (set, rows) in sets.iter().zip(pieces) {
        let rows = array(rows)?
            .iter()
            .map(|r| {
                let mut c = ints_of(r)?;
                if c.len() != n + 1 {
                    return Err(Error::ShapeMismatch(format!(
                        "row of length {} in dimension {n}",
                        c.len()
                    )));
                }
                let b = c.pop().expect("non-empty");
                Ok(AffinePiece::new(c, b))
            })
            .collect::<Result<Vec<_>>>()?;
        by_set.insert(set, rows);
    }
    let aligned = (0..domain.len())
        .map(|i| {
            by_set
                .get(&domain.simplex_points(i))
                .cloned()
                .ok_or_else(|| format_err("domain lists a non-maximal simplex"))
        })
        .collect::<Result<Vec<_>>>()?;
    if aligned.len() != sets.len() {
        return Err(format_err("domain lists a non-maximal or repeated simplex"));
    }
    PwlMap::new(domain, m, aligned)
}

pub fn report_from_value(v: &Value) -> Result<MultiplicityReport> {
    let obj = object(v)?;
    match field(obj, "verdict")?.as_str() {
        Some("FINITE") => {
            let certificates = array(field(obj, "certificates")?)?
                .iter()
                .map(triangulation_from_value)
                .collect::<Result<Vec<_>>>()?;
            let count = usize_of(field(obj, "count")?)?;
            if count != certificates.len() {
                return Err(format_err("count disagrees with the certificates"));
            }
            Ok(MultiplicityReport::Finite { count, certificates })
        }
        Some("INFINITE") => {
            let pts = array(field(obj, "witness")?)?;
            let n = pts
                .first()
                .map(|p| array(p).map(|a| a.len().saturating_sub(1)))
                .transpose()?
                .unwrap_or(0);
            let witness = pts.iter().map(|p| point_of(p, n)).collect::<Result<Vec<_>>>()?;
            Ok(MultiplicityReport::Infinite {
                witness: RationalSimplex::new(witness)?,
            })
        }
        _ => Err(format_err("verdict must be FINITE or INFINITE")),
    }
}

pub fn triangulation_from_json(text: &str) -> Result<Triangulation> {
    triangulation_from_value(&parse_json(text)?)
}

pub fn pwl_map_from_json(text: &str) -> Result<PwlMap> {
    pwl_map_from_value(&parse_json(text)?)
}

pub fn report_from_json(text: &str) -> Result<MultiplicityReport> {
    report_from_value(&parse_json(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{canonical, fibonacci_stage};
    use crate::retract::multiplicity;

    #[test]
    fn cube_text() {
        assert_eq!(
            triangulation_to_json(&Triangulation::cube(1)),
            r#"{"ambient_dim":1,"maximal_simplexes":[[0,1]],"vertices":[[0,1],[1,1]]}"#
        );
    }

    #[test]
    fn round_trips() {
        let f = fibonacci_stage(3).unwrap().sigma.map().clone();
        let text = pwl_map_to_json(&f);
        let back = pwl_map_from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(pwl_map_to_json(&back), text);

        let r = multiplicity(&canonical("half_meet").unwrap()).unwrap();
        let text = report_to_json(&r);
        assert_eq!(report_from_json(&text).unwrap(), r);
        let i = multiplicity(&canonical("L_fold").unwrap()).unwrap();
        assert_eq!(report_from_json(&report_to_json(&i)).unwrap(), i);
    }

    #[test]
    fn big_integers_survive() {
        let big = "123456789012345678901234567890";
        let text = format!(
            r#"{{"ambient_dim":1,"vertices":[[0,1],[1,{big}]],"maximal_simplexes":[[0,1]]}}"#
        );
        let t = triangulation_from_json(&text).unwrap();
        assert!(triangulation_to_json(&t).contains(big));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(triangulation_from_json("{"), Err(Error::Format(_))));
        assert!(matches!(
            triangulation_from_json(r#"{"ambient_dim":1,"vertices":[[2,4]],"maximal_simplexes":[[0]]}"#),
            Err(Error::InvalidHomogeneous(_))
        ));
        assert!(matches!(
            triangulation_from_json(r#"{"ambient_dim":1,"vertices":[[0,1]],"maximal_simplexes":[[3]]}"#),
            Err(Error::InvalidTriangulation(_))
        ));
    }
}
