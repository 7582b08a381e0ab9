//! JSON document formats for quivers, algebras, modules, and
//! representations, plus serialization of verdicts, certificates, and
//! enumeration indexes. Parsing goes through the validating constructors,
//! so every invariant (acyclicity, associativity, intertwining) is enforced
//! with a located diagnostic.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fintype::{Enumeration, FiniteTypeCertificate};
use crate::matrix::Matrix;
use crate::monrep::Representation;
use crate::quiver::{Arrow, Quiver};

fn bad(at: &str, what: &str) -> Error {
    Error::Parse(format!("{at}: {what}"))
}

fn get<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(at, &format!("missing field {key:?}")))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(at, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(at, "expected an array"))
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Prime(p) => json!({ "kind": "prime", "p": p }),
        Field::Rational => json!({ "kind": "rational" }),
    }
}

pub fn parse_field(v: &Value, at: &str) -> Result<Field> {
    match get(v, "kind", at)?.as_str() {
        Some("prime") => {
            let p = get(v, "p", at)?
                .as_u64()
                .ok_or_else(|| bad(at, "field characteristic must be an integer"))?;
            Field::prime(p)
        }
        Some("rational") => Ok(Field::Rational),
        _ => Err(bad(at, "field kind must be \"prime\" or \"rational\"")),
    }
}

/// "fp:P" or "q", the CLI field spec.
pub fn parse_field_spec(s: &str) -> Result<Field> {
    if s == "q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad field spec {s:?}")))?;
        return Field::prime(p);
    }
    Err(Error::Parse(format!("field spec must be \"fp:P\" or \"q\", got {s:?}")))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let f = m.field();
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(f.format_scalar(m.get(i, j))))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn parse_entry(f: Field, v: &Value, at: &str) -> Result<crate::field::Scalar> {
    match v {
        Value::String(s) => f.parse_scalar(s),
        Value::Number(n) => f.parse_scalar(&n.to_string()),
        _ => Err(bad(at, "matrix entries must be strings or numbers")),
    }
}

pub fn parse_matrix(f: Field, v: &Value, at: &str) -> Result<Matrix> {
    let rows = as_array(v, at)?;
    let nrows = rows.len();
    let ncols = rows
        .first()
        .map(|r| as_array(r, at).map(|a| a.len()))
        .transpose()?
        .unwrap_or(0);
    let mut data = Vec::with_capacity(nrows * ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = as_array(row, &format!("{at}/{i}"))?;
        if row.len() != ncols {
            return Err(bad(&format!("{at}/{i}"), "ragged matrix rows"));
        }
        for (j, e) in row.iter().enumerate() {
            data.push(parse_entry(f, e, &format!("{at}/{i}/{j}"))?);
        }
    }
    Matrix::new(f, nrows, ncols, data)
}

/// Parses a matrix with an externally known shape, allowing empty rows to
/// be elided for zero-column matrices.
pub fn parse_matrix_shaped(f: Field, v: &Value, rows: usize, cols: usize, at: &str) -> Result<Matrix> {
    let m = parse_matrix(f, v, at)?;
    if m.rows() == rows && m.cols() == cols {
        return Ok(m);
    }
    if m.rows() == 0 && (rows == 0 || cols == 0) {
        return Ok(Matrix::zero(f, rows, cols));
    }
    Err(bad(at, &format!("expected a {rows}x{cols} matrix, got {}x{}", m.rows(), m.cols())))
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    json!({
        "vertices": q.vertex_count(),
        "arrows": q.arrows().iter().map(|a| json!({ "from": a.from, "to": a.to })).collect::<Vec<_>>(),
    })
}

pub fn parse_quiver(v: &Value, at: &str) -> Result<Quiver> {
    let n = as_usize(get(v, "vertices", at)?, &format!("{at}/vertices"))?;
    let arrows = as_array(get(v, "arrows", at)?, &format!("{at}/arrows"))?
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let here = format!("{at}/arrows/{i}");
            Ok(Arrow {
                from: as_usize(get(a, "from", &here)?, &format!("{here}/from"))?,
                to: as_usize(get(a, "to", &here)?, &format!("{here}/to"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Quiver::new(n, arrows)
}

/// Algebras serialize as explicit structure constants; the constructor
/// kinds are accepted on input.
pub fn algebra_to_json(a: &Algebra) -> Value {
    let f = a.field();
    let n = a.dim();
    let unit: Vec<Value> = (0..n)
        .map(|k| Value::String(f.format_scalar(a.unit().get(k, 0))))
        .collect();
    let mut mult = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let prod = a.product(&a.basis_element(i), &a.basis_element(j));
            row.push(Value::Array(
                (0..n).map(|k| Value::String(f.format_scalar(prod.get(k, 0)))).collect(),
            ));
        }
        mult.push(Value::Array(row));
    }
    json!({
        "kind": "structure_constants",
        "field": field_to_json(f),
        "dim": n,
        "unit": unit,
        "mult": mult,
    })
}

pub fn parse_algebra(v: &Value, at: &str) -> Result<Algebra> {
    match get(v, "kind", at)?.as_str() {
        Some("structure_constants") => {
            let f = parse_field(get(v, "field", at)?, &format!("{at}/field"))?;
            let n = as_usize(get(v, "dim", at)?, &format!("{at}/dim"))?;
            let unit_arr = as_array(get(v, "unit", at)?, &format!("{at}/unit"))?;
            if unit_arr.len() != n {
                return Err(bad(&format!("{at}/unit"), "unit length must equal dim"));
            }
            let unit_data = unit_arr
                .iter()
                .enumerate()
                .map(|(k, e)| parse_entry(f, e, &format!("{at}/unit/{k}")))
                .collect::<Result<Vec<_>>>()?;
            let unit = Matrix::new(f, n, 1, unit_data)?;
            let mult_arr = as_array(get(v, "mult", at)?, &format!("{at}/mult"))?;
            if mult_arr.len() != n {
                return Err(bad(&format!("{at}/mult"), "mult outer length must equal dim"));
            }
            let mut mult = Vec::with_capacity(n);
            for (i, row) in mult_arr.iter().enumerate() {
                let row = as_array(row, &format!("{at}/mult/{i}"))?;
                if row.len() != n {
                    return Err(bad(&format!("{at}/mult/{i}"), "mult row length must equal dim"));
                }
                let mut prow = Vec::with_capacity(n);
                for (j, cell) in row.iter().enumerate() {
                    let cell = as_array(cell, &format!("{at}/mult/{i}/{j}"))?;
                    if cell.len() != n {
                        return Err(bad(
                            &format!("{at}/mult/{i}/{j}"),
                            "structure-constant vector length must equal dim",
                        ));
                    }
                    let coeffs = cell
                        .iter()
                        .enumerate()
                        .map(|(k, e)| parse_entry(f, e, &format!("{at}/mult/{i}/{j}/{k}")))
                        .collect::<Result<Vec<_>>>()?;
                    prow.push(coeffs);
                }
                mult.push(prow);
            }
            Algebra::from_structure_constants(f, n, unit, mult)
        }
        Some("trunc_poly") => {
            let f = parse_field(get(v, "field", at)?, &format!("{at}/field"))?;
            let t = as_usize(get(v, "t", at)?, &format!("{at}/t"))?;
            Algebra::truncated_polynomial(f, t)
        }
        Some("path_algebra") => {
            let f = parse_field(get(v, "field", at)?, &format!("{at}/field"))?;
            let q = parse_quiver(get(v, "quiver", at)?, &format!("{at}/quiver"))?;
            Algebra::path_algebra(&q, f)
        }
        Some("tensor") => {
            let l = parse_algebra(get(v, "left", at)?, &format!("{at}/left"))?;
            let r = parse_algebra(get(v, "right", at)?, &format!("{at}/right"))?;
            Algebra::tensor(&l, &r)
        }
        Some("opposite") => {
            let of = parse_algebra(get(v, "of", at)?, &format!("{at}/of"))?;
            Ok(of.opposite())
        }
        _ => Err(bad(
            at,
            "algebra kind must be one of structure_constants, trunc_poly, path_algebra, tensor, opposite",
        )),
    }
}

pub fn module_to_json(m: &Module) -> Value {
    json!({
        "algebra": algebra_to_json(m.algebra()),
        "dim": m.dim(),
        "action": (0..m.algebra().dim()).map(|k| matrix_to_json(m.action(k))).collect::<Vec<_>>(),
    })
}

/// The "algebra" field may be an inline document or "@path" relative to
/// `base`.
pub fn parse_module(v: &Value, base: Option<&Path>, at: &str) -> Result<Module> {
    let alg_val = get(v, "algebra", at)?;
    let algebra = match alg_val.as_str() {
        Some(s) if s.starts_with('@') => {
            let doc = load_document(&s[1..], base)?;
            parse_algebra(&doc, &format!("{at}/algebra({s})"))?
        }
        _ => parse_algebra(alg_val, &format!("{at}/algebra"))?,
    };
    let dim = as_usize(get(v, "dim", at)?, &format!("{at}/dim"))?;
    let f = algebra.field();
    let action = as_array(get(v, "action", at)?, &format!("{at}/action"))?
        .iter()
        .enumerate()
        .map(|(k, mv)| parse_matrix_shaped(f, mv, dim, dim, &format!("{at}/action/{k}")))
        .collect::<Result<Vec<_>>>()?;
    if action.len() != algebra.dim() {
        return Err(bad(
            &format!("{at}/action"),
            "one action matrix per algebra basis element required",
        ));
    }
    Module::new(algebra, dim, action)
}

pub fn rep_to_json(r: &Representation) -> Value {
    json!({
        "quiver": quiver_to_json(r.quiver()),
        "algebra": algebra_to_json(r.algebra()),
        "branches": r.branches().iter().map(module_to_json).collect::<Vec<_>>(),
        "arrows": (0..r.quiver().arrows().len())
            .map(|i| matrix_to_json(r.arrow_map(i).matrix()))
            .collect::<Vec<_>>(),
    })
}

pub fn parse_rep(v: &Value, base: Option<&Path>, at: &str) -> Result<Representation> {
    let q = parse_quiver(get(v, "quiver", at)?, &format!("{at}/quiver"))?;
    let a = parse_algebra(get(v, "algebra", at)?, &format!("{at}/algebra"))?;
    let f = a.field();
    let branch_vals = as_array(get(v, "branches", at)?, &format!("{at}/branches"))?;
    let branches = branch_vals
        .iter()
        .enumerate()
        .map(|(i, bv)| parse_module(bv, base, &format!("{at}/branches/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let arrow_vals = as_array(get(v, "arrows", at)?, &format!("{at}/arrows"))?;
    if arrow_vals.len() != q.arrows().len() {
        return Err(bad(&format!("{at}/arrows"), "one matrix per quiver arrow required"));
    }
    let arrows = arrow_vals
        .iter()
        .zip(q.arrows().iter().cloned().collect::<Vec<_>>())
        .enumerate()
        .map(|(i, (mv, arr))| {
            let here = format!("{at}/arrows/{i}");
            let src = &branches[arr.from - 1];
            let dst = &branches[arr.to - 1];
            let m = parse_matrix_shaped(f, mv, dst.dim(), src.dim(), &here)?;
            ModuleMap::new(src.clone(), dst.clone(), m)
                .map_err(|e| bad(&here, &format!("arrow matrix does not intertwine: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, a, branches, arrows)
}

pub fn certificate_to_json(c: &FiniteTypeCertificate) -> Value {
    json!({
        "quiver": quiver_to_json(&c.quiver),
        "algebra": algebra_to_json(&c.algebra),
        "summands": c.summands.iter().map(rep_to_json).collect::<Vec<_>>(),
        "checks": {
            "generator": serde_json::to_value(&c.checks.generator).unwrap(),
            "relative_cogenerator": serde_json::to_value(&c.checks.relative_cogenerator).unwrap(),
            "gldim_end_le_2": serde_json::to_value(&c.checks.gldim_end_le_2).unwrap(),
        },
        "conclusion": c.conclusion,
    })
}

pub fn enumeration_index_to_json(e: &Enumeration) -> Value {
    let counts: Vec<Value> = e
        .counts
        .iter()
        .map(|(dv, c)| json!({ "dimension_vector": dv, "count": c }))
        .collect();
    json!({
        "total": e.reps.len(),
        "complete": e.complete,
        "counts": counts,
    })
}

pub fn load_document(path: &str, base: Option<&Path>) -> Result<Value> {
    let full = match base {
        Some(b) => b.join(path),
        None => Path::new(path).to_path_buf(),
    };
    let text = fs::read_to_string(&full)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", full.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: invalid JSON: {e}", full.display())))
}

/// Stable, human-diffable serialization: pretty JSON with sorted keys via
/// a canonical re-build.
pub fn to_canonical_string(v: &Value) -> String {
    fn canon(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut sorted: Vec<(&String, &Value)> = m.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(b.0));
                let mut out = Map::new();
                for (k, val) in sorted {
                    out.insert(k.clone(), canon(val));
                }
                Value::Object(out)
            }
            Value::Array(a) => Value::Array(a.iter().map(canon).collect()),
            other => other.clone(),
        }
    }
    let mut s = serde_json::to_string_pretty(&canon(v)).unwrap();
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Side;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn quiver_round_trip() {
        let q = Quiver::kronecker();
        let v = quiver_to_json(&q);
        assert_eq!(parse_quiver(&v, "/").unwrap(), q);
    }

    #[test]
    fn quiver_rejects_cycle() {
        let v = json!({ "vertices": 2, "arrows": [{"from":1,"to":2},{"from":2,"to":1}] });
        assert!(parse_quiver(&v, "/").is_err());
    }

    #[test]
    fn algebra_round_trip_and_kinds() {
        let a = Algebra::truncated_polynomial(f2(), 3).unwrap();
        let v = algebra_to_json(&a);
        assert_eq!(parse_algebra(&v, "/").unwrap(), a);
        let short = json!({ "kind": "trunc_poly", "t": 3, "field": { "kind": "prime", "p": 2 } });
        assert_eq!(parse_algebra(&short, "/").unwrap(), a);
        let pa = json!({
            "kind": "path_algebra",
            "field": { "kind": "prime", "p": 2 },
            "quiver": quiver_to_json(&Quiver::linear(2)),
        });
        assert_eq!(parse_algebra(&pa, "/").unwrap().dim(), 3);
    }

    #[test]
    fn module_round_trip_and_validation() {
        let a = Algebra::truncated_polynomial(f2(), 2).unwrap();
        let m = Module::regular(&a, Side::Left);
        let v = module_to_json(&m);
        assert_eq!(parse_module(&v, None, "/").unwrap(), m);
        // break the relation x^2 = 0
        let mut broken = v.clone();
        broken["action"][1] = json!([["1","0"],["0","1"]]);
        assert!(parse_module(&broken, None, "/").is_err());
    }

    #[test]
    fn rep_round_trip_and_intertwining_rejection() {
        let q = Quiver::linear(2);
        let a = Algebra::truncated_polynomial(f2(), 2).unwrap();
        let t = Module::regular(&a, Side::Left);
        let r = crate::monrep::proj_rep(&q, 2, f2()).tensor_with(&t).unwrap();
        let v = rep_to_json(&r);
        assert_eq!(parse_rep(&v, None, "/").unwrap(), r);
        let mut broken = v.clone();
        broken["arrows"][0] = json!([["1","1"],["0","1"]]);
        let err = parse_rep(&broken, None, "/").unwrap_err();
        assert!(format!("{err}").contains("arrows/0"));
    }

    #[test]
    fn rational_scalars() {
        let f = Field::Rational;
        let v = json!([["1/2", "-3"], ["0", "7/5"]]);
        let m = parse_matrix(f, &v, "/").unwrap();
        assert_eq!(matrix_to_json(&m), v);
    }

    #[test]
    fn canonical_output_is_stable() {
        let v = json!({ "b": 1, "a": { "d": 2, "c": 3 } });
        let s1 = to_canonical_string(&v);
        let s2 = to_canonical_string(&serde_json::from_str::<Value>(&s1).unwrap());
        assert_eq!(s1, s2);
        assert!(s1.find("\"a\"").unwrap() < s1.find("\"b\"").unwrap());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(parse_field_spec("fp:5").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field_spec("q").unwrap(), Field::Rational);
        assert!(parse_field_spec("f5").is_err());
    }
}
