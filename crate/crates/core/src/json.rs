//! JSON interchange for every input kind. Indices are 1-based, scalars are
//! strings in the canonical text grammar, matrices are row-major with column
//! `i` holding the image of `e_i`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{zero_based_tuple, LinearFunctional, NLieAlgebra};
use crate::catalog::Builtin;
use crate::cohomology::Representation;
use crate::constructions::CommAssocAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::nijenhuis::DeformationFamily;
use crate::scalar::{format_scalar, parse_scalar, Field, Scalar};
use crate::tuples::one_based;

type Sparse = BTreeMap<String, String>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    on: Vec<usize>,
    value: Sparse,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    kind: String,
    arity: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    brackets: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    kind: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRect {
    kind: String,
    rows: usize,
    cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctional {
    kind: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    values: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRhoEntry {
    on: Vec<usize>,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRepresentation {
    kind: String,
    vdim: usize,
    rho: Vec<RawRhoEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCommAssoc {
    kind: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    products: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOmega {
    brackets: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    kind: String,
    base: RawAlgebra,
    omegas: Vec<RawOmega>,
}

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

/// Byte offset of a 1-based line and column.
fn offset(text: &str, line: usize, column: usize) -> usize {
    text.split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + column.saturating_sub(1)
}

fn from_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn expect_kind(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Json(format!("expected kind `{expected}`, found `{found}`")))
    }
}

/// The `kind` tag of a document.
pub fn kind_of(text: &str) -> Result<String> {
    Ok(from_text::<KindOnly>(text)?.kind)
}

fn scalar(text: &str, field: Field, path: &str) -> Result<Scalar> {
    parse_scalar(text, field).map_err(|e| Error::Json(format!("{path}: {e}")))
}

fn sparse_vector(map: &Sparse, dim: usize, field: Field, path: &str) -> Result<Vector> {
    let mut v = Vector::zeros(field, dim);
    for (k, s) in map {
        let i: usize = k
            .parse()
            .map_err(|_| Error::Json(format!("{path}: key `{k}` is not a positive index")))?;
        let i = zero_based_tuple(&[i], dim, false)?[0];
        v[i] = scalar(s, field, &format!("{path}.{k}"))?;
    }
    Ok(v)
}

fn to_sparse(v: &Vector) -> Sparse {
    v.support()
        .map(|(i, s)| ((i + 1).to_string(), format_scalar(s)))
        .collect()
}

fn matrix(rows: &[Vec<String>], nrows: usize, ncols: usize, field: Field, path: &str) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::ShapeMismatch {
            expected_rows: nrows,
            expected_cols: ncols,
            rows: rows.len(),
            cols: rows.iter().map(Vec::len).find(|&l| l != ncols).unwrap_or(ncols),
        });
    }
    let entries = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| scalar(s, field, &format!("{path}[{}][{}]", r + 1, c + 1)))
                .collect()
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(field, entries)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.entries()
        .iter()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect()
}

fn field_tag(field: Field) -> Option<Field> {
    Some(field)
}

fn algebra_from_raw(raw: &RawAlgebra) -> Result<NLieAlgebra> {
    expect_kind(&raw.kind, "n-lie")?;
    let field = raw.field.unwrap_or(Field::Rational);
    let mut alg = NLieAlgebra::new(raw.arity, raw.dim, field)?;
    fill_brackets(&mut alg, &raw.brackets, "brackets")?;
    Ok(alg)
}

fn fill_brackets(alg: &mut NLieAlgebra, entries: &[RawEntry], path: &str) -> Result<()> {
    for (k, entry) in entries.iter().enumerate() {
        if entry.on.len() != alg.arity() {
            return Err(Error::ArityMismatch {
                expected: alg.arity(),
                found: entry.on.len(),
            });
        }
        let key = zero_based_tuple(&entry.on, alg.dim(), true)?;
        if alg.constant(&key).is_some() {
            return Err(Error::InvalidTuple {
                tuple: entry.on.clone(),
                reason: "bracket given twice".into(),
            });
        }
        let value = sparse_vector(
            &entry.value,
            alg.dim(),
            alg.field(),
            &format!("{path}[{}].value", k + 1),
        )?;
        alg.set_bracket(&key, value)?;
    }
    Ok(())
}

fn bracket_entries(alg: &NLieAlgebra) -> Vec<RawEntry> {
    alg.constants()
        .map(|(key, v)| RawEntry {
            on: one_based(key),
            value: to_sparse(v),
        })
        .collect()
}

fn algebra_raw(alg: &NLieAlgebra) -> RawAlgebra {
    RawAlgebra {
        kind: "n-lie".into(),
        arity: alg.arity(),
        dim: alg.dim(),
        field: field_tag(alg.field()),
        brackets: bracket_entries(alg),
    }
}

/// `{"kind":"n-lie","arity":n,"dim":d,"field":"Q","brackets":[{"on":[..],"value":{..}}]}`;
/// the field defaults to ℚ.
pub fn parse_algebra(text: &str) -> Result<NLieAlgebra> {
    algebra_from_raw(&from_text(text)?)
}

pub fn algebra_to_json(alg: &NLieAlgebra) -> String {
    pretty(&algebra_raw(alg))
}

/// `{"kind":"linear-map","dim":d,"matrix":[[..],..]}`; the field defaults to `default`.
pub fn parse_linear_map(text: &str, default: Field) -> Result<Matrix> {
    let raw: RawMap = from_text(text)?;
    expect_kind(&raw.kind, "linear-map")?;
    matrix(&raw.matrix, raw.dim, raw.dim, raw.field.unwrap_or(default), "matrix")
}

pub fn linear_map_to_json(m: &Matrix) -> String {
    pretty(&RawMap {
        kind: "linear-map".into(),
        dim: m.rows(),
        field: field_tag(m.field()),
        matrix: matrix_rows(m),
    })
}

/// `{"kind":"rect-map","rows":d,"cols":k,"matrix":[[..],..]}`.
pub fn parse_rect_map(text: &str, default: Field) -> Result<Matrix> {
    let raw: RawRect = from_text(text)?;
    expect_kind(&raw.kind, "rect-map")?;
    matrix(&raw.matrix, raw.rows, raw.cols, raw.field.unwrap_or(default), "matrix")
}

pub fn rect_map_to_json(m: &Matrix) -> String {
    pretty(&RawRect {
        kind: "rect-map".into(),
        rows: m.rows(),
        cols: m.cols(),
        field: field_tag(m.field()),
        matrix: matrix_rows(m),
    })
}

/// `{"kind":"functional","dim":d,"values":[..]}`.
pub fn parse_functional(text: &str, default: Field) -> Result<LinearFunctional> {
    let raw: RawFunctional = from_text(text)?;
    expect_kind(&raw.kind, "functional")?;
    Error::check_dim(raw.dim, raw.values.len())?;
    let field = raw.field.unwrap_or(default);
    let values = raw
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| scalar(s, field, &format!("values[{}]", i + 1)))
        .collect::<Result<_>>()?;
    LinearFunctional::new(field, values)
}

pub fn functional_to_json(f: &LinearFunctional) -> String {
    pretty(&RawFunctional {
        kind: "functional".into(),
        dim: f.dim(),
        field: field_tag(f.field()),
        values: f.values().iter().map(format_scalar).collect(),
    })
}

/// `{"kind":"representation","vdim":k,"rho":[{"on":[..],"matrix":[[..]]}]}`,
/// keyed by strictly increasing (n−1)-tuples of `alg`.
pub fn parse_representation(text: &str, alg: &NLieAlgebra) -> Result<Representation> {
    let raw: RawRepresentation = from_text(text)?;
    expect_kind(&raw.kind, "representation")?;
    let mut rep = Representation::zero(alg, raw.vdim);
    let mut seen = std::collections::BTreeSet::new();
    for (k, entry) in raw.rho.iter().enumerate() {
        if entry.on.len() + 1 != alg.arity() {
            return Err(Error::ArityMismatch {
                expected: alg.arity() - 1,
                found: entry.on.len(),
            });
        }
        let key = zero_based_tuple(&entry.on, alg.dim(), true)?;
        if !seen.insert(key.clone()) {
            return Err(Error::InvalidTuple {
                tuple: entry.on.clone(),
                reason: "matrix given twice".into(),
            });
        }
        let m = matrix(
            &entry.matrix,
            raw.vdim,
            raw.vdim,
            alg.field(),
            &format!("rho[{}].matrix", k + 1),
        )?;
        rep.set(&key, m)?;
    }
    Ok(rep)
}

pub fn representation_to_json(rep: &Representation) -> String {
    pretty(&RawRepresentation {
        kind: "representation".into(),
        vdim: rep.vdim(),
        rho: rep
            .entries()
            .map(|(key, m)| RawRhoEntry {
                on: one_based(key),
                matrix: matrix_rows(m),
            })
            .collect(),
    })
}

/// `{"kind":"comm-assoc","dim":d,"field":"Q","products":[{"on":[i,j],"value":{..}}]}` with `i ≤ j`.
pub fn parse_comm_assoc(text: &str) -> Result<CommAssocAlgebra> {
    let raw: RawCommAssoc = from_text(text)?;
    expect_kind(&raw.kind, "comm-assoc")?;
    let field = raw.field.unwrap_or(Field::Rational);
    let mut a = CommAssocAlgebra::new(raw.dim, field);
    let mut seen = std::collections::BTreeSet::new();
    for (k, entry) in raw.products.iter().enumerate() {
        if entry.on.len() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: entry.on.len(),
            });
        }
        let key = zero_based_tuple(&entry.on, raw.dim, false)?;
        if key[0] > key[1] || !seen.insert(key.clone()) {
            return Err(Error::InvalidTuple {
                tuple: entry.on.clone(),
                reason: "products need i ≤ j, each pair once".into(),
            });
        }
        let value = sparse_vector(&entry.value, raw.dim, field, &format!("products[{}].value", k + 1))?;
        a.set_product(key[0], key[1], value)?;
    }
    Ok(a)
}

pub fn comm_assoc_to_json(a: &CommAssocAlgebra) -> String {
    pretty(&RawCommAssoc {
        kind: "comm-assoc".into(),
        dim: a.dim(),
        field: field_tag(a.field()),
        products: a
            .products()
            .map(|(&(i, j), v)| RawEntry {
                on: vec![i + 1, j + 1],
                value: to_sparse(v),
            })
            .collect(),
    })
}

/// `{"kind":"deformation-family","base":{algebra},"omegas":[{"brackets":[..]},..]}`
/// with `n − 1` tables sharing the base's arity, dimension and field.
pub fn parse_family(text: &str) -> Result<DeformationFamily> {
    let raw: RawFamily = from_text(text)?;
    expect_kind(&raw.kind, "deformation-family")?;
    let base = algebra_from_raw(&raw.base)?;
    let omegas = raw
        .omegas
        .iter()
        .enumerate()
        .map(|(k, omega)| {
            let mut w = NLieAlgebra::new(base.arity(), base.dim(), base.field())?;
            fill_brackets(&mut w, &omega.brackets, &format!("omegas[{}].brackets", k + 1))?;
            Ok(w)
        })
        .collect::<Result<_>>()?;
    DeformationFamily::new(base, omegas)
}

pub fn family_to_json(fam: &DeformationFamily) -> String {
    pretty(&RawFamily {
        kind: "deformation-family".into(),
        base: algebra_raw(&fam.base),
        omegas: fam
            .omegas
            .iter()
            .map(|w| RawOmega {
                brackets: bracket_entries(w),
            })
            .collect(),
    })
}

pub fn builtin_to_json(b: &Builtin) -> String {
    match b {
        Builtin::Algebra(a) => algebra_to_json(a),
        Builtin::Map(m) => linear_map_to_json(m),
        Builtin::CommAssoc(a) => comm_assoc_to_json(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dim4_simple, lie_ex1};
    use crate::cohomology::adjoint_rep;
    use crate::nijenhuis::omega_family;

    const Q: Field = Field::Rational;

    #[test]
    fn algebra_round_trip() {
        let alg = dim4_simple(Q);
        let text = algebra_to_json(&alg);
        assert_eq!(parse_algebra(&text).unwrap(), alg);
        let gaussian = dim4_simple(Field::Gaussian);
        assert_eq!(parse_algebra(&algebra_to_json(&gaussian)).unwrap(), gaussian);
    }

    #[test]
    fn documented_example_parses() {
        let text = r#"{"kind":"n-lie","arity":3,"dim":4,"field":"Q","brackets":[{"on":[2,3,4],"value":{"1":"1"}}]}"#;
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.basis_bracket(&[1, 2, 3]), Vector::basis(Q, 4, 0));
        let f = parse_functional(r#"{"kind":"functional","dim":4,"values":["0","0","0","1"]}"#, Q).unwrap();
        assert_eq!(f, LinearFunctional::coordinate(Q, 4, 3));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\"kind\":\"n-lie\",\n \"arity\": 3,";
        match parse_algebra(text) {
            // the last character read before input ran out
            Err(Error::Parse { position, .. }) => assert_eq!(position, text.len() - 1),
            other => panic!("{other:?}"),
        }
        // 0-based offset of the offending `3`
        assert!(matches!(
            parse_algebra("{\"kind\": 3}"),
            Err(Error::Parse { position: 9, .. })
        ));
    }

    #[test]
    fn semantic_errors() {
        let bad_order = r#"{"kind":"n-lie","arity":3,"dim":4,"brackets":[{"on":[3,2,4],"value":{"1":"1"}}]}"#;
        assert!(matches!(parse_algebra(bad_order), Err(Error::InvalidTuple { .. })));
        let range = r#"{"kind":"n-lie","arity":3,"dim":4,"brackets":[{"on":[2,3,5],"value":{"1":"1"}}]}"#;
        assert!(matches!(parse_algebra(range), Err(Error::IndexOutOfRange { .. })));
        let scalar = r#"{"kind":"n-lie","arity":3,"dim":4,"brackets":[{"on":[2,3,4],"value":{"1":"1/0"}}]}"#;
        assert!(matches!(parse_algebra(scalar), Err(Error::Json(_))));
        let kind = r#"{"kind":"linear-map","dim":1,"matrix":[["1"]]}"#;
        assert!(matches!(parse_algebra(kind), Err(Error::Parse { .. })));
        assert!(matches!(parse_rect_map(kind, Q), Err(Error::Parse { .. })));
        let shape = r#"{"kind":"linear-map","dim":2,"matrix":[["1","0"]]}"#;
        assert!(matches!(parse_linear_map(shape, Q), Err(Error::ShapeMismatch { .. })));
        let kind = r#"{"kind":"rect-map","rows":1,"cols":1,"matrix":[["1"]]}"#;
        assert!(matches!(parse_linear_map(kind, Q), Err(Error::Parse { .. })));
    }

    #[test]
    fn map_field_defaults_to_context() {
        let text = r#"{"kind":"linear-map","dim":1,"matrix":[["1+i"]]}"#;
        assert!(parse_linear_map(text, Q).is_err());
        assert_eq!(
            parse_linear_map(text, Field::Gaussian).unwrap().field(),
            Field::Gaussian
        );
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(parse_linear_map(&linear_map_to_json(&m), Q).unwrap(), m);
        let r = Matrix::from_i64_rows(Q, &[&[1, 2, 3], &[3, 4, 5]]);
        assert_eq!(parse_rect_map(&rect_map_to_json(&r), Q).unwrap(), r);
    }

    #[test]
    fn representation_and_family_round_trip() {
        let alg = dim4_simple(Q);
        let ad = adjoint_rep(&alg);
        assert_eq!(parse_representation(&representation_to_json(&ad), &alg).unwrap(), ad);
        let n = crate::catalog::dim4_simple_der(&[1, 0, 2, 0, 0, 3].map(|v| Scalar::from_i64(Q, v)));
        let fam = omega_family(&alg, &n).unwrap();
        assert_eq!(parse_family(&family_to_json(&fam)).unwrap(), fam);
        let a = CommAssocAlgebra::trunc_poly(&[2, 3], Q).unwrap();
        assert_eq!(parse_comm_assoc(&comm_assoc_to_json(&a)).unwrap(), a);
        let f = LinearFunctional::from_i64(Q, &[0, 0, 1, 0]);
        assert_eq!(parse_functional(&functional_to_json(&f), Q).unwrap(), f);
        let lie = lie_ex1(Q);
        assert_eq!(kind_of(&algebra_to_json(&lie)).unwrap(), "n-lie");
    }
}
