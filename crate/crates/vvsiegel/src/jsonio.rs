//! JSON import/export with byte-stable formatting.
//!
//! Floats are always written as 17-significant-digit scientific numbers and
//! rationals as "p/q" strings, so identical inputs produce identical bytes.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::{json, Value};

use crate::cyclotomic::{CycField, CycNumber};
use crate::error::Error;
use crate::expansion::TruncatedExpansion;
use crate::lattice::{build_lattice, DiscriminantGroup, EvenLattice};
use crate::linalg::{IMat, Mat};
use crate::metaplectic::{Letter, Word};
use crate::rat::{format_rat, parse_rat, rat_i, Rat};
use crate::Result;

/// 17 significant digits, fixed exponent form; non-finite maps to null.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

pub fn raw_f64(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_f64(x)).expect("fixed-format float is valid json")
}

/// Complex value as a fixed-format `[re, im]` pair.
pub fn raw_c64(z: Complex64) -> Box<RawValue> {
    RawValue::from_string(format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im)))
        .expect("fixed-format pair is valid json")
}

/// Inline JSON is passed through; anything else is treated as a file path.
pub fn read_json_arg(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(s.to_string())
    } else {
        Ok(std::fs::read_to_string(s)?)
    }
}

// ---------------------------------------------------------------------------
// lattices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn lattice_from_str(s: &str) -> Result<EvenLattice> {
    let j: LatticeJson = serde_json::from_str(s)?;
    build_lattice(j.gram, j.name)
}

/// Accepts either the full `{"gram": ...}` object or a bare gram matrix.
pub fn lattice_from_value(v: &Value) -> Result<EvenLattice> {
    if v.is_array() {
        let gram: Vec<Vec<i64>> = serde_json::from_value(v.clone())?;
        build_lattice(gram, None)
    } else {
        let j: LatticeJson = serde_json::from_value(v.clone())?;
        build_lattice(j.gram, j.name)
    }
}

pub fn lattice_to_json(l: &EvenLattice) -> LatticeJson {
    LatticeJson { gram: l.gram().rows(), name: l.name().map(str::to_owned) }
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

pub fn imat_json(m: &IMat) -> Value {
    json!(m.rows())
}

pub fn imat_from_value(v: &Value) -> Result<IMat> {
    let rows: Vec<Vec<i64>> = serde_json::from_value(v.clone())?;
    Mat::from_rows(rows)
}

pub fn rat_mat_json(t: &Mat<Rat>) -> Value {
    json!(t.rows().iter().map(|r| r.iter().map(format_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn rat_from_value(v: &Value) -> Result<Rat> {
    if let Some(n) = v.as_i64() {
        return Ok(rat_i(n));
    }
    if let Some(s) = v.as_str() {
        return parse_rat(s);
    }
    Err(Error::BadInput(format!("expected an integer or \"p/q\" string, got {v}")))
}

/// Entries may be JSON integers or "p/q" strings.
pub fn rat_mat_from_value(v: &Value) -> Result<Mat<Rat>> {
    let rows: Vec<Vec<Value>> = serde_json::from_value(v.clone())?;
    let parsed: Result<Vec<Vec<Rat>>> =
        rows.iter().map(|r| r.iter().map(rat_from_value).collect()).collect();
    Mat::from_rows(parsed?)
}

// ---------------------------------------------------------------------------
// metaplectic words
// ---------------------------------------------------------------------------

pub fn word_to_json(w: &Word) -> Value {
    let letters: Vec<Value> = w
        .letters
        .iter()
        .map(|l| match l {
            Letter::S => json!({ "S": Value::Null }),
            Letter::T(b) => json!({ "T": b.rows() }),
            Letter::R(a) => json!({ "R": a.rows() }),
        })
        .collect();
    json!({ "letters": letters, "branch_flip": w.branch_flip })
}

fn letter_from_value(v: &Value) -> Result<Letter> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput(format!("letter must be a tagged object, got {v}")))?;
    if obj.len() != 1 {
        return Err(Error::BadInput("letter object must have exactly one tag".into()));
    }
    let (tag, payload) = obj.iter().next().unwrap();
    match tag.as_str() {
        "S" => Ok(Letter::S),
        "T" => Ok(Letter::T(imat_from_value(payload)?)),
        "R" => Ok(Letter::R(imat_from_value(payload)?)),
        other => Err(Error::BadInput(format!("unknown letter tag {other:?}"))),
    }
}

/// Accepts `{"letters": [...], "branch_flip": b}` or a bare letter list.
pub fn word_from_value(v: &Value) -> Result<Word> {
    let (list, flip) = if let Some(arr) = v.as_array() {
        (arr.clone(), false)
    } else {
        let letters = v
            .get("letters")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadInput("word needs a \"letters\" array".into()))?;
        let flip = match v.get("branch_flip") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(Value::Number(n)) => n.as_i64().unwrap_or(0) % 2 != 0,
            Some(other) => {
                return Err(Error::BadInput(format!("bad branch_flip {other}")));
            }
        };
        (letters.clone(), flip)
    };
    let letters: Result<Vec<Letter>> = list.iter().map(letter_from_value).collect();
    Ok(Word { letters: letters?, branch_flip: flip })
}

// ---------------------------------------------------------------------------
// Weil matrices
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CycMatrixOut {
    #[serde(rename = "M")]
    m: i64,
    rows: Vec<Vec<Vec<String>>>,
}

/// Exact matrix: each entry is its coefficient vector in the zeta_M basis.
pub fn cyc_matrix_json(field: &CycField, a: &Mat<CycNumber>) -> String {
    let rows = a
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.coeffs.iter().map(format_rat).collect()).collect())
        .collect();
    serde_json::to_string(&CycMatrixOut { m: field.order(), rows })
        .expect("serialization of plain data cannot fail")
}

#[derive(Serialize)]
struct C64MatrixOut {
    rows: Vec<Vec<Box<RawValue>>>,
}

/// Numeric matrix: entries as fixed-format `[re, im]` pairs.
pub fn c64_matrix_json(a: &Mat<Complex64>) -> String {
    let rows = a.rows().iter().map(|r| r.iter().map(|z| raw_c64(*z)).collect()).collect();
    serde_json::to_string(&C64MatrixOut { rows }).expect("serialization of plain data cannot fail")
}

// ---------------------------------------------------------------------------
// expansions
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CoeffOut {
    alpha: Vec<Vec<i64>>,
    #[serde(rename = "T")]
    t: Vec<Vec<String>>,
    value: Box<RawValue>,
}

#[derive(Serialize)]
struct ExpansionOut {
    genus: usize,
    weight: String,
    cutoff: String,
    coeffs: Vec<CoeffOut>,
}

/// Deterministic dump: keys walk the table in shell order.
pub fn expansion_to_json(dg: &DiscriminantGroup, f: &TruncatedExpansion<Complex64>) -> String {
    let coeffs = f
        .table
        .iter()
        .map(|(key, v)| {
            let alpha = dg.tuple_at(f.genus, key.tuple_idx);
            CoeffOut {
                alpha: alpha.0.iter().map(|e| e.coords.clone()).collect(),
                t: key.t.rows().iter().map(|r| r.iter().map(format_rat).collect()).collect(),
                value: raw_c64(*v),
            }
        })
        .collect();
    serde_json::to_string(&ExpansionOut {
        genus: f.genus,
        weight: format_rat(&f.weight),
        cutoff: format_rat(&f.cutoff),
        coeffs,
    })
    .expect("serialization of plain data cannot fail")
}

#[derive(Deserialize)]
struct CoeffIn {
    alpha: Vec<Vec<i64>>,
    #[serde(rename = "T")]
    t: Vec<Vec<Value>>,
    value: Value,
}

#[derive(Deserialize)]
struct ExpansionIn {
    genus: usize,
    weight: String,
    cutoff: String,
    coeffs: Vec<CoeffIn>,
}

fn c64_from_value(v: &Value) -> Result<Complex64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::BadInput(format!("complex value must be [re, im], got {v}")))?;
    let re = arr[0].as_f64().ok_or_else(|| Error::BadInput("re must be a number".into()))?;
    let im = arr[1].as_f64().ok_or_else(|| Error::BadInput("im must be a number".into()))?;
    Ok(Complex64::new(re, im))
}

/// Parse and re-validate an expansion file; every key goes through `insert`.
pub fn expansion_from_json(
    dg: &DiscriminantGroup,
    s: &str,
) -> Result<TruncatedExpansion<Complex64>> {
    let parsed: ExpansionIn = serde_json::from_str(s)?;
    let mut out =
        TruncatedExpansion::new(parsed.genus, parse_rat(&parsed.weight)?, parse_rat(&parsed.cutoff)?);
    for c in &parsed.coeffs {
        if c.alpha.len() != parsed.genus {
            return Err(Error::GenusMismatch { expected: parsed.genus, got: c.alpha.len() });
        }
        let elems: Result<Vec<_>> = c.alpha.iter().map(|coords| dg.elem(coords)).collect();
        let tuple = dg.tuple(elems?);
        let t_rows: Result<Vec<Vec<Rat>>> =
            c.t.iter().map(|r| r.iter().map(rat_from_value).collect()).collect();
        let t = Mat::from_rows(t_rows?)?;
        out.insert(dg, dg.tuple_index(&tuple), t, c64_from_value(&c.value)?)?;
    }
    Ok(out)
}
