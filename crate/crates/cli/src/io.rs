//! JSON input schemas and exact value rendering.

use std::path::Path;

use kahler::kahler::Pluriform;
use kahler::lattice::Matrix;
use kahler::tropical::RationalPolytope;
use kahler::{BaseFieldModel, LaurentPoly, ValExp};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::parser::{parse_poly, Vars};
use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    pub substitutions: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub index: Vec<Vec<usize>>,
    pub coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub l: usize,
    pub m: usize,
    pub entries: Vec<FormEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexFile {
    pub lattice: MatrixFile,
    pub sublattice: MatrixFile,
}

/// A rational written either as a JSON integer or as a string `"a/b"`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraint {
    pub a: Vec<RationalText>,
    pub b: RationalText,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let mut msg = e.to_string();
        if let Some(i) = msg.rfind(" at line ") {
            msg.truncate(i);
        }
        CliError::Parse { context: path.display().to_string(), line: e.line(), col: e.column(), msg }
    })
}

/// Parses an expression, tagging errors with where it came from.
pub fn poly(src: &str, model: BaseFieldModel, vars: &Vars, context: &str) -> Result<LaurentPoly, CliError> {
    parse_poly(src, model, vars).map_err(|e| CliError::Parse {
        context: context.to_string(),
        line: e.line,
        col: e.col,
        msg: e.msg,
    })
}

pub fn rational(src: &str, context: &str) -> Result<BigRational, CliError> {
    src.trim().parse::<BigRational>().map_err(|e| CliError::Parse {
        context: context.to_string(),
        line: 1,
        col: 1,
        msg: format!("invalid rational '{}': {e}", src.trim()),
    })
}

impl RationalText {
    fn value(&self, context: &str) -> Result<BigRational, CliError> {
        match self {
            RationalText::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RationalText::Text(s) => rational(s, context),
        }
    }
}

/// Comma-separated rationals, e.g. `"1,1/2,-3"`. The empty string is the empty list.
pub fn rational_list(src: &str, context: &str) -> Result<Vec<BigRational>, CliError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(|s| rational(s, context)).collect()
}

pub fn form(file: &FormFile, model: BaseFieldModel, n: usize, context: &str) -> Result<Pluriform, CliError> {
    let mut f = Pluriform::zero(model, n, file.l, file.m)?;
    let vars = Vars::t_only(n);
    for (k, entry) in file.entries.iter().enumerate() {
        let ctx = format!("{context}: entries[{k}].coeff");
        let coeff = poly(&entry.coeff, model, &vars, &ctx)?;
        let mut index = Vec::with_capacity(entry.index.len());
        for slot in &entry.index {
            let slot: Option<Vec<usize>> = slot.iter().map(|&i| i.checked_sub(1)).collect();
            let slot = slot.ok_or_else(|| CliError::Domain(format!("{context}: entries[{k}].index is 1-based")))?;
            index.push(slot);
        }
        f.add_term(index, coeff)?;
    }
    Ok(f)
}

pub fn chart(file: &ChartFile, model: BaseFieldModel, context: &str) -> Result<Vec<LaurentPoly>, CliError> {
    let vars = Vars::s_only(file.substitutions.len());
    file.substitutions
        .iter()
        .enumerate()
        .map(|(k, s)| poly(s, model, &vars, &format!("{context}: substitutions[{k}]")))
        .collect()
}

/// Matrix entries may use `t1..tn`, evaluated through the Gauss point `rho`.
pub fn matrix(file: &MatrixFile, model: BaseFieldModel, rho: &[BigRational], context: &str) -> Result<Matrix, CliError> {
    let vars = Vars::t_only(rho.len());
    let entries = file
        .entries
        .iter()
        .enumerate()
        .map(|(k, s)| poly(s, model, &vars, &format!("{context}: entries[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::new(file.rows, file.cols, entries, model, rho.to_vec())?)
}

pub fn polytope(file: &PolytopeFile, context: &str) -> Result<RationalPolytope, CliError> {
    let mut constraints = Vec::with_capacity(file.constraints.len());
    for (k, c) in file.constraints.iter().enumerate() {
        let ctx = format!("{context}: constraints[{k}]");
        let a = c.a.iter().map(|x| x.value(&ctx)).collect::<Result<Vec<_>, _>>()?;
        constraints.push((a, c.b.value(&ctx)?));
    }
    Ok(RationalPolytope::new(file.n, constraints)?)
}

fn bigint(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": bigint(q.numer()), "den": bigint(q.denom()) })
}

/// `{"num", "den"}` or `"inf"`, with `"approx"` (the value of `ε^q`) when a base is given.
pub fn value_json(v: &ValExp, epsilon: Option<f64>) -> Value {
    match v {
        ValExp::Inf => json!("inf"),
        ValExp::Finite(q) => {
            let mut out = rational_json(q);
            if let Some(eps) = epsilon {
                out["approx"] = json!(v.approx(eps));
            }
            out
        }
    }
}

pub fn value_text(v: &ValExp) -> String {
    match v {
        ValExp::Inf => "inf".into(),
        ValExp::Finite(q) => q.to_string(),
    }
}
