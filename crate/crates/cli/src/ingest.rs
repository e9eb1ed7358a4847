//! Reading and validating representation specs.

use std::path::Path;

use defring_core::ffalg::group::{cap_from_env, CAP_ENV, DEFAULT_CAP};
use defring_core::ffalg::{Elem, Field, Matrix, Word};
use defring_core::gmodules::{LocalFieldData, ResidualRep};
use defring_core::Error;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult, FieldError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub f: u32,
    /// Monic modulus, coefficients lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFieldSpec {
    pub p: u32,
    pub e: u32,
    pub f: u32,
    pub mu_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub matrix: Vec<Vec<i64>>,
    pub omega: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    /// Accepted and echoed; the thresholds of this version are fixed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<serde_json::Value>,
    /// Each subgroup is a list of generating words in the generator indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kummer_subgroups: Option<Vec<Vec<Word>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub field: FieldSpec,
    pub local_field: LocalFieldSpec,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub options: Options,
}

/// A spec that passed validation, with the objects built from it.
#[derive(Clone, Debug)]
pub struct Validated {
    pub spec: InputSpec,
    pub rep: ResidualRep,
    pub cap: usize,
}

pub fn parse(text: &str) -> CliResult<InputSpec> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

pub fn ingest(path: &Path) -> CliResult<Validated> {
    validate(parse(&read(path)?)?)
}

/// The closure cap: `DEFRING_CAP` when set, then `options.cap`, then the default.
pub fn effective_cap(options: &Options) -> usize {
    if std::env::var(CAP_ENV).is_ok() {
        cap_from_env()
    } else {
        options.cap.unwrap_or(DEFAULT_CAP)
    }
}

pub fn build_field(spec: &FieldSpec) -> Result<Field, FieldError> {
    let err = |field: &str, e: Error| FieldError {
        field: field.into(),
        reason: e.to_string(),
    };
    match &spec.modulus {
        None => Field::new(spec.p, spec.f).map_err(|e| err("field", e)),
        Some(m) => {
            if m.len() != spec.f as usize + 1 {
                return Err(FieldError {
                    field: "field.modulus".into(),
                    reason: format!("degree {} does not match f = {}", m.len().saturating_sub(1), spec.f),
                });
            }
            Field::with_modulus(spec.p, m).map_err(|e| err("field.modulus", e))
        }
    }
}

/// Integers are reduced mod p over a prime field, and read as element ids
/// (base-p digits in the polynomial basis) over a proper extension.
pub fn build_matrix(f: &Field, rows: &[Vec<i64>], name: &str) -> Result<Matrix, FieldError> {
    let bad = |reason: String| FieldError {
        field: name.into(),
        reason,
    };
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(bad("must be a non-empty square array".into()));
    }
    let mut data = Vec::with_capacity(d * d);
    for &x in rows.iter().flatten() {
        let e: Elem = if f.degree() == 1 {
            f.from_int(x)
        } else if (0..f.order() as i64).contains(&x) {
            x as Elem
        } else {
            return Err(bad(format!("entry {x} is not an element id of GF({})", f.order())));
        };
        data.push(e);
    }
    Ok(Matrix::from_vec(d, d, data).expect("square data"))
}

fn from_core(e: Error) -> FieldError {
    let (field, reason) = match &e {
        Error::Invalid { field, reason } => (field.clone(), reason.clone()),
        Error::NotInvertible { index } => (format!("generators[{index}].matrix"), e.to_string()),
        Error::CapExceeded { .. } => ("options.cap".into(), e.to_string()),
        _ => ("generators".into(), e.to_string()),
    };
    FieldError { field, reason }
}

pub fn validate(spec: InputSpec) -> CliResult<Validated> {
    let mut errors = Vec::new();
    let field = build_field(&spec.field).map_err(|e| errors.push(e)).ok();
    let l = &spec.local_field;
    let local = LocalFieldData::new(l.p, l.e, l.f, l.mu_order)
        .and_then(|lf| match l.zeta_degree {
            Some(k) => lf.with_zeta_degree(k),
            None => Ok(lf),
        })
        .map_err(|e| errors.push(from_core(e)))
        .ok();
    if l.p != spec.field.p {
        errors.push(FieldError {
            field: "local_field.p".into(),
            reason: format!("{} differs from field.p = {}", l.p, spec.field.p),
        });
    }
    if spec.generators.is_empty() {
        errors.push(FieldError {
            field: "generators".into(),
            reason: "at least one generator is required".into(),
        });
    }
    let p = spec.field.p as i64;
    let mut matrices = Vec::new();
    let mut omegas = Vec::new();
    if let Some(f) = &field {
        for (i, g) in spec.generators.iter().enumerate() {
            let name = format!("generators[{i}].matrix");
            match build_matrix(f, &g.matrix, &name) {
                Ok(m) if matrices.first().is_some_and(|m0: &Matrix| m0.rows() != m.rows()) => {
                    errors.push(FieldError {
                        field: name,
                        reason: "dimension differs from generators[0].matrix".into(),
                    });
                }
                Ok(m) if !m.is_invertible(f) => {
                    errors.push(FieldError {
                        field: name,
                        reason: "matrix is singular".into(),
                    });
                }
                Ok(m) => matrices.push(m),
                Err(e) => errors.push(e),
            }
            if (1..p).contains(&g.omega) {
                omegas.push(g.omega as Elem);
            } else {
                errors.push(FieldError {
                    field: format!("generators[{i}].omega"),
                    reason: format!("{} is not in [1, {}]", g.omega, p - 1),
                });
            }
        }
    }
    if let Some(subs) = &spec.options.kummer_subgroups {
        for (i, words) in subs.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                if w.iter().any(|&g| g >= spec.generators.len()) {
                    errors.push(FieldError {
                        field: format!("options.kummer_subgroups[{i}][{j}]"),
                        reason: "word mentions a generator that does not exist".into(),
                    });
                }
            }
        }
    }
    if spec.options.cap == Some(0) {
        errors.push(FieldError {
            field: "options.cap".into(),
            reason: "must be positive".into(),
        });
    }
    if !errors.is_empty() {
        return Err(CliError::Validation(errors));
    }
    let (field, local) = (field.expect("checked"), local.expect("checked"));
    let cap = effective_cap(&spec.options);
    let rep = ResidualRep::with_cap(field, local, matrices, omegas, Some(cap))
        .map_err(|e| CliError::Validation(vec![from_core(e)]))?;
    Ok(Validated { spec, rep, cap })
}
