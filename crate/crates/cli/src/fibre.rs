//! The `fibre-count` verb: target tuples read from a small JSON file.

use std::collections::BTreeMap;
use std::path::Path;

use defring_core::ffalg::field::is_prime;
use defring_core::ffalg::group::cap_from_env;
use defring_core::genmatrix::{fibre_enumerate, FibreResult};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult, FieldError};
use crate::ingest::{build_field, build_matrix, read, FieldSpec};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreSpec {
    /// The target tuple, one matrix per generator.
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreSummary {
    pub q: u32,
    pub d: usize,
    pub arity: usize,
    pub count: usize,
    /// Number of points with each tangent dimension.
    pub tangent_dims: BTreeMap<usize, usize>,
}

/// `(p, f)` with `q = p^f`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|k| q.is_multiple_of(*k))?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1 && is_prime(p as u64)).then_some((p, f))
}

pub fn fibre_count(q: u32, d: usize, spec_path: &Path) -> CliResult<(FibreSummary, FibreResult)> {
    let spec: FibreSpec = serde_json::from_str(&read(spec_path)?).map_err(|e| CliError::Parse(e.to_string()))?;
    let (p, f) = prime_power(q).ok_or_else(|| CliError::validation("q", format!("{q} is not a prime power")))?;
    let field = build_field(&FieldSpec {
        p,
        f,
        modulus: spec.modulus.clone(),
    })
    .map_err(|e| CliError::Validation(vec![e]))?;
    if spec.generators.is_empty() {
        return Err(CliError::validation("generators", "at least one matrix is required"));
    }
    let mut errors: Vec<FieldError> = Vec::new();
    let mut target = Vec::new();
    for (i, rows) in spec.generators.iter().enumerate() {
        let name = format!("generators[{i}]");
        match build_matrix(&field, rows, &name) {
            Ok(m) if m.rows() != d => errors.push(FieldError {
                field: name,
                reason: format!("is {0}x{0}, expected {d}x{d}", m.rows()),
            }),
            Ok(m) if !m.is_invertible(&field) => errors.push(FieldError {
                field: name,
                reason: "matrix is singular".into(),
            }),
            Ok(m) => target.push(m),
            Err(e) => errors.push(e),
        }
    }
    if !errors.is_empty() {
        return Err(CliError::Validation(errors));
    }
    let result = fibre_enumerate(&field, &target, cap_from_env())?;
    let mut tangent_dims = BTreeMap::new();
    for pt in &result.points {
        *tangent_dims.entry(pt.tangent_dim).or_insert(0) += 1;
    }
    Ok((
        FibreSummary {
            q,
            d,
            arity: target.len(),
            count: result.count(),
            tangent_dims,
        },
        result,
    ))
}

#[cfg(test)]
mod tests {
    use super::prime_power;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
