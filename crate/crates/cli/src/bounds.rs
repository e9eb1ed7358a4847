//! The `bounds` verb.

use defring_core::dimension::{expected_dims, kummer_codims, mrs_bound, sweep, sweep_csv, ExpectedDims, KummerCodims};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::report::MrsRecord;

#[derive(Clone, Debug, Serialize)]
pub struct BoundsSummary {
    pub d: usize,
    pub n: usize,
    pub expected_dims: ExpectedDims,
    /// For an irreducible residual representation.
    pub mrs_bound: MrsRecord,
    pub kummer_codims: KummerCodims,
    pub partitions: usize,
    pub min_codim_gap: Option<i64>,
}

fn check(d: usize, n: usize) -> CliResult<()> {
    if d == 0 {
        return Err(CliError::validation("d", "must be positive"));
    }
    if n == 0 {
        return Err(CliError::validation("degree", "must be positive"));
    }
    Ok(())
}

pub fn bounds(d: usize, n: usize) -> CliResult<BoundsSummary> {
    check(d, n)?;
    let rows = sweep(d, n)?;
    let (generic, special) = mrs_bound(d, n, &[d])?;
    Ok(BoundsSummary {
        d,
        n,
        expected_dims: expected_dims(d, n, 1),
        mrs_bound: MrsRecord { generic, special },
        kummer_codims: kummer_codims(d, n, 1),
        partitions: rows.len(),
        min_codim_gap: rows.iter().filter(|r| !r.minimal).map(|r| r.codim_gap).min(),
    })
}

pub fn bounds_sweep_csv(d: usize, n: usize) -> CliResult<String> {
    check(d, n)?;
    Ok(sweep_csv(&sweep(d, n)?)?)
}
