//! Dimension bounds for strata of the generic-matrix space, as integer
//! arithmetic on partition data.

use serde::Serialize;

use crate::error::{Error, Result};

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// A partition of the constituents into blocks, with the blocks grouped
/// into classes of twist-related blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionData {
    pub d: usize,
    pub n: usize,
    pub block_dims: Vec<usize>,
    /// Block indices of each twist class.
    pub twist_classes: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub class_dims: Vec<usize>,
    pub l_p: usize,
    pub n_p: usize,
    pub p_p: usize,
    pub delta_p: usize,
}

impl PartitionData {
    pub fn r(&self) -> usize {
        self.block_dims.len()
    }

    /// The partition with a single block.
    pub fn is_minimal(&self) -> bool {
        self.block_dims.len() == 1
    }

    pub fn sum_choose2(&self) -> usize {
        self.class_sizes.iter().map(|&k| choose2(k)).sum()
    }
}

pub fn partition_stats(
    d: usize,
    n: usize,
    block_dims: &[usize],
    twist_classes: &[Vec<usize>],
) -> Result<PartitionData> {
    let bad = |msg: String| Err(Error::InconsistentPartition(msg));
    if block_dims.is_empty() || block_dims.contains(&0) {
        return bad("block dimensions must be positive and non-empty".into());
    }
    if block_dims.iter().sum::<usize>() != d {
        return bad(format!("block dimensions {block_dims:?} do not sum to d = {d}"));
    }
    let mut seen = vec![false; block_dims.len()];
    let mut class_dims = Vec::new();
    for class in twist_classes {
        let Some(&first) = class.first() else {
            return bad("empty twist class".into());
        };
        for &b in class {
            if b >= block_dims.len() || seen[b] {
                return bad(format!("block {b} is missing or appears twice in the twist classes"));
            }
            seen[b] = true;
            if block_dims[b] != block_dims[first] {
                return bad(format!("twist class {class:?} mixes block dimensions"));
            }
        }
        class_dims.push(block_dims[first]);
    }
    if seen.contains(&false) {
        return bad("twist classes do not cover every block".into());
    }
    let class_sizes: Vec<usize> = twist_classes.iter().map(Vec::len).collect();
    let l_p: usize = block_dims.iter().map(|x| x * x).sum();
    let n_p = (d * d - l_p) / 2;
    let sum_c: usize = class_sizes.iter().map(|&k| choose2(k)).sum();
    Ok(PartitionData {
        d,
        n,
        block_dims: block_dims.to_vec(),
        twist_classes: twist_classes.to_vec(),
        class_sizes,
        class_dims,
        l_p,
        n_p,
        p_p: l_p + n_p,
        delta_p: sum_c.saturating_sub(1 + n),
    })
}

/// Upper bound for the fibre dimension over a point whose semisimple
/// representative has constituents of the given dimensions, the `i`-th
/// isomorphism class occurring `class_sizes[i]` times.
pub fn bound_fibre(d: usize, n: usize, constituent_dims: &[usize], class_sizes: &[usize]) -> Result<usize> {
    if constituent_dims.iter().sum::<usize>() != d {
        return Err(Error::InconsistentPartition(format!(
            "constituent dimensions {constituent_dims:?} do not sum to {d}"
        )));
    }
    if class_sizes.iter().sum::<usize>() != constituent_dims.len() {
        return Err(Error::InconsistentPartition(
            "class sizes do not add up to the number of constituents".into(),
        ));
    }
    let l: usize = constituent_dims.iter().map(|x| x * x).sum();
    let nil = (d * d - l) / 2;
    let r = constituent_dims.len();
    Ok(d * d - r + nil * n + class_sizes.iter().map(|&k| choose2(k)).sum::<usize>())
}

pub fn bound_zp(pd: &PartitionData) -> usize {
    pd.d * pd.d + pd.p_p * pd.n + pd.delta_p
}

pub fn bound_zp_ij(pd: &PartitionData) -> i64 {
    (pd.d * pd.d + pd.p_p * pd.n + pd.sum_choose2()) as i64 - (1 + pd.n) as i64
}

/// Bound for the preimage of the closed point, from the data of the finest
/// partition.
pub fn bound_y(pd_max: &PartitionData) -> i64 {
    (pd_max.d * pd_max.d + pd_max.n_p * pd_max.n + pd_max.n_p) as i64 - 1
}

/// `d^2 + d^2 n - bound_zp`, required to be at least `n` for `d = 2` and at
/// least `1 + n` for `d > 2` whenever the partition is not minimal.
pub fn codim_gap(pd: &PartitionData) -> Result<i64> {
    let total = (pd.d * pd.d * (1 + pd.n)) as i64;
    let gap = total - bound_zp(pd) as i64;
    if !pd.is_minimal() {
        let need = if pd.d == 2 { pd.n } else { 1 + pd.n } as i64;
        if gap < need {
            return Err(Error::AssertionFailed(format!(
                "codimension gap {gap} < {need} for blocks {:?}, classes {:?}, n = {}",
                pd.block_dims, pd.class_sizes, pd.n
            )));
        }
    }
    Ok(gap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDims {
    pub d: usize,
    pub n: usize,
    /// Number of characters of `μ`, one irreducible component each.
    pub mu_order: u64,
    pub r_box: usize,
    pub r_box_mod_p: usize,
    pub a_gen: usize,
    pub a_gen_mod_p: usize,
    pub r_box_chi: usize,
    pub r_box_chi_mod_p: usize,
    pub r_box_psi: usize,
    pub r_box_psi_mod_p: usize,
    pub a_gen_psi: usize,
}

pub fn expected_dims(d: usize, n: usize, mu_order: u64) -> ExpectedDims {
    let full = d * d + d * d * n;
    let fixed = (d * d - 1) * (n + 1);
    ExpectedDims {
        d,
        n,
        mu_order,
        r_box: 1 + full,
        r_box_mod_p: full,
        a_gen: 1 + full,
        a_gen_mod_p: full,
        r_box_chi: 1 + full,
        r_box_chi_mod_p: full,
        r_box_psi: 1 + fixed,
        r_box_psi_mod_p: fixed,
        a_gen_psi: 1 + fixed,
    }
}

/// `(1 + d^2 + n sum d_i^2, d^2 + n sum d_i^2)` for the multiplicity-free
/// semisimple locus.
pub fn mrs_bound(d: usize, n: usize, dims: &[usize]) -> Result<(usize, usize)> {
    if dims.is_empty() || dims.iter().sum::<usize>() != d {
        return Err(Error::InconsistentPartition(format!(
            "constituent dimensions {dims:?} do not sum to {d}"
        )));
    }
    let generic = 1 + d * d + n * dims.iter().map(|x| x * x).sum::<usize>();
    Ok((generic, generic - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KummerCodims {
    /// Lower bound for the codimension of the special locus, `⌈n d^2 / 2⌉`.
    pub special: usize,
    /// Lower bound for the codimension of the Kummer-reducible locus, `n d`.
    pub kummer_reducible: usize,
    /// Lower bound for the codimension of the complement of the
    /// Kummer-irreducible locus in the special fibre; `None` when `d = 1`.
    pub complement: Option<usize>,
    /// Same for the complement of the irreducible locus of the generic
    /// fibre; `None` when that complement is empty.
    pub generic_complement: Option<usize>,
    pub zeta_p_at_least_two: bool,
    pub degree_p_at_least_two: bool,
}

pub fn kummer_codims(d: usize, n: usize, m_constituents: usize) -> KummerCodims {
    let reducible_bound = match d {
        1 => None,
        2 => Some(n),
        _ => Some(1 + n),
    };
    let complement = if m_constituents == 1 && d > 1 {
        reducible_bound.map(|b| b.max(d * n))
    } else {
        reducible_bound
    };
    KummerCodims {
        special: (n * d * d).div_ceil(2),
        kummer_reducible: n * d,
        complement,
        generic_complement: if m_constituents == 1 { None } else { reducible_bound },
        zeta_p_at_least_two: n * d * d >= 4,
        degree_p_at_least_two: n * d >= 2,
    }
}

/// Integer partitions of `k`, parts in non-increasing order.
pub fn integer_partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// Every block decomposition of `d` together with every way of grouping
/// equal-dimensional blocks into twist classes, up to relabelling.
pub fn all_partition_data(d: usize, n: usize) -> Vec<PartitionData> {
    let mut out = Vec::new();
    for blocks in integer_partitions(d) {
        // runs of equal dimension, each split by an integer partition of its length
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for (i, &b) in blocks.iter().enumerate() {
            match runs.last_mut() {
                Some((start, len)) if blocks[*start] == b => *len += 1,
                _ => runs.push((i, 1)),
            }
        }
        let choices: Vec<Vec<Vec<usize>>> = runs.iter().map(|&(_, len)| integer_partitions(len)).collect();
        let mut idx = vec![0; runs.len()];
        loop {
            let mut classes = Vec::new();
            for (r, &(start, _)) in runs.iter().enumerate() {
                let mut next = start;
                for &size in &choices[r][idx[r]] {
                    classes.push((next..next + size).collect());
                    next += size;
                }
            }
            out.push(partition_stats(d, n, &blocks, &classes).expect("well-formed by construction"));
            let mut r = 0;
            while r < runs.len() {
                idx[r] += 1;
                if idx[r] < choices[r].len() {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
            if r == runs.len() {
                break;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub n: usize,
    pub blocks: String,
    pub class_sizes: String,
    pub l_p: usize,
    pub n_p: usize,
    pub p_p: usize,
    pub delta_p: usize,
    pub bound_zp: usize,
    pub bound_zp_ij: i64,
    pub codim_gap: i64,
    pub minimal: bool,
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
}

/// Bound table over all partitions for one `(d, n)`; fails on the first
/// violated gap.
pub fn sweep(d: usize, n: usize) -> Result<Vec<SweepRow>> {
    all_partition_data(d, n)
        .into_iter()
        .map(|pd| {
            Ok(SweepRow {
                d,
                n,
                blocks: join(&pd.block_dims),
                class_sizes: join(&pd.class_sizes),
                l_p: pd.l_p,
                n_p: pd.n_p,
                p_p: pd.p_p,
                delta_p: pd.delta_p,
                bound_zp: bound_zp(&pd),
                bound_zp_ij: bound_zp_ij(&pd),
                codim_gap: codim_gap(&pd)?,
                minimal: pd.is_minimal(),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
