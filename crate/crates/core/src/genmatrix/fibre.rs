//! Brute-force enumeration of the matrix tuples with a given pseudo-character.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::words::canonical_rotation;
use crate::error::{Error, Result};
use crate::ffalg::linalg::EchelonBasis;
use crate::ffalg::ring::{lambdas, ring_mat_mul, DualNumbers, RingMatrix};
use crate::ffalg::{Elem, Field, Matrix};
use crate::pseudochar::{char_poly_coeffs, pseudo_equal};

/// Largest `q^(d^2 * arity)` searched.
pub const FIBRE_ENVELOPE: u64 = 1 << 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrePoint {
    /// Row-major entries of each matrix, as field element ids.
    pub entries: Vec<Vec<Elem>>,
    pub tangent_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreResult {
    pub q: u32,
    pub d: usize,
    pub arity: usize,
    pub points: Vec<FibrePoint>,
}

impl FibreResult {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn matrices(&self, i: usize) -> Vec<Matrix> {
        self.points[i]
            .entries
            .iter()
            .map(|e| Matrix::from_vec(self.d, self.d, e.clone()).expect("d x d entries"))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = Vec::new();
        for g in 0..self.arity {
            for i in 1..=self.d {
                for j in 1..=self.d {
                    header.push(format!("g{g}_{i}{j}"));
                }
            }
        }
        header.push("tangent_dim".into());
        out.push_str(&header.join(","));
        out.push('\n');
        for p in &self.points {
            let row: Vec<String> = p
                .entries
                .iter()
                .flatten()
                .map(|e| e.to_string())
                .chain(std::iter::once(p.tangent_dim.to_string()))
                .collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

fn matrix_from_index(f: &Field, d: usize, mut idx: u64) -> Matrix {
    let q = f.order() as u64;
    let data = (0..d * d)
        .map(|_| {
            let e = (idx % q) as Elem;
            idx /= q;
            e
        })
        .collect();
    Matrix::from_vec(d, d, data).expect("d x d entries")
}

/// Every tuple over `f` whose coefficient laws agree with those of `target`
/// on all words, with the tangent dimension at each point.
pub fn fibre_enumerate(f: &Field, target: &[Matrix], cap: usize) -> Result<FibreResult> {
    let arity = target.len();
    if arity == 0 {
        return Err(Error::DimensionMismatch("empty target tuple".into()));
    }
    let d = target[0].rows();
    let q = f.order() as u64;
    let space = (d * d * arity) as u32;
    if q.checked_pow(space).is_none_or(|s| s > FIBRE_ENVELOPE) {
        return Err(Error::SizeExceeded(format!(
            "{q}^{space} tuples exceed the search envelope of 2^25"
        )));
    }
    let per_matrix = q.pow((d * d) as u32);
    // candidates for each slot: invertible with the right characteristic polynomial
    let candidates: Vec<Vec<Matrix>> = target
        .iter()
        .map(|t| {
            let want = char_poly_coeffs(f, t);
            (0..per_matrix)
                .into_par_iter()
                .map(|i| matrix_from_index(f, d, i))
                .filter(|m| m.is_invertible(f) && char_poly_coeffs(f, m) == want)
                .collect()
        })
        .collect();

    let total: usize = candidates.iter().map(Vec::len).product();
    let tuples: Vec<Vec<Matrix>> = (0..total)
        .into_par_iter()
        .map(|mut k| {
            candidates
                .iter()
                .map(|c| {
                    let m = c[k % c.len()].clone();
                    k /= c.len();
                    m
                })
                .collect::<Vec<Matrix>>()
        })
        .filter_map(|t| match pseudo_equal(f, target, &t, cap) {
            Ok(true) => Some(Ok(t)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;

    let mut points: Vec<FibrePoint> = tuples
        .par_iter()
        .map(|t| FibrePoint {
            entries: t.iter().map(|m| m.data().to_vec()).collect(),
            tangent_dim: tangent_dim(f, t),
        })
        .collect();
    points.sort_by(|a, b| a.entries.cmp(&b.entries));
    Ok(FibreResult {
        q: f.order(),
        d,
        arity,
        points,
    })
}

type DualMatrix = RingMatrix<(Elem, Elem)>;

/// Dimension of the common kernel of the differentials of all `Λ_i(w)` at
/// `tuple`. Words are taken by length up to `d^2`, and beyond that for as
/// long as the rank keeps growing.
pub fn tangent_dim(f: &Field, tuple: &[Matrix]) -> usize {
    let arity = tuple.len();
    let d = tuple[0].rows();
    let dirs = arity * d * d;
    let ring = DualNumbers(f.clone());
    // one perturbed copy of the tuple per direction
    let perturbed: Vec<Vec<DualMatrix>> = (0..dirs)
        .map(|k| {
            tuple
                .iter()
                .enumerate()
                .map(|(g, m)| {
                    (0..d)
                        .map(|i| {
                            (0..d)
                                .map(|j| {
                                    let eps = if k == g * d * d + i * d + j { 1 } else { 0 };
                                    (m.get(i, j), eps)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut jac = EchelonBasis::new(dirs);
    // layer[w] holds the word matrix for every direction
    let mut layer: Vec<(Vec<usize>, Vec<DualMatrix>)> = vec![(Vec::new(), Vec::new())];
    let mut len = 0;
    loop {
        len += 1;
        let before = jac.len();
        let mut next = Vec::with_capacity(layer.len() * arity);
        for (w, mats) in &layer {
            for g in 0..arity {
                let mut word = w.clone();
                word.push(g);
                let prods: Vec<DualMatrix> = (0..dirs)
                    .map(|k| {
                        if w.is_empty() {
                            perturbed[k][g].clone()
                        } else {
                            ring_mat_mul(&ring, &mats[k], &perturbed[k][g])
                        }
                    })
                    .collect();
                if canonical_rotation(&word) == word {
                    let ls: Vec<Vec<(Elem, Elem)>> =
                        prods.iter().map(|p| lambdas(&ring, p)).collect();
                    for i in 0..d {
                        let row: Vec<Elem> = ls.iter().map(|l| l[i].1).collect();
                        jac.insert(f, &row);
                    }
                }
                next.push((word, prods));
            }
        }
        layer = next;
        let grew = jac.len() > before;
        if jac.len() == dirs || (len >= d * d && !grew) {
            break;
        }
    }
    dirs - jac.len()
}
