//! Small finite groups given by faithful matrix generators, and their
//! absolutely irreducible modules over small fields.

use super::hom::is_isomorphic;
use super::meataxe::{composition_series, is_absolutely_irreducible};
use super::module::GModule;
use crate::error::Result;
use crate::ffalg::group::{closure, MatrixGroup};
use crate::ffalg::{Field, Matrix};

#[derive(Clone, Debug)]
pub struct CatalogueGroup {
    pub name: &'static str,
    pub group: MatrixGroup,
}

fn perm_matrix(images: &[usize]) -> Matrix {
    let n = images.len();
    let mut m = Matrix::zeros(n, n);
    for (j, &i) in images.iter().enumerate() {
        m.set(i, j, 1);
    }
    m
}

fn perm_group(name: &'static str, perms: &[Vec<usize>]) -> CatalogueGroup {
    let f = Field::new(2, 1).expect("GF(2)");
    let gens: Vec<Matrix> = perms.iter().map(|p| perm_matrix(p)).collect();
    CatalogueGroup {
        name,
        group: closure(&f, &gens, 1000).expect("catalogue group closes"),
    }
}

fn matrix_group(name: &'static str, p: u32, gens: &[Vec<Vec<i64>>]) -> CatalogueGroup {
    let f = Field::new(p, 1).expect("prime field");
    let ms: Vec<Matrix> = gens
        .iter()
        .map(|g| Matrix::from_ints(&f, g).expect("generator"))
        .collect();
    CatalogueGroup {
        name,
        group: closure(&f, &ms, 1000).expect("catalogue group closes"),
    }
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Groups of order at most 24, each with a faithful generating set.
pub fn catalogue() -> Vec<CatalogueGroup> {
    vec![
        perm_group("C2", &[cycle(2)]),
        perm_group("C3", &[cycle(3)]),
        perm_group("C4", &[cycle(4)]),
        perm_group("C2xC2", &[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]),
        perm_group("C5", &[cycle(5)]),
        perm_group("C6", &[cycle(6)]),
        perm_group("S3", &[cycle(3), vec![1, 0, 2]]),
        perm_group("C8", &[cycle(8)]),
        perm_group("C2xC4", &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]]),
        perm_group("D8", &[cycle(4), vec![0, 3, 2, 1]]),
        matrix_group("Q8", 3, &[vec![vec![0, 1], vec![2, 0]], vec![vec![1, 1], vec![1, 2]]]),
        perm_group("D10", &[cycle(5), vec![0, 4, 3, 2, 1]]),
        perm_group("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        perm_group("D12", &[cycle(6), vec![0, 5, 4, 3, 2, 1]]),
        matrix_group("Dic3", 13, &[vec![vec![4, 0], vec![0, 10]], vec![vec![0, 1], vec![-1, 0]]]),
        perm_group("C2xS3", &[cycle(3).into_iter().chain([3, 4]).collect(), vec![1, 0, 2, 3, 4], vec![0, 1, 2, 4, 3]]),
        perm_group("S4", &[cycle(4), vec![1, 0, 2, 3]]),
        matrix_group("SL(2,3)", 3, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]]),
    ]
}

/// The left regular module over `field`, with generators matching `group`.
pub fn regular_module(group: &MatrixGroup, field: &Field) -> GModule {
    let n = group.order();
    let action: Vec<Matrix> = group
        .generators()
        .iter()
        .map(|g| {
            let mut m = Matrix::zeros(n, n);
            for (h, x) in group.elements().iter().enumerate() {
                let gh = group.index_of(&g.mul(group.field(), x)).expect("closed");
                m.set(gh, h, 1);
            }
            m
        })
        .collect();
    GModule::from_matrices(field, &action).expect("permutation matrices")
}

/// Every absolutely irreducible module of the group over `field`, up to
/// isomorphism, taken from the composition factors of the regular module.
pub fn absolutely_irreducible_modules(group: &MatrixGroup, field: &Field) -> Result<Vec<GModule>> {
    let reg = regular_module(group, field);
    let mut out: Vec<GModule> = Vec::new();
    for factor in composition_series(&reg)?.factors {
        if !is_absolutely_irreducible(&factor)? {
            continue;
        }
        let mut seen = false;
        for m in &out {
            if m.dim() == factor.dim() && is_isomorphic(m, &factor)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(factor);
        }
    }
    out.sort_by_key(|m| m.dim());
    Ok(out)
}
