//! Module homomorphisms and isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::meataxe::composition_series;
use super::module::GModule;
use crate::error::{Error, Result};
use crate::ffalg::linalg::{solve_joint_kernel, sylvester_operator, unvec};
use crate::ffalg::Matrix;

/// Random invertibility samples before falling back to enumeration.
pub const ISO_SAMPLES: usize = 256;

/// Hom spaces with at most this many elements are enumerated exhaustively.
pub const ISO_EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Basis of `Hom_G(V, W)` as `dim W x dim V` matrices `X` with `W_g X = X V_g`.
pub fn hom_basis(v: &GModule, w: &GModule) -> Result<Vec<Matrix>> {
    if v.arity() != w.arity() || v.field() != w.field() {
        return Err(Error::DimensionMismatch("modules over different groups".into()));
    }
    let (dv, dw) = (v.dim(), w.dim());
    if dv == 0 || dw == 0 {
        return Ok(vec![]);
    }
    let f = v.field();
    let ops: Vec<Matrix> = v
        .action()
        .iter()
        .zip(w.action())
        .map(|(a, b)| sylvester_operator(f, b, a))
        .collect();
    Ok(solve_joint_kernel(f, &ops)?
        .iter()
        .map(|x| unvec(dw, dv, x))
        .collect())
}

pub fn hom_dim(v: &GModule, w: &GModule) -> Result<usize> {
    Ok(hom_basis(v, w)?.len())
}

fn combine(f: &crate::ffalg::Field, basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(f, &b.scale(f, c));
        }
    }
    acc
}

/// An invertible intertwiner `X` with `W_g X = X V_g`, if one exists.
pub fn find_isomorphism(v: &GModule, w: &GModule) -> Result<Option<Matrix>> {
    if v.dim() != w.dim() {
        return Ok(None);
    }
    if v.dim() == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    let basis = hom_basis(v, w)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let f = v.field();
    let q = f.order() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..ISO_SAMPLES {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.order())).collect();
        let x = combine(f, &basis, &coeffs);
        if x.is_invertible(f) {
            return Ok(Some(x));
        }
    }
    let space = (basis.len() as f64) * (q as f64).log2();
    if space > (ISO_EXHAUSTIVE_LIMIT as f64).log2() + 1e-9 {
        return Err(Error::Inconclusive(format!(
            "no invertible intertwiner among {ISO_SAMPLES} samples of a {}-dimensional Hom space",
            basis.len()
        )));
    }
    let total = q.pow(basis.len() as u32);
    for idx in 1..total {
        let mut t = idx;
        let coeffs: Vec<u32> = (0..basis.len())
            .map(|_| {
                let c = (t % q) as u32;
                t /= q;
                c
            })
            .collect();
        let x = combine(f, &basis, &coeffs);
        if x.is_invertible(f) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(v: &GModule, w: &GModule) -> Result<bool> {
    Ok(find_isomorphism(v, w)?.is_some())
}

/// Whether the two modules have the same composition factors with
/// multiplicities, matched up to isomorphism.
pub fn same_composition_factors(v: &GModule, w: &GModule) -> Result<bool> {
    if v.dim() != w.dim() {
        return Ok(false);
    }
    factors_match(&composition_series(v)?.factors, &composition_series(w)?.factors)
}

/// Multiset equality of two lists of irreducible modules up to isomorphism.
pub fn factors_match(a: &[GModule], b: &[GModule]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut b: Vec<&GModule> = b.iter().collect();
    for x in a {
        let mut hit = None;
        for (j, y) in b.iter().enumerate() {
            if x.dim() == y.dim() && is_isomorphic(x, y)? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => {
                b.swap_remove(j);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::Field;

    fn s3(f: &Field) -> GModule {
        let s = Matrix::from_ints(f, &[vec![0, -1], vec![1, -1]]).unwrap();
        let t = Matrix::from_ints(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        GModule::from_matrices(f, &[s, t]).unwrap()
    }

    #[test]
    fn conjugate_modules_are_isomorphic() {
        let f = Field::new(7, 1).unwrap();
        let v = s3(&f);
        let p = Matrix::from_ints(&f, &[vec![2, 1], vec![5, 3]]).unwrap();
        let pi = p.inverse(&f).unwrap();
        let conj: Vec<Matrix> = v.action().iter().map(|a| p.mul(&f, a).mul(&f, &pi)).collect();
        let w = GModule::from_matrices(&f, &conj).unwrap();
        let x = find_isomorphism(&v, &w).unwrap().unwrap();
        for (a, b) in v.action().iter().zip(w.action()) {
            assert_eq!(b.mul(&f, &x), x.mul(&f, a));
        }
    }

    #[test]
    fn twisted_by_sign_is_isomorphic_for_s3() {
        let f = Field::new(7, 1).unwrap();
        let v = s3(&f);
        let w = v.twist_by(&[1, 6]);
        assert!(is_isomorphic(&v, &w).unwrap());
    }

    #[test]
    fn different_characters_are_not_isomorphic() {
        let f = Field::new(5, 1).unwrap();
        let a = GModule::from_matrices(&f, &[Matrix::scalar(1, 2)]).unwrap();
        let b = GModule::from_matrices(&f, &[Matrix::scalar(1, 3)]).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
        assert_eq!(hom_dim(&a, &b).unwrap(), 0);
    }

    #[test]
    fn unipotent_and_identity_share_factors_but_differ() {
        let f = Field::new(3, 1).unwrap();
        let u = GModule::from_matrices(&f, &[Matrix::from_ints(&f, &[vec![1, 1], vec![0, 1]]).unwrap()]).unwrap();
        let i = GModule::from_matrices(&f, &[Matrix::identity(2)]).unwrap();
        assert!(!is_isomorphic(&u, &i).unwrap());
        assert!(same_composition_factors(&u, &i).unwrap());
    }
}
