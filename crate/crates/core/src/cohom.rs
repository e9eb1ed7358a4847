//! Cohomological dimension ledger for a residual representation.
//!
//! `h0` is computed as a joint fixed space. `h2` comes from local duality as
//! `h0` of the twisted contragredient, and `h1` from the Euler characteristic
//! formula. No cochains are ever built.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmodules::hom::is_isomorphic;
use crate::gmodules::{GModule, ResidualRep};

pub fn h0(m: &GModule) -> usize {
    m.invariants_dim()
}

/// `dim H^0(M^∨(1))`.
pub fn h2(m: &GModule) -> usize {
    m.dual().twist(1).invariants_dim()
}

/// Euler characteristic: `h0 + h2 + dim(M) * n`.
pub fn h1_from(h0: usize, h2: usize, dim: usize, n: u32) -> usize {
    h0 + h2 + dim * n as usize
}

pub fn h1(m: &GModule, n: u32) -> usize {
    h1_from(h0(m), h2(m), m.dim(), n)
}

/// `dim Z^1 = dim M - h0 + h1`.
pub fn dim_z1(m: &GModule, n: u32) -> usize {
    m.dim() - h0(m) + h1(m, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomProfile {
    pub d: usize,
    pub n: u32,
    pub h0_ad: usize,
    pub h1_ad: usize,
    pub h2_ad: usize,
    pub h0_ad0: usize,
    pub h1_ad0: usize,
    pub h2_ad0: usize,
    pub dim_z1_ad: usize,
    pub dim_z1_ad0: usize,
    /// Number of generators of the framed deformation ring.
    pub r: usize,
    /// Number of relations, `h2_ad`.
    pub s: usize,
    /// Number of relations of the fixed-determinant presentation, `h2_ad0`.
    pub t: usize,
    pub expected_dim_r: usize,
    pub expected_dim_r_mod: usize,
    pub rel_dim_fixed_det: usize,
}

pub fn profile(rep: &ResidualRep) -> CohomProfile {
    let d = rep.dim();
    let n = rep.local_field().n;
    let m = rep.module();
    let ad = m.ad();
    let ad0 = m.ad0();
    let (h0_ad, h2_ad) = (h0(&ad), h2(&ad));
    let (h0_ad0, h2_ad0) = (h0(&ad0), h2(&ad0));
    let h1_ad = h1_from(h0_ad, h2_ad, d * d, n);
    let h1_ad0 = h1_from(h0_ad0, h2_ad0, d * d - 1, n);
    let dim_z1_ad = d * d - h0_ad + h1_ad;
    let dim_z1_ad0 = d * d - 1 - h0_ad0 + h1_ad0;
    let nn = n as usize;
    CohomProfile {
        d,
        n,
        h0_ad,
        h1_ad,
        h2_ad,
        h0_ad0,
        h1_ad0,
        h2_ad0,
        dim_z1_ad,
        dim_z1_ad0,
        r: dim_z1_ad,
        s: h2_ad,
        t: h2_ad0,
        expected_dim_r: 1 + dim_z1_ad - h2_ad,
        expected_dim_r_mod: dim_z1_ad - h2_ad,
        rel_dim_fixed_det: (d * d - 1) * (nn + 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDims {
    pub hom: usize,
    pub ext1: usize,
    pub ext2: usize,
}

/// Ext groups between two non-isomorphic absolutely irreducible constituents:
/// `hom = 0`, `ext2 = dim Hom(ρ_i, ρ_j(1))`, `ext1 = d_i d_j n + ext2`.
pub fn ext_dims(rho_i: &GModule, rho_j: &GModule, n: u32) -> Result<ExtDims> {
    if rho_i.dim() == rho_j.dim() && is_isomorphic(rho_i, rho_j)? {
        return Err(Error::PreconditionViolated(
            "Ext dimensions are only tabulated for non-isomorphic constituents".into(),
        ));
    }
    // H^*(Hom(ρ_j, ρ_i)); its H^2 is dual to Hom(ρ_i, ρ_j(1)).
    let m = GModule::hom(rho_j, rho_i)?;
    let hom = h0(&m);
    let ext2 = h2(&m);
    let ext1 = h1_from(hom, ext2, m.dim(), n);
    Ok(ExtDims { hom, ext1, ext2 })
}

/// `dim n (1 + n) + sum_{i<j} twist_hom[i][j]` with `dim n = sum_{i<j} d_i d_j`.
pub fn fibre_tangent_dim(dims: &[usize], twist_hom: &[Vec<usize>], n: u32) -> usize {
    let mut nil = 0;
    let mut twists = 0;
    for i in 0..dims.len() {
        for j in i + 1..dims.len() {
            nil += dims[i] * dims[j];
            twists += twist_hom[i][j];
        }
    }
    nil * (1 + n as usize) + twists
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{Field, Matrix};
    use crate::gmodules::LocalFieldData;

    fn rep_q5(m: Vec<Vec<i64>>, omega: u32) -> ResidualRep {
        let f = Field::new(5, 1).unwrap();
        ResidualRep::new(
            f.clone(),
            LocalFieldData::qp(5).unwrap(),
            vec![Matrix::from_ints(&f, &m).unwrap()],
            vec![omega],
        )
        .unwrap()
    }

    #[test]
    fn trivial_rep_over_q5() {
        let r = rep_q5(vec![vec![1, 0], vec![0, 1]], 2);
        let ad = r.module().ad();
        assert_eq!(h0(&ad), 4);
        assert_eq!(h2(&ad), 0);
        assert_eq!(h1(&ad, 1), 8);
        let p = profile(&r);
        assert_eq!((p.r, p.s, p.expected_dim_r), (8, 0, 9));
        assert_eq!(p.rel_dim_fixed_det, 6);
    }

    #[test]
    fn trivial_omega_means_h2_equals_h0() {
        let r = rep_q5(vec![vec![1, 0], vec![0, 1]], 1);
        assert_eq!(h2(&r.module().ad()), 4);
    }

    #[test]
    fn one_plus_omega_over_q5() {
        let r = rep_q5(vec![vec![1, 0], vec![0, 2]], 2);
        let ad = r.module().ad();
        assert_eq!(h0(&ad), 2);
        assert_eq!(h2(&ad), 1);
        assert_eq!(h1(&ad, 1), 7);
        let p = profile(&r);
        assert_eq!((p.r, p.s), (9, 1));
        assert_eq!(p.r - p.s, 8);
    }

    #[test]
    fn h1_substitution() {
        assert_eq!(h1_from(0, 0, 3, 2), 6);
    }

    #[test]
    fn ad0_dual_is_adbar() {
        for omega in [1, 2, 4] {
            let r = rep_q5(vec![vec![2, 1], vec![0, 1]], omega);
            let m = r.module();
            assert_eq!(h2(&m.ad0()), h0(&m.adbar().twist(1)));
        }
    }

    #[test]
    fn ext_examples() {
        let f = Field::new(5, 1).unwrap();
        let one = GModule::trivial(&f, &[2]);
        let omega = one.twist(1);
        let e = ext_dims(&one, &omega, 1).unwrap();
        assert_eq!((e.hom, e.ext1, e.ext2), (0, 1, 0));
        let e = ext_dims(&one.twist(-1), &one, 1).unwrap();
        assert_eq!((e.hom, e.ext1, e.ext2), (0, 1, 0));
        // rho_i = rho_j(1): ext2 = 1
        let e = ext_dims(&omega, &one, 1).unwrap();
        assert_eq!((e.ext1, e.ext2), (2, 1));
        assert!(ext_dims(&one, &one, 1).is_err());
    }

    #[test]
    fn tangent_formula_examples() {
        assert_eq!(fibre_tangent_dim(&[1, 1], &[vec![0, 0], vec![0, 0]], 1), 2);
        assert_eq!(fibre_tangent_dim(&[1, 1], &[vec![0, 1], vec![0, 0]], 1), 3);
        let z = vec![vec![0; 3]; 3];
        assert_eq!(fibre_tangent_dim(&[2, 1, 1], &z, 2), 15);
    }
}
