//! Irreducible components of the framed deformation ring and related
//! smoothness and factoriality bookkeeping.
//!
//! Counts are those valid once the coefficient field contains the values of
//! every character of `μ`, which the report states explicitly.

use serde::Serialize;

use crate::cohom;
use crate::dimension::expected_dims;
use crate::error::{Error, Result};
use crate::ffalg::group::cap_from_env;
use crate::ffalg::Elem;
use crate::gmodules::hom::is_isomorphic;
use crate::gmodules::meataxe::{composition_series, is_absolutely_irreducible, semisimplify};
use crate::gmodules::{GModule, LocalFieldData, ResidualRep};
use crate::pseudochar::pseudo_equal;

/// `χ: μ -> O^×` sending the chosen generator to the `index`-th power of a
/// fixed primitive `mu_order`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuCharacter {
    pub mu_order: u64,
    pub index: u64,
}

impl MuCharacter {
    pub fn new(mu_order: u64, index: u64) -> Result<Self> {
        if index >= mu_order {
            return Err(Error::invalid("index", format!("{index} is not below {mu_order}")));
        }
        Ok(MuCharacter { mu_order, index })
    }

    pub fn all(mu_order: u64) -> Vec<MuCharacter> {
        (0..mu_order).map(|index| MuCharacter { mu_order, index }).collect()
    }
}

pub fn component_count(rep: &ResidualRep) -> u64 {
    rep.local_field().mu_order
}

/// `(rank of O[μ], number of power-series variables)` of the determinant ring.
pub fn det_ring_structure(lf: &LocalFieldData) -> (u64, u32) {
    (lf.mu_order, lf.n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhiData {
    /// `e` in `d = e p^m` with `p ∤ e`.
    pub prime_to_p: u64,
    /// `p^m`.
    pub p_part: u64,
    /// `(p^m)^(n+1)`.
    pub flat_degree: u64,
}

pub fn phi_d_data(d: u64, lf: &LocalFieldData) -> PhiData {
    assert!(d >= 1, "d must be positive");
    let p = lf.p as u64;
    let (mut e, mut pm) = (d, 1);
    while e % p == 0 {
        e /= p;
        pm *= p;
    }
    PhiData {
        prime_to_p: e,
        p_part: pm,
        flat_degree: pm.pow(lf.n + 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterExtension {
    /// Values of the sub character on the generators.
    pub psi1: Vec<Elem>,
    /// Values of the quotient character on the generators.
    pub psi2: Vec<Elem>,
    /// Order of the field the characters live in.
    pub field_order: u32,
    pub split: bool,
    /// `ψ1 ≠ ψ2(1)` and `ψ2 ≠ ψ1(1)`.
    pub twist_distinct: bool,
    pub distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessFlags {
    pub h2_ad: usize,
    pub h2_ad0: usize,
    /// `h2(ad0) = 0`, so every `R^{□,χ}` is formally smooth.
    pub formally_smooth: bool,
    /// Present when `d = 2` and the representation is an extension of
    /// characters, possibly after a quadratic scalar extension.
    pub extension: Option<CharacterExtension>,
    /// `F = Q_p`, `p > 2`, `d = 2`, and the twist-distinctness hypothesis holds.
    pub pnot2: bool,
    /// `F = Q_2`, `d = 2`, non-split extension of distinct characters.
    pub peq2: bool,
}

fn character_extension(m: &GModule) -> Result<Option<CharacterExtension>> {
    if m.dim() != 2 {
        return Ok(None);
    }
    let m = if is_absolutely_irreducible(m)? {
        return Ok(None);
    } else if composition_series(m)?.factors.len() == 2 {
        m.clone()
    } else {
        m.extend(&m.field().extension(2)?)?
    };
    let series = composition_series(&m)?;
    let [sub, quo] = &series.factors[..] else {
        return Ok(None);
    };
    let values = |x: &GModule| x.action().iter().map(|a| a.get(0, 0)).collect::<Vec<Elem>>();
    let f = m.field();
    let cap = cap_from_env();
    let eq = |a: &GModule, b: &GModule| pseudo_equal(f, a.action(), b.action(), cap);
    let twist_distinct = !eq(sub, &quo.twist(1))? && !eq(quo, &sub.twist(1))?;
    let distinct = !eq(sub, quo)?;
    let ss = semisimplify(&m)?;
    let split = is_isomorphic(&m, &GModule::from_matrices(f, &ss.block_diagonal)?)?;
    Ok(Some(CharacterExtension {
        psi1: values(sub),
        psi2: values(quo),
        field_order: f.order(),
        split,
        twist_distinct,
        distinct,
    }))
}

pub fn smoothness_predicates(rep: &ResidualRep) -> Result<SmoothnessFlags> {
    let m = rep.module();
    let h2_ad = cohom::h2(&m.ad());
    let h2_ad0 = cohom::h2(&m.ad0());
    let extension = character_extension(&m)?;
    let lf = rep.local_field();
    let pnot2 = lf.is_qp()
        && lf.p > 2
        && extension.as_ref().is_some_and(|x| x.twist_distinct);
    let peq2 = lf.is_qp()
        && lf.p == 2
        && extension.as_ref().is_some_and(|x| !x.split && x.distinct);
    Ok(SmoothnessFlags {
        h2_ad,
        h2_ad0,
        formally_smooth: h2_ad0 == 0,
        extension,
        pnot2,
        peq2,
    })
}

/// The one case in which the components of an absolutely irreducible
/// representation may fail to be factorial: `d = 2`, `F = Q_3`, `ρ ≅ ρ(1)`.
pub fn factorial_exception(rep: &ResidualRep) -> Result<bool> {
    let m = rep.module();
    if !is_absolutely_irreducible(&m)? {
        return Err(Error::PreconditionViolated(
            "factoriality is only decided for absolutely irreducible representations".into(),
        ));
    }
    let lf = rep.local_field();
    if rep.dim() != 2 || lf.p != 3 || !lf.is_qp() {
        return Ok(false);
    }
    let twisted = m.twist(1);
    Ok(pseudo_equal(m.field(), m.action(), twisted.action(), cap_from_env())?
        && is_isomorphic(&m, &twisted)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChiDims {
    pub index: u64,
    pub dim: usize,
    pub dim_mod_p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub mu_order: u64,
    pub component_count_generic: u64,
    /// Counts assume the coefficient field is large enough.
    pub large_coefficient_field: bool,
    pub det_ring_rank: u64,
    pub det_ring_variables: u32,
    pub per_chi: Vec<ChiDims>,
    pub fixed_det_dim: usize,
    pub fixed_det_dim_mod_p: usize,
    /// `Some(true)` when factoriality may fail; `None` when not decided.
    pub factorial_exception: Option<bool>,
}

pub fn component_report(rep: &ResidualRep) -> Result<ComponentReport> {
    let lf = rep.local_field();
    let e = expected_dims(rep.dim(), lf.n as usize, lf.mu_order);
    let (rank, vars) = det_ring_structure(lf);
    let factorial = match factorial_exception(rep) {
        Ok(b) => Some(b),
        Err(Error::PreconditionViolated(_)) => None,
        Err(err) => return Err(err),
    };
    Ok(ComponentReport {
        mu_order: lf.mu_order,
        component_count_generic: component_count(rep),
        large_coefficient_field: true,
        det_ring_rank: rank,
        det_ring_variables: vars,
        per_chi: MuCharacter::all(lf.mu_order)
            .into_iter()
            .map(|c| ChiDims {
                index: c.index,
                dim: e.r_box_chi,
                dim_mod_p: e.r_box_chi_mod_p,
            })
            .collect(),
        fixed_det_dim: e.r_box_psi,
        fixed_det_dim_mod_p: e.r_box_psi_mod_p,
        factorial_exception: factorial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{Field, Matrix};

    fn rep(p: u32, lf: LocalFieldData, mats: Vec<Vec<Vec<i64>>>, omegas: Vec<Elem>) -> ResidualRep {
        let f = Field::new(p, 1).unwrap();
        let mats = mats.iter().map(|m| Matrix::from_ints(&f, m).unwrap()).collect();
        ResidualRep::new(f, lf, mats, omegas).unwrap()
    }

    #[test]
    fn counts_and_det_ring() {
        let q5 = LocalFieldData::qp(5).unwrap();
        let r = rep(5, q5.clone(), vec![vec![vec![1]]], vec![2]);
        assert_eq!(component_count(&r), 1);
        assert_eq!(det_ring_structure(&q5), (1, 2));
        assert_eq!(det_ring_structure(&LocalFieldData::qp(2).unwrap()), (2, 2));
        let wild = LocalFieldData::new(3, 4, 1, 9).unwrap();
        assert_eq!(det_ring_structure(&wild), (9, 5));
        assert_eq!(MuCharacter::all(5).len(), 5);
    }

    #[test]
    fn phi_examples() {
        let d = |p, n| LocalFieldData::new(p, n, 1, if p == 2 { 2 } else { 1 }).unwrap();
        assert_eq!(phi_d_data(3, &d(5, 1)), PhiData { prime_to_p: 3, p_part: 1, flat_degree: 1 });
        assert_eq!(phi_d_data(2, &d(2, 1)), PhiData { prime_to_p: 1, p_part: 2, flat_degree: 4 });
        assert_eq!(phi_d_data(4, &d(2, 2)), PhiData { prime_to_p: 1, p_part: 4, flat_degree: 64 });
    }

    #[test]
    fn one_plus_omega_fails_pnot2() {
        let r = rep(5, LocalFieldData::qp(5).unwrap(), vec![vec![vec![1, 0], vec![0, 2]]], vec![2]);
        let s = smoothness_predicates(&r).unwrap();
        assert!(!s.pnot2);
        assert_eq!(s.h2_ad0, 1);
    }

    #[test]
    fn omega_squared_extension_over_q7() {
        // ψ1 = 1, ψ2 = ω^2 with ω(g) = 3
        let r = rep(7, LocalFieldData::qp(7).unwrap(), vec![vec![vec![1, 1], vec![0, 2]]], vec![3]);
        let s = smoothness_predicates(&r).unwrap();
        assert!(s.pnot2);
        assert_eq!(s.h2_ad0, 0);
        assert_eq!(s.h2_ad, 0);
    }

    #[test]
    fn factorial_exception_cases() {
        let q5 = LocalFieldData::qp(5).unwrap();
        // S3 over GF(5), absolutely irreducible, d = 2 but F = Q_5
        let r = rep(
            5,
            q5,
            vec![vec![vec![0, -1], vec![1, -1]], vec![vec![0, 1], vec![1, 0]]],
            vec![1, 4],
        );
        assert!(!factorial_exception(&r).unwrap());
        let reducible = rep(5, LocalFieldData::qp(5).unwrap(), vec![vec![vec![1, 0], vec![0, 2]]], vec![2]);
        assert!(factorial_exception(&reducible).is_err());
    }
}
