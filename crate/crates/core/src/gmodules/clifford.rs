//! Clifford theory for normal subgroups with cyclic quotient.
//!
//! For an absolutely irreducible `V` of `G` and a normal `H` with `G/H`
//! cyclic of order prime to the characteristic, `Res_H V` is reducible over
//! the algebraic closure exactly when `V` is isomorphic to `V ⊗ χ` for a
//! nontrivial character `χ` of `G/H`, and then `V` is induced from `ker χ`.

use serde::Serialize;

use super::hom::is_isomorphic;
use super::meataxe::{composition_series, is_absolutely_irreducible};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::ffalg::group::{map_elements, AbstractGroup, MatrixGroup};
use crate::ffalg::{Elem, Field, Matrix};

#[derive(Clone, Debug, Serialize)]
pub struct CliffordCharacter {
    /// Order of `G/H`.
    pub quotient_order: usize,
    /// `χ(x^j H) = ζ^(exponent * j)` for the chosen coset generator `x`.
    pub exponent: usize,
    /// Order of `χ`.
    pub order: usize,
    /// Order of the field over which `χ` is realised.
    pub field_order: u32,
    /// Values on the generators of `G`, as elements of that field.
    pub values: Vec<Elem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub quotient_order: usize,
    /// `Res_H V` is not absolutely irreducible.
    pub restriction_reducible: bool,
    /// A nontrivial `χ` with `V ≅ V ⊗ χ` of maximal order, if any.
    pub chi: Option<CliffordCharacter>,
    /// Element indices of `ker χ`.
    pub h_star: Option<Vec<usize>>,
    /// Whether `V ≅ Ind_{ker χ} W` was confirmed for some constituent `W`.
    pub induced_verified: Option<bool>,
}

/// Smallest `k` with `m | q^k - 1`.
fn splitting_degree(q: u64, m: u64) -> u32 {
    let mut k = 1;
    let mut x = q % m;
    while x != 1 % m {
        x = x * q % m;
        k += 1;
    }
    k
}

/// Checks that `V` on the generators extends to a homomorphism of `group`.
fn check_is_representation(v: &GModule, group: &MatrixGroup) -> Result<Vec<Matrix>> {
    if v.arity() != group.generators().len() {
        return Err(Error::PreconditionViolated(
            "module and group have different generator counts".into(),
        ));
    }
    let f = v.field();
    let images = map_elements(group, f, v.action());
    for (i, x) in group.elements().iter().enumerate() {
        for (g, gm) in group.generators().iter().enumerate() {
            let j = group.index_of(&x.mul(group.field(), gm)).expect("closed");
            if images[i].mul(f, &v.action()[g]) != images[j] {
                return Err(Error::PreconditionViolated(
                    "the generator matrices do not define a representation of the group".into(),
                ));
            }
        }
    }
    Ok(images)
}

/// Module on generators given by the listed elements.
fn restriction(v: &GModule, images: &[Matrix], elems: &[usize]) -> GModule {
    let action: Vec<Matrix> = elems.iter().map(|&h| images[h].clone()).collect();
    GModule::from_matrices(v.field(), &action).expect("restricted images are invertible")
}

pub fn clifford_test(v: &GModule, group: &MatrixGroup, h: &[usize]) -> Result<CliffordReport> {
    let ag = AbstractGroup::from_matrix_group(group);
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() || h[0] != 0 || ag.subgroup(&h) != h {
        return Err(Error::PreconditionViolated("H is not a subgroup".into()));
    }
    if !ag.is_normal(&h) {
        return Err(Error::PreconditionViolated("H is not normal".into()));
    }
    let (m, x) = ag
        .cyclic_quotient(&h)
        .ok_or_else(|| Error::PreconditionViolated("G/H is not cyclic".into()))?;
    let f = v.field();
    if (m as u64).is_multiple_of(f.p() as u64) {
        return Err(Error::PreconditionViolated(format!(
            "the characteristic {} divides |G/H| = {m}",
            f.p()
        )));
    }
    if !is_absolutely_irreducible(v)? {
        return Err(Error::PreconditionViolated("V is not absolutely irreducible".into()));
    }
    let images = check_is_representation(v, group)?;

    let res = restriction(v, &images, &h);
    let restriction_reducible = !is_absolutely_irreducible(&res)?;

    // coset index j(g) with g in x^j H
    let mut coset = vec![usize::MAX; ag.order()];
    let mut xj = 0;
    for j in 0..m {
        for &e in &h {
            coset[ag.mul(xj, e)] = j;
        }
        xj = ag.mul(xj, x);
    }

    let k = splitting_degree(f.order() as u64, m as u64);
    let big = Field::new(f.p(), f.degree() * k)?;
    let zeta = big.root_of_unity(m as u64).expect("splitting field contains mu_m");
    let vk = v.extend(&big)?;
    let gen_index: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| group.index_of(g).expect("generator"))
        .collect();
    let mut best: Option<CliffordCharacter> = None;
    for e in 1..m {
        let values: Vec<Elem> = gen_index
            .iter()
            .map(|&g| big.pow(zeta, (e * coset[g]) as i64))
            .collect();
        if is_isomorphic(&vk, &vk.twist_by(&values))? {
            let order = m / gcd(e, m);
            if best.as_ref().is_none_or(|b| order > b.order) {
                best = Some(CliffordCharacter {
                    quotient_order: m,
                    exponent: e,
                    order,
                    field_order: big.order(),
                    values,
                });
            }
        }
    }

    let (h_star, induced_verified) = match &best {
        None => (None, None),
        Some(chi) => {
            let ker: Vec<usize> = (0..ag.order())
                .filter(|&g| (chi.exponent * coset[g]) % m == 0)
                .collect();
            let verified = verify_induced(v, group, &ag, &images, &ker, x)?;
            (Some(ker), Some(verified))
        }
    };
    Ok(CliffordReport {
        quotient_order: m,
        restriction_reducible,
        chi: best,
        h_star,
        induced_verified,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Looks for a constituent `W` of `Res_{H*} V` with `V ≅ Ind_{H*} W`, extending
/// scalars a few times if needed for `W` to split.
fn verify_induced(
    v: &GModule,
    group: &MatrixGroup,
    ag: &AbstractGroup,
    images: &[Matrix],
    ker: &[usize],
    x: usize,
) -> Result<bool> {
    let s = ag.order() / ker.len();
    if !v.dim().is_multiple_of(s) {
        return Ok(false);
    }
    let wdim = v.dim() / s;
    let f = v.field();
    let mut pos = vec![usize::MAX; ag.order()];
    for (i, &e) in ker.iter().enumerate() {
        pos[e] = i;
    }
    // coset representatives x^0, ..., x^(s-1)
    let mut reps = vec![0];
    for _ in 1..s {
        reps.push(ag.mul(*reps.last().unwrap(), x));
    }
    let gen_index: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| group.index_of(g).expect("generator"))
        .collect();
    for ext in 1..=4 {
        let big = f.extension(ext)?;
        let table = f.embedding_into(&big)?;
        let vk = v.extend(&big)?;
        let res_images: Vec<Matrix> = ker.iter().map(|&e| images[e].map(&table)).collect();
        let res = GModule::from_matrices(&big, &res_images)?;
        for w in composition_series(&res)?.factors {
            if w.dim() != wdim {
                continue;
            }
            let ind: Vec<Matrix> = gen_index
                .iter()
                .map(|&g| {
                    let mut m = Matrix::zeros(v.dim(), v.dim());
                    for (i, &ti) in reps.iter().enumerate() {
                        for (j, &tj) in reps.iter().enumerate() {
                            let y = ag.mul(ag.mul(ag.inverse(ti), g), tj);
                            if pos[y] == usize::MAX {
                                continue;
                            }
                            let block = &w.action()[pos[y]];
                            for a in 0..wdim {
                                for b in 0..wdim {
                                    m.set(i * wdim + a, j * wdim + b, block.get(a, b));
                                }
                            }
                        }
                    }
                    m
                })
                .collect();
            let induced = GModule::from_matrices(&big, &ind)?;
            if is_isomorphic(&vk, &induced)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::super::catalogue::{absolutely_irreducible_modules, catalogue};
    use super::*;

    fn named(name: &str) -> MatrixGroup {
        catalogue().into_iter().find(|g| g.name == name).unwrap().group
    }

    #[test]
    fn s3_restricted_to_a3() {
        let g = named("S3");
        let f = Field::new(7, 1).unwrap();
        let v = absolutely_irreducible_modules(&g, &f)
            .unwrap()
            .into_iter()
            .find(|m| m.dim() == 2)
            .unwrap();
        let ag = AbstractGroup::from_matrix_group(&g);
        let a3 = ag.derived();
        let r = clifford_test(&v, &g, &a3).unwrap();
        assert!(r.restriction_reducible);
        let chi = r.chi.unwrap();
        assert_eq!(chi.order, 2);
        // sign character: -1 on the transposition generator
        assert_eq!(chi.values, vec![1, 6]);
        assert_eq!(r.h_star.unwrap(), a3);
        assert_eq!(r.induced_verified, Some(true));
    }

    #[test]
    fn whole_group_gives_nothing() {
        let g = named("S3");
        let f = Field::new(7, 1).unwrap();
        let v = absolutely_irreducible_modules(&g, &f).unwrap().pop().unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        let r = clifford_test(&v, &g, &all).unwrap();
        assert!(!r.restriction_reducible);
        assert!(r.chi.is_none());
    }

    #[test]
    fn q8_over_gf9() {
        let g = named("Q8");
        let f = Field::new(3, 2).unwrap();
        let v = absolutely_irreducible_modules(&g, &f)
            .unwrap()
            .into_iter()
            .find(|m| m.dim() == 2)
            .unwrap();
        let ag = AbstractGroup::from_matrix_group(&g);
        let center = ag.derived();
        assert_eq!(center.len(), 2);
        for h in ag.normal_subgroups_with_cyclic_quotient() {
            if h.len() == 4 {
                let r = clifford_test(&v, &g, &h).unwrap();
                assert!(r.restriction_reducible);
                assert!(r.chi.is_some());
                assert_eq!(r.induced_verified, Some(true));
            }
        }
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let g = named("S3");
        let f = Field::new(7, 1).unwrap();
        let v = absolutely_irreducible_modules(&g, &f).unwrap().pop().unwrap();
        let ag = AbstractGroup::from_matrix_group(&g);
        let err = clifford_test(&v, &g, &ag.subgroup(&[ag.generators[1]])).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }
}
