//! Deterministic regression corpora shared by the test suites and the
//! command-line self-test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ffalg::group::{closure, AbstractGroup};
use crate::ffalg::{Elem, Field, Matrix};
use crate::gmodules::catalogue::{absolutely_irreducible_modules, catalogue};
use crate::gmodules::clifford::clifford_test;
use crate::gmodules::hom::factors_match;
use crate::gmodules::meataxe::composition_series;
use crate::gmodules::{GModule, LocalFieldData, ResidualRep};
use crate::pseudochar::pseudo_equal;

/// All of `GL_d(GF(q))`, ordered by the base-`q` digits of the entries.
pub fn general_linear(f: &Field, d: usize) -> Vec<Matrix> {
    let q = f.order() as u64;
    (0..q.pow((d * d) as u32))
        .filter_map(|mut idx| {
            let data = (0..d * d)
                .map(|_| {
                    let e = (idx % q) as Elem;
                    idx /= q;
                    e
                })
                .collect();
            let m = Matrix::from_vec(d, d, data).expect("square");
            m.is_invertible(f).then_some(m)
        })
        .collect()
}

fn nonzero(rng: &mut ChaCha8Rng, f: &Field) -> Elem {
    rng.gen_range(1..f.order())
}

fn cycle_matrix(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for j in 0..d {
        m.set((j + 1) % d, j, 1);
    }
    m
}

/// Residual representations over `Q_p`-type data of every degree
/// `n <= 4`, for `p` in {2, 3, 5, 7} and `d <= 4`: diagonal, diagonal with a
/// unipotent, and monomial images, followed by absolutely irreducible
/// modules of a few catalogued groups.
pub fn euler_corpus() -> Vec<ResidualRep> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5, 7] {
        let f = Field::new(p, 1).expect("prime field");
        for n in 1..=4u32 {
            let lf = LocalFieldData::new(p, n, 1, if p == 2 { 2 } else { 1 }).expect("local data");
            for d in 1..=4usize {
                for variant in 0..3u64 {
                    let seed = (p as u64) << 32 | (n as u64) << 16 | (d as u64) << 8 | variant;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let diag: Vec<Elem> = (0..d).map(|_| nonzero(&mut rng, &f)).collect();
                    let mut mats = vec![Matrix::diag(&diag)];
                    match (variant, d) {
                        (0, _) => {}
                        (_, 1) => mats.push(Matrix::diag(&[nonzero(&mut rng, &f)])),
                        (1, _) => {
                            let mut u = Matrix::identity(d);
                            u.set(0, 1, 1);
                            mats.push(u);
                        }
                        _ => mats.push(cycle_matrix(d)),
                    }
                    let omegas = mats
                        .iter()
                        .map(|_| if p == 2 { 1 } else { nonzero(&mut rng, &f) })
                        .collect();
                    out.push(ResidualRep::new(f.clone(), lf.clone(), mats, omegas).expect("corpus rep"));
                }
            }
        }
    }
    let groups = catalogue();
    for (name, p) in [("S3", 5u32), ("S3", 7), ("Q8", 3), ("Q8", 5), ("D8", 7), ("SL(2,3)", 3)] {
        let g = &groups.iter().find(|c| c.name == name).expect("catalogued").group;
        let f = Field::new(p, 1).expect("prime field");
        for (k, m) in absolutely_irreducible_modules(g, &f).expect("modules").into_iter().enumerate() {
            if m.dim() > 4 {
                continue;
            }
            for n in 1..=2u32 {
                let mut rng = ChaCha8Rng::seed_from_u64((p as u64) << 8 | (k as u64) << 4 | n as u64);
                let omegas = m.action().iter().map(|_| nonzero(&mut rng, &f)).collect();
                let lf = LocalFieldData::new(p, n, 1, 1).expect("local data");
                out.push(ResidualRep::new(f.clone(), lf, m.action().to_vec(), omegas).expect("corpus rep"));
            }
        }
    }
    out
}

/// Two-dimensional extensions of characters over `Q_p` for `p` in {3, 5, 7}:
/// one generator `[[a, b], [0, c]]` with `b` in {0, 1}, and two generators
/// `diag(a, c)`, `[[1, 1], [0, 1]]`. The cyclotomic character of `Q_p` maps
/// onto `GF(p)^×`, so `ω` on the first generator runs over the primitive
/// roots and is 1 on the second.
pub fn character_extension_corpus() -> Vec<ResidualRep> {
    let mut out = Vec::new();
    for p in [3u32, 5, 7] {
        let f = Field::new(p, 1).expect("prime field");
        let lf = LocalFieldData::qp(p)
            .and_then(|l| l.with_zeta_degree(p - 1))
            .expect("Q_p");
        let rep = |mats: Vec<Matrix>, omegas: Vec<Elem>| ResidualRep::new(f.clone(), lf.clone(), mats, omegas);
        for a in 1..p {
            for c in 1..p {
                for w in 1..p {
                    let mut batch = Vec::new();
                    for b in 0..2 {
                        let g = Matrix::from_rows(&f, &[vec![a, b], vec![0, c]]).expect("2x2");
                        batch.push(rep(vec![g], vec![w]));
                    }
                    let g1 = Matrix::diag(&[a, c]);
                    let g2 = Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).expect("2x2");
                    batch.push(rep(vec![g1, g2], vec![w, 1]));
                    // non-generating omegas are rejected by validation
                    out.extend(batch.into_iter().filter_map(|r| r.ok()));
                }
            }
        }
    }
    out
}

/// Non-split extensions of distinct characters over `Q_2`, realised over
/// `GF(4)`.
pub fn q2_nonsplit_instances() -> Vec<ResidualRep> {
    let f = Field::new(2, 2).expect("GF(4)");
    let lf = LocalFieldData::qp(2).expect("Q_2");
    let mut out = Vec::new();
    for a in 1..4 {
        for c in 1..4 {
            if a == c {
                continue;
            }
            for b in 0..2 {
                let g1 = Matrix::from_rows(&f, &[vec![a, b], vec![0, c]]).expect("2x2");
                let g2 = Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).expect("2x2");
                out.push(ResidualRep::new(f.clone(), lf.clone(), vec![g1, g2], vec![1, 1]).expect("rep"));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct BnFamily {
    pub name: String,
    pub field: Field,
    pub tuples: Vec<Vec<Matrix>>,
}

/// Every generator tuple of the listed shapes over `GF(2)` and `GF(3)`:
/// single elements of `GL_2(2)`, `GL_2(3)`, `GL_3(2)`, and pairs in `GL_2(2)`.
pub fn brauer_nesbitt_families() -> Vec<BnFamily> {
    let f2 = Field::new(2, 1).expect("GF(2)");
    let f3 = Field::new(3, 1).expect("GF(3)");
    let singles = |f: &Field, d| general_linear(f, d).into_iter().map(|m| vec![m]).collect();
    let gl22 = general_linear(&f2, 2);
    let pairs = gl22
        .iter()
        .flat_map(|a| gl22.iter().map(move |b| vec![a.clone(), b.clone()]))
        .collect();
    vec![
        BnFamily { name: "GL2(2) singles".into(), field: f2.clone(), tuples: singles(&f2, 2) },
        BnFamily { name: "GL2(3) singles".into(), field: f3.clone(), tuples: singles(&f3, 2) },
        BnFamily { name: "GL3(2) singles".into(), field: f2.clone(), tuples: singles(&f2, 3) },
        BnFamily { name: "GL2(2) pairs".into(), field: f2, tuples: pairs },
    ]
}

/// Closure orders above this are left out of the comparison.
pub const BN_MAX_ORDER: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct BnOutcome {
    pub name: String,
    pub tuples: usize,
    pub pairs: usize,
    pub equal_pairs: usize,
    pub disagreements: Vec<(usize, usize)>,
}

/// Compares, for every unordered pair of tuples, coefficient equality on the
/// paired closure against matching of composition factors.
pub fn brauer_nesbitt_check(fam: &BnFamily, cap: usize) -> Result<BnOutcome> {
    let f = &fam.field;
    let kept: Vec<usize> = fam
        .tuples
        .par_iter()
        .enumerate()
        .map(|(i, t)| Ok((i, closure(f, t, cap)?.order() <= BN_MAX_ORDER)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(i, ok)| ok.then_some(i))
        .collect();
    let factors: Vec<Vec<GModule>> = kept
        .par_iter()
        .map(|&i| Ok(composition_series(&GModule::from_matrices(f, &fam.tuples[i])?)?.factors))
        .collect::<Result<_>>()?;
    let results: Vec<(usize, usize, bool, bool)> = (0..kept.len())
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..kept.len()).map(move |b| (a, b)))
        .map(|(a, b)| {
            let (ta, tb) = (&fam.tuples[kept[a]], &fam.tuples[kept[b]]);
            let coeff = pseudo_equal(f, ta, tb, cap)?;
            let factor = factors_match(&factors[a], &factors[b])?;
            Ok((kept[a], kept[b], coeff, factor))
        })
        .collect::<Result<_>>()?;
    Ok(BnOutcome {
        name: fam.name.clone(),
        tuples: kept.len(),
        pairs: results.len(),
        equal_pairs: results.iter().filter(|r| r.2).count(),
        disagreements: results
            .iter()
            .filter(|r| r.2 != r.3)
            .map(|r| (r.0, r.1))
            .collect(),
    })
}

/// Fields of order at most 9.
pub const SMALL_FIELDS: [(u32, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

#[derive(Clone, Debug, Default, Serialize)]
pub struct CliffordOutcome {
    pub cases: usize,
    pub reducible_cases: usize,
    /// Cases where restriction reducibility and the existence of `χ` disagree.
    pub counterexamples: Vec<String>,
    /// Cases with a `χ` where the induction could not be confirmed.
    pub induction_unconfirmed: Vec<String>,
}

/// Runs the Clifford test on every absolutely irreducible module of every
/// catalogued group over every listed field, against every normal subgroup
/// with cyclic quotient of order prime to the characteristic.
pub fn clifford_exhaustion(fields: &[(u32, u32)]) -> Result<CliffordOutcome> {
    let groups = catalogue();
    let jobs: Vec<(usize, (u32, u32))> = (0..groups.len())
        .flat_map(|g| fields.iter().map(move |&pf| (g, pf)))
        .collect();
    let parts = jobs
        .par_iter()
        .map(|&(gi, (p, deg))| {
            let cg = &groups[gi];
            let f = Field::new(p, deg)?;
            let ag = AbstractGroup::from_matrix_group(&cg.group);
            let normals = ag.normal_subgroups_with_cyclic_quotient();
            let mut out = CliffordOutcome::default();
            for (k, v) in absolutely_irreducible_modules(&cg.group, &f)?.iter().enumerate() {
                for h in &normals {
                    let m = ag.order() / h.len();
                    if (m as u32).is_multiple_of(p) {
                        continue;
                    }
                    let r = clifford_test(v, &cg.group, h)?;
                    let tag = format!("{} over GF({}), module {k} (dim {}), |H| = {}", cg.name, f.order(), v.dim(), h.len());
                    out.cases += 1;
                    out.reducible_cases += r.restriction_reducible as usize;
                    if r.restriction_reducible != r.chi.is_some() {
                        out.counterexamples.push(tag.clone());
                    }
                    if r.induced_verified == Some(false) {
                        out.induction_unconfirmed.push(tag);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<CliffordOutcome>>>()?;
    Ok(parts.into_iter().fold(CliffordOutcome::default(), |mut acc, o| {
        acc.cases += o.cases;
        acc.reducible_cases += o.reducible_cases;
        acc.counterexamples.extend(o.counterexamples);
        acc.induction_unconfirmed.extend(o.induction_unconfirmed);
        acc
    }))
}

/// `[[0, 1], [2, 0]]` over `GF(3)`: an element of order 4 with irreducible
/// characteristic polynomial `t^2 + 1`.
pub fn cyclic4_target() -> (Field, Vec<Matrix>) {
    let f = Field::new(3, 1).expect("GF(3)");
    let m = Matrix::from_ints(&f, &[vec![0, 1], vec![2, 0]]).expect("2x2");
    (f, vec![m])
}

/// The quaternion group on generators `i`, `j` over `GF(3)`, absolutely
/// irreducible of dimension 2.
pub fn q8_target() -> (Field, Vec<Matrix>) {
    let f = Field::new(3, 1).expect("GF(3)");
    let i = Matrix::from_ints(&f, &[vec![0, 1], vec![2, 0]]).expect("2x2");
    let j = Matrix::from_ints(&f, &[vec![1, 1], vec![1, 2]]).expect("2x2");
    (f, vec![i, j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_linear_orders() {
        assert_eq!(general_linear(&Field::new(2, 1).unwrap(), 2).len(), 6);
        assert_eq!(general_linear(&Field::new(3, 1).unwrap(), 2).len(), 48);
        assert_eq!(general_linear(&Field::new(2, 1).unwrap(), 3).len(), 168);
    }

    #[test]
    fn corpus_sizes() {
        assert!(euler_corpus().len() >= 100);
        assert!(!character_extension_corpus().is_empty());
        assert_eq!(q2_nonsplit_instances().len(), 12);
    }
}
