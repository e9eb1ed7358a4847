//! Invariant-subspace search: certified MeatAxe with an exhaustive fallback,
//! composition series and semisimplification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{non_pivots, GModule};
use crate::error::{Error, Result};
use crate::ffalg::linalg::{commutant_dim, kernel, EchelonBasis};
use crate::ffalg::poly1;
use crate::ffalg::{Field, Matrix, Vector};

/// Modules with `q^dim` at most this size are scanned exhaustively when the
/// randomised search fails to produce a certificate.
pub const EXHAUSTIVE_THRESHOLD: u64 = 1 << 20;

/// Number of random algebra elements tried before falling back.
pub const SEEDS: usize = 64;

/// Span of `v` under the action, as an echelon basis.
pub fn spin(f: &Field, action: &[Matrix], v: &[u32]) -> EchelonBasis {
    let dim = v.len();
    let mut eb = EchelonBasis::new(dim);
    if !eb.insert(f, v) {
        return eb;
    }
    let mut queue: Vec<Vector> = vec![v.to_vec()];
    let mut head = 0;
    while head < queue.len() && eb.len() < dim {
        for a in action {
            let w = a.mul_vec(f, &queue[head]);
            if eb.insert(f, &w) {
                queue.push(w);
            }
        }
        head += 1;
    }
    eb
}

/// Outcome of an invariant-subspace search.
#[derive(Clone, Debug)]
pub enum Split {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Proper(EchelonBasis),
}

/// The annihilator `{x : u . x = 0 for all u in W}`.
fn annihilator(f: &Field, w: &EchelonBasis) -> EchelonBasis {
    let dim = w.ambient_dim();
    let m = Matrix::from_vec(
        w.len(),
        dim,
        w.rows().iter().flatten().copied().collect(),
    )
    .expect("shape");
    let mut eb = EchelonBasis::new(dim);
    for v in kernel(f, &m) {
        eb.insert(f, &v);
    }
    eb
}

fn random_algebra_element<R: Rng>(f: &Field, action: &[Matrix], rng: &mut R) -> Matrix {
    let dim = action[0].rows();
    let mut acc = Matrix::zeros(dim, dim);
    let terms = 2 + rng.gen_range(0..3);
    for _ in 0..terms {
        let len = 1 + rng.gen_range(0..4);
        let mut w = Matrix::identity(dim);
        for _ in 0..len {
            w = w.mul(f, &action[rng.gen_range(0..action.len())]);
        }
        let c = rng.gen_range(1..f.order());
        acc = acc.add(f, &w.scale(f, c));
    }
    acc
}

fn random_nonzero_in<R: Rng>(f: &Field, basis: &[Vector], rng: &mut R) -> Vector {
    let dim = basis[0].len();
    loop {
        let mut v = vec![0; dim];
        for b in basis {
            let c = rng.gen_range(0..f.order());
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Holt–Rees style search. `Some` results are proofs: either a proper
/// submodule or a certified irreducibility verdict.
fn certified_search(m: &GModule, seed: u64) -> Option<Split> {
    let f = m.field();
    let dim = m.dim();
    let action = m.action();
    let transposes: Vec<Matrix> = action.iter().map(|a| a.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SEEDS {
        let a = random_algebra_element(f, action, &mut rng);
        let cp = poly1::char_poly(f, &a);
        let mut factors = poly1::factor(f, &cp, &mut rng);
        factors.sort_by_key(|(g, _)| g.len());
        for (g, _) in factors {
            let ga = poly1::eval_matrix(f, &g, &a);
            let null = kernel(f, &ga);
            let v = random_nonzero_in(f, &null, &mut rng);
            let s = spin(f, action, &v);
            if s.len() < dim {
                return Some(Split::Proper(s));
            }
            if null.len() != g.len() - 1 {
                continue;
            }
            // Norton: the module is irreducible unless some vector of the
            // transposed null space spins to a proper subspace.
            let gat = ga.transpose();
            let tnull = kernel(f, &gat);
            let w = random_nonzero_in(f, &tnull, &mut rng);
            let st = spin(f, &transposes, &w);
            if st.len() < dim {
                return Some(Split::Proper(annihilator(f, &st)));
            }
            return Some(Split::Irreducible);
        }
    }
    None
}

/// Spins a representative of every projective point.
fn exhaustive_search(m: &GModule) -> Split {
    let f = m.field();
    let dim = m.dim();
    let q = f.order() as u64;
    for lead in 0..dim {
        // vectors with a 1 at `lead` and zeros before it
        let tail = dim - lead - 1;
        let count = q.pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![0; dim];
            v[lead] = 1;
            let mut t = idx;
            for k in 0..tail {
                v[lead + 1 + k] = (t % q) as u32;
                t /= q;
            }
            let s = spin(f, m.action(), &v);
            if s.len() < dim {
                return Split::Proper(s);
            }
        }
    }
    Split::Irreducible
}

fn exhaustive_allowed(m: &GModule) -> bool {
    let q = m.field().order() as u64;
    (m.dim() as f64) * (q as f64).log2() <= (EXHAUSTIVE_THRESHOLD as f64).log2() + 1e-9
}

/// Finds a proper invariant subspace or shows there is none.
pub fn find_submodule(m: &GModule) -> Result<Split> {
    find_submodule_seeded(m, 0x5eed)
}

pub fn find_submodule_seeded(m: &GModule, seed: u64) -> Result<Split> {
    if m.dim() <= 1 {
        return Ok(Split::Irreducible);
    }
    if let Some(s) = certified_search(m, seed) {
        return Ok(s);
    }
    if exhaustive_allowed(m) {
        return Ok(exhaustive_search(m));
    }
    Err(Error::Inconclusive(format!(
        "no irreducibility certificate for a {}-dimensional module over GF({}) after {SEEDS} tries",
        m.dim(),
        m.field().order()
    )))
}

pub fn is_irreducible(m: &GModule) -> Result<bool> {
    Ok(matches!(find_submodule(m)?, Split::Irreducible))
}

pub fn is_absolutely_irreducible(m: &GModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    Ok(is_irreducible(m)? && commutant_dim(m.field(), m.action())? == 1)
}

/// Exhaustive irreducibility check by spinning every projective point,
/// independent of the randomised path.
pub fn is_irreducible_exhaustive(m: &GModule) -> bool {
    m.dim() <= 1 || matches!(exhaustive_search(m), Split::Irreducible)
}

/// A basis adapted to a composition series, with the block sizes and the
/// composition factors (bottom first).
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub basis: Vec<Vector>,
    pub blocks: Vec<usize>,
    pub factors: Vec<GModule>,
}

pub fn composition_series(m: &GModule) -> Result<CompositionSeries> {
    let dim = m.dim();
    if dim == 0 {
        return Ok(CompositionSeries {
            basis: vec![],
            blocks: vec![],
            factors: vec![],
        });
    }
    match find_submodule(m)? {
        Split::Irreducible => Ok(CompositionSeries {
            basis: (0..dim)
                .map(|i| {
                    let mut e = vec![0; dim];
                    e[i] = 1;
                    e
                })
                .collect(),
            blocks: vec![dim],
            factors: vec![m.clone()],
        }),
        Split::Proper(sub) => {
            let f = m.field();
            let lower = composition_series(&m.submodule(&sub))?;
            let upper = composition_series(&m.quotient(&sub))?;
            let mut basis: Vec<Vector> = lower
                .basis
                .iter()
                .map(|c| {
                    let mut v = vec![0; dim];
                    for (row, &k) in sub.rows().iter().zip(c) {
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(k, y));
                        }
                    }
                    v
                })
                .collect();
            let free = non_pivots(&sub);
            basis.extend(upper.basis.iter().map(|c| {
                let mut v = vec![0; dim];
                for (&pos, &k) in free.iter().zip(c) {
                    v[pos] = k;
                }
                v
            }));
            let mut blocks = lower.blocks;
            blocks.extend(upper.blocks);
            let mut factors = lower.factors;
            factors.extend(upper.factors);
            Ok(CompositionSeries {
                basis,
                blocks,
                factors,
            })
        }
    }
}

/// Result of [`semisimplify`].
#[derive(Clone, Debug)]
pub struct Semisimplification {
    /// Change of basis `P` (columns adapted to a composition series).
    pub conjugator: Matrix,
    /// `P^-1 A_i P`, block upper triangular.
    pub block_upper: Vec<Matrix>,
    /// The block-diagonal part of `block_upper`.
    pub block_diagonal: Vec<Matrix>,
    pub blocks: Vec<usize>,
    pub constituents: Vec<GModule>,
}

pub fn semisimplify(m: &GModule) -> Result<Semisimplification> {
    let f = m.field();
    let cs = composition_series(m)?;
    let dim = m.dim();
    let p = Matrix::from_columns(dim, &cs.basis);
    let pinv = p
        .inverse(f)
        .ok_or_else(|| Error::AssertionFailed("composition basis is not a basis".into()))?;
    let block_upper: Vec<Matrix> = m
        .action()
        .iter()
        .map(|a| pinv.mul(f, a).mul(f, &p))
        .collect();
    let mut offsets = vec![0];
    for b in &cs.blocks {
        offsets.push(offsets.last().unwrap() + b);
    }
    let block_of = |i: usize| offsets.iter().rposition(|&o| o <= i).unwrap();
    let block_diagonal: Vec<Matrix> = block_upper
        .iter()
        .map(|a| {
            let mut d = Matrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    if block_of(i) == block_of(j) {
                        d.set(i, j, a.get(i, j));
                    } else if block_of(i) > block_of(j) && a.get(i, j) != 0 {
                        return Err(Error::AssertionFailed(
                            "conjugated matrix is not block upper triangular".into(),
                        ));
                    }
                }
            }
            Ok(d)
        })
        .collect::<Result<_>>()?;
    Ok(Semisimplification {
        conjugator: p,
        block_upper,
        block_diagonal,
        blocks: cs.blocks,
        constituents: cs.factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(p: u32, mats: &[Vec<Vec<i64>>]) -> GModule {
        let f = Field::new(p, 1).unwrap();
        let ms: Vec<Matrix> = mats.iter().map(|m| Matrix::from_ints(&f, m).unwrap()).collect();
        GModule::from_matrices(&f, &ms).unwrap()
    }

    fn s3_gf7() -> GModule {
        module(7, &[vec![vec![0, -1], vec![1, -1]], vec![vec![0, 1], vec![1, 0]]])
    }

    #[test]
    fn irreducibility_examples() {
        let one = module(5, &[vec![vec![3]]]);
        assert!(is_irreducible(&one).unwrap());
        assert!(is_absolutely_irreducible(&one).unwrap());
        let diag = module(5, &[vec![vec![1, 0], vec![0, 2]]]);
        assert!(!is_irreducible(&diag).unwrap());
        let s3 = s3_gf7();
        assert!(is_irreducible(&s3).unwrap());
        assert!(is_absolutely_irreducible(&s3).unwrap());
        assert!(is_irreducible_exhaustive(&s3));
    }

    #[test]
    fn irreducible_but_not_absolutely() {
        let r = module(3, &[vec![vec![0, 1], vec![2, 0]]]);
        assert!(is_irreducible(&r).unwrap());
        assert!(!is_absolutely_irreducible(&r).unwrap());
    }

    #[test]
    fn semisimplify_unipotent() {
        let u = module(3, &[vec![vec![1, 1], vec![0, 1]]]);
        let ss = semisimplify(&u).unwrap();
        assert!(ss.block_diagonal[0].is_identity());
        assert_eq!(ss.blocks, vec![1, 1]);
        assert!(ss.constituents.iter().all(|c| c.action()[0].is_identity()));
    }

    #[test]
    fn semisimplify_nonsplit_extension() {
        // [[2, 1], [0, 1]] over GF(5): omega = 2 on the line, trivial quotient
        let u = module(5, &[vec![vec![2, 1], vec![0, 1]], vec![vec![1, 1], vec![0, 1]]]);
        let ss = semisimplify(&u).unwrap();
        assert_eq!(ss.block_diagonal[0], Matrix::diag(&[2, 1]));
        assert!(ss.block_diagonal[1].is_identity());
    }

    #[test]
    fn semisimple_input_keeps_constituents() {
        let s3 = s3_gf7();
        let ss = semisimplify(&s3).unwrap();
        assert_eq!(ss.blocks, vec![2]);
        assert_eq!(ss.block_diagonal, s3.action().to_vec());
    }

    #[test]
    fn regular_module_of_c3_over_gf2() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1) over GF(2)
        let f = Field::new(2, 1).unwrap();
        let c = Matrix::from_ints(&f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let m = GModule::from_matrices(&f, &[c]).unwrap();
        let mut dims: Vec<usize> = composition_series(&m)
            .unwrap()
            .factors
            .iter()
            .map(|x| x.dim())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }
}
