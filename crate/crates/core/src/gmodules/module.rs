use serde::{Deserialize, Serialize};

use super::local::LocalFieldData;
use crate::error::{Error, Result};
use crate::ffalg::group::{closure, eval_word, Word};
use crate::ffalg::linalg::{solve_joint_kernel, EchelonBasis};
use crate::ffalg::{Elem, Field, Matrix, Vector};

/// A residual representation: per-generator matrices together with the values
/// of the mod-p cyclotomic character on the same generators.
///
/// The generators are assumed to generate the full joint image of the Galois
/// group on every derived module. Nothing inside the library can check this;
/// invariant computations are exact only under that assumption.
#[derive(Clone, Debug)]
pub struct ResidualRep {
    field: Field,
    d: usize,
    local_field: LocalFieldData,
    matrices: Vec<Matrix>,
    omegas: Vec<Elem>,
}

impl ResidualRep {
    pub fn new(
        field: Field,
        local_field: LocalFieldData,
        matrices: Vec<Matrix>,
        omegas: Vec<Elem>,
    ) -> Result<Self> {
        Self::with_cap(field, local_field, matrices, omegas, None)
    }

    /// Like [`ResidualRep::new`] and additionally checks that the joint image of
    /// `(matrix, omega)` closes within `cap` elements.
    pub fn with_cap(
        field: Field,
        local_field: LocalFieldData,
        matrices: Vec<Matrix>,
        omegas: Vec<Elem>,
        cap: Option<usize>,
    ) -> Result<Self> {
        local_field.validate()?;
        if field.p() != local_field.p {
            return Err(Error::invalid(
                "field.p",
                format!("field characteristic {} differs from local_field.p = {}", field.p(), local_field.p),
            ));
        }
        let Some(first) = matrices.first() else {
            return Err(Error::invalid("generators", "at least one generator is required"));
        };
        let d = first.rows();
        if d == 0 {
            return Err(Error::invalid("generators[0].matrix", "empty matrix"));
        }
        if matrices.len() != omegas.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices but {} omega values",
                matrices.len(),
                omegas.len()
            )));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::invalid(
                    format!("generators[{i}].matrix"),
                    format!("expected {d}x{d}, got {}x{}", m.rows(), m.cols()),
                ));
            }
            if !m.is_invertible(&field) {
                return Err(Error::invalid(format!("generators[{i}].matrix"), "matrix is singular"));
            }
        }
        for (i, &w) in omegas.iter().enumerate() {
            if w == 0 || !field.is_prime_subfield(w) {
                return Err(Error::invalid(
                    format!("generators[{i}].omega"),
                    format!("omega must be a nonzero element of GF({})", field.p()),
                ));
            }
        }
        if let Some(k) = local_field.zeta_degree {
            let got = omega_subgroup_order(&field, &omegas);
            if got != k as u64 {
                return Err(Error::invalid(
                    "local_field.zeta_degree",
                    format!("the omega values generate a subgroup of order {got}, not {k}"),
                ));
            }
        }
        let rep = ResidualRep {
            field,
            d,
            local_field,
            matrices,
            omegas,
        };
        if let Some(cap) = cap {
            rep.image(cap)?;
        }
        Ok(rep)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn local_field(&self) -> &LocalFieldData {
        &self.local_field
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn omegas(&self) -> &[Elem] {
        &self.omegas
    }

    pub fn arity(&self) -> usize {
        self.matrices.len()
    }

    /// The joint image of `g -> (rho(g), omega(g))`, as block matrices.
    pub fn image(&self, cap: usize) -> Result<crate::ffalg::MatrixGroup> {
        closure(&self.field, &self.paired_generators(), cap)
    }

    /// Generators `diag(rho(g), omega(g))`.
    pub fn paired_generators(&self) -> Vec<Matrix> {
        self.matrices
            .iter()
            .zip(&self.omegas)
            .map(|(m, &w)| Matrix::block_diag(&[m, &Matrix::scalar(1, w)]))
            .collect()
    }

    /// The underlying module.
    pub fn module(&self) -> GModule {
        GModule {
            field: self.field.clone(),
            dim: self.d,
            action: self.matrices.clone(),
            omegas: self.omegas.clone(),
            label: Label::Base,
        }
    }
}

/// Order of the subgroup of GF(p)^x generated by the omega values.
pub fn omega_subgroup_order(field: &Field, omegas: &[Elem]) -> u64 {
    let p = field.p() as u64;
    let mut l = 1u64;
    for &w in omegas {
        let o = (1..p).find(|&k| field.pow(w, k as i64) == 1).unwrap_or(1);
        l = l / crate::ffalg::field::gcd(l, o) * o;
    }
    l
}

/// How a module was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Base,
    Trivial,
    Ad,
    Ad0,
    Adbar,
    Twist { k: i64, of: Box<Label> },
    Dual(Box<Label>),
    Hom(Box<Label>, Box<Label>),
    Restricted(Box<Label>),
    Sub(Box<Label>),
    Quotient(Box<Label>),
    Extended(Box<Label>),
}

/// A finite-dimensional module given by per-generator action matrices, with the
/// cyclotomic values of the same generators carried along for twisting.
#[derive(Clone, Debug)]
pub struct GModule {
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
    omegas: Vec<Elem>,
    label: Label,
}

impl GModule {
    pub fn new(field: Field, action: Vec<Matrix>, omegas: Vec<Elem>, label: Label) -> Result<Self> {
        let dim = action.first().map_or(0, |m| m.rows());
        if action.is_empty() {
            return Err(Error::DimensionMismatch("module without generators".into()));
        }
        if omegas.len() != action.len() {
            return Err(Error::DimensionMismatch("omega count differs from generator count".into()));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("action matrix {i} has the wrong shape")));
            }
            if !m.is_invertible(&field) {
                return Err(Error::NotInvertible { index: i });
            }
        }
        Ok(GModule {
            field,
            dim,
            action,
            omegas,
            label,
        })
    }

    /// Module with trivial omega values (no Tate twisting information).
    pub fn from_matrices(field: &Field, action: &[Matrix]) -> Result<Self> {
        Self::new(field.clone(), action.to_vec(), vec![1; action.len()], Label::Base)
    }

    /// The trivial one-dimensional module.
    pub fn trivial(field: &Field, omegas: &[Elem]) -> Self {
        GModule {
            field: field.clone(),
            dim: 1,
            action: vec![Matrix::identity(1); omegas.len()],
            omegas: omegas.to_vec(),
            label: Label::Trivial,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn omegas(&self) -> &[Elem] {
        &self.omegas
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn arity(&self) -> usize {
        self.action.len()
    }

    fn derived(&self, action: Vec<Matrix>, label: Label) -> GModule {
        GModule {
            field: self.field.clone(),
            dim: action[0].rows(),
            action,
            omegas: self.omegas.clone(),
            label,
        }
    }

    /// Conjugation action on d x d matrices in the e_ij basis (row-major).
    pub fn ad(&self) -> GModule {
        let f = &self.field;
        let action = self
            .action
            .iter()
            .map(|g| {
                let gi = g.inverse(f).expect("invertible");
                g.kron(f, &gi.transpose())
            })
            .collect();
        self.derived(action, Label::Ad)
    }

    /// Restriction of `ad` to the trace-zero subspace, with the echelon basis
    /// `e_ij (i != j)` and `e_ii - e_dd (i < d)` listed in e_ij order.
    pub fn ad0(&self) -> GModule {
        let d = self.dim;
        let ad = self.ad();
        if d == 1 {
            return GModule {
                field: self.field.clone(),
                dim: 0,
                action: vec![Matrix::zeros(0, 0); self.arity()],
                omegas: self.omegas.clone(),
                label: Label::Ad0,
            };
        }
        let f = &self.field;
        let last = (d - 1) * d + (d - 1);
        let basis: Vec<Vector> = (0..d * d)
            .filter(|&k| k != last)
            .map(|k| {
                let mut v = vec![0; d * d];
                v[k] = 1;
                if k / d == k % d {
                    v[last] = f.neg(1);
                }
                v
            })
            .collect();
        let pivots: Vec<usize> = (0..d * d).filter(|&k| k != last).collect();
        let action = ad
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = basis
                    .iter()
                    .map(|b| {
                        let img = a.mul_vec(f, b);
                        pivots.iter().map(|&pc| img[pc]).collect()
                    })
                    .collect();
                Matrix::from_columns(d * d - 1, &cols)
            })
            .collect();
        ad.derived(action, Label::Ad0)
    }

    /// `ad` modulo scalars, in the basis of images of `e_ij`, `(i, j) != (d, d)`.
    pub fn adbar(&self) -> GModule {
        let d = self.dim;
        let ad = self.ad();
        let f = &self.field;
        let last = (d - 1) * d + (d - 1);
        let keep: Vec<usize> = (0..d * d).filter(|&k| k != last).collect();
        let action = ad
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = keep
                    .iter()
                    .map(|&k| {
                        let mut v = vec![0; d * d];
                        v[k] = 1;
                        let img = a.mul_vec(f, &v);
                        // subtract img_dd times the identity
                        let c = img[last];
                        keep.iter()
                            .map(|&j| if j / d == j % d { f.sub(img[j], c) } else { img[j] })
                            .collect()
                    })
                    .collect();
                Matrix::from_columns(d * d - 1, &cols)
            })
            .collect();
        let mut m = ad.derived(action, Label::Adbar);
        m.dim = d * d - 1;
        m
    }

    /// Tate twist: every action matrix multiplied by `omega(g)^k`.
    pub fn twist(&self, k: i64) -> GModule {
        let f = &self.field;
        let action = self
            .action
            .iter()
            .zip(&self.omegas)
            .map(|(a, &w)| a.scale(f, f.pow(w, k)))
            .collect();
        let mut m = self.derived(action, Label::Twist {
            k,
            of: Box::new(self.label.clone()),
        });
        m.dim = self.dim;
        m
    }

    /// Twist by an arbitrary character given by its values on the generators.
    pub fn twist_by(&self, values: &[Elem]) -> GModule {
        let f = &self.field;
        let action = self
            .action
            .iter()
            .zip(values)
            .map(|(a, &c)| a.scale(f, c))
            .collect();
        let mut m = self.derived(action, self.label.clone());
        m.dim = self.dim;
        m
    }

    /// Contragredient module: action `(g^-1)^T`.
    pub fn dual(&self) -> GModule {
        let f = &self.field;
        let action = self
            .action
            .iter()
            .map(|a| a.inverse(f).expect("invertible").transpose())
            .collect();
        let mut m = self.derived(action, Label::Dual(Box::new(self.label.clone())));
        m.dim = self.dim;
        m
    }

    /// `Hom(V, W)` on `dim W x dim V` matrices (row-major), action `X -> W X V^-1`.
    pub fn hom(v: &GModule, w: &GModule) -> Result<GModule> {
        if v.arity() != w.arity() || v.field != w.field {
            return Err(Error::DimensionMismatch("Hom of incompatible modules".into()));
        }
        let f = &v.field;
        let action: Vec<Matrix> = v
            .action
            .iter()
            .zip(&w.action)
            .map(|(a, b)| b.kron(f, &a.inverse(f).expect("invertible").transpose()))
            .collect();
        let dim = v.dim * w.dim;
        Ok(GModule {
            field: f.clone(),
            dim,
            action: if dim == 0 { vec![Matrix::zeros(0, 0); v.arity()] } else { action },
            omegas: w.omegas.clone(),
            label: Label::Hom(Box::new(v.label.clone()), Box::new(w.label.clone())),
        })
    }

    /// Dimension of the joint fixed space of all generators.
    pub fn invariants_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let f = &self.field;
        let id = Matrix::identity(self.dim);
        let ops: Vec<Matrix> = self.action.iter().map(|a| a.sub(f, &id)).collect();
        solve_joint_kernel(f, &ops).expect("square operators").len()
    }

    /// Restriction to the subgroup generated by the given words.
    pub fn restrict(&self, words: &[Word]) -> Result<GModule> {
        if words.is_empty() {
            return Err(Error::invalid("subgroup", "at least one generating word is required"));
        }
        let f = &self.field;
        for w in words {
            if let Some(&bad) = w.iter().find(|&&g| g >= self.arity()) {
                return Err(Error::invalid("subgroup", format!("generator index {bad} out of range")));
            }
        }
        let action = words.iter().map(|w| eval_word(f, &self.action, w)).collect();
        let omegas = words
            .iter()
            .map(|w| w.iter().fold(1, |acc, &g| f.mul(acc, self.omegas[g])))
            .collect();
        Ok(GModule {
            field: f.clone(),
            dim: self.dim,
            action,
            omegas,
            label: Label::Restricted(Box::new(self.label.clone())),
        })
    }

    /// Scalar extension along an embedding table into `big`.
    pub fn extend(&self, big: &Field) -> Result<GModule> {
        let table = self.field.embedding_into(big)?;
        Ok(GModule {
            field: big.clone(),
            dim: self.dim,
            action: self.action.iter().map(|a| a.map(&table)).collect(),
            omegas: self.omegas.iter().map(|&w| table[w as usize]).collect(),
            label: Label::Extended(Box::new(self.label.clone())),
        })
    }

    /// Whether a subspace (echelon basis) is stable under every generator.
    pub fn is_invariant(&self, sub: &EchelonBasis) -> bool {
        let f = &self.field;
        self.action
            .iter()
            .all(|a| sub.rows().iter().all(|v| sub.contains(f, &a.mul_vec(f, v))))
    }

    /// The submodule on an invariant subspace, in the basis of the echelon rows.
    pub fn submodule(&self, sub: &EchelonBasis) -> GModule {
        let f = &self.field;
        let k = sub.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = sub
                    .rows()
                    .iter()
                    .map(|v| sub.coordinates(f, &a.mul_vec(f, v)).expect("invariant subspace"))
                    .collect();
                Matrix::from_columns(k, &cols)
            })
            .collect();
        GModule {
            field: f.clone(),
            dim: k,
            action,
            omegas: self.omegas.clone(),
            label: Label::Sub(Box::new(self.label.clone())),
        }
    }

    /// The quotient by an invariant subspace, in the basis of unit vectors at
    /// the non-pivot positions.
    pub fn quotient(&self, sub: &EchelonBasis) -> GModule {
        let f = &self.field;
        let free = non_pivots(sub);
        let k = free.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = free
                    .iter()
                    .map(|&c| {
                        let img = sub.reduce(f, &a.column(c));
                        free.iter().map(|&j| img[j]).collect()
                    })
                    .collect();
                Matrix::from_columns(k, &cols)
            })
            .collect();
        GModule {
            field: f.clone(),
            dim: k,
            action,
            omegas: self.omegas.clone(),
            label: Label::Quotient(Box::new(self.label.clone())),
        }
    }
}

/// Positions that are not pivots of the echelon basis.
pub fn non_pivots(sub: &EchelonBasis) -> Vec<usize> {
    (0..sub.ambient_dim())
        .filter(|c| !sub.pivots().contains(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::linalg::commutant_dim;

    fn gf(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn rep(p: u32, mats: &[Vec<Vec<i64>>], omegas: &[u32]) -> ResidualRep {
        let f = gf(p);
        let ms = mats.iter().map(|m| Matrix::from_ints(&f, m).unwrap()).collect();
        ResidualRep::new(f, LocalFieldData::qp(p).unwrap(), ms, omegas.to_vec()).unwrap()
    }

    #[test]
    fn ad_of_trivial_is_trivial() {
        let r = rep(5, &[vec![vec![1, 0], vec![0, 1]]], &[2]);
        let ad = r.module().ad();
        assert_eq!(ad.dim(), 4);
        assert!(ad.action()[0].is_identity());
        assert_eq!(ad.invariants_dim(), 4);
        assert_eq!(ad.twist(1).invariants_dim(), 0);
    }

    #[test]
    fn ad_of_one_plus_omega_has_expected_eigenvalues() {
        let r = rep(5, &[vec![vec![1, 0], vec![0, 2]]], &[2]);
        let ad = r.module().ad();
        // conjugation by diag(1, 2) on e11, e12, e21, e22
        assert_eq!(ad.action()[0], Matrix::diag(&[1, 3, 2, 1]));
        assert_eq!(ad.twist(1).invariants_dim(), 1);
        assert_eq!(ad.invariants_dim(), 2);
    }

    #[test]
    fn twist_examples() {
        let f = gf(5);
        let t = GModule::trivial(&f, &[2]);
        assert_eq!(t.twist(1).action()[0], Matrix::scalar(1, 2));
        assert_eq!(t.twist(0).action(), t.action());
        assert_eq!(t.twist(-1).action()[0], Matrix::scalar(1, 3));
        let f2 = gf(2);
        let u = GModule::trivial(&f2, &[1, 1]);
        assert_eq!(u.twist(5).action(), u.action());
    }

    #[test]
    fn ad0_and_adbar_dimensions_and_trace_map() {
        for p in [2, 3, 5] {
            let r = rep(p, &[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]], &[1, 1]);
            let m = r.module();
            assert_eq!(m.ad0().dim(), 3);
            assert_eq!(m.adbar().dim(), 3);
            // the trace-zero subspace is invariant in ad
            let f = gf(p);
            let mut eb = EchelonBasis::new(4);
            for v in [[1, 0, 0, p - 1], [0, 1, 0, 0], [0, 0, 1, 0]] {
                eb.insert(&f, &v);
            }
            assert!(m.ad().is_invariant(&eb));
            assert_eq!(m.ad().submodule(&eb).action(), m.ad0().action());
        }
    }

    #[test]
    fn hom_invariants_match_intertwiner_system() {
        let f = gf(7);
        let s = Matrix::from_ints(&f, &[vec![0, -1], vec![1, -1]]).unwrap();
        let t = Matrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let v = GModule::from_matrices(&f, &[s, t]).unwrap();
        let h = GModule::hom(&v, &v).unwrap();
        assert_eq!(h.invariants_dim(), commutant_dim(&f, v.action()).unwrap());
        assert_eq!(h.invariants_dim(), 1);
        let sign = GModule::from_matrices(&f, &[Matrix::identity(1), Matrix::scalar(1, 6)]).unwrap();
        assert_eq!(GModule::hom(&v, &sign).unwrap().invariants_dim(), 0);
    }

    #[test]
    fn rep_validation_names_fields() {
        let f = gf(5);
        let lf = LocalFieldData::qp(5).unwrap();
        let sing = Matrix::from_ints(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        let err = ResidualRep::new(f.clone(), lf.clone(), vec![sing], vec![1]).unwrap_err();
        assert!(matches!(err, Error::Invalid { ref field, .. } if field == "generators[0].matrix"));
        let err = ResidualRep::new(f.clone(), lf.clone(), vec![Matrix::identity(2)], vec![0]).unwrap_err();
        assert!(matches!(err, Error::Invalid { ref field, .. } if field == "generators[0].omega"));
        let lf4 = lf.with_zeta_degree(4).unwrap();
        assert!(ResidualRep::new(f.clone(), lf4.clone(), vec![Matrix::identity(2)], vec![2]).is_ok());
        assert!(ResidualRep::new(f, lf4, vec![Matrix::identity(2)], vec![4]).is_err());
    }
}
