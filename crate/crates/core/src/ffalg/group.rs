//! Finite matrix groups generated by explicit matrices.

use std::collections::HashMap;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 200_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "DEFRING_CAP";

/// The closure cap, honouring `DEFRING_CAP` when it parses.
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// A word in the generators, as a sequence of generator indices.
pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: Field,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    /// `(parent, generator)` with `element[i] = element[parent] * gen[generator]`.
    parent: Vec<Option<(usize, usize)>>,
    index: HashMap<Matrix, usize>,
}

/// Breadth-first enumeration of the group generated by `generators`.
///
/// Element 0 is the identity. Each element stores a word witness reachable
/// through [`MatrixGroup::word`].
pub fn closure(field: &Field, generators: &[Matrix], cap: usize) -> Result<MatrixGroup> {
    let d = match generators.first() {
        Some(g) => g.rows(),
        None => {
            return Err(Error::DimensionMismatch(
                "closure needs at least one generator".into(),
            ))
        }
    };
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} is {}x{}, expected {d}x{d}",
                g.rows(),
                g.cols()
            )));
        }
        if !g.is_invertible(field) {
            return Err(Error::NotInvertible { index: i });
        }
    }
    let id = Matrix::identity(d);
    let mut elements = vec![id.clone()];
    let mut parent = vec![None];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let next = elements[head].mul(field, g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(next.clone(), elements.len());
            elements.push(next);
            parent.push(Some((head, gi)));
        }
        head += 1;
    }
    Ok(MatrixGroup {
        field: field.clone(),
        generators: generators.to_vec(),
        elements,
        parent,
        index,
    })
}

impl MatrixGroup {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains_key(m)
    }

    /// A word in the generators evaluating to element `i`.
    pub fn word(&self, mut i: usize) -> Word {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[i] {
            w.push(g);
            i = p;
        }
        w.reverse();
        w
    }

    /// Multiplication in index form.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let m = self.elements[i].mul(&self.field, &self.elements[j]);
        self.index[&m]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        let m = self.elements[i].inverse(&self.field).expect("group elements are invertible");
        self.index[&m]
    }

    /// Full multiplication table; `table[i][j]` is the index of `e_i e_j`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.mul_index(i, j)).collect())
            .collect()
    }
}

/// Evaluates a word on per-generator matrices.
pub fn eval_word(field: &Field, mats: &[Matrix], word: &[usize]) -> Matrix {
    let d = mats[0].rows();
    word.iter()
        .fold(Matrix::identity(d), |acc, &g| acc.mul(field, &mats[g]))
}

/// Evaluates a second family of per-generator matrices on every element of
/// `group`, following the stored BFS tree. The map is well defined only when
/// the assignment extends to a homomorphism, which callers guarantee by
/// closing the paired tuple.
pub fn map_elements(group: &MatrixGroup, field: &Field, mats: &[Matrix]) -> Vec<Matrix> {
    let d = mats[0].rows();
    let mut out: Vec<Matrix> = Vec::with_capacity(group.order());
    for i in 0..group.order() {
        let m = match group.parent[i] {
            None => Matrix::identity(d),
            Some((p, g)) => out[p].mul(field, &mats[g]),
        };
        out.push(m);
    }
    out
}

/// Block-diagonal pairing of two tuples; its closure is the joint image.
pub fn pair_tuples(a: &[Matrix], b: &[Matrix]) -> Result<Vec<Matrix>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of arity {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| Matrix::block_diag(&[x, y]))
        .collect())
}

/// Subgroups and quotients in index form over a multiplication table.
#[derive(Clone, Debug)]
pub struct AbstractGroup {
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

impl AbstractGroup {
    pub fn from_matrix_group(g: &MatrixGroup) -> Self {
        AbstractGroup {
            table: g.multiplication_table(),
            generators: (0..g.generators().len())
                .map(|i| g.index_of(&g.generators()[i]).expect("generator in group"))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("group inverse")
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut list = vec![0];
        let mut head = 0;
        while head < list.len() {
            for &g in gens {
                let x = self.table[list[head]][g];
                if !seen[x] {
                    seen[x] = true;
                    list.push(x);
                }
            }
            head += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in h {
            member[x] = true;
        }
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            h.iter().all(|&x| member[self.table[self.table[g][x]][gi]])
        })
    }

    /// Derived subgroup: generated by all commutators.
    pub fn derived(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order() {
            for b in 0..self.order() {
                let c = self.mul(
                    self.mul(self.inverse(a), self.inverse(b)),
                    self.mul(a, b),
                );
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup(&comms)
    }

    /// For a normal subgroup `h`, returns `(m, x)` when `G/H` is cyclic of
    /// order `m` generated by the coset of `x`.
    pub fn cyclic_quotient(&self, h: &[usize]) -> Option<(usize, usize)> {
        let m = self.order() / h.len();
        let mut member = vec![false; self.order()];
        for &x in h {
            member[x] = true;
        }
        (0..self.order()).find_map(|x| {
            // order of xH in G/H
            let mut k = 1;
            let mut y = x;
            while !member[y] {
                y = self.mul(y, x);
                k += 1;
            }
            (k == m).then_some((m, x))
        })
    }

    /// Every subgroup containing the derived subgroup (all of them normal),
    /// found by repeatedly joining single elements onto known ones.
    pub fn subgroups_over_derived(&self) -> Vec<Vec<usize>> {
        let der = self.derived();
        let mut found: Vec<Vec<usize>> = vec![der];
        let mut head = 0;
        while head < found.len() {
            let base = found[head].clone();
            for x in 0..self.order() {
                if base.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(x);
                let h = self.subgroup(&gens);
                if !found.contains(&h) {
                    found.push(h);
                }
            }
            head += 1;
        }
        found
    }

    /// Every normal subgroup with cyclic quotient, largest first.
    pub fn normal_subgroups_with_cyclic_quotient(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .subgroups_over_derived()
            .into_iter()
            .filter(|h| self.cyclic_quotient(h).is_some())
            .collect();
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        out
    }
}
