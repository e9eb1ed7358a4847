//! Gaussian elimination and the kernels, inverses and spans built on it.

use super::field::{Elem, Field};
use super::matrix::{Matrix, Vector};
use crate::error::{Error, Result};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(f: &Field, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                let t = a.get(pr, j);
                a.set(pr, j, a.get(r, j));
                a.set(r, j, t);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            a.set(r, j, f.mul(a.get(r, j), inv));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    rref(f, m).1.len()
}

/// Basis of the right null space `{v : m v = 0}`.
pub fn kernel(f: &Field, m: &Matrix) -> Vec<Vector> {
    let (a, pivots) = rref(f, m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(a.get(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, 1);
    }
    let (red, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots.last().is_some_and(|&c| c >= n) {
        return None;
    }
    Some(red.submatrix(0..n, n..2 * n))
}

pub fn det(f: &Field, m: &Matrix) -> Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| a.get(i, c) != 0) else {
            return 0;
        };
        if pr != c {
            for j in 0..n {
                let t = a.get(pr, j);
                a.set(pr, j, a.get(c, j));
                a.set(c, j, t);
            }
            d = f.neg(d);
        }
        let piv = a.get(c, c);
        d = f.mul(d, piv);
        let inv = f.inv(piv).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), inv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    d
}

/// Stacks matrices with equal column counts on top of each other.
pub fn stack(ops: &[Matrix]) -> Result<Matrix> {
    let cols = ops.first().map_or(0, |m| m.cols());
    if ops.iter().any(|m| m.cols() != cols) {
        return Err(Error::DimensionMismatch(
            "operators have different column counts".into(),
        ));
    }
    let rows: usize = ops.iter().map(|m| m.rows()).sum();
    let mut data = Vec::with_capacity(rows * cols);
    for m in ops {
        data.extend_from_slice(m.data());
    }
    Matrix::from_vec(rows, cols, data)
}

/// Basis of the common kernel of all operators.
pub fn solve_joint_kernel(f: &Field, ops: &[Matrix]) -> Result<Vec<Vector>> {
    if ops.is_empty() {
        return Err(Error::DimensionMismatch("no operators supplied".into()));
    }
    Ok(kernel(f, &stack(ops)?))
}

/// Matrix of `X -> A X - X B` acting on row-major vectorised `X`
/// (`A` is r x r, `B` is c x c, `X` is r x c).
pub fn sylvester_operator(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let (r, c) = (a.rows(), b.rows());
    let mut op = Matrix::zeros(r * c, r * c);
    for i in 0..r {
        for j in 0..c {
            let row = i * c + j;
            // (A X)_{ij} = sum_k A_ik X_kj
            for k in 0..r {
                let v = a.get(i, k);
                if v != 0 {
                    let col = k * c + j;
                    op.set(row, col, f.add(op.get(row, col), v));
                }
            }
            // (X B)_{ij} = sum_k X_ik B_kj
            for k in 0..c {
                let v = b.get(k, j);
                if v != 0 {
                    let col = i * c + k;
                    op.set(row, col, f.sub(op.get(row, col), v));
                }
            }
        }
    }
    op
}

/// Dimension of `{M : A_i M = M A_i for all i}`.
pub fn commutant_dim(f: &Field, mats: &[Matrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Err(Error::DimensionMismatch("no matrices supplied".into()));
    };
    let d = first.rows();
    if mats.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::DimensionMismatch(
            "commutant needs square matrices of one size".into(),
        ));
    }
    let ops: Vec<Matrix> = mats.iter().map(|a| sylvester_operator(f, a, a)).collect();
    Ok(solve_joint_kernel(f, &ops)?.len())
}

/// Reshapes a row-major vector of length r*c into a matrix.
pub fn unvec(r: usize, c: usize, v: &[Elem]) -> Matrix {
    Matrix::from_vec(r, c, v.to_vec()).expect("length matches shape")
}

/// Incrementally maintained echelon basis of a subspace.
///
/// Rows are kept fully reduced against each other so that membership tests
/// are a single sweep.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    originals: Vec<Vector>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; zero means `v` lies in the span.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        let mut w = self.reduce(f, v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(at, w);
        self.pivots.insert(at, pc);
        self.originals.push(v.to_vec());
        true
    }

    /// The echelon rows, sorted by pivot.
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The vectors that were accepted, in insertion order.
    pub fn originals(&self) -> &[Vector] {
        &self.originals
    }

    /// Coordinates of `v` with respect to the echelon rows, if it lies in the span.
    pub fn coordinates(&self, f: &Field, v: &[Elem]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&coords) {
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }
}

/// Extends independent vectors to a basis of the ambient space using unit vectors.
pub fn complete_basis(f: &Field, vecs: &[Vector], dim: usize) -> Vec<Vector> {
    let mut eb = EchelonBasis::new(dim);
    let mut out = Vec::new();
    for v in vecs {
        if eb.insert(f, v) {
            out.push(v.clone());
        }
    }
    for i in 0..dim {
        let mut e = vec![0; dim];
        e[i] = 1;
        if eb.insert(f, &e) {
            out.push(e);
        }
    }
    out
}

impl Matrix {
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        inverse(f, self)
    }

    pub fn det(&self, f: &Field) -> Elem {
        det(f, self)
    }

    pub fn rank(&self, f: &Field) -> usize {
        rank(f, self)
    }

    pub fn kernel(&self, f: &Field) -> Vec<Vector> {
        kernel(f, self)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && det(f, self) != 0
    }
}
