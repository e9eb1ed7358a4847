//! Characteristic-polynomial coefficient laws and their comparison.
//!
//! Sign convention: `det(tI - m) = sum_i (-1)^i Λ_i(m) t^(d-i)`, `Λ_0 = 1`.

use crate::error::{Error, Result};
use crate::ffalg::group::{closure, pair_tuples, MatrixGroup};
use crate::ffalg::ring::lambdas;
use crate::ffalg::{Elem, Field, Matrix};

/// `(Λ_1, ..., Λ_d)` of a square matrix.
pub fn char_poly_coeffs(f: &Field, m: &Matrix) -> Vec<Elem> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    lambdas(f, &m.to_rows())
}

/// Whether `sum (-1)^i Λ_i(m) m^(d-i)` vanishes.
pub fn cayley_hamilton_check(f: &Field, m: &Matrix) -> bool {
    let d = m.rows();
    let l = char_poly_coeffs(f, m);
    let mut acc = Matrix::zeros(d, d);
    // Horner in m with coefficients 1, -Λ_1, Λ_2, ...
    for i in 0..=d {
        let c = if i == 0 {
            1
        } else if i % 2 == 0 {
            l[i - 1]
        } else {
            f.neg(l[i - 1])
        };
        acc = acc.mul(f, m).add(f, &Matrix::scalar(d, c));
    }
    acc.is_zero()
}

/// Coefficient vectors on every element of a finite image.
#[derive(Clone, Debug)]
pub struct PseudoCharacter {
    pub d: usize,
    pub group: MatrixGroup,
    /// `values[i]` belongs to `group.elements()[i]`.
    pub values: Vec<Vec<Elem>>,
}

impl PseudoCharacter {
    pub fn field(&self) -> &Field {
        self.group.field()
    }

    /// Values of `Λ_1` on the elements, deduplicated and sorted.
    pub fn trace_values(&self) -> Vec<Elem> {
        let mut t: Vec<Elem> = self.values.iter().map(|v| v[0]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }
}

pub fn pseudo_of(f: &Field, tuple: &[Matrix], cap: usize) -> Result<PseudoCharacter> {
    let group = closure(f, tuple, cap)?;
    let values = group
        .elements()
        .iter()
        .map(|g| char_poly_coeffs(f, g))
        .collect();
    Ok(PseudoCharacter {
        d: tuple[0].rows(),
        group,
        values,
    })
}

/// Whether the two tuples have equal coefficient laws on every word, checked
/// on the closure of the paired tuple `g_i -> diag(A_i, B_i)`.
pub fn pseudo_equal(f: &Field, a: &[Matrix], b: &[Matrix], cap: usize) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of arity {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (da, db) = (a[0].rows(), b[0].rows());
    if da != db {
        return Ok(false);
    }
    // Cheap rejection on the generators themselves.
    for (x, y) in a.iter().zip(b) {
        if char_poly_coeffs(f, x) != char_poly_coeffs(f, y) {
            return Ok(false);
        }
    }
    let joint = closure(f, &pair_tuples(a, b)?, cap)?;
    Ok(joint.elements().iter().all(|m| {
        let x = m.submatrix(0..da, 0..da);
        let y = m.submatrix(da..da + db, da..da + db);
        char_poly_coeffs(f, &x) == char_poly_coeffs(f, &y)
    }))
}
