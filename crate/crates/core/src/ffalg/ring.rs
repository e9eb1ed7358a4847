//! A minimal commutative-ring interface and the division-free
//! characteristic polynomial (Berkowitz) over any such ring.

use super::field::{Elem, Field};

pub trait CommRing {
    type E: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, n: i64) -> Self::E {
        let mut acc = self.zero();
        let one = if n < 0 { self.neg(&self.one()) } else { self.one() };
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        acc
    }
}

impl CommRing for Field {
    type E = Elem;

    fn zero(&self) -> Elem {
        0
    }
    fn one(&self) -> Elem {
        1
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Field::sub(self, *a, *b)
    }
    fn from_i64(&self, n: i64) -> Elem {
        self.from_int(n)
    }
}

/// The integers, with `i128` values. Overflow panics in debug builds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CommRing for Integers {
    type E = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a + b
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a * b
    }
    fn from_i64(&self, n: i64) -> i128 {
        n as i128
    }
}

/// Dual numbers GF(q)[eps]/(eps^2); values are `(a, b)` meaning `a + b eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumbers(pub Field);

impl CommRing for DualNumbers {
    type E = (Elem, Elem);

    fn zero(&self) -> Self::E {
        (0, 0)
    }
    fn one(&self) -> Self::E {
        (1, 0)
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        (self.0.add(a.0, b.0), self.0.add(a.1, b.1))
    }
    fn neg(&self, a: &Self::E) -> Self::E {
        (self.0.neg(a.0), self.0.neg(a.1))
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let f = &self.0;
        (f.mul(a.0, b.0), f.add(f.mul(a.0, b.1), f.mul(a.1, b.0)))
    }
    fn from_i64(&self, n: i64) -> Self::E {
        (self.0.from_int(n), 0)
    }
}

/// Square matrix over a generic ring, row-major as nested vectors.
pub type RingMatrix<E> = Vec<Vec<E>>;

pub fn ring_mat_mul<R: CommRing>(r: &R, a: &RingMatrix<R::E>, b: &RingMatrix<R::E>) -> RingMatrix<R::E> {
    let n = a.len();
    let m = b.first().map_or(0, |row| row.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(&a[i][k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn ring_identity<R: CommRing>(r: &R, n: usize) -> RingMatrix<R::E> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

/// Coefficients `[1, c_1, ..., c_d]` of `det(tI - m)`, highest degree first,
/// computed without division.
pub fn berkowitz<R: CommRing>(r: &R, m: &RingMatrix<R::E>) -> Vec<R::E> {
    let n = m.len();
    let mut v = vec![r.one()];
    for k in 0..n {
        // Leading k x k block A, row R = m[k][0..k], column C = m[0..k][k].
        let mut t = Vec::with_capacity(k + 2);
        t.push(r.one());
        t.push(r.neg(&m[k][k]));
        let mut w: Vec<R::E> = (0..k).map(|i| m[i][k].clone()).collect();
        for _ in 0..k {
            let rc = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&m[k][j], &w[j])));
            t.push(r.neg(&rc));
            w = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&m[i][j], &w[j]))))
                .collect();
        }
        let mut nv = Vec::with_capacity(k + 2);
        for i in 0..k + 2 {
            let mut acc = r.zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j {
                    acc = r.add(&acc, &r.mul(&t[i - j], vj));
                }
            }
            nv.push(acc);
        }
        v = nv;
    }
    v
}

/// The coefficient laws `(Lambda_1, ..., Lambda_d)` with
/// `det(tI - m) = sum (-1)^i Lambda_i t^(d-i)`.
pub fn lambdas<R: CommRing>(r: &R, m: &RingMatrix<R::E>) -> Vec<R::E> {
    berkowitz(r, m)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| if i % 2 == 0 { c } else { r.neg(&c) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berkowitz_two_by_two_over_integers() {
        let m = vec![vec![3, 5], vec![7, 11]];
        assert_eq!(berkowitz(&Integers, &m), vec![1, -14, 33 - 35]);
        assert_eq!(lambdas(&Integers, &m), vec![14, -2]);
    }

    #[test]
    fn berkowitz_matches_cofactor_determinant_three_by_three() {
        let m: Vec<Vec<i128>> = vec![vec![2, -1, 4], vec![0, 3, 5], vec![1, 1, -2]];
        let det = 2 * (3 * -2 - 5) - -(0 * -2 - 5) + 4 * (0 - 3);
        let l = lambdas(&Integers, &m);
        assert_eq!(l[0], 3);
        assert_eq!(l[2], det);
        let minors = (3 * -2 - 5) + (2 * -2 - 4) + (2 * 3);
        assert_eq!(l[1], minors);
    }

    #[test]
    fn dual_numbers_differentiate_determinant() {
        let f = Field::new(7, 1).unwrap();
        let r = DualNumbers(f);
        // det(I + eps E11) = 1 + eps
        let m = vec![vec![(1, 1), (0, 0)], vec![(0, 0), (1, 0)]];
        assert_eq!(lambdas(&r, &m)[1], (1, 1));
    }
}
