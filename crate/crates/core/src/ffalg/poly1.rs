//! Univariate polynomials over GF(q) and their factorisation.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no
//! trailing zeros (the zero polynomial is the empty vector).

use rand::Rng;

use super::field::{Elem, Field};
use super::matrix::Matrix;

pub type Poly1 = Vec<Elem>;

pub fn trim(a: &mut Poly1) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[Elem]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Poly1 {
    let n = a.len().max(b.len());
    let mut c: Poly1 = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut c);
    c
}

pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Poly1 {
    let n = a.len().max(b.len());
    let mut c: Poly1 = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut c);
    c
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Poly1 {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = f.add(c[i + j], f.mul(x, y));
        }
    }
    trim(&mut c);
    c
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Poly1, Poly1) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut q = vec![0; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, bi));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Poly1 {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &[Elem]) -> Poly1 {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = f.inv(l).expect("nonzero");
            a.iter().map(|&x| f.mul(x, inv)).collect()
        }
    }
}

pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Poly1 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &Field, a: &[Elem]) -> Poly1 {
    let mut d: Poly1 = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
        .collect();
    trim(&mut d);
    d
}

pub fn mulmod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Poly1 {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Field, a: &[Elem], mut e: u64, m: &[Elem]) -> Poly1 {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Evaluates the polynomial at a square matrix (Horner).
pub fn eval_matrix(f: &Field, a: &[Elem], m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for &c in a.iter().rev() {
        acc = acc.mul(f, m).add(f, &Matrix::scalar(n, c));
    }
    acc
}

/// Characteristic polynomial `det(tI - m)`, lowest degree first.
pub fn char_poly(f: &Field, m: &Matrix) -> Poly1 {
    let rows = m.to_rows();
    let mut c = super::ring::berkowitz(f, &rows);
    c.reverse();
    c
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Field, a: &[Elem]) -> Poly1 {
    let p = f.p() as usize;
    // The inverse of Frobenius on GF(p^k) is x -> x^(p^(k-1)).
    let e = (f.order() / f.p()) as i64;
    a.iter()
        .step_by(p)
        .map(|&c| f.pow(c, e))
        .collect()
}

/// Square-free decomposition: pairs `(g, m)` with `a = prod g^m` up to a unit,
/// each `g` square-free and monic.
pub fn squarefree(f: &Field, a: &[Elem]) -> Vec<(Poly1, usize)> {
    let mut out = Vec::new();
    squarefree_into(f, &monic(f, a), 1, &mut out);
    out.sort();
    // Merge equal factors arising from different branches.
    let mut merged: Vec<(Poly1, usize)> = Vec::new();
    for (g, m) in out {
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += m,
            None => merged.push((g, m)),
        }
    }
    merged
}

fn squarefree_into(f: &Field, a: &[Elem], scale: usize, out: &mut Vec<(Poly1, usize)>) {
    if a.len() <= 1 {
        return;
    }
    let da = derivative(f, a);
    if da.is_empty() {
        squarefree_into(f, &pth_root(f, a), scale * f.p() as usize, out);
        return;
    }
    let mut c = gcd(f, a, &da);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if z.len() > 1 {
            out.push((monic(f, &z), i * scale));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if c.len() > 1 {
        squarefree_into(f, &pth_root(f, &c), scale * f.p() as usize, out);
    }
}

/// Distinct-degree factorisation of a monic square-free polynomial:
/// pairs `(g, k)` where `g` is the product of all irreducible factors of degree `k`.
pub fn distinct_degree(f: &Field, a: &[Elem]) -> Vec<(Poly1, usize)> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x = vec![0, 1];
    let mut h = rem(f, &x, &rest);
    let mut k = 1;
    while rest.len() > 1 && 2 * k < rest.len() {
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if g.len() > 1 {
            out.push((g.clone(), k));
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
        k += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `k` (Cantor–Zassenhaus).
pub fn equal_degree<R: Rng>(f: &Field, a: &[Elem], k: usize, rng: &mut R) -> Vec<Poly1> {
    let n = a.len() - 1;
    if n == k {
        return vec![monic(f, a)];
    }
    let q = f.order() as u64;
    loop {
        let r: Poly1 = {
            let mut r: Poly1 = (0..n).map(|_| rng.gen_range(0..f.order())).collect();
            trim(&mut r);
            r
        };
        if r.len() <= 1 {
            continue;
        }
        let candidate = if f.p() == 2 {
            // Absolute trace map r + r^2 + ... + r^(2^(e k - 1)), q = 2^e.
            let steps = f.degree() as usize * k;
            let mut acc = r.clone();
            let mut cur = r.clone();
            for _ in 1..steps {
                cur = mulmod(f, &cur, &cur, a);
                acc = add(f, &acc, &cur);
            }
            acc
        } else {
            // r^((q^k - 1)/2) = (r * r^q * ... * r^(q^(k-1)))^((q-1)/2)
            let mut cur = rem(f, &r, a);
            let mut norm = cur.clone();
            for _ in 1..k {
                cur = powmod(f, &cur, q, a);
                norm = mulmod(f, &norm, &cur, a);
            }
            let s = powmod(f, &norm, (q - 1) / 2, a);
            sub(f, &s, &[1])
        };
        let g = gcd(f, a, &candidate);
        if g.len() > 1 && g.len() < a.len() {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, k, rng);
            out.extend(equal_degree(f, &h, k, rng));
            return out;
        }
    }
}

/// Complete factorisation into monic irreducibles with multiplicities, sorted.
pub fn factor<R: Rng>(f: &Field, a: &[Elem], rng: &mut R) -> Vec<(Poly1, usize)> {
    let mut out = Vec::new();
    for (sf, m) in squarefree(f, a) {
        for (g, k) in distinct_degree(f, &sf) {
            for h in equal_degree(f, &g, k, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expand(f: &Field, fs: &[(Poly1, usize)]) -> Poly1 {
        let mut acc = vec![1];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = mul(f, &acc, g);
            }
        }
        acc
    }

    fn is_irreducible_brute(f: &Field, g: &[Elem]) -> bool {
        let n = g.len() - 1;
        if n <= 1 {
            return true;
        }
        // trial division by every monic polynomial of degree 1..=n/2
        let q = f.order() as usize;
        for d in 1..=n / 2 {
            let count = q.pow(d as u32);
            for idx in 0..count {
                let mut h = Vec::with_capacity(d + 1);
                let mut t = idx;
                for _ in 0..d {
                    h.push((t % q) as Elem);
                    t /= q;
                }
                h.push(1);
                if rem(f, g, &h).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factorisations_multiply_back_and_are_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, k).unwrap();
            for _ in 0..30 {
                let deg = rng.gen_range(1..9);
                let mut a: Poly1 = (0..deg).map(|_| rng.gen_range(0..f.order())).collect();
                a.push(1);
                // add a repeated factor now and then
                if rng.gen_bool(0.5) {
                    let b = vec![rng.gen_range(0..f.order()), 1];
                    a = mul(&f, &a, &mul(&f, &b, &b));
                }
                let fs = factor(&f, &a, &mut rng);
                assert_eq!(expand(&f, &fs), a, "{p}^{k}: {a:?}");
                for (g, _) in &fs {
                    assert!(is_irreducible_brute(&f, g), "{g:?} over {p}^{k}");
                }
            }
        }
    }

    #[test]
    fn pth_power_inputs_are_handled() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x + 4)^3 (x^2 + 1)^3 over GF(9)
        let a = mul(&f, &[4, 1], &[1, 0, 1]);
        let a3 = mul(&f, &a, &mul(&f, &a, &a));
        let fs = factor(&f, &a3, &mut rng);
        assert_eq!(expand(&f, &fs), a3);
        assert!(fs.iter().all(|(_, m)| *m == 3));
    }

    #[test]
    fn char_poly_evaluates_to_zero_at_the_matrix() {
        let f = Field::new(5, 1).unwrap();
        let m = Matrix::from_ints(&f, &[vec![1, 2, 0], vec![3, 4, 1], vec![0, 2, 2]]).unwrap();
        let c = char_poly(&f, &m);
        assert_eq!(c.len(), 4);
        assert!(eval_matrix(&f, &c, &m).is_zero());
    }
}
