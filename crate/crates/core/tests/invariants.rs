use defring_core::ffalg::{Elem, Field, Matrix};
use defring_core::genmatrix::trace_invariants;
use defring_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..f.order())).collect();
        let m = Matrix::from_vec(d, d, data).unwrap();
        if m.is_invertible(f) {
            return m;
        }
    }
}

fn point(tuple: &[Matrix]) -> Vec<Elem> {
    tuple.iter().flat_map(|m| m.data().to_vec()).collect()
}

#[test]
fn invariants_are_conjugation_invariant_over_gf101() {
    let f = Field::new(101, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, d, len) in [(1, 2, 4), (2, 2, 4), (3, 2, 3), (2, 3, 3)] {
        let inv = trace_invariants(n, d, len).unwrap();
        for _ in 0..5 {
            let tuple: Vec<Matrix> = (0..n).map(|_| random_invertible(&f, d, &mut rng)).collect();
            let p = random_invertible(&f, d, &mut rng);
            let pi = p.inverse(&f).unwrap();
            let conj: Vec<Matrix> = tuple.iter().map(|m| p.mul(&f, m).mul(&f, &pi)).collect();
            let coeff = |c: &i128| f.from_int(*c as i64);
            for poly in inv.polys() {
                let a = inv.ring.evaluate_in(poly, &f, coeff, &point(&tuple));
                let b = inv.ring.evaluate_in(poly, &f, coeff, &point(&conj));
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn word_invariants_separate_pairs_that_generators_do_not() {
    let f = Field::new(101, 1).unwrap();
    let inv = trace_invariants(2, 2, 2).unwrap();
    let x = Matrix::diag(&[1, 2]);
    // same characteristic polynomial (t - 3)(t - 4), different diagonal
    let y = Matrix::diag(&[3, 4]);
    let y2 = Matrix::from_ints(&f, &[vec![4, 1], vec![0, 3]]).unwrap();
    let values = |t: &[Matrix]| -> Vec<(String, Elem)> {
        let pt = point(t);
        inv.labels()
            .into_iter()
            .zip(inv.polys())
            .map(|(l, p)| (l, inv.ring.evaluate_in(p, &f, |c: &i128| f.from_int(*c as i64), &pt)))
            .collect()
    };
    let a = values(&[x.clone(), y]);
    let b = values(&[x, y2]);
    for ((label, va), (_, vb)) in a.iter().zip(&b) {
        if label.ends_with("(X)") || label.ends_with("(Y)") {
            assert_eq!(va, vb, "{label}");
        }
        if label == "lambda1(XY)" {
            assert_eq!((*va, *vb), (11, 10));
        }
    }
    assert_ne!(a, b);
}

#[test]
fn oversized_requests_are_refused() {
    assert!(matches!(trace_invariants(4, 2, 2), Err(Error::SizeExceeded(_))));
    assert!(matches!(trace_invariants(2, 3, 6), Err(Error::SizeExceeded(_))));
}
