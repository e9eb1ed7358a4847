//! Sparse multivariate polynomials over a commutative ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::ffalg::ring::CommRing;

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E: Ord> {
    terms: BTreeMap<Monomial, E>,
}

impl<E: Ord + fmt::Debug> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<E: Ord + Clone> Poly<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Whether variable `v` occurs in some term.
    pub fn mentions(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m[v] > 0)
    }
}

/// `base[x_0, ..., x_{k-1}]` with named variables.
#[derive(Clone, Debug)]
pub struct PolyRing<R: CommRing> {
    base: R,
    names: Vec<String>,
}

impl<R: CommRing> PolyRing<R>
where
    R::E: Ord,
{
    pub fn new(base: R, names: Vec<String>) -> Self {
        PolyRing { base, names }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn from_terms(&self, terms: BTreeMap<Monomial, R::E>) -> Poly<R::E> {
        Poly {
            terms: terms
                .into_iter()
                .filter(|(_, c)| !self.base.is_zero(c))
                .collect(),
        }
    }

    pub fn constant(&self, c: R::E) -> Poly<R::E> {
        let mut t = BTreeMap::new();
        t.insert(vec![0; self.nvars()], c);
        self.from_terms(t)
    }

    pub fn int(&self, n: i64) -> Poly<R::E> {
        self.constant(self.base.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly<R::E> {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        let mut t = BTreeMap::new();
        t.insert(m, self.base.one());
        Poly { terms: t }
    }

    pub fn var_named(&self, name: &str) -> Poly<R::E> {
        self.var(self.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    pub fn scale(&self, p: &Poly<R::E>, c: &R::E) -> Poly<R::E> {
        self.from_terms(p.terms.iter().map(|(m, x)| (m.clone(), self.base.mul(x, c))).collect())
    }

    pub fn pow(&self, p: &Poly<R::E>, e: u32) -> Poly<R::E> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Replaces each variable `i` with `subs[i]` when it is `Some`.
    pub fn substitute(&self, p: &Poly<R::E>, subs: &[Option<Poly<R::E>>]) -> Poly<R::E> {
        let mut acc = self.zero();
        for (m, c) in &p.terms {
            let mut kept = vec![0; self.nvars()];
            let mut term = self.one();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &subs[i] {
                    Some(s) => term = self.mul(&term, &self.pow(s, e)),
                    None => kept[i] = e,
                }
            }
            let mut mono = BTreeMap::new();
            mono.insert(kept, c.clone());
            acc = self.add(&acc, &self.mul(&term, &Poly { terms: mono }));
        }
        acc
    }

    /// Substitutes base-ring values for every variable.
    pub fn evaluate(&self, p: &Poly<R::E>, point: &[R::E]) -> R::E {
        let r = &self.base;
        p.terms.iter().fold(r.zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = r.mul(&t, x);
                }
            }
            r.add(&acc, &t)
        })
    }

    /// Evaluates in another ring, mapping coefficients with `coeff`.
    pub fn evaluate_in<S: CommRing>(
        &self,
        p: &Poly<R::E>,
        target: &S,
        coeff: impl Fn(&R::E) -> S::E,
        point: &[S::E],
    ) -> S::E {
        p.terms.iter().fold(target.zero(), |acc, (m, c)| {
            let mut t = coeff(c);
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = target.mul(&t, x);
                }
            }
            target.add(&acc, &t)
        })
    }

    /// Moves `p` into `into`, sending variable `i` to variable `map[i]`.
    pub fn embed(&self, p: &Poly<R::E>, into: &PolyRing<R>, map: &[usize]) -> Poly<R::E> {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; into.nvars()];
                for (i, &k) in m.iter().enumerate() {
                    e[map[i]] += k;
                }
                (e, c.clone())
            })
            .collect();
        into.from_terms(terms)
    }

    /// If `p = c * x_v + h` with `x_v` absent from `h`, returns `(c, h)`.
    pub fn split_linear(&self, p: &Poly<R::E>, v: usize) -> Option<(R::E, Poly<R::E>)> {
        let mut unit = vec![0; self.nvars()];
        unit[v] = 1;
        let c = p.terms.get(&unit)?.clone();
        let mut rest = p.clone();
        rest.terms.remove(&unit);
        if rest.mentions(v) {
            return None;
        }
        Some((c, rest))
    }

    /// Renders with variable names, e.g. `x11*x22 - x12*x21 - 1`.
    pub fn render(&self, p: &Poly<R::E>) -> String
    where
        R::E: fmt::Display,
    {
        if p.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // higher total degree first, then reverse lexicographic on exponents
        let mut terms: Vec<(&Monomial, &R::E)> = p.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mut coeff = format!("{c}");
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{e}", self.names[i])
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl<R: CommRing> CommRing for PolyRing<R>
where
    R::E: Ord,
{
    type E = Poly<R::E>;

    fn zero(&self) -> Self::E {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::E {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let mut t = a.terms.clone();
        for (m, c) in &b.terms {
            match t.get_mut(m) {
                Some(x) => {
                    *x = self.base.add(x, c);
                    if self.base.is_zero(x) {
                        t.remove(m);
                    }
                }
                None => {
                    t.insert(m.clone(), c.clone());
                }
            }
        }
        Poly { terms: t }
    }

    fn neg(&self, a: &Self::E) -> Self::E {
        Poly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect(),
        }
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let mut t: BTreeMap<Monomial, R::E> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let c = self.base.mul(ca, cb);
                match t.get_mut(&m) {
                    Some(x) => *x = self.base.add(x, &c),
                    None => {
                        t.insert(m, c);
                    }
                }
            }
        }
        self.from_terms(t)
    }

    fn is_zero(&self, a: &Self::E) -> bool {
        a.terms.is_empty()
    }

    fn from_i64(&self, n: i64) -> Self::E {
        self.int(n)
    }
}
