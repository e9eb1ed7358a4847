//! Finite fields GF(p^f) with table-driven arithmetic.
//!
//! An element is stored as a `u32` in `0..q`. Its base-p digits are the
//! coefficients (lowest degree first) of its residue in GF(p)[x]/(modulus),
//! so `0..p` is the prime subfield and `1` is the identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted at ingestion.
pub const MAX_ORDER: u32 = 1 << 16;

pub type Elem = u32;

const NO_LOG: u32 = u32::MAX;

struct Tables {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[i] = g^i`, doubled so that sums of two logs need no reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// The finite field GF(q), q = p^f. Cloning shares the arithmetic tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.t.p, self.t.f, self.t.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over GF(p), lowest coefficient first.

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn prime_polmod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = modpow(m[dm] as u64, (p - 2) as u64, p as u64) as u32;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
        }
        trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits_of(mut x: u32, p: u32, f: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(f as usize);
    for _ in 0..f {
        v.push(x % p);
        x /= p;
    }
    v
}

fn value_of(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic irreducibility over GF(p) by trial division with every monic
/// polynomial of degree at most half the degree.
fn is_irreducible_prime(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for low in 0..count {
            let mut g = digits_of(low as u32, p, k as u32);
            g.push(1);
            let r = prime_polmod(m, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn poly_mulmod_prime(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    let mut r = prime_polmod(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

impl Field {
    /// GF(p^f) with the built-in modulus: the least primitive monic
    /// polynomial of degree f, ordered by its low coefficients read as a
    /// base-p integer.
    pub fn new(p: u32, f: u32) -> Result<Self> {
        Self::check_size(p, f)?;
        if f == 1 {
            // x - g for the least primitive root g, so that x itself generates.
            let g = (1..p.max(2))
                .find(|&g| Self::prime_order(g, p) == p - 1)
                .unwrap_or(1);
            return Self::build(p, 1, vec![(p - g) % p, 1]);
        }
        let count = (p as u64).pow(f);
        for low in 0..count {
            let mut m = digits_of(low as u32, p, f);
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            if is_irreducible_prime(&m, p) && Self::x_is_primitive(&m, p) {
                return Self::build(p, f, m);
            }
        }
        Err(Error::InvalidField(format!(
            "no primitive polynomial of degree {f} over GF({p})"
        )))
    }

    /// GF(p^f) defined by a user-supplied monic irreducible modulus,
    /// coefficients lowest degree first.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let f = (modulus.len() - 1) as u32;
        Self::check_size(p, f)?;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if !is_irreducible_prime(modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Self::build(p, f, modulus.to_vec())
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    fn check_size(p: u32, f: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        match (p as u64).checked_pow(f) {
            Some(q) if q <= MAX_ORDER as u64 => Ok(()),
            _ => Err(Error::InvalidField(format!(
                "GF({p}^{f}) exceeds the supported order {MAX_ORDER}"
            ))),
        }
    }

    fn prime_order(g: u32, p: u32) -> u32 {
        if p == 2 {
            return 1;
        }
        let mut x = g as u64;
        let mut k = 1;
        while x != 1 {
            x = x * g as u64 % p as u64;
            k += 1;
            if k > p {
                return 0;
            }
        }
        k
    }

    fn x_is_primitive(m: &[u32], p: u32) -> bool {
        let f = m.len() - 1;
        let q = (p as u64).pow(f as u32);
        let mut x = vec![0u32; f];
        x[1.min(f - 1)] = 1;
        if f == 1 {
            x[0] = (p - m[0]) % p;
        }
        let mut acc = x.clone();
        let one = {
            let mut o = vec![0u32; f];
            o[0] = 1;
            o
        };
        for k in 1..q - 1 {
            if acc == one {
                return k == q - 1;
            }
            acc = poly_mulmod_prime(&acc, &x, m, p);
        }
        acc == one
    }

    fn build(p: u32, f: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(f);
        let fu = f as usize;
        let mut generator = 0;
        let mut exp = Vec::new();
        // Search for a primitive element; x is tried first.
        let mut candidates: Vec<u32> = if f == 1 { vec![] } else { vec![p] };
        candidates.extend(2..q.max(2));
        if q == 2 {
            candidates = vec![1];
        }
        for g in candidates {
            let gd = digits_of(g, p, f);
            let mut cur = vec![0u32; fu];
            cur[0] = 1;
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut ok = true;
            for i in 0..q - 1 {
                let v = value_of(&cur, p);
                if i > 0 && v == 1 {
                    ok = false;
                    break;
                }
                powers.push(v);
                cur = poly_mulmod_prime(&cur, &gd, &modulus, p);
            }
            if ok && value_of(&cur, p) == 1 {
                generator = g;
                exp = powers;
                break;
            }
        }
        if exp.is_empty() {
            return Err(Error::InvalidField("could not find a primitive element".into()));
        }
        let order = (q - 1) as usize;
        let mut log = vec![NO_LOG; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        let mut zech = vec![NO_LOG; order];
        for (k, z) in zech.iter_mut().enumerate() {
            let mut d = digits_of(exp[k], p, f);
            d[0] = (d[0] + 1) % p;
            let v = value_of(&d, p);
            if v != 0 {
                *z = log[v as usize];
            }
        }
        Ok(Field {
            t: Arc::new(Tables {
                p,
                f,
                q,
                modulus,
                generator,
                exp: doubled,
                log,
                zech,
            }),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.f
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> Elem {
        self.t.generator
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.t.q
    }

    /// Checked conversion of an element id.
    pub fn element(&self, v: u32) -> Result<Elem> {
        if v < self.t.q {
            Ok(v)
        } else {
            Err(Error::invalid("element", format!("{v} is not below q = {}", self.t.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.t.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.t.f == 1 {
            let s = a + b;
            return if s >= self.t.p { s - self.t.p } else { s };
        }
        if self.t.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let order = self.t.q - 1;
        let la = self.t.log[a as usize];
        let lb = self.t.log[b as usize];
        let k = if lb >= la { lb - la } else { lb + order - la };
        let z = self.t.zech[k as usize];
        if z == NO_LOG {
            0
        } else {
            self.t.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 || self.t.p == 2 {
            return a;
        }
        if self.t.f == 1 {
            return self.t.p - a;
        }
        let half = (self.t.q - 1) / 2;
        self.t.exp[(self.t.log[a as usize] + half) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.t.f == 1 {
            return ((a as u64 * b as u64) % self.t.p as u64) as Elem;
        }
        self.t.exp[(self.t.log[a as usize] + self.t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let order = self.t.q - 1;
        let la = self.t.log[a as usize];
        Some(self.t.exp[((order - la) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` for any integer exponent; `0^e` is 0 for e != 0.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.t.q - 1) as i64;
        let la = self.t.log[a as usize] as i64;
        let k = (la * (e.rem_euclid(order))).rem_euclid(order);
        self.t.exp[k as usize]
    }

    /// Discrete logarithm with respect to [`Field::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        let l = self.t.log.get(a as usize).copied()?;
        (l != NO_LOG).then_some(l)
    }

    /// `g^k` for the table generator.
    pub fn exp(&self, k: u64) -> Elem {
        self.t.exp[(k % (self.t.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.t.q - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// A primitive `m`-th root of unity, if `m` divides q - 1.
    pub fn root_of_unity(&self, m: u64) -> Option<Elem> {
        let n = (self.t.q - 1) as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return None;
        }
        Some(self.exp(n / m))
    }

    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a < self.t.p
    }

    /// The field GF(q^k) with its built-in modulus.
    pub fn extension(&self, k: u32) -> Result<Field> {
        Field::new(self.t.p, self.t.f * k)
    }

    /// An embedding of `self` into `big` as a lookup table indexed by element
    /// id. Requires matching characteristic and divisible degree.
    pub fn embedding_into(&self, big: &Field) -> Result<Vec<Elem>> {
        if big.p() != self.p() || !big.degree().is_multiple_of(self.degree()) {
            return Err(Error::InvalidField(format!(
                "{self:?} does not embed into {big:?}"
            )));
        }
        let m = self.modulus();
        let eval = |x: Elem| {
            m.iter()
                .rev()
                .fold(0, |acc, &c| big.add(big.mul(acc, x), c))
        };
        let root = big
            .elements()
            .find(|&x| eval(x) == 0)
            .ok_or_else(|| Error::AssertionFailed("modulus has no root in extension".into()))?;
        let (p, f) = (self.p(), self.degree());
        Ok(self
            .elements()
            .map(|a| {
                let d = digits_of(a, p, f);
                d.iter()
                    .rev()
                    .fold(0, |acc, &c| big.add(big.mul(acc, root), c))
            })
            .collect())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
