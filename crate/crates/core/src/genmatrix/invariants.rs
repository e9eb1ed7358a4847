use std::collections::BTreeSet;

use super::agen::{generic_names, ZPoly, ZRing};
use super::poly::PolyRing;
use super::words::{canonical_rotation, render_word, words_up_to};
use crate::error::{Error, Result};
use crate::ffalg::group::Word;
use crate::ffalg::ring::{lambdas, ring_identity, ring_mat_mul, Integers, RingMatrix};
use crate::ffalg::{Field, Matrix};
use crate::gmodules::hom::is_isomorphic;
use crate::gmodules::meataxe::semisimplify;
use crate::gmodules::GModule;

/// Largest estimated number of term products for one `Λ_d` expansion.
const WORK_LIMIT: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct TraceInvariants {
    pub d: usize,
    pub gens: Vec<String>,
    pub ring: ZRing,
    /// `(word, i, Λ_i(word))`, one entry per distinct polynomial.
    pub entries: Vec<(Word, usize, ZPoly)>,
}

impl TraceInvariants {
    pub fn polys(&self) -> Vec<&ZPoly> {
        self.entries.iter().map(|(_, _, p)| p).collect()
    }

    /// Names like `lambda1(XY)` for each entry.
    pub fn labels(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(w, i, _)| format!("lambda{i}({})", render_word(w, &self.gens)))
            .collect()
    }
}

fn gen_names(n: usize) -> Vec<String> {
    ["X", "Y", "Z"].iter().take(n).map(|s| s.to_string()).collect()
}

/// `Λ_i(w)` of generic `d x d` matrices for all words of length at most
/// `max_len`, one word per rotation class, duplicates removed.
pub fn trace_invariants(n_gens: usize, d: usize, max_len: usize) -> Result<TraceInvariants> {
    if n_gens == 0 || n_gens > 3 || d == 0 || d > 3 || max_len == 0 || max_len > 6 {
        return Err(Error::SizeExceeded(format!(
            "trace invariants need 1 <= n_gens <= 3, 1 <= d <= 3, 1 <= L <= 6; got {n_gens}, {d}, {max_len}"
        )));
    }
    let terms = (d as u64).pow(max_len as u32 - 1);
    if terms.pow(d as u32) > WORK_LIMIT {
        return Err(Error::SizeExceeded(format!(
            "expanding Λ_{d} of words of length {max_len} is too large"
        )));
    }
    let gens = gen_names(n_gens);
    let ring = PolyRing::new(Integers, generic_names(&gens, d));
    let generic: Vec<RingMatrix<ZPoly>> = (0..n_gens)
        .map(|g| {
            (0..d)
                .map(|i| (0..d).map(|j| ring.var(g * d * d + i * d + j)).collect())
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for w in words_up_to(n_gens, max_len) {
        if canonical_rotation(&w) != w {
            continue;
        }
        let m = w
            .iter()
            .fold(ring_identity(&ring, d), |acc, &g| ring_mat_mul(&ring, &acc, &generic[g]));
        for (i, l) in lambdas(&ring, &m).into_iter().enumerate() {
            if seen.insert(l.clone()) {
                entries.push((w.clone(), i + 1, l));
            }
        }
    }
    Ok(TraceInvariants {
        d,
        gens,
        ring,
        entries,
    })
}

/// Whether the module of the tuple is semisimple, i.e. whether the
/// conjugation orbit of the tuple is closed.
pub fn orbit_is_closed(f: &Field, tuple: &[Matrix]) -> Result<bool> {
    let m = GModule::from_matrices(f, tuple)?;
    let ss = semisimplify(&m)?;
    if ss.constituents.len() == 1 {
        return Ok(true);
    }
    is_isomorphic(&m, &GModule::from_matrices(f, &ss.block_diagonal)?)
}
