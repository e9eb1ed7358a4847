//! Presentations of the generic-matrix algebra from Cayley–Hamilton data.

use std::collections::BTreeMap;

use serde::Serialize;

use super::poly::{Poly, PolyRing};
use super::words::{render_word, words_up_to};
use crate::error::{Error, Result};
use crate::ffalg::group::Word;
use crate::ffalg::ring::{lambdas, ring_identity, ring_mat_mul, CommRing, Integers, RingMatrix};

pub type ZRing = PolyRing<Integers>;
pub type ZPoly = Poly<i128>;

/// `sum_k c_k w_k` with coefficients in the base ring; the empty word is 1.
#[derive(Clone, Debug)]
pub struct NcPoly {
    pub terms: Vec<(ZPoly, Word)>,
}

/// `Λ_i(word) - c_i`.
#[derive(Clone, Debug)]
pub struct ChGenerator {
    pub word: Word,
    pub index: usize,
    pub poly: ZPoly,
    /// `c_i` is a fresh symbol, so the generator only names `Λ_i(word)`.
    pub defining: bool,
}

#[derive(Clone, Debug)]
pub struct GenericAlgebraPresentation {
    pub d: usize,
    pub gens: Vec<String>,
    pub ring: ZRing,
    /// Supplied base symbols followed by the fresh `lambda` symbols.
    pub base_vars: Vec<usize>,
    pub matrix_vars: Vec<usize>,
    /// Entries of every relation evaluated on the generic matrices.
    pub relation_entries: Vec<ZPoly>,
    pub ch_generators: Vec<ChGenerator>,
    pub word_bound: usize,
}

/// Outcome of eliminating base symbols that occur linearly with a unit
/// coefficient in some generator.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// `(variable, value)` in elimination order.
    pub eliminated: Vec<(usize, ZPoly)>,
    /// Generators consumed by the eliminations, in original form.
    pub used: Vec<ZPoly>,
    /// Indices into `ch_generators` of the consumed Cayley–Hamilton
    /// generators that are not merely defining.
    pub essential: Vec<usize>,
    /// What is left of the ideal after substitution, zeros dropped.
    pub residual: Vec<ZPoly>,
}

impl GenericAlgebraPresentation {
    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn generic_matrix(&self, g: usize) -> RingMatrix<ZPoly> {
        let d = self.d;
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.ring.var(self.matrix_vars[g * d * d + i * d + j]))
                    .collect()
            })
            .collect()
    }

    pub fn word_matrix(&self, w: &[usize]) -> RingMatrix<ZPoly> {
        w.iter().fold(ring_identity(&self.ring, self.d), |acc, &g| {
            ring_mat_mul(&self.ring, &acc, &self.generic_matrix(g))
        })
    }

    /// Relation entries followed by all Cayley–Hamilton generators.
    pub fn relation_ideal(&self) -> Vec<ZPoly> {
        self.relation_entries
            .iter()
            .cloned()
            .chain(self.ch_generators.iter().map(|c| c.poly.clone()))
            .collect()
    }

    pub fn reduce(&self) -> Reduction {
        let r = &self.ring;
        // Cayley–Hamilton generators are tried first, in order.
        let originals: Vec<(Option<usize>, &ZPoly)> = self
            .ch_generators
            .iter()
            .enumerate()
            .map(|(i, c)| (Some(i), &c.poly))
            .chain(self.relation_entries.iter().map(|p| (None, p)))
            .collect();
        let mut pending: Vec<(usize, ZPoly)> =
            originals.iter().enumerate().map(|(k, (_, p))| (k, (*p).clone())).collect();
        let mut out = Reduction {
            eliminated: Vec::new(),
            used: Vec::new(),
            essential: Vec::new(),
            residual: Vec::new(),
        };
        loop {
            pending.retain(|(_, p)| !r.is_zero(p));
            let found = pending.iter().enumerate().find_map(|(k, (_, p))| {
                self.base_vars.iter().find_map(|&v| {
                    r.split_linear(p, v)
                        .filter(|(c, _)| *c == 1 || *c == -1)
                        .map(|(c, h)| (k, v, c, h))
                })
            });
            let Some((k, v, c, h)) = found else { break };
            // c x_v + h = 0 with c = ±1 gives x_v = -c h
            let value = r.scale(&h, &-c);
            let (orig, _) = pending.remove(k);
            let (tag, poly) = originals[orig];
            out.used.push(poly.clone());
            if let Some(i) = tag {
                if !self.ch_generators[i].defining {
                    out.essential.push(i);
                }
            }
            let mut subs = vec![None; r.nvars()];
            subs[v] = Some(value.clone());
            for (_, p) in pending.iter_mut() {
                *p = r.substitute(p, &subs);
            }
            for (_, e) in out.eliminated.iter_mut() {
                *e = r.substitute(e, &subs);
            }
            out.eliminated.push((v, value));
        }
        out.residual = pending.into_iter().map(|(_, p)| p).collect();
        out
    }
}

pub(crate) fn generic_names(gens: &[String], d: usize) -> Vec<String> {
    let mut names = Vec::new();
    for g in gens {
        for i in 1..=d {
            for j in 1..=d {
                names.push(if gens.len() == 1 {
                    format!("x{i}{j}")
                } else {
                    format!("{g}_{i}{j}")
                });
            }
        }
    }
    names
}

/// Builds the presentation with the Cayley–Hamilton generators for all
/// positive words of length at most `word_bound` (default twice the number
/// of generators). Words without supplied values get fresh symbols.
pub fn build_agen(
    d: usize,
    gens: &[String],
    base: &ZRing,
    relations: &[NcPoly],
    lambda_values: &[(Word, Vec<ZPoly>)],
    word_bound: Option<usize>,
) -> Result<GenericAlgebraPresentation> {
    if d == 0 || gens.is_empty() {
        return Err(Error::DimensionMismatch("need d >= 1 and at least one generator".into()));
    }
    let word_bound = word_bound.unwrap_or(2 * gens.len());
    let mut supplied: BTreeMap<Word, Vec<ZPoly>> = BTreeMap::new();
    for (w, c) in lambda_values {
        if c.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficient values for word {}, expected {d}",
                c.len(),
                render_word(w, gens)
            )));
        }
        if let Some(prev) = supplied.insert(w.clone(), c.clone()) {
            if prev != *c {
                return Err(Error::InconsistentLambda { word: render_word(w, gens) });
            }
        }
    }
    let words = words_up_to(gens.len(), word_bound);

    // matrix entries first so that they lead when rendered
    let mut names = generic_names(gens, d);
    let n_matrix = names.len();
    names.extend(base.names().iter().cloned());
    let mut fresh = BTreeMap::new();
    for w in &words {
        if !supplied.contains_key(w) {
            for i in 1..=d {
                fresh.insert((w.clone(), i), names.len());
                names.push(format!("lambda{i}({})", render_word(w, gens)));
            }
        }
    }
    let ring = PolyRing::new(Integers, names);
    let map: Vec<usize> = (n_matrix..n_matrix + base.nvars()).collect();
    let lift = |p: &ZPoly| base.embed(p, &ring, &map);

    let pres = GenericAlgebraPresentation {
        d,
        gens: gens.to_vec(),
        base_vars: (n_matrix..ring.nvars()).collect(),
        matrix_vars: (0..n_matrix).collect(),
        ring: ring.clone(),
        relation_entries: Vec::new(),
        ch_generators: Vec::new(),
        word_bound,
    };

    let mut relation_entries = Vec::new();
    for rel in relations {
        let mut acc: RingMatrix<ZPoly> = vec![vec![ring.zero(); d]; d];
        for (c, w) in &rel.terms {
            if w.iter().any(|&g| g >= gens.len()) {
                return Err(Error::DimensionMismatch("relation word uses an unknown generator".into()));
            }
            let wm = pres.word_matrix(w);
            let c = lift(c);
            for i in 0..d {
                for j in 0..d {
                    acc[i][j] = ring.add(&acc[i][j], &ring.mul(&c, &wm[i][j]));
                }
            }
        }
        relation_entries.extend(acc.into_iter().flatten());
    }

    let mut ch_generators = Vec::new();
    for w in &words {
        let lam = lambdas(&ring, &pres.word_matrix(w));
        for (i, l) in lam.into_iter().enumerate() {
            let (c, defining) = match supplied.get(w) {
                Some(vals) => (lift(&vals[i]), false),
                None => (ring.var(fresh[&(w.clone(), i + 1)]), true),
            };
            ch_generators.push(ChGenerator {
                word: w.clone(),
                index: i + 1,
                poly: ring.sub(&l, &c),
                defining,
            });
        }
    }
    Ok(GenericAlgebraPresentation {
        relation_entries,
        ch_generators,
        ..pres
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Example35Report {
    /// Entries of `M^2 - (2+t)M + (1+d)I` on the generic matrix.
    pub ch_entries: Vec<String>,
    /// Each entry vanishes after `t := x11+x22-2`, `d := x11x22-x12x21-1`.
    pub entries_reduce_to_zero: bool,
    /// The generators left after elimination, rendered.
    pub generators: Vec<String>,
    /// They are exactly `tr(M)-(2+t)` and `det(M)-(1+d)`.
    pub generators_match: bool,
    /// Only `t` and `d` were eliminated and nothing else remains.
    pub free_after_substitution: bool,
    /// `M = [[1,x12],[0,1]]`, `t = d = 0` satisfies every relation.
    pub specialization_ok: bool,
}

impl Example35Report {
    pub fn passed(&self) -> bool {
        self.entries_reduce_to_zero
            && self.generators_match
            && self.free_after_substitution
            && self.specialization_ok
    }
}

pub fn verify_example_3_5() -> Example35Report {
    let base = PolyRing::new(Integers, vec!["t".into(), "d".into()]);
    let (t, dd) = (base.var(0), base.var(1));
    let two_t = base.add(&base.int(2), &t);
    let one_d = base.add(&base.int(1), &dd);
    let relation = NcPoly {
        terms: vec![
            (base.int(1), vec![0, 0]),
            (base.neg(&two_t), vec![0]),
            (one_d.clone(), vec![]),
        ],
    };
    let pres = build_agen(
        2,
        &["M".to_string()],
        &base,
        &[relation],
        &[(vec![0], vec![two_t, one_d])],
        None,
    )
    .expect("well-formed input");
    let r = &pres.ring;
    let v = |n: &str| r.var_named(n);
    let (t, d) = (v("t"), v("d"));
    let (x11, x12, x21, x22) = (v("x11"), v("x12"), v("x21"), v("x22"));

    // (a) direct substitution into the entries
    let mut subs = vec![None; r.nvars()];
    subs[r.index_of("t").unwrap()] = Some(r.sub(&r.add(&x11, &x22), &r.int(2)));
    subs[r.index_of("d").unwrap()] =
        Some(r.sub(&r.sub(&r.mul(&x11, &x22), &r.mul(&x12, &x21)), &r.int(1)));
    let entries_reduce_to_zero = pres
        .relation_entries
        .iter()
        .all(|e| r.is_zero(&r.substitute(e, &subs)));

    // (b) the surviving generators, against hand-written trace and determinant
    let red = pres.reduce();
    let expected = [
        r.sub(&r.add(&x11, &x22), &r.add(&r.int(2), &t)),
        r.sub(&r.sub(&r.mul(&x11, &x22), &r.mul(&x12, &x21)), &r.add(&r.int(1), &d)),
    ];
    let found: Vec<ZPoly> = red
        .essential
        .iter()
        .map(|&i| pres.ch_generators[i].poly.clone())
        .collect();
    let generators_match = found == expected;
    let t_idx = r.index_of("t").unwrap();
    let d_idx = r.index_of("d").unwrap();
    let eliminated_base: Vec<usize> = red
        .eliminated
        .iter()
        .map(|(v, _)| *v)
        .filter(|v| *v == t_idx || *v == d_idx)
        .collect();
    let free_after_substitution = red.residual.is_empty()
        && eliminated_base.len() == 2
        && red.eliminated.iter().all(|(v, _)| pres.base_vars.contains(v));

    // (c) the unipotent specialisation, x12 left symbolic
    let mut spec = vec![None; r.nvars()];
    for (name, val) in [("t", 0), ("d", 0), ("x11", 1), ("x21", 0), ("x22", 1)] {
        spec[r.index_of(name).unwrap()] = Some(r.int(val));
    }
    let specialization_ok = pres
        .relation_entries
        .iter()
        .chain(expected.iter())
        .all(|p| r.is_zero(&r.substitute(p, &spec)));

    Example35Report {
        ch_entries: pres.relation_entries.iter().map(|e| r.render(e)).collect(),
        entries_reduce_to_zero,
        generators: found.iter().map(|g| r.render(g)).collect(),
        generators_match,
        free_after_substitution,
        specialization_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_3_5_passes() {
        let rep = verify_example_3_5();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.generators, vec!["x11 + x22 - t - 2", "x11*x22 - x12*x21 - d - 1"]);
        assert_eq!(rep.ch_entries[0], "x11^2 - x11*t + x12*x21 - 2*x11 + d + 1");
    }

    #[test]
    fn one_dimensional_free_generator() {
        let base = PolyRing::new(Integers, vec![]);
        let p = build_agen(1, &["X".into()], &base, &[], &[], Some(1)).unwrap();
        assert!(p.relation_entries.is_empty());
        assert_eq!(p.ch_generators.len(), 1);
        assert!(p.ch_generators[0].defining);
        assert_eq!(p.ring.render(&p.ch_generators[0].poly), "x11 - lambda1(X)");
        let red = p.reduce();
        assert!(red.residual.is_empty() && red.essential.is_empty());
    }

    #[test]
    fn two_free_generators_have_zero_relative_ideal() {
        let base = PolyRing::new(Integers, vec![]);
        let p = build_agen(2, &["X".into(), "Y".into()], &base, &[], &[], Some(1)).unwrap();
        assert_eq!(p.ch_generators.len(), 4);
        assert!(p.ch_generators.iter().all(|c| c.defining));
        let red = p.reduce();
        assert!(red.residual.is_empty());
        assert_eq!(red.eliminated.len(), 4);
    }

    #[test]
    fn conflicting_values_are_rejected() {
        let base = PolyRing::new(Integers, vec![]);
        let err = build_agen(
            1,
            &["X".into()],
            &base,
            &[],
            &[(vec![0], vec![base.int(1)]), (vec![0], vec![base.int(2)])],
            Some(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InconsistentLambda { word } if word == "X"));
    }
}
