//! The full pipeline from a validated spec to a deformation report.

use defring_core::cohom::{profile, CohomProfile};
use defring_core::components::{component_report, smoothness_predicates, ComponentReport, SmoothnessFlags};
use defring_core::dimension::{
    bound_fibre, bound_zp, codim_gap, expected_dims, kummer_codims, mrs_bound, partition_stats, sweep,
    ExpectedDims, KummerCodims, PartitionData, SweepRow,
};
use defring_core::ffalg::field::is_prime;
use defring_core::ffalg::Elem;
use defring_core::gmodules::hom::is_isomorphic;
use defring_core::gmodules::kummer::{kummer_irreducible, KummerReport};
use defring_core::gmodules::meataxe::{is_absolutely_irreducible, semisimplify};
use defring_core::gmodules::module::omega_subgroup_order;
use defring_core::gmodules::GModule;
use defring_core::pseudochar::{char_poly_coeffs, pseudo_equal, pseudo_of};
use defring_core::Error;
use serde::Serialize;

use crate::error::CliResult;
use crate::ingest::{InputSpec, Validated};

/// A value together with the operation that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Entry<T> {
    pub provenance: &'static str,
    pub value: T,
}

fn entry<T>(provenance: &'static str, value: T) -> Entry<T> {
    Entry { provenance, value }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoClass {
    pub dim: usize,
    pub multiplicity: usize,
    /// Indices into the constituent list.
    pub constituents: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MrsRecord {
    pub generic: usize,
    pub special: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudoCharacterData {
    pub group_order: usize,
    /// `(Λ_1, ..., Λ_d)` of each generator, as field element ids.
    pub generator_coefficients: Vec<Vec<Elem>>,
    pub distinct_coefficient_vectors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub version: &'static str,
    pub input: InputSpec,
    pub cap: usize,
    pub image_order: Entry<usize>,
    pub constituent_dims: Entry<Vec<usize>>,
    pub isomorphism_classes: Entry<Vec<IsoClass>>,
    pub absolutely_irreducible: Entry<bool>,
    /// Constituent indices grouped by `D_i ≅ D_j(t)` for some `t`.
    pub twist_classes: Entry<Vec<Vec<usize>>>,
    pub cohomology: Entry<CohomProfile>,
    pub expected_dims: Entry<ExpectedDims>,
    pub partition: Entry<PartitionData>,
    pub bound_zp: Entry<usize>,
    pub codim_gap: Entry<i64>,
    pub bound_fibre: Entry<usize>,
    pub partition_table: Entry<Vec<SweepRow>>,
    pub mrs_bound: Entry<MrsRecord>,
    pub kummer_codims: Entry<KummerCodims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kummer: Option<Entry<KummerReport>>,
    pub components: Entry<ComponentReport>,
    pub smoothness: Entry<SmoothnessFlags>,
    pub pseudo_character: Entry<PseudoCharacterData>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

fn warnings(v: &Validated) -> Vec<String> {
    let rep = &v.rep;
    let lf = rep.local_field();
    let (p, d) = (lf.p as usize, rep.dim());
    let mut out = Vec::new();
    if d % p == 0 {
        out.push(format!("p = {p} divides d = {d}: ad0 is not a direct summand of ad"));
    }
    if p == 2 {
        out.push("p = 2: the cyclotomic character is trivial and every twist is the identity".into());
    }
    if lf.mu_order > 1 && rep.omegas().iter().any(|&w| w != 1) {
        out.push(format!(
            "mu_order = {} puts zeta_p in F, which forces omega = 1, but some omega values are not 1; continuing with the supplied values",
            lf.mu_order
        ));
    }
    if !lf.ramification_consistent() {
        out.push(format!(
            "e = {} is not divisible by the ramification of Q_p(mu) for mu_order = {}; no such field exists",
            lf.e, lf.mu_order
        ));
    }
    if v.spec.options.thresholds.is_some() {
        out.push("options.thresholds is ignored: this version uses fixed thresholds".into());
    }
    out
}

/// Groups indices `0..k` by an equivalence relation given as a predicate.
fn classes(k: usize, mut related: impl FnMut(usize, usize) -> defring_core::Result<bool>) -> defring_core::Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    'next: for i in 0..k {
        for class in &mut out {
            if related(class[0], i)? {
                class.push(i);
                continue 'next;
            }
        }
        out.push(vec![i]);
    }
    Ok(out)
}

fn twist_related(a: &GModule, b: &GModule, order: u64, cap: usize) -> defring_core::Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    for t in 0..order as i64 {
        if pseudo_equal(a.field(), a.action(), b.twist(t).action(), cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn report(v: &Validated) -> CliResult<DeformationReport> {
    let rep = &v.rep;
    let cap = v.cap;
    let f = rep.field();
    let lf = rep.local_field();
    let (d, n) = (rep.dim(), lf.n as usize);
    let m = rep.module();

    let image_order = rep.image(cap)?.order();
    let ss = semisimplify(&m)?;
    let cons = &ss.constituents;
    let iso = classes(cons.len(), |i, j| {
        Ok(cons[i].dim() == cons[j].dim() && is_isomorphic(&cons[i], &cons[j])?)
    })?;
    let twist_order = omega_subgroup_order(f, rep.omegas());
    let twists = classes(cons.len(), |i, j| twist_related(&cons[i], &cons[j], twist_order, cap))?;

    // blocks ordered by twist class so that each class is contiguous
    let mut order: Vec<usize> = twists.iter().flatten().copied().collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cons[i].dim()));
    let mut block_dims = Vec::new();
    let mut block_classes: Vec<Vec<usize>> = vec![Vec::new(); twists.len()];
    for (pos, &i) in order.iter().enumerate() {
        block_dims.push(cons[i].dim());
        let c = twists.iter().position(|c| c.contains(&i)).expect("every constituent is classified");
        block_classes[c].push(pos);
    }
    let pd = partition_stats(d, n, &block_dims, &block_classes)?;
    let dims: Vec<usize> = cons.iter().map(GModule::dim).collect();
    let iso_sizes: Vec<usize> = iso.iter().map(Vec::len).collect();
    let (generic, special) = mrs_bound(d, n, &dims)?;

    let mut warns = warnings(v);
    let kummer = match &v.spec.options.kummer_subgroups {
        None => None,
        Some(subs) => match precondition_to_none(kummer_irreducible(rep, subs))? {
            Some(k) => Some(entry("gmodules::kummer::kummer_irreducible", k)),
            None => {
                warns.push("options.kummer_subgroups is ignored: the representation is not absolutely irreducible".into());
                None
            }
        },
    };
    let pc = pseudo_of(f, rep.matrices(), cap)?;
    let mut distinct = pc.values.clone();
    distinct.sort_unstable();
    distinct.dedup();

    let mut notes = vec![
        "component counts assume the coefficient field contains the values of every character of mu".to_string(),
        "invariants are computed on the image of the supplied generators, taken to be the full image of G_F".to_string(),
    ];
    if !is_prime(f.order() as u64) {
        notes.push(format!("matrix entries are element ids of GF({}) in the polynomial basis", f.order()));
    }
    let components = component_report(rep)?;
    if components.factorial_exception.is_none() {
        notes.push("factoriality is only decided for absolutely irreducible representations".into());
    }

    Ok(DeformationReport {
        version: env!("CARGO_PKG_VERSION"),
        input: v.spec.clone(),
        cap,
        image_order: entry("ffalg::closure", image_order),
        constituent_dims: entry("gmodules::meataxe::semisimplify", dims.clone()),
        isomorphism_classes: entry(
            "gmodules::hom::is_isomorphic",
            iso.iter()
                .map(|c| IsoClass {
                    dim: cons[c[0]].dim(),
                    multiplicity: c.len(),
                    constituents: c.clone(),
                })
                .collect(),
        ),
        absolutely_irreducible: entry("gmodules::meataxe::is_absolutely_irreducible", is_absolutely_irreducible(&m)?),
        twist_classes: entry("pseudochar::pseudo_equal", twists),
        cohomology: entry("cohom::profile", profile(rep)),
        expected_dims: entry("dimension::expected_dims", expected_dims(d, n, lf.mu_order)),
        bound_zp: entry("dimension::bound_zp", bound_zp(&pd)),
        codim_gap: entry("dimension::codim_gap", codim_gap(&pd)?),
        bound_fibre: entry("dimension::bound_fibre", bound_fibre(d, n, &dims, &iso_sizes)?),
        partition: entry("dimension::partition_stats", pd),
        partition_table: entry("dimension::sweep", sweep(d, n)?),
        mrs_bound: entry("dimension::mrs_bound", MrsRecord { generic, special }),
        kummer_codims: entry("dimension::kummer_codims", kummer_codims(d, n, cons.len())),
        kummer,
        components: entry("components::component_report", components),
        smoothness: entry("components::smoothness_predicates", smoothness_predicates(rep)?),
        pseudo_character: entry(
            "pseudochar::pseudo_of",
            PseudoCharacterData {
                group_order: pc.group.order(),
                generator_coefficients: rep.matrices().iter().map(|g| char_poly_coeffs(f, g)).collect(),
                distinct_coefficient_vectors: distinct.len(),
            },
        ),
        warnings: warns,
        notes,
    })
}

/// Pretty JSON with a trailing newline; identical for identical input.
pub fn to_json(r: &DeformationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialise");
    s.push('\n');
    s
}

fn precondition_to_none<T>(r: defring_core::Result<T>) -> defring_core::Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::PreconditionViolated(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
