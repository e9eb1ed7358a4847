//! Acceptance criteria, one verdict line each. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use defring_core::cohom::profile;
use defring_core::components::{component_count, phi_d_data, smoothness_predicates};
use defring_core::corpus::{
    brauer_nesbitt_check, brauer_nesbitt_families, character_extension_corpus, clifford_exhaustion,
    cyclic4_target, euler_corpus, q2_nonsplit_instances, SMALL_FIELDS,
};
use defring_core::dimension::{all_partition_data, bound_fibre, bound_zp, codim_gap};
use defring_core::ffalg::group::cap_from_env;
use defring_core::genmatrix::{fibre_enumerate, verify_example_3_5};
use defring_core::gmodules::LocalFieldData;
use defring_core::{Error, Result};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { ok, detail: detail.into() })
}

fn example_3_5() -> Result<Verdict> {
    let r = verify_example_3_5();
    verdict(
        r.passed(),
        format!(
            "entries vanish: {}, generators [{}]",
            r.entries_reduce_to_zero,
            r.generators.join("; ")
        ),
    )
}

fn euler_identities() -> Result<Verdict> {
    let corpus = euler_corpus();
    let mut bad = Vec::new();
    for rep in &corpus {
        let c = profile(rep);
        let (d, n) = (c.d, c.n as usize);
        if c.r - c.s != d * d + d * d * n || c.dim_z1_ad0 - c.t != (d * d - 1) * (n + 1) {
            bad.push(format!("p={} d={d} n={n}", rep.field().p()));
        }
    }
    verdict(
        corpus.len() >= 100 && bad.is_empty(),
        format!("{} representations, {} violations {:?}", corpus.len(), bad.len(), bad),
    )
}

fn bound_sweep() -> Result<Verdict> {
    let mut checked = 0;
    for d in 1..=6 {
        for n in 1..=5 {
            for pd in all_partition_data(d, n) {
                checked += 1;
                if pd.l_p + 2 * pd.n_p != d * d {
                    return verdict(false, format!("l + 2n != d^2 for {:?}", pd.block_dims));
                }
                if pd.is_minimal() && bound_zp(&pd) != d * d + d * d * n {
                    return verdict(false, format!("minimal bound wrong at d={d}, n={n}"));
                }
                match codim_gap(&pd) {
                    Ok(_) => {}
                    Err(Error::AssertionFailed(msg)) => return verdict(false, msg),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    verdict(true, format!("{checked} partition structures"))
}

fn brauer_nesbitt() -> Result<Verdict> {
    let cap = cap_from_env();
    let mut pairs = 0;
    let mut bad = 0;
    let mut families = Vec::new();
    for fam in brauer_nesbitt_families() {
        let o = brauer_nesbitt_check(&fam, cap)?;
        pairs += o.pairs;
        bad += o.disagreements.len();
        families.push(format!("{}: {} tuples", o.name, o.tuples));
    }
    verdict(bad == 0, format!("{pairs} pairs, {bad} disagreements ({})", families.join(", ")))
}

fn fibre() -> Result<Verdict> {
    let (f, target) = cyclic4_target();
    let r = fibre_enumerate(&f, &target, cap_from_env())?;
    let mut tangents: Vec<usize> = r.points.iter().map(|p| p.tangent_dim).collect();
    tangents.sort_unstable();
    tangents.dedup();
    let bound = bound_fibre(2, 1, &[2], &[1])?;
    verdict(
        r.count() == 24 && tangents == [3] && bound == 3,
        format!("{} points, tangent dimensions {:?}, bound_fibre(r=1) = {bound}; expected 24 points of tangent dimension 3", r.count(), tangents),
    )
}

fn clifford() -> Result<Verdict> {
    let o = clifford_exhaustion(&SMALL_FIELDS)?;
    verdict(
        o.counterexamples.is_empty(),
        format!(
            "{} cases ({} reducible), {} counterexamples {:?}",
            o.cases,
            o.reducible_cases,
            o.counterexamples.len(),
            o.counterexamples
        ),
    )
}

fn components() -> Result<Verdict> {
    let mut ok = true;
    let mut notes = Vec::new();
    let f = |p| defring_core::ffalg::Field::new(p, 1).unwrap();
    let one = |lf: LocalFieldData| {
        let fld = f(lf.p);
        defring_core::gmodules::ResidualRep::new(
            fld,
            lf,
            vec![defring_core::ffalg::Matrix::identity(1)],
            vec![1],
        )
    };
    for p in [3, 5, 7, 11] {
        let c = component_count(&one(LocalFieldData::qp(p)?)?);
        ok &= c == 1;
        notes.push(format!("Q_{p}: {c}"));
    }
    let c2 = component_count(&one(LocalFieldData::qp(2)?)?);
    ok &= c2 == 2;
    notes.push(format!("Q_2: {c2}"));
    for mu in [3u64, 9, 27] {
        let c = component_count(&one(LocalFieldData::new(3, 18, 1, mu)?)?);
        ok &= c == mu;
    }
    let phi = phi_d_data(2, &LocalFieldData::qp(2)?);
    ok &= phi.flat_degree == 4;
    notes.push(format!("phi_2 over Q_2: flat degree {}", phi.flat_degree));
    verdict(ok, notes.join(", "))
}

fn smoothness() -> Result<Verdict> {
    let mut iff_fail = Vec::new();
    let mut implication_fail = 0;
    let corpus = character_extension_corpus();
    for rep in &corpus {
        let s = smoothness_predicates(rep)?;
        let vanish = s.h2_ad == 0 && s.h2_ad0 == 0;
        if s.pnot2 && !vanish {
            implication_fail += 1;
        }
        if s.pnot2 != vanish && iff_fail.len() < 1000 {
            let g: Vec<String> = rep.matrices().iter().map(|m| format!("{:?}", m.to_rows())).collect();
            iff_fail.push(format!("p={} {} omega={:?}", rep.field().p(), g.join(" "), rep.omegas()));
        }
    }
    let mut q2_fail = 0;
    for rep in q2_nonsplit_instances() {
        let s = smoothness_predicates(&rep)?;
        if !s.peq2 || s.h2_ad0 != 0 {
            q2_fail += 1;
        }
    }
    verdict(
        iff_fail.is_empty() && q2_fail == 0,
        format!(
            "{} extensions: {} break the equivalence (of which {} break the forward implication), first: {}; Q_2 non-split failures: {q2_fail}",
            corpus.len(),
            iff_fail.len(),
            implication_fail,
            iff_fail.first().map_or("none", String::as_str)
        ),
    )
}

type Check = fn() -> Result<Verdict>;

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 8] = [
        ("1 Example 3.5 regression", example_3_5, Duration::from_secs(1)),
        ("2 Euler/presentation identities", euler_identities, Duration::from_secs(10)),
        ("3 bound-ledger sweep", bound_sweep, Duration::from_secs(30)),
        ("4 Brauer-Nesbitt equivalence", brauer_nesbitt, Duration::from_secs(60)),
        ("5 fibre enumeration", fibre, Duration::from_secs(30)),
        ("6 Clifford exhaustion", clifford, Duration::from_secs(60)),
        ("7 component counting and phi_d", components, Duration::MAX),
        ("8 smoothness consistency", smoothness, Duration::MAX),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(v) => (v.ok && took <= limit, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit_note = if limit == Duration::MAX {
            String::new()
        } else {
            format!(" / limit {:.0?}", limit)
        };
        println!(
            "criterion {name}: {} [{:.2?}{limit_note}] {detail}",
            if ok { "PASS" } else { "FAIL" },
            took
        );
        failures += !ok as usize;
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
