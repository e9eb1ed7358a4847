//! Built-in regression checks.

use defring_core::corpus::{brauer_nesbitt_check, brauer_nesbitt_families, cyclic4_target, q8_target};
use defring_core::dimension::sweep;
use defring_core::ffalg::group::cap_from_env;
use defring_core::genmatrix::{fibre_enumerate, verify_example_3_5};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, outcome: defring_core::Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn fibre(target: (defring_core::ffalg::Field, Vec<defring_core::ffalg::Matrix>), count: usize, tangent: usize) -> defring_core::Result<(bool, String)> {
    let (f, t) = target;
    let r = fibre_enumerate(&f, &t, cap_from_env())?;
    let ok = r.count() == count && r.points.iter().all(|p| p.tangent_dim == tangent);
    Ok((ok, format!("{} points, expected {count} of tangent dimension {tangent}", r.count())))
}

pub fn selftest() -> Vec<Check> {
    let cap = cap_from_env();
    vec![
        check("example 3.5", Ok({
            let r = verify_example_3_5();
            (r.passed(), r.generators.join("; "))
        })),
        check("bound sweeps d <= 6, n <= 5", (|| {
            let mut rows = 0;
            for d in 1..=6 {
                for n in 1..=5 {
                    rows += sweep(d, n)?.len();
                }
            }
            Ok((true, format!("{rows} partition structures")))
        })()),
        check("Brauer-Nesbitt corpus", (|| {
            let (mut pairs, mut bad) = (0, 0);
            for fam in brauer_nesbitt_families() {
                let o = brauer_nesbitt_check(&fam, cap)?;
                pairs += o.pairs;
                bad += o.disagreements.len();
            }
            Ok((bad == 0, format!("{pairs} pairs, {bad} disagreements")))
        })()),
        check("fibre of the order-4 cyclic target over GF(3)", fibre(cyclic4_target(), 6, 2)),
        check("fibre of the quaternion target over GF(3)", fibre(q8_target(), 24, 3)),
    ]
}
