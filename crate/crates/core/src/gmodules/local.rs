use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::field::is_prime;

/// Arithmetic invariants of a finite extension F of Q_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFieldData {
    pub p: u32,
    /// Ramification index.
    pub e: u32,
    /// Residue degree.
    pub f: u32,
    /// `[F : Q_p] = e * f`.
    pub n: u32,
    /// Order of the group of p-power roots of unity in F.
    pub mu_order: u64,
    /// `[F(zeta_p) : F]` when known; checked against the omega values.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_degree: Option<u32>,
}

fn euler_phi_prime_power(p: u64, q: u64) -> u64 {
    if q == 1 {
        1
    } else {
        q / p * (p - 1)
    }
}

impl LocalFieldData {
    pub fn new(p: u32, e: u32, f: u32, mu_order: u64) -> Result<Self> {
        let data = LocalFieldData {
            p,
            e,
            f,
            n: e * f,
            mu_order,
            zeta_degree: None,
        };
        data.validate()?;
        Ok(data)
    }

    /// Q_p itself: e = f = 1, with `mu_order` 2 for p = 2 and 1 otherwise.
    pub fn qp(p: u32) -> Result<Self> {
        Self::new(p, 1, 1, if p == 2 { 2 } else { 1 })
    }

    pub fn with_zeta_degree(mut self, k: u32) -> Result<Self> {
        self.zeta_degree = Some(k);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p as u64) {
            return Err(Error::invalid("local_field.p", format!("{} is not prime", self.p)));
        }
        if self.e == 0 {
            return Err(Error::invalid("local_field.e", "must be positive"));
        }
        if self.f == 0 {
            return Err(Error::invalid("local_field.f", "must be positive"));
        }
        if self.n != self.e * self.f {
            return Err(Error::invalid(
                "local_field.n",
                format!("n = {} but e * f = {}", self.n, self.e * self.f),
            ));
        }
        let p = self.p as u64;
        let mut m = self.mu_order;
        if m == 0 {
            return Err(Error::invalid("local_field.mu_order", "must be positive"));
        }
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m != 1 {
            return Err(Error::invalid(
                "local_field.mu_order",
                format!("{} is not a power of {p}", self.mu_order),
            ));
        }
        if p == 2 && self.mu_order < 2 {
            return Err(Error::invalid(
                "local_field.mu_order",
                "-1 lies in every 2-adic field, so mu_order >= 2",
            ));
        }
        if let Some(k) = self.zeta_degree {
            if k == 0 || !(self.p - 1).is_multiple_of(k) {
                return Err(Error::invalid(
                    "local_field.zeta_degree",
                    format!("{k} does not divide p - 1 = {}", self.p - 1),
                ));
            }
            if self.mu_order > 1 && p > 2 && k != 1 {
                return Err(Error::invalid(
                    "local_field.zeta_degree",
                    "zeta_p lies in F when mu_order > 1",
                ));
            }
        }
        Ok(())
    }

    /// Whether `phi(mu_order)` divides `e`, as it must for an actual field:
    /// Q_p(mu) is totally ramified of degree `phi(mu_order)` inside F.
    pub fn ramification_consistent(&self) -> bool {
        (self.e as u64).is_multiple_of(euler_phi_prime_power(self.p as u64, self.mu_order))
    }

    /// Whether the data say that zeta_p lies in F.
    pub fn contains_zeta_p(&self) -> bool {
        self.p == 2 || self.mu_order > 1 || self.zeta_degree == Some(1)
    }

    /// The structural test for F = Q_p.
    pub fn is_qp(&self) -> bool {
        self.e == 1 && self.f == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_standard_fields() {
        assert_eq!(LocalFieldData::qp(5).unwrap().mu_order, 1);
        assert_eq!(LocalFieldData::qp(2).unwrap().mu_order, 2);
        // Q_5(zeta_5): e = 4, mu = 5
        assert!(LocalFieldData::new(5, 4, 1, 5).is_ok());
        // Q_3(zeta_9): e = 6, mu = 9
        assert!(LocalFieldData::new(3, 6, 1, 9).is_ok());
    }

    #[test]
    fn ramification_check_is_separate() {
        let unramified = LocalFieldData::new(5, 1, 1, 5).unwrap();
        assert!(!unramified.ramification_consistent());
        assert!(LocalFieldData::new(5, 4, 1, 5).unwrap().ramification_consistent());
    }

    #[test]
    fn rejects_inconsistent_data() {
        let field_of = |r: Result<LocalFieldData>| match r {
            Err(Error::Invalid { field, .. }) => field,
            other => panic!("expected a validation error, got {other:?}"),
        };
        assert_eq!(field_of(LocalFieldData::new(4, 1, 1, 1)), "local_field.p");
        assert_eq!(field_of(LocalFieldData::new(5, 1, 1, 6)), "local_field.mu_order");
        assert_eq!(field_of(LocalFieldData::new(2, 1, 1, 1)), "local_field.mu_order");
        assert_eq!(
            field_of(LocalFieldData::qp(7).unwrap().with_zeta_degree(4)),
            "local_field.zeta_degree"
        );
    }
}
