use serde::Serialize;

use super::meataxe::is_absolutely_irreducible;
use super::module::ResidualRep;
use crate::cohom;
use crate::error::{Error, Result};
use crate::ffalg::group::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerReport {
    /// Every supplied restriction is absolutely irreducible.
    pub kummer_irreducible: bool,
    /// Per-subgroup absolute irreducibility, in input order.
    pub restrictions: Vec<bool>,
    /// `h2(ad0)`, computed when the verdict is positive.
    pub h2_ad0: Option<usize>,
    /// False if the verdict is positive but `h2_ad0` is not zero.
    pub consistent: bool,
}

/// Absolute irreducibility of the restriction to each supplied subgroup,
/// each given by generating words in the generators of `rep`.
pub fn kummer_irreducible(rep: &ResidualRep, subgroups: &[Vec<Word>]) -> Result<KummerReport> {
    let m = rep.module();
    if !is_absolutely_irreducible(&m)? {
        return Err(Error::PreconditionViolated(
            "the representation is not absolutely irreducible".into(),
        ));
    }
    let restrictions = subgroups
        .iter()
        .map(|words| is_absolutely_irreducible(&m.restrict(words)?))
        .collect::<Result<Vec<bool>>>()?;
    let verdict = restrictions.iter().all(|&b| b);
    let h2_ad0 = verdict.then(|| cohom::h2(&m.ad0()));
    Ok(KummerReport {
        kummer_irreducible: verdict,
        restrictions,
        h2_ad0,
        consistent: h2_ad0.is_none_or(|h| h == 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{Field, Matrix};
    use crate::gmodules::LocalFieldData;

    fn s3_rep() -> ResidualRep {
        let f = Field::new(7, 1).unwrap();
        let s = Matrix::from_ints(&f, &[vec![0, -1], vec![1, -1]]).unwrap();
        let t = Matrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        ResidualRep::new(f, LocalFieldData::qp(7).unwrap(), vec![s, t], vec![3, 1]).unwrap()
    }

    #[test]
    fn empty_list_is_vacuous() {
        let r = kummer_irreducible(&s3_rep(), &[]).unwrap();
        assert!(r.kummer_irreducible);
        assert!(r.consistent);
    }

    #[test]
    fn a3_restriction_is_reducible() {
        // A3 is generated by the 3-cycle, word [0]
        let r = kummer_irreducible(&s3_rep(), &[vec![vec![0]]]).unwrap();
        assert!(!r.kummer_irreducible);
        assert_eq!(r.h2_ad0, None);
    }

    #[test]
    fn reducible_rep_is_rejected() {
        let f = Field::new(5, 1).unwrap();
        let rep = ResidualRep::new(
            f,
            LocalFieldData::qp(5).unwrap(),
            vec![Matrix::diag(&[1, 2])],
            vec![2],
        )
        .unwrap();
        assert!(matches!(
            kummer_irreducible(&rep, &[]),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
