//! Lower approximations of the halting probability of the universal machine.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kraft_chaitin::fmt_ratio;
use crate::qstrings::QString;
use crate::vm::enumerate_halting;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaApprox {
    pub q: u32,
    pub max_len: usize,
    pub steps: u64,
    /// `Σ q^(−|p|)` as "num/den".
    pub value: String,
    pub programs: Vec<QString>,
    #[serde(skip)]
    pub exact: BigRational,
}

/// `Σ q^(−|p|)` over `programs`.
pub fn omega_sum(q: u32, programs: &[QString]) -> BigRational {
    let Some(max) = programs.iter().map(QString::len).max() else {
        return BigRational::zero();
    };
    let den = BigUint::from(q).pow(max as u32);
    let num: BigUint = programs.iter().map(|p| BigUint::from(q).pow((max - p.len()) as u32)).sum();
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// One approximation per step budget in `ladder`, over programs of length at
/// most `max_len`.
pub fn omega_lower(q: u32, max_len: usize, ladder: &[u64], workers: usize) -> Result<Vec<OmegaApprox>> {
    ladder
        .iter()
        .map(|&steps| {
            let programs: Vec<QString> =
                enumerate_halting(q, max_len, steps, workers)?.into_iter().map(|h| h.program).collect();
            let exact = omega_sum(q, &programs);
            Ok(OmegaApprox { q, max_len, steps, value: fmt_ratio(&exact), programs, exact })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::kraft_chaitin::verify_prefix_free;

    #[test]
    fn sum_is_exact() {
        let p = vec![QString::parse(2, "0").unwrap(), QString::parse(2, "10").unwrap()];
        assert_eq!(fmt_ratio(&omega_sum(2, &p)), "3/4");
        assert!(omega_sum(2, &[]).is_zero());
    }

    #[test]
    fn ladder_is_monotone_and_below_one() {
        let v = omega_lower(2, 11, &[10, 100, 1000], 1).unwrap();
        for w in v.windows(2) {
            assert!(w[0].exact <= w[1].exact);
        }
        for a in &v {
            assert!(a.exact < BigRational::one());
            assert!(verify_prefix_free(&a.programs));
        }
        assert_eq!(v, omega_lower(2, 11, &[10, 100, 1000], 3).unwrap());
    }
}
