//! Provability density and the `H(x) > m` sentence family.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::count::{count_sentences, count_wffs};
use super::enumerate::Theorem;
use super::formula::Sym;
use crate::error::Result;
use crate::kraft_chaitin::fmt_ratio;
use crate::qstrings::{index_to_string, QString};
use crate::vm::enumerate_halting;

/// Which formulas of a given length form the denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    /// Closed formulas.
    Sentences,
    /// All formulas, open ones read as their universal closure.
    Wffs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Density {
    pub n: usize,
    pub population: Population,
    pub provable: u64,
    pub total: String,
    /// `provable / total`, `0` when there is nothing of length `n`.
    pub value: String,
    #[serde(skip)]
    pub exact: BigRational,
}

/// Fraction of the length-`n` population that occurs among `corpus`.
pub fn provability_density(corpus: &[Theorem], n: usize, population: Population) -> Result<Density> {
    let total = match population {
        Population::Sentences => count_sentences(n)?,
        Population::Wffs => count_wffs(n)?,
    };
    let provable = corpus
        .iter()
        .filter(|t| t.formula.len() == n && (population == Population::Wffs || t.formula.is_sentence()))
        .map(|t| &t.formula)
        .collect::<BTreeSet<_>>()
        .len() as u64;
    let exact = if total.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(provable), BigInt::from(total.clone()))
    };
    Ok(Density { n, population, provable, total: total.to_string(), value: fmt_ratio(&exact), exact })
}

/// The sentence `H(x) > m` of the accounting language, rendered over the
/// formula alphabet as `(∃∃` x `)` followed by `bin(m + 1)` in the symbols
/// `x` (0) and `′` (1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgtAtom {
    pub x: QString,
    pub m: i64,
}

/// Symbols the framing adds to `x` for bound `m`.
pub fn c_frame(m: i64) -> usize {
    4 + m_code(m).len()
}

fn m_code(m: i64) -> Vec<u8> {
    if m < 0 {
        return Vec::new();
    }
    index_to_string(2, &(m as u64 + 1).into()).expect("binary").into_symbols()
}

impl HgtAtom {
    pub fn render(&self) -> QString {
        let mut s = vec![Sym::LParen as u8, Sym::Exists as u8, Sym::Exists as u8];
        s.extend_from_slice(self.x.symbols());
        s.push(Sym::RParen as u8);
        s.extend(m_code(self.m).into_iter().map(|b| if b == 0 { Sym::X as u8 } else { Sym::Prime as u8 }));
        QString::new(15, s).expect("formula alphabet")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgtStats {
    pub n: usize,
    pub m: i64,
    pub c_frame: usize,
    pub family_size: String,
    pub refuted: u64,
    /// `1 - refuted / family_size`
    pub true_fraction_lower_bound: String,
    #[serde(skip)]
    pub lower_bound: BigRational,
}

/// Count the members `H(x) > m`, `|x| = n - c_frame`, refuted by a halting
/// program of length at most `m` found within `budget` steps.
pub fn hgt_family_stats(n: usize, m: i64, budget: u64, workers: usize) -> Result<HgtStats> {
    let c = c_frame(m);
    let xlen = n.saturating_sub(c);
    let family = num_bigint::BigUint::from(15u32).pow(xlen as u32);
    let refuted = if m < 0 || n < c {
        0
    } else {
        enumerate_halting(15, m as usize, budget, workers)?
            .into_iter()
            .filter(|h| h.output.len() == xlen)
            .map(|h| h.output)
            .collect::<BTreeSet<_>>()
            .len() as u64
    };
    let lower_bound = if n < c {
        BigRational::one()
    } else {
        BigRational::one() - BigRational::new(BigInt::from(refuted), BigInt::from(family.clone()))
    };
    Ok(HgtStats {
        n,
        m,
        c_frame: c,
        family_size: if n < c { "0".into() } else { family.to_string() },
        refuted,
        true_fraction_lower_bound: fmt_ratio(&lower_bound),
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::enumerate_theorems;

    #[test]
    fn frame_is_constant_in_x() {
        for m in [-1i64, 0, 5, 100] {
            for len in 0..4 {
                let x = QString::new(15, vec![7; len]).unwrap();
                assert_eq!(HgtAtom { x, m }.render().len(), len + c_frame(m));
            }
        }
    }

    #[test]
    fn negative_bound_refutes_nothing() {
        let s = hgt_family_stats(6, -1, 100, 1).unwrap();
        assert_eq!(s.refuted, 0);
        assert!(s.lower_bound.is_one());
    }

    #[test]
    fn refutations_bounded_by_program_count() {
        for m in 0..=4i64 {
            let c = c_frame(m);
            let s = hgt_family_stats(c + 1, m, 1000, 1).unwrap();
            let programs = (15u64.pow(m as u32 + 1) - 1) / 14;
            assert!(s.refuted < programs);
        }
    }

    #[test]
    fn short_lengths_have_zero_density() {
        let corpus = enumerate_theorems(12, 2_000);
        let d = provability_density(&corpus, 4, Population::Sentences).unwrap();
        assert!(d.exact.is_zero());
        let d = provability_density(&corpus, 5, Population::Wffs).unwrap();
        assert_eq!(d.total, "4");
    }
}
