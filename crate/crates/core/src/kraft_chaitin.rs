//! Online Kraft-Chaitin allocation of prefix-free codewords with prescribed
//! lengths.
//!
//! The free part of the code tree is kept as a set of stems; a stem stands for
//! every extension of itself. A request of length `n` splits the
//! lexicographically least stem no longer than `n`. With that policy the free
//! stems, read left to right, never get shorter and at most `q - 1` of them
//! share a length, so a request fails only when it would break Kraft's
//! inequality.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qstrings::{check_q, QString};

/// `q^(-n)` as an exact rational.
pub fn weight(q: u32, n: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(q), n))
}

/// Exact `sum q^(-n_i)`.
pub fn kraft_sum(lengths: &[usize], q: u32) -> BigRational {
    lengths
        .iter()
        .fold(BigRational::zero(), |acc, &n| acc + weight(q, n))
}

/// Render an exact rational as `num/den`, always with an explicit denominator.
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// True iff no word is a proper prefix of another and there are no duplicates.
pub fn verify_prefix_free(words: &[QString]) -> bool {
    let mut sorted: Vec<&[u8]> = words.iter().map(|w| w.symbols()).collect();
    sorted.sort_unstable();
    // in lexicographic order a word is immediately followed by its extensions
    sorted.windows(2).all(|p| !p[1].starts_with(p[0]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub word: QString,
    pub requested_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocator {
    q: u32,
    free: BTreeSet<Vec<u8>>,
    mass_used: BigRational,
    granted: usize,
}

impl Allocator {
    pub fn new(q: u32) -> Result<Self> {
        check_q(q)?;
        let mut free = BTreeSet::new();
        free.insert(Vec::new());
        Ok(Allocator { q, free, mass_used: BigRational::zero(), granted: 0 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn mass_used(&self) -> &BigRational {
        &self.mass_used
    }

    pub fn granted(&self) -> usize {
        self.granted
    }

    pub fn free_stems(&self) -> impl Iterator<Item = QString> + '_ {
        self.free.iter().map(move |s| QString::from_raw(self.q, s.clone()))
    }

    /// Grant a word of exactly `n` symbols, or leave the state untouched and
    /// report `KraftExceeded`.
    pub fn allocate(&mut self, n: usize) -> Result<Codeword> {
        let w = weight(self.q, n);
        if &self.mass_used + &w > BigRational::one() {
            return Err(Error::KraftExceeded { length: n });
        }
        let stem = self
            .free
            .iter()
            .find(|s| s.len() <= n)
            .cloned()
            .expect("free stems cover the remaining mass");
        self.free.remove(&stem);
        let mut word = stem;
        while word.len() < n {
            // siblings to the right of the leftmost branch go back to the pool
            for c in 1..self.q {
                let mut sib = word.clone();
                sib.push(c as u8);
                self.free.insert(sib);
            }
            word.push(0);
        }
        self.mass_used += w;
        self.granted += 1;
        Ok(Codeword { word: QString::from_raw(self.q, word), requested_length: n })
    }

    /// Check the structural invariants. Used by tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let stems: Vec<QString> = self.free_stems().collect();
        if !verify_prefix_free(&stems) {
            return false;
        }
        let free_mass: BigRational = self
            .free
            .iter()
            .fold(BigRational::zero(), |acc, s| acc + weight(self.q, s.len()));
        let zero = BigRational::zero();
        let one = BigRational::one();
        &self.mass_used + free_mass == one && self.mass_used >= zero && self.mass_used <= one
    }
}

/// Allocate a whole batch; stops at the first infeasible request.
pub fn allocate_all(q: u32, lengths: &[usize]) -> Result<(Vec<Codeword>, Allocator)> {
    let mut alloc = Allocator::new(q)?;
    let mut out = Vec::with_capacity(lengths.len());
    for &n in lengths {
        out.push(alloc.allocate(n)?);
    }
    Ok((out, alloc))
}
