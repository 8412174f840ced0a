//! Strings over a `q`-symbol alphabet and the quasi-lexicographic bijection
//! between non-negative integers and such strings.
//!
//! Symbols are plain integers `0..q`. Strings are ordered shortest first and,
//! within one length, lexicographically by symbol value; index `n` names the
//! `n`-th string in that order, so index 0 is the empty string.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet this crate supports; symbols are stored as bytes.
pub const MAX_Q: u32 = 256;

pub(crate) fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::AlphabetTooSmall(q));
    }
    if q > MAX_Q {
        return Err(Error::AlphabetTooLarge(q));
    }
    Ok(())
}

/// A finite string over the alphabet `{0, .., q-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QString {
    q: u32,
    symbols: Vec<u8>,
}

impl QString {
    /// The empty string over alphabet `q`.
    pub fn empty(q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(QString { q, symbols: Vec::new() })
    }

    pub fn new(q: u32, symbols: Vec<u8>) -> Result<Self> {
        check_q(q)?;
        if let Some(&s) = symbols.iter().find(|&&s| u32::from(s) >= q) {
            return Err(Error::SymbolOutOfRange { symbol: u32::from(s), q });
        }
        Ok(QString { q, symbols })
    }

    /// Caller guarantees every symbol is `< q` and `q` is in range.
    pub(crate) fn from_raw(q: u32, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| u32::from(s) < q));
        QString { q, symbols }
    }

    /// Parse the text rendering: digits `0-9` then `a-z`.
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        check_q(q)?;
        let mut symbols = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            let v = ch
                .to_digit(36)
                .filter(|&v| v < q)
                .ok_or(Error::BadSymbolText { ch, pos, q })?;
            symbols.push(v as u8);
        }
        Ok(QString { q, symbols })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_prefix_of(&self, other: &QString) -> bool {
        other.symbols.starts_with(&self.symbols)
    }

    pub fn concat(&self, other: &QString) -> QString {
        debug_assert_eq!(self.q, other.q);
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        QString { q: self.q, symbols }
    }

    /// Rendering for alphabets up to 36 symbols. Larger alphabets fall back to
    /// dot-separated decimal values.
    pub fn render(&self) -> String {
        if self.q <= 36 {
            self.symbols
                .iter()
                .map(|&s| std::char::from_digit(u32::from(s), 36).unwrap())
                .collect()
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            parts.join(".")
        }
    }
}

impl fmt::Display for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QString[q={}]\"{}\"", self.q, self.render())
    }
}

/// Quasi-lexicographic comparison of symbol sequences.
pub fn quasi_lex_cmp(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl PartialOrd for QString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then_with(|| quasi_lex_cmp(&self.symbols, &other.symbols))
    }
}

/// Position of a string in the quasi-lexicographic enumeration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringIndex(pub BigUint);

impl From<u64> for StringIndex {
    fn from(v: u64) -> Self {
        StringIndex(BigUint::from(v))
    }
}

impl fmt::Display for StringIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of strings of length strictly less than `len`: `(q^len - 1)/(q - 1)`.
pub fn count_shorter(q: u32, len: usize) -> BigUint {
    let qb = BigUint::from(q);
    (num_traits::pow(qb, len) - BigUint::one()) / BigUint::from(q - 1)
}

/// `string_Q(n)`.
pub fn index_to_string(q: u32, n: &StringIndex) -> Result<QString> {
    check_q(q)?;
    let len = expected_length(q, &n.0)?;
    let mut offset = &n.0 - count_shorter(q, len);
    let qb = BigUint::from(q);
    let mut symbols = vec![0u8; len];
    for slot in symbols.iter_mut().rev() {
        let digit = &offset % &qb;
        *slot = digit.to_u8().expect("digit below q");
        offset /= &qb;
    }
    debug_assert!(offset.is_zero());
    Ok(QString { q, symbols })
}

/// Inverse of [`index_to_string`].
pub fn string_to_index(w: &QString) -> StringIndex {
    let qb = BigUint::from(w.q);
    let mut offset = BigUint::zero();
    for &s in &w.symbols {
        offset = offset * &qb + BigUint::from(s);
    }
    StringIndex(offset + count_shorter(w.q, w.len()))
}

/// `floor(log_q(n (q - 1) + 1))`, the length of the `n`-th string.
pub fn expected_length(q: u32, n: &BigUint) -> Result<usize> {
    check_q(q)?;
    let target = n * BigUint::from(q - 1) + BigUint::one();
    let qb = BigUint::from(q);
    let mut len = 0usize;
    let mut power = qb.clone();
    while power <= target {
        len += 1;
        power *= &qb;
    }
    Ok(len)
}

/// All strings of exactly `len` symbols, in lexicographic order.
pub fn strings_of_length(q: u32, len: usize) -> impl Iterator<Item = QString> {
    let total = (q as u64).checked_pow(len as u32).expect("enumeration too large");
    (0..total).map(move |mut k| {
        let mut symbols = vec![0u8; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (k % q as u64) as u8;
            k /= q as u64;
        }
        QString { q, symbols }
    })
}

/// All strings of length at most `max_len`, in quasi-lexicographic order.
pub fn strings_up_to(q: u32, max_len: usize) -> impl Iterator<Item = QString> {
    (0..=max_len).flat_map(move |len| strings_of_length(q, len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u32, t: &str) -> QString {
        QString::parse(q, t).unwrap()
    }

    /// Independent oracle: walk the quasi-lex order one step at a time.
    fn brute_nth(q: u32, n: usize) -> Vec<u8> {
        let mut cur: Vec<u8> = Vec::new();
        for _ in 0..n {
            // increment as a fixed-width counter, growing the width on overflow
            let mut i = cur.len();
            loop {
                if i == 0 {
                    cur = vec![0; cur.len() + 1];
                    break;
                }
                i -= 1;
                if u32::from(cur[i]) + 1 < q {
                    cur[i] += 1;
                    for c in &mut cur[i + 1..] {
                        *c = 0;
                    }
                    break;
                }
            }
        }
        cur
    }

    #[test]
    fn binary_examples() {
        assert!(index_to_string(2, &0.into()).unwrap().is_empty());
        assert_eq!(index_to_string(2, &1.into()).unwrap(), s(2, "0"));
        assert_eq!(index_to_string(2, &2.into()).unwrap(), s(2, "1"));
        assert_eq!(index_to_string(2, &4.into()).unwrap(), s(2, "01"));
        assert_eq!(string_to_index(&s(2, "11")), 6.into());
        assert_eq!(expected_length(2, &BigUint::from(6u32)).unwrap(), 2);
        assert_eq!(expected_length(2, &BigUint::zero()).unwrap(), 0);
    }

    #[test]
    fn ternary_fourth_is_00() {
        assert_eq!(brute_nth(3, 4), vec![0, 0]);
        assert_eq!(index_to_string(3, &4.into()).unwrap(), s(3, "00"));
        assert_eq!(string_to_index(&s(3, "00")), 4.into());
    }

    #[test]
    fn expected_length_q15() {
        // 500 * 14 + 1 = 7001 and 15^3 = 3375 <= 7001 < 50625 = 15^4
        assert_eq!(expected_length(15, &BigUint::from(500u32)).unwrap(), 3);
        assert_eq!(brute_nth(15, 500).len(), 3);
        assert_eq!(index_to_string(15, &500.into()).unwrap().len(), 3);
    }

    #[test]
    fn empty_string_is_index_zero() {
        for q in [2, 3, 15] {
            assert_eq!(string_to_index(&QString::empty(q).unwrap()), 0.into());
        }
    }

    #[test]
    fn rejects_small_alphabet() {
        assert!(matches!(index_to_string(1, &0.into()), Err(Error::AlphabetTooSmall(1))));
        assert!(QString::new(2, vec![2]).is_err());
    }

    #[test]
    fn matches_brute_force_order() {
        for q in [2u32, 3, 15] {
            for n in 0..600 {
                let got = index_to_string(q, &(n as u64).into()).unwrap();
                assert_eq!(got.symbols(), &brute_nth(q, n)[..], "q={q} n={n}");
            }
        }
    }

    #[test]
    fn round_trip_and_length_law() {
        for q in [2u32, 3, 15] {
            let mut prev: Option<QString> = None;
            for n in 0..100_000u64 {
                let w = index_to_string(q, &n.into()).unwrap();
                assert_eq!(string_to_index(&w), n.into());
                assert_eq!(w.len(), expected_length(q, &BigUint::from(n)).unwrap());
                if let Some(p) = &prev {
                    assert!(p < &w);
                }
                prev = Some(w);
            }
        }
    }

    #[test]
    fn counting_per_length() {
        for q in [2u32, 3, 15] {
            for len in 0..4 {
                let lo = count_shorter(q, len);
                let hi = count_shorter(q, len + 1);
                assert_eq!(&hi - &lo, num_traits::pow(BigUint::from(q), len));
                assert_eq!(strings_of_length(q, len).count() as u64, q.pow(len as u32) as u64);
            }
        }
    }

    #[test]
    fn text_rendering() {
        let w = QString::new(15, vec![0, 9, 10, 14]).unwrap();
        assert_eq!(w.render(), "09ae");
        assert_eq!(QString::parse(15, "09ae").unwrap(), w);
        assert!(QString::parse(2, "2").is_err());
    }
}
