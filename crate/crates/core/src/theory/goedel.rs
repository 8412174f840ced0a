//! Binary numberings of formulas.

use super::count::{wff_rank, wff_unrank};
use super::formula::{Formula, Sym};
use super::parse::parse_syms;
use crate::error::{Error, Result};
use crate::qstrings::{index_to_string, string_to_index, QString, StringIndex};

/// An injective, decodable map from formulas to binary strings.
pub trait GoedelNumbering {
    fn name(&self) -> &'static str;
    fn encode(&self, f: &Formula) -> Result<QString>;
    fn decode(&self, w: &QString) -> Result<Formula>;
}

/// Each symbol as its 4-bit value, most significant bit first.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fixed4;

/// `bin(rank)`: the rank of the formula in quasi-lexicographic order, written
/// as the binary string of that index.
#[derive(Clone, Copy, Debug, Default)]
pub struct IndexNumbering;

pub fn goedel_fixed4(f: &Formula) -> QString {
    let bits = f
        .render_syms()
        .into_iter()
        .flat_map(|s| (0..4).rev().map(move |i| (s as u8 >> i) & 1))
        .collect();
    QString::new(2, bits).expect("bits are binary")
}

pub fn fixed4_decode(w: &QString) -> Result<Formula> {
    if w.q() != 2 {
        return Err(Error::AlphabetMismatch { expected: 2, found: w.q() });
    }
    if !w.len().is_multiple_of(4) {
        return Err(Error::Syntax { pos: w.len(), message: "length is not a multiple of 4".into() });
    }
    let syms = w
        .symbols()
        .chunks(4)
        .enumerate()
        .map(|(i, c)| {
            let v = c.iter().fold(0u8, |a, &b| a * 2 + b);
            Sym::from_u8(v).ok_or_else(|| Error::Syntax { pos: i, message: format!("block value {v}") })
        })
        .collect::<Result<Vec<Sym>>>()?;
    parse_syms(&syms)
}

pub fn goedel_index(f: &Formula) -> Result<QString> {
    index_to_string(2, &StringIndex(wff_rank(f)?))
}

pub fn index_decode(w: &QString) -> Result<Formula> {
    if w.q() != 2 {
        return Err(Error::AlphabetMismatch { expected: 2, found: w.q() });
    }
    wff_unrank(&string_to_index(w).0)
}

impl GoedelNumbering for Fixed4 {
    fn name(&self) -> &'static str {
        "fixed4"
    }

    fn encode(&self, f: &Formula) -> Result<QString> {
        Ok(goedel_fixed4(f))
    }

    fn decode(&self, w: &QString) -> Result<Formula> {
        fixed4_decode(w)
    }
}

impl GoedelNumbering for IndexNumbering {
    fn name(&self) -> &'static str {
        "index"
    }

    fn encode(&self, f: &Formula) -> Result<QString> {
        goedel_index(f)
    }

    fn decode(&self, w: &QString) -> Result<Formula> {
        index_decode(w)
    }
}
