//! Binary strings whose bits at the positions `F(1) < F(2) < …` are fixed.
//!
//! At level `k` a string `x` of length `F(k)` splits as
//! `w₁ x_F(1) w₂ x_F(2) … w_k x_F(k)` with `|w_j| = F(j) − F(j−1) − 1`, so the
//! free bits `w = w₁…w_k` have length `F(k) − k`. The level-`k` codebook
//! grants one codeword of length `F(k) − k` per `w`; requesting them in
//! lexicographic order from a fresh allocator grants `z_w = w`.
//!
//! A decoder machine reads `z_w` and writes `x`, so the universal machine
//! outputs `x` from `encode(C) ++ z_w` and `δ₂(x) ≤ |encode(C)| − k`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kraft_chaitin::{kraft_sum, Allocator};
use crate::qstrings::{strings_of_length, QString};
use crate::vm::{assemble, Machine};

/// Largest `F(k) − k` for which a level is materialised.
pub const LEVEL_BITS_CAP: u64 = 20;

/// A strictly increasing map from positive integers to positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FMap {
    /// `F(i) = a·i + b`
    Affine { a: u64, b: i64 },
    /// `F(1), F(2), …` listed explicitly.
    Table(Vec<u64>),
}

impl FMap {
    pub fn validate(&self) -> Result<()> {
        match self {
            FMap::Affine { a, b } => {
                if *a == 0 || i64::try_from(*a).ok().and_then(|a| a.checked_add(*b)).is_none_or(|f1| f1 < 1) {
                    return Err(Error::Scatter(format!("F(i) = {a}i{b:+} is not strictly increasing and positive")));
                }
            }
            FMap::Table(t) => {
                if t.first() == Some(&0) || t.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Scatter("table is not strictly increasing and positive".into()));
                }
            }
        }
        Ok(())
    }

    /// `F(i)` for `i ≥ 1`; `F(0) = 0`.
    pub fn eval(&self, i: u64) -> Result<u64> {
        if i == 0 {
            return Ok(0);
        }
        match self {
            FMap::Affine { a, b } => i64::try_from(*a)
                .ok()
                .and_then(|a| a.checked_mul(i as i64)?.checked_add(*b))
                .and_then(|v| u64::try_from(v).ok())
                .ok_or_else(|| Error::Scatter(format!("F({i}) overflows"))),
            FMap::Table(t) => t
                .get(i as usize - 1)
                .copied()
                .ok_or_else(|| Error::Scatter(format!("table covers only {} levels", t.len()))),
        }
    }

    /// Free bits at level `k`: `F(k) − k`.
    pub fn free_bits(&self, k: u64) -> Result<u64> {
        Ok(self.eval(k)? - k)
    }
}

impl FromStr for FMap {
    type Err = Error;

    /// `"2i"`, `"3i+1"`, `"i-0"` or a comma-separated table `"1,3,7"`.
    fn from_str(s: &str) -> Result<FMap> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Scatter(format!("cannot read F from {s:?}"));
        let f = if let Some(pos) = s.find('i') {
            let a = match &s[..pos] {
                "" => 1,
                t => t.parse().map_err(|_| bad())?,
            };
            let rest = &s[pos + 1..];
            let b = match rest {
                "" => 0,
                t => t.strip_prefix('+').unwrap_or(t).parse().map_err(|_| bad())?,
            };
            FMap::Affine { a, b }
        } else {
            FMap::Table(s.split(',').map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?)
        };
        f.validate()?;
        Ok(f)
    }
}

impl fmt::Display for FMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FMap::Affine { a, b: 0 } => write!(f, "{a}i"),
            FMap::Affine { a, b } => write!(f, "{a}i{b:+}"),
            FMap::Table(t) => {
                let parts: Vec<String> = t.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterSpec {
    pub f: FMap,
    /// `x_F(1), x_F(2), …`
    pub marked: Vec<u8>,
}

impl ScatterSpec {
    pub fn new(f: FMap, marked: Vec<u8>) -> Result<Self> {
        f.validate()?;
        if marked.iter().any(|&b| b > 1) {
            return Err(Error::Scatter("marked bits must be 0 or 1".into()));
        }
        Ok(ScatterSpec { f, marked })
    }

    fn check_level(&self, k: u64) -> Result<()> {
        if k == 0 || k as usize > self.marked.len() {
            return Err(Error::Scatter(format!("level {k} outside 1..={}", self.marked.len())));
        }
        self.f.eval(k).map(|_| ())
    }

    /// Positions (1-based) `F(1..=k)`.
    fn positions(&self, k: u64) -> Result<Vec<u64>> {
        (1..=k).map(|i| self.f.eval(i)).collect()
    }
}

fn level_cap(f: &FMap, k: u64) -> Result<u64> {
    let bits = f.free_bits(k)?;
    if bits > LEVEL_BITS_CAP {
        return Err(Error::Limit(format!("level {k} has {bits} free bits, above {LEVEL_BITS_CAP}")));
    }
    Ok(bits)
}

/// `2^(F(k)−k)` copies of `F(k)` for each level `k = 1..=levels`.
pub fn scatter_lengths(f: &FMap, levels: u64) -> Result<Vec<usize>> {
    f.validate()?;
    let mut out = Vec::new();
    for k in 1..=levels {
        let bits = level_cap(f, k)?;
        let n = f.eval(k)? as usize;
        out.extend(std::iter::repeat_n(n, 1 << bits));
    }
    Ok(out)
}

/// Exact Kraft sum of [`scatter_lengths`].
pub fn scatter_kraft(f: &FMap, levels: u64) -> Result<BigRational> {
    Ok(kraft_sum(&scatter_lengths(f, levels)?, 2))
}

/// Allocate the level-`k` codebook: one codeword of length `F(k) − k` per
/// free-bit string, requested in lexicographic order.
pub fn level_codebook(f: &FMap, k: u64) -> Result<Vec<(QString, QString)>> {
    let bits = level_cap(f, k)? as usize;
    let mut alloc = Allocator::new(2)?;
    strings_of_length(2, bits)
        .map(|w| Ok((w, alloc.allocate(bits)?.word)))
        .collect()
}

/// The codeword for `x` at level `k`.
pub fn scatter_encode(spec: &ScatterSpec, k: u64, x: &QString) -> Result<QString> {
    spec.check_level(k)?;
    if x.q() != 2 || x.len() as u64 != spec.f.eval(k)? {
        return Err(Error::Scatter(format!("level {k} strings are binary of length {}", spec.f.eval(k)?)));
    }
    let positions = spec.positions(k)?;
    let mut free = Vec::with_capacity(x.len() - k as usize);
    let mut next = 0;
    for (i, &bit) in x.symbols().iter().enumerate() {
        if next < positions.len() && positions[next] == i as u64 + 1 {
            if bit != spec.marked[next] {
                return Err(Error::Scatter(format!("bit {} is {bit}, marked {}", i + 1, spec.marked[next])));
            }
            next += 1;
        } else {
            free.push(bit);
        }
    }
    // the lexicographic codebook grants z_w = w
    Ok(QString::new(2, free).expect("binary"))
}

/// The level-`k` string whose free bits are `z`.
pub fn scatter_decode(spec: &ScatterSpec, k: u64, z: &QString) -> Result<QString> {
    spec.check_level(k)?;
    let bits = spec.f.free_bits(k)?;
    if z.q() != 2 || z.len() as u64 != bits {
        return Err(Error::Scatter(format!("level {k} codewords are binary of length {bits}")));
    }
    let positions = spec.positions(k)?;
    let mut out = Vec::with_capacity(spec.f.eval(k)? as usize);
    let mut free = z.symbols().iter();
    let mut prev = 0;
    for (j, &p) in positions.iter().enumerate() {
        for _ in prev + 1..p {
            out.push(*free.next().expect("length checked"));
        }
        out.push(spec.marked[j]);
        prev = p;
    }
    Ok(QString::new(2, out).expect("binary"))
}

/// Straight-line decoder for level `k`: copies each gap and writes each
/// marked bit.
pub fn decoder_machine(spec: &ScatterSpec, k: u64) -> Result<Machine> {
    spec.check_level(k)?;
    let mut src = String::new();
    let mut prev = 0;
    for (j, p) in spec.positions(k)?.into_iter().enumerate() {
        for _ in prev + 1..p {
            src.push_str("READ\nWRITEPOP\n");
        }
        src.push_str(&format!("WRITE {}\n", spec.marked[j]));
        prev = p;
    }
    src.push_str("HALT\n");
    assemble(2, &src)
}

/// Loop decoder for `F(i) = a·i + b` (`b ≥ 0`) with every marked bit equal
/// to `bit`: its header grows only with the numeral `k`.
pub fn loop_decoder(a: u64, b: i64, k: u64, bit: u8) -> Result<Machine> {
    if a == 0 || b < 0 || k == 0 || bit > 1 {
        return Err(Error::Scatter("loop decoder needs a ≥ 1, b ≥ 0, k ≥ 1 and a bit".into()));
    }
    let mut src = "READ\nWRITEPOP\n".repeat(b as usize);
    src.push_str(&format!("PUSH {k}\nloop:\n"));
    src.push_str(&"READ\nWRITEPOP\n".repeat(a as usize - 1));
    src.push_str(&format!("WRITE {bit}\nPUSH 1\nSUBSAT\nDUP\nJZ done\nJMP loop\ndone:\nHALT\n"));
    assemble(2, &src)
}

/// Codewords for the whole multiset of [`scatter_lengths`], granted by one
/// allocator.
pub fn global_codebook(f: &FMap, levels: u64) -> Result<Vec<QString>> {
    let mut alloc = Allocator::new(2)?;
    scatter_lengths(f, levels)?.into_iter().map(|n| Ok(alloc.allocate(n)?.word)).collect()
}
