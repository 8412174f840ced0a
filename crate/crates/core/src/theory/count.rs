//! Counting and listing formulas by rendered length.
//!
//! The grammar is unambiguous, so counting derivations counts strings. A
//! prefix constraint lets the same recursion count the formulas of a given
//! length that start with a given symbol string, which is what ranking in
//! quasi-lexicographic order needs.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::formula::{Formula, Sym, Term};
use crate::error::{Error, Result};

/// Longest render the counting routines accept.
pub const COUNT_LEN_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Nt {
    F,
    T,
    V,
    Primes,
}

#[derive(Clone, Copy)]
enum G {
    S(Sym),
    N(Nt),
}

use G::{N, S};

const F_RULES: &[&[G]] = &[
    &[S(Sym::LParen), N(Nt::T), S(Sym::Eq), N(Nt::T), S(Sym::RParen)],
    &[S(Sym::LParen), S(Sym::Not), N(Nt::F), S(Sym::RParen)],
    &[S(Sym::LParen), N(Nt::F), S(Sym::And), N(Nt::F), S(Sym::RParen)],
    &[S(Sym::LParen), N(Nt::F), S(Sym::Or), N(Nt::F), S(Sym::RParen)],
    &[S(Sym::LParen), N(Nt::F), S(Sym::Implies), N(Nt::F), S(Sym::RParen)],
    &[S(Sym::LParen), S(Sym::Forall), N(Nt::V), N(Nt::F), S(Sym::RParen)],
    &[S(Sym::LParen), S(Sym::Exists), N(Nt::V), N(Nt::F), S(Sym::RParen)],
];
const T_RULES: &[&[G]] = &[
    &[N(Nt::V)],
    &[S(Sym::Zero)],
    &[S(Sym::S), S(Sym::LParen), N(Nt::T), S(Sym::RParen)],
    &[S(Sym::LParen), N(Nt::T), S(Sym::Plus), N(Nt::T), S(Sym::RParen)],
    &[S(Sym::LParen), N(Nt::T), S(Sym::Times), N(Nt::T), S(Sym::RParen)],
];
const V_RULES: &[&[G]] = &[&[S(Sym::X), N(Nt::Primes)]];
const PRIME_RULES: &[&[G]] = &[&[], &[S(Sym::Prime), N(Nt::Primes)]];

fn rules(nt: Nt) -> &'static [&'static [G]] {
    match nt {
        Nt::F => F_RULES,
        Nt::T => T_RULES,
        Nt::V => V_RULES,
        Nt::Primes => PRIME_RULES,
    }
}

fn min_len(g: G) -> usize {
    match g {
        S(_) => 1,
        N(Nt::F) => 5,
        N(Nt::T) | N(Nt::V) => 1,
        N(Nt::Primes) => 0,
    }
}

/// Counts yields of a nonterminal that agree with `prefix` on their overlap.
/// Counts past the prefix do not depend on it and survive [`Counter::set_prefix`].
struct Counter {
    prefix: Vec<u8>,
    memo: HashMap<(Nt, usize, usize), BigUint>,
    free: HashMap<(Nt, usize), BigUint>,
}

impl Counter {
    fn new(prefix: &[u8]) -> Self {
        Counter { prefix: prefix.to_vec(), memo: HashMap::new(), free: HashMap::new() }
    }

    fn set_prefix(&mut self, prefix: &[u8]) {
        self.prefix.clear();
        self.prefix.extend_from_slice(prefix);
        self.memo.clear();
    }

    fn nt(&mut self, nt: Nt, len: usize, off: usize) -> BigUint {
        let off = off.min(self.prefix.len());
        let free = off == self.prefix.len();
        let cached = if free { self.free.get(&(nt, len)) } else { self.memo.get(&(nt, len, off)) };
        if let Some(v) = cached {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for rhs in rules(nt) {
            total += self.seq(rhs, len, off);
        }
        if free {
            self.free.insert((nt, len), total.clone());
        } else {
            self.memo.insert((nt, len, off), total.clone());
        }
        total
    }

    fn seq(&mut self, rhs: &[G], len: usize, off: usize) -> BigUint {
        let Some((&first, rest)) = rhs.split_first() else {
            return if len == 0 { BigUint::one() } else { BigUint::zero() };
        };
        let rest_min: usize = rest.iter().map(|&g| min_len(g)).sum();
        if len < min_len(first) + rest_min {
            return BigUint::zero();
        }
        match first {
            S(s) => {
                if off < self.prefix.len() && self.prefix[off] != s as u8 {
                    return BigUint::zero();
                }
                self.seq(rest, len - 1, off + 1)
            }
            N(nt) => {
                let mut total = BigUint::zero();
                for k in min_len(first)..=len - rest_min {
                    let a = self.nt(nt, k, off);
                    if a.is_zero() {
                        continue;
                    }
                    total += a * self.seq(rest, len - k, (off + k).min(self.prefix.len()));
                }
                total
            }
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > COUNT_LEN_CAP {
        return Err(Error::Limit(format!("formula length {n} above {COUNT_LEN_CAP}")));
    }
    Ok(())
}

/// Number of well-formed formulas of rendered length `n`.
pub fn count_wffs(n: usize) -> Result<BigUint> {
    check_cap(n)?;
    Ok(Counter::new(&[]).nt(Nt::F, n, 0))
}

/// Number of well-formed formulas of length `n` whose render starts with
/// `prefix` (symbol values).
pub fn count_wffs_with_prefix(n: usize, prefix: &[u8]) -> Result<BigUint> {
    check_cap(n)?;
    if prefix.len() > n {
        return Ok(BigUint::zero());
    }
    Ok(Counter::new(prefix).nt(Nt::F, n, 0))
}

/// Number of formulas rendered shorter than `n`.
pub fn count_wffs_below(n: usize) -> Result<BigUint> {
    check_cap(n)?;
    let mut c = Counter::new(&[]);
    Ok((0..n).map(|m| c.nt(Nt::F, m, 0)).sum())
}

/// Rank of `f` in the quasi-lexicographic order of all formulas.
pub fn wff_rank(f: &Formula) -> Result<BigUint> {
    let syms: Vec<u8> = f.render_syms().into_iter().map(|s| s as u8).collect();
    let n = syms.len();
    let mut rank = count_wffs_below(n)?;
    let mut prefix = Vec::with_capacity(n);
    let mut counter = Counter::new(&[]);
    for &s in &syms {
        for c in 0..s {
            prefix.push(c);
            counter.set_prefix(&prefix);
            rank += counter.nt(Nt::F, n, 0);
            prefix.pop();
        }
        prefix.push(s);
    }
    Ok(rank)
}

/// The formula of quasi-lexicographic rank `rank`.
pub fn wff_unrank(rank: &BigUint) -> Result<Formula> {
    let mut k = rank.clone();
    let mut n = 0;
    let mut base = Counter::new(&[]);
    loop {
        check_cap(n)?;
        let c = base.nt(Nt::F, n, 0);
        if k < c {
            break;
        }
        k -= c;
        n += 1;
    }
    let mut prefix: Vec<u8> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut chosen = None;
        for c in 0..15u8 {
            prefix.push(c);
            base.set_prefix(&prefix);
            let cnt = base.nt(Nt::F, n, 0);
            if k < cnt {
                chosen = Some(c);
                break;
            }
            k -= cnt;
            prefix.pop();
        }
        chosen.expect("rank within the count of its length");
    }
    let syms: Vec<Sym> = prefix.iter().map(|&s| Sym::from_u8(s).unwrap()).collect();
    super::parse::parse_syms(&syms)
}

/// Number of variables a closed formula of length at most `n` can mention.
fn tracked_vars(n: usize) -> usize {
    // (∀x^k(x^k=0)) is the shortest sentence mentioning x^k: 2k + 9 symbols
    if n < 9 {
        0
    } else {
        (n - 9) / 2 + 1
    }
}

/// Number of closed formulas (sentences) of each length `0..=n_max`.
pub fn count_sentences_upto(n_max: usize) -> Result<Vec<BigUint>> {
    check_cap(n_max)?;
    let v = tracked_vars(n_max);
    let masks = 1usize << v;
    let zero_row = || vec![BigUint::zero(); masks];
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    let mut f: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    let pair = |rows: &Vec<Vec<BigUint>>, a: usize, b: usize, out: &mut Vec<BigUint>, mult: u32| {
        for (m1, x) in rows[a].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (m2, y) in rows[b].iter().enumerate() {
                if !y.is_zero() {
                    out[m1 | m2] += x * y * mult;
                }
            }
        }
    };
    for l in 0..=n_max {
        let mut tr = zero_row();
        if l >= 1 && l - 1 < v {
            tr[1 << (l - 1)] += 1u32;
        }
        if l == 1 {
            tr[0] += 1u32;
        }
        if l >= 4 {
            for m in 0..masks {
                let x = t[l - 3][m].clone();
                tr[m] += x;
            }
        }
        if l >= 5 {
            for a in 1..l - 3 {
                pair(&t, a, l - 3 - a, &mut tr, 2);
            }
        }
        t.push(tr);

        let mut fr = zero_row();
        if l >= 5 {
            for a in 1..l - 3 {
                pair(&t, a, l - 3 - a, &mut fr, 1);
            }
        }
        if l >= 8 {
            for m in 0..masks {
                let x = f[l - 3][m].clone();
                fr[m] += x;
            }
        }
        if l >= 13 {
            for a in 5..=l - 8 {
                pair(&f, a, l - 3 - a, &mut fr, 3);
            }
        }
        // quantifiers: ( Q x^k φ ) with |x^k| = k + 1
        for k in 0..l.saturating_sub(8) {
            let body = l - 4 - k;
            if body < 5 {
                break;
            }
            for (m, x) in f[body].iter().enumerate().take(masks) {
                if x.is_zero() {
                    continue;
                }
                let target = if k < v { m & !(1 << k) } else { m };
                fr[target] += x * 2u32;
            }
        }
        f.push(fr);
    }
    Ok(f.into_iter().map(|row| row.into_iter().next().unwrap()).collect())
}

pub fn count_sentences(n: usize) -> Result<BigUint> {
    Ok(count_sentences_upto(n)?.pop().unwrap())
}

/// Every term of each length `0..=n`, by structural enumeration.
pub fn terms_upto(n: usize) -> Vec<Vec<Term>> {
    let mut t: Vec<Vec<Term>> = vec![Vec::new(); n + 1];
    for l in 1..=n {
        let mut row = vec![Term::Var(l as u32 - 1)];
        if l == 1 {
            row.push(Term::Zero);
        }
        if l >= 4 {
            row.extend(t[l - 3].iter().cloned().map(Term::succ));
        }
        for a in 1..l.saturating_sub(3) {
            for x in &t[a] {
                for y in &t[l - 3 - a] {
                    row.push(Term::plus(x.clone(), y.clone()));
                    row.push(Term::times(x.clone(), y.clone()));
                }
            }
        }
        t[l] = row;
    }
    t
}

/// Every formula of each length `0..=n`, by structural enumeration.
pub fn formulas_upto(n: usize) -> Vec<Vec<Formula>> {
    let t = terms_upto(n);
    let mut f: Vec<Vec<Formula>> = vec![Vec::new(); n + 1];
    for l in 5..=n {
        let mut row = Vec::new();
        for a in 1..l - 3 {
            for x in &t[a] {
                for y in &t[l - 3 - a] {
                    row.push(Formula::eq(x.clone(), y.clone()));
                }
            }
        }
        if l >= 8 {
            row.extend(f[l - 3].iter().cloned().map(Formula::not));
        }
        for a in 5..l.saturating_sub(7) {
            for x in &f[a] {
                for y in &f[l - 3 - a] {
                    row.push(Formula::and(x.clone(), y.clone()));
                    row.push(Formula::or(x.clone(), y.clone()));
                    row.push(Formula::implies(x.clone(), y.clone()));
                }
            }
        }
        for k in 0..l.saturating_sub(8) {
            for body in &f[l - 4 - k] {
                row.push(Formula::forall(k as u32, body.clone()));
                row.push(Formula::exists(k as u32, body.clone()));
            }
        }
        f[l] = row;
    }
    f
}

/// Sentences grouped by length, each group in quasi-lexicographic order.
pub fn sentences_upto(n: usize) -> BTreeMap<usize, Vec<Formula>> {
    formulas_upto(n)
        .into_iter()
        .enumerate()
        .map(|(l, row)| {
            let mut s: Vec<Formula> = row.into_iter().filter(Formula::is_sentence).collect();
            s.sort_by_cached_key(|f| f.render_syms());
            (l, s)
        })
        .collect()
}
