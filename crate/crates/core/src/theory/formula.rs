//! Terms and formulas of first-order arithmetic over the 15-symbol alphabet.
//!
//! Rendering is fully parenthesised: `(t=t)`, `(¬φ)`, `(φ∧ψ)`, `(∀x′φ)`,
//! `s(t)`, `(t+t)`, `(t·t)`. Variables are `x` followed by primes, so the
//! `k`-th variable occupies `1 + k` symbols.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qstrings::QString;

/// The formula alphabet in symbol order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Sym {
    X = 0,
    Prime,
    Zero,
    S,
    Plus,
    Times,
    Eq,
    Not,
    And,
    Or,
    Implies,
    Forall,
    Exists,
    LParen,
    RParen,
}

pub const ALPHABET_SIZE: u32 = 15;

impl Sym {
    pub const ALL: [Sym; 15] = [
        Sym::X,
        Sym::Prime,
        Sym::Zero,
        Sym::S,
        Sym::Plus,
        Sym::Times,
        Sym::Eq,
        Sym::Not,
        Sym::And,
        Sym::Or,
        Sym::Implies,
        Sym::Forall,
        Sym::Exists,
        Sym::LParen,
        Sym::RParen,
    ];

    pub fn from_u8(v: u8) -> Option<Sym> {
        Sym::ALL.get(v as usize).copied()
    }

    pub fn glyph(self) -> char {
        "x′0s+·=¬∧∨⇒∀∃()".chars().nth(self as usize).unwrap()
    }

    /// ASCII alias accepted by the parser.
    pub fn ascii(self) -> char {
        "x'0s+*=~&|>AE()".chars().nth(self as usize).unwrap()
    }

    pub fn from_char(c: char) -> Option<Sym> {
        Sym::ALL.iter().copied().find(|s| s.glyph() == c || s.ascii() == c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(u32),
    Zero,
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(u32, Box<Formula>),
    Exists(u32, Box<Formula>),
}

impl Term {
    pub fn var(k: u32) -> Term {
        Term::Var(k)
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    /// `s(s(...s(0)...))` with `n` successors.
    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn len(&self) -> usize {
        match self {
            Term::Var(k) => 1 + *k as usize,
            Term::Zero => 1,
            Term::Succ(t) => 3 + t.len(),
            Term::Plus(a, b) | Term::Times(a, b) => 3 + a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn render_into(&self, out: &mut Vec<Sym>) {
        match self {
            Term::Var(k) => {
                out.push(Sym::X);
                out.extend(std::iter::repeat_n(Sym::Prime, *k as usize));
            }
            Term::Zero => out.push(Sym::Zero),
            Term::Succ(t) => {
                out.push(Sym::S);
                out.push(Sym::LParen);
                t.render_into(out);
                out.push(Sym::RParen);
            }
            Term::Plus(a, b) | Term::Times(a, b) => {
                out.push(Sym::LParen);
                a.render_into(out);
                out.push(if matches!(self, Term::Plus(..)) { Sym::Plus } else { Sym::Times });
                b.render_into(out);
                out.push(Sym::RParen);
            }
        }
    }

    pub fn vars(&self, acc: &mut BTreeSet<u32>) {
        match self {
            Term::Var(k) => {
                acc.insert(*k);
            }
            Term::Zero => {}
            Term::Succ(t) => t.vars(acc),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.vars(acc);
                b.vars(acc);
            }
        }
    }

    pub fn has_var(&self, v: u32) -> bool {
        match self {
            Term::Var(k) => *k == v,
            Term::Zero => false,
            Term::Succ(t) => t.has_var(v),
            Term::Plus(a, b) | Term::Times(a, b) => a.has_var(v) || b.has_var(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Zero => true,
            Term::Succ(t) => t.is_closed(),
            Term::Plus(a, b) | Term::Times(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    pub fn subst(&self, v: u32, t: &Term) -> Term {
        match self {
            Term::Var(k) if *k == v => t.clone(),
            Term::Var(_) | Term::Zero => self.clone(),
            Term::Succ(a) => Term::succ(a.subst(v, t)),
            Term::Plus(a, b) => Term::plus(a.subst(v, t), b.subst(v, t)),
            Term::Times(a, b) => Term::times(a.subst(v, t), b.subst(v, t)),
        }
    }

    /// Value under the standard interpretation; `None` for open terms or
    /// values past `u128`.
    pub fn eval(&self) -> Option<u128> {
        match self {
            Term::Var(_) => None,
            Term::Zero => Some(0),
            Term::Succ(t) => t.eval()?.checked_add(1),
            Term::Plus(a, b) => a.eval()?.checked_add(b.eval()?),
            Term::Times(a, b) => a.eval()?.checked_mul(b.eval()?),
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: u32, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: u32, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn len(&self) -> usize {
        match self {
            Formula::Eq(a, b) => 3 + a.len() + b.len(),
            Formula::Not(f) => 3 + f.len(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 3 + a.len() + b.len(),
            Formula::Forall(v, f) | Formula::Exists(v, f) => 4 + *v as usize + f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn render_into(&self, out: &mut Vec<Sym>) {
        out.push(Sym::LParen);
        match self {
            Formula::Eq(a, b) => {
                a.render_into(out);
                out.push(Sym::Eq);
                b.render_into(out);
            }
            Formula::Not(f) => {
                out.push(Sym::Not);
                f.render_into(out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.render_into(out);
                out.push(match self {
                    Formula::And(..) => Sym::And,
                    Formula::Or(..) => Sym::Or,
                    _ => Sym::Implies,
                });
                b.render_into(out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                out.push(if matches!(self, Formula::Forall(..)) { Sym::Forall } else { Sym::Exists });
                Term::Var(*v).render_into(out);
                f.render_into(out);
            }
        }
        out.push(Sym::RParen);
    }

    pub fn render_syms(&self) -> Vec<Sym> {
        let mut out = Vec::with_capacity(self.len());
        self.render_into(&mut out);
        out
    }

    /// The rendering as a string over the 15-symbol alphabet.
    pub fn to_qstring(&self) -> QString {
        let syms = self.render_syms().into_iter().map(|s| s as u8).collect();
        QString::from_raw(ALPHABET_SIZE, syms)
    }

    pub fn render_ascii(&self) -> String {
        self.render_syms().into_iter().map(Sym::ascii).collect()
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut acc = BTreeSet::new();
        self.collect_free(&mut acc);
        acc
    }

    fn collect_free(&self, acc: &mut BTreeSet<u32>) {
        match self {
            Formula::Eq(a, b) => {
                a.vars(acc);
                b.vars(acc);
            }
            Formula::Not(f) => f.collect_free(acc),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(acc);
                b.collect_free(acc);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                inner.remove(v);
                acc.extend(inner);
            }
        }
    }

    pub fn has_free(&self, v: u32) -> bool {
        match self {
            Formula::Eq(a, b) => a.has_var(v) || b.has_var(v),
            Formula::Not(f) => f.has_free(v),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Forall(w, f) | Formula::Exists(w, f) => *w != v && f.has_free(v),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// `t` can replace the free occurrences of `v` without any variable of
    /// `t` being captured.
    pub fn free_for(&self, v: u32, t: &Term) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(f) => f.free_for(v, t),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.free_for(v, t) && b.free_for(v, t),
            Formula::Forall(w, f) | Formula::Exists(w, f) => {
                if *w == v || !f.has_free(v) {
                    true
                } else {
                    !t.has_var(*w) && f.free_for(v, t)
                }
            }
        }
    }

    /// Replace the free occurrences of `v` by `t`. Callers check
    /// [`Formula::free_for`] first.
    pub fn subst(&self, v: u32, t: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.subst(v, t), b.subst(v, t)),
            Formula::Not(f) => Formula::not(f.subst(v, t)),
            Formula::And(a, b) => Formula::and(a.subst(v, t), b.subst(v, t)),
            Formula::Or(a, b) => Formula::or(a.subst(v, t), b.subst(v, t)),
            Formula::Implies(a, b) => Formula::implies(a.subst(v, t), b.subst(v, t)),
            Formula::Forall(w, f) if *w == v => Formula::Forall(*w, f.clone()),
            Formula::Exists(w, f) if *w == v => Formula::Exists(*w, f.clone()),
            Formula::Forall(w, f) => Formula::forall(*w, f.subst(v, t)),
            Formula::Exists(w, f) => Formula::exists(*w, f.subst(v, t)),
        }
    }

    /// Truth of a sentence whose quantifier-free parts are ground equations;
    /// quantified sentences are not decided and give `None`.
    pub fn eval_ground(&self) -> Option<bool> {
        match self {
            Formula::Eq(a, b) => Some(a.eval()? == b.eval()?),
            Formula::Not(f) => Some(!f.eval_ground()?),
            Formula::And(a, b) => Some(a.eval_ground()? && b.eval_ground()?),
            Formula::Or(a, b) => Some(a.eval_ground()? || b.eval_ground()?),
            Formula::Implies(a, b) => Some(!a.eval_ground()? || b.eval_ground()?),
            Formula::Forall(..) | Formula::Exists(..) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = Vec::new();
        self.render_into(&mut out);
        out.into_iter().try_for_each(|s| write!(f, "{}", s.glyph()))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render_syms().into_iter().try_for_each(|s| write!(f, "{}", s.glyph()))
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse::parse_wff(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_length() {
        let f = Formula::eq(Term::plus(Term::var(0), Term::Zero), Term::var(0));
        assert_eq!(f.to_string(), "((x+0)=x)");
        assert_eq!(f.render_ascii(), "((x+0)=x)");
        assert_eq!(f.len(), 9);
        let g = Formula::forall(1, Formula::not(Formula::eq(Term::Zero, Term::succ(Term::var(1)))));
        assert_eq!(g.to_string(), "(∀x′(¬(0=s(x′))))");
        assert_eq!(g.len(), g.render_syms().len());
        assert_eq!(g.render_ascii(), "(Ax'(~(0=s(x'))))");
    }

    #[test]
    fn substitution_respects_binding() {
        // (∀x′(x=x′)) with x := x′ would capture
        let f = Formula::forall(1, Formula::eq(Term::var(0), Term::var(1)));
        assert!(!f.free_for(0, &Term::var(1)));
        assert!(f.free_for(0, &Term::succ(Term::Zero)));
        assert_eq!(f.subst(0, &Term::Zero).to_string(), "(∀x′(0=x′))");
        assert_eq!(f.subst(1, &Term::Zero), f);
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn ground_evaluation() {
        let two = Term::numeral(2);
        let f = Formula::eq(Term::times(two.clone(), two), Term::numeral(4));
        assert_eq!(f.eval_ground(), Some(true));
        assert_eq!(Formula::eq(Term::var(0), Term::Zero).eval_ground(), None);
    }
}
