//! Parser for fully parenthesised formulas.
//!
//! Parentheses are matched up front; inside a group the single operator at
//! the group's own nesting level decides what the group is, so parsing never
//! backtracks.

use super::formula::{Formula, Sym, Term};
use crate::error::{Error, Result};
use crate::qstrings::QString;

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

/// Map glyphs (or their ASCII aliases) to symbols. Whitespace is skipped.
pub fn tokenize(text: &str) -> Result<Vec<Sym>> {
    let mut out = Vec::with_capacity(text.len());
    for c in text.chars() {
        if c.is_whitespace() {
            continue;
        }
        let s = Sym::from_char(c).ok_or_else(|| syntax(out.len(), format!("unknown character {c:?}")))?;
        out.push(s);
    }
    Ok(out)
}

pub fn parse_wff(text: &str) -> Result<Formula> {
    parse_syms(&tokenize(text)?)
}

pub fn parse_qstring(w: &QString) -> Result<Formula> {
    if w.q() != 15 {
        return Err(Error::AlphabetMismatch { expected: 15, found: w.q() });
    }
    let syms: Vec<Sym> = w.symbols().iter().map(|&s| Sym::from_u8(s).unwrap()).collect();
    parse_syms(&syms)
}

pub fn parse_syms(syms: &[Sym]) -> Result<Formula> {
    let mut matching = vec![usize::MAX; syms.len()];
    let mut open = Vec::new();
    for (i, s) in syms.iter().enumerate() {
        match s {
            Sym::LParen => open.push(i),
            Sym::RParen => {
                let j = open.pop().ok_or_else(|| syntax(i, "unmatched ')'"))?;
                matching[j] = i;
            }
            _ => {}
        }
    }
    if let Some(&j) = open.last() {
        return Err(syntax(j, "unmatched '('"));
    }
    let p = Parser { syms, matching };
    let (f, end) = p.formula(0)?;
    if end != syms.len() {
        return Err(syntax(end, "trailing symbols after formula"));
    }
    Ok(f)
}

struct Parser<'a> {
    syms: &'a [Sym],
    matching: Vec<usize>,
}

impl Parser<'_> {
    fn at(&self, pos: usize) -> Result<Sym> {
        self.syms.get(pos).copied().ok_or_else(|| syntax(pos, "unexpected end of input"))
    }

    fn expect(&self, pos: usize, s: Sym) -> Result<usize> {
        if self.at(pos)? == s {
            Ok(pos + 1)
        } else {
            Err(syntax(pos, format!("expected '{}'", s.glyph())))
        }
    }

    /// The operator sitting directly inside the group opened at `open`.
    fn group_operator(&self, open: usize) -> Result<(usize, Sym)> {
        let close = self.matching[open];
        let mut found = None;
        let mut j = open + 1;
        while j < close {
            match self.syms[j] {
                Sym::LParen => j = self.matching[j],
                s @ (Sym::Eq | Sym::Plus | Sym::Times | Sym::And | Sym::Or | Sym::Implies) => {
                    if found.is_some() {
                        return Err(syntax(j, "more than one operator in a group"));
                    }
                    found = Some((j, s));
                }
                _ => {}
            }
            j += 1;
        }
        found.ok_or_else(|| syntax(close, "group without an operator"))
    }

    fn variable(&self, pos: usize) -> Result<(u32, usize)> {
        let mut p = self.expect(pos, Sym::X)?;
        let mut k = 0u32;
        while self.syms.get(p) == Some(&Sym::Prime) {
            k += 1;
            p += 1;
        }
        Ok((k, p))
    }

    fn formula(&self, pos: usize) -> Result<(Formula, usize)> {
        if self.at(pos)? != Sym::LParen {
            return Err(syntax(pos, "expected '(' to start a formula"));
        }
        let close = self.matching[pos];
        let inner = pos + 1;
        let (f, end) = match self.at(inner)? {
            Sym::Not => {
                let (f, end) = self.formula(inner + 1)?;
                (Formula::not(f), end)
            }
            q @ (Sym::Forall | Sym::Exists) => {
                let (v, p) = self.variable(inner + 1)?;
                let (f, end) = self.formula(p)?;
                let f = if q == Sym::Forall { Formula::forall(v, f) } else { Formula::exists(v, f) };
                (f, end)
            }
            _ => {
                let (op_pos, op) = self.group_operator(pos)?;
                match op {
                    Sym::Eq => {
                        let (a, p) = self.term(inner)?;
                        if p != op_pos {
                            return Err(syntax(p, "expected '='"));
                        }
                        let (b, end) = self.term(op_pos + 1)?;
                        (Formula::eq(a, b), end)
                    }
                    Sym::And | Sym::Or | Sym::Implies => {
                        let (a, p) = self.formula(inner)?;
                        if p != op_pos {
                            return Err(syntax(p, "expected a connective"));
                        }
                        let (b, end) = self.formula(op_pos + 1)?;
                        let f = match op {
                            Sym::And => Formula::and(a, b),
                            Sym::Or => Formula::or(a, b),
                            _ => Formula::implies(a, b),
                        };
                        (f, end)
                    }
                    _ => return Err(syntax(op_pos, "a term is not a formula")),
                }
            }
        };
        if end != close {
            return Err(syntax(end, "expected ')'"));
        }
        Ok((f, close + 1))
    }

    fn term(&self, pos: usize) -> Result<(Term, usize)> {
        match self.at(pos)? {
            Sym::X => {
                let (k, p) = self.variable(pos)?;
                Ok((Term::Var(k), p))
            }
            Sym::Zero => Ok((Term::Zero, pos + 1)),
            Sym::S => {
                let open = self.expect(pos + 1, Sym::LParen)? - 1;
                let (t, end) = self.term(open + 1)?;
                if end != self.matching[open] {
                    return Err(syntax(end, "expected ')'"));
                }
                Ok((Term::succ(t), end + 1))
            }
            Sym::LParen => {
                let (op_pos, op) = self.group_operator(pos)?;
                if !matches!(op, Sym::Plus | Sym::Times) {
                    return Err(syntax(op_pos, "expected '+' or '·' in a term"));
                }
                let (a, p) = self.term(pos + 1)?;
                if p != op_pos {
                    return Err(syntax(p, "expected an operator"));
                }
                let (b, end) = self.term(op_pos + 1)?;
                if end != self.matching[pos] {
                    return Err(syntax(end, "expected ')'"));
                }
                let t = if op == Sym::Plus { Term::plus(a, b) } else { Term::times(a, b) };
                Ok((t, end + 1))
            }
            s => Err(syntax(pos, format!("unexpected '{}' in a term", s.glyph()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_equation() {
        assert_eq!(parse_wff("(x=x)").unwrap(), Formula::eq(Term::var(0), Term::var(0)));
    }

    #[test]
    fn q4_and_round_trip() {
        let f = parse_wff("((x+0)=x)").unwrap();
        assert_eq!(f, Formula::eq(Term::plus(Term::var(0), Term::Zero), Term::var(0)));
        for text in [
            "((s(x)=s(x′))⇒(x=x′))",
            "(¬(0=s(x)))",
            "((¬(x=0))⇒(∃x′(x=s(x′))))",
            "((x·s(x′))=((x·x′)+x))",
            "(∀x′′((x′′=0)∨(¬(x′′=0))))",
        ] {
            let f = parse_wff(text).unwrap();
            assert_eq!(f.to_string(), text);
            assert_eq!(parse_wff(&f.render_ascii()).unwrap(), f);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_wff("((x=0)"), Err(Error::Syntax { pos: 0, .. })));
        assert!(parse_wff("(x=0))").is_err());
        assert!(parse_wff("(x+0)").is_err());
        assert!(parse_wff("x=0").is_err());
        assert!(parse_wff("(x=0=0)").is_err());
        assert!(parse_wff("(x=0)(x=0)").is_err());
        assert!(parse_wff("(∀0(x=x))").is_err());
        assert!(parse_wff("(s0=0)").is_err());
        assert!(parse_wff("()").is_err());
        assert!(parse_wff("").is_err());
        assert!(parse_wff("(x=?)").is_err());
    }
}
