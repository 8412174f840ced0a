//! Logical axiom schemes and the seven axioms of Q.
//!
//! Q1–Q7 are matched up to a consistent renaming of variables. Schemes are
//! matched as substitution instances; metavariables `φ ψ χ` range over
//! formulas, `t r u` over terms and `v` over variables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::formula::{Formula, Term};
use super::parse::parse_wff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// (φ⇒(ψ⇒φ))
    L1,
    /// ((φ⇒(ψ⇒χ))⇒((φ⇒ψ)⇒(φ⇒χ)))
    L2,
    /// (((¬φ)⇒(¬ψ))⇒(ψ⇒φ))
    L3,
    /// ((∀vφ)⇒φ[t/v]) with t free for v in φ
    ForallInst,
    /// ((∀v(φ⇒ψ))⇒(φ⇒(∀vψ))) with v not free in φ
    ForallDist,
    /// (v=v)
    EqRefl,
    /// ((t=r)⇒(s(t)=s(r)))
    EqSucc,
    /// ((t=r)⇒((t+u)=(r+u)))
    EqPlusL,
    /// ((t=r)⇒((u+t)=(u+r)))
    EqPlusR,
    /// ((t=r)⇒((t·u)=(r·u)))
    EqTimesL,
    /// ((t=r)⇒((u·t)=(u·r)))
    EqTimesR,
    /// ((t=r)⇒((t=u)⇒(r=u)))
    EqEq,
    /// ((φ∧ψ)⇒φ)
    AndElimL,
    /// ((φ∧ψ)⇒ψ)
    AndElimR,
    /// (φ⇒(ψ⇒(φ∧ψ)))
    AndIntro,
    /// (φ⇒(φ∨ψ))
    OrIntroL,
    /// (ψ⇒(φ∨ψ))
    OrIntroR,
    /// ((φ⇒χ)⇒((ψ⇒χ)⇒((φ∨ψ)⇒χ)))
    OrElim,
    /// (φ[t/v]⇒(∃vφ)) with t free for v in φ
    ExistsIntro,
    /// ((∀v(φ⇒ψ))⇒((∃vφ)⇒ψ)) with v not free in ψ
    ExistsElim,
}

impl Scheme {
    pub const ALL: [Scheme; 20] = [
        Scheme::L1,
        Scheme::L2,
        Scheme::L3,
        Scheme::ForallInst,
        Scheme::ForallDist,
        Scheme::EqRefl,
        Scheme::EqSucc,
        Scheme::EqPlusL,
        Scheme::EqPlusR,
        Scheme::EqTimesL,
        Scheme::EqTimesR,
        Scheme::EqEq,
        Scheme::AndElimL,
        Scheme::AndElimR,
        Scheme::AndIntro,
        Scheme::OrIntroL,
        Scheme::OrIntroR,
        Scheme::OrElim,
        Scheme::ExistsIntro,
        Scheme::ExistsElim,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomId {
    Logical(Scheme),
    Q(u8),
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Logical(s) => write!(f, "{s:?}"),
            AxiomId::Q(n) => write!(f, "Q{n}"),
        }
    }
}

/// An identified axiom with the bindings of its metavariables (schemes) or
/// the variable renaming applied (Q1–Q7), rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomMatch {
    pub id: AxiomId,
    pub bindings: Vec<(String, String)>,
}

pub const Q_AXIOM_TEXT: [&str; 7] = [
    "((s(x)=s(x′))⇒(x=x′))",
    "(¬(0=s(x)))",
    "((¬(x=0))⇒(∃x′(x=s(x′))))",
    "((x+0)=x)",
    "((x+s(x′))=s((x+x′)))",
    "((x·0)=0)",
    "((x·s(x′))=((x·x′)+x))",
];

/// Q1–Q7 in canonical form.
pub fn q_axioms() -> &'static [Formula; 7] {
    static AXIOMS: OnceLock<[Formula; 7]> = OnceLock::new();
    AXIOMS.get_or_init(|| Q_AXIOM_TEXT.map(|t| parse_wff(t).expect("axiom text parses")))
}

fn var_name(k: u32) -> String {
    Term::Var(k).to_string()
}

/// Bijective renaming of pattern variables onto formula variables.
#[derive(Default)]
struct Renaming {
    fwd: BTreeMap<u32, u32>,
    back: BTreeMap<u32, u32>,
}

impl Renaming {
    fn bind(&mut self, p: u32, v: u32) -> bool {
        match (self.fwd.get(&p), self.back.get(&v)) {
            (Some(&a), Some(&b)) => a == v && b == p,
            (None, None) => {
                self.fwd.insert(p, v);
                self.back.insert(v, p);
                true
            }
            _ => false,
        }
    }

    fn term(&mut self, p: &Term, t: &Term) -> bool {
        match (p, t) {
            (Term::Var(a), Term::Var(b)) => self.bind(*a, *b),
            (Term::Zero, Term::Zero) => true,
            (Term::Succ(a), Term::Succ(b)) => self.term(a, b),
            (Term::Plus(a1, a2), Term::Plus(b1, b2)) | (Term::Times(a1, a2), Term::Times(b1, b2)) => {
                self.term(a1, b1) && self.term(a2, b2)
            }
            _ => false,
        }
    }

    fn formula(&mut self, p: &Formula, f: &Formula) -> bool {
        match (p, f) {
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => self.term(a1, b1) && self.term(a2, b2),
            (Formula::Not(a), Formula::Not(b)) => self.formula(a, b),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => self.formula(a1, b1) && self.formula(a2, b2),
            (Formula::Forall(v, a), Formula::Forall(w, b)) | (Formula::Exists(v, a), Formula::Exists(w, b)) => {
                self.bind(*v, *w) && self.formula(a, b)
            }
            _ => false,
        }
    }
}

/// Which of Q1–Q7 `f` is, with the variable renaming used.
pub fn q_axiom_match(f: &Formula) -> Option<(u8, Vec<(String, String)>)> {
    q_axioms().iter().enumerate().find_map(|(i, ax)| {
        let mut r = Renaming::default();
        r.formula(ax, f).then(|| {
            let b = r.fwd.iter().map(|(&p, &v)| (var_name(p), var_name(v))).collect();
            (i as u8 + 1, b)
        })
    })
}

fn term_instance(p: &Term, v: u32, b: &Term, t: &mut Option<Term>) -> bool {
    match (p, b) {
        (Term::Var(w), _) if *w == v => match t {
            Some(x) => x == b,
            None => {
                *t = Some(b.clone());
                true
            }
        },
        (Term::Var(w), Term::Var(u)) => w == u,
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(a), Term::Succ(c)) => term_instance(a, v, c, t),
        (Term::Plus(a1, a2), Term::Plus(c1, c2)) | (Term::Times(a1, a2), Term::Times(c1, c2)) => {
            term_instance(a1, v, c1, t) && term_instance(a2, v, c2, t)
        }
        _ => false,
    }
}

fn formula_instance(p: &Formula, v: u32, b: &Formula, t: &mut Option<Term>) -> bool {
    match (p, b) {
        (Formula::Eq(a1, a2), Formula::Eq(c1, c2)) => term_instance(a1, v, c1, t) && term_instance(a2, v, c2, t),
        (Formula::Not(a), Formula::Not(c)) => formula_instance(a, v, c, t),
        (Formula::And(a1, a2), Formula::And(c1, c2))
        | (Formula::Or(a1, a2), Formula::Or(c1, c2))
        | (Formula::Implies(a1, a2), Formula::Implies(c1, c2)) => {
            formula_instance(a1, v, c1, t) && formula_instance(a2, v, c2, t)
        }
        (Formula::Forall(w, a), Formula::Forall(u, c)) | (Formula::Exists(w, a), Formula::Exists(u, c)) if w == u => {
            if *w == v {
                a == c
            } else {
                formula_instance(a, v, c, t)
            }
        }
        _ => false,
    }
}

/// The term `t` with `φ[t/v] = b` and `t` free for `v` in `φ`, if any.
pub fn instance_term(phi: &Formula, v: u32, b: &Formula) -> Option<Term> {
    let mut t = None;
    if !formula_instance(phi, v, b, &mut t) {
        return None;
    }
    let t = t.unwrap_or(Term::Var(v));
    (phi.free_for(v, &t) && phi.subst(v, &t) == *b).then_some(t)
}

fn fb(name: &str, f: &Formula) -> (String, String) {
    (name.to_string(), f.to_string())
}

fn tb(name: &str, t: &Term) -> (String, String) {
    (name.to_string(), t.to_string())
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(a, b) => Some((a, b)),
        _ => None,
    }
}

fn eq(f: &Formula) -> Option<(&Term, &Term)> {
    match f {
        Formula::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

fn congruence(f: &Formula, wrap: impl Fn(&Term, &Term) -> Option<Term>) -> Option<Vec<(String, String)>> {
    let (h, c) = imp(f)?;
    let (t, r) = eq(h)?;
    let (lhs, rhs) = eq(c)?;
    let (ut, ur) = (wrap(t, lhs)?, wrap(r, rhs)?);
    (ut == *lhs && ur == *rhs).then(|| vec![tb("t", t), tb("r", r)])
}

/// Check `f` against one scheme, returning the metavariable bindings.
pub fn match_scheme(s: Scheme, f: &Formula) -> Option<Vec<(String, String)>> {
    use Formula as F;
    match s {
        Scheme::L1 => {
            let (phi, rest) = imp(f)?;
            let (psi, phi2) = imp(rest)?;
            (phi == phi2).then(|| vec![fb("φ", phi), fb("ψ", psi)])
        }
        Scheme::L2 => {
            let (a, b) = imp(f)?;
            let (phi, a2) = imp(a)?;
            let (psi, chi) = imp(a2)?;
            let (b1, b2) = imp(b)?;
            let (phi1, psi1) = imp(b1)?;
            let (phi2, chi2) = imp(b2)?;
            (phi1 == phi && psi1 == psi && phi2 == phi && chi2 == chi)
                .then(|| vec![fb("φ", phi), fb("ψ", psi), fb("χ", chi)])
        }
        Scheme::L3 => {
            let (a, b) = imp(f)?;
            let (na, nb) = imp(a)?;
            let (F::Not(phi), F::Not(psi)) = (na, nb) else { return None };
            let (psi2, phi2) = imp(b)?;
            (**phi == *phi2 && **psi == *psi2).then(|| vec![fb("φ", phi), fb("ψ", psi)])
        }
        Scheme::ForallInst => {
            let (a, b) = imp(f)?;
            let F::Forall(v, phi) = a else { return None };
            let t = instance_term(phi, *v, b)?;
            Some(vec![fb("φ", phi), (String::from("v"), var_name(*v)), tb("t", &t)])
        }
        Scheme::ForallDist => {
            let (a, b) = imp(f)?;
            let F::Forall(v, body) = a else { return None };
            let (phi, psi) = imp(body)?;
            let (phi2, c) = imp(b)?;
            let F::Forall(v2, psi2) = c else { return None };
            (v == v2 && phi == phi2 && *psi == **psi2 && !phi.has_free(*v))
                .then(|| vec![fb("φ", phi), fb("ψ", psi), (String::from("v"), var_name(*v))])
        }
        Scheme::EqRefl => match eq(f)? {
            (Term::Var(a), Term::Var(b)) if a == b => Some(vec![(String::from("v"), var_name(*a))]),
            _ => None,
        },
        Scheme::EqSucc => congruence(f, |t, _| Some(Term::succ(t.clone()))),
        Scheme::EqPlusL => congruence(f, |t, side| match side {
            Term::Plus(_, u) => Some(Term::plus(t.clone(), (**u).clone())),
            _ => None,
        }),
        Scheme::EqPlusR => congruence(f, |t, side| match side {
            Term::Plus(u, _) => Some(Term::plus((**u).clone(), t.clone())),
            _ => None,
        }),
        Scheme::EqTimesL => congruence(f, |t, side| match side {
            Term::Times(_, u) => Some(Term::times(t.clone(), (**u).clone())),
            _ => None,
        }),
        Scheme::EqTimesR => congruence(f, |t, side| match side {
            Term::Times(u, _) => Some(Term::times((**u).clone(), t.clone())),
            _ => None,
        }),
        Scheme::EqEq => {
            let (h, c) = imp(f)?;
            let (t, r) = eq(h)?;
            let (c1, c2) = imp(c)?;
            let (t2, u) = eq(c1)?;
            let (r2, u2) = eq(c2)?;
            (t == t2 && r == r2 && u == u2).then(|| vec![tb("t", t), tb("r", r), tb("u", u)])
        }
        Scheme::AndElimL | Scheme::AndElimR => {
            let (a, b) = imp(f)?;
            let F::And(phi, psi) = a else { return None };
            let target = if s == Scheme::AndElimL { phi } else { psi };
            (**target == *b).then(|| vec![fb("φ", phi), fb("ψ", psi)])
        }
        Scheme::AndIntro => {
            let (phi, rest) = imp(f)?;
            let (psi, c) = imp(rest)?;
            let F::And(p2, q2) = c else { return None };
            (**p2 == *phi && **q2 == *psi).then(|| vec![fb("φ", phi), fb("ψ", psi)])
        }
        Scheme::OrIntroL | Scheme::OrIntroR => {
            let (a, b) = imp(f)?;
            let F::Or(phi, psi) = b else { return None };
            let source = if s == Scheme::OrIntroL { phi } else { psi };
            (**source == *a).then(|| vec![fb("φ", phi), fb("ψ", psi)])
        }
        Scheme::OrElim => {
            let (a, rest) = imp(f)?;
            let (phi, chi) = imp(a)?;
            let (b, c) = imp(rest)?;
            let (psi, chi2) = imp(b)?;
            let (d, chi3) = imp(c)?;
            let F::Or(phi2, psi2) = d else { return None };
            (chi2 == chi && chi3 == chi && **phi2 == *phi && **psi2 == *psi)
                .then(|| vec![fb("φ", phi), fb("ψ", psi), fb("χ", chi)])
        }
        Scheme::ExistsIntro => {
            let (a, b) = imp(f)?;
            let F::Exists(v, phi) = b else { return None };
            let t = instance_term(phi, *v, a)?;
            Some(vec![fb("φ", phi), (String::from("v"), var_name(*v)), tb("t", &t)])
        }
        Scheme::ExistsElim => {
            let (a, rest) = imp(f)?;
            let F::Forall(v, body) = a else { return None };
            let (phi, psi) = imp(body)?;
            let (e, psi2) = imp(rest)?;
            let F::Exists(v2, phi2) = e else { return None };
            (v == v2 && *phi == **phi2 && psi == psi2 && !psi.has_free(*v))
                .then(|| vec![fb("φ", phi), fb("ψ", psi), (String::from("v"), var_name(*v))])
        }
    }
}

/// Identify `f` as a logical axiom or one of Q1–Q7.
pub fn is_axiom(f: &Formula) -> Option<AxiomMatch> {
    if let Some((n, bindings)) = q_axiom_match(f) {
        return Some(AxiomMatch { id: AxiomId::Q(n), bindings });
    }
    Scheme::ALL
        .iter()
        .find_map(|&s| match_scheme(s, f).map(|bindings| AxiomMatch { id: AxiomId::Logical(s), bindings }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str) -> Formula {
        parse_wff(t).unwrap()
    }

    #[test]
    fn q_axioms_identified() {
        for (i, t) in Q_AXIOM_TEXT.iter().enumerate() {
            assert_eq!(is_axiom(&p(t)).unwrap().id, AxiomId::Q(i as u8 + 1));
        }
        // renamed variables
        assert_eq!(is_axiom(&p("(¬(0=s(x′′)))")).unwrap().id, AxiomId::Q(2));
        assert_eq!(is_axiom(&p("((x′+s(x))=s((x′+x)))")).unwrap().id, AxiomId::Q(5));
        // non-injective renaming is not Q5
        assert!(q_axiom_match(&p("((x+s(x))=s((x+x)))")).is_none());
    }

    #[test]
    fn schemes_and_non_axioms() {
        let m = is_axiom(&p("((x=x)⇒((0=0)⇒(x=x)))")).unwrap();
        assert_eq!(m.id, AxiomId::Logical(Scheme::L1));
        assert!(is_axiom(&p("(0=0)")).is_none());
        assert_eq!(is_axiom(&p("(x′=x′)")).unwrap().id, AxiomId::Logical(Scheme::EqRefl));
        assert_eq!(
            is_axiom(&p("((∀x((x+0)=x))⇒((s(0)+0)=s(0)))")).unwrap().id,
            AxiomId::Logical(Scheme::ForallInst)
        );
        // t = x′ would be captured under ∀x′
        assert!(match_scheme(Scheme::ForallInst, &p("((∀x(∀x′(x=x′)))⇒(∀x′(x′=x′)))")).is_none());
        // inconsistent instantiation
        assert!(match_scheme(Scheme::ForallInst, &p("((∀x(x=x))⇒(0=s(0)))")).is_none());
        assert_eq!(
            is_axiom(&p("((x=0)⇒((x=x)⇒(0=x)))")).unwrap().id,
            AxiomId::Logical(Scheme::EqEq)
        );
        assert_eq!(
            is_axiom(&p("((x=0)⇒((x+s(0))=(0+s(0))))")).unwrap().id,
            AxiomId::Logical(Scheme::EqPlusL)
        );
        assert_eq!(
            is_axiom(&p("((x=0)⇒(∃x(x=0)))")).unwrap().id,
            AxiomId::Logical(Scheme::ExistsIntro)
        );
        // v free in φ
        assert!(match_scheme(Scheme::ForallDist, &p("((∀x((x=0)⇒(x=0)))⇒((x=0)⇒(∀x(x=0))))")).is_none());
        assert!(match_scheme(Scheme::ForallDist, &p("((∀x((0=0)⇒(x=0)))⇒((0=0)⇒(∀x(x=0))))")).is_some());
    }
}
