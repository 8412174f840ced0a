//! Proofs of ground equations `a+b=c` and `a·b=c` between numerals, built by
//! unfolding Q4–Q7 through the equality axioms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::axioms::{q_axioms, Scheme};
use super::formula::{Formula, Term};
use super::proof::{Justification, Proof};
use crate::error::{Error, Result};

/// Largest operand accepted by [`prove_ground_equation`].
pub const GROUND_LIMIT: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundOp {
    Plus,
    Times,
}

impl GroundOp {
    pub fn apply(self, a: u64, b: u64) -> u64 {
        match self {
            GroundOp::Plus => a + b,
            GroundOp::Times => a * b,
        }
    }
}

/// Proof under construction; identical formulas are derived once.
#[derive(Default)]
pub(crate) struct Builder {
    proof: Proof,
    known: HashMap<Formula, usize>,
}

impl Builder {
    fn add(&mut self, f: Formula, j: Justification) -> usize {
        if let Some(&i) = self.known.get(&f) {
            return i;
        }
        let i = self.proof.push(f.clone(), j);
        self.known.insert(f, i);
        i
    }

    fn formula(&self, i: usize) -> &Formula {
        &self.proof.steps[i].formula
    }

    fn logical(&mut self, scheme: Scheme, f: Formula) -> usize {
        self.add(f, Justification::LogicalAxiom { scheme })
    }

    fn mp(&mut self, premise: usize, implication: usize) -> usize {
        let Formula::Implies(_, c) = self.formula(implication).clone() else {
            panic!("modus ponens on a non-implication");
        };
        self.add(*c, Justification::ModusPonens { premise, implication })
    }

    /// From step `i` proving φ, derive φ[t/v] by generalisation and
    /// instantiation.
    pub(crate) fn instantiate(&mut self, i: usize, v: u32, t: &Term) -> usize {
        let phi = self.formula(i).clone();
        let g = self.add(Formula::forall(v, phi.clone()), Justification::Generalization { premise: i, var: v });
        let inst = phi.subst(v, t);
        let ax = self.logical(Scheme::ForallInst, Formula::implies(Formula::forall(v, phi), inst));
        self.mp(g, ax)
    }

    /// Qn with `x := terms[0]`, `x′ := terms[1]`.
    fn q_instance(&mut self, n: u8, terms: &[Term]) -> usize {
        let mut i = self.add(q_axioms()[n as usize - 1].clone(), Justification::QAxiom { n });
        for (v, t) in terms.iter().enumerate().rev() {
            i = self.instantiate(i, v as u32, t);
        }
        i
    }

    fn refl(&mut self, t: &Term) -> usize {
        let r = self.logical(Scheme::EqRefl, Formula::eq(Term::var(0), Term::var(0)));
        self.instantiate(r, 0, t)
    }

    fn sides(&self, i: usize) -> (Term, Term) {
        match self.formula(i) {
            Formula::Eq(a, b) => (a.clone(), b.clone()),
            f => panic!("not an equation: {f}"),
        }
    }

    fn sym(&mut self, i: usize) -> usize {
        let (a, b) = self.sides(i);
        let ax = self.logical(
            Scheme::EqEq,
            Formula::implies(
                Formula::eq(a.clone(), b.clone()),
                Formula::implies(Formula::eq(a.clone(), a.clone()), Formula::eq(b, a.clone())),
            ),
        );
        let step = self.mp(i, ax);
        let r = self.refl(&a);
        self.mp(r, step)
    }

    fn trans(&mut self, i: usize, j: usize) -> usize {
        let (a, b) = self.sides(i);
        let (b2, c) = self.sides(j);
        assert_eq!(b, b2, "transitivity needs matching middle terms");
        let ba = self.sym(i);
        let ax = self.logical(
            Scheme::EqEq,
            Formula::implies(
                Formula::eq(b.clone(), a.clone()),
                Formula::implies(Formula::eq(b, c.clone()), Formula::eq(a, c)),
            ),
        );
        let step = self.mp(ba, ax);
        self.mp(j, step)
    }

    fn cong_succ(&mut self, i: usize) -> usize {
        let (t, r) = self.sides(i);
        let ax = self.logical(
            Scheme::EqSucc,
            Formula::implies(Formula::eq(t.clone(), r.clone()), Formula::eq(Term::succ(t), Term::succ(r))),
        );
        self.mp(i, ax)
    }

    /// From `t=r` derive `(t+u)=(r+u)`.
    fn cong_plus_left(&mut self, i: usize, u: &Term) -> usize {
        let (t, r) = self.sides(i);
        let ax = self.logical(
            Scheme::EqPlusL,
            Formula::implies(
                Formula::eq(t.clone(), r.clone()),
                Formula::eq(Term::plus(t, u.clone()), Term::plus(r, u.clone())),
            ),
        );
        self.mp(i, ax)
    }

    /// `(n_a + n_b) = n_(a+b)`
    fn plus(&mut self, a: u64, b: u64) -> usize {
        let na = Term::numeral(a);
        if b == 0 {
            return self.q_instance(4, &[na]);
        }
        let unfold = self.q_instance(5, &[na, Term::numeral(b - 1)]);
        let rec = self.plus(a, b - 1);
        let lifted = self.cong_succ(rec);
        self.trans(unfold, lifted)
    }

    /// `(n_a · n_b) = n_(a·b)`
    fn times(&mut self, a: u64, b: u64) -> usize {
        let na = Term::numeral(a);
        if b == 0 {
            return self.q_instance(6, &[na]);
        }
        let unfold = self.q_instance(7, &[na.clone(), Term::numeral(b - 1)]);
        let rec = self.times(a, b - 1);
        let lifted = self.cong_plus_left(rec, &na);
        let sum = self.plus(a * (b - 1), a);
        let mid = self.trans(unfold, lifted);
        self.trans(mid, sum)
    }

    /// The proof, with step `last` repeated at the end if it was derived
    /// earlier.
    pub(crate) fn finish(mut self, last: usize) -> Proof {
        if last + 1 != self.proof.len() {
            let step = self.proof.steps[last].clone();
            self.proof.steps.push(step);
        }
        self.proof
    }
}

/// A checkable proof of `n_a op n_b = n_c` with `c = a op b`.
pub fn prove_ground_equation(a: u64, b: u64, op: GroundOp) -> Result<Proof> {
    if a > GROUND_LIMIT || b > GROUND_LIMIT {
        return Err(Error::Limit(format!("operands above {GROUND_LIMIT}")));
    }
    let mut builder = Builder::default();
    let last = match op {
        GroundOp::Plus => builder.plus(a, b),
        GroundOp::Times => builder.times(a, b),
    };
    Ok(builder.finish(last))
}

/// The equation proved by [`prove_ground_equation`].
pub fn ground_statement(a: u64, b: u64, op: GroundOp) -> Formula {
    let (na, nb) = (Term::numeral(a), Term::numeral(b));
    let lhs = match op {
        GroundOp::Plus => Term::plus(na, nb),
        GroundOp::Times => Term::times(na, nb),
    };
    Formula::eq(lhs, Term::numeral(op.apply(a, b)))
}
