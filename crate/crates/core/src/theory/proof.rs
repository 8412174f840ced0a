//! Hilbert-style proofs: axioms, modus ponens and generalisation.

use serde::{Deserialize, Serialize};

use super::axioms::{match_scheme, q_axiom_match, Scheme};
use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Justification {
    LogicalAxiom { scheme: Scheme },
    QAxiom { n: u8 },
    ModusPonens { premise: usize, implication: usize },
    Generalization { premise: usize, var: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub formula: Formula,
    #[serde(flatten)]
    pub justification: Justification,
}

/// Serialised as a JSON array of steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new() -> Proof {
        Proof::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Append a step and return its index.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(Step { formula, justification });
        self.steps.len() - 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proofs serialise")
    }

    pub fn from_json(text: &str) -> Result<Proof> {
        serde_json::from_str(text).map_err(|e| Error::Syntax { pos: e.column(), message: e.to_string() })
    }
}

fn reject(step: usize, reason: impl Into<String>) -> Error {
    Error::ProofRejected { step, reason: reason.into() }
}

/// Validate a single step against the steps before it.
pub fn check_step(prior: &[Step], step: &Step) -> std::result::Result<(), String> {
    let i = prior.len();
    let earlier = |j: usize| -> std::result::Result<&Formula, String> {
        if j >= i {
            Err(format!("step {j} does not precede step {i}"))
        } else {
            Ok(&prior[j].formula)
        }
    };
    match step.justification {
        Justification::LogicalAxiom { scheme } => match_scheme(scheme, &step.formula)
            .map(|_| ())
            .ok_or_else(|| format!("not an instance of {scheme:?}")),
        Justification::QAxiom { n } => match q_axiom_match(&step.formula) {
            Some((m, _)) if m == n => Ok(()),
            _ => Err(format!("not axiom Q{n}")),
        },
        Justification::ModusPonens { premise, implication } => {
            let a = earlier(premise)?;
            match earlier(implication)? {
                Formula::Implies(h, c) if **h == *a && **c == step.formula => Ok(()),
                _ => Err(format!("step {implication} is not ({a}⇒{})", step.formula)),
            }
        }
        Justification::Generalization { premise, var } => {
            let a = earlier(premise)?;
            if step.formula == Formula::forall(var, a.clone()) {
                Ok(())
            } else {
                Err(format!("not the generalisation of step {premise}"))
            }
        }
    }
}

/// Accept the proof and return its conclusion, or report the first failing
/// step.
pub fn check_proof(p: &Proof) -> Result<Formula> {
    if p.steps.is_empty() {
        return Err(reject(0, "empty proof"));
    }
    for (i, step) in p.steps.iter().enumerate() {
        check_step(&p.steps[..i], step).map_err(|r| reject(i, r))?;
    }
    Ok(p.conclusion().cloned().expect("nonempty"))
}
